//! Entrywise comparison of tapes through their matrix normal forms.

use std::fmt;
use std::str::FromStr;

use crate::circuit::graph_leq;
use crate::error::{Error, Result};
use crate::matrix::{to_matrix, MonomialEntry};
use crate::signature::MonSignature;
use crate::tape::TapeTerm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Plain tapes: entries are multisets, only equality is available.
    Multiset,
    /// Sums are idempotent: entries are sets.
    Set,
    /// Entries are downsets under the cartesian-bicategory order.
    Cb,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Multiset => "multiset",
            Mode::Set => "set",
            Mode::Cb => "cb",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "multiset" => Ok(Mode::Multiset),
            "set" => Ok(Mode::Set),
            "cb" => Ok(Mode::Cb),
            other => Err(format!("unknown mode `{other}` (expected multiset, set or cb)")),
        }
    }
}

/// How circuits inside an entry are compared: up to isomorphism of their
/// graphs, or up to homomorphic equivalence once copying and discarding exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Base {
    Plain,
    Cartesian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Theory {
    pub mode: Mode,
    pub base: Base,
}

impl Theory {
    pub const MULTISET: Theory = Theory { mode: Mode::Multiset, base: Base::Plain };
    pub const SET: Theory = Theory { mode: Mode::Set, base: Base::Plain };
    pub const CB: Theory = Theory { mode: Mode::Cb, base: Base::Cartesian };

    /// The theory of `mode` over `sig`; the cb mode needs the Frobenius structure.
    pub fn new(mode: Mode, sig: &MonSignature) -> Result<Theory> {
        let base = if sig.frobenius_enabled { Base::Cartesian } else { Base::Plain };
        if mode == Mode::Cb && base != Base::Cartesian {
            return Err(Error::FrobeniusDisabled);
        }
        Ok(Theory { mode, base })
    }
}

/// Egli–Milner: every circuit of `e1` lies below some circuit of `e2`.
pub fn em_leq(e1: &MonomialEntry, e2: &MonomialEntry, theory: Theory) -> Result<bool> {
    if theory.mode == Mode::Multiset {
        return Err(Error::ModeMismatch("multiset"));
    }
    if e1.dom != e2.dom || e1.cod != e2.cod {
        return Err(Error::TypeMismatch(format!(
            "entries {} -> {} and {} -> {}",
            e1.dom, e1.cod, e2.dom, e2.cod
        )));
    }
    Ok(e1.circuits().iter().all(|c| {
        e2.circuits().iter().any(|d| {
            c.key == d.key || (theory.mode == Mode::Cb && graph_leq(&c.graph, &d.graph))
        })
    }))
}

fn same_type(t: &TapeTerm, s: &TapeTerm) -> Result<()> {
    let (tt, st) = (t.type_of()?, s.type_of()?);
    if tt != st {
        return Err(Error::TypeMismatch(format!(
            "{} -> {} versus {} -> {}",
            tt.0, tt.1, st.0, st.1
        )));
    }
    Ok(())
}

pub fn tape_leq(t: &TapeTerm, s: &TapeTerm, theory: Theory) -> Result<bool> {
    if theory.mode == Mode::Multiset {
        return Err(Error::ModeMismatch("multiset"));
    }
    same_type(t, s)?;
    let (mt, ms) = (to_matrix(t, theory)?, to_matrix(s, theory)?);
    for (rt, rs) in mt.rows().iter().zip(ms.rows()) {
        for (a, b) in rt.iter().zip(rs) {
            if !em_leq(a, b, theory)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn tape_equiv(t: &TapeTerm, s: &TapeTerm, theory: Theory) -> Result<bool> {
    same_type(t, s)?;
    if theory.mode == Mode::Multiset {
        return Ok(to_matrix(t, theory)? == to_matrix(s, theory)?);
    }
    Ok(tape_leq(t, s, theory)? && tape_leq(s, t, theory)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::CircuitTerm;
    use crate::signature::{Monomial, Polynomial};
    use crate::tape::{self, TapeTerm::*};

    fn sig() -> MonSignature {
        let mut s = MonSignature::new();
        s.add_sort("A").unwrap();
        s.add_generator("c", Monomial::of(&["A"]), Monomial::of(&["A"])).unwrap();
        s.add_generator("d", Monomial::of(&["A"]), Monomial::of(&["A"])).unwrap();
        s
    }

    fn lift(sig: &MonSignature, n: &str) -> TapeTerm {
        Lift(sig.gen(n).unwrap())
    }

    #[test]
    fn multiplicities_collapse_in_set_mode() {
        let sig = sig();
        let c = lift(&sig, "c");
        let cc = tape::sum(&c, &c).unwrap();
        assert!(tape_equiv(&cc, &c, Theory::SET).unwrap());
        assert!(!tape_equiv(&cc, &c, Theory::MULTISET).unwrap());
        assert_eq!(tape_leq(&cc, &c, Theory::MULTISET), Err(Error::ModeMismatch("multiset")));
    }

    #[test]
    fn sums_commute_in_every_mode() {
        let sig = sig();
        let (c, d) = (lift(&sig, "c"), lift(&sig, "d"));
        let cd = tape::sum(&c, &d).unwrap();
        let dc = tape::sum(&d, &c).unwrap();
        for th in [Theory::MULTISET, Theory::SET] {
            assert!(tape_equiv(&cd, &dc, th).unwrap());
        }
        assert!(tape_leq(&c, &cd, Theory::SET).unwrap());
        assert!(!tape_leq(&cd, &c, Theory::SET).unwrap());
    }

    #[test]
    fn zero_is_bottom() {
        let sig = sig();
        let a = Monomial::of(&["A"]).to_poly();
        let t = lift(&sig, "c");
        assert!(tape_leq(&tape::zero(&a, &a), &t, Theory::SET).unwrap());
        assert!(!tape_leq(&t, &tape::zero(&a, &a), Theory::SET).unwrap());
    }

    #[test]
    fn codiag_diag_above_identity() {
        let u = Monomial::of(&["A"]);
        let id = tape::id_poly(&Polynomial::new(vec![u.clone(), u.clone()]));
        let cd = TapeTerm::seq(Codiag(u.clone()), Diag(u));
        assert!(tape_leq(&id, &cd, Theory::SET).unwrap());
        assert!(!tape_leq(&cd, &id, Theory::SET).unwrap());
    }

    #[test]
    fn cb_needs_frobenius() {
        assert_eq!(Theory::new(Mode::Cb, &sig()), Err(Error::FrobeniusDisabled));
        let th = Theory::new(Mode::Cb, &sig().with_frobenius()).unwrap();
        assert_eq!(th, Theory::CB);
        let a = crate::signature::Sort::new("A");
        let top = Lift(CircuitTerm::seq(CircuitTerm::Discharger(a.clone()), CircuitTerm::Codischarger(a.clone())));
        assert!(tape_leq(&Lift(CircuitTerm::Id(a.clone())), &top, th).unwrap());
        assert!(!tape_leq(&top, &Lift(CircuitTerm::Id(a)), th).unwrap());
    }
}
