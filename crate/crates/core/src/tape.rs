//! Tape terms and the structure built on top of them: polynomial-level
//! identities and (co)diagonals, distributors, the tensor symmetry,
//! whiskerings, the tensor of tapes, sums, and the polynomial copier family.

use std::fmt;
use std::sync::Arc;

use crate::circuit::{self, id_word, sym_word, CircuitTerm};
use crate::error::{Error, Result};
use crate::signature::{MonSignature, Monomial, Polynomial};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum TapeTerm {
    IdMon(Monomial),
    IdZero,
    Lift(CircuitTerm),
    SymPlus(Monomial, Monomial),
    Seq(Arc<TapeTerm>, Arc<TapeTerm>),
    Oplus(Arc<TapeTerm>, Arc<TapeTerm>),
    Bang(Monomial),
    Diag(Monomial),
    Cobang(Monomial),
    Codiag(Monomial),
}

use TapeTerm::*;

impl TapeTerm {
    /// Sequential composition, skipping monomial and zero identities.
    pub fn seq(a: TapeTerm, b: TapeTerm) -> TapeTerm {
        match (&a, &b) {
            (IdMon(_) | IdZero, _) => b,
            (_, IdMon(_) | IdZero) => a,
            _ => Seq(Arc::new(a), Arc::new(b)),
        }
    }

    /// Direct sum, dropping `id_𝟘` summands.
    pub fn oplus(a: TapeTerm, b: TapeTerm) -> TapeTerm {
        match (&a, &b) {
            (IdZero, _) => b,
            (_, IdZero) => a,
            _ => Oplus(Arc::new(a), Arc::new(b)),
        }
    }

    pub fn lift(c: CircuitTerm) -> TapeTerm {
        Lift(c)
    }

    pub fn type_of(&self) -> Result<(Polynomial, Polynomial)> {
        let m = |u: &Monomial| u.to_poly();
        Ok(match self {
            IdMon(u) => (m(u), m(u)),
            IdZero => (Polynomial::zero(), Polynomial::zero()),
            Lift(c) => {
                let (u, v) = c.type_of()?;
                (m(&u), m(&v))
            }
            SymPlus(u, v) => (m(u).oplus(&m(v)), m(v).oplus(&m(u))),
            Seq(a, b) => {
                let (p, q) = a.type_of()?;
                let (q2, r) = b.type_of()?;
                if q != q2 {
                    return Err(Error::TapeMismatch { left: q, right: q2 });
                }
                (p, r)
            }
            Oplus(a, b) => {
                let (p1, q1) = a.type_of()?;
                let (p2, q2) = b.type_of()?;
                (p1.oplus(&p2), q1.oplus(&q2))
            }
            Bang(u) => (m(u), Polynomial::zero()),
            Diag(u) => (m(u), m(u).oplus(&m(u))),
            Cobang(u) => (Polynomial::zero(), m(u)),
            Codiag(u) => (m(u).oplus(&m(u)), m(u)),
        })
    }

    pub fn dom(&self) -> Result<Polynomial> {
        Ok(self.type_of()?.0)
    }

    pub fn cod(&self) -> Result<Polynomial> {
        Ok(self.type_of()?.1)
    }

    pub fn circuits(&self) -> Vec<&CircuitTerm> {
        let mut out = Vec::new();
        self.collect_circuits(&mut out);
        out
    }

    fn collect_circuits<'a>(&'a self, out: &mut Vec<&'a CircuitTerm>) {
        match self {
            Lift(c) => out.push(c),
            Seq(a, b) | Oplus(a, b) => {
                a.collect_circuits(out);
                b.collect_circuits(out);
            }
            _ => {}
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Seq(..) => 0,
            Oplus(..) => 2,
            _ => 4,
        }
    }
}

/// Checks every inner circuit against `sig` and returns the (domain, codomain) polynomials.
pub fn type_check_tape(t: &TapeTerm, sig: &MonSignature) -> Result<(Polynomial, Polynomial)> {
    for c in t.circuits() {
        circuit::type_check_circuit(c, sig)?;
    }
    t.type_of()
}

pub fn seq_all(parts: impl IntoIterator<Item = TapeTerm>) -> TapeTerm {
    parts.into_iter().reduce(TapeTerm::seq).unwrap_or(IdZero)
}

pub fn oplus_all(parts: impl IntoIterator<Item = TapeTerm>) -> TapeTerm {
    parts.into_iter().reduce(TapeTerm::oplus).unwrap_or(IdZero)
}

fn each(p: &Polynomial, f: impl Fn(&Monomial) -> TapeTerm) -> TapeTerm {
    oplus_all(p.monomials().iter().map(f))
}

pub fn id_poly(p: &Polynomial) -> TapeTerm {
    each(p, |u| IdMon(u.clone()))
}

pub fn bang_poly(p: &Polynomial) -> TapeTerm {
    each(p, |u| Bang(u.clone()))
}

pub fn cobang_poly(p: &Polynomial) -> TapeTerm {
    each(p, |u| Cobang(u.clone()))
}

/// `σ⊕_{P,Q} : P ⊕ Q → Q ⊕ P`.
pub fn sym_plus_poly(p: &Polynomial, q: &Polynomial) -> TapeTerm {
    match (p.monomials(), q.monomials()) {
        ([], _) => id_poly(q),
        (_, []) => id_poly(p),
        ([u], [v]) => SymPlus(u.clone(), v.clone()),
        ([u], _) => {
            let (v, rest) = q.split_first().unwrap();
            TapeTerm::seq(
                TapeTerm::oplus(SymPlus(u.clone(), v.clone()), id_poly(&rest)),
                TapeTerm::oplus(IdMon(v.clone()), sym_plus_poly(p, &rest)),
            )
        }
        _ => {
            let (u, rest) = p.split_first().unwrap();
            let single = u.to_poly();
            TapeTerm::seq(
                TapeTerm::oplus(IdMon(u.clone()), sym_plus_poly(&rest, q)),
                TapeTerm::oplus(sym_plus_poly(&single, q), id_poly(&rest)),
            )
        }
    }
}

/// `◁⊕_P : P → P ⊕ P`.
pub fn diag_poly(p: &Polynomial) -> TapeTerm {
    match p.split_first() {
        None => IdZero,
        Some((u, rest)) if rest.is_zero() => Diag(u.clone()),
        Some((u, rest)) => TapeTerm::seq(
            TapeTerm::oplus(Diag(u.clone()), diag_poly(&rest)),
            oplus_all([IdMon(u.clone()), sym_plus_poly(&u.to_poly(), &rest), id_poly(&rest)]),
        ),
    }
}

/// `▷⊕_P : P ⊕ P → P`.
pub fn codiag_poly(p: &Polynomial) -> TapeTerm {
    match p.split_first() {
        None => IdZero,
        Some((u, rest)) if rest.is_zero() => Codiag(u.clone()),
        Some((u, rest)) => TapeTerm::seq(
            oplus_all([IdMon(u.clone()), sym_plus_poly(&rest, &u.to_poly()), id_poly(&rest)]),
            TapeTerm::oplus(Codiag(u.clone()), codiag_poly(&rest)),
        ),
    }
}

/// `U → U ⊕ … ⊕ U` with `m` copies; `m = 0` discards.
pub fn diag_n(u: &Monomial, m: usize) -> TapeTerm {
    match m {
        0 => Bang(u.clone()),
        1 => IdMon(u.clone()),
        _ => TapeTerm::seq(Diag(u.clone()), TapeTerm::oplus(IdMon(u.clone()), diag_n(u, m - 1))),
    }
}

/// `Q ⊕ … ⊕ Q → Q` merging `n` copies; `n = 0` creates from nothing.
pub fn codiag_n_poly(q: &Polynomial, n: usize) -> TapeTerm {
    match n {
        0 => cobang_poly(q),
        1 => id_poly(q),
        _ => TapeTerm::seq(
            TapeTerm::oplus(id_poly(q), codiag_n_poly(q, n - 1)),
            codiag_poly(q),
        ),
    }
}

/// `δ^l_{P,Q,R} : P⊗(Q⊕R) → P⊗Q ⊕ P⊗R`.
pub fn left_distributor(p: &Polynomial, q: &Polynomial, r: &Polynomial) -> TapeTerm {
    match p.split_first() {
        None => IdZero,
        Some((u, rest)) => {
            let u = u.to_poly();
            let (uq, ur) = (u.product(q), u.product(r));
            let (rq, rr) = (rest.product(q), rest.product(r));
            TapeTerm::seq(
                TapeTerm::oplus(id_poly(&u.product(&q.oplus(r))), left_distributor(&rest, q, r)),
                oplus_all([id_poly(&uq), sym_plus_poly(&ur, &rq), id_poly(&rr)]),
            )
        }
    }
}

pub fn inv_left_distributor(p: &Polynomial, q: &Polynomial, r: &Polynomial) -> TapeTerm {
    match p.split_first() {
        None => IdZero,
        Some((u, rest)) => {
            let u = u.to_poly();
            let (uq, ur) = (u.product(q), u.product(r));
            let (rq, rr) = (rest.product(q), rest.product(r));
            TapeTerm::seq(
                oplus_all([id_poly(&uq), sym_plus_poly(&rq, &ur), id_poly(&rr)]),
                TapeTerm::oplus(id_poly(&u.product(&q.oplus(r))), inv_left_distributor(&rest, q, r)),
            )
        }
    }
}

/// `σ⊗_{P,Q} : P⊗Q → Q⊗P`.
pub fn tensor_symmetry(p: &Polynomial, q: &Polynomial) -> TapeTerm {
    match q.split_first() {
        None => IdZero,
        Some((v, rest)) => {
            let lifted = each(p, |u| Lift(sym_word(u, v)));
            TapeTerm::seq(
                left_distributor(p, &v.to_poly(), &rest),
                TapeTerm::oplus(lifted, tensor_symmetry(p, &rest)),
            )
        }
    }
}

/// `L_U`: thickens every tape with `U` stacked on top.
pub fn whisker_left_mon(u: &Monomial, t: &TapeTerm) -> TapeTerm {
    let w = |v: &Monomial| u.concat(v);
    match t {
        IdMon(v) => IdMon(w(v)),
        IdZero => IdZero,
        Lift(c) => Lift(CircuitTerm::tensor(id_word(u), c.clone())),
        SymPlus(v, x) => SymPlus(w(v), w(x)),
        Seq(a, b) => TapeTerm::seq(whisker_left_mon(u, a), whisker_left_mon(u, b)),
        Oplus(a, b) => TapeTerm::oplus(whisker_left_mon(u, a), whisker_left_mon(u, b)),
        Bang(v) => Bang(w(v)),
        Diag(v) => Diag(w(v)),
        Cobang(v) => Cobang(w(v)),
        Codiag(v) => Codiag(w(v)),
    }
}

/// `R_U`: thickens every tape with `U` stacked underneath.
pub fn whisker_right_mon(u: &Monomial, t: &TapeTerm) -> TapeTerm {
    let w = |v: &Monomial| v.concat(u);
    match t {
        IdMon(v) => IdMon(w(v)),
        IdZero => IdZero,
        Lift(c) => Lift(CircuitTerm::tensor(c.clone(), id_word(u))),
        SymPlus(v, x) => SymPlus(w(v), w(x)),
        Seq(a, b) => TapeTerm::seq(whisker_right_mon(u, a), whisker_right_mon(u, b)),
        Oplus(a, b) => TapeTerm::oplus(whisker_right_mon(u, a), whisker_right_mon(u, b)),
        Bang(v) => Bang(w(v)),
        Diag(v) => Diag(w(v)),
        Cobang(v) => Cobang(w(v)),
        Codiag(v) => Codiag(w(v)),
    }
}

/// `L_S(t) : S⊗P → S⊗Q`.
pub fn whisker_left(s: &Polynomial, t: &TapeTerm) -> TapeTerm {
    each(s, |u| whisker_left_mon(u, t))
}

/// `R_S(t) : P⊗S → Q⊗S`, which needs distributors once `S` has two summands.
pub fn whisker_right(s: &Polynomial, t: &TapeTerm) -> Result<TapeTerm> {
    let (p, q) = t.type_of()?;
    Ok(whisker_right_typed(s, t, &p, &q))
}

fn whisker_right_typed(s: &Polynomial, t: &TapeTerm, p: &Polynomial, q: &Polynomial) -> TapeTerm {
    match s.split_first() {
        None => IdZero,
        Some((w, rest)) if rest.is_zero() => whisker_right_mon(w, t),
        Some((w, rest)) => {
            let wp = w.to_poly();
            seq_all([
                left_distributor(p, &wp, &rest),
                TapeTerm::oplus(whisker_right_mon(w, t), whisker_right_typed(&rest, t, p, q)),
                inv_left_distributor(q, &wp, &rest),
            ])
        }
    }
}

/// `t₁ ⊗ t₂ = L_{P₁}(t₂) ; R_{Q₂}(t₁)`.
pub fn tensor(t1: &TapeTerm, t2: &TapeTerm) -> Result<TapeTerm> {
    let (p1, _) = t1.type_of()?;
    let (_, q2) = t2.type_of()?;
    Ok(TapeTerm::seq(whisker_left(&p1, t2), whisker_right(&q2, t1)?))
}

/// `t₁ + t₂ = ◁⊕ ; (t₁ ⊕ t₂) ; ▷⊕`.
pub fn sum(t1: &TapeTerm, t2: &TapeTerm) -> Result<TapeTerm> {
    let (p, q) = t1.type_of()?;
    let ty2 = t2.type_of()?;
    if (p.clone(), q.clone()) != ty2 {
        return Err(Error::TypeMismatch(format!(
            "cannot add {p} -> {q} and {} -> {}",
            ty2.0, ty2.1
        )));
    }
    Ok(seq_all([
        diag_poly(&p),
        TapeTerm::oplus(t1.clone(), t2.clone()),
        codiag_poly(&q),
    ]))
}

/// `0 = ! ; ¡ : P → Q`.
pub fn zero(p: &Polynomial, q: &Polynomial) -> TapeTerm {
    TapeTerm::seq(bang_poly(p), cobang_poly(q))
}

/// Sum of all terms, or the zero tape when there are none.
pub fn sum_all(p: &Polynomial, q: &Polynomial, parts: Vec<TapeTerm>) -> TapeTerm {
    let mut it = parts.into_iter();
    let Some(first) = it.next() else {
        return zero(p, q);
    };
    it.fold(first, |acc, t| {
        seq_all([diag_poly(p), TapeTerm::oplus(acc, t), codiag_poly(q)])
    })
}

fn frob(sig: &MonSignature) -> Result<()> {
    if sig.frobenius_enabled {
        Ok(())
    } else {
        Err(Error::FrobeniusDisabled)
    }
}

fn one() -> Monomial {
    Monomial::unit()
}

/// `◁_P : P → P⊗P`.
pub fn copier_poly(p: &Polynomial, sig: &MonSignature) -> Result<TapeTerm> {
    frob(sig)?;
    Ok(copier(p))
}

fn copier(p: &Polynomial) -> TapeTerm {
    match p.split_first() {
        None => IdZero,
        Some((u, rest)) if rest.is_zero() => Lift(circuit::word_copier(u)),
        Some((u, rest)) => {
            let up = u.to_poly();
            oplus_all([
                Lift(circuit::word_copier(u)),
                cobang_poly(&up.product(&rest)),
                TapeTerm::seq(
                    TapeTerm::oplus(cobang_poly(&rest.product(&up)), copier(&rest)),
                    inv_left_distributor(&rest, &up, &rest),
                ),
            ])
        }
    }
}

/// `!_P : P → 𝟙`.
pub fn discharger_poly(p: &Polynomial, sig: &MonSignature) -> Result<TapeTerm> {
    frob(sig)?;
    Ok(discharger(p))
}

fn discharger(p: &Polynomial) -> TapeTerm {
    match p.split_first() {
        None => Cobang(one()),
        Some((u, rest)) if rest.is_zero() => Lift(circuit::word_discharger(u)),
        Some((u, rest)) => TapeTerm::seq(
            TapeTerm::oplus(Lift(circuit::word_discharger(u)), discharger(&rest)),
            Codiag(one()),
        ),
    }
}

/// `▷_P : P⊗P → P`.
pub fn cocopier_poly(p: &Polynomial, sig: &MonSignature) -> Result<TapeTerm> {
    frob(sig)?;
    Ok(cocopier(p))
}

fn cocopier(p: &Polynomial) -> TapeTerm {
    match p.split_first() {
        None => IdZero,
        Some((u, rest)) if rest.is_zero() => Lift(circuit::word_cocopier(u)),
        Some((u, rest)) => {
            let up = u.to_poly();
            oplus_all([
                Lift(circuit::word_cocopier(u)),
                bang_poly(&up.product(&rest)),
                TapeTerm::seq(
                    left_distributor(&rest, &up, &rest),
                    TapeTerm::oplus(bang_poly(&rest.product(&up)), cocopier(&rest)),
                ),
            ])
        }
    }
}

/// `¡•_P : 𝟙 → P`.
pub fn codischarger_poly(p: &Polynomial, sig: &MonSignature) -> Result<TapeTerm> {
    frob(sig)?;
    Ok(codischarger(p))
}

fn codischarger(p: &Polynomial) -> TapeTerm {
    match p.split_first() {
        None => Bang(one()),
        Some((u, rest)) if rest.is_zero() => Lift(circuit::word_codischarger(u)),
        Some((u, rest)) => TapeTerm::seq(
            Diag(one()),
            TapeTerm::oplus(Lift(circuit::word_codischarger(u)), codischarger(&rest)),
        ),
    }
}

/// The mirror image of a tape: every circuit transposed, every layer reversed.
pub fn dagger(t: &TapeTerm) -> Result<TapeTerm> {
    Ok(match t {
        IdMon(_) | IdZero => t.clone(),
        Lift(c) => Lift(circuit::transpose(c)?),
        SymPlus(u, v) => SymPlus(v.clone(), u.clone()),
        Seq(a, b) => TapeTerm::seq(dagger(b)?, dagger(a)?),
        Oplus(a, b) => TapeTerm::oplus(dagger(a)?, dagger(b)?),
        Bang(u) => Cobang(u.clone()),
        Cobang(u) => Bang(u.clone()),
        Diag(u) => Codiag(u.clone()),
        Codiag(u) => Diag(u.clone()),
    })
}

fn word(u: &Monomial) -> String {
    if u.is_empty() {
        "1".to_string()
    } else {
        u.to_string()
    }
}

impl fmt::Display for TapeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let paren = |f: &mut fmt::Formatter<'_>, t: &TapeTerm, min: u8| {
            if t.prec() < min {
                write!(f, "({t})")
            } else {
                write!(f, "{t}")
            }
        };
        match self {
            IdMon(u) => write!(f, "idm({})", word(u)),
            IdZero => f.write_str("id0"),
            Lift(c) => write!(f, "[{c}]"),
            SymPlus(u, v) => write!(f, "symp({},{})", word(u), word(v)),
            Seq(a, b) => {
                paren(f, a, 0)?;
                f.write_str(" ; ")?;
                paren(f, b, 1)
            }
            Oplus(a, b) => {
                paren(f, a, 2)?;
                f.write_str(" (+) ")?;
                paren(f, b, 3)
            }
            Bang(u) => write!(f, "bang({})", word(u)),
            Diag(u) => write!(f, "diag({})", word(u)),
            Cobang(u) => write!(f, "cobang({})", word(u)),
            Codiag(u) => write!(f, "codiag({})", word(u)),
        }
    }
}

impl fmt::Debug for TapeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::CircuitTerm::Gen;
    use crate::signature::Generator;

    fn p(words: &[&[&str]]) -> Polynomial {
        words.iter().map(|w| Monomial::of(w)).collect()
    }

    fn m(w: &[&str]) -> Monomial {
        Monomial::of(w)
    }

    #[test]
    fn primitive_types() {
        assert_eq!(Diag(m(&["A"])).type_of().unwrap(), (p(&[&["A"]]), p(&[&["A"], &["A"]])));
        let c = Lift(Gen(Generator::new("c", m(&["A"]), m(&["B"]))));
        let d = Lift(Gen(Generator::new("d", m(&["A"]), m(&["B"]))));
        let t = TapeTerm::seq(Diag(m(&["A"])), TapeTerm::oplus(c, d));
        assert_eq!(t.type_of().unwrap(), (p(&[&["A"]]), p(&[&["B"], &["B"]])));
        let z = Oplus(Arc::new(IdMon(m(&["A", "B"]))), Arc::new(IdZero));
        assert_eq!(z.type_of().unwrap(), (p(&[&["A", "B"]]), p(&[&["A", "B"]])));
    }

    #[test]
    fn poly_structure_shapes() {
        let q = p(&[&["A", "B"], &[], &["C"]]);
        assert_eq!(id_poly(&q).to_string(), "idm(A B) (+) idm(1) (+) idm(C)");
        assert_eq!(diag_poly(&p(&[&["A"]])), Diag(m(&["A"])));
        assert_eq!(cobang_poly(&Polynomial::zero()), IdZero);
        let abc = p(&[&["A"], &["B"], &["C"]]);
        assert_eq!(diag_poly(&abc).type_of().unwrap(), (abc.clone(), abc.oplus(&abc)));
        assert_eq!(codiag_poly(&abc).type_of().unwrap(), (abc.oplus(&abc), abc.clone()));
        let ab = p(&[&["A"], &["B"]]);
        assert_eq!(sym_plus_poly(&ab, &abc).type_of().unwrap(), (ab.oplus(&abc), abc.oplus(&ab)));
    }

    #[test]
    fn distributor_and_symmetry_types() {
        let pp = p(&[&["A"], &["B"]]);
        let q = p(&[&["C"]]);
        let r = p(&[&["D"], &[]]);
        let d = left_distributor(&pp, &q, &r);
        assert_eq!(d.type_of().unwrap(), (pp.product(&q.oplus(&r)), pp.product(&q).oplus(&pp.product(&r))));
        let di = inv_left_distributor(&pp, &q, &r);
        assert_eq!(di.type_of().unwrap(), (d.cod().unwrap(), d.dom().unwrap()));
        let s = tensor_symmetry(&pp, &r);
        assert_eq!(s.type_of().unwrap(), (pp.product(&r), r.product(&pp)));
        assert_eq!(
            tensor_symmetry(&p(&[&["A"]]), &p(&[&["B"]])),
            Lift(CircuitTerm::Sym(crate::signature::Sort::new("A"), crate::signature::Sort::new("B")))
        );
        assert_eq!(left_distributor(&Polynomial::zero(), &q, &r), IdZero);
    }

    #[test]
    fn whiskering_units() {
        let c = Lift(Gen(Generator::new("c", m(&["A"]), m(&["B"]))));
        let t = TapeTerm::seq(Diag(m(&["A"])), TapeTerm::oplus(c.clone(), c.clone()));
        assert_eq!(whisker_right(&Polynomial::one(), &t).unwrap(), t);
        assert_eq!(whisker_left(&Polynomial::one(), &t), t);
        assert_eq!(whisker_right(&Polynomial::zero(), &t).unwrap(), IdZero);
        let u = m(&["C"]);
        assert_eq!(
            whisker_right(&u.to_poly(), &c).unwrap(),
            Lift(CircuitTerm::tensor(Gen(Generator::new("c", m(&["A"]), m(&["B"]))), CircuitTerm::Id(crate::signature::Sort::new("C"))))
        );
        let s = p(&[&["C"], &["D"]]);
        let w = whisker_right(&s, &t).unwrap();
        let (dom, cod) = t.type_of().unwrap();
        assert_eq!(w.type_of().unwrap(), (dom.product(&s), cod.product(&s)));
    }

    #[test]
    fn copier_family_types() {
        let mut sig = MonSignature::new().with_frobenius();
        sig.add_sort("A").unwrap();
        sig.add_sort("B").unwrap();
        let ab = p(&[&["A"], &["B"]]);
        let cp = copier_poly(&ab, &sig).unwrap();
        assert_eq!(cp.type_of().unwrap(), (ab.clone(), p(&[&["A", "A"], &["A", "B"], &["B", "A"], &["B", "B"]])));
        assert_eq!(cocopier_poly(&ab, &sig).unwrap().type_of().unwrap(), (ab.product(&ab), ab.clone()));
        assert_eq!(discharger_poly(&ab, &sig).unwrap().type_of().unwrap(), (ab.clone(), Polynomial::one()));
        assert_eq!(codischarger_poly(&ab, &sig).unwrap().type_of().unwrap(), (Polynomial::one(), ab.clone()));
        assert_eq!(copier_poly(&Polynomial::zero(), &sig).unwrap(), IdZero);
        assert_eq!(discharger_poly(&Polynomial::zero(), &sig).unwrap(), Cobang(Monomial::unit()));
        let a = p(&[&["A"]]);
        assert_eq!(copier_poly(&a, &sig).unwrap(), Lift(circuit::word_copier(&m(&["A"]))));
        assert_eq!(copier_poly(&a, &MonSignature::new()), Err(Error::FrobeniusDisabled));
    }

    #[test]
    fn tensor_type() {
        let c = Lift(Gen(Generator::new("c", m(&["A"]), m(&["B"]))));
        let t = TapeTerm::seq(Diag(m(&["A"])), TapeTerm::oplus(c.clone(), c.clone()));
        let s = SymPlus(m(&["C"]), m(&["D"]));
        let ts = tensor(&t, &s).unwrap();
        let (p1, q1) = t.type_of().unwrap();
        let (p2, q2) = s.type_of().unwrap();
        assert_eq!(ts.type_of().unwrap(), (p1.product(&p2), q1.product(&q2)));
    }
}
