//! The positive calculus of relations: expressions, their direct semantics,
//! their encoding as tapes, and the decision procedure built on that encoding.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::circuit::CircuitTerm;
use crate::error::{Error, Result};
use crate::order::{tape_leq, Theory};
use crate::rel::{search_model, FiniteRelation, Interpretation, SearchConfig};
use crate::signature::{MonSignature, Monomial, Sort};
use crate::tape::{self, TapeTerm};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum CrExpr {
    Rel(Arc<str>),
    One,
    Seq(Arc<CrExpr>, Arc<CrExpr>),
    Bot,
    Union(Arc<CrExpr>, Arc<CrExpr>),
    Top,
    Inter(Arc<CrExpr>, Arc<CrExpr>),
    Op(Arc<CrExpr>),
}

use CrExpr::*;

impl CrExpr {
    pub fn rel(name: &str) -> CrExpr {
        Rel(Arc::from(name))
    }

    pub fn seq(a: CrExpr, b: CrExpr) -> CrExpr {
        Seq(Arc::new(a), Arc::new(b))
    }

    pub fn union(a: CrExpr, b: CrExpr) -> CrExpr {
        Union(Arc::new(a), Arc::new(b))
    }

    pub fn inter(a: CrExpr, b: CrExpr) -> CrExpr {
        Inter(Arc::new(a), Arc::new(b))
    }

    pub fn op(a: CrExpr) -> CrExpr {
        Op(Arc::new(a))
    }

    /// Number of operator nodes; symbols and constants are leaves.
    pub fn operators(&self) -> usize {
        match self {
            Rel(_) | One | Bot | Top => 0,
            Seq(a, b) | Union(a, b) | Inter(a, b) => 1 + a.operators() + b.operators(),
            Op(a) => 1 + a.operators(),
        }
    }

    pub fn symbols(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Rel(r) => {
                out.insert(r.clone());
            }
            One | Bot | Top => {}
            Seq(a, b) | Union(a, b) | Inter(a, b) => {
                a.collect(out);
                b.collect(out);
            }
            Op(a) => a.collect(out),
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Union(..) => 0,
            Inter(..) => 1,
            Seq(..) => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for CrExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let paren = |f: &mut fmt::Formatter<'_>, e: &CrExpr, min: u8| {
            if e.prec() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        let bin = |f: &mut fmt::Formatter<'_>, a: &CrExpr, op: &str, b: &CrExpr, p: u8| {
            paren(f, a, p)?;
            write!(f, " {op} ")?;
            paren(f, b, p + 1)
        };
        match self {
            Rel(r) => f.write_str(r),
            One => f.write_str("id"),
            Bot => f.write_str("bot"),
            Top => f.write_str("top"),
            Union(a, b) => bin(f, a, "|", b, 0),
            Inter(a, b) => bin(f, a, "&", b, 1),
            Seq(a, b) => bin(f, a, ";", b, 2),
            Op(a) => {
                paren(f, a, 3)?;
                f.write_str("~")
            }
        }
    }
}

impl fmt::Debug for CrExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The single sort of a relational signature.
pub fn cr_sort(sig: &MonSignature) -> Result<Sort> {
    let sorts: Vec<&Sort> = sig.sorts().collect();
    match sorts.as_slice() {
        [a] => Ok((*a).clone()),
        _ => Err(Error::TypeMismatch(format!(
            "relation expressions need exactly one sort, the signature has {}",
            sorts.len()
        ))),
    }
}

/// A single-sorted signature (sort `A`) declaring each symbol as `A -> A`.
pub fn cr_signature<'a>(symbols: impl IntoIterator<Item = &'a str>) -> MonSignature {
    let mut sig = MonSignature::new().with_frobenius();
    sig.add_sort("A").unwrap();
    let a = Monomial::of(&["A"]);
    for s in symbols {
        if sig.generator(s).is_none() {
            sig.add_generator(s, a.clone(), a.clone()).unwrap();
        }
    }
    sig
}

fn relation_symbol(name: &str, sig: &MonSignature, a: &Sort) -> Result<CircuitTerm> {
    let g = sig.gen(name)?;
    let aa = Monomial::single(a.clone());
    match &g {
        CircuitTerm::Gen(gen) if gen.arity == aa && gen.coarity == aa => Ok(g),
        _ => Err(Error::TypeMismatch(format!("`{name}` is not a relation on {a}"))),
    }
}

pub fn eval_cr(e: &CrExpr, sig: &MonSignature, interp: &Interpretation) -> Result<FiniteRelation> {
    let a = cr_sort(sig)?;
    let x = Monomial::single(a.clone()).to_poly();
    let ev = |e: &CrExpr| eval_cr(e, sig, interp);
    Ok(match e {
        Rel(r) => crate::rel::eval_circuit(&relation_symbol(r, sig, &a)?, interp)?,
        One => FiniteRelation::identity(x, interp)?,
        Bot => FiniteRelation::empty(x.clone(), x, interp)?,
        Top => {
            let mut r = FiniteRelation::empty(x.clone(), x, interp)?;
            for i in 0..r.rows() {
                for j in 0..r.cols() {
                    r.set(i, j);
                }
            }
            r
        }
        Seq(p, q) => ev(p)?.compose(&ev(q)?),
        Union(p, q) => ev(p)?.union(&ev(q)?),
        Inter(p, q) => ev(p)?.intersection(&ev(q)?),
        Op(p) => ev(p)?.converse(),
    })
}

/// The tape of type `A → A` standing for `e`.
pub fn encode(e: &CrExpr, sig: &MonSignature) -> Result<TapeTerm> {
    let a = cr_sort(sig)?;
    let u = Monomial::single(a.clone());
    let enc = |e: &CrExpr| encode(e, sig);
    Ok(match e {
        Rel(r) => TapeTerm::Lift(relation_symbol(r, sig, &a)?),
        One => TapeTerm::Lift(CircuitTerm::Id(a)),
        Bot => tape::zero(&u.to_poly(), &u.to_poly()),
        Top => TapeTerm::Lift(CircuitTerm::seq(
            CircuitTerm::Discharger(a.clone()),
            CircuitTerm::Codischarger(a),
        )),
        Seq(p, q) => tape::seq_all([enc(p)?, enc(q)?]),
        Union(p, q) => tape::seq_all([
            TapeTerm::Diag(u.clone()),
            TapeTerm::oplus(enc(p)?, enc(q)?),
            TapeTerm::Codiag(u),
        ]),
        Inter(p, q) => tape::seq_all([
            TapeTerm::Lift(CircuitTerm::Copier(a.clone())),
            tape::tensor(&enc(p)?, &enc(q)?)?,
            TapeTerm::Lift(CircuitTerm::Cocopier(a)),
        ]),
        Op(p) => tape::dagger(&enc(p)?)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    /// The inclusion fails; the interpretation witnesses it when the search found one.
    Fails(Option<Interpretation>),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

fn cb_signature(sig: &MonSignature) -> MonSignature {
    sig.clone().with_frobenius()
}

/// Decides `e1 ≤ e2` over all relational interpretations.
pub fn decide_leq(e1: &CrExpr, e2: &CrExpr, sig: &MonSignature, cfg: &SearchConfig) -> Result<Verdict> {
    let sig = cb_signature(sig);
    let (t1, t2) = (encode(e1, &sig)?, encode(e2, &sig)?);
    if tape_leq(&t1, &t2, Theory::CB)? {
        return Ok(Verdict::Holds);
    }
    let witness = search_model(&sig, cfg, |i| {
        Ok(!eval_cr(e1, &sig, i)?.is_subset(&eval_cr(e2, &sig, i)?))
    })?;
    Ok(Verdict::Fails(witness))
}

/// Both inclusions; the first failing direction is reported.
pub fn decide_equiv(e1: &CrExpr, e2: &CrExpr, sig: &MonSignature, cfg: &SearchConfig) -> Result<Verdict> {
    match decide_leq(e1, e2, sig, cfg)? {
        Verdict::Holds => decide_leq(e2, e1, sig, cfg),
        fails => Ok(fails),
    }
}
