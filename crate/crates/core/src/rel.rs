//! Finite relational semantics, used as an independent oracle.
//!
//! A monomial denotes the cartesian product of its sorts' carriers, enumerated
//! in mixed radix with the first sort most significant. A polynomial denotes
//! the disjoint union of its monomials, so an element is a tagged tuple
//! `(monomial index, tuple)`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::CircuitTerm;
use crate::error::{Error, Result};
use crate::signature::{Generator, MonSignature, Monomial, Polynomial};
use crate::tape::TapeTerm;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interpretation {
    pub carrier: BTreeMap<String, usize>,
    pub relations: BTreeMap<String, Vec<(Vec<usize>, Vec<usize>)>>,
}

impl Interpretation {
    pub fn from_json(text: &str) -> Result<Interpretation> {
        serde_json::from_str(text).map_err(|e| Error::InvalidModel(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("interpretations always serialise")
    }

    fn size(&self, u: &Monomial) -> Result<usize> {
        u.sorts().iter().try_fold(1usize, |acc, s| {
            self.carrier
                .get(s.name())
                .map(|&n| acc * n)
                .ok_or_else(|| Error::MissingInterpretation(s.name().to_string()))
        })
    }

    fn index(&self, u: &Monomial, tuple: &[usize]) -> Result<usize> {
        if tuple.len() != u.len() {
            return Err(Error::InvalidModel(format!(
                "tuple {tuple:?} does not have the length of {u}"
            )));
        }
        let mut idx = 0;
        for (s, &x) in u.sorts().iter().zip(tuple) {
            let n = self.size(&Monomial::single(s.clone()))?;
            if x >= n {
                return Err(Error::InvalidModel(format!("{x} is outside the carrier of {s}")));
            }
            idx = idx * n + x;
        }
        Ok(idx)
    }

    fn tuple(&self, u: &Monomial, mut idx: usize) -> Vec<usize> {
        let mut t = vec![0; u.len()];
        for (k, s) in u.sorts().iter().enumerate().rev() {
            let n = self.carrier[s.name()];
            t[k] = idx % n;
            idx /= n;
        }
        t
    }

    /// Every sort has a positive carrier and every generator a relation of the right arity.
    pub fn validate(&self, sig: &MonSignature) -> Result<()> {
        for s in sig.sorts() {
            match self.carrier.get(s.name()) {
                Some(0) => return Err(Error::InvalidModel(format!("carrier of {s} is empty"))),
                Some(_) => {}
                None => return Err(Error::MissingInterpretation(s.name().to_string())),
            }
        }
        for g in sig.generators() {
            self.relation(g)?;
        }
        Ok(())
    }

    fn relation(&self, g: &Generator) -> Result<FiniteRelation> {
        let pairs = self
            .relations
            .get(&*g.name)
            .ok_or_else(|| Error::MissingInterpretation(g.name.to_string()))?;
        let mut r = FiniteRelation::empty(g.arity.to_poly(), g.coarity.to_poly(), self)?;
        for (x, y) in pairs {
            let (i, j) = (self.index(&g.arity, x)?, self.index(&g.coarity, y)?);
            r.set(i, j);
        }
        Ok(r)
    }
}

/// A relation between the elements of two polynomials, stored as a bit matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRelation {
    pub dom: Polynomial,
    pub cod: Polynomial,
    dom_sizes: Vec<usize>,
    cod_sizes: Vec<usize>,
    rows: usize,
    cols: usize,
    words: usize,
    bits: Vec<u64>,
}

pub type TaggedTuple = (usize, Vec<usize>);

impl FiniteRelation {
    pub fn empty(dom: Polynomial, cod: Polynomial, interp: &Interpretation) -> Result<FiniteRelation> {
        let sizes = |p: &Polynomial| p.monomials().iter().map(|u| interp.size(u)).collect::<Result<Vec<_>>>();
        let (dom_sizes, cod_sizes) = (sizes(&dom)?, sizes(&cod)?);
        Ok(Self::with_sizes(dom, cod, dom_sizes, cod_sizes))
    }

    fn with_sizes(dom: Polynomial, cod: Polynomial, dom_sizes: Vec<usize>, cod_sizes: Vec<usize>) -> FiniteRelation {
        let rows = dom_sizes.iter().sum();
        let cols: usize = cod_sizes.iter().sum();
        let words = cols.div_ceil(64).max(1);
        FiniteRelation {
            dom,
            cod,
            dom_sizes,
            cod_sizes,
            rows,
            cols,
            words,
            bits: vec![0; rows * words],
        }
    }

    fn like(&self, dom: &Self, cod: &Self) -> FiniteRelation {
        let _ = self;
        Self::with_sizes(dom.dom.clone(), cod.cod.clone(), dom.dom_sizes.clone(), cod.cod_sizes.clone())
    }

    pub fn identity(p: Polynomial, interp: &Interpretation) -> Result<FiniteRelation> {
        let mut r = Self::empty(p.clone(), p, interp)?;
        for i in 0..r.rows {
            r.set(i, i);
        }
        Ok(r)
    }

    pub fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &FiniteRelation) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &FiniteRelation) -> FiniteRelation {
        let mut r = self.clone();
        for (a, b) in r.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
        r
    }

    pub fn intersection(&self, other: &FiniteRelation) -> FiniteRelation {
        let mut r = self.clone();
        for (a, b) in r.bits.iter_mut().zip(&other.bits) {
            *a &= b;
        }
        r
    }

    pub fn converse(&self) -> FiniteRelation {
        let mut r = Self::with_sizes(self.cod.clone(), self.dom.clone(), self.cod_sizes.clone(), self.dom_sizes.clone());
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    r.set(j, i);
                }
            }
        }
        r
    }

    pub fn compose(&self, other: &FiniteRelation) -> FiniteRelation {
        let mut r = self.like(self, other);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    let (dst, src) = (i * r.words, j * other.words);
                    for w in 0..r.words {
                        r.bits[dst + w] |= other.bits[src + w];
                    }
                }
            }
        }
        r
    }

    /// Disjoint union of relations, block diagonal.
    pub fn oplus(&self, other: &FiniteRelation) -> FiniteRelation {
        let mut r = Self::with_sizes(
            self.dom.oplus(&other.dom),
            self.cod.oplus(&other.cod),
            [self.dom_sizes.clone(), other.dom_sizes.clone()].concat(),
            [self.cod_sizes.clone(), other.cod_sizes.clone()].concat(),
        );
        self.each(|i, j| r.set(i, j));
        other.each(|i, j| r.set(self.rows + i, self.cols + j));
        r
    }

    /// Cartesian product of two relations between single monomials.
    fn times(&self, other: &FiniteRelation) -> FiniteRelation {
        let mut r = Self::with_sizes(
            self.dom.product(&other.dom),
            self.cod.product(&other.cod),
            vec![self.rows * other.rows],
            vec![self.cols * other.cols],
        );
        self.each(|i, j| other.each(|k, l| r.set(i * other.rows + k, j * other.cols + l)));
        r
    }

    fn each(&self, mut f: impl FnMut(usize, usize)) {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    f(i, j);
                }
            }
        }
    }

    fn untag(sizes: &[usize], mut idx: usize) -> (usize, usize) {
        for (k, &n) in sizes.iter().enumerate() {
            if idx < n {
                return (k, idx);
            }
            idx -= n;
        }
        unreachable!("index past the end of the domain")
    }

    /// The pairs of the relation as tagged tuples.
    pub fn pairs(&self, interp: &Interpretation) -> Vec<(TaggedTuple, TaggedTuple)> {
        let mut out = Vec::new();
        self.each(|i, j| {
            let (a, x) = Self::untag(&self.dom_sizes, i);
            let (b, y) = Self::untag(&self.cod_sizes, j);
            out.push((
                (a, interp.tuple(&self.dom.monomials()[a], x)),
                (b, interp.tuple(&self.cod.monomials()[b], y)),
            ));
        });
        out
    }
}

fn sort_size(interp: &Interpretation, s: &crate::signature::Sort) -> Result<usize> {
    interp.size(&Monomial::single(s.clone()))
}

pub fn eval_circuit(c: &CircuitTerm, interp: &Interpretation) -> Result<FiniteRelation> {
    c.type_of()?;
    eval_typed(c, interp)
}

// Typing is checked once up front; below, only leaves ask for their types.
fn eval_typed(c: &CircuitTerm, interp: &Interpretation) -> Result<FiniteRelation> {
    use CircuitTerm::*;
    let leaf = || c.type_of();
    Ok(match c {
        Id(_) | IdUnit => FiniteRelation::identity(leaf()?.0.to_poly(), interp)?,
        Gen(g) => interp.relation(g)?,
        Sym(a, b) => {
            let (u, v) = leaf()?;
            let (na, nb) = (sort_size(interp, a)?, sort_size(interp, b)?);
            let mut r = FiniteRelation::empty(u.to_poly(), v.to_poly(), interp)?;
            for x in 0..na {
                for y in 0..nb {
                    r.set(x * nb + y, y * na + x);
                }
            }
            r
        }
        Seq(a, b) => eval_typed(a, interp)?.compose(&eval_typed(b, interp)?),
        Tensor(a, b) => eval_typed(a, interp)?.times(&eval_typed(b, interp)?),
        Copier(a) | Discharger(a) | Cocopier(a) | Codischarger(a) => {
            let (u, v) = leaf()?;
            let n = sort_size(interp, a)?;
            let mut r = FiniteRelation::empty(u.to_poly(), v.to_poly(), interp)?;
            for x in 0..n {
                match c {
                    Copier(_) => r.set(x, x * n + x),
                    Discharger(_) => r.set(x, 0),
                    Cocopier(_) => r.set(x * n + x, x),
                    _ => r.set(0, x),
                }
            }
            r
        }
    })
}

pub fn eval_tape(t: &TapeTerm, interp: &Interpretation) -> Result<FiniteRelation> {
    t.type_of()?;
    eval_tape_typed(t, interp)
}

fn eval_tape_typed(t: &TapeTerm, interp: &Interpretation) -> Result<FiniteRelation> {
    use TapeTerm::*;
    Ok(match t {
        IdMon(u) => FiniteRelation::identity(u.to_poly(), interp)?,
        IdZero => FiniteRelation::identity(Polynomial::zero(), interp)?,
        Lift(c) => eval_typed(c, interp)?,
        SymPlus(u, v) => {
            let (nu, nv) = (interp.size(u)?, interp.size(v)?);
            let dom = u.to_poly().oplus(&v.to_poly());
            let cod = v.to_poly().oplus(&u.to_poly());
            let mut r = FiniteRelation::empty(dom, cod, interp)?;
            for x in 0..nu {
                r.set(x, nv + x);
            }
            for y in 0..nv {
                r.set(nu + y, y);
            }
            r
        }
        Seq(a, b) => eval_tape_typed(a, interp)?.compose(&eval_tape_typed(b, interp)?),
        Oplus(a, b) => eval_tape_typed(a, interp)?.oplus(&eval_tape_typed(b, interp)?),
        Bang(u) => FiniteRelation::empty(u.to_poly(), Polynomial::zero(), interp)?,
        Cobang(u) => FiniteRelation::empty(Polynomial::zero(), u.to_poly(), interp)?,
        Diag(u) | Codiag(u) => {
            let n = interp.size(u)?;
            let two = u.to_poly().oplus(&u.to_poly());
            let mut r = FiniteRelation::empty(u.to_poly(), two, interp)?;
            for x in 0..n {
                r.set(x, x);
                r.set(x, n + x);
            }
            if matches!(t, Codiag(_)) {
                r = r.converse();
            }
            r
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Interpretations tried per carrier size.
    pub budget: u64,
    pub max_carrier: usize,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: 4096,
            max_carrier: 3,
            seed: 0,
        }
    }
}

/// Interpretations with every carrier of size `n`, over the relation bits of `sig`.
pub struct ModelSpace<'a> {
    sig: &'a MonSignature,
    base: Interpretation,
    slots: Vec<(Generator, usize, usize)>,
    pub bits: usize,
}

impl<'a> ModelSpace<'a> {
    pub fn new(sig: &'a MonSignature, n: usize) -> ModelSpace<'a> {
        let carrier: BTreeMap<String, usize> = sig.sorts().map(|s| (s.name().to_string(), n)).collect();
        let base = Interpretation {
            carrier,
            relations: BTreeMap::new(),
        };
        let slots: Vec<_> = sig
            .generators()
            .map(|g| {
                let rows = base.size(&g.arity).unwrap_or(0);
                let cols = base.size(&g.coarity).unwrap_or(0);
                (g.clone(), rows, cols)
            })
            .collect();
        let bits = slots.iter().map(|(_, r, c)| r * c).sum();
        ModelSpace { sig, base, slots, bits }
    }

    /// Number of assignments, saturating.
    pub fn count(&self) -> u128 {
        if self.bits >= 127 {
            u128::MAX
        } else {
            1u128 << self.bits
        }
    }

    /// The interpretation whose relation bits are listed in `bit` order:
    /// generators by name, pairs row-major within a generator.
    pub fn build(&self, bit: impl Fn(usize) -> bool) -> Interpretation {
        let mut interp = self.base.clone();
        let mut k = 0;
        for (g, rows, cols) in &self.slots {
            let mut pairs = Vec::new();
            for i in 0..*rows {
                for j in 0..*cols {
                    if bit(k) {
                        pairs.push((self.base.tuple(&g.arity, i), self.base.tuple(&g.coarity, j)));
                    }
                    k += 1;
                }
            }
            interp.relations.insert(g.name.to_string(), pairs);
        }
        let _ = self.sig;
        interp
    }

    pub fn from_mask(&self, mask: u128) -> Interpretation {
        self.build(|k| mask >> k & 1 == 1)
    }
}

/// Searches carriers `1..=max_carrier` for an interpretation satisfying `bad`:
/// exhaustively in mask order when the space fits the budget, otherwise by
/// seeded uniform sampling.
pub fn search_model(
    sig: &MonSignature,
    cfg: &SearchConfig,
    mut bad: impl FnMut(&Interpretation) -> Result<bool>,
) -> Result<Option<Interpretation>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for n in 1..=cfg.max_carrier {
        let space = ModelSpace::new(sig, n);
        let count = space.count();
        if count <= cfg.budget as u128 {
            for mask in 0..count {
                let interp = space.from_mask(mask);
                if bad(&interp)? {
                    return Ok(Some(interp));
                }
            }
        } else {
            for _ in 0..cfg.budget {
                let bits: Vec<bool> = (0..space.bits).map(|_| rng.gen()).collect();
                let interp = space.build(|k| bits[k]);
                if bad(&interp)? {
                    return Ok(Some(interp));
                }
            }
        }
    }
    Ok(None)
}

/// An interpretation in which `t` relates something `s` does not.
pub fn search_counterexample(
    t: &TapeTerm,
    s: &TapeTerm,
    sig: &MonSignature,
    cfg: &SearchConfig,
) -> Result<Option<Interpretation>> {
    if t.type_of()? != s.type_of()? {
        return Err(Error::TypeMismatch("counterexample search needs tapes of one type".into()));
    }
    search_model(sig, cfg, |i| Ok(!eval_tape(t, i)?.is_subset(&eval_tape(s, i)?)))
}
