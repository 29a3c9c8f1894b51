//! Sorts, monomials (words of sorts), polynomials (words of words) and the
//! monoidal and rig signatures built from them.
//!
//! Polynomials are kept as plain lists of monomials. That list is already the
//! normal form of an object of the free sesquistrict rig category, so no
//! rewriting of objects is ever needed: `⊕` is concatenation and `⊗` is the
//! i-major product of [`Polynomial::product`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::tape::{self, TapeTerm};
use crate::circuit::CircuitTerm;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sort(Arc<str>);

impl Sort {
    pub fn new(name: &str) -> Self {
        Sort(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Sort {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

/// A word of sorts. The empty word is the monoidal unit.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Monomial(Vec<Sort>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(sorts: Vec<Sort>) -> Self {
        Monomial(sorts)
    }

    pub fn single(sort: Sort) -> Self {
        Monomial(vec![sort])
    }

    /// Convenience constructor from sort names, e.g. `Monomial::of(&["A", "B"])`.
    pub fn of(names: &[&str]) -> Self {
        Monomial(names.iter().map(|n| Sort::new(n)).collect())
    }

    pub fn sorts(&self) -> &[Sort] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Monomial(v)
    }

    /// First sort and the remaining word, if any.
    pub fn split_first(&self) -> Option<(&Sort, Monomial)> {
        self.0
            .split_first()
            .map(|(a, rest)| (a, Monomial(rest.to_vec())))
    }

    pub fn split_at(&self, k: usize) -> (Monomial, Monomial) {
        let (a, b) = self.0.split_at(k);
        (Monomial(a.to_vec()), Monomial(b.to_vec()))
    }

    pub fn to_poly(&self) -> Polynomial {
        Polynomial(vec![self.clone()])
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, s) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromIterator<Sort> for Monomial {
    fn from_iter<I: IntoIterator<Item = Sort>>(iter: I) -> Self {
        Monomial(iter.into_iter().collect())
    }
}

/// A word of monomials. The empty word is the additive unit `0`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Polynomial(Vec<Monomial>);

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial(Vec::new())
    }

    pub fn one() -> Self {
        Polynomial(vec![Monomial::unit()])
    }

    pub fn new(monomials: Vec<Monomial>) -> Self {
        Polynomial(monomials)
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `Some(U)` when the polynomial consists of exactly one monomial.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        match self.0.as_slice() {
            [u] => Some(u),
            _ => None,
        }
    }

    pub fn oplus(&self, other: &Polynomial) -> Polynomial {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Polynomial(v)
    }

    /// `P ⊗ Q = ⊕_i ⊕_j U_i V_j` in i-major order.
    pub fn product(&self, other: &Polynomial) -> Polynomial {
        let mut v = Vec::with_capacity(self.0.len() * other.0.len());
        for u in &self.0 {
            for w in &other.0 {
                v.push(u.concat(w));
            }
        }
        Polynomial(v)
    }

    /// First monomial and the rest, if any.
    pub fn split_first(&self) -> Option<(&Monomial, Polynomial)> {
        self.0
            .split_first()
            .map(|(u, rest)| (u, Polynomial(rest.to_vec())))
    }

    pub fn split_at(&self, k: usize) -> (Polynomial, Polynomial) {
        let (a, b) = self.0.split_at(k);
        (Polynomial(a.to_vec()), Polynomial(b.to_vec()))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (k, u) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{u}")?;
        }
        Ok(())
    }
}

impl From<Monomial> for Polynomial {
    fn from(u: Monomial) -> Self {
        Polynomial(vec![u])
    }
}

impl FromIterator<Monomial> for Polynomial {
    fn from_iter<I: IntoIterator<Item = Monomial>>(iter: I) -> Self {
        Polynomial(iter.into_iter().collect())
    }
}

/// `poly_product` as a free function.
pub fn poly_product(p: &Polynomial, q: &Polynomial) -> Polynomial {
    p.product(q)
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub name: Arc<str>,
    pub arity: Monomial,
    pub coarity: Monomial,
}

impl Generator {
    pub fn new(name: &str, arity: Monomial, coarity: Monomial) -> Self {
        Generator {
            name: Arc::from(name),
            arity,
            coarity,
        }
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {} -> {}", self.name, self.arity, self.coarity)
    }
}

/// A monoidal signature, optionally extended with the per-sort copier,
/// discharger, cocopier and codischarger.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MonSignature {
    sorts: BTreeSet<Sort>,
    generators: BTreeMap<Arc<str>, Generator>,
    pub frobenius_enabled: bool,
}

impl MonSignature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_sort(&mut self, name: &str) -> Result<Sort> {
        let s = Sort::new(name);
        if !self.sorts.insert(s.clone()) {
            return Err(Error::DuplicateSort(name.to_string()));
        }
        Ok(s)
    }

    pub fn add_generator(&mut self, name: &str, arity: Monomial, coarity: Monomial) -> Result<Generator> {
        for s in arity.sorts().iter().chain(coarity.sorts()) {
            if !self.sorts.contains(s) {
                return Err(Error::UndeclaredSort(s.name().to_string()));
            }
        }
        if self.generators.contains_key(name) {
            return Err(Error::DuplicateGenerator(name.to_string()));
        }
        let g = Generator::new(name, arity, coarity);
        self.generators.insert(g.name.clone(), g.clone());
        Ok(g)
    }

    pub fn with_frobenius(mut self) -> Self {
        self.frobenius_enabled = true;
        self
    }

    pub fn sorts(&self) -> impl Iterator<Item = &Sort> {
        self.sorts.iter()
    }

    pub fn has_sort(&self, s: &Sort) -> bool {
        self.sorts.contains(s)
    }

    pub fn sort(&self, name: &str) -> Option<&Sort> {
        self.sorts.iter().find(|s| s.name() == name)
    }

    pub fn generators(&self) -> impl Iterator<Item = &Generator> {
        self.generators.values()
    }

    pub fn generator(&self, name: &str) -> Option<&Generator> {
        self.generators.get(name)
    }

    /// Builds `Gen(name)` after looking the generator up.
    pub fn gen(&self, name: &str) -> Result<CircuitTerm> {
        self.generator(name)
            .cloned()
            .map(CircuitTerm::Gen)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct RigGenerator {
    pub name: Arc<str>,
    pub arity: Polynomial,
    pub coarity: Polynomial,
}

impl fmt::Debug for RigGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {} -> {}", self.name, self.arity, self.coarity)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RigSignature {
    sorts: BTreeSet<Sort>,
    generators: Vec<RigGenerator>,
}

impl RigSignature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_sort(&mut self, name: &str) -> Result<Sort> {
        let s = Sort::new(name);
        if !self.sorts.insert(s.clone()) {
            return Err(Error::DuplicateSort(name.to_string()));
        }
        Ok(s)
    }

    pub fn add_generator(&mut self, name: &str, arity: Polynomial, coarity: Polynomial) -> Result<RigGenerator> {
        for u in arity.monomials().iter().chain(coarity.monomials()) {
            for s in u.sorts() {
                if !self.sorts.contains(s) {
                    return Err(Error::UndeclaredSort(s.name().to_string()));
                }
            }
        }
        if self.generators.iter().any(|g| &*g.name == name) {
            return Err(Error::DuplicateGenerator(name.to_string()));
        }
        let g = RigGenerator {
            name: Arc::from(name),
            arity,
            coarity,
        };
        self.generators.push(g.clone());
        Ok(g)
    }

    pub fn sorts(&self) -> impl Iterator<Item = &Sort> {
        self.sorts.iter()
    }

    pub fn generators(&self) -> &[RigGenerator] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<&RigGenerator> {
        self.generators.iter().find(|g| &*g.name == name)
    }
}

/// The family `s_{j,i} : U_i → V_j` replacing one rig generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorFamily {
    pub source: RigGenerator,
    /// `components[j][i]`, zero-based.
    pub components: Vec<Vec<Generator>>,
}

/// Maps each rig generator name to its monoidal family.
pub type ReductionTable = BTreeMap<Arc<str>, GeneratorFamily>;

/// Name of the component `s_{j,i}` (one-based indices).
pub fn component_name(name: &str, j: usize, i: usize) -> String {
    format!("{name}__{j}_{i}")
}

/// Replaces each `s : ⊕_i U_i → ⊕_j V_j` by generators `s_{j,i} : U_i → V_j`.
///
/// A generator whose arity and coarity are both single monomials keeps its name.
pub fn reduce_rig_signature(rs: &RigSignature) -> Result<(MonSignature, ReductionTable)> {
    let mut sig = MonSignature::new();
    for s in rs.sorts() {
        sig.add_sort(s.name())?;
    }
    let user_names: BTreeSet<&str> = rs.generators().iter().map(|g| &*g.name).collect();
    let mut table = ReductionTable::new();
    for g in rs.generators() {
        let simple = g.arity.len() == 1 && g.coarity.len() == 1;
        let mut components = Vec::with_capacity(g.coarity.len());
        for (j, v) in g.coarity.monomials().iter().enumerate() {
            let mut row = Vec::with_capacity(g.arity.len());
            for (i, u) in g.arity.monomials().iter().enumerate() {
                let name = if simple {
                    g.name.to_string()
                } else {
                    let n = component_name(&g.name, j + 1, i + 1);
                    if user_names.contains(n.as_str()) {
                        return Err(Error::NameCollision(n));
                    }
                    n
                };
                row.push(sig.add_generator(&name, u.clone(), v.clone()).map_err(|e| match e {
                    Error::DuplicateGenerator(n) => Error::NameCollision(n),
                    e => e,
                })?);
            }
            components.push(row);
        }
        table.insert(
            g.name.clone(),
            GeneratorFamily {
                source: g.clone(),
                components,
            },
        );
    }
    Ok((sig, table))
}

/// The tape `(⊕_i Δ^m_{U_i}) ; (⊕_i ⊕_j ⌊s_{j,i}⌋) ; ∇^n_Q` standing for a rig generator.
pub fn expand_generator(name: &str, table: &ReductionTable) -> Result<TapeTerm> {
    let fam = table
        .get(name)
        .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
    let dom = &fam.source.arity;
    let cod = &fam.source.coarity;
    if let ([u], [v]) = (dom.monomials(), cod.monomials()) {
        let _ = (u, v);
        return Ok(TapeTerm::Lift(CircuitTerm::Gen(fam.components[0][0].clone())));
    }
    let m = cod.len();
    let n = dom.len();
    let diags = tape::oplus_all(dom.monomials().iter().map(|u| tape::diag_n(u, m)));
    let middle = tape::oplus_all((0..n).flat_map(|i| {
        fam.components
            .iter()
            .map(move |row| TapeTerm::Lift(CircuitTerm::Gen(row[i].clone())))
    }));
    let merge = tape::codiag_n_poly(cod, n);
    Ok(tape::seq_all([diags, middle, merge]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(words: &[&[&str]]) -> Polynomial {
        words.iter().map(|w| Monomial::of(w)).collect()
    }

    #[test]
    fn product_matches_sesquistrict_order() {
        let ab = p(&[&["A"], &["B"]]);
        let cd = p(&[&["C"], &["D"]]);
        assert_eq!(
            ab.product(&cd),
            p(&[&["A", "C"], &["A", "D"], &["B", "C"], &["B", "D"]])
        );
    }

    #[test]
    fn product_units() {
        let q = p(&[&["A", "B"], &[]]);
        assert_eq!(q.product(&Polynomial::one()), q);
        assert_eq!(Polynomial::one().product(&q), q);
        assert_eq!(Polynomial::zero().product(&q), Polynomial::zero());
        assert_eq!(q.product(&Polynomial::zero()), Polynomial::zero());
    }

    #[test]
    fn product_with_unit_summand() {
        let a1 = p(&[&["A"], &[]]);
        assert_eq!(
            a1.product(&a1),
            p(&[&["A", "A"], &["A"], &["A"], &[]])
        );
    }

    #[test]
    fn undeclared_sort_is_rejected() {
        let mut sig = MonSignature::new();
        sig.add_sort("A").unwrap();
        let err = sig
            .add_generator("f", Monomial::of(&["B"]), Monomial::unit())
            .unwrap_err();
        assert_eq!(err, Error::UndeclaredSort("B".into()));
    }

    fn app_e() -> RigSignature {
        let mut rs = RigSignature::new();
        for s in ["A", "B", "C"] {
            rs.add_sort(s).unwrap();
        }
        rs.add_generator("s", p(&[&["A", "B"], &["C"]]), p(&[&["A"], &["B"], &["C"]]))
            .unwrap();
        rs
    }

    #[test]
    fn reduction_emits_six_components() {
        let (sig, table) = reduce_rig_signature(&app_e()).unwrap();
        let names: Vec<_> = sig.generators().map(|g| g.name.to_string()).collect();
        assert_eq!(
            names,
            ["s__1_1", "s__1_2", "s__2_1", "s__2_2", "s__3_1", "s__3_2"]
        );
        let fam = &table["s"];
        assert_eq!(fam.components[2][1].arity, Monomial::of(&["C"]));
        assert_eq!(fam.components[2][1].coarity, Monomial::of(&["C"]));
        assert_eq!(fam.components[0][0].arity, Monomial::of(&["A", "B"]));
        assert_eq!(fam.components[0][0].coarity, Monomial::of(&["A"]));
    }

    #[test]
    fn reduction_of_monomial_generator_keeps_name() {
        let mut rs = RigSignature::new();
        rs.add_sort("A").unwrap();
        rs.add_generator("f", p(&[&["A"]]), p(&[&["A", "A"]])).unwrap();
        let (sig, table) = reduce_rig_signature(&rs).unwrap();
        assert!(sig.generator("f").is_some());
        let t = expand_generator("f", &table).unwrap();
        assert_eq!(t, TapeTerm::Lift(sig.gen("f").unwrap()));
    }

    #[test]
    fn reduction_from_zero_is_empty() {
        let mut rs = RigSignature::new();
        rs.add_sort("A").unwrap();
        rs.add_sort("B").unwrap();
        rs.add_generator("z", Polynomial::zero(), p(&[&["A"], &["B"]])).unwrap();
        let (sig, table) = reduce_rig_signature(&rs).unwrap();
        assert_eq!(sig.generators().count(), 0);
        assert!(table["z"].components.iter().all(|row| row.is_empty()));
    }

    #[test]
    fn reduction_detects_collisions() {
        let mut rs = app_e();
        rs.add_generator("s__1_1", p(&[&["A"]]), p(&[&["A"]])).unwrap();
        assert!(matches!(
            reduce_rig_signature(&rs),
            Err(Error::NameCollision(_))
        ));
    }
}
