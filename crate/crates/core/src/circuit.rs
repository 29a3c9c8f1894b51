//! Circuits: string diagrams over a monoidal signature, optionally with the
//! per-sort copier, discharger, cocopier and codischarger.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hypergraph::{find_homomorphism, InterfacedHypergraph};
use crate::signature::{Generator, MonSignature, Monomial, Sort};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum CircuitTerm {
    Id(Sort),
    IdUnit,
    Gen(Generator),
    Sym(Sort, Sort),
    Seq(Arc<CircuitTerm>, Arc<CircuitTerm>),
    Tensor(Arc<CircuitTerm>, Arc<CircuitTerm>),
    Copier(Sort),
    Discharger(Sort),
    Cocopier(Sort),
    Codischarger(Sort),
}

use CircuitTerm::*;

impl CircuitTerm {
    pub fn seq(a: CircuitTerm, b: CircuitTerm) -> CircuitTerm {
        if a.is_identity() {
            return b;
        }
        if b.is_identity() {
            return a;
        }
        Seq(Arc::new(a), Arc::new(b))
    }

    pub fn tensor(a: CircuitTerm, b: CircuitTerm) -> CircuitTerm {
        match (&a, &b) {
            (IdUnit, _) => b,
            (_, IdUnit) => a,
            _ => Tensor(Arc::new(a), Arc::new(b)),
        }
    }

    /// True for terms built only from identities, so `seq` may drop them.
    pub fn is_identity(&self) -> bool {
        match self {
            Id(_) | IdUnit => true,
            Tensor(a, b) => a.is_identity() && b.is_identity(),
            _ => false,
        }
    }

    pub fn uses_frobenius(&self) -> bool {
        match self {
            Copier(_) | Discharger(_) | Cocopier(_) | Codischarger(_) => true,
            Seq(a, b) | Tensor(a, b) => a.uses_frobenius() || b.uses_frobenius(),
            _ => false,
        }
    }

    pub fn type_of(&self) -> Result<(Monomial, Monomial)> {
        Ok(match self {
            Id(a) => (Monomial::single(a.clone()), Monomial::single(a.clone())),
            IdUnit => (Monomial::unit(), Monomial::unit()),
            Gen(g) => (g.arity.clone(), g.coarity.clone()),
            Sym(a, b) => (
                Monomial::new(vec![a.clone(), b.clone()]),
                Monomial::new(vec![b.clone(), a.clone()]),
            ),
            Seq(c, d) => {
                let (x, y) = c.type_of()?;
                let (y2, z) = d.type_of()?;
                if y != y2 {
                    return Err(Error::CircuitMismatch { left: y, right: y2 });
                }
                (x, z)
            }
            Tensor(c, d) => {
                let (x1, y1) = c.type_of()?;
                let (x2, y2) = d.type_of()?;
                (x1.concat(&x2), y1.concat(&y2))
            }
            Copier(a) => (Monomial::single(a.clone()), Monomial::new(vec![a.clone(), a.clone()])),
            Discharger(a) => (Monomial::single(a.clone()), Monomial::unit()),
            Cocopier(a) => (Monomial::new(vec![a.clone(), a.clone()]), Monomial::single(a.clone())),
            Codischarger(a) => (Monomial::unit(), Monomial::single(a.clone())),
        })
    }

    pub fn dom(&self) -> Result<Monomial> {
        Ok(self.type_of()?.0)
    }

    pub fn cod(&self) -> Result<Monomial> {
        Ok(self.type_of()?.1)
    }

    pub fn to_hypergraph(&self) -> Result<InterfacedHypergraph> {
        Ok(match self {
            Id(a) => InterfacedHypergraph::spider(a, 1, 1),
            IdUnit => InterfacedHypergraph::empty(),
            Gen(g) => InterfacedHypergraph::generator(g),
            Sym(a, b) => InterfacedHypergraph::symmetry(a, b),
            Seq(c, d) => c.to_hypergraph()?.compose(&d.to_hypergraph()?)?,
            Tensor(c, d) => c.to_hypergraph()?.tensor(&d.to_hypergraph()?),
            Copier(a) => InterfacedHypergraph::spider(a, 1, 2),
            Discharger(a) => InterfacedHypergraph::spider(a, 1, 0),
            Cocopier(a) => InterfacedHypergraph::spider(a, 2, 1),
            Codischarger(a) => InterfacedHypergraph::spider(a, 0, 1),
        })
    }

    fn prec(&self) -> u8 {
        match self {
            Seq(..) => 0,
            Tensor(..) => 1,
            _ => 2,
        }
    }
}

fn check_terms(c: &CircuitTerm, sig: &MonSignature) -> Result<()> {
    let sort = |a: &Sort| {
        if sig.has_sort(a) {
            Ok(())
        } else {
            Err(Error::UndeclaredSort(a.name().to_string()))
        }
    };
    let frob = |a: &Sort| {
        if sig.frobenius_enabled {
            sort(a)
        } else {
            Err(Error::FrobeniusDisabled)
        }
    };
    match c {
        Id(a) => sort(a),
        IdUnit => Ok(()),
        Gen(g) => match sig.generator(&g.name) {
            Some(h) if h == g => Ok(()),
            _ => Err(Error::UnknownGenerator(g.name.to_string())),
        },
        Sym(a, b) => sort(a).and(sort(b)),
        Seq(x, y) | Tensor(x, y) => check_terms(x, sig).and(check_terms(y, sig)),
        Copier(a) | Discharger(a) | Cocopier(a) | Codischarger(a) => frob(a),
    }
}

/// Checks every symbol against `sig` and returns the (domain, codomain) words.
pub fn type_check_circuit(c: &CircuitTerm, sig: &MonSignature) -> Result<(Monomial, Monomial)> {
    check_terms(c, sig)?;
    c.type_of()
}

pub fn id_word(u: &Monomial) -> CircuitTerm {
    u.sorts()
        .iter()
        .map(|a| Id(a.clone()))
        .reduce(CircuitTerm::tensor)
        .unwrap_or(IdUnit)
}

fn tensor_all(parts: impl IntoIterator<Item = CircuitTerm>) -> CircuitTerm {
    parts.into_iter().reduce(CircuitTerm::tensor).unwrap_or(IdUnit)
}

/// `σ_{U,V} : UV → VU` assembled from single-sort crossings.
pub fn sym_word(u: &Monomial, v: &Monomial) -> CircuitTerm {
    if u.is_empty() || v.is_empty() {
        return id_word(&u.concat(v));
    }
    if let Some((a, rest)) = u.split_first().filter(|(_, r)| !r.is_empty()) {
        return CircuitTerm::seq(
            CircuitTerm::tensor(Id(a.clone()), sym_word(&rest, v)),
            CircuitTerm::tensor(sym_word(&Monomial::single(a.clone()), v), id_word(&rest)),
        );
    }
    let a = &u.sorts()[0];
    let (b, rest) = v.split_first().unwrap();
    if rest.is_empty() {
        return Sym(a.clone(), b.clone());
    }
    CircuitTerm::seq(
        CircuitTerm::tensor(Sym(a.clone(), b.clone()), id_word(&rest)),
        CircuitTerm::tensor(Id(b.clone()), sym_word(u, &rest)),
    )
}

/// `◁_U : U → UU`; the unit word gets the empty circuit.
pub fn word_copier(u: &Monomial) -> CircuitTerm {
    match u.split_first() {
        None => IdUnit,
        Some((a, rest)) if rest.is_empty() => Copier(a.clone()),
        Some((a, rest)) => {
            let single = Monomial::single(a.clone());
            CircuitTerm::seq(
                CircuitTerm::tensor(Copier(a.clone()), word_copier(&rest)),
                tensor_all([Id(a.clone()), sym_word(&single, &rest), id_word(&rest)]),
            )
        }
    }
}

pub fn word_cocopier(u: &Monomial) -> CircuitTerm {
    match u.split_first() {
        None => IdUnit,
        Some((a, rest)) if rest.is_empty() => Cocopier(a.clone()),
        Some((a, rest)) => {
            let single = Monomial::single(a.clone());
            CircuitTerm::seq(
                tensor_all([Id(a.clone()), sym_word(&rest, &single), id_word(&rest)]),
                CircuitTerm::tensor(Cocopier(a.clone()), word_cocopier(&rest)),
            )
        }
    }
}

pub fn word_discharger(u: &Monomial) -> CircuitTerm {
    tensor_all(u.sorts().iter().map(|a| Discharger(a.clone())))
}

pub fn word_codischarger(u: &Monomial) -> CircuitTerm {
    tensor_all(u.sorts().iter().map(|a| Codischarger(a.clone())))
}

/// Bends both boundaries round: `V → U` for `c : U → V`.
pub fn transpose(c: &CircuitTerm) -> Result<CircuitTerm> {
    let (u, v) = c.type_of()?;
    let cup = CircuitTerm::seq(word_codischarger(&u), word_copier(&u));
    let cap = CircuitTerm::seq(word_cocopier(&v), word_discharger(&v));
    Ok(CircuitTerm::seq(
        CircuitTerm::seq(
            CircuitTerm::tensor(cup, id_word(&v)),
            tensor_all([id_word(&u), c.clone(), id_word(&v)]),
        ),
        CircuitTerm::tensor(id_word(&u), cap),
    ))
}

fn same_type(c: &CircuitTerm, d: &CircuitTerm, sig: &MonSignature) -> Result<()> {
    let tc = type_check_circuit(c, sig)?;
    let td = type_check_circuit(d, sig)?;
    if tc != td {
        return Err(Error::TypeMismatch(format!(
            "{} -> {} versus {} -> {}",
            tc.0, tc.1, td.0, td.1
        )));
    }
    Ok(())
}

/// Containment of the graph of `d` in the graph of `c`, with interfaces fixed.
pub fn graph_leq(c: &InterfacedHypergraph, d: &InterfacedHypergraph) -> bool {
    find_homomorphism(d, c).is_some()
}

/// `c ≤ d` in the free cartesian bicategory.
pub fn cb_leq(c: &CircuitTerm, d: &CircuitTerm, sig: &MonSignature) -> Result<bool> {
    if !sig.frobenius_enabled {
        return Err(Error::FrobeniusDisabled);
    }
    same_type(c, d, sig)?;
    Ok(graph_leq(&c.to_hypergraph()?, &d.to_hypergraph()?))
}

/// Isomorphism of hypergraphs without Frobenius structure, two-way `cb_leq` with it.
pub fn circuits_equal(c: &CircuitTerm, d: &CircuitTerm, sig: &MonSignature) -> Result<bool> {
    same_type(c, d, sig)?;
    let (gc, gd) = (c.to_hypergraph()?, d.to_hypergraph()?);
    if sig.frobenius_enabled {
        Ok(graph_leq(&gc, &gd) && graph_leq(&gd, &gc))
    } else {
        Ok(gc.canonical_key() == gd.canonical_key())
    }
}

impl fmt::Display for CircuitTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let paren = |f: &mut fmt::Formatter<'_>, t: &CircuitTerm, min: u8| {
            if t.prec() < min {
                write!(f, "({t})")
            } else {
                write!(f, "{t}")
            }
        };
        match self {
            Id(a) => write!(f, "id({a})"),
            IdUnit => f.write_str("id1"),
            Gen(g) => f.write_str(&g.name),
            Sym(a, b) => write!(f, "sym({a},{b})"),
            Seq(a, b) => {
                paren(f, a, 0)?;
                f.write_str(" ; ")?;
                paren(f, b, 1)
            }
            Tensor(a, b) => {
                paren(f, a, 1)?;
                f.write_str(" * ")?;
                paren(f, b, 2)
            }
            Copier(a) => write!(f, "cp({a})"),
            Discharger(a) => write!(f, "dc({a})"),
            Cocopier(a) => write!(f, "cocp({a})"),
            Codischarger(a) => write!(f, "codc({a})"),
        }
    }
}

impl fmt::Debug for CircuitTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
