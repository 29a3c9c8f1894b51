//! Seeded random circuits, tapes, matrices and relation expressions for the
//! property suites.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::circuit::CircuitTerm;
use crate::cr::CrExpr;
use crate::error::Result;
use crate::matrix::TapeMatrix;
use crate::order::Theory;
use crate::signature::{MonSignature, Monomial, Polynomial, Sort};
use crate::tape::TapeTerm;

/// Three sorts and a handful of generators of assorted shapes.
pub fn test_signature(frobenius: bool) -> MonSignature {
    let mut s = MonSignature::new();
    for a in ["A", "B", "C"] {
        s.add_sort(a).unwrap();
    }
    let w = Monomial::of;
    for (n, ar, coar) in [
        ("f", w(&["A"]), w(&["B"])),
        ("g", w(&["B"]), w(&["C"])),
        ("h", w(&["A"]), w(&["A"])),
        ("k", w(&["A", "B"]), w(&["C"])),
        ("m", w(&["C"]), w(&["A", "B"])),
        ("u", w(&[]), w(&["A"])),
        ("v", w(&["B"]), w(&[])),
    ] {
        s.add_generator(n, ar, coar).unwrap();
    }
    s.frobenius_enabled = frobenius;
    s
}

pub struct Gen<'a, R: Rng> {
    pub rng: &'a mut R,
    pub sig: &'a MonSignature,
    pub max_word: usize,
    pub max_poly: usize,
}

impl<'a, R: Rng> Gen<'a, R> {
    pub fn new(rng: &'a mut R, sig: &'a MonSignature) -> Self {
        Gen {
            rng,
            sig,
            max_word: 2,
            max_poly: 3,
        }
    }

    fn sorts(&self) -> Vec<Sort> {
        self.sig.sorts().cloned().collect()
    }

    pub fn sort(&mut self) -> Sort {
        self.sorts().choose(self.rng).unwrap().clone()
    }

    pub fn monomial(&mut self) -> Monomial {
        let n = self.rng.gen_range(0..=self.max_word);
        (0..n).map(|_| self.sort()).collect()
    }

    /// A monomial of length at least one.
    pub fn word(&mut self) -> Monomial {
        let n = self.rng.gen_range(1..=self.max_word.max(1));
        (0..n).map(|_| self.sort()).collect()
    }

    pub fn polynomial(&mut self) -> Polynomial {
        let n = self.rng.gen_range(0..=self.max_poly);
        (0..n).map(|_| self.monomial()).collect()
    }

    pub fn nonzero_polynomial(&mut self) -> Polynomial {
        let n = self.rng.gen_range(1..=self.max_poly);
        (0..n).map(|_| self.monomial()).collect()
    }

    /// One layer of boxes laid over `dom`.
    fn layer(&mut self, dom: &Monomial) -> (CircuitTerm, Monomial) {
        let ws = dom.sorts();
        let frob = self.sig.frobenius_enabled;
        let gens: Vec<_> = self.sig.generators().cloned().collect();
        let mut pieces = Vec::new();
        let mut cod = Vec::new();
        let mut p = 0;
        loop {
            let room = self.max_word + 1 > cod.len() + (ws.len() - p);
            if room && self.rng.gen_bool(0.15) {
                let sources: Vec<_> = gens.iter().filter(|g| g.arity.is_empty() && g.coarity.len() == 1).collect();
                if frob && self.rng.gen_bool(0.5) || sources.is_empty() {
                    if frob {
                        let a = self.sort();
                        pieces.push(CircuitTerm::Codischarger(a.clone()));
                        cod.push(a);
                    }
                } else {
                    let g = sources.choose(self.rng).unwrap();
                    pieces.push(CircuitTerm::Gen((*g).clone()));
                    cod.extend(g.coarity.sorts().iter().cloned());
                }
            }
            if p == ws.len() {
                break;
            }
            let mut options: Vec<(CircuitTerm, usize, Vec<Sort>)> = vec![(CircuitTerm::Id(ws[p].clone()), 1, vec![ws[p].clone()])];
            for g in &gens {
                let k = g.arity.len();
                if k > 0 && p + k <= ws.len() && ws[p..p + k] == *g.arity.sorts() {
                    options.push((CircuitTerm::Gen(g.clone()), k, g.coarity.sorts().to_vec()));
                }
            }
            if p + 1 < ws.len() {
                options.push((CircuitTerm::Sym(ws[p].clone(), ws[p + 1].clone()), 2, vec![ws[p + 1].clone(), ws[p].clone()]));
            }
            if frob {
                let a = ws[p].clone();
                options.push((CircuitTerm::Discharger(a.clone()), 1, vec![]));
                if room {
                    options.push((CircuitTerm::Copier(a.clone()), 1, vec![a.clone(), a.clone()]));
                }
                if p + 1 < ws.len() && ws[p + 1] == a {
                    options.push((CircuitTerm::Cocopier(a.clone()), 2, vec![a]));
                }
            }
            let rest = ws.len() - p;
            options.retain(|(_, k, out)| cod.len() + out.len() + (rest - k) <= self.max_word + 1);
            let (c, k, out) = options.choose(self.rng).unwrap().clone();
            pieces.push(c);
            cod.extend(out);
            p += k;
        }
        let c = pieces.into_iter().reduce(CircuitTerm::tensor).unwrap_or(CircuitTerm::IdUnit);
        (c, Monomial::new(cod))
    }

    /// A random circuit out of `dom` with up to `layers` layers.
    pub fn circuit_from(&mut self, dom: &Monomial, layers: usize) -> (CircuitTerm, Monomial) {
        let n = self.rng.gen_range(1..=layers.max(1));
        let mut cur = dom.clone();
        let mut term: Option<CircuitTerm> = None;
        for _ in 0..n {
            let (c, cod) = self.layer(&cur);
            term = Some(match term {
                None => c,
                Some(t) => CircuitTerm::Seq(Arc::new(t), Arc::new(c)),
            });
            cur = cod;
        }
        (term.unwrap(), cur)
    }

    pub fn circuit(&mut self, layers: usize) -> CircuitTerm {
        let dom = self.monomial();
        self.circuit_from(&dom, layers).0
    }

    /// Leaves consuming `dom` exactly.
    fn tape_leaf(&mut self, dom: &Polynomial) -> TapeTerm {
        let ms = dom.monomials();
        match ms {
            [] => {
                if self.rng.gen_bool(0.5) {
                    TapeTerm::IdZero
                } else {
                    TapeTerm::Cobang(self.monomial())
                }
            }
            [u] => match self.rng.gen_range(0..5) {
                0 => TapeTerm::IdMon(u.clone()),
                1 | 2 => TapeTerm::Lift(self.circuit_from(u, 2).0),
                3 => TapeTerm::Diag(u.clone()),
                _ => TapeTerm::Bang(u.clone()),
            },
            [u, v] if self.rng.gen_bool(0.6) => {
                if u == v && self.rng.gen_bool(0.5) {
                    TapeTerm::Codiag(u.clone())
                } else {
                    TapeTerm::SymPlus(u.clone(), v.clone())
                }
            }
            _ => {
                let k = self.rng.gen_range(1..ms.len());
                let (a, b) = dom.split_at(k);
                TapeTerm::Oplus(Arc::new(self.tape_leaf(&a)), Arc::new(self.tape_leaf(&b)))
            }
        }
    }

    /// A random tape out of `dom` with roughly `size` constructors.
    pub fn tape_from(&mut self, dom: &Polynomial, size: usize) -> TapeTerm {
        for _ in 0..32 {
            let t = self.tape_attempt(dom, size);
            if t.cod().map_or(false, |c| c.len() <= self.max_poly + 1) {
                return t;
            }
        }
        crate::tape::id_poly(dom)
    }

    fn tape_attempt(&mut self, dom: &Polynomial, size: usize) -> TapeTerm {
        if size <= 1 {
            return self.tape_leaf(dom);
        }
        if dom.len() >= 2 && self.rng.gen_bool(0.4) {
            let k = self.rng.gen_range(1..dom.len());
            let (a, b) = dom.split_at(k);
            let left = self.rng.gen_range(1..size);
            return TapeTerm::Oplus(
                Arc::new(self.tape_attempt(&a, left)),
                Arc::new(self.tape_attempt(&b, size - left)),
            );
        }
        let left = self.rng.gen_range(1..size);
        let t1 = self.tape_attempt(dom, left);
        let mid = t1.cod().expect("generated tapes are well typed");
        if mid.len() > self.max_poly + 1 {
            return t1;
        }
        let t2 = self.tape_attempt(&mid, size - left);
        TapeTerm::Seq(Arc::new(t1), Arc::new(t2))
    }

    pub fn tape(&mut self, size: usize) -> TapeTerm {
        let dom = self.polynomial();
        self.tape_from(&dom, size)
    }

    /// A random normal form over a random domain.
    pub fn matrix(&mut self, theory: Theory) -> Result<TapeMatrix> {
        Ok(self.matrices(theory, 1)?.remove(0))
    }

    /// `n` random normal forms sharing one type, cells drawn from a common pool.
    pub fn matrices(&mut self, theory: Theory, n: usize) -> Result<Vec<TapeMatrix>> {
        let dom = self.polynomial();
        let columns: Vec<Vec<(CircuitTerm, Monomial)>> = dom
            .monomials()
            .iter()
            .map(|u| {
                let mut col = vec![(crate::circuit::id_word(u), u.clone())];
                for _ in 0..3 {
                    col.push(self.circuit_from(u, 2));
                }
                col
            })
            .collect();
        let mut cods: Vec<Monomial> = columns.iter().flatten().map(|(_, v)| v.clone()).collect();
        cods.sort();
        cods.dedup();
        let m = if cods.is_empty() { 0 } else { self.rng.gen_range(0..=self.max_poly) };
        let cod: Polynomial = (0..m).map(|_| cods.choose(self.rng).unwrap().clone()).collect();
        (0..n)
            .map(|_| {
                let mut cells = Vec::new();
                for v in cod.monomials() {
                    let mut row = Vec::new();
                    for col in &columns {
                        let fits: Vec<_> = col.iter().filter(|(_, w)| w == v).map(|(c, _)| c.clone()).collect();
                        let k = if fits.is_empty() { 0 } else { self.rng.gen_range(0..=2) };
                        row.push((0..k).map(|_| fits.choose(self.rng).unwrap().clone()).collect());
                    }
                    cells.push(row);
                }
                TapeMatrix::new(dom.clone(), cod.clone(), cells, theory)
            })
            .collect()
    }
}

/// A random relation expression with exactly `ops` operators over `symbols`.
pub fn random_cr<R: Rng>(rng: &mut R, symbols: &[&str], ops: usize) -> CrExpr {
    if ops == 0 {
        return match rng.gen_range(0..10) {
            0 => CrExpr::One,
            1 => CrExpr::Top,
            2 => CrExpr::Bot,
            _ => CrExpr::rel(symbols.choose(rng).unwrap()),
        };
    }
    if rng.gen_range(0..6) == 0 {
        return CrExpr::op(random_cr(rng, symbols, ops - 1));
    }
    let left = rng.gen_range(0..ops);
    let a = random_cr(rng, symbols, left);
    let b = random_cr(rng, symbols, ops - 1 - left);
    match rng.gen_range(0..3) {
        0 => CrExpr::seq(a, b),
        1 => CrExpr::union(a, b),
        _ => CrExpr::inter(a, b),
    }
}

/// Every expression with at most `max_ops` operators over `leaves`.
pub fn all_cr(leaves: &[CrExpr], max_ops: usize) -> Vec<CrExpr> {
    let mut by_ops: Vec<Vec<CrExpr>> = vec![leaves.to_vec()];
    for n in 1..=max_ops {
        let mut level: Vec<CrExpr> = by_ops[n - 1].iter().map(|e| CrExpr::op(e.clone())).collect();
        for l in 0..n {
            let r = n - 1 - l;
            for a in &by_ops[l] {
                for b in &by_ops[r] {
                    level.push(CrExpr::seq(a.clone(), b.clone()));
                    level.push(CrExpr::union(a.clone(), b.clone()));
                    level.push(CrExpr::inter(a.clone(), b.clone()));
                }
            }
        }
        by_ops.push(level);
    }
    by_ops.concat()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_terms_are_well_typed() {
        for frob in [false, true] {
            let sig = test_signature(frob);
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let mut g = Gen::new(&mut rng, &sig);
            for _ in 0..200 {
                let c = g.circuit(3);
                crate::circuit::type_check_circuit(&c, &sig).unwrap();
                let t = g.tape(6);
                crate::tape::type_check_tape(&t, &sig).unwrap();
            }
        }
    }

    #[test]
    fn plain_circuits_are_linear() {
        let sig = test_signature(false);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut g = Gen::new(&mut rng, &sig);
        for _ in 0..200 {
            assert!(g.circuit(3).to_hypergraph().unwrap().is_linear());
        }
    }

    #[test]
    fn enumeration_counts() {
        let leaves = [CrExpr::rel("R"), CrExpr::rel("S")];
        // 2, then 2 + 3·2·2, ...
        assert_eq!(all_cr(&leaves, 0).len(), 2);
        assert_eq!(all_cr(&leaves, 1).len(), 2 + 2 + 12);
    }
}
