//! Matrix normal forms of tapes.
//!
//! A tape `⊕_i U_i → ⊕_j V_j` is determined by the (multi)sets of circuits
//! `U_i → V_j` it sums up, so all equality and order questions on tapes are
//! answered here, on canonicalised matrices.

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::circuit::{graph_leq, id_word, CircuitTerm};
use crate::error::{Error, Result};
use crate::hypergraph::InterfacedHypergraph;
use crate::order::{Base, Mode, Theory};
use crate::signature::{Monomial, Polynomial};
use crate::tape::{self, TapeTerm};

/// A circuit together with its graph and the canonical key of that graph.
#[derive(Clone)]
pub struct Diagram {
    pub term: CircuitTerm,
    pub graph: Arc<InterfacedHypergraph>,
    pub key: Arc<str>,
    identity: bool,
}

impl Diagram {
    pub fn new(term: CircuitTerm, base: Base) -> Result<Diagram> {
        let graph = term.to_hypergraph()?;
        let identity = term.is_identity();
        Ok(Self::from_graph(term, graph, base, identity))
    }

    fn from_graph(term: CircuitTerm, graph: InterfacedHypergraph, base: Base, identity: bool) -> Diagram {
        let graph = match base {
            Base::Plain => graph,
            Base::Cartesian => graph.core(),
        };
        let key = Arc::from(graph.canonical_key());
        Diagram {
            term,
            graph: Arc::new(graph),
            key,
            identity,
        }
    }

    pub fn identity(u: &Monomial, base: Base) -> Diagram {
        let graph = InterfacedHypergraph::identity(u);
        Self::from_graph(id_word(u), graph, base, true)
    }

    fn then(&self, other: &Diagram, base: Base) -> Result<Diagram> {
        if self.identity {
            return Ok(other.clone());
        }
        if other.identity {
            return Ok(self.clone());
        }
        let g = self.graph.compose(&other.graph)?;
        let term = CircuitTerm::seq(self.term.clone(), other.term.clone());
        Ok(Self::from_graph(term, g, base, false))
    }

    fn beside(&self, other: &Diagram, base: Base) -> Diagram {
        let g = self.graph.tensor(&other.graph);
        let term = CircuitTerm::tensor(self.term.clone(), other.term.clone());
        Self::from_graph(term, g, base, self.identity && other.identity)
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.term)
    }
}

/// The (multi)set of circuits `dom → cod` in one cell of a matrix.
#[derive(Clone, Debug)]
pub struct MonomialEntry {
    pub dom: Monomial,
    pub cod: Monomial,
    circuits: Vec<Diagram>,
}

impl MonomialEntry {
    pub fn new(dom: Monomial, cod: Monomial, circuits: Vec<Diagram>, theory: Theory) -> MonomialEntry {
        MonomialEntry {
            dom,
            cod,
            circuits: canonicalize(circuits, theory),
        }
    }

    pub fn empty(dom: Monomial, cod: Monomial) -> MonomialEntry {
        MonomialEntry {
            dom,
            cod,
            circuits: Vec::new(),
        }
    }

    pub fn circuits(&self) -> &[Diagram] {
        &self.circuits
    }

    pub fn terms(&self) -> impl Iterator<Item = &CircuitTerm> {
        self.circuits.iter().map(|d| &d.term)
    }

    pub fn len(&self) -> usize {
        self.circuits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circuits.is_empty()
    }

    pub fn keys(&self) -> Vec<&str> {
        self.circuits.iter().map(|d| &*d.key).collect()
    }
}

impl PartialEq for MonomialEntry {
    fn eq(&self, other: &Self) -> bool {
        self.dom == other.dom && self.cod == other.cod && self.keys() == other.keys()
    }
}

impl Eq for MonomialEntry {}

impl fmt::Display for MonomialEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, d) in self.circuits.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", d.term)?;
        }
        f.write_str("}")
    }
}

/// Sorts by key; in set and cb modes drops repeats, and in cb mode keeps only
/// the maximal circuits.
pub fn canonicalize(mut circuits: Vec<Diagram>, theory: Theory) -> Vec<Diagram> {
    circuits.sort_by(|a, b| a.key.cmp(&b.key));
    if theory.mode == Mode::Multiset {
        return circuits;
    }
    circuits.dedup_by(|a, b| a.key == b.key);
    if theory.mode == Mode::Cb {
        let dominated: Vec<bool> = circuits
            .iter()
            .map(|c| circuits.iter().any(|d| d.key != c.key && graph_leq(&c.graph, &d.graph)))
            .collect();
        let mut it = dominated.into_iter();
        circuits.retain(|_| !it.next().unwrap());
    }
    circuits
}

#[derive(Clone, Debug)]
pub struct TapeMatrix {
    dom: Polynomial,
    cod: Polynomial,
    theory: Theory,
    /// `entries[j][i]` holds the circuits from `dom[i]` to `cod[j]`.
    entries: Vec<Vec<MonomialEntry>>,
}

impl PartialEq for TapeMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.dom == other.dom && self.cod == other.cod && self.entries == other.entries
    }
}

impl Eq for TapeMatrix {}

impl TapeMatrix {
    /// Builds a matrix from raw cells, canonicalising each one.
    pub fn new(dom: Polynomial, cod: Polynomial, cells: Vec<Vec<Vec<CircuitTerm>>>, theory: Theory) -> Result<TapeMatrix> {
        if cells.len() != cod.len() || cells.iter().any(|r| r.len() != dom.len()) {
            return Err(Error::TypeMismatch(format!(
                "matrix cells do not have shape {}x{}",
                cod.len(),
                dom.len()
            )));
        }
        let mut entries = Vec::with_capacity(cod.len());
        for (j, row) in cells.into_iter().enumerate() {
            let v = &cod.monomials()[j];
            let mut out = Vec::with_capacity(dom.len());
            for (i, cell) in row.into_iter().enumerate() {
                let u = &dom.monomials()[i];
                let mut ds = Vec::with_capacity(cell.len());
                for c in cell {
                    let (cu, cv) = c.type_of()?;
                    if (&cu, &cv) != (u, v) {
                        return Err(Error::TypeMismatch(format!(
                            "entry ({j},{i}) expects {u} -> {v}, got {cu} -> {cv}"
                        )));
                    }
                    ds.push(Diagram::new(c, theory.base)?);
                }
                out.push(MonomialEntry::new(u.clone(), v.clone(), ds, theory));
            }
            entries.push(out);
        }
        Ok(TapeMatrix { dom, cod, theory, entries })
    }

    fn from_entries(dom: Polynomial, cod: Polynomial, theory: Theory, entries: Vec<Vec<MonomialEntry>>) -> TapeMatrix {
        TapeMatrix { dom, cod, theory, entries }
    }

    fn empty_grid(dom: &Polynomial, cod: &Polynomial) -> Vec<Vec<MonomialEntry>> {
        cod.monomials()
            .iter()
            .map(|v| {
                dom.monomials()
                    .iter()
                    .map(|u| MonomialEntry::empty(u.clone(), v.clone()))
                    .collect()
            })
            .collect()
    }

    pub fn identity(p: &Polynomial, theory: Theory) -> TapeMatrix {
        let mut entries = Self::empty_grid(p, p);
        for (k, u) in p.monomials().iter().enumerate() {
            entries[k][k].circuits.push(Diagram::identity(u, theory.base));
        }
        Self::from_entries(p.clone(), p.clone(), theory, entries)
    }

    pub fn dom(&self) -> &Polynomial {
        &self.dom
    }

    pub fn cod(&self) -> &Polynomial {
        &self.cod
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn rows(&self) -> &[Vec<MonomialEntry>] {
        &self.entries
    }

    pub fn entry(&self, j: usize, i: usize) -> Result<&MonomialEntry> {
        self.entries
            .get(j)
            .and_then(|r| r.get(i))
            .ok_or(Error::IndexOutOfRange {
                row: j,
                col: i,
                rows: self.cod.len(),
                cols: self.dom.len(),
            })
    }

    /// Terms of every cell, for building the matrix back into a tape.
    pub fn cells(&self) -> Vec<Vec<Vec<CircuitTerm>>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|e| e.terms().cloned().collect()).collect())
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let word = |u: &Monomial| Value::from(u.sorts().iter().map(|s| s.name().to_string()).collect::<Vec<_>>());
        json!({
            "mode": self.theory.mode.name(),
            "dom": self.dom.monomials().iter().map(word).collect::<Vec<_>>(),
            "cod": self.cod.monomials().iter().map(word).collect::<Vec<_>>(),
            "entries": self.entries.iter().map(|r| {
                r.iter().map(|e| e.terms().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for TapeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} -> {}  ({}x{}, {})", self.dom, self.cod, self.cod.len(), self.dom.len(), self.theory.mode)?;
        let mut grid: Vec<Vec<String>> = Vec::new();
        let mut header = vec![String::new()];
        header.extend(self.dom.monomials().iter().map(|u| u.to_string()));
        grid.push(header);
        for (j, row) in self.entries.iter().enumerate() {
            let mut line = vec![self.cod.monomials()[j].to_string()];
            line.extend(row.iter().map(|e| e.to_string()));
            grid.push(line);
        }
        let cols = grid[0].len();
        let widths: Vec<usize> = (0..cols)
            .map(|c| grid.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        for (r, line) in grid.iter().enumerate() {
            let cells: Vec<String> = line
                .iter()
                .zip(&widths)
                .map(|(s, &w)| format!("{s:<w$}"))
                .collect();
            writeln!(f, "{}", cells.join(" | ").trim_end())?;
            if r == 0 {
                let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
                writeln!(f, "{}", rule.join("-+-"))?;
            }
        }
        Ok(())
    }
}

/// `M ; N` in diagrammatic order: first `m : P → Q`, then `n : Q → R`.
pub fn mat_compose(m: &TapeMatrix, n: &TapeMatrix) -> Result<TapeMatrix> {
    if m.cod != n.dom {
        return Err(Error::TapeMismatch {
            left: m.cod.clone(),
            right: n.dom.clone(),
        });
    }
    let theory = m.theory;
    let mut entries = Vec::with_capacity(n.cod.len());
    for (k, w) in n.cod.monomials().iter().enumerate() {
        let mut row = Vec::with_capacity(m.dom.len());
        for (i, u) in m.dom.monomials().iter().enumerate() {
            let mut acc = Vec::new();
            for j in 0..m.cod.len() {
                for a in &m.entries[j][i].circuits {
                    for b in &n.entries[k][j].circuits {
                        acc.push(a.then(b, theory.base)?);
                    }
                }
            }
            row.push(MonomialEntry::new(u.clone(), w.clone(), acc, theory));
        }
        entries.push(row);
    }
    Ok(TapeMatrix::from_entries(m.dom.clone(), n.cod.clone(), theory, entries))
}

/// Block-diagonal sum.
pub fn mat_oplus(m: &TapeMatrix, n: &TapeMatrix) -> TapeMatrix {
    let dom = m.dom.oplus(&n.dom);
    let cod = m.cod.oplus(&n.cod);
    let mut entries = TapeMatrix::empty_grid(&dom, &cod);
    let (r0, c0) = (m.cod.len(), m.dom.len());
    for (j, row) in m.entries.iter().enumerate() {
        for (i, e) in row.iter().enumerate() {
            entries[j][i] = e.clone();
        }
    }
    for (j, row) in n.entries.iter().enumerate() {
        for (i, e) in row.iter().enumerate() {
            entries[r0 + j][c0 + i] = e.clone();
        }
    }
    TapeMatrix::from_entries(dom, cod, m.theory, entries)
}

/// Kronecker product, indices ordered i-major like the product of polynomials.
pub fn mat_kron(m: &TapeMatrix, n: &TapeMatrix) -> TapeMatrix {
    let theory = m.theory;
    let dom = m.dom.product(&n.dom);
    let cod = m.cod.product(&n.cod);
    let (n_rows, n_cols) = (n.cod.len(), n.dom.len());
    let mut entries = TapeMatrix::empty_grid(&dom, &cod);
    for (j, mrow) in m.entries.iter().enumerate() {
        for (i, a) in mrow.iter().enumerate() {
            for (j2, nrow) in n.entries.iter().enumerate() {
                for (i2, b) in nrow.iter().enumerate() {
                    let cell = &mut entries[j * n_rows + j2][i * n_cols + i2];
                    let prods = a
                        .circuits
                        .iter()
                        .flat_map(|x| b.circuits.iter().map(move |y| x.beside(y, theory.base)))
                        .collect();
                    *cell = MonomialEntry::new(cell.dom.clone(), cell.cod.clone(), prods, theory);
                }
            }
        }
    }
    TapeMatrix::from_entries(dom, cod, theory, entries)
}

fn single(u: &Monomial, v: &Monomial, d: Diagram) -> TapeMatrix {
    TapeMatrix::from_entries(
        u.to_poly(),
        v.to_poly(),
        Theory::MULTISET,
        vec![vec![MonomialEntry {
            dom: u.clone(),
            cod: v.clone(),
            circuits: vec![d],
        }]],
    )
}

fn with_theory(mut m: TapeMatrix, theory: Theory) -> TapeMatrix {
    m.theory = theory;
    m
}

/// The normal form of a tape.
pub fn to_matrix(t: &TapeTerm, theory: Theory) -> Result<TapeMatrix> {
    use TapeTerm::*;
    let base = theory.base;
    let id = |u: &Monomial| Diagram::identity(u, base);
    Ok(match t {
        IdMon(u) => with_theory(single(u, u, id(u)), theory),
        IdZero => TapeMatrix::from_entries(Polynomial::zero(), Polynomial::zero(), theory, Vec::new()),
        Lift(c) => {
            let (u, v) = c.type_of()?;
            with_theory(single(&u, &v, Diagram::new(c.clone(), base)?), theory)
        }
        SymPlus(u, v) => {
            let dom = u.to_poly().oplus(&v.to_poly());
            let cod = v.to_poly().oplus(&u.to_poly());
            let mut entries = TapeMatrix::empty_grid(&dom, &cod);
            entries[0][1].circuits.push(id(v));
            entries[1][0].circuits.push(id(u));
            TapeMatrix::from_entries(dom, cod, theory, entries)
        }
        Diag(u) | Codiag(u) => {
            let two = u.to_poly().oplus(&u.to_poly());
            let (dom, cod) = match t {
                Diag(_) => (u.to_poly(), two),
                _ => (two, u.to_poly()),
            };
            let mut entries = TapeMatrix::empty_grid(&dom, &cod);
            for row in entries.iter_mut() {
                for e in row.iter_mut() {
                    e.circuits.push(id(u));
                }
            }
            TapeMatrix::from_entries(dom, cod, theory, entries)
        }
        Bang(u) => TapeMatrix::from_entries(u.to_poly(), Polynomial::zero(), theory, Vec::new()),
        Cobang(u) => TapeMatrix::from_entries(Polynomial::zero(), u.to_poly(), theory, vec![Vec::new()]),
        Seq(a, b) => mat_compose(&to_matrix(a, theory)?, &to_matrix(b, theory)?)?,
        Oplus(a, b) => mat_oplus(&to_matrix(a, theory)?, &to_matrix(b, theory)?),
    })
}

/// The tape `(⊕_i Δ^m_{U_i}) ; (⊕_i ⊕_j Σ_{a ∈ M_ji} ⌊a⌋) ; ∇^n_Q`.
pub fn from_matrix(m: &TapeMatrix) -> TapeTerm {
    let (dom, cod) = (&m.dom, &m.cod);
    let spread = tape::oplus_all(dom.monomials().iter().map(|u| tape::diag_n(u, cod.len())));
    let cells = tape::oplus_all(dom.monomials().iter().enumerate().flat_map(|(i, u)| {
        cod.monomials().iter().enumerate().map(move |(j, v)| {
            let parts = m.entries[j][i].terms().map(|c| TapeTerm::Lift(c.clone())).collect();
            tape::sum_all(&u.to_poly(), &v.to_poly(), parts)
        })
    }));
    let merge = tape::codiag_n_poly(cod, dom.len());
    tape::seq_all([spread, cells, merge])
}

/// Transposes the matrix and every circuit in it: `V → U` cells from `U → V` ones.
pub fn mat_transpose(m: &TapeMatrix) -> Result<TapeMatrix> {
    let mut cells = vec![vec![Vec::new(); m.cod.len()]; m.dom.len()];
    for (j, row) in m.entries.iter().enumerate() {
        for (i, e) in row.iter().enumerate() {
            for c in e.terms() {
                cells[i][j].push(crate::circuit::transpose(c)?);
            }
        }
    }
    TapeMatrix::new(m.cod.clone(), m.dom.clone(), cells, m.theory)
}

/// Cell `(j, i)` of the normal form (zero-based: row `j` indexes the codomain).
pub fn entry(t: &TapeTerm, j: usize, i: usize, theory: Theory) -> Result<MonomialEntry> {
    to_matrix(t, theory)?.entry(j, i).cloned()
}

/// The same cell computed as the normal form of `μ_i ; t ; π_j`.
pub fn entry_via_injections(t: &TapeTerm, j: usize, i: usize, theory: Theory) -> Result<MonomialEntry> {
    let (p, q) = t.type_of()?;
    if j >= q.len() || i >= p.len() {
        return Err(Error::IndexOutOfRange {
            row: j,
            col: i,
            rows: q.len(),
            cols: p.len(),
        });
    }
    let inj = tape::oplus_all(p.monomials().iter().enumerate().map(|(k, u)| {
        if k == i {
            TapeTerm::IdMon(u.clone())
        } else {
            TapeTerm::Cobang(u.clone())
        }
    }));
    let proj = tape::oplus_all(q.monomials().iter().enumerate().map(|(k, v)| {
        if k == j {
            TapeTerm::IdMon(v.clone())
        } else {
            TapeTerm::Bang(v.clone())
        }
    }));
    let m = to_matrix(&tape::seq_all([inj, t.clone(), proj]), theory)?;
    m.entry(0, 0).cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::{Generator, Sort};
    use crate::tape::TapeTerm::*;

    fn gen(n: &str, a: &[&str], b: &[&str]) -> CircuitTerm {
        CircuitTerm::Gen(Generator::new(n, Monomial::of(a), Monomial::of(b)))
    }

    fn names(e: &MonomialEntry) -> Vec<String> {
        e.terms().map(|c| c.to_string()).collect()
    }

    #[test]
    fn lift_is_a_singleton() {
        let c = gen("c", &["A"], &["B"]);
        let m = to_matrix(&Lift(c.clone()), Theory::MULTISET).unwrap();
        assert_eq!(names(m.entry(0, 0).unwrap()), ["c"]);
        let z = to_matrix(&IdZero, Theory::MULTISET).unwrap();
        assert_eq!((z.dom().len(), z.cod().len()), (0, 0));
        assert!(matches!(m.entry(1, 0), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn nested_sum_keeps_multiplicity() {
        let c = Lift(gen("c", &["A"], &["A"]));
        let d = Lift(gen("d", &["A"], &["A"]));
        let t = tape::sum(&c, &tape::sum(&c, &d).unwrap()).unwrap();
        let m = to_matrix(&t, Theory::MULTISET).unwrap();
        assert_eq!(m.entry(0, 0).unwrap().len(), 3);
        let s = to_matrix(&t, Theory::SET).unwrap();
        assert_eq!(s.entry(0, 0).unwrap().len(), 2);
    }

    #[test]
    fn monomial_tape_product() {
        // (c + d) ; (e + f + g) with c occurring twice on the left.
        let u = Monomial::of(&["A"]);
        let sum3 = |xs: [&str; 3], a: &[&str], b: &[&str]| {
            let ts: Vec<_> = xs.iter().map(|n| Lift(gen(n, a, b))).collect();
            tape::sum_all(&Monomial::of(a).to_poly(), &Monomial::of(b).to_poly(), ts)
        };
        let left = sum3(["c", "c", "d"], &["A"], &["B"]);
        let right = sum3(["e", "f", "g"], &["B"], &["C"]);
        let m = to_matrix(&TapeTerm::seq(left, right), Theory::MULTISET).unwrap();
        let mut got = names(m.entry(0, 0).unwrap());
        got.sort();
        assert_eq!(got, ["c ; e", "c ; e", "c ; f", "c ; f", "c ; g", "c ; g", "d ; e", "d ; f", "d ; g"]);
        let _ = u;
    }

    #[test]
    fn round_trip_through_from_matrix() {
        let c = gen("c", &["A"], &["B"]);
        let d = gen("d", &["A"], &["B"]);
        let a = Monomial::of(&["A"]);
        let b = Monomial::of(&["B"]);
        let m = TapeMatrix::new(
            a.to_poly(),
            b.to_poly().oplus(&b.to_poly()),
            vec![vec![vec![c.clone()]], vec![vec![d.clone()]]],
            Theory::MULTISET,
        )
        .unwrap();
        let t = from_matrix(&m);
        assert_eq!(to_matrix(&t, Theory::MULTISET).unwrap(), m);
        let direct = TapeTerm::seq(Diag(a), TapeTerm::oplus(Lift(c), Lift(d)));
        assert_eq!(to_matrix(&direct, Theory::MULTISET).unwrap(), m);
    }

    #[test]
    fn kron_with_units_and_blocks() {
        let c = Lift(gen("c", &["A"], &["B"]));
        let m = to_matrix(&c, Theory::MULTISET).unwrap();
        let one = TapeMatrix::identity(&Polynomial::one(), Theory::MULTISET);
        assert_eq!(mat_kron(&m, &one), m);
        let empty = TapeMatrix::identity(&Polynomial::zero(), Theory::MULTISET);
        assert_eq!(mat_oplus(&m, &empty), m);
        let id = TapeMatrix::identity(m.dom(), Theory::MULTISET);
        assert_eq!(mat_compose(&id, &m).unwrap(), m);
    }

    #[test]
    fn injections_agree_with_cells() {
        let a = Monomial::of(&["A"]);
        let b = Monomial::of(&["B"]);
        let t = TapeTerm::oplus(Lift(gen("c", &["A"], &["B"])), SymPlus(a.clone(), b.clone()));
        for j in 0..3 {
            for i in 0..3 {
                assert_eq!(
                    entry(&t, j, i, Theory::MULTISET).unwrap(),
                    entry_via_injections(&t, j, i, Theory::MULTISET).unwrap()
                );
            }
        }
    }

    #[test]
    fn cb_entries_are_antichains() {
        let a = Sort::new("A");
        let r = gen("R", &["A"], &["A"]);
        let top = CircuitTerm::seq(CircuitTerm::Discharger(a.clone()), CircuitTerm::Codischarger(a.clone()));
        let t = tape::sum(&Lift(r), &Lift(top.clone())).unwrap();
        let m = to_matrix(&t, Theory::CB).unwrap();
        assert_eq!(names(m.entry(0, 0).unwrap()), [top.to_string()]);
    }
}
