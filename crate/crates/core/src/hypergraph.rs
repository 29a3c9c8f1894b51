//! Interfaced hypergraphs: the combinatorial shape of a circuit.
//!
//! Vertices are wires, edges are generator boxes with ordered source and target
//! ports, and the two interfaces list the boundary wires in order. Equality in
//! the free symmetric monoidal category is isomorphism of these graphs; the
//! cartesian-bicategory order is the existence of a homomorphism in the
//! opposite direction.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::signature::{Generator, Monomial, Sort};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub label: Arc<str>,
    pub sources: Vec<usize>,
    pub targets: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InterfacedHypergraph {
    /// Sort of each vertex; the vertex count is `sorts.len()`.
    pub sorts: Vec<Sort>,
    pub edges: Vec<Edge>,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

impl InterfacedHypergraph {
    pub fn vertex_count(&self) -> usize {
        self.sorts.len()
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn identity(u: &Monomial) -> Self {
        let n = u.len();
        InterfacedHypergraph {
            sorts: u.sorts().to_vec(),
            edges: Vec::new(),
            left: (0..n).collect(),
            right: (0..n).collect(),
        }
    }

    pub fn generator(g: &Generator) -> Self {
        let n = g.arity.len();
        let m = g.coarity.len();
        let mut sorts = g.arity.sorts().to_vec();
        sorts.extend(g.coarity.sorts().iter().cloned());
        InterfacedHypergraph {
            sorts,
            edges: vec![Edge {
                label: g.name.clone(),
                sources: (0..n).collect(),
                targets: (n..n + m).collect(),
            }],
            left: (0..n).collect(),
            right: (n..n + m).collect(),
        }
    }

    pub fn symmetry(a: &Sort, b: &Sort) -> Self {
        InterfacedHypergraph {
            sorts: vec![a.clone(), b.clone()],
            edges: Vec::new(),
            left: vec![0, 1],
            right: vec![1, 0],
        }
    }

    /// A single wire of sort `a` appearing `l` times on the left and `r` on the right.
    pub fn spider(a: &Sort, l: usize, r: usize) -> Self {
        InterfacedHypergraph {
            sorts: vec![a.clone()],
            edges: Vec::new(),
            left: vec![0; l],
            right: vec![0; r],
        }
    }

    pub fn dom(&self) -> Monomial {
        self.left.iter().map(|&v| self.sorts[v].clone()).collect()
    }

    pub fn cod(&self) -> Monomial {
        self.right.iter().map(|&v| self.sorts[v].clone()).collect()
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let off = self.sorts.len();
        let mut g = self.clone();
        g.sorts.extend(other.sorts.iter().cloned());
        g.edges.extend(other.edges.iter().map(|e| Edge {
            label: e.label.clone(),
            sources: e.sources.iter().map(|v| v + off).collect(),
            targets: e.targets.iter().map(|v| v + off).collect(),
        }));
        g.left.extend(other.left.iter().map(|v| v + off));
        g.right.extend(other.right.iter().map(|v| v + off));
        g
    }

    /// Glues the right interface of `self` to the left interface of `other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.cod() != other.dom() {
            return Err(Error::CircuitMismatch {
                left: self.cod(),
                right: other.dom(),
            });
        }
        let joined = self.tensor(other);
        let off = self.sorts.len();
        let mut uf = UnionFind::new(joined.sorts.len());
        for (a, b) in self.right.iter().zip(&other.left) {
            uf.union(*a, b + off);
        }
        let left = joined.left[..self.left.len()].to_vec();
        let right = joined.right[self.right.len()..].to_vec();
        Ok(InterfacedHypergraph {
            left,
            right,
            ..joined
        }
        .quotient(&mut uf))
    }

    fn quotient(self, uf: &mut UnionFind) -> Self {
        let n = self.sorts.len();
        let mut fresh = vec![usize::MAX; n];
        let mut sorts = Vec::new();
        for v in 0..n {
            let r = uf.find(v);
            if fresh[r] == usize::MAX {
                fresh[r] = sorts.len();
                sorts.push(self.sorts[r].clone());
            }
        }
        let mut f = |v: usize| fresh[uf.find(v)];
        InterfacedHypergraph {
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    label: e.label.clone(),
                    sources: e.sources.iter().map(|&v| f(v)).collect(),
                    targets: e.targets.iter().map(|&v| f(v)).collect(),
                })
                .collect(),
            left: self.left.iter().map(|&v| f(v)).collect(),
            right: self.right.iter().map(|&v| f(v)).collect(),
            sorts,
        }
    }

    pub fn swap_interfaces(&self) -> Self {
        InterfacedHypergraph {
            left: self.right.clone(),
            right: self.left.clone(),
            ..self.clone()
        }
    }

    /// Every vertex is produced exactly once and consumed exactly once.
    pub fn is_linear(&self) -> bool {
        let n = self.sorts.len();
        let mut produced = vec![0usize; n];
        let mut consumed = vec![0usize; n];
        for &v in &self.left {
            produced[v] += 1;
        }
        for &v in &self.right {
            consumed[v] += 1;
        }
        for e in &self.edges {
            for &v in &e.targets {
                produced[v] += 1;
            }
            for &v in &e.sources {
                consumed[v] += 1;
            }
        }
        produced.iter().zip(&consumed).all(|(&p, &c)| p == 1 && c == 1)
    }

    fn is_interface(&self) -> Vec<bool> {
        let mut b = vec![false; self.sorts.len()];
        for &v in self.left.iter().chain(&self.right) {
            b[v] = true;
        }
        b
    }

    fn induced(&self, keep: &[bool], edges: impl Iterator<Item = Edge>) -> Self {
        let mut fresh = vec![usize::MAX; self.sorts.len()];
        let mut sorts = Vec::new();
        for (v, &k) in keep.iter().enumerate() {
            if k {
                fresh[v] = sorts.len();
                sorts.push(self.sorts[v].clone());
            }
        }
        InterfacedHypergraph {
            edges: edges
                .map(|e| Edge {
                    label: e.label,
                    sources: e.sources.iter().map(|&v| fresh[v]).collect(),
                    targets: e.targets.iter().map(|&v| fresh[v]).collect(),
                })
                .collect(),
            left: self.left.iter().map(|&v| fresh[v]).collect(),
            right: self.right.iter().map(|&v| fresh[v]).collect(),
            sorts,
        }
    }

    fn dedup_edges(&self) -> Self {
        let mut edges = self.edges.clone();
        edges.sort_by(|a, b| {
            (&*a.label, &a.sources, &a.targets).cmp(&(&*b.label, &b.sources, &b.targets))
        });
        edges.dedup();
        InterfacedHypergraph {
            edges,
            ..self.clone()
        }
    }

    /// The smallest subgraph that is homomorphically equivalent to `self` with
    /// the interfaces held fixed. Unique up to isomorphism.
    pub fn core(&self) -> Self {
        let mut g = self.dedup_edges();
        'shrink: loop {
            let iface = g.is_interface();
            for v in 0..g.sorts.len() {
                if iface[v] {
                    continue;
                }
                let mut keep = vec![true; g.sorts.len()];
                keep[v] = false;
                let h = g.induced(
                    &keep,
                    g.edges
                        .iter()
                        .filter(|e| !e.sources.contains(&v) && !e.targets.contains(&v))
                        .cloned(),
                );
                if let Some(map) = find_homomorphism(&g, &h) {
                    let mut used = vec![false; h.sorts.len()];
                    for &w in &map {
                        used[w] = true;
                    }
                    let image: Vec<Edge> = g
                        .edges
                        .iter()
                        .map(|e| Edge {
                            label: e.label.clone(),
                            sources: e.sources.iter().map(|&x| map[x]).collect(),
                            targets: e.targets.iter().map(|&x| map[x]).collect(),
                        })
                        .collect();
                    g = h.induced(&used, image.into_iter()).dedup_edges();
                    continue 'shrink;
                }
            }
            return g;
        }
    }

    /// Splits off connected components that do not touch the interface.
    fn components(&self) -> (Self, Vec<Self>) {
        let n = self.sorts.len();
        let mut uf = UnionFind::new(n);
        for e in &self.edges {
            let mut it = e.sources.iter().chain(&e.targets);
            if let Some(&first) = it.next() {
                for &v in it {
                    uf.union(first, v);
                }
            }
        }
        let iface = self.is_interface();
        let mut anchored = vec![false; n];
        for v in 0..n {
            if iface[v] {
                let r = uf.find(v);
                anchored[r] = true;
            }
        }
        let mut anchor_keep = vec![false; n];
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for v in 0..n {
            let r = uf.find(v);
            if anchored[r] {
                anchor_keep[v] = true;
            } else {
                groups.entry(r).or_default().push(v);
            }
        }
        let root_of_edge = |e: &Edge, uf: &mut UnionFind| {
            e.sources.iter().chain(&e.targets).next().map(|&v| uf.find(v))
        };
        let mut anchor_edges = Vec::new();
        let mut floating_edges: HashMap<usize, Vec<Edge>> = HashMap::new();
        let mut floating = Vec::new();
        for e in &self.edges {
            match root_of_edge(e, &mut uf) {
                Some(r) if anchored[r] => anchor_edges.push(e.clone()),
                Some(r) => floating_edges.entry(r).or_default().push(e.clone()),
                None => floating.push(InterfacedHypergraph {
                    edges: vec![e.clone()],
                    ..Self::default()
                }),
            }
        }
        let anchor = self.induced(&anchor_keep, anchor_edges.into_iter());
        for (r, vs) in groups {
            let mut keep = vec![false; n];
            for &v in &vs {
                keep[v] = true;
            }
            let sub = InterfacedHypergraph {
                left: Vec::new(),
                right: Vec::new(),
                ..self.clone()
            };
            floating.push(sub.induced(&keep, floating_edges.remove(&r).unwrap_or_default().into_iter()));
        }
        (anchor, floating)
    }

    /// A string that is equal for two graphs exactly when they are isomorphic
    /// (as interfaced, labelled, port-ordered hypergraphs).
    pub fn canonical_key(&self) -> String {
        let (anchor, floating) = self.components();
        let mut parts: Vec<String> = floating.iter().map(canonical_encoding).collect();
        parts.sort();
        let mut key = canonical_encoding(&anchor);
        for p in parts {
            key.push_str(" & ");
            key.push_str(&p);
        }
        key
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph circuit {\n  rankdir=LR;\n");
        for (v, sort) in self.sorts.iter().enumerate() {
            let _ = writeln!(s, "  v{v} [shape=point, xlabel=\"{sort}\"];");
        }
        for (k, e) in self.edges.iter().enumerate() {
            let _ = writeln!(s, "  e{k} [shape=box, label=\"{}\"];", e.label);
            for (p, v) in e.sources.iter().enumerate() {
                let _ = writeln!(s, "  v{v} -> e{k} [headlabel=\"{p}\", arrowhead=none];");
            }
            for (p, v) in e.targets.iter().enumerate() {
                let _ = writeln!(s, "  e{k} -> v{v} [taillabel=\"{p}\", arrowhead=none];");
            }
        }
        for (p, v) in self.left.iter().enumerate() {
            let _ = writeln!(s, "  in{p} [shape=plaintext, label=\"{p}\"];\n  in{p} -> v{v} [style=dashed, arrowhead=none];");
        }
        for (p, v) in self.right.iter().enumerate() {
            let _ = writeln!(s, "  out{p} [shape=plaintext, label=\"{p}\"];\n  v{v} -> out{p} [style=dashed, arrowhead=none];");
        }
        s.push_str("}\n");
        s
    }
}

/// Ranks a list of comparable signatures, returning dense colour indices.
fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<u32> {
    let mut uniq = sigs.to_vec();
    uniq.sort();
    uniq.dedup();
    sigs.iter()
        .map(|s| uniq.binary_search(s).unwrap() as u32)
        .collect()
}

struct Incidence {
    /// Per vertex: (edge, is_target, port).
    at: Vec<Vec<(usize, bool, usize)>>,
    label_rank: Vec<u32>,
}

impl Incidence {
    fn new(g: &InterfacedHypergraph) -> Self {
        let mut at = vec![Vec::new(); g.sorts.len()];
        for (k, e) in g.edges.iter().enumerate() {
            for (p, &v) in e.sources.iter().enumerate() {
                at[v].push((k, false, p));
            }
            for (p, &v) in e.targets.iter().enumerate() {
                at[v].push((k, true, p));
            }
        }
        let labels: Vec<&str> = g.edges.iter().map(|e| &*e.label).collect();
        Incidence {
            at,
            label_rank: rank(&labels),
        }
    }
}

fn refine(g: &InterfacedHypergraph, inc: &Incidence, colors: &mut Vec<u32>) {
    *colors = rank(colors);
    let mut classes = count_classes(colors);
    loop {
        let sigs: Vec<(u32, Vec<(u32, bool, usize, Vec<u32>)>)> = (0..g.sorts.len())
            .map(|v| {
                let mut around: Vec<_> = inc.at[v]
                    .iter()
                    .map(|&(k, t, p)| {
                        let e = &g.edges[k];
                        let ends = e.sources.iter().chain(&e.targets).map(|&w| colors[w]).collect();
                        (inc.label_rank[k], t, p, ends)
                    })
                    .collect();
                around.sort();
                (colors[v], around)
            })
            .collect();
        *colors = rank(&sigs);
        let now = count_classes(colors);
        if now == classes {
            return;
        }
        classes = now;
    }
}

fn count_classes(colors: &[u32]) -> usize {
    colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0)
}

fn encode(g: &InterfacedHypergraph, colors: &[u32]) -> String {
    let n = g.sorts.len();
    let mut order = vec![0usize; n];
    for v in 0..n {
        order[colors[v] as usize] = v;
    }
    let mut s = String::new();
    for (k, &v) in order.iter().enumerate() {
        if k > 0 {
            s.push(',');
        }
        s.push_str(g.sorts[v].name());
    }
    let list = |vs: &[usize]| vs.iter().map(|&v| colors[v].to_string()).collect::<Vec<_>>().join(",");
    let _ = write!(s, "|{}|{}|", list(&g.left), list(&g.right));
    let mut edges: Vec<String> = g
        .edges
        .iter()
        .map(|e| format!("{}({}>{})", e.label, list(&e.sources), list(&e.targets)))
        .collect();
    edges.sort();
    s.push_str(&edges.join(" "));
    s
}

fn search(g: &InterfacedHypergraph, inc: &Incidence, mut colors: Vec<u32>, best: &mut Option<String>) {
    refine(g, inc, &mut colors);
    let n = g.sorts.len();
    if count_classes(&colors) == n {
        let enc = encode(g, &colors);
        if best.as_ref().map_or(true, |b| enc < *b) {
            *best = Some(enc);
        }
        return;
    }
    let mut size = vec![0usize; n];
    for &c in &colors {
        size[c as usize] += 1;
    }
    let target = (0..n).find(|&c| size[c] > 1).unwrap() as u32;
    for v in 0..n {
        if colors[v] == target {
            let split: Vec<u32> = colors
                .iter()
                .enumerate()
                .map(|(u, &c)| 2 * c + u32::from(u != v))
                .collect();
            search(g, inc, split, best);
        }
    }
}

fn canonical_encoding(g: &InterfacedHypergraph) -> String {
    let n = g.sorts.len();
    let mut lpos = vec![Vec::new(); n];
    let mut rpos = vec![Vec::new(); n];
    for (p, &v) in g.left.iter().enumerate() {
        lpos[v].push(p);
    }
    for (p, &v) in g.right.iter().enumerate() {
        rpos[v].push(p);
    }
    let initial: Vec<(&str, &Vec<usize>, &Vec<usize>)> = (0..n)
        .map(|v| (g.sorts[v].name(), &lpos[v], &rpos[v]))
        .collect();
    let inc = Incidence::new(g);
    let mut best = None;
    search(g, &inc, rank(&initial), &mut best);
    best.unwrap_or_default()
}

/// A map from the vertices of `from` to those of `to` that fixes the interfaces
/// position by position and sends every edge to an edge with the same label
/// and the same port-wise endpoints.
pub fn find_homomorphism(from: &InterfacedHypergraph, to: &InterfacedHypergraph) -> Option<Vec<usize>> {
    if from.left.len() != to.left.len() || from.right.len() != to.right.len() {
        return None;
    }
    let mut map = vec![usize::MAX; from.sorts.len()];
    let pinned = from.left.iter().zip(&to.left).chain(from.right.iter().zip(&to.right));
    for (&a, &b) in pinned {
        if from.sorts[a] != to.sorts[b] || (map[a] != usize::MAX && map[a] != b) {
            return None;
        }
        map[a] = b;
    }
    let mut by_label: HashMap<&str, Vec<usize>> = HashMap::new();
    for (k, e) in to.edges.iter().enumerate() {
        by_label.entry(&e.label).or_default().push(k);
    }
    let mut pending: Vec<usize> = (0..from.edges.len()).collect();
    if !extend(from, to, &by_label, &mut pending, &mut map) {
        return None;
    }
    // Whatever is left floats free; any vertex of the same sort will do.
    for v in 0..map.len() {
        if map[v] == usize::MAX {
            map[v] = to.sorts.iter().position(|s| *s == from.sorts[v])?;
        }
    }
    Some(map)
}

fn extend(
    from: &InterfacedHypergraph,
    to: &InterfacedHypergraph,
    by_label: &HashMap<&str, Vec<usize>>,
    pending: &mut Vec<usize>,
    map: &mut Vec<usize>,
) -> bool {
    if pending.is_empty() {
        return true;
    }
    // Most-constrained edge first.
    let (slot, _) = pending
        .iter()
        .enumerate()
        .max_by_key(|(_, &k)| {
            let e = &from.edges[k];
            e.sources.iter().chain(&e.targets).filter(|&&v| map[v] != usize::MAX).count()
        })
        .unwrap();
    let k = pending.swap_remove(slot);
    let e = &from.edges[k];
    let ends: Vec<usize> = e.sources.iter().chain(&e.targets).copied().collect();
    for &cand in by_label.get(&*e.label).map(Vec::as_slice).unwrap_or(&[]) {
        let f = &to.edges[cand];
        if f.sources.len() != e.sources.len() || f.targets.len() != e.targets.len() {
            continue;
        }
        let images: Vec<usize> = f.sources.iter().chain(&f.targets).copied().collect();
        let mut assigned = Vec::new();
        let mut ok = true;
        for (&a, &b) in ends.iter().zip(&images) {
            if map[a] == usize::MAX {
                if from.sorts[a] != to.sorts[b] {
                    ok = false;
                    break;
                }
                map[a] = b;
                assigned.push(a);
            } else if map[a] != b {
                ok = false;
                break;
            }
        }
        if ok && extend(from, to, by_label, pending, map) {
            return true;
        }
        for a in assigned {
            map[a] = usize::MAX;
        }
    }
    pending.push(k);
    let last = pending.len() - 1;
    pending.swap(slot, last);
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(name: &str, ar: &[&str], coar: &[&str]) -> InterfacedHypergraph {
        InterfacedHypergraph::generator(&Generator::new(name, Monomial::of(ar), Monomial::of(coar)))
    }

    #[test]
    fn composing_identities_collapses_wires() {
        let a = InterfacedHypergraph::identity(&Monomial::of(&["A"]));
        let g = a.compose(&a).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert!(g.is_linear());
    }

    #[test]
    fn copier_then_cocopier_is_a_wire() {
        let a = Sort::new("A");
        let g = InterfacedHypergraph::spider(&a, 1, 2)
            .compose(&InterfacedHypergraph::spider(&a, 2, 1))
            .unwrap();
        assert_eq!(g.canonical_key(), InterfacedHypergraph::spider(&a, 1, 1).canonical_key());
    }

    #[test]
    fn key_ignores_vertex_numbering() {
        let f = gen("f", &["A"], &["A"]);
        let g = gen("g", &["A"], &["A"]);
        let par = f.tensor(&g);
        let sym = InterfacedHypergraph::symmetry(&Sort::new("A"), &Sort::new("A"));
        let twisted = sym.compose(&g.tensor(&f)).unwrap().compose(&sym).unwrap();
        assert_eq!(par.canonical_key(), twisted.canonical_key());
        assert_ne!(par.canonical_key(), g.tensor(&f).canonical_key());
    }

    #[test]
    fn floating_components_are_unordered() {
        let a = Sort::new("A");
        let loop_f = InterfacedHypergraph::spider(&a, 0, 1)
            .compose(&gen("f", &["A"], &["A"]))
            .unwrap()
            .compose(&InterfacedHypergraph::spider(&a, 1, 0))
            .unwrap();
        let loop_g = InterfacedHypergraph::spider(&a, 0, 1)
            .compose(&gen("g", &["A"], &["A"]))
            .unwrap()
            .compose(&InterfacedHypergraph::spider(&a, 1, 0))
            .unwrap();
        assert_eq!(
            loop_f.tensor(&loop_g).canonical_key(),
            loop_g.tensor(&loop_f).canonical_key()
        );
    }

    #[test]
    fn homomorphism_respects_interfaces() {
        let a = Sort::new("A");
        let top = InterfacedHypergraph::spider(&a, 1, 0).tensor(&InterfacedHypergraph::spider(&a, 0, 1));
        let id = InterfacedHypergraph::spider(&a, 1, 1);
        assert!(find_homomorphism(&top, &id).is_some());
        assert!(find_homomorphism(&id, &top).is_none());
    }

    #[test]
    fn core_removes_redundant_paths() {
        let a = Sort::new("A");
        let r = gen("R", &["A"], &["A"]);
        let cp = InterfacedHypergraph::spider(&a, 1, 2);
        let cocp = InterfacedHypergraph::spider(&a, 2, 1);
        let rr = cp.compose(&r.tensor(&r)).unwrap().compose(&cocp).unwrap();
        assert_eq!(rr.core().canonical_key(), r.canonical_key());
        // R ; ⊤ ; R has an inner wire that cannot be folded away.
        let top = InterfacedHypergraph::spider(&a, 1, 0).tensor(&InterfacedHypergraph::spider(&a, 0, 1));
        let rtr = r.compose(&top).unwrap().compose(&r).unwrap();
        assert_eq!(rtr.core().vertex_count(), 4);
    }
}
