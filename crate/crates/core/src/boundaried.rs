//! Boundaried graphs: gluing, splitting at a vertex set, canonical codes and
//! exhaustive enumeration up to label-preserving isomorphism.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Relabel, Vertex, VertexSet};

pub type Label = u32;

/// Where each vertex of one side landed in the glued graph.
pub type HeirMap = Vec<Vertex>;

pub const DEFAULT_CANON_CAP: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundaryError {
    #[error("boundary vertex {0} is not a vertex of the graph")]
    VertexOutOfRange(Vertex),
    #[error("boundary vertex {0} listed twice")]
    DuplicateVertex(Vertex),
    #[error("label {0} used twice")]
    DuplicateLabel(Label),
    #[error("labels must be positive")]
    ZeroLabel,
    #[error("boundary and label lists differ in length")]
    LengthMismatch,
    #[error("{n} vertices exceeds the canonization cap {cap}")]
    OverCap { n: usize, cap: usize },
}

/// A graph with an injectively labelled boundary; `labels[i]` belongs to `boundary[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundariedGraph {
    graph: Graph,
    boundary: Vec<Vertex>,
    labels: Vec<Label>,
}

impl BoundariedGraph {
    pub fn new(graph: Graph, boundary: Vec<Vertex>, labels: Vec<Label>) -> Result<Self, BoundaryError> {
        if boundary.len() != labels.len() {
            return Err(BoundaryError::LengthMismatch);
        }
        let mut seen_v = HashSet::new();
        let mut seen_l = HashSet::new();
        for (&v, &l) in boundary.iter().zip(&labels) {
            if v >= graph.n() {
                return Err(BoundaryError::VertexOutOfRange(v));
            }
            if l == 0 {
                return Err(BoundaryError::ZeroLabel);
            }
            if !seen_v.insert(v) {
                return Err(BoundaryError::DuplicateVertex(v));
            }
            if !seen_l.insert(l) {
                return Err(BoundaryError::DuplicateLabel(l));
            }
        }
        Ok(BoundariedGraph { graph, boundary, labels })
    }

    /// Labels `1..=boundary.len()` in the given order.
    pub fn with_sequential_labels(graph: Graph, boundary: Vec<Vertex>) -> Result<Self, BoundaryError> {
        let labels = (1..=boundary.len() as Label).collect();
        Self::new(graph, boundary, labels)
    }

    /// The graph with no boundary.
    pub fn unlabeled(graph: Graph) -> Self {
        BoundariedGraph { graph, boundary: Vec::new(), labels: Vec::new() }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn boundary(&self) -> &[Vertex] {
        &self.boundary
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn boundary_len(&self) -> usize {
        self.boundary.len()
    }

    pub fn label_of(&self, v: Vertex) -> Option<Label> {
        self.boundary.iter().position(|&b| b == v).map(|i| self.labels[i])
    }

    pub fn vertex_of_label(&self, l: Label) -> Option<Vertex> {
        self.labels.iter().position(|&x| x == l).map(|i| self.boundary[i])
    }

    pub fn label_set(&self) -> Vec<Label> {
        let mut ls = self.labels.clone();
        ls.sort_unstable();
        ls
    }

    /// Boundary vertices ordered by increasing label.
    pub fn ordered_boundary(&self) -> Vec<Vertex> {
        let mut pairs: Vec<(Label, Vertex)> = self.labels.iter().copied().zip(self.boundary.iter().copied()).collect();
        pairs.sort_unstable();
        pairs.into_iter().map(|(_, v)| v).collect()
    }

    pub fn is_boundary(&self, v: Vertex) -> bool {
        self.boundary.contains(&v)
    }

    /// Subgraph induced by the boundary, vertex `i` being the `i`-th smallest label.
    pub fn boundary_subgraph(&self) -> Graph {
        self.graph.induced(&self.ordered_boundary()).0
    }

    /// Same boundaried graph with boundary listed in label order and
    /// boundary vertices numbered first.
    pub fn normalized(&self) -> BoundariedGraph {
        let ob = self.ordered_boundary();
        let mut order = ob.clone();
        order.extend((0..self.n()).filter(|v| !self.is_boundary(*v)));
        let (g, _) = self.graph.induced(&order);
        BoundariedGraph { graph: g, boundary: (0..ob.len()).collect(), labels: self.label_set() }
    }
}

/// Glues two boundaried graphs along equal labels.
///
/// The first side keeps its ids; the second side's unmatched vertices are
/// appended in increasing order.
pub fn glue(a: &BoundariedGraph, b: &BoundariedGraph) -> (Graph, HeirMap, HeirMap) {
    let heir_a: HeirMap = (0..a.n()).collect();
    let mut heir_b = vec![usize::MAX; b.n()];
    for (&v, &l) in b.boundary.iter().zip(&b.labels) {
        if let Some(u) = a.vertex_of_label(l) {
            heir_b[v] = u;
        }
    }
    let mut next = a.n();
    for h in heir_b.iter_mut() {
        if *h == usize::MAX {
            *h = next;
            next += 1;
        }
    }
    let mut g = a.graph.clone();
    while g.n() < next {
        g.add_vertex();
    }
    for (u, v) in b.graph.edges() {
        g.add_edge(heir_b[u], heir_b[v]).expect("heirs of distinct vertices are distinct");
    }
    (g, heir_a, heir_b)
}

/// The two sides of a graph cut at `X`, sharing boundary `∂(X)`.
#[derive(Debug, Clone)]
pub struct SplitParts {
    pub boundary: VertexSet,
    /// `G[X]` with boundary `∂(X)`.
    pub inner: BoundariedGraph,
    /// `G[(V \ X) ∪ ∂(X)]` with the same labels.
    pub outer: BoundariedGraph,
    pub inner_map: Relabel,
    pub outer_map: Relabel,
}

/// Splits `g` at `x`; boundary labels are `1..` in increasing vertex id.
pub fn split(g: &Graph, x: &VertexSet) -> SplitParts {
    let boundary = g.boundary_of(x);
    let inner_vs: Vec<Vertex> = x.iter().copied().filter(|&v| v < g.n()).collect();
    let outer_vs: Vec<Vertex> = (0..g.n()).filter(|v| !x.contains(v) || boundary.contains(v)).collect();
    let (gi, inner_map) = g.induced(&inner_vs);
    let (go, outer_map) = g.induced(&outer_vs);
    let bi: Vec<Vertex> = boundary.iter().map(|&v| inner_map.old_to_new[v].unwrap()).collect();
    let bo: Vec<Vertex> = boundary.iter().map(|&v| outer_map.old_to_new[v].unwrap()).collect();
    SplitParts {
        inner: BoundariedGraph::with_sequential_labels(gi, bi).expect("boundary lies in X"),
        outer: BoundariedGraph::with_sequential_labels(go, bo).expect("boundary lies in the outer side"),
        boundary,
        inner_map,
        outer_map,
    }
}

/// Identifies a boundaried graph up to isomorphisms that fix every label.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(pub Vec<u8>);

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for byte in &self.0 {
            write!(f, "{byte:02x}")?;
        }
        Ok(())
    }
}

pub fn canonical_code(b: &BoundariedGraph) -> Result<CanonicalCode, BoundaryError> {
    canonical_code_capped(b, DEFAULT_CANON_CAP)
}

/// Canonical code; `cap` bounds the vertex count (at most 64).
pub fn canonical_code_capped(b: &BoundariedGraph, cap: usize) -> Result<CanonicalCode, BoundaryError> {
    let n = b.n();
    if n > cap.min(64) {
        return Err(BoundaryError::OverCap { n, cap });
    }
    let g = &b.graph;
    let fixed = b.ordered_boundary();
    let free: Vec<Vertex> = (0..n).filter(|v| !b.is_boundary(*v)).collect();
    let colors = refine_colors(g, &fixed, &free);
    let mut cells: Vec<Vertex> = free.clone();
    cells.sort_by_key(|&v| (colors[v], v));
    let cell_of_pos: Vec<usize> = cells.iter().map(|&v| colors[v]).collect();

    let mut search = CanonSearch {
        g,
        colors: &colors,
        cell_of_pos: &cell_of_pos,
        fixed: fixed.len(),
        order: fixed.clone(),
        used: vec![false; n],
        rows: Vec::new(),
        best: None,
    };
    for &v in &fixed {
        search.used[v] = true;
    }
    for (p, &v) in fixed.iter().enumerate() {
        let row = search.row(v, p);
        search.rows.push(row);
    }
    search.run();
    let rows = search.best.unwrap_or_default();

    let mut code = Vec::with_capacity(2 + 4 * fixed.len() + n * n / 8 + 1);
    code.push(n as u8);
    code.push(fixed.len() as u8);
    for l in b.label_set() {
        code.extend_from_slice(&l.to_be_bytes());
    }
    let mut acc = 0u8;
    let mut nbits = 0;
    for (p, row) in rows.iter().enumerate() {
        for j in 0..p {
            acc = (acc << 1) | ((row >> (63 - j)) & 1) as u8;
            nbits += 1;
            if nbits == 8 {
                code.push(acc);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        code.push(acc << (8 - nbits));
    }
    Ok(CanonicalCode(code))
}

/// Isomorphism-invariant colour classes of the free vertices (colour refinement
/// seeded with the adjacency pattern to the label-ordered boundary).
fn refine_colors(g: &Graph, fixed: &[Vertex], free: &[Vertex]) -> Vec<usize> {
    let n = g.n();
    let mut colors = vec![usize::MAX; n];
    let seed: Vec<(usize, Vec<bool>)> = free
        .iter()
        .map(|&v| (g.degree(v), fixed.iter().map(|&f| g.has_edge(v, f)).collect()))
        .collect();
    let mut distinct = seed.clone();
    distinct.sort();
    distinct.dedup();
    for (i, &v) in free.iter().enumerate() {
        colors[v] = distinct.binary_search(&seed[i]).unwrap();
    }
    let mut classes = distinct.len();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = free
            .iter()
            .map(|&v| {
                let mut nc: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w]).filter(|&c| c != usize::MAX).collect();
                nc.sort_unstable();
                (colors[v], nc)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        for (i, &v) in free.iter().enumerate() {
            colors[v] = distinct.binary_search(&sigs[i]).unwrap();
        }
        if distinct.len() == classes {
            break;
        }
        classes = distinct.len();
    }
    colors
}

struct CanonSearch<'a> {
    g: &'a Graph,
    colors: &'a [usize],
    cell_of_pos: &'a [usize],
    fixed: usize,
    order: Vec<Vertex>,
    used: Vec<bool>,
    rows: Vec<u64>,
    best: Option<Vec<u64>>,
}

impl CanonSearch<'_> {
    /// Adjacency of `v` to positions `0..p`, most significant bit first.
    fn row(&self, v: Vertex, p: usize) -> u64 {
        let mut row = 0u64;
        for (j, &u) in self.order[..p].iter().enumerate() {
            if self.g.has_edge(v, u) {
                row |= 1u64 << (63 - j);
            }
        }
        row
    }

    fn run(&mut self) {
        let p = self.order.len();
        if p == self.g.n() {
            if self.best.as_ref().is_none_or(|b| self.rows < *b) {
                self.best = Some(self.rows.clone());
            }
            return;
        }
        if let Some(best) = &self.best {
            if self.rows[..] > best[..p] {
                return;
            }
        }
        let cell = self.cell_of_pos[p - self.fixed];
        let cands: Vec<Vertex> = (0..self.g.n()).filter(|&v| !self.used[v] && self.colors[v] == cell).collect();
        let mut tried = HashSet::new();
        for v in cands {
            let row = self.row(v, p);
            if let Some(best) = &self.best {
                if self.rows[..] == best[..p] && row > best[p] {
                    continue;
                }
            }
            // non-adjacent twins give isomorphic subtrees
            if !tried.insert((row, self.unused_neighbourhood(v))) {
                continue;
            }
            self.order.push(v);
            self.used[v] = true;
            self.rows.push(row);
            self.run();
            self.rows.pop();
            self.used[v] = false;
            self.order.pop();
        }
    }

    fn unused_neighbourhood(&self, v: Vertex) -> Vec<Vertex> {
        self.g.neighbors(v).iter().copied().filter(|&w| !self.used[w]).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumBudget {
    pub max_vertices: usize,
    /// Cap on the number of graphs yielded before signalling overflow.
    pub max_yield: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error("enumeration budget of {0} graphs exceeded")]
    Overflow(usize),
    #[error("label count {labels} exceeds max vertices {max}")]
    BadArgs { labels: usize, max: usize },
}

/// Lazily enumerates boundaried graphs with labels `1..=label_count` (on
/// vertices `0..label_count`), one per isomorphism class, smallest first.
pub struct Enumerator {
    max_vertices: usize,
    label_count: usize,
    level: Vec<Graph>,
    pos: usize,
    yielded: usize,
    max_yield: usize,
    done: bool,
}

pub fn enumerate_boundaried(
    max_vertices: usize,
    label_count: usize,
    fixed_boundary_subgraph: Option<&Graph>,
    max_yield: usize,
) -> Result<Enumerator, EnumError> {
    if label_count > max_vertices {
        return Err(EnumError::BadArgs { labels: label_count, max: max_vertices });
    }
    let level = match fixed_boundary_subgraph {
        Some(h) => {
            assert_eq!(h.n(), label_count, "pinned boundary graph must have one vertex per label");
            vec![h.clone()]
        }
        None => {
            let pairs: Vec<(usize, usize)> =
                (0..label_count).flat_map(|u| (u + 1..label_count).map(move |v| (u, v))).collect();
            (0u64..1 << pairs.len())
                .map(|mask| {
                    let mut g = Graph::new(label_count);
                    for (i, &(u, v)) in pairs.iter().enumerate() {
                        if mask >> i & 1 == 1 {
                            g.add_edge(u, v).unwrap();
                        }
                    }
                    g
                })
                .collect()
        }
    };
    Ok(Enumerator { max_vertices, label_count, level, pos: 0, yielded: 0, max_yield, done: false })
}

impl Enumerator {
    fn wrap(&self, g: Graph) -> BoundariedGraph {
        BoundariedGraph::with_sequential_labels(g, (0..self.label_count).collect()).unwrap()
    }

    fn next_level(&mut self) {
        let current = std::mem::take(&mut self.level);
        let Some(first) = current.first() else { return };
        let n = first.n();
        if n >= self.max_vertices {
            return;
        }
        let cap = self.max_vertices.min(64);
        let mut seen = HashSet::new();
        for g in &current {
            for mask in 0u64..1 << n {
                let mut h = g.clone();
                let v = h.add_vertex();
                for u in 0..n {
                    if mask >> u & 1 == 1 {
                        h.add_edge(u, v).unwrap();
                    }
                }
                let code = canonical_code_capped(&self.wrap(h.clone()), cap).expect("within cap");
                if seen.insert(code) {
                    self.level.push(h);
                }
            }
        }
        self.pos = 0;
    }
}

impl Iterator for Enumerator {
    type Item = Result<BoundariedGraph, EnumError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        if self.pos == self.level.len() {
            self.next_level();
            if self.level.is_empty() {
                self.done = true;
                return None;
            }
        }
        if self.yielded >= self.max_yield {
            self.done = true;
            return Some(Err(EnumError::Overflow(self.max_yield)));
        }
        let g = self.level[self.pos].clone();
        self.pos += 1;
        self.yielded += 1;
        Some(Ok(self.wrap(g)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bg(n: usize, edges: &[(usize, usize)], boundary: &[usize], labels: &[Label]) -> BoundariedGraph {
        BoundariedGraph::new(Graph::from_edges(n, edges.iter().copied()).unwrap(), boundary.to_vec(), labels.to_vec())
            .unwrap()
    }

    #[test]
    fn rejects_bad_labels() {
        let g = Graph::path(2);
        assert_eq!(BoundariedGraph::new(g.clone(), vec![0, 1], vec![1, 1]), Err(BoundaryError::DuplicateLabel(1)));
        assert_eq!(BoundariedGraph::new(g.clone(), vec![0], vec![0]), Err(BoundaryError::ZeroLabel));
        assert_eq!(BoundariedGraph::new(g, vec![5], vec![1]), Err(BoundaryError::VertexOutOfRange(5)));
    }

    #[test]
    fn glue_examples() {
        let k1 = bg(1, &[], &[0], &[1]);
        let (g, _, _) = glue(&k1, &k1);
        assert_eq!(g, Graph::new(1));

        let e1 = bg(2, &[(0, 1)], &[0], &[1]);
        let (g, ha, hb) = glue(&e1, &e1);
        assert_eq!((g.n(), g.m()), (3, 2));
        assert_eq!(ha[0], hb[0]);
        assert!(g.is_connected() && g.is_forest());

        let tri = bg(3, &[(0, 1), (1, 2), (0, 2)], &[0, 1], &[1, 2]);
        let edge = bg(2, &[(0, 1)], &[0, 1], &[1, 2]);
        let (g, _, _) = glue(&tri, &edge);
        assert_eq!(g, Graph::complete(3));
    }

    #[test]
    fn glue_disjoint_labels_is_disjoint_union() {
        let a = bg(1, &[], &[0], &[1]);
        let b = bg(1, &[], &[0], &[2]);
        assert_eq!(glue(&a, &b).0.n(), 2);
    }

    #[test]
    fn split_examples() {
        let p3 = Graph::path(3);
        let parts = split(&p3, &[0, 1].into_iter().collect());
        assert_eq!(parts.boundary, [1].into_iter().collect());
        assert_eq!(parts.inner.graph().m(), 1);
        assert_eq!(parts.outer.graph().m(), 1);
        assert_eq!(glue(&parts.inner, &parts.outer).0.m(), 2);

        let all: VertexSet = (0..3).collect();
        let parts = split(&p3, &all);
        assert_eq!(parts.outer.n(), 0);
        assert_eq!(glue(&parts.inner, &parts.outer).0, p3);

        let mut g = Graph::complete(4);
        let p = g.add_vertex();
        g.add_edge(0, p).unwrap();
        let parts = split(&g, &[0, p].into_iter().collect());
        assert_eq!(parts.boundary, [0].into_iter().collect());
        assert_eq!(parts.inner.graph().m(), 1);
        assert_eq!(*parts.outer.graph(), Graph::complete(4));
        assert_eq!(glue(&parts.inner, &parts.outer).0.m(), g.m());
    }

    #[test]
    fn canonical_code_examples() {
        let mid = bg(3, &[(0, 1), (1, 2)], &[1], &[1]);
        let mirrored = bg(3, &[(2, 1), (1, 0)], &[1], &[1]);
        let end = bg(3, &[(0, 1), (1, 2)], &[0], &[1]);
        let tri = bg(3, &[(0, 1), (1, 2), (0, 2)], &[0], &[1]);
        let c = |b: &BoundariedGraph| canonical_code(b).unwrap();
        assert_eq!(c(&mid), c(&mirrored));
        assert_ne!(c(&mid), c(&end));
        assert_ne!(c(&tri), c(&end));
        let big = BoundariedGraph::unlabeled(Graph::path(11));
        assert!(matches!(canonical_code(&big), Err(BoundaryError::OverCap { n: 11, cap: 10 })));
    }

    fn counts_by_size(max_vertices: usize, labels: usize) -> Vec<usize> {
        let mut counts = vec![0; max_vertices + 1];
        for b in enumerate_boundaried(max_vertices, labels, None, usize::MAX).unwrap() {
            counts[b.unwrap().n()] += 1;
        }
        counts
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(counts_by_size(1, 1), vec![0, 1]);
        assert_eq!(counts_by_size(2, 0), vec![1, 1, 2]);
        assert_eq!(counts_by_size(2, 2), vec![0, 0, 2]);
    }

    #[test]
    fn enumeration_pins_boundary_and_signals_overflow() {
        let pinned = Graph::path(2);
        for b in enumerate_boundaried(4, 2, Some(&pinned), usize::MAX).unwrap() {
            assert_eq!(b.unwrap().boundary_subgraph(), pinned);
        }
        let items: Vec<_> = enumerate_boundaried(4, 1, None, 3).unwrap().collect();
        assert_eq!(items.len(), 4);
        assert_eq!(items[3], Err(EnumError::Overflow(3)));
        let sizes: Vec<usize> = enumerate_boundaried(5, 1, None, usize::MAX).unwrap().map(|b| b.unwrap().n()).collect();
        assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
    }

    /// Distinct classes by brute force over all labelled adjacency matrices.
    fn brute_class_count(max_vertices: usize, labels: usize) -> usize {
        fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
            if items.is_empty() {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for i in 0..items.len() {
                let mut rest = items.to_vec();
                let x = rest.remove(i);
                for mut p in permutations(&rest) {
                    p.insert(0, x);
                    out.push(p);
                }
            }
            out
        }
        let mut total = 0;
        for n in labels..=max_vertices {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let free: Vec<usize> = (labels..n).collect();
            let perms: Vec<Vec<usize>> = permutations(&free)
                .into_iter()
                .map(|p| (0..labels).chain(p).collect())
                .collect();
            let mut classes = HashSet::new();
            for mask in 0u64..1 << pairs.len() {
                let g = Graph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e)).unwrap();
                let min = perms.iter().map(|p| g.permuted(p).edges().collect::<Vec<_>>()).min().unwrap();
                classes.insert(min);
            }
            total += classes.len();
        }
        total
    }

    #[test]
    fn enumeration_is_complete() {
        for (max_vertices, labels) in [(3, 1), (4, 2), (5, 0)] {
            let got = enumerate_boundaried(max_vertices, labels, None, usize::MAX).unwrap().count();
            assert_eq!(got, brute_class_count(max_vertices, labels), "({max_vertices},{labels})");
        }
    }

    fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1usize..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn glue_split_round_trip(g in small_graph(8), xbits in any::<u8>()) {
            let x: VertexSet = (0..g.n()).filter(|v| xbits >> v & 1 == 1).collect();
            let parts = split(&g, &x);
            let (glued, ha, hb) = glue(&parts.inner, &parts.outer);
            prop_assert_eq!(glued.n(), g.n());
            prop_assert_eq!(glued.m(), g.m());
            let heir = |v: usize| match parts.inner_map.old_to_new[v] {
                Some(i) => ha[i],
                None => hb[parts.outer_map.old_to_new[v].unwrap()],
            };
            for (u, v) in g.edges() {
                prop_assert!(glued.has_edge(heir(u), heir(v)));
            }
        }

        #[test]
        fn glue_commutes(a in small_graph(5), b in small_graph(5)) {
            let ba = BoundariedGraph::with_sequential_labels(a.clone(), vec![0]).unwrap();
            let bb = BoundariedGraph::with_sequential_labels(b.clone(), vec![0]).unwrap();
            let (g1, _, _) = glue(&ba, &bb);
            let (g2, _, _) = glue(&bb, &ba);
            let c1 = canonical_code_capped(&BoundariedGraph::unlabeled(g1), 10).unwrap();
            let c2 = canonical_code_capped(&BoundariedGraph::unlabeled(g2), 10).unwrap();
            prop_assert_eq!(c1, c2);
        }

        #[test]
        fn code_is_invariant_under_free_relabelling(g in small_graph(8), seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let n = g.n();
            let b = BoundariedGraph::with_sequential_labels(g.clone(), vec![0]).unwrap();
            let mut rest: Vec<usize> = (1..n).collect();
            rest.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let mut perm = vec![0];
            perm.extend(rest);
            let h = BoundariedGraph::with_sequential_labels(g.permuted(&perm), vec![perm[0]]).unwrap();
            prop_assert_eq!(canonical_code(&b).unwrap(), canonical_code(&h).unwrap());
        }
    }
}
