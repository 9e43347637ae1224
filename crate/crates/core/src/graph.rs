//! Simple undirected graphs over dense vertex ids `0..n`.
//!
//! Every other type in the crate references vertices of a [`Graph`] by index.
//! Operations that produce a subgraph also return a [`Relabel`] so callers can
//! track where each surviving vertex went.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

pub type Vertex = usize;
pub type VertexSet = BTreeSet<Vertex>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
}

/// Old/new id correspondence produced by subgraph operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabel {
    pub new_to_old: Vec<Vertex>,
    pub old_to_new: Vec<Option<Vertex>>,
}

impl Relabel {
    pub fn from_kept(old_n: usize, kept: &[Vertex]) -> Self {
        let mut old_to_new = vec![None; old_n];
        for (new, &old) in kept.iter().enumerate() {
            old_to_new[old] = Some(new);
        }
        Relabel {
            new_to_old: kept.to_vec(),
            old_to_new,
        }
    }
}

/// Simple undirected graph: no loops, no parallel edges.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge iterator. Duplicate edges collapse.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_unchecked(u, v);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.insert_unchecked(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.insert_unchecked(0, n - 1);
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Inserts `{u, v}`; returns whether the edge is new.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool, GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        Ok(self.insert_unchecked(u, v))
    }

    fn insert_unchecked(&mut self, u: Vertex, v: Vertex) -> bool {
        match self.adj[u].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                true
            }
        }
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        if let Ok(pos) = self.adj[u].binary_search(&v) {
            self.adj[u].remove(pos);
            let pos = self.adj[v].binary_search(&u).expect("symmetric adjacency");
            self.adj[v].remove(pos);
            true
        } else {
            false
        }
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn check_vertices<'a, I>(&self, vs: I) -> Result<(), GraphError>
    where
        I: IntoIterator<Item = &'a Vertex>,
    {
        for &v in vs {
            if v >= self.n() {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() });
            }
        }
        Ok(())
    }

    /// Subgraph induced by `keep`; new id `i` is `keep[i]`.
    pub fn induced(&self, keep: &[Vertex]) -> (Graph, Relabel) {
        let relabel = Relabel::from_kept(self.n(), keep);
        let mut adj = vec![Vec::new(); keep.len()];
        for (new_u, &old_u) in keep.iter().enumerate() {
            for &old_v in &self.adj[old_u] {
                if let Some(new_v) = relabel.old_to_new[old_v] {
                    adj[new_u].push(new_v);
                }
            }
            adj[new_u].sort_unstable();
        }
        (Graph { adj }, relabel)
    }

    pub fn induced_set(&self, keep: &VertexSet) -> (Graph, Relabel) {
        let keep: Vec<Vertex> = keep.iter().copied().collect();
        self.induced(&keep)
    }

    pub fn without(&self, removed: &VertexSet) -> (Graph, Relabel) {
        let keep: Vec<Vertex> = (0..self.n()).filter(|v| !removed.contains(v)).collect();
        self.induced(&keep)
    }

    /// Connected components of the graph minus `removed`, each sorted,
    /// ordered by smallest vertex.
    pub fn components_avoiding(&self, removed: &[bool]) -> Vec<Vec<Vertex>> {
        let n = self.n();
        let mut seen = removed.to_vec();
        seen.resize(n, false);
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<Vertex>> {
        self.components_avoiding(&[])
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_forest(&self) -> bool {
        self.m() + self.components().len() == self.n()
    }

    /// Breadth-first hop distances from `sources`; `None` marks unreachable.
    pub fn distances_from(&self, sources: &VertexSet) -> Result<Vec<Option<usize>>, GraphError> {
        self.check_vertices(sources)?;
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        for &s in sources {
            dist[s] = Some(0);
            queue.push_back(s);
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[u].expect("queued vertices have a distance");
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    /// Vertices of `s` with a neighbour outside `s`.
    pub fn boundary_of(&self, s: &VertexSet) -> VertexSet {
        s.iter()
            .copied()
            .filter(|&v| v < self.n() && self.adj[v].iter().any(|w| !s.contains(w)))
            .collect()
    }

    /// Articulation points, sorted.
    pub fn articulation_points(&self) -> Vec<Vertex> {
        let n = self.n();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut is_cut = vec![false; n];
        let mut timer = 0;
        // Iterative DFS: (vertex, parent, next neighbor index).
        let mut stack: Vec<(Vertex, usize, usize)> = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let mut root_children = 0;
            stack.push((root, usize::MAX, 0));
            while let Some(&mut (u, parent, ref mut idx)) = stack.last_mut() {
                if *idx < self.adj[u].len() {
                    let w = self.adj[u][*idx];
                    *idx += 1;
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        if u == root {
                            root_children += 1;
                        }
                        stack.push((w, u, 0));
                    } else if w != parent {
                        low[u] = low[u].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[u]);
                        if parent != root && low[u] >= disc[parent] {
                            is_cut[parent] = true;
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        (0..n).filter(|&v| is_cut[v]).collect()
    }

    /// Bitmask adjacency for graphs on at most 64 vertices.
    pub fn adjacency_masks(&self) -> Vec<u64> {
        assert!(self.n() <= 64, "bitmask adjacency needs n <= 64");
        self.adj
            .iter()
            .map(|ns| ns.iter().fold(0u64, |acc, &v| acc | (1u64 << v)))
            .collect()
    }

    /// Disjoint union; `other`'s vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|ns| ns.iter().map(|&v| v + shift).collect::<Vec<_>>()),
        );
        Graph { adj }
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[Vertex]) -> Graph {
        let mut g = Graph::new(self.n());
        for (u, v) in self.edges() {
            g.insert_unchecked(perm[u], perm[v]);
        }
        g
    }
}
