//! Tree decompositions, exact `tw(G) <= t` decisions, and nice normal form.
//!
//! [`decide_tw_leq`] works component by component. Each component first goes
//! through the safe simplicial / almost-simplicial elimination rules; what is
//! left (the core) is settled by lower bounds, a min-fill ordering, or, when
//! both are inconclusive, an exact search over elimination sets with a memo of
//! failed sets. Only the exact search is subject to the vertex cap.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwError {
    #[error("too large for exact treewidth: core of {vertices} vertices exceeds cap {cap}")]
    TooLarge { vertices: usize, cap: usize },
    #[error("invalid tree decomposition: {0:?}")]
    Invalid(Vec<Violation>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwConfig {
    /// Largest reduced core handed to the exact search.
    pub exact_cap: usize,
}

impl Default for TwConfig {
    fn default() -> Self {
        TwConfig { exact_cap: 32 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotATree(String),
    VertexOutOfRange { node: usize, vertex: Vertex },
    EdgeUncovered(Vertex, Vertex),
    VertexUncovered(Vertex),
    VertexDisconnected(Vertex),
    NodeKind { node: usize, msg: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotATree(msg) => write!(f, "tree structure: {msg}"),
            Violation::VertexOutOfRange { node, vertex } => {
                write!(f, "node {node} holds vertex {vertex} outside the graph")
            }
            Violation::EdgeUncovered(u, v) => write!(f, "edge {u}-{v} is in no bag"),
            Violation::VertexUncovered(v) => write!(f, "vertex {v} is in no bag"),
            Violation::VertexDisconnected(v) => write!(f, "bags holding vertex {v} are disconnected"),
            Violation::NodeKind { node, msg } => write!(f, "node {node}: {msg}"),
        }
    }
}

/// Rooted tree of bags; `parent[i]` is `None` exactly for the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<Vertex>>,
    pub parent: Vec<Option<usize>>,
}

impl TreeDecomposition {
    pub fn single_bag(bag: Vec<Vertex>) -> Self {
        let mut bag = bag;
        bag.sort_unstable();
        bag.dedup();
        TreeDecomposition { bags: vec![bag], parent: vec![None] }
    }

    /// Maximum bag size minus one (0 for an empty decomposition).
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn root(&self) -> Option<usize> {
        self.parent.iter().position(Option::is_none)
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.len()];
        for (i, p) in self.parent.iter().enumerate() {
            if let Some(p) = *p {
                ch[p].push(i);
            }
        }
        ch
    }

    /// Both decomposition conditions plus tree shape; empty iff valid.
    pub fn validate(&self, g: &Graph) -> Vec<Violation> {
        let mut out = Vec::new();
        let len = self.len();
        if self.parent.len() != len {
            out.push(Violation::NotATree("parent and bag lists differ in length".into()));
            return out;
        }
        if len == 0 {
            if g.n() > 0 {
                out.push(Violation::NotATree("no nodes".into()));
            }
            return out;
        }
        let roots = self.parent.iter().filter(|p| p.is_none()).count();
        if roots != 1 {
            out.push(Violation::NotATree(format!("{roots} roots")));
            return out;
        }
        for (i, p) in self.parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= len {
                    out.push(Violation::NotATree(format!("node {i} has missing parent {p}")));
                    return out;
                }
            }
        }
        // every parent chain must reach the root
        let mut depth_known = vec![false; len];
        for start in 0..len {
            let mut path = Vec::new();
            let mut cur = start;
            loop {
                if depth_known[cur] || self.parent[cur].is_none() {
                    break;
                }
                if path.len() > len {
                    out.push(Violation::NotATree(format!("cycle through node {start}")));
                    return out;
                }
                path.push(cur);
                cur = self.parent[cur].unwrap();
            }
            for p in path {
                depth_known[p] = true;
            }
        }
        let n = g.n();
        let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut bag_sets: Vec<BTreeSet<Vertex>> = Vec::with_capacity(len);
        for (i, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= n {
                    out.push(Violation::VertexOutOfRange { node: i, vertex: v });
                } else {
                    holders[v].push(i);
                }
            }
            bag_sets.push(bag.iter().copied().collect());
        }
        for (u, v) in g.edges() {
            if !holders[u].iter().any(|&i| bag_sets[i].contains(&v)) {
                out.push(Violation::EdgeUncovered(u, v));
            }
        }
        for (v, hs) in holders.iter().enumerate() {
            if hs.is_empty() {
                out.push(Violation::VertexUncovered(v));
                continue;
            }
            let tops = hs
                .iter()
                .filter(|&&i| self.parent[i].is_none_or(|p| !bag_sets[p].contains(&v)))
                .count();
            if tops != 1 {
                out.push(Violation::VertexDisconnected(v));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Introduce(Vertex),
    Forget(Vertex),
    Join,
}

/// Nice form: leaves have empty bags, the root bag is empty, and every
/// vertex is forgotten exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    pub td: TreeDecomposition,
    pub kinds: Vec<NodeKind>,
    pub children: Vec<Vec<usize>>,
    pub root: usize,
}

impl NiceTreeDecomposition {
    pub fn width(&self) -> usize {
        self.td.width()
    }

    pub fn bag(&self, node: usize) -> &[Vertex] {
        &self.td.bags[node]
    }

    /// Node that forgets `v`, if any.
    pub fn forget_node(&self, v: Vertex) -> Option<usize> {
        self.kinds.iter().position(|k| *k == NodeKind::Forget(v))
    }

    /// Nodes in an order where every child precedes its parent.
    pub fn postorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.kinds.len());
        let mut stack = vec![(self.root, false)];
        while let Some((x, done)) = stack.pop() {
            if done {
                out.push(x);
            } else {
                stack.push((x, true));
                for &c in self.children[x].iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        out
    }

    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.kinds.len()];
        let mut stack = vec![self.root];
        while let Some(x) = stack.pop() {
            for &c in &self.children[x] {
                depth[c] = depth[x] + 1;
                stack.push(c);
            }
        }
        depth
    }

    pub fn validate(&self, g: &Graph) -> Vec<Violation> {
        let mut out = self.td.validate(g);
        if !out.is_empty() {
            return out;
        }
        if self.td.parent[self.root].is_some() {
            out.push(Violation::NotATree(format!("declared root {} has a parent", self.root)));
        }
        let kind_err = |node: usize, msg: String| Violation::NodeKind { node, msg };
        for (x, kind) in self.kinds.iter().enumerate() {
            let ch = &self.children[x];
            let bag = &self.td.bags[x];
            for &c in ch {
                if self.td.parent[c] != Some(x) {
                    out.push(kind_err(x, format!("child {c} does not point back")));
                }
            }
            match (*kind, ch.as_slice()) {
                (NodeKind::Leaf, []) => {}
                (NodeKind::Join, [a, b]) => {
                    if self.td.bags[*a] != *bag || self.td.bags[*b] != *bag {
                        out.push(kind_err(x, "join children bags differ from the join bag".into()));
                    }
                }
                (NodeKind::Introduce(v), [c]) => {
                    let cb = &self.td.bags[*c];
                    let ok = bag.len() == cb.len() + 1
                        && bag.contains(&v)
                        && !cb.contains(&v)
                        && cb.iter().all(|u| bag.contains(u));
                    if !ok {
                        out.push(kind_err(x, format!("introduce of {v} does not add exactly {v}")));
                    }
                }
                (NodeKind::Forget(v), [c]) => {
                    let cb = &self.td.bags[*c];
                    let ok = cb.len() == bag.len() + 1
                        && cb.contains(&v)
                        && !bag.contains(&v)
                        && bag.iter().all(|u| cb.contains(u));
                    if !ok {
                        out.push(kind_err(x, format!("forget of {v} does not remove exactly {v}")));
                    }
                }
                (k, ch) => out.push(kind_err(x, format!("{k:?} with {} children", ch.len()))),
            }
        }
        out
    }
}

/// Converts `td` to nice form rooted at `root`, preserving width.
pub fn make_nice(g: &Graph, td: &TreeDecomposition, root: usize) -> Result<NiceTreeDecomposition, TwError> {
    let violations = td.validate(g);
    if !violations.is_empty() {
        return Err(TwError::Invalid(violations));
    }
    if root >= td.len() {
        return Err(TwError::Invalid(vec![Violation::NotATree(format!("root {root} is not a node"))]));
    }
    // undirected adjacency so any node can be the root
    let mut nbrs = vec![Vec::new(); td.len()];
    for (i, p) in td.parent.iter().enumerate() {
        if let Some(p) = *p {
            nbrs[i].push(p);
            nbrs[p].push(i);
        }
    }
    let mut order = Vec::with_capacity(td.len());
    let mut up = vec![usize::MAX; td.len()];
    let mut stack = vec![root];
    up[root] = root;
    while let Some(x) = stack.pop() {
        order.push(x);
        for &y in &nbrs[x] {
            if up[y] == usize::MAX {
                up[y] = x;
                stack.push(y);
            }
        }
    }

    let mut b = Builder::default();
    // top nice node of each processed original node (its bag equals the original bag)
    let mut top = vec![usize::MAX; td.len()];
    for &x in order.iter().rev() {
        let bag: Vec<Vertex> = td.bags[x].clone();
        let kids: Vec<usize> = nbrs[x].iter().copied().filter(|&y| y != root && up[y] == x).collect();
        let mut chains = Vec::new();
        for &c in &kids {
            chains.push(b.transition(top[c], &td.bags[c], &bag));
        }
        let node = if chains.is_empty() {
            let leaf = b.push(Vec::new(), NodeKind::Leaf, vec![]);
            b.transition(leaf, &[], &bag)
        } else {
            let mut acc = chains[0];
            for &c in &chains[1..] {
                acc = b.push(bag.clone(), NodeKind::Join, vec![acc, c]);
            }
            acc
        };
        top[x] = node;
    }
    let root_node = b.transition(top[root], &td.bags[root], &[]);
    Ok(b.finish(root_node))
}

#[derive(Default)]
struct Builder {
    bags: Vec<Vec<Vertex>>,
    kinds: Vec<NodeKind>,
    children: Vec<Vec<usize>>,
}

impl Builder {
    fn push(&mut self, bag: Vec<Vertex>, kind: NodeKind, children: Vec<usize>) -> usize {
        self.bags.push(bag);
        self.kinds.push(kind);
        self.children.push(children);
        self.bags.len() - 1
    }

    /// Forget-then-introduce chain from a node with bag `from` up to bag `to`.
    fn transition(&mut self, mut node: usize, from: &[Vertex], to: &[Vertex]) -> usize {
        let mut cur: Vec<Vertex> = from.to_vec();
        for &v in from {
            if !to.contains(&v) {
                cur.retain(|&u| u != v);
                node = self.push(cur.clone(), NodeKind::Forget(v), vec![node]);
            }
        }
        for &v in to {
            if !from.contains(&v) {
                let pos = cur.binary_search(&v).unwrap_err();
                cur.insert(pos, v);
                node = self.push(cur.clone(), NodeKind::Introduce(v), vec![node]);
            }
        }
        node
    }

    fn finish(self, root: usize) -> NiceTreeDecomposition {
        let mut parent = vec![None; self.bags.len()];
        for (x, ch) in self.children.iter().enumerate() {
            for &c in ch {
                parent[c] = Some(x);
            }
        }
        NiceTreeDecomposition {
            td: TreeDecomposition { bags: self.bags, parent },
            kinds: self.kinds,
            children: self.children,
            root,
        }
    }
}

/// Decomposition induced by eliminating vertices in `order` (a permutation of `V(g)`).
pub fn decomposition_from_order(g: &Graph, order: &[Vertex]) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition::single_bag(Vec::new());
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj: Vec<BTreeSet<Vertex>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut bags = Vec::with_capacity(n);
    let mut parent = vec![None; n];
    for (i, &v) in order.iter().enumerate() {
        let higher: Vec<Vertex> = adj[v].iter().copied().collect();
        for (a, &x) in higher.iter().enumerate() {
            adj[x].remove(&v);
            for &y in &higher[a + 1..] {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
        if let Some(&first) = higher.iter().min_by_key(|&&u| pos[u]) {
            parent[i] = Some(pos[first]);
        }
        let mut bag = higher;
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
    }
    // one tree per component; hang earlier roots below the last one
    let last = n - 1;
    for p in parent.iter_mut().take(last) {
        if p.is_none() {
            *p = Some(last);
        }
    }
    TreeDecomposition { bags, parent }
}

/// Returns a decomposition of width at most `t` iff `tw(g) <= t`.
pub fn decide_tw_leq(g: &Graph, t: usize, cfg: &TwConfig) -> Result<Option<TreeDecomposition>, TwError> {
    let mut order = Vec::with_capacity(g.n());
    for comp in g.components() {
        let (h, relabel) = g.induced(&comp);
        match component_order(&h, t, cfg)? {
            Some(local) => order.extend(local.into_iter().map(|v| relabel.new_to_old[v])),
            None => return Ok(None),
        }
    }
    let td = decomposition_from_order(g, &order);
    debug_assert!(td.width() <= t);
    Ok(Some(td))
}

/// Exact treewidth by increasing `t`.
pub fn treewidth(g: &Graph, cfg: &TwConfig) -> Result<usize, TwError> {
    let lb = g.components().iter().map(|c| {
        let (h, _) = g.induced(c);
        degeneracy(&h)
    }).max().unwrap_or(0);
    for t in lb..g.n().max(1) {
        if decide_tw_leq(g, t, cfg)?.is_some() {
            return Ok(t);
        }
    }
    Ok(g.n().saturating_sub(1))
}

/// Smallest k such that every subgraph has a vertex of degree at most k.
pub fn degeneracy(g: &Graph) -> usize {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let maxd = deg.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<Vec<Vertex>> = vec![Vec::new(); maxd + 1];
    for v in 0..n {
        buckets[deg[v]].push(v);
    }
    let mut removed = vec![false; n];
    let mut best = 0;
    let mut d: usize = 0;
    for _ in 0..n {
        d = d.saturating_sub(1);
        let v = loop {
            while buckets[d].is_empty() {
                d += 1;
            }
            let v = buckets[d].pop().unwrap();
            if !removed[v] && deg[v] == d {
                break v;
            }
        };
        removed[v] = true;
        best = best.max(d);
        for &w in g.neighbors(v) {
            if !removed[w] {
                deg[w] -= 1;
                buckets[deg[w]].push(w);
            }
        }
    }
    best
}

/// Working graph for elimination with fill-in.
struct ElimGraph {
    adj: Vec<BTreeSet<Vertex>>,
    alive: Vec<bool>,
    live: usize,
}

impl ElimGraph {
    fn new(g: &Graph) -> Self {
        ElimGraph {
            adj: (0..g.n()).map(|v| g.neighbors(v).iter().copied().collect()).collect(),
            alive: vec![true; g.n()],
            live: g.n(),
        }
    }

    fn eliminate(&mut self, v: Vertex) -> Vec<Vertex> {
        let nb: Vec<Vertex> = std::mem::take(&mut self.adj[v]).into_iter().collect();
        for (i, &x) in nb.iter().enumerate() {
            self.adj[x].remove(&v);
            for &y in &nb[i + 1..] {
                self.adj[x].insert(y);
                self.adj[y].insert(x);
            }
        }
        self.alive[v] = false;
        self.live -= 1;
        nb
    }

    fn is_clique(&self, vs: &[Vertex]) -> bool {
        vs.iter().enumerate().all(|(i, &x)| vs[i + 1..].iter().all(|y| self.adj[x].contains(y)))
    }

    /// Safe to eliminate without changing whether `tw <= t`.
    fn reducible(&self, v: Vertex, t: usize) -> bool {
        let nb: Vec<Vertex> = self.adj[v].iter().copied().collect();
        if nb.len() > t {
            return false;
        }
        if self.is_clique(&nb) {
            return true;
        }
        (0..nb.len()).any(|skip| {
            let rest: Vec<Vertex> = nb.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x).collect();
            self.is_clique(&rest)
        })
    }

    fn fill_count(&self, v: Vertex, limit: usize) -> usize {
        let nb: Vec<Vertex> = self.adj[v].iter().copied().collect();
        let mut missing = 0;
        for (i, &x) in nb.iter().enumerate() {
            for &y in &nb[i + 1..] {
                if !self.adj[x].contains(&y) {
                    missing += 1;
                    if missing > limit {
                        return missing;
                    }
                }
            }
        }
        missing
    }

    fn live_vertices(&self) -> Vec<Vertex> {
        (0..self.alive.len()).filter(|&v| self.alive[v]).collect()
    }
}

/// Elimination order of width <= t for a connected graph, or None.
fn component_order(h: &Graph, t: usize, cfg: &TwConfig) -> Result<Option<Vec<Vertex>>, TwError> {
    let n = h.n();
    if n <= t + 1 {
        return Ok(Some((0..n).collect()));
    }
    if t == 0 {
        return Ok(None); // connected with at least two vertices
    }
    // tw <= t forces m <= t*n - t(t+1)/2
    if h.m() > t * n - t * (t + 1) / 2 {
        return Ok(None);
    }
    let mut eg = ElimGraph::new(h);
    let mut order = Vec::with_capacity(n);
    let mut queued = vec![true; n];
    let mut work: Vec<Vertex> = (0..n).rev().collect();
    while let Some(v) = work.pop() {
        queued[v] = false;
        if !eg.alive[v] || eg.live <= t + 1 {
            continue;
        }
        if eg.reducible(v, t) {
            for x in eg.eliminate(v) {
                if !queued[x] {
                    queued[x] = true;
                    work.push(x);
                }
            }
            order.push(v);
        }
    }
    let core = eg.live_vertices();
    if core.len() <= t + 1 {
        order.extend(core);
        return Ok(Some(order));
    }
    let mut core_graph = Graph::new(core.len());
    let mut index = vec![usize::MAX; n];
    for (i, &v) in core.iter().enumerate() {
        index[v] = i;
    }
    for &v in &core {
        for &w in &eg.adj[v] {
            if v < w {
                core_graph.add_edge(index[v], index[w]).unwrap();
            }
        }
    }
    if degeneracy(&core_graph) > t || contraction_degeneracy(&core_graph) > t {
        return Ok(None);
    }
    if let Some(local) = min_fill_order(&core_graph, t) {
        order.extend(local.into_iter().map(|i| core[i]));
        return Ok(Some(order));
    }
    if core.len() > cfg.exact_cap || core.len() > 64 {
        return Err(TwError::TooLarge { vertices: core.len(), cap: cfg.exact_cap });
    }
    match exact_order(&core_graph, t) {
        Some(local) => {
            order.extend(local.into_iter().map(|i| core[i]));
            Ok(Some(order))
        }
        None => Ok(None),
    }
}

/// Minimum-degree contraction lower bound (contract into the least-degree neighbour).
fn contraction_degeneracy(g: &Graph) -> usize {
    let mut adj: Vec<BTreeSet<Vertex>> = (0..g.n()).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive: Vec<bool> = vec![true; g.n()];
    let mut best = 0;
    for _ in 0..g.n() {
        let v = match (0..g.n()).filter(|&v| alive[v]).min_by_key(|&v| adj[v].len()) {
            Some(v) => v,
            None => break,
        };
        best = best.max(adj[v].len());
        alive[v] = false;
        let nb: Vec<Vertex> = std::mem::take(&mut adj[v]).into_iter().collect();
        match nb.iter().copied().min_by_key(|&u| adj[u].len()) {
            Some(u) => {
                for &w in &nb {
                    adj[w].remove(&v);
                    if w != u {
                        adj[w].insert(u);
                        adj[u].insert(w);
                    }
                }
            }
            None => continue,
        }
    }
    best
}

/// Greedy min-fill ordering; gives up as soon as a step exceeds width `t`.
fn min_fill_order(g: &Graph, t: usize) -> Option<Vec<Vertex>> {
    let mut eg = ElimGraph::new(g);
    let mut order = Vec::with_capacity(g.n());
    while eg.live > 0 {
        let mut best: Option<(usize, usize, Vertex)> = None;
        for v in 0..g.n() {
            if !eg.alive[v] || eg.adj[v].len() > t {
                continue;
            }
            let limit = best.map_or(usize::MAX, |b| b.0);
            let key = (eg.fill_count(v, limit), eg.adj[v].len(), v);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
        let (_, _, v) = best?;
        eg.eliminate(v);
        order.push(v);
    }
    Some(order)
}

/// Exact search over eliminated sets; `g.n() <= 64`.
fn exact_order(g: &Graph, t: usize) -> Option<Vec<Vertex>> {
    let masks = g.adjacency_masks();
    let full = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    let mut failed = HashSet::new();
    let mut order = Vec::with_capacity(g.n());
    if search(&masks, t, 0, full, &mut failed, &mut order) {
        Some(order)
    } else {
        None
    }
}

/// Neighbours of `v` after eliminating `s`: vertices outside `s` reachable via `s`.
fn q_set(masks: &[u64], s: u64, v: usize) -> u64 {
    let mut visited = 1u64 << v;
    let mut frontier = visited;
    let mut out = 0u64;
    while frontier != 0 {
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            let u = f.trailing_zeros() as usize;
            f &= f - 1;
            out |= masks[u] & !s;
            next |= masks[u] & s & !visited;
        }
        visited |= next;
        frontier = next;
    }
    out & !(1u64 << v)
}

fn search(masks: &[u64], t: usize, s: u64, full: u64, failed: &mut HashSet<u64>, order: &mut Vec<usize>) -> bool {
    let remaining = full & !s;
    if remaining.count_ones() as usize <= t + 1 {
        let mut r = remaining;
        while r != 0 {
            order.push(r.trailing_zeros() as usize);
            r &= r - 1;
        }
        return true;
    }
    if failed.contains(&s) {
        return false;
    }
    let mut cands: Vec<(u32, usize, u64)> = Vec::new();
    let mut r = remaining;
    while r != 0 {
        let v = r.trailing_zeros() as usize;
        r &= r - 1;
        let q = q_set(masks, s, v);
        if q.count_ones() as usize <= t {
            cands.push((q.count_ones(), v, q));
        }
    }
    cands.sort_unstable();
    // a simplicial candidate can always go first
    let simplicial = cands.iter().find(|&&(_, v, q)| {
        let mut rest = q;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let qu = q_set(masks, s, u);
            if (q & !(1u64 << u)) & !qu != 0 {
                return false;
            }
        }
        let _ = v;
        true
    });
    let branch: Vec<usize> = match simplicial {
        Some(&(_, v, _)) => vec![v],
        None => cands.iter().map(|&(_, v, _)| v).collect(),
    };
    for v in branch {
        order.push(v);
        if search(masks, t, s | (1u64 << v), full, failed, order) {
            return true;
        }
        order.pop();
    }
    failed.insert(s);
    false
}
