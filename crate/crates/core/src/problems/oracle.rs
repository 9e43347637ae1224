//! Exhaustive solvers used as ground truth. Callers enforce size caps; all
//! routines assume at most 64 vertices.

use std::collections::{HashMap, VecDeque};

use crate::graph::Graph;

fn closed_masks(g: &Graph) -> Vec<u64> {
    g.adjacency_masks().iter().enumerate().map(|(v, m)| m | (1u64 << v)).collect()
}

/// Minimum vertex cover by subset enumeration.
pub fn min_vertex_cover(g: &Graph) -> i64 {
    let adj = g.adjacency_masks();
    let n = g.n();
    let mut best = n as i64;
    for mask in 0u64..(1u64 << n) {
        let size = mask.count_ones() as i64;
        if size >= best {
            continue;
        }
        if (0..n).all(|v| mask >> v & 1 == 1 || adj[v] & !mask == 0) {
            best = size;
        }
    }
    best
}

/// Minimum vertex set whose closed neighbourhood contains `need`.
pub fn min_dominating_set(g: &Graph, need: u64) -> i64 {
    let closed = closed_masks(g);
    let n = g.n();
    let mut best = n as i64;
    for mask in 0u64..(1u64 << n) {
        let size = mask.count_ones() as i64;
        if size >= best {
            continue;
        }
        let mut dom = 0u64;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            dom |= closed[v];
        }
        if need & !dom == 0 {
            best = size;
        }
    }
    best
}

/// For each vertex, the other vertices within distance `r`.
pub(crate) fn ball_masks(g: &Graph, r: u32) -> Vec<u64> {
    (0..g.n())
        .map(|v| {
            let mut seen = 1u64 << v;
            let mut frontier = 1u64 << v;
            for _ in 0..r {
                let mut next = 0u64;
                let mut f = frontier;
                while f != 0 {
                    let u = f.trailing_zeros() as usize;
                    f &= f - 1;
                    for &w in g.neighbors(u) {
                        next |= 1u64 << w;
                    }
                }
                frontier = next & !seen;
                seen |= next;
            }
            seen & !(1u64 << v)
        })
        .collect()
}

/// Maximum set of vertices pairwise more than `r` apart.
pub fn max_scattered(g: &Graph, r: u32) -> i64 {
    let balls = ball_masks(g, r);
    fn go(cand: u64, balls: &[u64]) -> i64 {
        if cand == 0 {
            return 0;
        }
        let v = cand.trailing_zeros() as usize;
        let rest = cand & !(1u64 << v);
        if balls[v] & cand == 0 {
            // No conflicts: taking v is never worse.
            return 1 + go(rest, balls);
        }
        go(rest, balls).max(1 + go(rest & !balls[v], balls))
    }
    go(super::full_mask(g.n()), &balls)
}

/// Vertex sets of all cycles through `v` inside `allowed`.
pub(crate) fn cycles_through(g: &Graph, v: usize, allowed: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut stack: Vec<(usize, usize)> = vec![(v, 0)];
    let mut on_path = 1u64 << v;
    // Iterative DFS over simple paths starting at v.
    while let Some(&mut (u, ref mut i)) = stack.last_mut() {
        let nbrs = g.neighbors(u);
        if *i >= nbrs.len() {
            stack.pop();
            on_path &= !(1u64 << u);
            continue;
        }
        let w = nbrs[*i];
        *i += 1;
        if w == v && stack.len() >= 3 {
            out.push(on_path);
        } else if allowed >> w & 1 == 1 && on_path >> w & 1 == 0 {
            on_path |= 1u64 << w;
            stack.push((w, 0));
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Maximum number of vertex-disjoint cycles.
pub fn max_cycle_packing(g: &Graph) -> i64 {
    fn go(g: &Graph, mask: u64, memo: &mut HashMap<u64, i64>) -> i64 {
        if mask.count_ones() < 3 {
            return 0;
        }
        if let Some(&v) = memo.get(&mask) {
            return v;
        }
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1u64 << v);
        let mut best = go(g, rest, memo);
        for c in cycles_through(g, v, mask) {
            best = best.max(1 + go(g, mask & !c, memo));
        }
        memo.insert(mask, best);
        best
    }
    go(g, super::full_mask(g.n()), &mut HashMap::new())
}

/// Shortest cycle among live edges, as edge indices, if its length is at most `s`.
fn short_cycle(n: usize, edges: &[(usize, usize)], alive: u64, s: u32) -> Option<Vec<usize>> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        if alive >> i & 1 == 1 {
            adj[u].push((v, i));
            adj[v].push((u, i));
        }
    }
    let mut best: Option<Vec<usize>> = None;
    for (i, &(a, b)) in edges.iter().enumerate() {
        if alive >> i & 1 == 0 {
            continue;
        }
        // BFS from a to b without edge i.
        let limit = best.as_ref().map_or(s as usize, |c| c.len() - 1);
        let mut via: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut dist = vec![usize::MAX; n];
        dist[a] = 0;
        let mut q = VecDeque::from([a]);
        while let Some(u) = q.pop_front() {
            if u == b || dist[u] >= limit {
                continue;
            }
            for &(w, e) in &adj[u] {
                if e != i && dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    via[w] = Some((u, e));
                    q.push_back(w);
                }
            }
        }
        if dist[b] != usize::MAX && dist[b] < limit {
            let mut cyc = vec![i];
            let mut x = b;
            while let Some((p, e)) = via[x] {
                cyc.push(e);
                x = p;
            }
            best = Some(cyc);
        }
    }
    best
}

/// Minimum number of edges whose deletion leaves no cycle of length at most `s`.
pub fn min_cycle_transversal(g: &Graph, s: u32) -> i64 {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let all = super::full_mask(edges.len());
    fn feasible(n: usize, edges: &[(usize, usize)], alive: u64, s: u32, budget: usize) -> bool {
        match short_cycle(n, edges, alive, s) {
            None => true,
            Some(_) if budget == 0 => false,
            Some(cyc) => cyc.iter().any(|&e| feasible(n, edges, alive & !(1u64 << e), s, budget - 1)),
        }
    }
    (0..=edges.len()).find(|&k| feasible(g.n(), &edges, all, s, k)).unwrap_or(edges.len()) as i64
}
