//! s-cycle transversal. A state `f` gives, for each boundary label pair, a
//! target: after deletion their distance must exceed it. Only boundary
//! distances matter to the other side, since any short cycle crossing the
//! boundary can be rerouted along shortest paths on this side.

use std::collections::{BTreeMap, HashMap, VecDeque};

use super::{Direction, Signature};
use crate::boundaried::BoundariedGraph;
use crate::graph::{Graph, Vertex};

struct EdgeIndex {
    id: HashMap<(usize, usize), usize>,
}

impl EdgeIndex {
    fn new(g: &Graph) -> Self {
        EdgeIndex { id: g.edges().enumerate().map(|(i, e)| (e, i)).collect() }
    }

    fn get(&self, u: usize, v: usize) -> u64 {
        1u64 << self.id[&(u.min(v), u.max(v))]
    }
}

/// Edge masks of all simple `a`-`b` paths of length at most `max_len`
/// (with `a == b`, cycles through `a` of length at least 3).
fn short_walks(g: &Graph, idx: &EdgeIndex, a: usize, b: usize, max_len: usize, inner: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn go(g: &Graph, idx: &EdgeIndex, u: usize, b: usize, left: usize, inner: u64, on: u64, edges: u64, out: &mut Vec<(usize, u64)>) {
        if left == 0 {
            return;
        }
        let len = edges.count_ones() as usize;
        for &w in g.neighbors(u) {
            if w == b {
                // A cycle needs at least two earlier edges so it does not reuse the first.
                if on >> b & 1 == 0 || len >= 2 {
                    out.push((len + 1, edges | idx.get(u, w)));
                }
            } else if inner >> w & 1 == 1 && on >> w & 1 == 0 {
                go(g, idx, w, b, left - 1, inner, on | 1u64 << w, edges | idx.get(u, w), out);
            }
        }
    }
    go(g, idx, a, b, max_len, inner, 1u64 << a, 0, &mut out);
    out
}

/// Edge masks of all cycles of length at most `s`.
fn short_cycles(g: &Graph, idx: &EdgeIndex, s: usize) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    for v in 0..g.n() {
        // Cycles whose smallest vertex is v.
        let above = super::full_mask(g.n()) & !((1u64 << v) | ((1u64 << v) - 1));
        for (len, mask) in short_walks(g, idx, v, v, s, above) {
            if len >= 3 {
                out.push(mask);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn min_hitting_set(objs: &[u64], chosen: u64, count: i64, best: &mut i64) {
    let open: Vec<u64> = objs.iter().copied().filter(|o| o & chosen == 0).collect();
    let Some(&pick) = open.iter().min_by_key(|o| o.count_ones()) else {
        *best = (*best).min(count);
        return;
    };
    // Disjoint open objects each need their own edge.
    let mut used = 0u64;
    let mut lb = 0;
    for &o in &open {
        if o & used == 0 {
            used |= o;
            lb += 1;
        }
    }
    if count + lb >= *best {
        return;
    }
    let mut rest = pick;
    while rest != 0 {
        let e = rest & rest.wrapping_neg();
        rest &= rest - 1;
        min_hitting_set(objs, chosen | e, count + 1, best);
    }
}

pub(super) fn signature(b: &BoundariedGraph, s: u32) -> Signature {
    let g = b.graph();
    let s = s as usize;
    let idx = EdgeIndex::new(g);
    let cycles = short_cycles(g, &idx, s);
    let bnd = b.ordered_boundary();
    let t = bnd.len();
    let labels = b.label_set();
    let all = super::full_mask(g.n());
    let mut pairs = Vec::new();
    for i in 0..t {
        for j in i + 1..t {
            pairs.push(short_walks(g, &idx, bnd[i], bnd[j], s, all));
        }
    }
    let mut memo: HashMap<Vec<usize>, i64> = HashMap::new();
    let mut raw = BTreeMap::new();
    let base = s + 1;
    let mut f = vec![0usize; pairs.len()];
    for code in 0..base.pow(pairs.len() as u32) {
        let mut c = code;
        for x in f.iter_mut() {
            *x = c % base;
            c /= base;
        }
        // Targets above the longest short path are equivalent.
        let effective: Vec<usize> = f
            .iter()
            .zip(&pairs)
            .map(|(&target, paths)| paths.iter().map(|&(len, _)| len).filter(|&len| len <= target).max().unwrap_or(0))
            .collect();
        let z = *memo.entry(effective).or_insert_with(|| {
            let mut objs = cycles.clone();
            for (&target, paths) in f.iter().zip(&pairs) {
                objs.extend(paths.iter().filter(|&&(len, _)| len <= target).map(|&(_, m)| m));
            }
            let mut best = g.m() as i64;
            min_hitting_set(&objs, 0, 0, &mut best);
            best
        });
        let parts: Vec<String> = f.iter().map(|x| x.to_string()).collect();
        raw.insert(format!("f:{}", parts.join(",")), Some(z));
    }
    let t = t as i64;
    let window = 3 * t * (t - 1).max(0) / 2;
    Signature::normalize(labels, Direction::Min, raw, Some(window), String::new())
}

/// Deletes every vertex lying on no cycle of length at most `s`. Returns the
/// reduced graph (kept vertices in ascending order) and the removed vertices.
pub fn sct_preprocess(g: &Graph, s: u32) -> (Graph, Vec<Vertex>) {
    let on_short_cycle = |v: Vertex| {
        g.neighbors(v).iter().any(|&w| {
            // Shortest v-w path avoiding the edge vw.
            let mut dist = vec![usize::MAX; g.n()];
            dist[v] = 0;
            let mut q = VecDeque::from([v]);
            while let Some(u) = q.pop_front() {
                for &x in g.neighbors(u) {
                    if (u == v && x == w) || dist[x] != usize::MAX {
                        continue;
                    }
                    dist[x] = dist[u] + 1;
                    q.push_back(x);
                }
            }
            dist[w] != usize::MAX && dist[w] < s as usize
        })
    };
    let (kept, removed): (Vec<Vertex>, Vec<Vertex>) = (0..g.n()).partition(|&v| on_short_cycle(v));
    (g.induced(&kept).0, removed)
}
