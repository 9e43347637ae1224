//! Cycle packing. A state is a pair `(U, R)`: `R` is a matching on the
//! boundary realized by vertex-disjoint paths, and `U` (disjoint from `V(R)`)
//! is the set of other boundary vertices the packing may touch. The value is
//! the most cycles that fit alongside the paths.

use std::collections::{BTreeMap, HashMap};

use super::{label_list, Direction, Signature, Value};
use crate::boundaried::{BoundariedGraph, Label};
use crate::graph::Graph;

/// All matchings on positions `0..t`, as sorted pair lists.
fn matchings(t: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(free: &[usize], acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        out.push(acc.clone());
        for (i, &a) in free.iter().enumerate() {
            for (j, &b) in free.iter().enumerate().skip(i + 1) {
                if acc.last().is_some_and(|&(p, _)| p >= a) {
                    continue;
                }
                let rest: Vec<usize> = free.iter().enumerate().filter(|&(x, _)| x != i && x != j).map(|(_, &v)| v).collect();
                acc.push((a, b));
                go(&rest, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&(0..t).collect::<Vec<_>>(), &mut Vec::new(), &mut out);
    out
}

fn state_key(labels: &[Label], u: impl IntoIterator<Item = usize>, r: &[(usize, usize)]) -> String {
    let pairs: Vec<String> = r.iter().map(|&(a, b)| format!("{}-{}", labels[a], labels[b])).collect();
    format!("U{};R{{{}}}", label_list(u.into_iter().map(|i| labels[i])), pairs.join(","))
}

struct Packer<'a> {
    by_vertex: Vec<Vec<u64>>,
    memo: HashMap<u64, i64>,
    g: &'a Graph,
}

impl Packer<'_> {
    fn pack(&mut self, mask: u64) -> i64 {
        if mask.count_ones() < 3 {
            return 0;
        }
        if let Some(&v) = self.memo.get(&mask) {
            return v;
        }
        let v = mask.trailing_zeros() as usize;
        let mut best = self.pack(mask & !(1u64 << v));
        for i in 0..self.by_vertex[v].len() {
            let c = self.by_vertex[v][i];
            if c & !mask == 0 {
                best = best.max(1 + self.pack(mask & !c));
            }
        }
        self.memo.insert(mask, best);
        best
    }

    /// Vertex masks of simple `a`-`b` paths whose inner vertices lie in `inner`.
    fn paths(&self, a: usize, b: usize, inner: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut stack: Vec<(usize, usize)> = vec![(a, 0)];
        let mut on = 1u64 << a;
        while let Some(&mut (u, ref mut i)) = stack.last_mut() {
            let nbrs = self.g.neighbors(u);
            if *i >= nbrs.len() {
                stack.pop();
                on &= !(1u64 << u);
                continue;
            }
            let w = nbrs[*i];
            *i += 1;
            if w == b {
                out.push(on | 1u64 << b);
            } else if inner >> w & 1 == 1 && on >> w & 1 == 0 {
                on |= 1u64 << w;
                stack.push((w, 0));
            }
        }
        out
    }

    /// Best packing over disjoint path systems for `pairs`, cycles confined to `room`.
    fn best_with_paths(&mut self, pairs: &[(usize, usize)], room: u64) -> Option<i64> {
        let Some((&(a, b), rest)) = pairs.split_first() else {
            return Some(self.pack(room));
        };
        let mut best = None;
        for p in self.paths(a, b, room) {
            if let Some(v) = self.best_with_paths(rest, room & !p) {
                best = Some(best.map_or(v, |x: i64| x.max(v)));
            }
        }
        best
    }
}

pub(super) fn signature(b: &BoundariedGraph) -> Signature {
    let g = b.graph();
    let n = g.n();
    let bnd = b.ordered_boundary();
    let t = bnd.len();
    let labels = b.label_set();
    let bmask: u64 = bnd.iter().fold(0, |acc, &v| acc | 1u64 << v);
    let interior = super::full_mask(n) & !bmask;
    let mut packer = Packer {
        by_vertex: (0..n).map(|v| super::oracle::cycles_through(g, v, super::full_mask(n))).collect(),
        memo: HashMap::new(),
        g,
    };
    let mut raw = BTreeMap::new();
    for r in matchings(t) {
        let matched: u64 = r.iter().fold(0, |acc, &(x, y)| acc | 1 << x | 1 << y);
        let open: Vec<usize> = (0..t).filter(|i| matched >> i & 1 == 0).collect();
        for sub in 0u64..(1u64 << open.len()) {
            let u: Vec<usize> = open.iter().enumerate().filter(|&(j, _)| sub >> j & 1 == 1).map(|(_, &i)| i).collect();
            let room = u.iter().fold(interior, |acc, &i| acc | 1u64 << bnd[i]);
            let pairs: Vec<(usize, usize)> = r.iter().map(|&(x, y)| (bnd[x], bnd[y])).collect();
            raw.insert(state_key(&labels, u.iter().copied(), &r), packer.best_with_paths(&pairs, room));
        }
    }
    let offset = Some(packer.pack(super::full_mask(n)));
    Signature::normalize_with_offset(labels, Direction::Max, raw, offset, Some(t as i64), String::new())
}

/// Entry per matching `R` with every other boundary vertex usable; keys list the pairs.
pub fn projected_matching_table(sig: &Signature) -> BTreeMap<String, Value> {
    let t = sig.labels.len();
    matchings(t)
        .into_iter()
        .map(|r| {
            let matched: Vec<bool> = (0..t).map(|i| r.iter().any(|&(x, y)| x == i || y == i)).collect();
            let key = state_key(&sig.labels, (0..t).filter(|&i| !matched[i]), &r);
            let pairs: Vec<String> = r.iter().map(|&(a, b)| format!("{}-{}", sig.labels[a], sig.labels[b])).collect();
            (format!("{{{}}}", pairs.join(",")), sig.get(&key).unwrap_or(Value::Infinite))
        })
        .collect()
}
