//! r-scattered sets. Besides the distance-constraint table over σ, the key
//! carries, for every realizable profile, the best size. A profile is the
//! multiset (multiplicity capped at 2) of boundary distance vectors, capped at
//! `r`, of solution vertices lying within distance `r - 1` of the boundary.
//! Those are the only vertices whose conflicts can cross the boundary.

use std::collections::{BTreeMap, HashMap, VecDeque};

use super::{Direction, Signature};
use crate::boundaried::BoundariedGraph;
use crate::graph::Graph;

const FAR: u32 = u32::MAX;

fn all_distances(g: &Graph) -> Vec<Vec<u32>> {
    (0..g.n())
        .map(|s| {
            let mut d = vec![FAR; g.n()];
            d[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &w in g.neighbors(u) {
                    if d[w] == FAR {
                        d[w] = d[u] + 1;
                        q.push_back(w);
                    }
                }
            }
            d
        })
        .collect()
}

fn sigma_key(sigma: &[u32], r: u32) -> String {
    let parts: Vec<String> = sigma.iter().map(|&s| if s > r { "inf".into() } else { s.to_string() }).collect();
    format!("s:{}", parts.join(","))
}

fn vector_text(v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join("."))
}

fn profile_key(mut vectors: Vec<Vec<u32>>) -> String {
    vectors.sort();
    let mut out = String::from("p:");
    let mut i = 0;
    while i < vectors.len() {
        let mut j = i;
        while j < vectors.len() && vectors[j] == vectors[i] {
            j += 1;
        }
        out.push_str(&vector_text(&vectors[i]));
        if j - i >= 2 {
            out.push_str("x2");
        }
        i = j;
    }
    out
}

struct Collector<'a> {
    dist: &'a [Vec<u32>],
    bnd: &'a [usize],
    r: u32,
    balls: Vec<u64>,
    by_sigma: HashMap<Vec<u32>, i64>,
    by_profile: HashMap<String, i64>,
}

impl Collector<'_> {
    fn record(&mut self, chosen: &[usize]) {
        let size = chosen.len() as i64;
        let cap = self.r + 1;
        let reach: Vec<u32> =
            self.bnd.iter().map(|&b| chosen.iter().map(|&v| self.dist[b][v]).min().unwrap_or(FAR).min(cap)).collect();
        let near: Vec<Vec<u32>> = chosen
            .iter()
            .map(|&v| self.bnd.iter().map(|&b| self.dist[v][b].min(self.r)).collect::<Vec<u32>>())
            .filter(|vec| vec.iter().any(|&d| d < self.r))
            .collect();
        let e = self.by_sigma.entry(reach).or_insert(size);
        *e = (*e).max(size);
        let e = self.by_profile.entry(profile_key(near)).or_insert(size);
        *e = (*e).max(size);
    }

    fn walk(&mut self, cand: u64, chosen: &mut Vec<usize>) {
        if cand == 0 {
            self.record(chosen);
            return;
        }
        let v = cand.trailing_zeros() as usize;
        let rest = cand & !(1u64 << v);
        self.walk(rest, chosen);
        chosen.push(v);
        self.walk(rest & !self.balls[v], chosen);
        chosen.pop();
    }
}

pub(super) fn signature(b: &BoundariedGraph, r: u32) -> Signature {
    let g = b.graph();
    let dist = all_distances(g);
    let bnd = b.ordered_boundary();
    let t = bnd.len();
    let mut col = Collector {
        dist: &dist,
        bnd: &bnd,
        r,
        balls: super::oracle::ball_masks(g, r),
        by_sigma: HashMap::new(),
        by_profile: HashMap::new(),
    };
    col.walk(super::full_mask(g.n()), &mut Vec::new());

    let mut raw: BTreeMap<String, Option<i64>> = BTreeMap::new();
    let mut sigma = vec![0u32; t];
    let base = r + 2;
    for code in 0..base.pow(t as u32) {
        let mut c = code;
        for s in sigma.iter_mut() {
            *s = c % base;
            c /= base;
        }
        let z = col
            .by_sigma
            .iter()
            .filter(|(reach, _)| reach.iter().zip(&sigma).all(|(d, s)| d >= s))
            .map(|(_, &size)| size)
            .max();
        raw.insert(sigma_key(&sigma, r), z);
    }
    let offset = raw.values().flatten().copied().max();
    for (k, z) in col.by_profile {
        raw.insert(k, Some(z));
    }
    let mut ell = Vec::new();
    for i in 0..t {
        for j in i + 1..t {
            ell.push(dist[bnd[i]][bnd[j]].min(r + 1).to_string());
        }
    }
    let extra = format!("l:{}", ell.join(","));
    let window = (r <= 2).then_some(2 * t as i64);
    Signature::normalize_with_offset(b.label_set(), Direction::Max, raw, offset, window, extra)
}
