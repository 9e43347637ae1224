//! Dominating set: each boundary vertex is `I` (in the solution), `D` (must be
//! dominated from this side) or `F` (unconstrained).

use std::collections::BTreeMap;

use super::{Direction, Signature};
use crate::boundaried::BoundariedGraph;

const STATES: [char; 3] = ['I', 'D', 'F'];

/// Key for a state vector, one letter per label in label order.
pub(super) fn key(states: &[char]) -> String {
    states.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

pub(super) fn signature(b: &BoundariedGraph) -> Signature {
    let g = b.graph();
    let n = g.n();
    let closed: Vec<u64> = g.adjacency_masks().iter().enumerate().map(|(v, m)| m | (1u64 << v)).collect();
    let bnd = b.ordered_boundary();
    let t = bnd.len();
    let bmask: u64 = bnd.iter().fold(0, |acc, &v| acc | 1u64 << v);
    let interior = super::full_mask(n) & !bmask;
    // Best size per (boundary vertices chosen, boundary vertices dominated).
    let mut best: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for mask in 0u64..(1u64 << n) {
        let mut dom = 0u64;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            dom |= closed[v];
        }
        if interior & !dom != 0 {
            continue;
        }
        let trace = |m: u64| bnd.iter().enumerate().fold(0usize, |acc, (i, &v)| acc | ((m >> v & 1) as usize) << i);
        let entry = best.entry((trace(mask), trace(dom))).or_insert(i64::MAX);
        *entry = (*entry).min(mask.count_ones() as i64);
    }
    let mut raw = BTreeMap::new();
    let mut states = vec!['F'; t];
    for code in 0..3usize.pow(t as u32) {
        let mut c = code;
        let (mut inside, mut need) = (0usize, 0usize);
        for (i, s) in states.iter_mut().enumerate() {
            *s = STATES[c % 3];
            c /= 3;
            match *s {
                'I' => inside |= 1 << i,
                'D' => need |= 1 << i,
                _ => {}
            }
        }
        let z = best
            .iter()
            .filter(|&(&(chosen, dominated), _)| chosen == inside && dominated & need == need)
            .map(|(_, &size)| size)
            .min();
        raw.insert(key(&states), z);
    }
    Signature::normalize(b.label_set(), Direction::Min, raw, Some(2 * t as i64), String::new())
}
