//! Vertex cover: entry `T` is the least cover meeting the boundary exactly in `T`.

use std::collections::BTreeMap;

use super::{label_list, Direction, Signature};
use crate::boundaried::BoundariedGraph;

pub(super) fn signature(b: &BoundariedGraph) -> Signature {
    let g = b.graph();
    let n = g.n();
    let adj = g.adjacency_masks();
    let bnd = b.ordered_boundary();
    let t = bnd.len();
    let mut best: Vec<Option<i64>> = vec![None; 1 << t];
    for mask in 0u64..(1u64 << n) {
        if !(0..n).all(|v| mask >> v & 1 == 1 || adj[v] & !mask == 0) {
            continue;
        }
        let state = bnd.iter().enumerate().fold(0usize, |acc, (i, &v)| acc | ((mask >> v & 1) as usize) << i);
        let size = mask.count_ones() as i64;
        if best[state].is_none_or(|cur| size < cur) {
            best[state] = Some(size);
        }
    }
    let labels = b.label_set();
    let mut raw = BTreeMap::new();
    for (state, z) in best.into_iter().enumerate() {
        let chosen = (0..t).filter(|i| state >> i & 1 == 1).map(|i| labels[i]);
        raw.insert(label_list(chosen), z);
    }
    Signature::normalize(labels, Direction::Min, raw, Some(t as i64), String::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::problems::Value;

    #[test]
    fn single_edge() {
        let b = BoundariedGraph::with_sequential_labels(Graph::complete(2), vec![0]).unwrap();
        let sig = signature(&b);
        assert_eq!(sig.offset, Some(1));
        assert_eq!(sig.get("{}"), Some(Value::Finite(0)));
        assert_eq!(sig.get("{1}"), Some(Value::Finite(0)));
    }

    #[test]
    fn path_with_both_ends_on_the_boundary() {
        let b = BoundariedGraph::with_sequential_labels(Graph::path(3), vec![0, 2]).unwrap();
        let sig = signature(&b);
        assert_eq!(sig.offset, Some(1));
        assert_eq!(sig.get("{}"), Some(Value::Finite(0)));
        assert_eq!(sig.get("{1}"), Some(Value::Finite(1)));
        assert_eq!(sig.get("{2}"), Some(Value::Finite(1)));
        assert_eq!(sig.get("{1,2}"), Some(Value::Finite(1)));
    }

    #[test]
    fn boundary_edge_forbids_empty_state() {
        let b = BoundariedGraph::with_sequential_labels(Graph::complete(2), vec![0, 1]).unwrap();
        assert_eq!(signature(&b).get("{}"), Some(Value::Infinite));
    }
}
