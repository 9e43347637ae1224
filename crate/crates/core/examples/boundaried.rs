//! Boundaried graphs: gluing, canonical codes and enumeration.

use protrusion_kernel::boundaried::{canonical_code, enumerate_boundaried, glue, BoundariedGraph};
use protrusion_kernel::graph::Graph;

fn main() {
    // A path a-b-c with its ends labelled 1 and 2, glued to a single edge 1-2.
    let path = BoundariedGraph::with_sequential_labels(Graph::path(3), vec![0, 2]).expect("valid boundary");
    let edge = BoundariedGraph::with_sequential_labels(Graph::path(2), vec![0, 1]).expect("valid boundary");
    let (g, heir_a, heir_b) = glue(&path, &edge);
    println!("glued: n={} m={} heirs {heir_a:?} {heir_b:?}", g.n(), g.m());

    // Relabelling the interior does not change the canonical code.
    let moved = BoundariedGraph::with_sequential_labels(Graph::from_edges(3, [(1, 0), (0, 2)]).unwrap(), vec![1, 2]).unwrap();
    println!("codes equal: {}", canonical_code(&path).unwrap() == canonical_code(&moved).unwrap());

    for labels in 0..=2 {
        let count = enumerate_boundaried(5, labels, None, usize::MAX).unwrap().count();
        println!("{labels}-boundaried graphs on at most 5 vertices: {count}");
    }
}
