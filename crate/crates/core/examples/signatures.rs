//! Per-problem signatures of a small boundaried graph.

use protrusion_kernel::boundaried::BoundariedGraph;
use protrusion_kernel::graph::Graph;
use protrusion_kernel::problems::{signature, OracleCaps, Problem};

fn main() {
    let caps = OracleCaps::default();
    // A 4-cycle with one chord, two adjacent boundary vertices.
    let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
    let b = BoundariedGraph::with_sequential_labels(g, vec![0, 1]).unwrap();
    for problem in [
        Problem::VertexCover,
        Problem::DominatingSet,
        Problem::IndependentSet,
        Problem::Scattered { r: 2 },
        Problem::CyclePacking,
        Problem::CycleTransversal { s: 3 },
    ] {
        let sig = signature(problem, &b, &caps).expect("within caps");
        println!("{problem}: offset {:?}\n  {}", sig.offset, sig.table_string());
    }
}
