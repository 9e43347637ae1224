//! Finding, splitting and partitioning protrusions.

use protrusion_kernel::families::{generate, FamilySpec};
use protrusion_kernel::graph::VertexSet;
use protrusion_kernel::protrusion::{compute_xr, partition_protrusion, split_protrusion};
use protrusion_kernel::treewidth::TwConfig;

fn main() {
    let cfg = TwConfig::default();
    // Hub 0 with three pendant paths of 12 vertices.
    let g = generate(&FamilySpec::StarOfPaths { arms: 3, length: 12 }).expect("valid family");
    let r: VertexSet = [0].into();
    let xr = compute_xr(&g, &r, &cfg);
    let p = xr.protrusion;
    println!("X_R for R={{0}}: {} vertices, boundary {:?}, width {}", p.len(), p.boundary, p.width());

    let y = split_protrusion(&g, &p, 5).expect("large enough to split");
    println!("split with c=5: |Y|={} boundary {:?} width {}", y.len(), y.boundary, y.width());

    let z: VertexSet = [3, 17, 30].into();
    let part = partition_protrusion(&g, &p, &z, &cfg).expect("marks inside X");
    for q in &part.parts {
        println!("part: {} vertices, boundary {:?}", q.len(), q.boundary);
    }
    println!("oversized: {}", part.oversized);
}
