//! End-to-end kernelization with a step log.

use protrusion_kernel::engine::{meta_kernelize, verify_kernel, EngineConfig};
use protrusion_kernel::families::{generate, FamilySpec};
use protrusion_kernel::problems::{OracleCaps, Problem, ProblemInstance};
use protrusion_kernel::replace::RepCache;

fn main() {
    let cfg = EngineConfig::for_t(1);
    let cache = RepCache::in_memory();
    let g = generate(&FamilySpec::StarOfPaths { arms: 3, length: 5 }).expect("valid family");
    let inst = ProblemInstance::new(g, 8, Problem::VertexCover);
    let (kernel, log) = meta_kernelize(&inst, &cfg, &cache);
    for s in &log.steps {
        println!(
            "{:?}: n {} -> {}, k {} -> {} (replaced {} by {} vertices)",
            s.kind,
            s.n_before,
            s.n_after,
            s.k_before,
            s.k_after,
            s.replaced.len(),
            s.replacement_vertices
        );
    }
    println!("outcome {:?}: n={} m={} k={}", log.outcome, kernel.graph.n(), kernel.graph.m(), kernel.k);
    println!("{:?}", verify_kernel(&inst, &kernel, &OracleCaps::default()));
}
