//! Searching a smaller representative and gluing it in.

use protrusion_kernel::boundaried::{split, EnumBudget};
use protrusion_kernel::families::{generate, FamilySpec};
use protrusion_kernel::graph::VertexSet;
use protrusion_kernel::problems::{decide, OracleCaps, Problem, ProblemInstance};
use protrusion_kernel::replace::{apply_replacement, find_replacement, RepCache, SearchOutcome};

fn main() {
    let caps = OracleCaps::default();
    let cache = RepCache::in_memory();
    let problem = Problem::VertexCover;
    // A pendant path of six vertices hanging off the hub of a star of paths.
    let g = generate(&FamilySpec::StarOfPaths { arms: 2, length: 6 }).expect("valid family");
    let x: VertexSet = (0..=6).collect();
    let inner = split(&g, &x).inner;
    println!("protrusion: {} vertices, boundary {:?}", inner.n(), inner.boundary());

    let budget = EnumBudget { max_vertices: 5, max_yield: 200_000 };
    match find_replacement(problem, &inner, budget, &caps, &cache).expect("within caps") {
        SearchOutcome::Found(rep) => {
            println!("representative: {} vertices, c = {}", rep.graph.n(), rep.c);
            let inst = ProblemInstance::new(g, 5, problem);
            let applied = apply_replacement(&inst, &x, &rep.graph, rep.c).expect("compatible boundary");
            let reduced = &applied.instance;
            println!("instance: n {} -> {}, k {} -> {}", inst.graph.n(), reduced.graph.n(), inst.k, reduced.k);
            println!("answers: {} -> {}", decide(&inst, &caps).unwrap(), decide(reduced, &caps).unwrap());
        }
        other => println!("no replacement: {other:?}"),
    }
}
