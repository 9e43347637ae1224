//! Graph families from text specs, printed as edge lists.

use protrusion_kernel::families::{generate, FamilySpec};
use protrusion_kernel::io::{parse_edge_list, write_edge_list};

fn main() {
    for text in ["grid:2,3", "star-of-paths:3,2", "grid-with-pendant-paths:2,2,2", "random-sparse:8,30,7", "union(cycle:4;path:3)"] {
        let spec: FamilySpec = text.parse().expect("valid spec");
        let g = generate(&spec).expect("valid family");
        let listing = write_edge_list(&g);
        assert_eq!(parse_edge_list(&listing).unwrap(), g);
        println!("{spec}: n={} m={}", g.n(), g.m());
    }
    println!("{}", write_edge_list(&generate(&"grid:2,2".parse().unwrap()).unwrap()));
}
