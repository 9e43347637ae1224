//! Edge-deletion preprocessing for bounded-length cycle transversal.

use protrusion_kernel::families::{generate, FamilySpec};
use protrusion_kernel::problems::{brute_opt, sct_preprocess, OracleCaps, Problem};

fn main() {
    let caps = OracleCaps::default();
    let g = generate(&FamilySpec::Grid { rows: 3, cols: 4 }).expect("valid family");
    for s in [3, 4] {
        let (h, removed) = sct_preprocess(&g, s);
        let problem = Problem::CycleTransversal { s };
        println!(
            "s={s}: n {} -> {}, m {} -> {}, removed {removed:?}, opt {} -> {}",
            g.n(),
            h.n(),
            g.m(),
            h.m(),
            brute_opt(problem, &g, &caps).unwrap(),
            brute_opt(problem, &h, &caps).unwrap()
        );
    }
}
