//! Exact treewidth, a witness decomposition and its nice form.

use protrusion_kernel::families::{generate, FamilySpec};
use protrusion_kernel::treewidth::{decide_tw_leq, make_nice, treewidth, TwConfig};

fn main() {
    let cfg = TwConfig::default();
    let g = generate(&FamilySpec::Grid { rows: 3, cols: 5 }).expect("valid family");
    let tw = treewidth(&g, &cfg).expect("within the exact cap");
    println!("grid 3x5: treewidth {tw}");

    let td = decide_tw_leq(&g, tw, &cfg).expect("within cap").expect("width tw exists");
    println!("witness: {} bags, width {}, violations {:?}", td.len(), td.width(), td.validate(&g));
    assert!(decide_tw_leq(&g, tw - 1, &cfg).expect("within cap").is_none());

    let nice = make_nice(&g, &td, 0).expect("valid decomposition");
    println!("nice form: {} nodes, width {}", nice.td.len(), nice.width());
}
