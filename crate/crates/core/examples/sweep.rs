//! Kernel sizes over a family template, written as CSV.

use protrusion_kernel::engine::{sweep, write_sweep_csv, EngineConfig};
use protrusion_kernel::problems::Problem;
use protrusion_kernel::replace::RepCache;

fn main() {
    let cfg = EngineConfig::for_t(1);
    let cache = RepCache::in_memory();
    let rows = sweep(Problem::DominatingSet, "star-of-paths:k,20", &[2, 4, 6, 8], &cfg, &cache).expect("valid template");
    write_sweep_csv(&rows, std::io::stdout()).expect("stdout is writable");
}
