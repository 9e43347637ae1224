//! Protrusion-replacement kernelization for parameterized graph problems.
//!
//! The engine repeatedly finds a large region of small boundary and small
//! treewidth, cuts out a bounded piece, and swaps it for the smallest graph
//! with the same problem signature, shifting the parameter by the offset
//! difference. Every signature is backed by an exhaustive oracle so results
//! can be checked on desk-sized inputs.

pub mod families;
pub mod graph;
pub mod io;
pub mod treewidth;
pub mod boundaried;
pub mod protrusion;
pub mod problems;
pub mod replace;
pub mod engine;

pub use boundaried::{glue, BoundariedGraph, CanonicalCode, EnumBudget};
pub use engine::{meta_kernelize, sweep, verify_kernel, EngineConfig, Outcome, ReductionLog};
pub use families::FamilySpec;
pub use graph::{Graph, Vertex, VertexSet};
pub use problems::{brute_opt, decide, signature, OracleCaps, Problem, ProblemInstance, Signature};
pub use protrusion::{compute_xr, is_protrusion, partition_protrusion, split_protrusion, Protrusion};
pub use replace::{find_replacement, RepCache, SearchOutcome};
pub use treewidth::{decide_tw_leq, treewidth, TreeDecomposition, TwConfig};
