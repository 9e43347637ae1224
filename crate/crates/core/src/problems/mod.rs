//! Parameterized problems: brute-force oracles, decision semantics under the
//! signed-parameter convention, and per-problem boundary signatures.

mod cycle_packing;
mod ds;
pub mod oracle;
mod scattered;
mod sct;
mod vc;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boundaried::{BoundariedGraph, Label};
use crate::graph::Graph;

pub use cycle_packing::projected_matching_table;
pub use sct::sct_preprocess;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Min,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolutionDomain {
    Vertices,
    Edges,
}

/// Problem id plus its integer parameter, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Problem {
    VertexCover,
    DominatingSet,
    IndependentSet,
    /// Vertices pairwise at distance greater than `r`.
    Scattered { r: u32 },
    /// Vertex-disjoint cycles.
    CyclePacking,
    /// Edge deletion leaving no cycle of length at most `s`.
    CycleTransversal { s: u32 },
}

impl Problem {
    pub const ALL_IDS: [&'static str; 6] = ["vc", "ds", "is", "scattered", "cyclepacking", "sct"];

    pub fn id(&self) -> &'static str {
        match self {
            Problem::VertexCover => "vc",
            Problem::DominatingSet => "ds",
            Problem::IndependentSet => "is",
            Problem::Scattered { .. } => "scattered",
            Problem::CyclePacking => "cyclepacking",
            Problem::CycleTransversal { .. } => "sct",
        }
    }

    /// Builds a problem from its CLI id and optional `r` / `s`.
    pub fn from_id(id: &str, r: Option<u32>, s: Option<u32>) -> Result<Problem, ProblemError> {
        let p = match id {
            "vc" => Problem::VertexCover,
            "ds" => Problem::DominatingSet,
            "is" => Problem::IndependentSet,
            "scattered" => Problem::Scattered { r: r.ok_or(ProblemError::MissingParam("r"))? },
            "cyclepacking" => Problem::CyclePacking,
            "sct" => Problem::CycleTransversal { s: s.ok_or(ProblemError::MissingParam("s"))? },
            other => return Err(ProblemError::UnknownId(other.into())),
        };
        match p {
            Problem::Scattered { r: 0 } => Err(ProblemError::BadParam("r must be at least 1")),
            Problem::CycleTransversal { s } if s < 3 => Err(ProblemError::BadParam("s must be at least 3")),
            _ => Ok(p),
        }
    }

    pub fn direction(&self) -> Direction {
        match self {
            Problem::VertexCover | Problem::DominatingSet | Problem::CycleTransversal { .. } => Direction::Min,
            _ => Direction::Max,
        }
    }

    pub fn domain(&self) -> SolutionDomain {
        match self {
            Problem::CycleTransversal { .. } => SolutionDomain::Edges,
            _ => SolutionDomain::Vertices,
        }
    }

    /// Answer for an arbitrary graph at this parameter, when fixed by convention.
    pub fn answer_for_negative(&self) -> bool {
        self.direction() == Direction::Max
    }

    /// Canonical constant-size (YES, NO) instances.
    pub fn trivial_instances(&self) -> (ProblemInstance, ProblemInstance) {
        let yes_k = if *self == Problem::DominatingSet { 1 } else { 0 };
        let yes = ProblemInstance::new(Graph::new(1), yes_k, *self);
        let no = match self {
            Problem::VertexCover | Problem::DominatingSet => ProblemInstance::new(Graph::complete(2), 0, *self),
            Problem::CycleTransversal { .. } => ProblemInstance::new(Graph::complete(3), 0, *self),
            Problem::CyclePacking => ProblemInstance::new(Graph::new(1), 1, *self),
            Problem::IndependentSet | Problem::Scattered { .. } => ProblemInstance::new(Graph::new(1), 2, *self),
        };
        (yes, no)
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Problem::Scattered { r } => write!(f, "scattered:r={r}"),
            Problem::CycleTransversal { s } => write!(f, "sct:s={s}"),
            p => write!(f, "{}", p.id()),
        }
    }
}

impl FromStr for Problem {
    type Err = ProblemError;

    /// Parses the `Display` form, e.g. `vc` or `scattered:r=2`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let (id, param) = match text.split_once(':') {
            Some((id, p)) => (id, Some(p)),
            None => (text, None),
        };
        let value = |name: &'static str| -> Result<Option<u32>, ProblemError> {
            match param {
                None => Ok(None),
                Some(p) => {
                    let v = p
                        .strip_prefix(name)
                        .and_then(|rest| rest.strip_prefix('='))
                        .ok_or(ProblemError::BadParam("expected r=N or s=N"))?;
                    v.parse().map(Some).map_err(|_| ProblemError::BadParam("parameter must be an integer"))
                }
            }
        };
        match id {
            "scattered" => Problem::from_id(id, value("r")?, None),
            "sct" => Problem::from_id(id, None, value("s")?),
            _ => Problem::from_id(id, None, None),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProblemError {
    #[error("unknown problem id {0:?} (expected one of vc, ds, is, scattered, cyclepacking, sct)")]
    UnknownId(String),
    #[error("missing parameter --{0}")]
    MissingParam(&'static str),
    #[error("{0}")]
    BadParam(&'static str),
}

/// Size limits for exhaustive computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCaps {
    pub max_vertices: usize,
    pub max_edges: usize,
    /// Largest boundary state space a signature may tabulate.
    pub max_states: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps { max_vertices: 16, max_edges: 20, max_states: 1 << 14 }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{what} = {size} exceeds the exhaustive-search cap {cap}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },
}

impl OracleCaps {
    fn check(&self, problem: Problem, g: &Graph) -> Result<(), OracleError> {
        if g.n() > self.max_vertices.min(64) {
            return Err(OracleError::CapExceeded { what: "vertices", size: g.n(), cap: self.max_vertices });
        }
        let edge_capped = matches!(problem, Problem::CycleTransversal { .. } | Problem::CyclePacking);
        if edge_capped && g.m() > self.max_edges.min(64) {
            return Err(OracleError::CapExceeded { what: "edges", size: g.m(), cap: self.max_edges });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemInstance {
    pub graph: Graph,
    pub k: i64,
    pub problem: Problem,
}

impl ProblemInstance {
    pub fn new(graph: Graph, k: i64, problem: Problem) -> Self {
        ProblemInstance { graph, k, problem }
    }
}

/// Exact optimum by exhaustive search.
pub fn brute_opt(problem: Problem, g: &Graph, caps: &OracleCaps) -> Result<i64, OracleError> {
    caps.check(problem, g)?;
    Ok(match problem {
        Problem::VertexCover => oracle::min_vertex_cover(g),
        Problem::DominatingSet => oracle::min_dominating_set(g, full_mask(g.n())),
        Problem::IndependentSet => oracle::max_scattered(g, 1),
        Problem::Scattered { r } => oracle::max_scattered(g, r),
        Problem::CyclePacking => oracle::max_cycle_packing(g),
        Problem::CycleTransversal { s } => oracle::min_cycle_transversal(g, s),
    })
}

/// Optimum of a boundaried graph with every boundary constraint at its weakest
/// (boundary vertices need not be dominated for domination problems).
pub fn relaxed_opt(problem: Problem, b: &BoundariedGraph, caps: &OracleCaps) -> Result<i64, OracleError> {
    match problem {
        Problem::DominatingSet => {
            caps.check(problem, b.graph())?;
            let mut need = full_mask(b.n());
            for &v in b.boundary() {
                need &= !(1u64 << v);
            }
            Ok(oracle::min_dominating_set(b.graph(), need))
        }
        _ => brute_opt(problem, b.graph(), caps),
    }
}

/// YES/NO; negative parameters are answered by the direction convention.
pub fn decide(inst: &ProblemInstance, caps: &OracleCaps) -> Result<bool, OracleError> {
    if inst.k < 0 {
        return Ok(inst.problem.answer_for_negative());
    }
    let opt = brute_opt(inst.problem, &inst.graph, caps)?;
    Ok(match inst.problem.direction() {
        Direction::Min => opt <= inst.k,
        Direction::Max => opt >= inst.k,
    })
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A table entry: finite, or infeasible / outside the normalized window
/// (`+∞` for minimization, `-∞` for maximization).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Value {
    Finite(i64),
    Infinite,
}

impl Value {
    pub fn finite(self) -> Option<i64> {
        match self {
            Value::Finite(v) => Some(v),
            Value::Infinite => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Finite(v) => write!(f, "{v}"),
            Value::Infinite => write!(f, "inf"),
        }
    }
}

/// Offset plus normalized boundary table. Equal tables (for the same problem,
/// labels, boundary subgraph and `extra`) license replacement with shift
/// `offset(J) - offset(B)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub labels: Vec<Label>,
    pub offset: Option<i64>,
    pub table: BTreeMap<String, Value>,
    /// Problem-specific data beyond the table (boundary distance matrix for scattered sets).
    pub extra: String,
}

impl Signature {
    /// Deterministic text form of everything except the offset.
    pub fn table_string(&self) -> String {
        let mut out = String::new();
        if !self.extra.is_empty() {
            out.push_str(&self.extra);
            out.push(';');
        }
        for (i, (k, v)) in self.table.iter().enumerate() {
            if i > 0 {
                out.push(';');
            }
            out.push_str(k);
            out.push('=');
            out.push_str(&v.to_string());
        }
        out
    }

    pub fn get(&self, key: &str) -> Option<Value> {
        self.table.get(key).copied()
    }

    /// Builds the normalized table from raw optima.
    fn normalize(labels: Vec<Label>, direction: Direction, raw: BTreeMap<String, Option<i64>>, window: Option<i64>, extra: String) -> Signature {
        let offset = match direction {
            Direction::Min => raw.values().flatten().copied().min(),
            Direction::Max => raw.values().flatten().copied().max(),
        };
        Self::normalize_with_offset(labels, direction, raw, offset, window, extra)
    }

    fn normalize_with_offset(
        labels: Vec<Label>,
        direction: Direction,
        raw: BTreeMap<String, Option<i64>>,
        offset: Option<i64>,
        window: Option<i64>,
        extra: String,
    ) -> Signature {
        let table = raw
            .into_iter()
            .map(|(k, z)| {
                let v = match (z, offset) {
                    (Some(z), Some(x)) => {
                        let d = z - x;
                        let inside = match (direction, window) {
                            (_, None) => true,
                            (Direction::Min, Some(w)) => d <= w,
                            (Direction::Max, Some(w)) => d >= -w,
                        };
                        if inside {
                            Value::Finite(d)
                        } else {
                            Value::Infinite
                        }
                    }
                    _ => Value::Infinite,
                };
                (k, v)
            })
            .collect();
        Signature { labels, offset, table, extra }
    }

    /// Every finite entry lies in `[lo, hi]`.
    pub fn values_within(&self, lo: i64, hi: i64) -> bool {
        self.table.values().filter_map(|v| v.finite()).all(|v| lo <= v && v <= hi)
    }
}

/// Number of boundary states tabulated for `t` labels (saturating).
pub fn state_count(problem: Problem, t: usize) -> usize {
    let t32 = t as u32;
    match problem {
        Problem::VertexCover => 2usize.saturating_pow(t32),
        Problem::DominatingSet => 3usize.saturating_pow(t32),
        Problem::IndependentSet => 3usize.saturating_pow(t32),
        Problem::Scattered { r } => (r as usize + 2).saturating_pow(t32),
        // Pairs (U, R): each vertex is unmatched-out, unmatched-in, or matched.
        Problem::CyclePacking => 3usize.saturating_pow(t32),
        Problem::CycleTransversal { s } => (s as usize + 1).saturating_pow((t * t.saturating_sub(1) / 2) as u32),
    }
}

/// Boundary signature of `b` for `problem`.
pub fn signature(problem: Problem, b: &BoundariedGraph, caps: &OracleCaps) -> Result<Signature, OracleError> {
    caps.check(problem, b.graph())?;
    let states = state_count(problem, b.boundary_len());
    if states > caps.max_states {
        return Err(OracleError::CapExceeded { what: "signature states", size: states, cap: caps.max_states });
    }
    Ok(match problem {
        Problem::VertexCover => vc::signature(b),
        Problem::DominatingSet => ds::signature(b),
        Problem::IndependentSet => scattered::signature(b, 1),
        Problem::Scattered { r } => scattered::signature(b, r),
        Problem::CyclePacking => cycle_packing::signature(b),
        Problem::CycleTransversal { s } => sct::signature(b, s),
    })
}

/// Normalized range of finite table entries for a boundary of `t` labels.
pub fn normalized_range(problem: Problem, t: usize) -> Option<(i64, i64)> {
    let t = t as i64;
    match problem {
        Problem::VertexCover => Some((0, t)),
        Problem::DominatingSet => Some((0, 2 * t)),
        Problem::IndependentSet => Some((-2 * t, 0)),
        Problem::Scattered { r } if r <= 2 => Some((-2 * t, 0)),
        Problem::Scattered { .. } => None,
        Problem::CyclePacking => Some((-t, 0)),
        Problem::CycleTransversal { .. } => Some((0, 3 * t * (t - 1).max(0) / 2)),
    }
}

fn label_list(labels: impl IntoIterator<Item = Label>) -> String {
    let v: Vec<String> = labels.into_iter().map(|l| l.to_string()).collect();
    format!("{{{}}}", v.join(","))
}
