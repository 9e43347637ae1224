//! Deterministic benchmark families.
//!
//! Specs have a compact text form used by the CLI and the sweep harness:
//! `grid:3,4`, `path:5`, `cycle:6`, `star-of-paths:4,50`,
//! `grid-with-pendant-paths:2,6,20`, `random-sparse:12,25,7`
//! (n, edge percent, seed) and `union(path:3;cycle:4)`.
//! A template may use the bare token `k` in place of any number.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("unknown family kind {0:?}")]
    UnknownKind(String),
    #[error("{kind}: size parameters must be positive")]
    NonPositive { kind: &'static str },
    #[error("{kind}: expected {expected} parameters, got {got}")]
    Arity { kind: &'static str, expected: usize, got: usize },
    #[error("malformed family spec {0:?}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FamilySpec {
    Grid { rows: usize, cols: usize },
    Path { n: usize },
    Cycle { n: usize },
    /// One hub with `arms` pendant paths of `length` vertices each.
    StarOfPaths { arms: usize, length: usize },
    /// A grid with a pendant path of `length` vertices hanging off every top-row vertex.
    GridWithPendantPaths { rows: usize, cols: usize, length: usize },
    DisjointUnion { parts: Vec<FamilySpec> },
    /// G(n, p) with p = `edge_percent`/100; not planar in general.
    RandomSparse { n: usize, edge_percent: u32, seed: u64 },
}

impl FamilySpec {
    fn kind_name(&self) -> &'static str {
        match self {
            FamilySpec::Grid { .. } => "grid",
            FamilySpec::Path { .. } => "path",
            FamilySpec::Cycle { .. } => "cycle",
            FamilySpec::StarOfPaths { .. } => "star-of-paths",
            FamilySpec::GridWithPendantPaths { .. } => "grid-with-pendant-paths",
            FamilySpec::DisjointUnion { .. } => "union",
            FamilySpec::RandomSparse { .. } => "random-sparse",
        }
    }

    fn check(&self) -> Result<(), FamilyError> {
        let kind = self.kind_name();
        let ok = match self {
            FamilySpec::Grid { rows, cols } => *rows > 0 && *cols > 0,
            FamilySpec::Path { n } => *n > 0,
            FamilySpec::Cycle { n } => *n >= 3,
            FamilySpec::StarOfPaths { arms, length } => *arms > 0 && *length > 0,
            FamilySpec::GridWithPendantPaths { rows, cols, length } => {
                *rows > 0 && *cols > 0 && *length > 0
            }
            FamilySpec::DisjointUnion { parts } => !parts.is_empty(),
            FamilySpec::RandomSparse { n, .. } => *n > 0,
        };
        if ok {
            Ok(())
        } else {
            Err(FamilyError::NonPositive { kind })
        }
    }
}

fn grid(rows: usize, cols: usize) -> Graph {
    let mut g = Graph::new(rows * cols);
    let id = |r: usize, c: usize| r * cols + c;
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                g.add_edge(id(r, c), id(r, c + 1)).unwrap();
            }
            if r + 1 < rows {
                g.add_edge(id(r, c), id(r + 1, c)).unwrap();
            }
        }
    }
    g
}

fn attach_path(g: &mut Graph, anchor: usize, length: usize) {
    let mut prev = anchor;
    for _ in 0..length {
        let v = g.add_vertex();
        g.add_edge(prev, v).unwrap();
        prev = v;
    }
}

/// Builds the graph described by `spec`; a pure function of the spec.
pub fn generate(spec: &FamilySpec) -> Result<Graph, FamilyError> {
    spec.check()?;
    Ok(match spec {
        FamilySpec::Grid { rows, cols } => grid(*rows, *cols),
        FamilySpec::Path { n } => Graph::path(*n),
        FamilySpec::Cycle { n } => Graph::cycle(*n),
        FamilySpec::StarOfPaths { arms, length } => {
            let mut g = Graph::new(1);
            for _ in 0..*arms {
                attach_path(&mut g, 0, *length);
            }
            g
        }
        FamilySpec::GridWithPendantPaths { rows, cols, length } => {
            let mut g = grid(*rows, *cols);
            for c in 0..*cols {
                attach_path(&mut g, c, *length);
            }
            g
        }
        FamilySpec::DisjointUnion { parts } => {
            let mut g = Graph::new(0);
            for part in parts {
                g = g.disjoint_union(&generate(part)?);
            }
            g
        }
        FamilySpec::RandomSparse { n, edge_percent, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut g = Graph::new(*n);
            for u in 0..*n {
                for v in u + 1..*n {
                    if rng.gen_range(0..100u32) < *edge_percent {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            g
        }
    })
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Grid { rows, cols } => write!(f, "grid:{rows},{cols}"),
            FamilySpec::Path { n } => write!(f, "path:{n}"),
            FamilySpec::Cycle { n } => write!(f, "cycle:{n}"),
            FamilySpec::StarOfPaths { arms, length } => write!(f, "star-of-paths:{arms},{length}"),
            FamilySpec::GridWithPendantPaths { rows, cols, length } => {
                write!(f, "grid-with-pendant-paths:{rows},{cols},{length}")
            }
            FamilySpec::DisjointUnion { parts } => {
                write!(f, "union(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            FamilySpec::RandomSparse { n, edge_percent, seed } => {
                write!(f, "random-sparse:{n},{edge_percent},{seed}")
            }
        }
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ';' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let s = text.trim();
        if let Some(inner) = s.strip_prefix("union(").and_then(|r| r.strip_suffix(')')) {
            let parts = split_top_level(inner)
                .into_iter()
                .map(str::parse)
                .collect::<Result<Vec<_>, _>>()?;
            let spec = FamilySpec::DisjointUnion { parts };
            spec.check()?;
            return Ok(spec);
        }
        let (kind, args) = s.split_once(':').ok_or_else(|| FamilyError::Malformed(s.into()))?;
        let nums = args
            .split(',')
            .map(|a| a.trim().parse::<u64>().map_err(|_| FamilyError::Malformed(s.into())))
            .collect::<Result<Vec<_>, _>>()?;
        let arity = |kind: &'static str, expected: usize| {
            if nums.len() == expected {
                Ok(())
            } else {
                Err(FamilyError::Arity { kind, expected, got: nums.len() })
            }
        };
        let u = |i: usize| nums[i] as usize;
        let spec = match kind.trim() {
            "grid" => {
                arity("grid", 2)?;
                FamilySpec::Grid { rows: u(0), cols: u(1) }
            }
            "path" => {
                arity("path", 1)?;
                FamilySpec::Path { n: u(0) }
            }
            "cycle" => {
                arity("cycle", 1)?;
                FamilySpec::Cycle { n: u(0) }
            }
            "star-of-paths" => {
                arity("star-of-paths", 2)?;
                FamilySpec::StarOfPaths { arms: u(0), length: u(1) }
            }
            "grid-with-pendant-paths" => {
                arity("grid-with-pendant-paths", 3)?;
                FamilySpec::GridWithPendantPaths { rows: u(0), cols: u(1), length: u(2) }
            }
            "random-sparse" => {
                arity("random-sparse", 3)?;
                let edge_percent =
                    u32::try_from(nums[1]).map_err(|_| FamilyError::Malformed(s.into()))?;
                FamilySpec::RandomSparse { n: u(0), edge_percent, seed: nums[2] }
            }
            other => return Err(FamilyError::UnknownKind(other.into())),
        };
        spec.check()?;
        Ok(spec)
    }
}

/// Substitutes every standalone `k` token in `template` by `k` and parses the result.
pub fn instantiate_template(template: &str, k: i64) -> Result<FamilySpec, FamilyError> {
    let mut out = String::with_capacity(template.len() + 8);
    let chars: Vec<char> = template.chars().collect();
    let is_word = |c: char| c.is_ascii_alphanumeric() || c == '-' || c == '_';
    for (i, &ch) in chars.iter().enumerate() {
        let standalone = ch == 'k'
            && (i == 0 || !is_word(chars[i - 1]))
            && (i + 1 == chars.len() || !is_word(chars[i + 1]));
        if standalone {
            if k <= 0 {
                return Err(FamilyError::NonPositive { kind: "template" });
            }
            out.push_str(&k.to_string());
        } else {
            out.push(ch);
        }
    }
    out.parse()
}
