//! The kernelization driver: find a large protrusion `X_R`, cut out a piece
//! of it, replace that piece by a smaller equivalent, repeat.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::time::Instant;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::boundaried::{canonical_code_capped, split, BoundariedGraph, CanonicalCode, EnumBudget};
use crate::families::{generate, instantiate_template, FamilyError};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::problems::{decide, sct_preprocess, OracleCaps, OracleError, Problem, ProblemInstance};
use crate::protrusion::{compute_xr, split_candidates};
use crate::replace::{apply_replacement, find_replacement, RepCache, SearchOutcome};
use crate::treewidth::TwConfig;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EngineConfig {
    /// Protrusion parameter: candidate sets `R` have at most `r_search` vertices.
    pub t: usize,
    pub r_search: usize,
    /// Minimum `|X_R|` that triggers a reduction; `None` means `4c + 2(2t+1)`.
    pub threshold: Option<usize>,
    /// Target size `c` for the piece cut out of a protrusion (`c < |Y| <= 2c`).
    pub split_c: usize,
    pub budget: EnumBudget,
    pub caps: OracleCaps,
    pub tw: TwConfig,
    /// Above this many vertices, candidate sets are drawn from separators only.
    pub exhaustive_limit: usize,
    pub seed: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig::for_t(1)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("t must be at least 1")]
    ZeroT,
    #[error("split size must be at least 1")]
    ZeroSplit,
    #[error("threshold {threshold} must exceed twice the split size {split_c}")]
    ThresholdTooSmall { threshold: usize, split_c: usize },
    #[error("split size {split_c} is below the candidate boundary bound {r_search}")]
    SplitBelowBoundary { split_c: usize, r_search: usize },
}

impl EngineConfig {
    pub fn for_t(t: usize) -> Self {
        // Pieces must outgrow the representative search, which covers graphs
        // of at most `split_c` vertices.
        let split_c = 2 * t + 4;
        EngineConfig {
            t,
            r_search: 2 * t,
            threshold: None,
            split_c,
            budget: EnumBudget { max_vertices: split_c, max_yield: 200_000 },
            caps: OracleCaps::default(),
            tw: TwConfig::default(),
            exhaustive_limit: 64,
            seed: 0,
        }
    }

    /// Small pieces and a low trigger, so reductions fire on graphs of a
    /// dozen vertices.
    pub fn compact(t: usize) -> Self {
        let split_c = 2 * t + 1;
        EngineConfig {
            threshold: Some(2 * split_c + 1),
            split_c,
            budget: EnumBudget { max_vertices: 2 * split_c - 1, max_yield: 200_000 },
            ..EngineConfig::for_t(t)
        }
    }

    /// Trigger size for a candidate with boundary bound `b`.
    pub fn size_threshold(&self, _b: usize) -> usize {
        self.threshold.unwrap_or(4 * self.split_c + 2 * (2 * self.t + 1))
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.t == 0 {
            return Err(ConfigError::ZeroT);
        }
        if self.split_c == 0 {
            return Err(ConfigError::ZeroSplit);
        }
        if self.split_c < self.r_search {
            return Err(ConfigError::SplitBelowBoundary { split_c: self.split_c, r_search: self.r_search });
        }
        let threshold = self.size_threshold(2 * self.r_search);
        if threshold <= 2 * self.split_c {
            return Err(ConfigError::ThresholdTooSmall { threshold, split_c: self.split_c });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepKind {
    Replacement,
    /// Removal of vertices on no short cycle (cycle transversal only).
    Preprocess,
}

/// One applied reduction; vertex ids refer to the graph before the step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub kind: StepKind,
    pub r: Vec<Vertex>,
    pub xr_size: usize,
    pub replaced: Vec<Vertex>,
    pub boundary_size: usize,
    pub replacement_vertices: usize,
    pub replacement_code: String,
    pub from_cache: bool,
    pub c: i64,
    pub n_before: usize,
    pub n_after: usize,
    pub k_before: i64,
    pub k_after: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StuckRecord {
    pub r: Vec<Vertex>,
    pub piece: Vec<Vertex>,
    pub code: String,
    pub by_budget: bool,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    /// At most `k` vertices with `k >= 0`: returned as is.
    SmallInstance,
    TrivialYes,
    TrivialNo,
    /// No candidate fires any more.
    Quiescent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionLog {
    pub steps: Vec<Step>,
    pub warnings: Vec<String>,
    pub stuck: Vec<StuckRecord>,
    pub outcome: Outcome,
}

impl ReductionLog {
    fn new() -> Self {
        ReductionLog { steps: Vec::new(), warnings: Vec::new(), stuck: Vec::new(), outcome: Outcome::Quiescent }
    }

    fn warn(&mut self, w: String) {
        if !self.warnings.contains(&w) {
            self.warnings.push(w);
        }
    }
}

/// Confirms with the oracle that each problem's canned instances answer as claimed.
pub fn check_trivial_instances(caps: &OracleCaps) -> Result<(), String> {
    for id in Problem::ALL_IDS {
        let p = Problem::from_id(id, Some(1), Some(3)).expect("known id");
        let (yes, no) = p.trivial_instances();
        let ok = decide(&yes, caps).map_err(|e| e.to_string())? && !decide(&no, caps).map_err(|e| e.to_string())?;
        if !ok {
            return Err(format!("trivial instances of {p} answer incorrectly"));
        }
    }
    Ok(())
}

/// Candidate sets `R` in processing order.
pub fn candidate_sets<'a>(g: &'a Graph, cfg: &EngineConfig) -> Box<dyn Iterator<Item = VertexSet> + 'a> {
    let n = g.n();
    let rmax = cfg.r_search;
    if n <= cfg.exhaustive_limit {
        return Box::new((0..=rmax.min(n)).flat_map(move |size| (0..n).combinations(size).map(|c| c.into_iter().collect())));
    }
    let empty = std::iter::once(VertexSet::new());
    let cuts: Box<dyn Iterator<Item = VertexSet>> = if rmax >= 1 {
        Box::new(g.articulation_points().into_iter().map(|v| VertexSet::from([v])))
    } else {
        Box::new(std::iter::empty())
    };
    let pairs: Box<dyn Iterator<Item = VertexSet>> = if rmax >= 2 {
        Box::new((0..n).flat_map(move |u| {
            let (h, relabel) = g.without(&VertexSet::from([u]));
            h.articulation_points()
                .into_iter()
                .map(move |v| relabel.new_to_old[v])
                .filter(move |&v| v > u)
                .map(move |v| VertexSet::from([u, v]))
                .collect::<Vec<_>>()
        }))
    } else {
        Box::new(std::iter::empty())
    };
    let balls = (0..n).flat_map(move |v| {
        let dist = g.distances_from(&VertexSet::from([v])).expect("vertex in range");
        (1..=3usize)
            .filter_map(|radius| {
                let ball: VertexSet = (0..n).filter(|&u| dist[u].is_some_and(|d| d <= radius)).collect();
                let r = g.boundary_of(&ball);
                (!r.is_empty() && r.len() <= rmax).then_some(r)
            })
            .collect::<Vec<_>>()
    });
    Box::new(empty.chain(cuts).chain(pairs).chain(balls))
}

fn code_hex(code: &CanonicalCode) -> String {
    code.to_string()
}

/// Runs the reduction loop to quiescence.
pub fn meta_kernelize(inst: &ProblemInstance, cfg: &EngineConfig, cache: &RepCache) -> (ProblemInstance, ReductionLog) {
    let mut log = ReductionLog::new();
    let mut cur = inst.clone();
    if let Problem::CycleTransversal { s } = cur.problem {
        let (h, removed) = sct_preprocess(&cur.graph, s);
        if !removed.is_empty() {
            log.steps.push(Step {
                kind: StepKind::Preprocess,
                r: Vec::new(),
                xr_size: 0,
                replaced: removed,
                boundary_size: 0,
                replacement_vertices: 0,
                replacement_code: String::new(),
                from_cache: false,
                c: 0,
                n_before: cur.graph.n(),
                n_after: h.n(),
                k_before: cur.k,
                k_after: cur.k,
            });
            cur.graph = h;
        }
    }
    let mut stuck: HashSet<CanonicalCode> = HashSet::new();
    loop {
        if cur.k < 0 {
            let (yes, no) = cur.problem.trivial_instances();
            let answer = cur.problem.answer_for_negative();
            log.outcome = if answer { Outcome::TrivialYes } else { Outcome::TrivialNo };
            return (if answer { yes } else { no }, log);
        }
        if cur.graph.n() as i64 <= cur.k {
            log.outcome = Outcome::SmallInstance;
            return (cur, log);
        }
        match reduce_once(&cur, cfg, cache, &mut stuck, &mut log) {
            Some(next) => cur = next,
            None => {
                log.outcome = Outcome::Quiescent;
                return (cur, log);
            }
        }
    }
}

/// Applies the first firing candidate, if any. Within a firing `X_R` the
/// split pieces are tried deepest first until one is replaced.
fn reduce_once(
    cur: &ProblemInstance,
    cfg: &EngineConfig,
    cache: &RepCache,
    stuck: &mut HashSet<CanonicalCode>,
    log: &mut ReductionLog,
) -> Option<ProblemInstance> {
    let g = &cur.graph;
    let mut seen: HashSet<VertexSet> = HashSet::new();
    let mut codes: HashMap<VertexSet, Option<(BoundariedGraph, CanonicalCode)>> = HashMap::new();
    for r in candidate_sets(g, cfg) {
        if !seen.insert(r.clone()) {
            continue;
        }
        let xr = compute_xr(g, &r, &cfg.tw);
        for w in xr.warnings {
            log.warn(w);
        }
        let p = xr.protrusion;
        if p.len() < cfg.size_threshold(2 * r.len()) {
            continue;
        }
        let rv: Vec<Vertex> = r.iter().copied().collect();
        let pieces = match split_candidates(g, &p, cfg.split_c) {
            Ok(pieces) => pieces,
            Err(e) => {
                log.warn(format!("split of X_R for R={rv:?} failed: {e}"));
                continue;
            }
        };
        for y in pieces {
            let entry = codes.entry(y.x.clone()).or_insert_with(|| {
                let piece = split(g, &y.x).inner;
                canonical_code_capped(&piece, 64).ok().map(|code| (piece, code))
            });
            let Some((piece, code)) = entry.clone() else {
                log.warn(format!("piece for R={rv:?} not canonizable"));
                continue;
            };
            if stuck.contains(&code) {
                continue;
            }
            let outcome = find_replacement(cur.problem, &piece, cfg.budget, &cfg.caps, cache);
            let yv: Vec<Vertex> = y.x.iter().copied().collect();
            let mut mark = |by_budget: bool, reason: String, log: &mut ReductionLog| {
                log.stuck.push(StuckRecord { r: rv.clone(), piece: yv.clone(), code: code_hex(&code), by_budget, reason });
                stuck.insert(code.clone());
            };
            match outcome {
                Ok(SearchOutcome::Found(rep)) => {
                    let applied = match apply_replacement(cur, &y.x, &rep.graph, rep.c) {
                        Ok(a) => a,
                        Err(e) => {
                            mark(false, format!("replacement rejected: {e}"), log);
                            continue;
                        }
                    };
                    let next = applied.instance;
                    log.steps.push(Step {
                        kind: StepKind::Replacement,
                        r: rv,
                        xr_size: p.len(),
                        replaced: yv,
                        boundary_size: piece.boundary_len(),
                        replacement_vertices: rep.graph.n(),
                        replacement_code: canonical_code_capped(&rep.graph, 64).map(|c| c.to_string()).unwrap_or_default(),
                        from_cache: rep.from_cache,
                        c: rep.c,
                        n_before: g.n(),
                        n_after: next.graph.n(),
                        k_before: cur.k,
                        k_after: next.k,
                    });
                    return Some(next);
                }
                Ok(SearchOutcome::Irreducible) => mark(false, "no smaller equivalent graph".into(), log),
                Ok(SearchOutcome::BudgetExhausted(why)) => mark(true, why, log),
                Err(e) => mark(true, e.to_string(), log),
            }
        }
    }
    None
}

/// Candidates in `g` whose `X_R` still reaches the threshold and has a piece
/// outside the `stuck` codes. Empty after a quiescent run.
pub fn residual_protrusions(g: &Graph, cfg: &EngineConfig, stuck: &[StuckRecord]) -> Vec<(Vec<Vertex>, usize)> {
    let stuck_codes: BTreeSet<&str> = stuck.iter().map(|s| s.code.as_str()).collect();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for r in candidate_sets(g, cfg) {
        if !seen.insert(r.clone()) {
            continue;
        }
        let p = compute_xr(g, &r, &cfg.tw).protrusion;
        if p.len() < cfg.size_threshold(2 * r.len()) {
            continue;
        }
        let open = match split_candidates(g, &p, cfg.split_c) {
            Ok(pieces) => pieces.iter().any(|y| match canonical_code_capped(&split(g, &y.x).inner, 64) {
                Ok(code) => !stuck_codes.contains(code_hex(&code).as_str()),
                Err(_) => true,
            }),
            Err(_) => true,
        };
        if open {
            out.push((r.into_iter().collect(), p.len()));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub original: Option<bool>,
    pub kernel: Option<bool>,
    /// `None` when either side is beyond the oracle caps.
    pub agree: Option<bool>,
    pub note: Option<String>,
}

/// Decides both instances with the oracle and compares.
pub fn verify_kernel(original: &ProblemInstance, kernel: &ProblemInstance, caps: &OracleCaps) -> VerifyReport {
    let run = |i: &ProblemInstance| decide(i, caps);
    match (run(original), run(kernel)) {
        (Ok(a), Ok(b)) => VerifyReport { original: Some(a), kernel: Some(b), agree: Some(a == b), note: None },
        (a, b) => {
            let note = [a.as_ref().err(), b.as_ref().err()]
                .into_iter()
                .flatten()
                .map(|e: &OracleError| e.to_string())
                .collect::<Vec<_>>()
                .join("; ");
            VerifyReport {
                original: a.ok(),
                kernel: b.ok(),
                agree: None,
                note: Some(format!("unverifiable at this size: {note}")),
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub k: i64,
    pub n_original: usize,
    pub m_original: usize,
    pub n_kernel: usize,
    pub m_kernel: usize,
    pub k_kernel: i64,
    pub steps: usize,
    pub outcome: Outcome,
    pub wall_ms: u128,
}

/// Kernelizes `template` instantiated at each `k`, with parameter `k`.
pub fn sweep(
    problem: Problem,
    template: &str,
    k_values: &[i64],
    cfg: &EngineConfig,
    cache: &RepCache,
) -> Result<Vec<SweepRow>, FamilyError> {
    k_values
        .iter()
        .map(|&k| {
            let spec = instantiate_template(template, k)?;
            let g = generate(&spec)?;
            let inst = ProblemInstance::new(g, k, problem);
            let start = Instant::now();
            let (kernel, log) = meta_kernelize(&inst, cfg, cache);
            Ok(SweepRow {
                k,
                n_original: inst.graph.n(),
                m_original: inst.graph.m(),
                n_kernel: kernel.graph.n(),
                m_kernel: kernel.graph.m(),
                k_kernel: kernel.k,
                steps: log.steps.len(),
                outcome: log.outcome,
                wall_ms: start.elapsed().as_millis(),
            })
        })
        .collect()
}

/// Writes sweep rows as CSV with a header.
pub fn write_sweep_csv<W: std::io::Write>(rows: &[SweepRow], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
