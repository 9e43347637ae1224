//! Progressive replacement: find a strictly smaller boundaried graph with the
//! same signature key and no larger offset, then glue it in.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Seek, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use thiserror::Error;

use crate::boundaried::{enumerate_boundaried, glue, split, BoundariedGraph, EnumBudget, EnumError, Label};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::problems::{signature, OracleCaps, OracleError, Problem, ProblemInstance, Signature};

/// Identifies a replacement class: problem, labels, boundary edges, table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignatureKey {
    pub problem: Problem,
    pub labels: Vec<Label>,
    /// Edges of the boundary-induced subgraph, by label.
    pub boundary_edges: String,
    pub table: String,
}

impl SignatureKey {
    pub fn new(problem: Problem, b: &BoundariedGraph, sig: &Signature) -> Self {
        SignatureKey {
            problem,
            labels: b.label_set(),
            boundary_edges: boundary_edges(b),
            table: sig.table_string(),
        }
    }

    /// Computes the signature and its key.
    pub fn of(problem: Problem, b: &BoundariedGraph, caps: &OracleCaps) -> Result<(SignatureKey, Signature), OracleError> {
        let sig = signature(problem, b, caps)?;
        Ok((SignatureKey::new(problem, b, &sig), sig))
    }

    fn scope(&self) -> String {
        format!("{}|{}|{}", self.problem, join(&self.labels), self.boundary_edges)
    }

    /// Single-line text form (no tabs or newlines).
    pub fn to_text(&self) -> String {
        format!("{}|{}", self.scope(), self.table)
    }

    fn from_text(text: &str) -> Option<SignatureKey> {
        let mut it = text.splitn(4, '|');
        let problem = it.next()?.parse().ok()?;
        let labels = split_nums(it.next()?)?;
        let boundary_edges = it.next()?.to_string();
        let table = it.next()?.to_string();
        Some(SignatureKey { problem, labels, boundary_edges, table })
    }
}

fn boundary_edges(b: &BoundariedGraph) -> String {
    let labels = b.label_set();
    let h = b.boundary_subgraph();
    let parts: Vec<String> = h.edges().map(|(u, v)| format!("{}-{}", labels[u], labels[v])).collect();
    parts.join(",")
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn split_nums<T: std::str::FromStr>(text: &str) -> Option<Vec<T>> {
    if text.is_empty() {
        return Some(Vec::new());
    }
    text.split(',').map(|x| x.parse().ok()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CachedRep {
    pub graph: BoundariedGraph,
    pub offset: i64,
}

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache file {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

#[derive(Default)]
struct CacheState {
    /// Per key, representatives on the (size, offset) Pareto front, smallest first.
    reps: HashMap<SignatureKey, Vec<CachedRep>>,
    /// Per scope, the largest size below which every graph has been inserted.
    explored: HashMap<String, usize>,
    file: Option<File>,
}

/// Representatives by signature key, optionally persisted as an append-only
/// text file.
pub struct RepCache {
    state: Mutex<CacheState>,
    path: Option<PathBuf>,
}

const MAGIC: &str = "v1";

impl Default for RepCache {
    fn default() -> Self {
        Self::in_memory()
    }
}

impl RepCache {
    pub fn in_memory() -> Self {
        RepCache { state: Mutex::new(CacheState::default()), path: None }
    }

    /// Opens or creates a cache file. A corrupt tail is cut off at the last
    /// well-formed record.
    pub fn open(path: &Path) -> Result<Self, CacheError> {
        let io_err = |source| CacheError::Io { path: path.to_path_buf(), source };
        let mut file = OpenOptions::new().read(true).append(true).create(true).open(path).map_err(io_err)?;
        let mut state = CacheState::default();
        let mut good_len = 0u64;
        {
            let mut reader = BufReader::new(&file);
            let mut line = String::new();
            loop {
                line.clear();
                let read = reader.read_line(&mut line).map_err(io_err)?;
                if read == 0 || !line.ends_with('\n') || !apply_record(&mut state, line.trim_end_matches('\n')) {
                    break;
                }
                good_len += read as u64;
            }
        }
        if file.metadata().map_err(io_err)?.len() != good_len {
            file.set_len(good_len).map_err(io_err)?;
        }
        file.seek(std::io::SeekFrom::End(0)).map_err(io_err)?;
        state.file = Some(file);
        Ok(RepCache { state: Mutex::new(state), path: Some(path.to_path_buf()) })
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    /// Number of keys with at least one representative.
    pub fn len(&self) -> usize {
        self.state.lock().expect("cache lock").reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Smallest representative for `key`.
    pub fn get(&self, key: &SignatureKey) -> Option<CachedRep> {
        self.state.lock().expect("cache lock").reps.get(key).and_then(|v| v.first().cloned())
    }

    /// Smallest representative with fewer than `max_n` vertices and offset at most `max_offset`.
    pub fn lookup(&self, key: &SignatureKey, max_n: usize, max_offset: i64) -> Option<CachedRep> {
        let st = self.state.lock().expect("cache lock");
        st.reps.get(key)?.iter().find(|r| r.graph.n() < max_n && r.offset <= max_offset).cloned()
    }

    /// Inserts unless dominated by a stored entry. Returns whether it was kept.
    pub fn insert(&self, key: SignatureKey, graph: BoundariedGraph, offset: i64) -> bool {
        let mut st = self.state.lock().expect("cache lock");
        let record = entry_record(&key, &graph, offset);
        let kept = insert_rep(&mut st, key, CachedRep { graph, offset });
        if kept {
            persist(&mut st, &record);
        }
        kept
    }

    fn explored(&self, scope: &str) -> usize {
        self.state.lock().expect("cache lock").explored.get(scope).copied().unwrap_or(0)
    }

    fn mark_explored(&self, scope: &str, size: usize) {
        let mut st = self.state.lock().expect("cache lock");
        let cur = st.explored.get(scope).copied().unwrap_or(0);
        if size > cur {
            st.explored.insert(scope.to_string(), size);
            let record = format!("{MAGIC}\texplored\t{scope}\t{size}");
            persist(&mut st, &record);
        }
    }
}

fn persist(st: &mut CacheState, record: &str) {
    if let Some(f) = st.file.as_mut() {
        // Persistence is best effort; the in-memory cache stays authoritative.
        let _ = writeln!(f, "{record}");
    }
}

fn insert_rep(st: &mut CacheState, key: SignatureKey, rep: CachedRep) -> bool {
    let front = st.reps.entry(key).or_default();
    if front.iter().any(|r| r.graph.n() <= rep.graph.n() && r.offset <= rep.offset) {
        return false;
    }
    front.retain(|r| !(rep.graph.n() <= r.graph.n() && rep.offset <= r.offset));
    let pos = front.iter().position(|r| (r.graph.n(), r.offset) > (rep.graph.n(), rep.offset)).unwrap_or(front.len());
    front.insert(pos, rep);
    true
}

fn entry_record(key: &SignatureKey, g: &BoundariedGraph, offset: i64) -> String {
    let edges: Vec<String> = g.graph().edges().map(|(u, v)| format!("{u}-{v}")).collect();
    format!(
        "{MAGIC}\tentry\t{}\t{}\t{}\t{}\t{}\t{offset}",
        key.to_text(),
        g.n(),
        join(g.boundary()),
        join(g.labels()),
        edges.join(",")
    )
}

fn apply_record(st: &mut CacheState, line: &str) -> bool {
    let fields: Vec<&str> = line.split('\t').collect();
    match fields.as_slice() {
        [MAGIC, "explored", scope, size] => match size.parse() {
            Ok(size) => {
                let e = st.explored.entry(scope.to_string()).or_insert(0);
                *e = (*e).max(size);
                true
            }
            Err(_) => false,
        },
        [MAGIC, "entry", key, n, boundary, labels, edges, offset] => {
            let parsed = (|| {
                let key = SignatureKey::from_text(key)?;
                let n: usize = n.parse().ok()?;
                let boundary: Vec<Vertex> = split_nums(boundary)?;
                let labels: Vec<Label> = split_nums(labels)?;
                let mut g = Graph::new(n);
                for e in edges.split(',').filter(|e| !e.is_empty()) {
                    let (u, v) = e.split_once('-')?;
                    g.add_edge(u.parse().ok()?, v.parse().ok()?).ok()?;
                }
                let b = BoundariedGraph::new(g, boundary, labels).ok()?;
                Some((key, b, offset.parse::<i64>().ok()?))
            })();
            match parsed {
                Some((key, b, offset)) => {
                    insert_rep(st, key, CachedRep { graph: b, offset });
                    true
                }
                None => false,
            }
        }
        _ => false,
    }
}

/// A found representative and the parameter shift `c <= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Replacement {
    pub graph: BoundariedGraph,
    pub c: i64,
    pub from_cache: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Replacement),
    /// Every smaller graph was examined; none qualifies.
    Irreducible,
    /// The search space was cut short by the enumeration budget.
    BudgetExhausted(String),
}

/// Looks up the cache, then enumerates candidates in nondecreasing size with
/// the same boundary subgraph until one matches `b`'s key with no larger offset.
pub fn find_replacement(
    problem: Problem,
    b: &BoundariedGraph,
    budget: EnumBudget,
    caps: &OracleCaps,
    cache: &RepCache,
) -> Result<SearchOutcome, OracleError> {
    let (key, sig) = SignatureKey::of(problem, b, caps)?;
    let offset = sig.offset.unwrap_or(i64::MAX);
    let n = b.n();
    if n <= b.boundary_len() {
        return Ok(SearchOutcome::Irreducible);
    }
    cache.insert(key.clone(), b.clone(), offset);
    let hit = |rep: CachedRep, from_cache| Replacement { c: rep.offset - offset, graph: rep.graph, from_cache };
    if let Some(rep) = cache.lookup(&key, n, offset) {
        return Ok(SearchOutcome::Found(hit(rep, true)));
    }
    let scope = key.scope();
    let explored = cache.explored(&scope);
    let limit = (n - 1).min(budget.max_vertices);
    if explored >= limit {
        return Ok(if limit < n - 1 {
            SearchOutcome::BudgetExhausted(format!("candidates limited to {limit} vertices"))
        } else {
            SearchOutcome::Irreducible
        });
    }
    let pinned = b.boundary_subgraph();
    let t = b.boundary_len();
    let enumerator = match enumerate_boundaried(limit, t, Some(&pinned), budget.max_yield) {
        Ok(e) => e,
        Err(e) => return Ok(SearchOutcome::BudgetExhausted(e.to_string())),
    };
    let mut completed = t.saturating_sub(1);
    for item in enumerator {
        let cand = match item {
            Ok(c) => c,
            Err(EnumError::Overflow(cap)) => {
                cache.mark_explored(&scope, completed);
                return Ok(SearchOutcome::BudgetExhausted(format!("enumeration exceeded {cap} graphs")));
            }
            Err(e) => return Ok(SearchOutcome::BudgetExhausted(e.to_string())),
        };
        if cand.n() > completed + 1 {
            completed = cand.n() - 1;
            cache.mark_explored(&scope, completed);
        }
        if cand.n() <= explored {
            continue;
        }
        let cand = relabel_like(&cand, &b.label_set());
        let (ckey, csig) = SignatureKey::of(problem, &cand, caps)?;
        let coff = csig.offset.unwrap_or(i64::MAX);
        cache.insert(ckey.clone(), cand.clone(), coff);
        if ckey == key && coff <= offset {
            return Ok(SearchOutcome::Found(hit(CachedRep { graph: cand, offset: coff }, false)));
        }
    }
    cache.mark_explored(&scope, limit);
    Ok(if limit < n - 1 {
        SearchOutcome::BudgetExhausted(format!("candidates limited to {limit} vertices"))
    } else {
        SearchOutcome::Irreducible
    })
}

/// Enumerated graphs carry labels `1..=t`; give them `labels` in the same order.
fn relabel_like(b: &BoundariedGraph, labels: &[Label]) -> BoundariedGraph {
    if b.labels() == labels {
        return b.clone();
    }
    let mut pairs: Vec<(Label, Vertex)> = b.labels().iter().copied().zip(b.boundary().iter().copied()).collect();
    pairs.sort_unstable();
    let boundary = pairs.iter().map(|&(_, v)| v).collect();
    BoundariedGraph::new(b.graph().clone(), boundary, labels.to_vec()).expect("same number of labels")
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReplaceError {
    #[error("replacement labels {found:?} differ from the protrusion's {expected:?}")]
    LabelMismatch { expected: Vec<Label>, found: Vec<Label> },
    #[error("replacement has {replacement} vertices, protrusion side has {original}")]
    NotSmaller { original: usize, replacement: usize },
    #[error("parameter shift {0} is positive")]
    PositiveShift(i64),
}

/// Result of gluing a representative in place of a protrusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Applied {
    pub instance: ProblemInstance,
    /// For each new vertex, its id in the old graph (`None` for inserted ones).
    pub origin: Vec<Option<Vertex>>,
}

/// Replaces `G[X]` by `j` and shifts the parameter by `c`.
pub fn apply_replacement(inst: &ProblemInstance, x: &VertexSet, j: &BoundariedGraph, c: i64) -> Result<Applied, ReplaceError> {
    if c > 0 {
        return Err(ReplaceError::PositiveShift(c));
    }
    let parts = split(&inst.graph, x);
    let expected = parts.inner.label_set();
    if j.label_set() != expected {
        return Err(ReplaceError::LabelMismatch { expected, found: j.label_set() });
    }
    if j.n() >= parts.inner.n() {
        return Err(ReplaceError::NotSmaller { original: parts.inner.n(), replacement: j.n() });
    }
    let (g, _, _) = glue(&parts.outer, j);
    let mut origin: Vec<Option<Vertex>> = parts.outer_map.new_to_old.iter().map(|&v| Some(v)).collect();
    origin.resize(g.n(), None);
    Ok(Applied { instance: ProblemInstance::new(g, inst.k + c, inst.problem), origin })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::decide;

    fn budget() -> EnumBudget {
        EnumBudget { max_vertices: 8, max_yield: 100_000 }
    }

    fn pendant_p3() -> BoundariedGraph {
        BoundariedGraph::with_sequential_labels(Graph::path(3), vec![0]).unwrap()
    }

    #[test]
    fn vc_pendant_path_shrinks_to_a_vertex() {
        let cache = RepCache::in_memory();
        let out = find_replacement(Problem::VertexCover, &pendant_p3(), budget(), &OracleCaps::default(), &cache).unwrap();
        let SearchOutcome::Found(rep) = out else { panic!("{out:?}") };
        assert_eq!(rep.graph.n(), 1);
        assert_eq!(rep.c, -1);
        assert!(!rep.from_cache);
        let again = find_replacement(Problem::VertexCover, &pendant_p3(), budget(), &OracleCaps::default(), &cache).unwrap();
        assert!(matches!(again, SearchOutcome::Found(Replacement { from_cache: true, c: -1, .. })));
    }

    #[test]
    fn single_boundary_vertex_is_irreducible() {
        let k1 = BoundariedGraph::with_sequential_labels(Graph::new(1), vec![0]).unwrap();
        let cache = RepCache::in_memory();
        let out = find_replacement(Problem::VertexCover, &k1, budget(), &OracleCaps::default(), &cache).unwrap();
        assert_eq!(out, SearchOutcome::Irreducible);
    }

    #[test]
    fn cycle_packing_triangles() {
        // A triangle hanging off the boundary vertex plus a disjoint triangle.
        let mut g = Graph::complete(3).disjoint_union(&Graph::complete(3));
        let v = g.add_vertex();
        g.add_edge(0, v).unwrap();
        let b = BoundariedGraph::with_sequential_labels(g, vec![v]).unwrap();
        let caps = OracleCaps::default();
        let cache = RepCache::in_memory();
        let out = find_replacement(Problem::CyclePacking, &b, budget(), &caps, &cache).unwrap();
        let SearchOutcome::Found(rep) = out else { panic!("{out:?}") };
        assert!(rep.graph.n() < 7 && rep.c <= 0);
        let (k1, _) = SignatureKey::of(Problem::CyclePacking, &b, &caps).unwrap();
        let (k2, _) = SignatureKey::of(Problem::CyclePacking, &rep.graph, &caps).unwrap();
        assert_eq!(k1, k2);
    }

    #[test]
    fn budget_is_reported() {
        let cache = RepCache::in_memory();
        let tight = EnumBudget { max_vertices: 8, max_yield: 1 };
        let b = BoundariedGraph::with_sequential_labels(Graph::path(6), vec![0]).unwrap();
        let out = find_replacement(Problem::DominatingSet, &b, tight, &OracleCaps::default(), &cache).unwrap();
        assert!(matches!(out, SearchOutcome::BudgetExhausted(_)), "{out:?}");
    }

    #[test]
    fn apply_examples() {
        let caps = OracleCaps::default();
        // star-of-paths(1, 2) is the path 0-1-2; the whole graph is a pendant P3.
        let inst = ProblemInstance::new(Graph::path(3), 1, Problem::VertexCover);
        let all: VertexSet = [0, 1, 2].into();
        let empty = BoundariedGraph::unlabeled(Graph::new(0));
        let out = apply_replacement(&inst, &all, &empty, -1).unwrap();
        assert_eq!((out.instance.graph.n(), out.instance.k), (0, 0));
        assert_eq!(decide(&inst, &caps).unwrap(), decide(&out.instance, &caps).unwrap());

        // Pendant edge {1,2} at 1 versus itself: a zero shift keeps k.
        let x: VertexSet = [1, 2].into();
        let edge_end = BoundariedGraph::with_sequential_labels(Graph::new(1), vec![0]).unwrap();
        let same = apply_replacement(&inst, &x, &edge_end, 0).unwrap();
        assert_eq!((same.instance.graph.n(), same.instance.k), (2, 1));
        assert_eq!(same.origin, vec![Some(0), Some(1)]);

        let one: VertexSet = [2].into();
        assert!(matches!(apply_replacement(&inst, &one, &edge_end, 0), Err(ReplaceError::NotSmaller { .. })));
        let wrong = BoundariedGraph::with_sequential_labels(Graph::new(2), vec![0, 1]).unwrap();
        assert!(matches!(apply_replacement(&inst, &x, &wrong, 0), Err(ReplaceError::LabelMismatch { .. })));
        assert!(matches!(apply_replacement(&inst, &x, &edge_end, 1), Err(ReplaceError::PositiveShift(1))));
    }

    #[test]
    fn cache_round_trip_and_corrupt_tail() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("reps.tsv");
        let caps = OracleCaps::default();
        {
            let cache = RepCache::open(&path).unwrap();
            find_replacement(Problem::VertexCover, &pendant_p3(), budget(), &caps, &cache).unwrap();
            assert!(!cache.is_empty());
        }
        let len = std::fs::metadata(&path).unwrap().len();
        let mut f = OpenOptions::new().append(true).open(&path).unwrap();
        write!(f, "v1\tentry\tgarbage").unwrap();
        drop(f);
        let cache = RepCache::open(&path).unwrap();
        assert_eq!(std::fs::metadata(&path).unwrap().len(), len);
        let (key, _) = SignatureKey::of(Problem::VertexCover, &pendant_p3(), &caps).unwrap();
        let rep = cache.get(&key).unwrap();
        // Coherence: the stored graph's recomputed key matches.
        assert_eq!(SignatureKey::of(Problem::VertexCover, &rep.graph, &caps).unwrap().0, key);
        assert_eq!(rep.graph.n(), 1);
    }
}
