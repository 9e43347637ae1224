//! Acceptance suite: every criterion runs at its stated tolerance and prints
//! one PASS/FAIL line. The test fails if any criterion fails.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use protrusion_kernel::boundaried::{enumerate_boundaried, glue, BoundariedGraph};
use protrusion_kernel::engine::{meta_kernelize, sweep, EngineConfig, SweepRow};
use protrusion_kernel::families::{generate, FamilySpec};
use protrusion_kernel::graph::{Graph, VertexSet};
use protrusion_kernel::problems::{brute_opt, decide, oracle, sct_preprocess, signature, OracleCaps, Problem, ProblemInstance};
use protrusion_kernel::protrusion::{is_protrusion, partition_protrusion, split_protrusion};
use protrusion_kernel::replace::{RepCache, SignatureKey};
use protrusion_kernel::treewidth::{decide_tw_leq, TwConfig};

struct Verdict {
    pass: bool,
    detail: String,
}

fn all_problems() -> [Problem; 6] {
    [
        Problem::VertexCover,
        Problem::DominatingSet,
        Problem::IndependentSet,
        Problem::Scattered { r: 2 },
        Problem::CyclePacking,
        Problem::CycleTransversal { s: 3 },
    ]
}

fn small_family(rng: &mut ChaCha8Rng, depth: usize) -> FamilySpec {
    match rng.gen_range(0..if depth == 0 { 4 } else { 3 }) {
        0 => FamilySpec::RandomSparse { n: rng.gen_range(4..=12), edge_percent: rng.gen_range(15..=40), seed: rng.gen() },
        1 => FamilySpec::Grid { rows: rng.gen_range(1..=3), cols: rng.gen_range(2..=4) },
        2 => {
            let arms = rng.gen_range(1..=4);
            FamilySpec::StarOfPaths { arms, length: rng.gen_range(1..=(15 / arms).min(5)) }
        }
        _ => FamilySpec::DisjointUnion { parts: vec![small_family(rng, 1), small_family(rng, 1)] },
    }
}

/// Instance graphs for the soundness runs, kept within the oracle caps.
fn soundness_instances(problem: Problem, count: usize, seed: u64) -> Vec<(FamilySpec, ProblemInstance)> {
    let caps = OracleCaps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let spec = small_family(&mut rng, 0);
        let g = generate(&spec).expect("valid family");
        let edge_capped = matches!(problem, Problem::CyclePacking | Problem::CycleTransversal { .. });
        if g.n() == 0 || g.n() > caps.max_vertices || (edge_capped && g.m() > caps.max_edges) {
            continue;
        }
        let k = rng.gen_range(0..=g.n() as i64);
        out.push((spec, ProblemInstance::new(g, k, problem)));
    }
    out
}

fn soundness_config() -> EngineConfig {
    EngineConfig::compact(1)
}

/// Criteria 1 and 8 share their runs.
fn criteria_1_and_8() -> (Verdict, Verdict) {
    let caps = OracleCaps::default();
    let cfg = soundness_config();
    let start = Instant::now();
    let (mut total, mut disagree, mut reduced, mut steps_total) = (0, 0, 0, 0);
    let mut progress_violations = Vec::new();
    for (pi, problem) in all_problems().into_iter().enumerate() {
        let cache = RepCache::in_memory();
        for (spec, inst) in soundness_instances(problem, 500, 1000 + pi as u64) {
            let (kernel, log) = meta_kernelize(&inst, &cfg, &cache);
            total += 1;
            steps_total += log.steps.len();
            if !log.steps.is_empty() {
                reduced += 1;
            }
            let before = decide(&inst, &caps).expect("within caps");
            let after = decide(&kernel, &caps).expect("kernel within caps");
            if before != after {
                disagree += 1;
                eprintln!("disagreement: {problem} on {spec} k={}: {before} vs {after}", inst.k);
            }
            let n0 = inst.graph.n();
            let bad_step = log.steps.iter().any(|s| s.n_after >= s.n_before || s.k_after > s.k_before);
            let (_, again) = meta_kernelize(&kernel, &cfg, &cache);
            if bad_step || log.steps.len() > n0 || !again.steps.is_empty() {
                progress_violations.push(format!("{problem} on {spec} k={}", inst.k));
            }
        }
    }
    let elapsed = start.elapsed();
    let c1 = Verdict {
        pass: disagree == 0 && total >= 3000 && elapsed < Duration::from_secs(600),
        detail: format!(
            "oracle soundness: {total} instances ({reduced} reduced, {steps_total} steps), {disagree} disagreements, {:.1} s",
            elapsed.as_secs_f64()
        ),
    };
    for v in progress_violations.iter().take(5) {
        eprintln!("progress violation: {v}");
    }
    let c8 = Verdict {
        pass: progress_violations.is_empty(),
        detail: format!("monotone progress and quiescence: {} violations over {total} runs", progress_violations.len()),
    };
    (c1, c8)
}

fn criterion_2() -> Verdict {
    let caps = OracleCaps { max_edges: 64, ..OracleCaps::default() };
    let (mut pairs, mut checks, mut violations) = (0usize, 0usize, 0usize);
    for problem in all_problems() {
        for labels in 0..=2usize {
            let all: Vec<BoundariedGraph> =
                enumerate_boundaried(5, labels, None, usize::MAX).unwrap().map(|b| b.unwrap()).collect();
            let mut groups: HashMap<SignatureKey, Vec<(usize, i64)>> = HashMap::new();
            for (i, b) in all.iter().enumerate() {
                let (key, sig) = SignatureKey::of(problem, b, &caps).unwrap();
                groups.entry(key).or_default().push((i, sig.offset.expect("some state is feasible")));
            }
            for members in groups.values().filter(|m| m.len() > 1) {
                let (i0, x0) = members[0];
                let base: Vec<i64> = all.iter().map(|f| brute_opt(problem, &glue(&all[i0], f).0, &caps).unwrap()).collect();
                for &(i, x) in &members[1..] {
                    pairs += 1;
                    for (fi, f) in all.iter().enumerate() {
                        checks += 1;
                        let opt = brute_opt(problem, &glue(&all[i], f).0, &caps).unwrap();
                        if opt - base[fi] != x - x0 {
                            violations += 1;
                        }
                    }
                }
            }
        }
    }
    Verdict {
        pass: violations == 0,
        detail: format!("refinement: {pairs} equal-key pairs, {checks} glued contexts, {violations} violations"),
    }
}

/// A host `K4` on vertices `0..4` with a protrusion attached at `0` (and `1` when `t = 2`).
fn protrusion_case(rng: &mut ChaCha8Rng) -> (Graph, VertexSet, usize) {
    let mut g = Graph::complete(4);
    let kind = rng.gen_range(0..3);
    let size = rng.gen_range(17..=58);
    let t = if kind == 2 { 2 } else { 1 };
    match kind {
        0 => {
            let mut prev = 0;
            for _ in 0..size {
                let v = g.add_vertex();
                g.add_edge(prev, v).unwrap();
                prev = v;
            }
        }
        1 => {
            let mut tree = vec![0];
            for _ in 0..size {
                let v = g.add_vertex();
                let p = tree[rng.gen_range(0..tree.len())];
                g.add_edge(p, v).unwrap();
                tree.push(v);
            }
        }
        _ => {
            // A 2 x m ladder whose first rung hangs off 0 and 1.
            let m = size / 2;
            let first = g.n();
            for _ in 0..2 * m {
                g.add_vertex();
            }
            for i in 0..m {
                let (a, b) = (first + 2 * i, first + 2 * i + 1);
                g.add_edge(a, b).unwrap();
                if i + 1 < m {
                    g.add_edge(a, a + 2).unwrap();
                    g.add_edge(b, b + 2).unwrap();
                }
            }
            g.add_edge(0, first).unwrap();
            g.add_edge(1, first + 1).unwrap();
        }
    }
    let mut x: VertexSet = (4..g.n()).collect();
    x.insert(0);
    if t == 2 {
        x.insert(1);
    }
    (g, x, t)
}

fn criterion_3() -> Verdict {
    let cfg = TwConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut violations = Vec::new();
    for case in 0..200 {
        let (g, x, t) = protrusion_case(&mut rng);
        let c = rng.gen_range(5..=8);
        let p = is_protrusion(&g, &x, t, &cfg).unwrap().expect("constructed as a protrusion");
        let y = match split_protrusion(&g, &p, c) {
            Ok(y) => y,
            Err(e) => {
                violations.push(format!("case {case}: {e}"));
                continue;
            }
        };
        let (h, _) = g.induced_set(&y.x);
        let ok = c < y.len()
            && y.len() <= 2 * c
            && y.x.is_subset(&x)
            && g.boundary_of(&y.x).len() <= 2 * t + 1
            && decide_tw_leq(&h, 2 * t, &cfg).unwrap().is_some()
            && is_protrusion(&g, &y.x, 2 * t + 1, &cfg).unwrap().is_some();
        if !ok {
            violations.push(format!("case {case}: |Y|={} c={c} t={t}", y.len()));
        }
    }
    Verdict { pass: violations.is_empty(), detail: format!("split contract: 200 cases, {} violations {:?}", violations.len(), violations) }
}

fn criterion_4() -> Verdict {
    let cfg = TwConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut hard, mut flagged) = (Vec::new(), 0);
    for case in 0..100 {
        let (g, x, t) = protrusion_case(&mut rng);
        let p = is_protrusion(&g, &x, t, &cfg).unwrap().expect("constructed as a protrusion");
        let xs: Vec<usize> = x.iter().copied().collect();
        let zn = rng.gen_range(1..=6);
        let z: VertexSet = (0..zn).map(|_| xs[rng.gen_range(0..xs.len())]).collect();
        let part = match partition_protrusion(&g, &p, &z, &cfg) {
            Ok(part) => part,
            Err(e) => {
                hard.push(format!("case {case}: {e}"));
                continue;
            }
        };
        let union: VertexSet = part.parts.iter().flat_map(|q| q.x.iter().copied()).collect();
        let mut ok = union == x;
        for q in &part.parts {
            let bq = g.boundary_of(&q.x);
            ok &= z.intersection(&q.x).all(|v| bq.contains(v));
            ok &= is_protrusion(&g, &q.x, 4 * t + 2, &cfg).unwrap().is_some();
        }
        if !ok {
            hard.push(format!("case {case}"));
        }
        if part.parts.len() > 4 * (z.len() + 1) {
            flagged += 1;
        }
    }
    Verdict {
        pass: hard.is_empty(),
        detail: format!("partition contract: 100 cases, {} hard violations {:?}, {flagged} over the part-count bound (flagged)", hard.len(), hard),
    }
}

fn criterion_5() -> Verdict {
    let start = Instant::now();
    let cfg = EngineConfig::for_t(1);
    let ks: Vec<i64> = (1..=10).map(|i| 2 * i).collect();
    let mut lines = Vec::new();
    let mut pass = true;
    for problem in [Problem::DominatingSet, Problem::VertexCover] {
        let cache = RepCache::in_memory();
        for family in ["star-of-paths:k,L", "grid-with-pendant-paths:2,k,L"] {
            let mut by_l: Vec<Vec<SweepRow>> = Vec::new();
            for l in [20, 50, 100] {
                let template = family.replace('L', &l.to_string());
                by_l.push(sweep(problem, &template, &ks, &cfg, &cache).expect("valid template"));
            }
            let at50 = &by_l[1];
            let ratios: Vec<f64> = at50.iter().map(|r| r.n_kernel as f64 / r.k as f64).collect();
            let spread = ratios.iter().cloned().fold(f64::MIN, f64::max) / ratios.iter().cloned().fold(f64::MAX, f64::min);
            let independent = (0..ks.len()).all(|i| by_l.iter().all(|rows| rows[i].n_kernel == by_l[0][i].n_kernel));
            let sizes: Vec<usize> = at50.iter().map(|r| r.n_kernel).collect();
            pass &= spread <= 2.0 && independent;
            lines.push(format!("{problem} {family}: kernel sizes {sizes:?}, ratio spread {spread:.2}, L-independent {independent}"));
        }
    }
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(300);
    Verdict { pass, detail: format!("linear kernels ({:.1} s): {}", elapsed.as_secs_f64(), lines.join("; ")) }
}

fn criterion_6() -> Verdict {
    let caps = OracleCaps::default();
    let (mut checks, mut violations) = (0usize, 0usize);
    for labels in 0..=2usize {
        let contexts: Vec<BoundariedGraph> = enumerate_boundaried(4, labels, None, usize::MAX).unwrap().map(|b| b.unwrap()).collect();
        for g in enumerate_boundaried(5, labels, None, usize::MAX).unwrap().map(|b| b.unwrap()) {
            let n = g.n();
            let all = (1u64 << n) - 1;
            let w_size = oracle::min_dominating_set(g.graph(), all);
            // Any minimum dominating set of G works; take the first found.
            let closed: Vec<u64> = g.graph().adjacency_masks().iter().enumerate().map(|(v, m)| m | 1 << v).collect();
            let dom = |mask: u64, closed: &[u64]| (0..closed.len()).filter(|v| mask >> v & 1 == 1).fold(0u64, |a, v| a | closed[v]);
            let min_ds = (0..=all).find(|&m| m.count_ones() as i64 == w_size && dom(m, &closed) == all).unwrap();
            let w = g.boundary().iter().fold(min_ds, |a, &v| a | 1 << v);
            for ctx in &contexts {
                let (glued, heir_g, heir_c) = glue(&g, ctx);
                let gc: Vec<u64> = glued.adjacency_masks().iter().enumerate().map(|(v, m)| m | 1 << v).collect();
                let full = (1u64 << glued.n()) - 1;
                let w_glued = (0..n).filter(|&v| w >> v & 1 == 1).fold(0u64, |a, v| a | 1 << heir_g[v]);
                for s_ctx in 0u64..(1 << ctx.n()) {
                    let s_prime = (0..ctx.n()).filter(|&v| s_ctx >> v & 1 == 1).fold(0u64, |a, v| a | 1 << heir_c[v]);
                    // zeta: fewest vertices of G completing S' to a dominating set.
                    let zeta = (0u64..=all)
                        .filter(|&s| {
                            let sg = (0..n).filter(|&v| s >> v & 1 == 1).fold(0u64, |a, v| a | 1 << heir_g[v]);
                            dom(sg | s_prime, &gc) == full
                        })
                        .map(|s| s.count_ones() as i64)
                        .min();
                    let Some(zeta) = zeta else { continue };
                    checks += 1;
                    let dominated = dom(w_glued | s_prime, &gc) == full;
                    if !dominated || w.count_ones() as i64 > zeta + 2 * labels as i64 {
                        violations += 1;
                    }
                }
            }
        }
    }
    let _ = caps;
    Verdict { pass: violations == 0, detail: format!("domination witness: {checks} feasible contexts, {violations} violations") }
}

fn criterion_7() -> Verdict {
    let caps = OracleCaps { max_edges: 64, ..OracleCaps::default() };
    let (mut graphs, mut checks, mut violations) = (0usize, 0usize, 0usize);
    for b in enumerate_boundaried(6, 0, None, usize::MAX).unwrap() {
        let g = b.unwrap().graph().clone();
        graphs += 1;
        for s in [3u32, 4] {
            let problem = Problem::CycleTransversal { s };
            let (h, _) = sct_preprocess(&g, s);
            for k in -1..=g.m() as i64 + 1 {
                checks += 1;
                let before = decide(&ProblemInstance::new(g.clone(), k, problem), &caps).unwrap();
                let after = decide(&ProblemInstance::new(h.clone(), k, problem), &caps).unwrap();
                if before != after {
                    violations += 1;
                }
            }
        }
    }
    Verdict {
        pass: violations == 0,
        detail: format!("short-cycle preprocessing: {graphs} graphs, {checks} decisions, {violations} violations"),
    }
}

#[test]
fn acceptance_suite() {
    let mut results: Vec<(usize, Verdict)> = Vec::new();
    let (c1, c8) = criteria_1_and_8();
    results.push((1, c1));
    results.push((2, criterion_2()));
    results.push((3, criterion_3()));
    results.push((4, criterion_4()));
    results.push((5, criterion_5()));
    results.push((6, criterion_6()));
    results.push((7, criterion_7()));
    results.push((8, c8));
    for (i, v) in &results {
        println!("criterion {i}: {} {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
    }
    let failed: Vec<usize> = results.iter().filter(|(_, v)| !v.pass).map(|(i, _)| *i).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn signature_sanity_for_soundness_families() {
    // The soundness families stay within every signature's state cap at t = 1.
    let caps = OracleCaps::default();
    let b = BoundariedGraph::with_sequential_labels(Graph::path(5), vec![0, 2, 4]).unwrap();
    for p in all_problems() {
        assert!(signature(p, &b, &caps).is_ok(), "{p}");
    }
}
