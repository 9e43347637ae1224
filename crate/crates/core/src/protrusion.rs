//! Protrusions: small-boundary, small-treewidth vertex sets, the `X_R`
//! construction, splitting an oversized protrusion, and partitioning a
//! protrusion so that marked vertices sit on part boundaries.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::{Graph, Vertex, VertexSet};
use crate::treewidth::{decide_tw_leq, make_nice, NiceTreeDecomposition, TreeDecomposition, TwConfig, TwError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProtrusionError {
    #[error("split target c must be positive")]
    NonPositiveTarget,
    #[error("protrusion of size {size} is not larger than c = {c}")]
    TooSmall { size: usize, c: usize },
    #[error("boundary of size {boundary} already exceeds c = {c}")]
    BoundaryTooLarge { boundary: usize, c: usize },
    #[error("marked vertex {0} is outside the protrusion")]
    MarkOutside(Vertex),
    #[error(transparent)]
    Treewidth(#[from] TwError),
}

/// A vertex set with its boundary and a decomposition of `G[X]` whose bags
/// hold host vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Protrusion {
    pub x: VertexSet,
    pub boundary: VertexSet,
    pub witness: TreeDecomposition,
}

impl Protrusion {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn width(&self) -> usize {
        self.witness.width()
    }

    /// The witness translated to ids of `G[X]` (`i` is the `i`-th smallest vertex of `X`).
    pub fn local_witness(&self) -> TreeDecomposition {
        let index: BTreeMap<Vertex, usize> = self.x.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        TreeDecomposition {
            bags: self.witness.bags.iter().map(|b| b.iter().map(|v| index[v]).collect()).collect(),
            parent: self.witness.parent.clone(),
        }
    }

    /// Checks the witness against `G[X]` and the stated boundary against `g`.
    pub fn check(&self, g: &Graph) -> bool {
        let (h, _) = g.induced_set(&self.x);
        g.boundary_of(&self.x) == self.boundary && self.local_witness().validate(&h).is_empty()
    }
}

pub fn boundary_of(g: &Graph, s: &VertexSet) -> VertexSet {
    g.boundary_of(s)
}

fn globalize(td: TreeDecomposition, new_to_old: &[Vertex]) -> TreeDecomposition {
    TreeDecomposition {
        bags: td.bags.into_iter().map(|b| b.into_iter().map(|v| new_to_old[v]).collect()).collect(),
        parent: td.parent,
    }
}

/// `Some` iff `|∂(X)| <= t` and `tw(G[X]) <= t`.
pub fn is_protrusion(g: &Graph, x: &VertexSet, t: usize, cfg: &TwConfig) -> Result<Option<Protrusion>, TwError> {
    let boundary = g.boundary_of(x);
    if boundary.len() > t {
        return Ok(None);
    }
    let (h, relabel) = g.induced_set(x);
    Ok(decide_tw_leq(&h, t, cfg)?.map(|td| Protrusion {
        x: x.clone(),
        boundary,
        witness: globalize(td, &relabel.new_to_old),
    }))
}

#[derive(Debug, Clone)]
pub struct XrResult {
    /// `X_R` together with a witness of width at most `2|R|`.
    pub protrusion: Protrusion,
    /// Components skipped because their treewidth could not be settled within the cap.
    pub excluded: Vec<Vec<Vertex>>,
    pub warnings: Vec<String>,
}

/// `R` plus every component of `G - R` with treewidth at most `|R|`.
pub fn compute_xr(g: &Graph, r: &VertexSet, cfg: &TwConfig) -> XrResult {
    let mut removed = vec![false; g.n()];
    for &v in r {
        removed[v] = true;
    }
    let rv: Vec<Vertex> = r.iter().copied().collect();
    let t = r.len();
    let mut x = r.clone();
    let mut bags: Vec<Vec<Vertex>> = vec![rv.clone()];
    let mut parent: Vec<Option<usize>> = vec![None];
    let mut excluded = Vec::new();
    let mut warnings = Vec::new();
    for comp in g.components_avoiding(&removed) {
        let (h, relabel) = g.induced(&comp);
        match decide_tw_leq(&h, t, cfg) {
            Ok(Some(td)) => {
                let shift = bags.len();
                for (i, bag) in td.bags.iter().enumerate() {
                    let mut b: Vec<Vertex> = bag.iter().map(|&v| relabel.new_to_old[v]).chain(rv.iter().copied()).collect();
                    b.sort_unstable();
                    bags.push(b);
                    parent.push(Some(td.parent[i].map_or(0, |p| p + shift)));
                }
                x.extend(comp);
            }
            Ok(None) => {}
            Err(e) => {
                warnings.push(format!(
                    "component of {} vertices next to R={:?} excluded: {e}",
                    comp.len(),
                    rv
                ));
                excluded.push(comp);
            }
        }
    }
    let boundary = g.boundary_of(&x);
    XrResult {
        protrusion: Protrusion { x, boundary, witness: TreeDecomposition { bags, parent } },
        excluded,
        warnings,
    }
}

fn nice_local(g: &Graph, p: &Protrusion) -> Result<(Graph, Vec<Vertex>, NiceTreeDecomposition), TwError> {
    let (h, relabel) = g.induced_set(&p.x);
    let td = p.local_witness();
    let root = td.root().unwrap_or(0);
    let nice = make_nice(&h, &td, root)?;
    Ok((h, relabel.new_to_old, nice))
}

/// A protrusion `Y ⊆ X` with `c < |Y| <= 2c`, `|∂(Y)| <= 2t+1` and a witness
/// of width at most `2t`, where `t` bounds both `|∂(X)|` and the width of `P`.
pub fn split_protrusion(g: &Graph, p: &Protrusion, c: usize) -> Result<Protrusion, ProtrusionError> {
    split_candidates(g, p, c).map(|mut pieces| pieces.swap_remove(0))
}

/// Every piece [`split_protrusion`] may return, deepest cut first. Each comes
/// from a decomposition node above `c` whose children are all at most `c`.
pub fn split_candidates(g: &Graph, p: &Protrusion, c: usize) -> Result<Vec<Protrusion>, ProtrusionError> {
    if c == 0 {
        return Err(ProtrusionError::NonPositiveTarget);
    }
    if p.len() <= c {
        return Err(ProtrusionError::TooSmall { size: p.len(), c });
    }
    if p.len() <= 2 * c {
        return Ok(vec![p.clone()]);
    }
    if p.boundary.len() > c {
        return Err(ProtrusionError::BoundaryTooLarge { boundary: p.boundary.len(), c });
    }
    let (_, to_global, nice) = nice_local(g, p)?;
    let dx: Vec<Vertex> = p.boundary.iter().copied().collect();
    let counts = subtree_counts(&nice, &to_global, &dx);
    let depth = nice.depths();
    let mut nodes: Vec<usize> = (0..nice.kinds.len())
        .filter(|&x| counts[x] > c && nice.children[x].iter().all(|&ch| counts[ch] <= c))
        .collect();
    nodes.sort_by(|&a, &b| depth[b].cmp(&depth[a]).then(a.cmp(&b)));
    let mut seen = BTreeSet::new();
    let mut pieces = Vec::new();
    for b in nodes {
        let piece = piece_at(g, &nice, &to_global, &dx, b);
        if seen.insert(piece.x.clone()) {
            pieces.push(piece);
        }
    }
    Ok(pieces)
}

/// `∂(X)` plus every vertex in the subtree of `b`, with the subtree as witness.
fn piece_at(g: &Graph, nice: &NiceTreeDecomposition, to_global: &[Vertex], dx: &[Vertex], b: usize) -> Protrusion {
    let subtree = subtree_nodes(nice, b);
    let mut y: VertexSet = dx.iter().copied().collect();
    for &x in &subtree {
        y.extend(nice.bag(x).iter().map(|&v| to_global[v]));
    }
    let index: BTreeMap<usize, usize> = subtree.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let bags = subtree
        .iter()
        .map(|&x| {
            let mut bag: Vec<Vertex> = nice.bag(x).iter().map(|&v| to_global[v]).chain(dx.iter().copied()).collect();
            bag.sort_unstable();
            bag.dedup();
            bag
        })
        .collect();
    let parent = subtree
        .iter()
        .map(|&x| if x == b { None } else { nice.td.parent[x].map(|p| index[&p]) })
        .collect();
    let boundary = g.boundary_of(&y);
    Protrusion { x: y, boundary, witness: TreeDecomposition { bags, parent } }
}

/// `|∂ ∪ V(T_x)|` for every node `x`.
fn subtree_counts(nice: &NiceTreeDecomposition, to_global: &[Vertex], dx: &[Vertex]) -> Vec<usize> {
    let mut sets: Vec<Option<BTreeSet<Vertex>>> = vec![None; nice.kinds.len()];
    let mut counts = vec![0; nice.kinds.len()];
    for x in nice.postorder() {
        let mut s: BTreeSet<Vertex> = nice.bag(x).iter().map(|&v| to_global[v]).collect();
        for &ch in &nice.children[x] {
            let child = sets[ch].take().unwrap();
            if s.len() < child.len() {
                let mut big = child;
                big.extend(s);
                s = big;
            } else {
                s.extend(child);
            }
        }
        counts[x] = s.len() + dx.iter().filter(|v| !s.contains(v)).count();
        sets[x] = Some(s);
    }
    counts
}

fn subtree_nodes(nice: &NiceTreeDecomposition, top: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut stack = vec![top];
    while let Some(x) = stack.pop() {
        out.push(x);
        stack.extend(nice.children[x].iter().copied());
    }
    out.sort_unstable();
    out
}

#[derive(Debug, Clone)]
pub struct Partition {
    pub parts: Vec<Protrusion>,
    /// Set when the part count exceeds `4(|Z|+1)`.
    pub oversized: bool,
}

/// Parts covering `X`, each a `(4t+2)`-protrusion, with every marked vertex of
/// a part on that part's boundary.
///
/// Per component of `G[X]`: nice decomposition, `∂(X)` added to every bag,
/// the node below the forget node of each marked vertex is marked and the
/// marks are closed under lowest common ancestors. Vertices outside all
/// marked bags are grouped by the region of the tree between marks; each
/// group plus its neighbourhood is a part. Remaining marked-bag vertices
/// become singleton parts.
pub fn partition_protrusion(g: &Graph, p: &Protrusion, z: &VertexSet, cfg: &TwConfig) -> Result<Partition, ProtrusionError> {
    if let Some(&bad) = z.iter().find(|v| !p.x.contains(v)) {
        return Err(ProtrusionError::MarkOutside(bad));
    }
    if z.is_empty() {
        return Ok(Partition { parts: vec![p.clone()], oversized: false });
    }
    let dx: BTreeSet<Vertex> = p.boundary.clone();
    let (h, relabel) = g.induced_set(&p.x);
    let local_witness = p.local_witness();
    let mut parts = Vec::new();
    let mut covered: VertexSet = VertexSet::new();
    for comp in h.components() {
        let (k, krel) = h.induced(&comp);
        let to_global: Vec<Vertex> = krel.new_to_old.iter().map(|&v| relabel.new_to_old[v]).collect();
        // restrict the witness to this component
        let td = TreeDecomposition {
            bags: local_witness
                .bags
                .iter()
                .map(|b| b.iter().filter_map(|&v| krel.old_to_new[v]).collect())
                .collect(),
            parent: local_witness.parent.clone(),
        };
        let td = if td.validate(&k).is_empty() {
            td
        } else {
            decide_tw_leq(&k, k.n(), cfg)?.expect("n-1 always suffices")
        };
        let nice = make_nice(&k, &td, td.root().unwrap_or(0))?;
        let zk: Vec<usize> = (0..k.n()).filter(|&v| z.contains(&to_global[v])).collect();
        let mut marks: BTreeSet<usize> = zk.iter().map(|&v| below_forget(&nice, v)).collect();
        loop {
            close_under_lca(&nice, &mut marks);
            let groups = regions(&nice, &marks, &to_global, &dx, g);
            // a marked vertex swallowed by one group must be cut off from it
            let mut repaired = false;
            for grp in &groups {
                for &zv in z.iter().filter(|v| grp.q.contains(v)) {
                    if g.neighbors(zv).iter().all(|w| grp.q.contains(w)) {
                        let inside = g.neighbors(zv).iter().copied().find(|w| grp.interior.contains(w));
                        if let Some(u) = inside {
                            let lu = to_global.iter().position(|&x| x == u).unwrap();
                            marks.insert(below_forget(&nice, lu));
                            repaired = true;
                            break;
                        }
                    }
                }
                if repaired {
                    break;
                }
            }
            if repaired {
                continue;
            }
            for grp in groups {
                covered.extend(grp.q.iter().copied());
                let boundary = g.boundary_of(&grp.q);
                parts.push(Protrusion { x: grp.q, boundary, witness: grp.witness });
            }
            break;
        }
    }
    for &v in &p.x {
        if !covered.contains(&v) {
            let single: VertexSet = [v].into_iter().collect();
            parts.push(Protrusion {
                boundary: g.boundary_of(&single),
                witness: TreeDecomposition::single_bag(vec![v]),
                x: single,
            });
        }
    }
    let oversized = parts.len() > 4 * (z.len() + 1);
    Ok(Partition { parts, oversized })
}

/// Child of the node that forgets `v`: the topmost node whose bag holds `v`.
fn below_forget(nice: &NiceTreeDecomposition, v: Vertex) -> usize {
    let f = nice.forget_node(v).expect("every vertex is forgotten below an empty root");
    nice.children[f][0]
}

fn close_under_lca(nice: &NiceTreeDecomposition, marks: &mut BTreeSet<usize>) {
    let depth = nice.depths();
    let lca = |mut a: usize, mut b: usize| {
        while depth[a] > depth[b] {
            a = nice.td.parent[a].unwrap();
        }
        while depth[b] > depth[a] {
            b = nice.td.parent[b].unwrap();
        }
        while a != b {
            a = nice.td.parent[a].unwrap();
            b = nice.td.parent[b].unwrap();
        }
        a
    };
    loop {
        let list: Vec<usize> = marks.iter().copied().collect();
        let mut added = false;
        for i in 0..list.len() {
            for j in i + 1..list.len() {
                if marks.insert(lca(list[i], list[j])) {
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
}

struct Group {
    interior: VertexSet,
    q: VertexSet,
    witness: TreeDecomposition,
}

/// Groups unmarked vertices by the region of `T - marks` they live in.
fn regions(
    nice: &NiceTreeDecomposition,
    marks: &BTreeSet<usize>,
    to_global: &[Vertex],
    dx: &BTreeSet<Vertex>,
    g: &Graph,
) -> Vec<Group> {
    let nodes = nice.kinds.len();
    let mut in_marked: VertexSet = dx.clone();
    for &m in marks {
        in_marked.extend(nice.bag(m).iter().map(|&v| to_global[v]));
    }
    let mut region = vec![usize::MAX; nodes];
    let mut count = 0;
    for start in 0..nodes {
        if marks.contains(&start) || region[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        region[start] = count;
        while let Some(x) = stack.pop() {
            let nbrs = nice.children[x].iter().copied().chain(nice.td.parent[x]);
            for y in nbrs {
                if !marks.contains(&y) && region[y] == usize::MAX {
                    region[y] = count;
                    stack.push(y);
                }
            }
        }
        count += 1;
    }
    let mut interiors: Vec<VertexSet> = vec![VertexSet::new(); count];
    for x in 0..nodes {
        if region[x] == usize::MAX {
            continue;
        }
        for &v in nice.bag(x) {
            let gv = to_global[v];
            if !in_marked.contains(&gv) {
                interiors[region[x]].insert(gv);
            }
        }
    }
    let mut out = Vec::new();
    for (rid, interior) in interiors.into_iter().enumerate() {
        if interior.is_empty() {
            continue;
        }
        let mut q = interior.clone();
        for &v in &interior {
            q.extend(g.neighbors(v).iter().copied());
        }
        // region nodes plus the marked nodes touching it
        let mut sub: Vec<usize> = (0..nodes).filter(|&x| region[x] == rid).collect();
        for x in sub.clone() {
            for y in nice.children[x].iter().copied().chain(nice.td.parent[x]) {
                if marks.contains(&y) {
                    sub.push(y);
                }
            }
        }
        sub.sort_unstable();
        sub.dedup();
        let index: BTreeMap<usize, usize> = sub.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let bags = sub
            .iter()
            .map(|&x| {
                let mut bag: Vec<Vertex> = nice
                    .bag(x)
                    .iter()
                    .map(|&v| to_global[v])
                    .chain(dx.iter().copied())
                    .filter(|v| q.contains(v))
                    .collect();
                bag.sort_unstable();
                bag.dedup();
                bag
            })
            .collect();
        let parent = sub.iter().map(|&x| nice.td.parent[x].and_then(|p| index.get(&p).copied())).collect();
        out.push(Group { interior, q, witness: TreeDecomposition { bags, parent } });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate, FamilySpec};

    fn set(vs: impl IntoIterator<Item = Vertex>) -> VertexSet {
        vs.into_iter().collect()
    }

    fn cfg() -> TwConfig {
        TwConfig::default()
    }

    #[test]
    fn boundary_examples() {
        assert_eq!(boundary_of(&Graph::path(3), &set([0, 1])), set([1]));
        assert_eq!(boundary_of(&Graph::path(3), &set(0..3)), set([]));
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(boundary_of(&star, &set([0])), set([0]));
    }

    #[test]
    fn is_protrusion_examples() {
        // K4 with a pendant path of 6 vertices on vertex 0
        let mut g = Graph::complete(4);
        let mut prev = 0;
        for _ in 0..6 {
            let v = g.add_vertex();
            g.add_edge(prev, v).unwrap();
            prev = v;
        }
        let path = set([0, 4, 5, 6, 7, 8, 9]);
        let p = is_protrusion(&g, &path, 1, &cfg()).unwrap().unwrap();
        assert_eq!(p.boundary, set([0]));
        assert!(p.check(&g));

        let mut g = Graph::complete(5);
        let v = g.add_vertex();
        g.add_edge(0, v).unwrap();
        assert!(is_protrusion(&g, &set(0..5), 3, &cfg()).unwrap().is_none());

        let tree = generate(&FamilySpec::StarOfPaths { arms: 3, length: 3 }).unwrap();
        let p = is_protrusion(&tree, &set(0..tree.n()), 1, &cfg()).unwrap().unwrap();
        assert!(p.boundary.is_empty());
    }

    #[test]
    fn xr_examples() {
        let p10 = Graph::path(10);
        let xr = compute_xr(&p10, &set([4]), &cfg());
        assert_eq!(xr.protrusion.x, set(0..10));
        assert!(xr.protrusion.check(&p10));

        let mut g = Graph::complete(5);
        let mut prev = 0;
        for _ in 0..3 {
            let v = g.add_vertex();
            g.add_edge(prev, v).unwrap();
            prev = v;
        }
        let xr = compute_xr(&g, &set([0]), &cfg());
        assert_eq!(xr.protrusion.x, set([0, 5, 6, 7]));
        assert!(xr.protrusion.width() <= 2);

        let mut g = Graph::path(3);
        g.add_vertex();
        let xr = compute_xr(&g, &set([]), &cfg());
        assert_eq!(xr.protrusion.x, set([3]));
    }

    #[test]
    fn split_candidates_all_meet_the_contract() {
        let g = generate(&FamilySpec::StarOfPaths { arms: 3, length: 12 }).unwrap();
        let p = compute_xr(&g, &set([0]), &cfg()).protrusion;
        let pieces = split_candidates(&g, &p, 5).unwrap();
        assert!(pieces.len() > 1);
        assert_eq!(pieces[0], split_protrusion(&g, &p, 5).unwrap());
        for y in &pieces {
            assert!(5 < y.len() && y.len() <= 10 && y.boundary.len() <= 3 && y.width() <= 2);
            assert!(y.check(&g));
        }
    }

    #[test]
    fn xr_excludes_oversized_components_with_warning() {
        let grid = generate(&FamilySpec::Grid { rows: 5, cols: 5 }).unwrap();
        let g = grid.disjoint_union(&Graph::new(4));
        let r = set(25..29);
        let xr = compute_xr(&g, &r, &TwConfig { exact_cap: 4 });
        assert_eq!(xr.protrusion.x, r);
        assert_eq!(xr.excluded, vec![(0..25).collect::<Vec<_>>()]);
        assert_eq!(xr.warnings.len(), 1);
    }

    fn pendant_path(len: usize) -> (Graph, Protrusion) {
        let mut g = Graph::complete(4);
        let mut prev = 0;
        let mut x = set([0]);
        for _ in 0..len - 1 {
            let v = g.add_vertex();
            g.add_edge(prev, v).unwrap();
            x.insert(v);
            prev = v;
        }
        let p = is_protrusion(&g, &x, 1, &cfg()).unwrap().unwrap();
        (g, p)
    }

    #[test]
    fn split_examples() {
        let (g, p) = pendant_path(20);
        let y = split_protrusion(&g, &p, 5).unwrap();
        assert!(y.len() > 5 && y.len() <= 10, "{}", y.len());
        assert!(y.boundary.len() <= 3);
        assert!(y.check(&g));
        assert!(is_protrusion(&g, &y.x, 3, &cfg()).unwrap().is_some());

        let (g, p) = pendant_path(7);
        assert_eq!(split_protrusion(&g, &p, 5).unwrap(), p);
        assert_eq!(split_protrusion(&g, &p, 0), Err(ProtrusionError::NonPositiveTarget));
    }

    fn check_partition(g: &Graph, p: &Protrusion, z: &VertexSet, t: usize) {
        let part = partition_protrusion(g, p, z, &cfg()).unwrap();
        let mut union = VertexSet::new();
        for q in &part.parts {
            union.extend(q.x.iter().copied());
            assert!(q.boundary.len() <= 4 * t + 2, "boundary {:?}", q.boundary);
            assert!(q.check(g));
            assert!(q.width() <= 4 * t + 2);
            for v in z.intersection(&q.x) {
                assert!(q.boundary.contains(v), "marked {v} inside {:?}", q.x);
            }
        }
        assert_eq!(union, p.x);
    }

    #[test]
    fn partition_examples() {
        let (g, p) = pendant_path(10);
        let part = partition_protrusion(&g, &p, &set([]), &cfg()).unwrap();
        assert_eq!(part.parts, vec![p.clone()]);
        let z = set([p.x.iter().copied().nth(5).unwrap()]);
        check_partition(&g, &p, &z, 1);
        check_partition(&g, &p, &p.x.clone(), 1);
    }

    #[test]
    fn partition_cuts_off_pendant_marks() {
        // marked leaf whose only neighbour would otherwise swallow it
        let (g, p) = pendant_path(12);
        let last = *p.x.iter().max().unwrap();
        check_partition(&g, &p, &set([last]), 1);
        let mid = p.x.iter().copied().nth(6).unwrap();
        check_partition(&g, &p, &set([last, mid]), 1);
    }
}
