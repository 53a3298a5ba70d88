//! Connected-dominating-set families for interval, biconvex and convex
//! bipartite graphs, built from Menger paths between extreme vertices.
//!
//! Class models are inputs: interval representations and (bi)convex orderings
//! are never recognized here, only validated.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::flow::{make_induced, vertex_disjoint_paths};
use crate::graph::{dominates, is_connected_subset, undominated_vertex, Graph, VertexId, VertexSet};

/// Pairwise disjoint connected dominating sets of a host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdsFamily {
    pub sets: Vec<VertexSet>,
}

/// A family that additionally covers every vertex.
pub type CdsPartition = CdsFamily;

impl CdsFamily {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Checks disjointness, connectivity and domination of every set.
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let mut owner = vec![usize::MAX; g.n()];
        for (i, s) in self.sets.iter().enumerate() {
            for v in s.iter() {
                if v >= g.n() {
                    return Err(format!("set {i} contains out-of-range vertex {v}"));
                }
                if owner[v] != usize::MAX {
                    return Err(format!("vertex {v} is in sets {} and {i}", owner[v]));
                }
                owner[v] = i;
            }
            if is_connected_subset(g, s) != Ok(true) {
                return Err(format!("set {i} is empty or disconnected"));
            }
            if let Some(v) = undominated_vertex(g, s) {
                return Err(format!("set {i} does not dominate vertex {v}"));
            }
        }
        Ok(())
    }
}

/// Interval model: vertex `v` is the closed interval `intervals[v]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalModel {
    pub intervals: Vec<(i64, i64)>,
}

impl IntervalModel {
    pub fn new(intervals: Vec<(i64, i64)>) -> Result<Self> {
        if let Some(v) = intervals.iter().position(|&(l, r)| l > r) {
            return Err(Error::InvalidModel(format!("interval {v} has left > right")));
        }
        Ok(IntervalModel { intervals })
    }

    pub fn n(&self) -> usize {
        self.intervals.len()
    }

    /// Intersection graph: `u ~ v` iff the closed intervals overlap.
    pub fn graph(&self) -> Graph {
        let mut order: Vec<VertexId> = (0..self.n()).collect();
        order.sort_by_key(|&v| (self.intervals[v].0, v));
        let mut edges = Vec::new();
        for (i, &u) in order.iter().enumerate() {
            let right = self.intervals[u].1;
            for &v in &order[i + 1..] {
                if self.intervals[v].0 > right {
                    break;
                }
                edges.push((u, v));
            }
        }
        Graph::from_edges(self.n(), edges).expect("interval graph is simple")
    }
}

/// Ordered bags satisfying the three path-decomposition axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathDecomposition {
    pub bags: Vec<VertexSet>,
}

impl PathDecomposition {
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(VertexSet::len)
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// Checks vertex coverage, edge coverage and contiguity.
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let n = g.n();
        let mut first = vec![usize::MAX; n];
        let mut last = vec![0; n];
        let mut count = vec![0; n];
        for (i, bag) in self.bags.iter().enumerate() {
            for v in bag.iter() {
                first[v] = first[v].min(i);
                last[v] = i;
                count[v] += 1;
            }
        }
        if let Some(v) = (0..n).find(|&v| count[v] == 0) {
            return Err(format!("vertex {v} is in no bag"));
        }
        if let Some(v) = (0..n).find(|&v| last[v] - first[v] + 1 != count[v]) {
            return Err(format!("bags of vertex {v} are not contiguous"));
        }
        for (u, v) in g.edges() {
            if first[u].max(first[v]) > last[u].min(last[v]) {
                return Err(format!("edge {u}-{v} is in no bag"));
            }
        }
        Ok(())
    }
}

/// Maximal cliques of an interval graph in sweep order.
///
/// Endpoints are swept left to right with left endpoints before right ones at
/// equal coordinates (intervals are closed); ties broken by vertex id. The
/// active set is emitted as a bag at every right endpoint that directly
/// follows a left endpoint.
pub fn interval_path_decomposition(m: &IntervalModel) -> Result<PathDecomposition> {
    let n = m.n();
    if n == 0 {
        return Err(Error::InvalidModel("no intervals".into()));
    }
    // (coordinate, 0 = left / 1 = right, vertex)
    let mut events: Vec<(i64, u8, VertexId)> = Vec::with_capacity(2 * n);
    for (v, &(l, r)) in m.intervals.iter().enumerate() {
        events.push((l, 0, v));
        events.push((r, 1, v));
    }
    events.sort_unstable();
    let mut active = VertexSet::new(n);
    let mut bags = Vec::new();
    let mut grew = false;
    for (i, &(_, kind, v)) in events.iter().enumerate() {
        if kind == 0 {
            if active.is_empty() && i > 0 {
                return Err(Error::Disconnected);
            }
            active.insert(v);
            grew = true;
        } else {
            if grew {
                bags.push(active.clone());
                grew = false;
            }
            active.remove(v);
        }
    }
    Ok(PathDecomposition { bags })
}

/// `k` disjoint dominating paths of a `k`-connected interval graph.
///
/// Adds a virtual source adjacent to the first bag and a virtual sink
/// adjacent to the last; every source–sink path crosses every bag, and bags
/// are cliques, so each stripped path dominates the graph.
pub fn cds_interval(m: &IntervalModel, k: usize) -> Result<CdsFamily> {
    let pd = interval_path_decomposition(m)?;
    let g = m.graph();
    let n = g.n();
    let (s, t) = (n, n + 1);
    let mut edges: Vec<(VertexId, VertexId)> = g.edges().collect();
    edges.extend(pd.bags[0].iter().map(|v| (s, v)));
    edges.extend(pd.bags[pd.bags.len() - 1].iter().map(|v| (t, v)));
    let augmented = Graph::from_edges(n + 2, edges).expect("virtual terminals add fresh edges");
    let fam = vertex_disjoint_paths(&augmented, s, t, k)?;
    if fam.paths.len() < k {
        return Err(Error::InsufficientConnectivity {
            wanted: k,
            achieved: fam.paths.len(),
        });
    }
    let sets = fam
        .paths
        .iter()
        .map(|p| VertexSet::from_iter(n, p[1..p.len() - 1].iter().copied()))
        .collect();
    checked(&g, CdsFamily { sets })
}

/// Bipartite graph with sides `A = 0..na` and `B = na..na+nb` in memory.
/// `neighborhoods[j]` is the A-index range adjacent to `b_j`, so a convex
/// ordering of A is the index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexModel {
    pub na: usize,
    pub nb: usize,
    pub neighborhoods: Vec<Range<usize>>,
}

impl ConvexModel {
    pub fn new(na: usize, nb: usize, neighborhoods: Vec<Range<usize>>) -> Result<Self> {
        if neighborhoods.len() != nb {
            return Err(Error::InvalidModel(format!(
                "{} neighborhoods for {nb} B-vertices",
                neighborhoods.len()
            )));
        }
        if let Some(j) = neighborhoods.iter().position(|r| r.end > na || r.start > r.end) {
            return Err(Error::InvalidModel(format!("neighborhood of b{} exceeds A", j + 1)));
        }
        Ok(ConvexModel { na, nb, neighborhoods })
    }

    /// From an edge list over (A index, B index); fails unless every
    /// B-neighborhood is consecutive.
    pub fn from_edges(na: usize, nb: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut lists = vec![Vec::new(); nb];
        for &(a, b) in edges {
            if a >= na || b >= nb {
                return Err(Error::InvalidModel(format!("edge a{} b{} out of range", a + 1, b + 1)));
            }
            lists[b].push(a);
        }
        let mut ranges = Vec::with_capacity(nb);
        for (b, mut list) in lists.into_iter().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidModel(format!("duplicate edge at b{}", b + 1)));
            }
            match (list.first(), list.last()) {
                (Some(&lo), Some(&hi)) if hi - lo + 1 != list.len() => {
                    return Err(Error::InvalidModel(format!(
                        "neighborhood of b{} is not consecutive",
                        b + 1
                    )))
                }
                (Some(&lo), Some(&hi)) => ranges.push(lo..hi + 1),
                _ => ranges.push(0..0),
            }
        }
        ConvexModel::new(na, nb, ranges)
    }

    pub fn n(&self) -> usize {
        self.na + self.nb
    }

    pub fn a(&self, i: usize) -> VertexId {
        i
    }

    pub fn b(&self, j: usize) -> VertexId {
        self.na + j
    }

    /// Edges as (A index, B index), sorted.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = self
            .neighborhoods
            .iter()
            .enumerate()
            .flat_map(|(b, r)| r.clone().map(move |a| (a, b)))
            .collect();
        e.sort_unstable();
        e
    }

    pub fn graph(&self) -> Graph {
        Graph::from_edges(self.n(), self.edge_list().into_iter().map(|(a, b)| (a, self.na + b)))
            .expect("bipartite model is simple")
    }
}

/// Convex model whose A-vertices also have consecutive B-neighborhoods.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiconvexModel {
    pub convex: ConvexModel,
}

impl BiconvexModel {
    pub fn new(convex: ConvexModel) -> Result<Self> {
        let mut lists = vec![Vec::new(); convex.na];
        for (a, b) in convex.edge_list() {
            lists[a].push(b);
        }
        for (a, list) in lists.iter_mut().enumerate() {
            list.sort_unstable();
            if let (Some(&lo), Some(&hi)) = (list.first(), list.last()) {
                if hi - lo + 1 != list.len() {
                    return Err(Error::InvalidModel(format!(
                        "neighborhood of a{} is not consecutive",
                        a + 1
                    )));
                }
            }
        }
        Ok(BiconvexModel { convex })
    }

    pub fn graph(&self) -> Graph {
        self.convex.graph()
    }
}

/// Output of [`cds_biconvex_detailed`].
#[derive(Clone, Debug)]
pub struct BiconvexConstruction {
    /// Induced `a_1`–`a_nA` paths with both endpoints removed, before augmentation.
    pub stripped_paths: Vec<Vec<VertexId>>,
    pub family: CdsFamily,
}

/// `k` disjoint connected dominating sets of a `k`-connected biconvex graph.
pub fn cds_biconvex(m: &BiconvexModel, k: usize) -> Result<CdsFamily> {
    cds_biconvex_detailed(m, k).map(|c| c.family)
}

pub fn cds_biconvex_detailed(m: &BiconvexModel, k: usize) -> Result<BiconvexConstruction> {
    let cm = &m.convex;
    if cm.na < 2 || cm.nb == 0 {
        return Err(Error::InvalidModel(
            "need at least two A-vertices and one B-vertex".into(),
        ));
    }
    let g = cm.graph();
    let n = g.n();
    let paths = induced_menger_paths(&g, cm.a(0), cm.a(cm.na - 1), k)?;
    let stripped: Vec<Vec<VertexId>> = paths.iter().map(|p| p[1..p.len() - 1].to_vec()).collect();

    let mut used = VertexSet::new(n);
    let mut sets: Vec<VertexSet> = stripped
        .iter()
        .map(|p| VertexSet::from_iter(n, p.iter().copied()))
        .collect();
    for s in &sets {
        used.union_with(s);
    }
    let ends = [(cm.b(0), "b1"), (cm.b(cm.nb - 1), "the last B-vertex")];
    let sees = |set: &VertexSet, b: VertexId| g.neighbors(b).iter().any(|&a| set.contains(a));
    let shared = |a: VertexId| ends.iter().all(|&(b, _)| g.has_edge(a, b));
    // A vertex adjacent to both ends is spent only on a set lacking both,
    // otherwise it could starve a later set of its single choice.
    for set in sets.iter_mut() {
        if ends.iter().any(|&(b, _)| sees(set, b)) {
            continue;
        }
        if let Some(pick) = g
            .neighbors(ends[0].0)
            .iter()
            .copied()
            .find(|&a| !used.contains(a) && shared(a))
        {
            used.insert(pick);
            set.insert(pick);
        }
    }
    for set in sets.iter_mut() {
        for &(b, side) in &ends {
            if sees(set, b) {
                continue;
            }
            let free = || g.neighbors(b).iter().copied().filter(|&a| !used.contains(a));
            let pick = free()
                .find(|&a| !shared(a))
                .or_else(|| free().next())
                .ok_or(Error::AugmentationExhausted { side })?;
            used.insert(pick);
            set.insert(pick);
        }
    }
    let family = checked(&g, CdsFamily { sets })?;
    Ok(BiconvexConstruction {
        stripped_paths: stripped,
        family,
    })
}

/// Output of [`cds_convex_detailed`].
#[derive(Clone, Debug)]
pub struct ConvexConstruction {
    /// Induced `a_1`–`a_ℓ` paths including both endpoints.
    pub paths: Vec<Vec<VertexId>>,
    pub family: CdsFamily,
}

/// `k` disjoint connected dominating sets of a `4k`-connected convex
/// bipartite graph. Every A-vertex is covered; B-vertices off the paths are
/// left for [`extend_to_partition`].
pub fn cds_convex(m: &ConvexModel, k: usize) -> Result<CdsFamily> {
    cds_convex_detailed(m, k).map(|c| c.family)
}

/// Induced paths dominate A; the A-vertices missed by every path are dealt
/// round-robin in A-order so each share dominates B.
pub fn cds_convex_detailed(m: &ConvexModel, k: usize) -> Result<ConvexConstruction> {
    if m.na < 2 {
        return Err(Error::InvalidModel("need at least two A-vertices".into()));
    }
    let g = m.graph();
    let n = g.n();
    let (first, last) = (m.a(0), m.a(m.na - 1));
    let paths = induced_menger_paths(&g, first, last, k)?;
    let mut on_path = VertexSet::new(n);
    let mut sets: Vec<VertexSet> = Vec::with_capacity(k);
    for p in &paths {
        on_path.union_with(&VertexSet::from_iter(n, p.iter().copied()));
        sets.push(VertexSet::from_iter(n, p[1..p.len() - 1].iter().copied()));
    }
    let spare = (0..m.na).map(|i| m.a(i)).filter(|&a| !on_path.contains(a));
    for (j, a) in spare.enumerate() {
        sets[j % k].insert(a);
    }
    sets[0].insert(first);
    sets[0].insert(last);
    let family = checked(&g, CdsFamily { sets })?;
    Ok(ConvexConstruction { paths, family })
}

fn induced_menger_paths(g: &Graph, s: VertexId, t: VertexId, k: usize) -> Result<Vec<Vec<VertexId>>> {
    let fam = vertex_disjoint_paths(g, s, t, k)?;
    if fam.paths.len() < k {
        return Err(Error::InsufficientConnectivity {
            wanted: k,
            achieved: fam.paths.len(),
        });
    }
    Ok(fam.paths.iter().map(|p| make_induced(g, p)).collect())
}

fn checked(g: &Graph, fam: CdsFamily) -> Result<CdsFamily> {
    if cfg!(debug_assertions) {
        if let Err(msg) = fam.validate(g) {
            return Err(Error::InvariantBroken(msg));
        }
    }
    Ok(fam)
}

/// Appends every uncovered vertex to the lowest-index input set it is
/// adjacent to.
pub fn extend_to_partition(g: &Graph, fam: &CdsFamily) -> Result<CdsPartition> {
    let mut sets = fam.sets.clone();
    let mut covered = VertexSet::new(g.n());
    for s in &sets {
        covered.union_with(s);
    }
    for v in 0..g.n() {
        if covered.contains(v) {
            continue;
        }
        let i = fam
            .sets
            .iter()
            .position(|s| g.neighbors(v).iter().any(|&w| s.contains(w)))
            .ok_or(Error::NotDominating(v))?;
        sets[i].insert(v);
    }
    debug_assert!(sets.iter().all(|s| dominates(g, s)));
    Ok(CdsFamily { sets })
}
