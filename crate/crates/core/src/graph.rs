//! Undirected simple graphs over dense vertex ids, plus the connectivity and
//! domination queries everything else is built on.
//!
//! All traversals visit neighbors in ascending id order, so every output is a
//! deterministic function of the input graph.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::flow;

pub type VertexId = usize;

/// A subset of `[0, n)` with O(1) membership and cardinality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: FixedBitSet,
    len: usize,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet {
            bits: FixedBitSet::with_capacity(universe),
            len: 0,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        VertexSet { bits, len: universe }
    }

    /// Panics if a member is outside the universe.
    pub fn from_iter<I: IntoIterator<Item = VertexId>>(universe: usize, members: I) -> Self {
        let mut s = VertexSet::new(universe);
        for v in members {
            s.insert(v);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v < self.bits.len() && self.bits.contains(v)
    }

    /// Returns true if `v` was not already a member.
    pub fn insert(&mut self, v: VertexId) -> bool {
        let fresh = !self.bits.put(v);
        if fresh {
            self.len += 1;
        }
        fresh
    }

    /// Returns true if `v` was a member.
    pub fn remove(&mut self, v: VertexId) -> bool {
        if self.contains(v) {
            self.bits.set(v, false);
            self.len -= 1;
            true
        } else {
            false
        }
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.bits.ones()
    }

    pub fn first(&self) -> Option<VertexId> {
        self.bits.minimum()
    }

    pub fn to_vec(&self) -> Vec<VertexId> {
        self.iter().collect()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.bits.union_with(&other.bits);
        self.len = self.bits.count_ones(..);
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Undirected simple graph. Adjacency lists are sorted and symmetric.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
    m: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
            m += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph { adj, m })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("complete graph is simple")
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is simple")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Edges with `u < v`, in ascending lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    /// Induced subgraph on `keep` (ascending). Returns the subgraph and the
    /// map from new ids to old ids.
    pub fn induced(&self, keep: &VertexSet) -> (Graph, Vec<VertexId>) {
        let old_of: Vec<VertexId> = keep.to_vec();
        let mut new_of = vec![usize::MAX; self.n()];
        for (i, &v) in old_of.iter().enumerate() {
            new_of[v] = i;
        }
        let mut adj = vec![Vec::new(); old_of.len()];
        let mut m2 = 0;
        for (i, &v) in old_of.iter().enumerate() {
            for &w in &self.adj[v] {
                if keep.contains(w) {
                    adj[i].push(new_of[w]);
                    if w > v {
                        m2 += 1;
                    }
                }
            }
        }
        (Graph { adj, m: m2 }, old_of)
    }

    /// True iff the whole graph is connected (the empty graph counts as connected).
    pub fn is_connected(&self) -> bool {
        self.n() == 0 || bfs_order(self, &VertexSet::full(self.n()), 0).len() == self.n()
    }
}

/// BFS order of the component of `root` inside `G[s]`.
fn bfs_order(g: &Graph, s: &VertexSet, root: VertexId) -> Vec<VertexId> {
    let mut seen = VertexSet::new(g.n());
    let mut order = vec![root];
    seen.insert(root);
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &w in g.neighbors(u) {
            if s.contains(w) && seen.insert(w) {
                order.push(w);
            }
        }
    }
    order
}

fn check_members(g: &Graph, s: &VertexSet) -> Result<()> {
    match s.iter().find(|&v| v >= g.n()) {
        Some(v) => Err(Error::VertexOutOfRange { vertex: v, n: g.n() }),
        None => Ok(()),
    }
}

/// Whether `G[s]` is connected.
pub fn is_connected_subset(g: &Graph, s: &VertexSet) -> Result<bool> {
    check_members(g, s)?;
    let root = s.first().ok_or(Error::EmptySubset)?;
    Ok(bfs_order(g, s, root).len() == s.len())
}

/// Closed-neighborhood domination: every vertex is in `s` or adjacent to it.
pub fn dominates(g: &Graph, s: &VertexSet) -> bool {
    (0..g.n()).all(|v| s.contains(v) || g.neighbors(v).iter().any(|&w| s.contains(w)))
}

/// First vertex not dominated by `s`, if any.
pub fn undominated_vertex(g: &Graph, s: &VertexSet) -> Option<VertexId> {
    (0..g.n()).find(|&v| !s.contains(v) && !g.neighbors(v).iter().any(|&w| s.contains(w)))
}

/// N(s): vertices outside `s` with a neighbor in `s`.
pub fn open_neighborhood(g: &Graph, s: &VertexSet) -> VertexSet {
    let mut out = VertexSet::new(g.n());
    for v in s.iter() {
        for &w in g.neighbors(v) {
            if !s.contains(w) {
                out.insert(w);
            }
        }
    }
    out
}

/// BFS spanning tree of `G[s]` rooted at the smallest member, as
/// `(parent, child)` pairs in discovery order.
pub fn spanning_tree(g: &Graph, s: &VertexSet) -> Result<Vec<(VertexId, VertexId)>> {
    check_members(g, s)?;
    let root = s.first().ok_or(Error::EmptySubset)?;
    let mut seen = VertexSet::new(g.n());
    seen.insert(root);
    let mut queue = VecDeque::from([root]);
    let mut edges = Vec::with_capacity(s.len().saturating_sub(1));
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if s.contains(w) && seen.insert(w) {
                edges.push((u, w));
                queue.push_back(w);
            }
        }
    }
    if edges.len() + 1 != s.len() {
        return Err(Error::NotConnected);
    }
    Ok(edges)
}

/// Exact vertex connectivity.
///
/// Uses the Even–Tarjan pair schedule: with `v0` a minimum-degree vertex,
/// κ is the minimum local connectivity over `v0` and each non-neighbor, and
/// over non-adjacent pairs of neighbors of `v0`. Adjacent pairs are skipped;
/// their local connectivity (direct edge counted) never undercuts κ.
/// Complete graphs return `n - 1`.
pub fn vertex_connectivity(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n < 2 {
        return Err(Error::DegenerateGraph);
    }
    if !g.is_connected() {
        return Ok(0);
    }
    let v0 = (0..n).min_by_key(|&v| (g.degree(v), v)).expect("n >= 2");
    let mut best = n - 1;
    let adjacent_to_v0 = VertexSet::from_iter(n, g.neighbors(v0).iter().copied());
    for w in 0..n {
        if w != v0 && !adjacent_to_v0.contains(w) {
            best = best.min(flow::local_connectivity_bounded(g, v0, w, best));
        }
    }
    let nbrs = g.neighbors(v0);
    for (i, &x) in nbrs.iter().enumerate() {
        for &y in &nbrs[i + 1..] {
            if !g.has_edge(x, y) {
                best = best.min(flow::local_connectivity_bounded(g, x, y, best));
            }
        }
    }
    Ok(best)
}

/// A dominating vertex set together with a spanning tree of its induced subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominatingTree {
    pub vertices: VertexSet,
    pub edges: Vec<(VertexId, VertexId)>,
}

impl DominatingTree {
    /// Builds the BFS spanning-tree certificate for a connected dominating set.
    pub fn from_set(g: &Graph, vertices: VertexSet) -> Result<Self> {
        let edges = spanning_tree(g, &vertices)?;
        let tree = DominatingTree { vertices, edges };
        if let Some(v) = undominated_vertex(g, &tree.vertices) {
            return Err(Error::NotDominating(v));
        }
        Ok(tree)
    }

    /// Checks every structural property; the message names the first failure.
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        if self.vertices.universe() != g.n() {
            return Err("vertex set universe differs from graph order".into());
        }
        if self.vertices.is_empty() {
            return Err("tree is empty".into());
        }
        if self.edges.len() + 1 != self.vertices.len() {
            return Err(format!(
                "tree has {} edges for {} vertices",
                self.edges.len(),
                self.vertices.len()
            ));
        }
        // union-find over the certificate edges: n-1 edges and no cycle means spanning
        let mut parent: Vec<usize> = (0..g.n()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(u, v) in &self.edges {
            if !self.vertices.contains(u) || !self.vertices.contains(v) {
                return Err(format!("tree edge {u}-{v} leaves the vertex set"));
            }
            if !g.has_edge(u, v) {
                return Err(format!("tree edge {u}-{v} is not a graph edge"));
            }
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a == b {
                return Err(format!("tree edge {u}-{v} closes a cycle"));
            }
            parent[a] = b;
        }
        if let Some(v) = undominated_vertex(g, &self.vertices) {
            return Err(format!("vertex {v} is not dominated"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, xs: &[usize]) -> VertexSet {
        VertexSet::from_iter(n, xs.iter().copied())
    }

    fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(3, [(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(Graph::from_edges(3, [(0, 1), (1, 0)]), Err(Error::DuplicateEdge(0, 1)));
        assert!(matches!(
            Graph::from_edges(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn connected_subsets() {
        let tri = Graph::complete(3);
        assert_eq!(is_connected_subset(&tri, &set(3, &[0, 1, 2])), Ok(true));
        let p = Graph::path(3);
        assert_eq!(is_connected_subset(&p, &set(3, &[0, 2])), Ok(false));
        assert_eq!(is_connected_subset(&p, &VertexSet::new(3)), Err(Error::EmptySubset));
    }

    #[test]
    fn domination() {
        assert!(dominates(&star(5), &set(6, &[0])));
        assert!(!dominates(&Graph::path(5), &set(5, &[0])));
        assert_eq!(undominated_vertex(&Graph::path(5), &set(5, &[0])), Some(2));
    }

    #[test]
    fn neighborhoods() {
        let p = Graph::path(3);
        assert_eq!(open_neighborhood(&p, &set(3, &[1])), set(3, &[0, 2]));
        assert!(open_neighborhood(&p, &set(3, &[0, 1, 2])).is_empty());
    }

    #[test]
    fn spanning_trees() {
        let tri = Graph::complete(3);
        assert_eq!(spanning_tree(&tri, &set(3, &[0, 1, 2])), Ok(vec![(0, 1), (0, 2)]));
        assert_eq!(spanning_tree(&tri, &set(3, &[2])), Ok(vec![]));
        let c4 = Graph::cycle(4);
        let t = DominatingTree::from_set(&c4, VertexSet::full(4)).unwrap();
        assert_eq!(t.edges.len(), 3);
        assert_eq!(t.validate(&c4), Ok(()));
        assert_eq!(
            spanning_tree(&Graph::path(3), &set(3, &[0, 2])),
            Err(Error::NotConnected)
        );
    }

    #[test]
    fn connectivity_of_small_families() {
        assert_eq!(vertex_connectivity(&Graph::complete(5)), Ok(4));
        assert_eq!(vertex_connectivity(&Graph::cycle(6)), Ok(2));
        assert_eq!(vertex_connectivity(&Graph::path(4)), Ok(1));
        assert_eq!(vertex_connectivity(&star(4)), Ok(1));
        assert_eq!(vertex_connectivity(&Graph::empty(3)), Ok(0));
        assert_eq!(vertex_connectivity(&Graph::empty(1)), Err(Error::DegenerateGraph));
    }

    #[test]
    fn induced_subgraph_maps_ids() {
        let c = Graph::cycle(5);
        let (h, old) = c.induced(&set(5, &[0, 1, 2, 4]));
        assert_eq!(old, vec![0, 1, 2, 4]);
        assert_eq!(h.m(), 3);
        assert!(h.has_edge(0, 3));
    }

    #[test]
    fn tree_validation_reports_first_failure() {
        let p = Graph::path(4);
        let bad = DominatingTree {
            vertices: set(4, &[0, 1]),
            edges: vec![(0, 1)],
        };
        assert_eq!(bad.validate(&p), Err("vertex 3 is not dominated".into()));
        let cyc = Graph::complete(3);
        let bad = DominatingTree {
            vertices: set(3, &[0, 1, 2]),
            edges: vec![(0, 1), (1, 0)],
        };
        assert!(bad.validate(&cyc).unwrap_err().contains("cycle"));
    }
}
