//! Constructive Menger: internally vertex-disjoint paths through a
//! vertex-split unit-capacity network, and chord removal for induced paths.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// `s`–`t` paths, pairwise disjoint except at the shared endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathFamily {
    pub s: VertexId,
    pub t: VertexId,
    pub paths: Vec<Vec<VertexId>>,
}

impl PathFamily {
    /// Checks endpoints, adjacency along each path and internal disjointness.
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let mut owner = vec![usize::MAX; g.n()];
        for (i, p) in self.paths.iter().enumerate() {
            if p.first() != Some(&self.s) || p.last() != Some(&self.t) {
                return Err(format!("path {i} has wrong endpoints"));
            }
            if let Some(w) = p.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
                return Err(format!("path {i} uses non-edge {}-{}", w[0], w[1]));
            }
            for &v in &p[1..p.len() - 1] {
                if owner[v] != usize::MAX {
                    return Err(format!("vertex {v} shared by paths {} and {i}", owner[v]));
                }
                owner[v] = i;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy)]
struct Arc {
    to: usize,
    cap: u32,
    forward: bool,
}

/// Split network: vertex `v` becomes `in(v) = 2v` and `out(v) = 2v + 1`,
/// joined by a unit arc for every vertex other than the terminals. Each
/// graph edge becomes a pair of unit arcs `out(u) -> in(v)`, `out(v) -> in(u)`,
/// so an `s`–`t` edge is a path with no internal vertex.
struct SplitNetwork {
    arcs: Vec<Arc>,
    head: Vec<Vec<usize>>,
    source: usize,
    sink: usize,
}

impl SplitNetwork {
    fn new(g: &Graph, s: VertexId, t: VertexId) -> Self {
        let mut net = SplitNetwork {
            arcs: Vec::with_capacity(4 * (g.n() + 2 * g.m())),
            head: vec![Vec::new(); 2 * g.n()],
            source: 2 * s + 1,
            sink: 2 * t,
        };
        for v in 0..g.n() {
            if v != s && v != t {
                net.add_arc(2 * v, 2 * v + 1);
            }
            for &w in g.neighbors(v) {
                net.add_arc(2 * v + 1, 2 * w);
            }
        }
        net
    }

    fn add_arc(&mut self, from: usize, to: usize) {
        let id = self.arcs.len();
        self.arcs.push(Arc {
            to,
            cap: 1,
            forward: true,
        });
        self.arcs.push(Arc {
            to: from,
            cap: 0,
            forward: false,
        });
        self.head[from].push(id);
        self.head[to].push(id + 1);
    }

    /// One BFS augmentation; false when the sink is unreachable.
    fn augment(&mut self) -> bool {
        let nodes = self.head.len();
        let mut via = vec![usize::MAX; nodes];
        let mut queue = std::collections::VecDeque::from([self.source]);
        let mut reached = vec![false; nodes];
        reached[self.source] = true;
        'bfs: while let Some(x) = queue.pop_front() {
            for &a in &self.head[x] {
                let arc = self.arcs[a];
                if arc.cap > 0 && !reached[arc.to] {
                    reached[arc.to] = true;
                    via[arc.to] = a;
                    if arc.to == self.sink {
                        break 'bfs;
                    }
                    queue.push_back(arc.to);
                }
            }
        }
        if !reached[self.sink] {
            return false;
        }
        let mut x = self.sink;
        while x != self.source {
            let a = via[x];
            self.arcs[a].cap -= 1;
            self.arcs[a ^ 1].cap += 1;
            x = self.arcs[a ^ 1].to;
        }
        true
    }

    fn max_flow(&mut self, limit: usize) -> usize {
        let mut value = 0;
        while value < limit && self.augment() {
            value += 1;
        }
        value
    }

    /// Walks flow-carrying forward arcs from the source; each walk is a path.
    fn decompose(&mut self, count: usize) -> Vec<Vec<VertexId>> {
        let mut paths = Vec::with_capacity(count);
        for _ in 0..count {
            let mut path = vec![self.source / 2];
            let mut x = self.source;
            while x != self.sink {
                let a = *self.head[x]
                    .iter()
                    .find(|&&a| self.arcs[a].forward && self.arcs[a].cap == 0)
                    .expect("flow conservation");
                self.arcs[a].cap = 1;
                x = self.arcs[a].to;
                if x.is_multiple_of(2) {
                    path.push(x / 2);
                }
            }
            paths.push(path);
        }
        paths
    }
}

/// Up to `want` internally vertex-disjoint `s`–`t` paths; exactly
/// `min(want, λ(s, t))` are returned, sorted by length then lexicographically.
pub fn vertex_disjoint_paths(g: &Graph, s: VertexId, t: VertexId, want: usize) -> Result<PathFamily> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    if s == t {
        return Err(Error::IdenticalEndpoints);
    }
    let mut net = SplitNetwork::new(g, s, t);
    let value = net.max_flow(want);
    let mut paths = net.decompose(value);
    paths.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let family = PathFamily { s, t, paths };
    debug_assert_eq!(family.validate(g), Ok(()));
    Ok(family)
}

/// Local vertex connectivity λ(s, t); an `s`–`t` edge counts as one path.
pub fn local_connectivity(g: &Graph, s: VertexId, t: VertexId) -> Result<usize> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    if s == t {
        return Err(Error::IdenticalEndpoints);
    }
    Ok(local_connectivity_bounded(g, s, t, usize::MAX))
}

/// `min(λ(s, t), limit)`, stopping the flow once `limit` is reached.
pub(crate) fn local_connectivity_bounded(g: &Graph, s: VertexId, t: VertexId, limit: usize) -> usize {
    SplitNetwork::new(g, s, t).max_flow(limit)
}

/// Shortens `path` until it is induced: repeatedly takes the chord `(i, j)`
/// with smallest `i`, then largest `j`, and splices out everything between.
pub fn make_induced(g: &Graph, path: &[VertexId]) -> Vec<VertexId> {
    let mut p = path.to_vec();
    'outer: loop {
        for i in 0..p.len() {
            for j in (i + 2..p.len()).rev() {
                if g.has_edge(p[i], p[j]) {
                    p.drain(i + 1..j);
                    continue 'outer;
                }
            }
        }
        return p;
    }
}

/// True iff no two non-consecutive vertices of `path` are adjacent.
pub fn is_induced(g: &Graph, path: &[VertexId]) -> bool {
    (0..path.len()).all(|i| (i + 2..path.len()).all(|j| !g.has_edge(path[i], path[j])))
}
