use std::collections::{BTreeSet, VecDeque};

use crate::graph::{is_connected_subset, Graph, VertexId, VertexSet};

use super::{Recorder, Scope, SolveOptions, TraceEvent};

/// Over/Under classification of a set during labeling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetClass {
    Unclassified,
    /// Its vertex labels already cover the remaining demand.
    Over,
    /// Owns a private tree through the tree label.
    Under,
}

/// Why a phase stopped early.
#[derive(Debug)]
pub(crate) enum Halt {
    /// Full sets whose vertices touch exactly the listed trees.
    Emit(Emission),
    Broken(String),
}

#[derive(Clone, Debug)]
pub(crate) struct Emission {
    pub sets: Vec<usize>,
    pub trees: Vec<usize>,
}

pub(crate) type Step = Result<(), Halt>;

pub(crate) fn broken<T>(msg: impl Into<String>) -> Result<T, Halt> {
    Err(Halt::Broken(msg.into()))
}

/// Mutable bookkeeping shared by the single-tree and general solvers.
///
/// Tree `0` plays the role of the terminal-carrying backbone in single-tree
/// mode. Every placed vertex except a terminal records the neighbor it was
/// attached through; those parent links form a spanning forest of each set,
/// so detaching a vertex with no children never disconnects its set.
pub struct PartitionState<'a> {
    pub(crate) g: &'a Graph,
    pub(crate) terminals: Vec<VertexId>,
    pub(crate) demands: Vec<usize>,
    pub(crate) trees: Vec<VertexSet>,
    pub(crate) tree_of: Vec<Option<usize>>,
    pub(crate) sets: Vec<VertexSet>,
    pub(crate) set_of: Vec<Option<usize>>,
    hits: Vec<Vec<usize>>,
    parent: Vec<Option<VertexId>>,
    children: Vec<usize>,
    pub(crate) class: Vec<SetClass>,
    pub(crate) vlabel_of: Vec<Option<usize>>,
    pub(crate) vlabel: Vec<BTreeSet<VertexId>>,
    pub(crate) tlabel: Vec<Option<usize>>,
    pub(crate) tree_owner: Vec<Option<usize>>,
    /// Under sets that still have to acquire a vertex of their tree.
    pub(crate) pending: VecDeque<usize>,
    pub(crate) labeled: bool,
    scope: &'a Scope,
    rec: &'a mut Recorder,
    opts: SolveOptions,
}

impl<'a> PartitionState<'a> {
    pub(crate) fn new(
        g: &'a Graph,
        terminals: Vec<VertexId>,
        demands: Vec<usize>,
        trees: Vec<VertexSet>,
        scope: &'a Scope,
        rec: &'a mut Recorder,
        opts: SolveOptions,
    ) -> Self {
        let n = g.n();
        let k = terminals.len();
        let mut tree_of = vec![None; n];
        for (t, tree) in trees.iter().enumerate() {
            for v in tree.iter() {
                tree_of[v] = Some(t);
            }
        }
        let nt = trees.len();
        PartitionState {
            g,
            terminals,
            demands,
            trees,
            tree_of,
            sets: vec![VertexSet::new(n); k],
            set_of: vec![None; n],
            hits: vec![vec![0; nt]; k],
            parent: vec![None; n],
            children: vec![0; n],
            class: vec![SetClass::Unclassified; k],
            vlabel_of: vec![None; n],
            vlabel: vec![BTreeSet::new(); k],
            tlabel: vec![None; k],
            tree_owner: vec![None; nt],
            pending: VecDeque::new(),
            labeled: false,
            scope,
            rec,
            opts,
        }
    }

    pub fn k(&self) -> usize {
        self.terminals.len()
    }

    pub fn set(&self, i: usize) -> &VertexSet {
        &self.sets[i]
    }

    pub fn is_full(&self, i: usize) -> bool {
        self.sets[i].len() == self.demands[i]
    }

    pub fn deficit(&self, i: usize) -> usize {
        self.demands[i] - self.sets[i].len()
    }

    pub fn all_full(&self) -> bool {
        (0..self.k()).all(|i| self.is_full(i))
    }

    /// Trees that set `i` intersects.
    pub fn tree_hits(&self, i: usize) -> Vec<usize> {
        (0..self.trees.len()).filter(|&t| self.hits[i][t] > 0).collect()
    }

    pub(crate) fn hit_count(&self, i: usize, t: usize) -> usize {
        self.hits[i][t]
    }

    pub(crate) fn is_placed(&self, v: VertexId) -> bool {
        self.set_of[v].is_some()
    }

    pub(crate) fn trace(&mut self, ev: TraceEvent) {
        self.rec.push(ev);
    }

    pub(crate) fn global_vertex(&self, v: VertexId) -> VertexId {
        self.scope.vertices[v]
    }

    pub(crate) fn global_set(&self, i: usize) -> usize {
        self.scope.sets[i]
    }

    /// Lowest-id neighbor of `v` inside set `i` satisfying `filter`.
    pub(crate) fn neighbor_in(&self, v: VertexId, i: usize, filter: impl Fn(VertexId) -> bool) -> Option<VertexId> {
        self.g
            .neighbors(v)
            .iter()
            .copied()
            .find(|&u| self.set_of[u] == Some(i) && filter(u))
    }

    fn insert(&mut self, v: VertexId, i: usize, parent: Option<VertexId>) -> Step {
        if let Some(s) = self.set_of[v] {
            return broken(format!("vertex {v} placed twice (already in set {s})"));
        }
        if self.is_full(i) {
            return broken(format!("vertex {v} placed into full set {i}"));
        }
        if let Some(p) = parent {
            if self.set_of[p] != Some(i) || !self.g.has_edge(v, p) {
                return broken(format!("vertex {v} attached through {p} outside set {i}"));
            }
            self.children[p] += 1;
        }
        self.parent[v] = parent;
        self.set_of[v] = Some(i);
        self.sets[i].insert(v);
        if let Some(t) = self.tree_of[v] {
            self.hits[i][t] += 1;
        }
        Ok(())
    }

    /// Adds `v` to set `i`, attached through `parent`, then checks for emissions.
    pub(crate) fn place(&mut self, v: VertexId, i: usize, parent: Option<VertexId>) -> Step {
        self.insert(v, i, parent)?;
        let ev = TraceEvent::Place {
            vertex: self.global_vertex(v),
            set: self.global_set(i),
        };
        self.trace(ev);
        self.restart_check()
    }

    /// Detaches a childless vertex from its set.
    fn detach(&mut self, v: VertexId) -> Step {
        let Some(i) = self.set_of[v] else {
            return broken(format!("vertex {v} is not placed"));
        };
        if self.children[v] > 0 {
            return broken(format!(
                "vertex {v} still anchors {} vertices of set {i}",
                self.children[v]
            ));
        }
        if let Some(p) = self.parent[v].take() {
            self.children[p] -= 1;
        } else {
            return broken(format!("terminal {v} cannot be detached"));
        }
        self.set_of[v] = None;
        self.sets[i].remove(v);
        if let Some(t) = self.tree_of[v] {
            self.hits[i][t] -= 1;
        }
        Ok(())
    }

    /// Moves a placed vertex (which must be an attachment leaf) into set `to`.
    pub(crate) fn steal_placed(&mut self, v: VertexId, to: usize, parent: VertexId) -> Step {
        let from = self.set_of[v].expect("caller checked placement");
        self.detach(v)?;
        self.restart_check()?;
        self.insert(v, to, Some(parent))?;
        let ev = TraceEvent::Steal {
            vertex: self.global_vertex(v),
            from: self.global_set(from),
            to: self.global_set(to),
        };
        self.trace(ev);
        self.restart_check()
    }

    /// Places a labeled but unplaced vertex into set `to`, clearing its label.
    pub(crate) fn steal_labeled(&mut self, v: VertexId, to: usize, parent: VertexId) -> Step {
        let from = self.unlabel(v).expect("caller checked label");
        self.insert(v, to, Some(parent))?;
        let ev = TraceEvent::Steal {
            vertex: self.global_vertex(v),
            from: self.global_set(from),
            to: self.global_set(to),
        };
        self.trace(ev);
        self.restart_check()
    }

    pub(crate) fn label(&mut self, v: VertexId, i: usize) {
        self.vlabel_of[v] = Some(i);
        self.vlabel[i].insert(v);
    }

    pub(crate) fn unlabel(&mut self, v: VertexId) -> Option<usize> {
        let i = self.vlabel_of[v].take()?;
        self.vlabel[i].remove(&v);
        Some(i)
    }

    /// Applies a class change; a set never leaves Under.
    pub(crate) fn set_class(&mut self, i: usize, to: SetClass) -> Step {
        match (self.class[i], to) {
            (SetClass::Under, SetClass::Over) => broken(format!("set {i} moved from Under to Over")),
            (SetClass::Under, SetClass::Unclassified) | (SetClass::Over, SetClass::Unclassified) => {
                broken(format!("set {i} lost its class"))
            }
            _ => {
                self.class[i] = to;
                Ok(())
            }
        }
    }

    /// Emits full sets that can leave the instance together with as many trees.
    ///
    /// Default rule: the lowest full set touching exactly one tree. With the
    /// family detector on, the largest family `F` of full sets whose touched
    /// trees number at most `|F|` (found by alternating paths from a maximum
    /// matching of full sets into trees).
    pub(crate) fn restart_check(&mut self) -> Step {
        if self.all_full() {
            return Ok(());
        }
        let full: Vec<usize> = (0..self.k()).filter(|&i| self.is_full(i)).collect();
        if full.is_empty() {
            return Ok(());
        }
        let emission = if self.opts.family_detector {
            self.deficient_family(&full)
        } else {
            full.iter().find_map(|&i| {
                let hits = self.tree_hits(i);
                (hits.len() == 1).then(|| Emission {
                    sets: vec![i],
                    trees: hits,
                })
            })
        };
        match emission {
            Some(e) => Err(Halt::Emit(e)),
            None => Ok(()),
        }
    }

    fn deficient_family(&self, full: &[usize]) -> Option<Emission> {
        let nt = self.trees.len();
        let adj: Vec<Vec<usize>> = full.iter().map(|&i| self.tree_hits(i)).collect();
        let mut match_tree: Vec<Option<usize>> = vec![None; nt];
        let mut match_set: Vec<Option<usize>> = vec![None; full.len()];
        fn try_kuhn(
            x: usize,
            adj: &[Vec<usize>],
            seen: &mut [bool],
            match_tree: &mut [Option<usize>],
            match_set: &mut [Option<usize>],
        ) -> bool {
            for &t in &adj[x] {
                if seen[t] {
                    continue;
                }
                seen[t] = true;
                let free = match match_tree[t] {
                    None => true,
                    Some(y) => try_kuhn(y, adj, seen, match_tree, match_set),
                };
                if free {
                    match_tree[t] = Some(x);
                    match_set[x] = Some(t);
                    return true;
                }
            }
            false
        }
        for x in 0..full.len() {
            let mut seen = vec![false; nt];
            try_kuhn(x, &adj, &mut seen, &mut match_tree, &mut match_set);
        }
        let family: Vec<usize> = if let Some(x0) = (0..full.len()).find(|&x| match_set[x].is_none()) {
            // Hall violator: sets reachable from an unmatched set by alternating paths
            let mut in_f = vec![false; full.len()];
            in_f[x0] = true;
            let mut queue = VecDeque::from([x0]);
            while let Some(x) = queue.pop_front() {
                for &t in &adj[x] {
                    if let Some(y) = match_tree[t] {
                        if !in_f[y] {
                            in_f[y] = true;
                            queue.push_back(y);
                        }
                    }
                }
            }
            (0..full.len()).filter(|&x| in_f[x]).collect()
        } else {
            // tight family: sets not reachable from an unmatched tree
            let mut reach = vec![false; full.len()];
            let mut queue: VecDeque<usize> = VecDeque::new();
            for (t, m) in match_tree.iter().enumerate() {
                if m.is_none() {
                    for x in 0..full.len() {
                        if !reach[x] && adj[x].contains(&t) {
                            reach[x] = true;
                            queue.push_back(x);
                        }
                    }
                }
            }
            while let Some(x) = queue.pop_front() {
                let t = match_set[x].expect("all sets matched");
                for y in 0..full.len() {
                    if !reach[y] && adj[y].contains(&t) {
                        reach[y] = true;
                        queue.push_back(y);
                    }
                }
            }
            (0..full.len()).filter(|&x| !reach[x]).collect()
        };
        if family.is_empty() {
            return None;
        }
        let mut trees: BTreeSet<usize> = family.iter().flat_map(|&x| adj[x].iter().copied()).collect();
        let mut spare = (0..nt).filter(|t| !trees.contains(t)).collect::<Vec<_>>().into_iter();
        while trees.len() < family.len() {
            trees.insert(spare.next()?);
        }
        Some(Emission {
            sets: family.iter().map(|&x| full[x]).collect(),
            trees: trees.into_iter().collect(),
        })
    }

    /// Full invariant suite; a no-op unless invariant checking is enabled.
    pub(crate) fn checkpoint(&mut self, phase: &str) -> Step {
        if !self.opts.check_invariants {
            return Ok(());
        }
        self.rec.stats.checkpoints += 1;
        self.check().map_err(|msg| Halt::Broken(format!("{phase}: {msg}")))
    }

    /// Checks every state invariant, naming the first violation.
    pub fn check(&self) -> Result<(), String> {
        let n = self.g.n();
        let k = self.k();
        let mut seen = VertexSet::new(n);
        for i in 0..k {
            let s = &self.sets[i];
            if !s.is_disjoint(&seen) {
                return Err(format!("set {i} overlaps an earlier set"));
            }
            seen.union_with(s);
            if s.iter().any(|v| self.set_of[v] != Some(i)) {
                return Err(format!("set {i} disagrees with the placement map"));
            }
            if !s.contains(self.terminals[i]) {
                return Err(format!("set {i} lost its terminal"));
            }
            if s.len() > self.demands[i] {
                return Err(format!("set {i} exceeds its demand"));
            }
            if is_connected_subset(self.g, s) != Ok(true) {
                return Err(format!("set {i} is disconnected"));
            }
            for t in 0..self.trees.len() {
                let c = s.iter().filter(|&v| self.tree_of[v] == Some(t)).count();
                if c != self.hits[i][t] {
                    return Err(format!("tree-hit count of set {i} on tree {t} is stale"));
                }
            }
            // attachment forest: parents inside the set, children counts exact, every chain ends at the terminal
            for v in s.iter() {
                let kids = s.iter().filter(|&w| self.parent[w] == Some(v)).count();
                if kids != self.children[v] {
                    return Err(format!("child count of {v} is stale"));
                }
                let mut x = v;
                let mut steps = 0;
                while let Some(p) = self.parent[x] {
                    if self.set_of[p] != Some(i) || !self.g.has_edge(x, p) {
                        return Err(format!("attachment edge {x}-{p} leaves set {i}"));
                    }
                    x = p;
                    steps += 1;
                    if steps > s.len() {
                        return Err(format!("attachment cycle in set {i}"));
                    }
                }
                if x != self.terminals[i] {
                    return Err(format!("vertex {v} is not anchored to terminal of set {i}"));
                }
            }
        }
        if seen.len() != (0..n).filter(|&v| self.set_of[v].is_some()).count() {
            return Err("placement map has entries outside every set".into());
        }
        if !self.labeled {
            return Ok(());
        }
        // labeling invariants (single-tree mode, tree 0 is the backbone)
        if !self.class.contains(&SetClass::Over) && !self.all_full() {
            return Err("no set is Over".into());
        }
        for v in 0..n {
            if let Some(i) = self.vlabel_of[v] {
                if self.set_of[v].is_some() {
                    return Err(format!("labeled vertex {v} is placed"));
                }
                if self.class[i] != SetClass::Over {
                    return Err(format!("vertex {v} labeled to non-Over set {i}"));
                }
                if self.neighbor_in(v, i, |u| self.tree_of[u] == Some(0)).is_none() {
                    return Err(format!(
                        "labeled vertex {v} not adjacent to the backbone part of set {i}"
                    ));
                }
                if !self.vlabel[i].contains(&v) {
                    return Err(format!("label index misses vertex {v}"));
                }
            }
        }
        let mut owners = vec![None; self.trees.len()];
        for i in 0..k {
            if self.vlabel[i].iter().any(|&v| self.vlabel_of[v] != Some(i)) {
                return Err(format!("label index of set {i} is stale"));
            }
            if self.class[i] == SetClass::Over && !self.is_full(i) && self.deficit(i) > self.vlabel[i].len() {
                return Err(format!("Over set {i} cannot cover its demand"));
            }
            match (self.class[i], self.tlabel[i]) {
                (SetClass::Under, Some(t)) => {
                    if t == 0 {
                        return Err(format!("set {i} owns the backbone tree"));
                    }
                    if let Some(j) = owners[t].replace(i) {
                        return Err(format!("tree {t} owned by sets {j} and {i}"));
                    }
                    if self.tree_owner[t] != Some(i) {
                        return Err(format!("tree owner index of tree {t} is stale"));
                    }
                }
                (SetClass::Under, None) => return Err(format!("Under set {i} has no tree")),
                (_, Some(_)) => return Err(format!("non-Under set {i} owns a tree")),
                _ => {}
            }
        }
        Ok(())
    }
}
