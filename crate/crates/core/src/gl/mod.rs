//! Győri–Lovász partitions from a family of disjoint dominating trees.
//!
//! `solve` repeatedly groups a tree carrying terminals with terminal-free
//! trees, solves the resulting single-backbone case on the sub-instance
//! they span, and removes the finished blocks until no terminal is left.

mod general;
mod single;
mod state;

pub use general::{categorize_trees, TreeCategories, TreeGroup};
pub use state::{PartitionState, SetClass};

use crate::error::{Error, Result};
use crate::graph::{is_connected_subset, undominated_vertex, DominatingTree, Graph, VertexId, VertexSet};

use state::Halt;

/// Graph, terminals and demands; block `i` must contain `terminals[i]` and
/// have exactly `demands[i]` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlInstance {
    pub graph: Graph,
    pub terminals: Vec<VertexId>,
    pub demands: Vec<usize>,
}

impl GlInstance {
    pub fn new(graph: Graph, terminals: Vec<VertexId>, demands: Vec<usize>) -> Result<Self> {
        let inst = GlInstance {
            graph,
            terminals,
            demands,
        };
        inst.validate().map_err(Error::InvalidInstance)?;
        Ok(inst)
    }

    pub fn k(&self) -> usize {
        self.terminals.len()
    }

    pub fn validate(&self) -> Result<(), String> {
        let n = self.graph.n();
        if self.terminals.is_empty() {
            return Err("k must be at least 1".into());
        }
        if self.terminals.len() != self.demands.len() {
            return Err("terminal and demand counts differ".into());
        }
        let mut seen = VertexSet::new(n);
        for &c in &self.terminals {
            if c >= n {
                return Err(format!("terminal {c} out of range"));
            }
            if !seen.insert(c) {
                return Err(format!("terminal {c} repeated"));
            }
        }
        if let Some(i) = self.demands.iter().position(|&d| d == 0) {
            return Err(format!("demand of block {i} is zero"));
        }
        let total: usize = self.demands.iter().sum();
        if total != n {
            return Err(format!("demands sum to {total}, graph has {n} vertices"));
        }
        Ok(())
    }
}

/// `k` vertex-disjoint dominating trees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdsInput {
    pub trees: Vec<DominatingTree>,
}

impl CdsInput {
    /// Spans each set with a BFS tree.
    pub fn from_sets(g: &Graph, sets: &[VertexSet]) -> Result<Self> {
        let trees = sets
            .iter()
            .enumerate()
            .map(|(i, s)| {
                DominatingTree::from_set(g, s.clone())
                    .map_err(|e| Error::InvalidCdsInput(format!("set {}: {e}", i + 1)))
            })
            .collect::<Result<_>>()?;
        Ok(CdsInput { trees })
    }

    pub fn validate(&self, g: &Graph, k: usize) -> Result<()> {
        if self.trees.len() != k {
            return Err(Error::InvalidCdsInput(format!(
                "{} trees for {k} terminals",
                self.trees.len()
            )));
        }
        let mut seen = VertexSet::new(g.n());
        for (i, t) in self.trees.iter().enumerate() {
            if t.vertices.universe() != g.n() {
                return Err(Error::InvalidCdsInput(format!("tree {} has the wrong universe", i + 1)));
            }
            t.validate(g)
                .map_err(|e| Error::InvalidCdsInput(format!("tree {}: {e}", i + 1)))?;
            if !t.vertices.is_disjoint(&seen) {
                return Err(Error::InvalidCdsInput(format!(
                    "tree {} overlaps an earlier tree",
                    i + 1
                )));
            }
            seen.union_with(&t.vertices);
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlPartition {
    pub blocks: Vec<VertexSet>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveOptions {
    /// Run the state invariant suite at every checkpoint.
    pub check_invariants: bool,
    /// Emit maximal families of full sets touching no more trees than sets.
    pub family_detector: bool,
}

/// Solver events in original vertex, block and tree ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceEvent {
    Place { vertex: VertexId, set: usize },
    Steal { vertex: VertexId, from: usize, to: usize },
    Emit { set: usize, tree: usize },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub checkpoints: usize,
    pub emissions: usize,
    pub case_runs: usize,
}

#[derive(Debug, Default)]
pub(crate) struct Recorder {
    pub events: Vec<TraceEvent>,
    pub stats: SolveStats,
}

impl Recorder {
    pub(crate) fn push(&mut self, ev: TraceEvent) {
        self.events.push(ev);
    }
}

/// Local-to-original id maps for vertices, sets and trees.
#[derive(Clone, Debug)]
pub(crate) struct Scope {
    pub vertices: Vec<VertexId>,
    pub sets: Vec<usize>,
    pub trees: Vec<usize>,
}

impl Scope {
    fn identity(n: usize, k: usize) -> Self {
        Scope {
            vertices: (0..n).collect(),
            sets: (0..k).collect(),
            trees: (0..k).collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveRun {
    pub partition: GlPartition,
    pub trace: Vec<TraceEvent>,
    pub stats: SolveStats,
}

/// Result of the single-backbone solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Complete(GlPartition),
    Emit {
        /// `(terminal, block)` for every emitted set.
        blocks: Vec<(VertexId, VertexSet)>,
        emitted_sets: Vec<usize>,
        dropped_trees: Vec<usize>,
        reduced: Option<GlInstance>,
        reduced_trees: CdsInput,
        /// Reduced vertex id to original vertex id.
        vertex_map: Vec<VertexId>,
    },
}

/// Instance being reduced, with its trees and the maps back to original ids.
struct Work {
    g: Graph,
    terminals: Vec<VertexId>,
    demands: Vec<usize>,
    trees: Vec<DominatingTree>,
    scope: Scope,
    /// Vertex count of the original instance.
    universe: usize,
}

impl Work {
    /// Drops blocks `sets` (vertices `removed`) and trees `drop`.
    fn reduce(self, removed: &VertexSet, sets: &[usize], drop: &[usize]) -> Result<Work> {
        let mut keep = VertexSet::full(self.g.n());
        for v in removed.iter() {
            keep.remove(v);
        }
        let (g, old) = self.g.induced(&keep);
        let mut new_id = vec![usize::MAX; self.g.n()];
        for (i, &o) in old.iter().enumerate() {
            new_id[o] = i;
        }
        let kept_sets: Vec<usize> = (0..self.terminals.len()).filter(|i| !sets.contains(i)).collect();
        let kept_trees: Vec<usize> = (0..self.trees.len()).filter(|t| !drop.contains(t)).collect();
        if kept_sets.len() != kept_trees.len() {
            return Err(Error::InvariantBroken("tree and block counts diverged".into()));
        }
        let mut trees = Vec::with_capacity(kept_trees.len());
        for &t in &kept_trees {
            let tree = &self.trees[t];
            if !tree.vertices.is_disjoint(removed) {
                return Err(Error::InvariantBroken(format!("tree {t} meets an emitted block")));
            }
            trees.push(remap_tree(tree, &new_id, g.n()));
        }
        Ok(Work {
            terminals: kept_sets.iter().map(|&i| new_id[self.terminals[i]]).collect(),
            demands: kept_sets.iter().map(|&i| self.demands[i]).collect(),
            trees,
            scope: Scope {
                vertices: old.iter().map(|&o| self.scope.vertices[o]).collect(),
                sets: kept_sets.iter().map(|&i| self.scope.sets[i]).collect(),
                trees: kept_trees.iter().map(|&t| self.scope.trees[t]).collect(),
            },
            universe: self.universe,
            g,
        })
    }
}

fn remap_tree(tree: &DominatingTree, new_id: &[usize], n: usize) -> DominatingTree {
    DominatingTree {
        vertices: VertexSet::from_iter(n, tree.vertices.iter().map(|v| new_id[v])),
        edges: tree.edges.iter().map(|&(u, v)| (new_id[u], new_id[v])).collect(),
    }
}

fn halt_error(h: Halt) -> Error {
    match h {
        Halt::Broken(msg) => Error::InvariantBroken(msg),
        Halt::Emit(_) => Error::InvariantBroken("unexpected emission".into()),
    }
}

/// Removes vertices of `block` in reverse BFS order from `root` until it has `target` vertices.
fn trim(g: &Graph, block: &mut VertexSet, root: VertexId, target: usize) {
    let mut order = vec![root];
    let mut seen = VertexSet::new(g.n());
    seen.insert(root);
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &w in g.neighbors(u) {
            if block.contains(w) && seen.insert(w) {
                order.push(w);
            }
        }
    }
    while block.len() > target {
        let v = order.pop().expect("root is never trimmed");
        block.remove(v);
    }
}

enum CaseOutcome {
    Complete(Vec<VertexSet>),
    Emit {
        sets: Vec<usize>,
        trees: Vec<usize>,
        blocks: Vec<VertexSet>,
    },
}

fn run_case(
    g: &Graph,
    terminals: Vec<VertexId>,
    demands: Vec<usize>,
    trees: Vec<VertexSet>,
    scope: &Scope,
    rec: &mut Recorder,
    opts: SolveOptions,
) -> Result<CaseOutcome> {
    rec.stats.case_runs += 1;
    let mut st = PartitionState::new(g, terminals, demands, trees, scope, rec, opts);
    match single::run(&mut st) {
        Ok(()) if st.all_full() => Ok(CaseOutcome::Complete(st.sets.clone())),
        Ok(()) => Err(Error::InvariantBroken("case solver stopped with non-full sets".into())),
        Err(Halt::Emit(e)) => Ok(CaseOutcome::Emit {
            blocks: e.sets.iter().map(|&i| st.sets[i].clone()).collect(),
            sets: e.sets,
            trees: e.trees,
        }),
        Err(h) => Err(halt_error(h)),
    }
}

fn check_case_input(inst: &GlInstance, cds: &CdsInput) -> Result<()> {
    inst.validate().map_err(Error::InvalidInstance)?;
    cds.validate(&inst.graph, inst.k())
}

/// Single-backbone solver: all terminals must lie on the first tree.
pub fn solve_single_tree(inst: &GlInstance, cds: &CdsInput) -> Result<SolveOutcome> {
    solve_single_tree_with(inst, cds, SolveOptions::default())
}

pub fn solve_single_tree_with(inst: &GlInstance, cds: &CdsInput, opts: SolveOptions) -> Result<SolveOutcome> {
    check_case_input(inst, cds)?;
    if let Some(&c) = inst.terminals.iter().find(|&&c| !cds.trees[0].vertices.contains(c)) {
        return Err(Error::TerminalsNotOnFirstTree(c));
    }
    let k = inst.k();
    let scope = Scope::identity(inst.graph.n(), k);
    let mut rec = Recorder::default();
    let trees = cds.trees.iter().map(|t| t.vertices.clone()).collect();
    match run_case(
        &inst.graph,
        inst.terminals.clone(),
        inst.demands.clone(),
        trees,
        &scope,
        &mut rec,
        opts,
    )? {
        CaseOutcome::Complete(blocks) => Ok(SolveOutcome::Complete(GlPartition { blocks })),
        CaseOutcome::Emit { sets, trees, blocks } => {
            let mut removed = VertexSet::new(inst.graph.n());
            for b in &blocks {
                removed.union_with(b);
            }
            let work = Work {
                g: inst.graph.clone(),
                terminals: inst.terminals.clone(),
                demands: inst.demands.clone(),
                trees: cds.trees.clone(),
                scope,
                universe: inst.graph.n(),
            };
            let reduced = work.reduce(&removed, &sets, &trees)?;
            let instance = (!reduced.terminals.is_empty()).then(|| GlInstance {
                graph: reduced.g.clone(),
                terminals: reduced.terminals.clone(),
                demands: reduced.demands.clone(),
            });
            Ok(SolveOutcome::Emit {
                blocks: sets.iter().zip(blocks).map(|(&i, b)| (inst.terminals[i], b)).collect(),
                emitted_sets: sets,
                dropped_trees: trees,
                reduced: instance,
                reduced_trees: CdsInput { trees: reduced.trees },
                vertex_map: reduced.scope.vertices,
            })
        }
    }
}

/// GL-partition of `inst` from the disjoint dominating trees in `cds`.
pub fn solve(inst: &GlInstance, cds: &CdsInput) -> Result<GlPartition> {
    Ok(solve_with(inst, cds, SolveOptions::default())?.partition)
}

pub fn solve_with(inst: &GlInstance, cds: &CdsInput, opts: SolveOptions) -> Result<SolveRun> {
    check_case_input(inst, cds)?;
    let n = inst.graph.n();
    let k = inst.k();
    let mut rec = Recorder::default();
    let mut out: Vec<Option<VertexSet>> = vec![None; k];
    let mut work = Work {
        g: inst.graph.clone(),
        terminals: inst.terminals.clone(),
        demands: inst.demands.clone(),
        trees: cds.trees.clone(),
        scope: Scope::identity(n, k),
        universe: n,
    };
    while !work.terminals.is_empty() {
        let cats = categorize_trees(&work.g, &mut work.trees, &work.terminals)?;
        let tree_sets: Vec<VertexSet> = work.trees.iter().map(|t| t.vertices.clone()).collect();
        let step = {
            let mut st = PartitionState::new(
                &work.g,
                work.terminals.clone(),
                work.demands.clone(),
                tree_sets,
                &work.scope,
                &mut rec,
                opts,
            );
            match general::add_tree_vertices(&mut st, &cats) {
                Err(Halt::Emit(e)) => Step::Emit {
                    blocks: e.sets.iter().map(|&i| st.sets[i].clone()).collect(),
                    sets: e.sets,
                    trees: e.trees,
                },
                Err(h) => return Err(halt_error(h)),
                Ok(()) if st.all_full() => Step::Emit {
                    blocks: st.sets.clone(),
                    sets: (0..st.k()).collect(),
                    trees: (0..st.trees.len()).collect(),
                },
                Ok(()) => {
                    let group = general::choose_tree_set(&st, &cats).map_err(halt_error)?;
                    let mut members = VertexSet::new(work.g.n());
                    for &i in &group.sets {
                        members.union_with(&st.sets[i]);
                    }
                    Step::Group(group, members)
                }
            }
        };
        let (sets, blocks, trees) = match step {
            Step::Emit { sets, trees, blocks } => (sets, blocks, trees),
            Step::Group(group, mut members) => solve_group(&work, &group, &mut members, &mut rec, opts)?,
        };
        work = emit(work, &sets, blocks, &trees, &mut out, &mut rec, opts)?;
    }
    let blocks = out
        .into_iter()
        .map(|b| b.ok_or_else(|| Error::InvariantBroken("block never emitted".into())))
        .collect::<Result<_>>()?;
    Ok(SolveRun {
        partition: GlPartition { blocks },
        trace: rec.events,
        stats: rec.stats,
    })
}

enum Step {
    Emit {
        sets: Vec<usize>,
        trees: Vec<usize>,
        blocks: Vec<VertexSet>,
    },
    Group(TreeGroup, VertexSet),
}

type Emitted = (Vec<usize>, Vec<VertexSet>, Vec<usize>);

/// Solves the sub-instance spanned by a group's sets and terminal-free trees,
/// with the first demand inflated to absorb the surplus, and maps the
/// emitted blocks back to work ids.
fn solve_group(
    work: &Work,
    group: &TreeGroup,
    members: &mut VertexSet,
    rec: &mut Recorder,
    opts: SolveOptions,
) -> Result<Emitted> {
    for &z in &group.zeros {
        members.union_with(&work.trees[z].vertices);
    }
    let (sg, old) = work.g.induced(members);
    let mut new_id = vec![usize::MAX; work.g.n()];
    for (i, &o) in old.iter().enumerate() {
        new_id[o] = i;
    }
    let tree_ids: Vec<usize> = std::iter::once(group.lead).chain(group.zeros.iter().copied()).collect();
    let terminals: Vec<VertexId> = group.sets.iter().map(|&i| new_id[work.terminals[i]]).collect();
    let mut demands: Vec<usize> = group.sets.iter().map(|&i| work.demands[i]).collect();
    let wanted: usize = demands.iter().sum();
    if sg.n() < wanted {
        return Err(Error::InvariantBroken(
            "group sub-instance smaller than its demands".into(),
        ));
    }
    let surplus = sg.n() - wanted;
    demands[0] += surplus;
    let trees: Vec<VertexSet> = tree_ids
        .iter()
        .map(|&t| VertexSet::from_iter(sg.n(), work.trees[t].vertices.iter().map(|v| new_id[v])))
        .collect();
    let scope = Scope {
        vertices: old.iter().map(|&o| work.scope.vertices[o]).collect(),
        sets: group.sets.iter().map(|&i| work.scope.sets[i]).collect(),
        trees: tree_ids.iter().map(|&t| work.scope.trees[t]).collect(),
    };
    let (sub_sets, sub_blocks, sub_trees) = match run_case(&sg, terminals, demands, trees, &scope, rec, opts)? {
        CaseOutcome::Complete(blocks) => (
            (0..group.sets.len()).collect::<Vec<_>>(),
            blocks,
            (0..tree_ids.len()).collect(),
        ),
        CaseOutcome::Emit { sets, trees, blocks } => (sets, blocks, trees),
    };
    let mut blocks = Vec::with_capacity(sub_blocks.len());
    for (&q, b) in sub_sets.iter().zip(&sub_blocks) {
        let mut block = VertexSet::from_iter(work.g.n(), b.iter().map(|v| old[v]));
        if q == 0 && surplus > 0 {
            let i = group.sets[0];
            trim(&work.g, &mut block, work.terminals[i], work.demands[i]);
        }
        blocks.push(block);
    }
    Ok((
        sub_sets.iter().map(|&q| group.sets[q]).collect(),
        blocks,
        sub_trees.iter().map(|&t| tree_ids[t]).collect(),
    ))
}

fn emit(
    work: Work,
    sets: &[usize],
    blocks: Vec<VertexSet>,
    trees: &[usize],
    out: &mut [Option<VertexSet>],
    rec: &mut Recorder,
    opts: SolveOptions,
) -> Result<Work> {
    rec.stats.emissions += 1;
    let mut removed = VertexSet::new(work.g.n());
    for (&i, b) in sets.iter().zip(&blocks) {
        if opts.check_invariants {
            rec.stats.checkpoints += 1;
            let c = work.terminals[i];
            if b.len() != work.demands[i] || !b.contains(c) || is_connected_subset(&work.g, b) != Ok(true) {
                return Err(Error::InvariantBroken(format!(
                    "emitted block {} is malformed",
                    work.scope.sets[i]
                )));
            }
        }
        removed.union_with(b);
        out[work.scope.sets[i]] = Some(VertexSet::from_iter(
            work.universe,
            b.iter().map(|v| work.scope.vertices[v]),
        ));
    }
    let mut order: Vec<usize> = sets.to_vec();
    order.sort_unstable();
    let mut tree_order: Vec<usize> = trees.to_vec();
    tree_order.sort_unstable();
    for (&i, &t) in order.iter().zip(&tree_order) {
        rec.push(TraceEvent::Emit {
            set: work.scope.sets[i],
            tree: work.scope.trees[t],
        });
    }
    let reduced = work.reduce(&removed, sets, trees)?;
    if opts.check_invariants {
        rec.stats.checkpoints += 1;
        for (t, tree) in reduced.trees.iter().enumerate() {
            if reduced.g.n() > 0 && undominated_vertex(&reduced.g, &tree.vertices).is_some() {
                return Err(Error::InvariantBroken(format!(
                    "tree {} stops dominating after emission",
                    reduced.scope.trees[t]
                )));
            }
        }
    }
    Ok(reduced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{gen_gl_extension, gen_planted_cds};
    use crate::verify::verify_gl;

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_iter(n, vs.iter().copied())
    }

    fn k4_trees() -> CdsInput {
        let g = Graph::complete(4);
        CdsInput::from_sets(&g, &[set(4, &[0, 1]), set(4, &[2, 3])]).unwrap()
    }

    #[test]
    fn single_block_is_everything() {
        let g = Graph::cycle(5);
        let inst = GlInstance::new(g.clone(), vec![3], vec![5]).unwrap();
        let cds = CdsInput::from_sets(&g, &[VertexSet::full(5)]).unwrap();
        assert_eq!(solve(&inst, &cds).unwrap().blocks, vec![VertexSet::full(5)]);
        match solve_single_tree(&inst, &cds).unwrap() {
            SolveOutcome::Complete(p) => assert_eq!(p.blocks, vec![VertexSet::full(5)]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn complete_graph_single_backbone() {
        let inst = GlInstance::new(Graph::complete(4), vec![0, 1], vec![2, 2]).unwrap();
        let cds = k4_trees();
        let p = solve(&inst, &cds).unwrap();
        assert!(verify_gl(&inst, &p).ok());
        match solve_single_tree(&inst, &cds).unwrap() {
            SolveOutcome::Complete(p) => assert!(verify_gl(&inst, &p).ok()),
            SolveOutcome::Emit { blocks, reduced, .. } => {
                assert!(!blocks.is_empty());
                if let Some(r) = reduced {
                    assert!(r.validate().is_ok());
                }
            }
        }
    }

    #[test]
    fn complete_graph_split_terminals() {
        let inst = GlInstance::new(Graph::complete(4), vec![0, 2], vec![1, 3]).unwrap();
        let p = solve(&inst, &k4_trees()).unwrap();
        assert!(verify_gl(&inst, &p).ok());
        assert_eq!(p.blocks[0], set(4, &[0]));
    }

    #[test]
    fn backbone_precondition() {
        let inst = GlInstance::new(Graph::complete(4), vec![0, 2], vec![2, 2]).unwrap();
        assert_eq!(
            solve_single_tree(&inst, &k4_trees()),
            Err(Error::TerminalsNotOnFirstTree(2))
        );
    }

    #[test]
    fn rejects_bad_trees() {
        let g = Graph::complete(4);
        let inst = GlInstance::new(g.clone(), vec![0, 1], vec![2, 2]).unwrap();
        let overlapping = CdsInput::from_sets(&g, &[set(4, &[0, 1]), set(4, &[1, 2])]).unwrap();
        assert!(matches!(solve(&inst, &overlapping), Err(Error::InvalidCdsInput(_))));
        let short = CdsInput::from_sets(&g, &[set(4, &[0])]).unwrap();
        assert!(matches!(solve(&inst, &short), Err(Error::InvalidCdsInput(_))));
        let p4 = Graph::path(4);
        let inst = GlInstance::new(p4.clone(), vec![0], vec![4]).unwrap();
        assert!(matches!(
            CdsInput::from_sets(&p4, &[set(4, &[0])]),
            Err(Error::InvalidCdsInput(_))
        ));
        let weak = CdsInput {
            trees: vec![DominatingTree {
                vertices: set(4, &[0]),
                edges: vec![],
            }],
        };
        assert!(matches!(solve(&inst, &weak), Err(Error::InvalidCdsInput(_))));
    }

    #[test]
    fn instance_validation() {
        let g = Graph::complete(3);
        assert!(GlInstance::new(g.clone(), vec![], vec![]).is_err());
        assert!(GlInstance::new(g.clone(), vec![0, 0], vec![1, 2]).is_err());
        assert!(GlInstance::new(g.clone(), vec![0, 1], vec![0, 3]).is_err());
        assert!(GlInstance::new(g.clone(), vec![0, 1], vec![1, 1]).is_err());
        assert!(GlInstance::new(g, vec![0, 5], vec![1, 2]).is_err());
    }

    #[test]
    fn stray_terminal_joins_first_tree() {
        // two dominating triangles joined completely, plus vertex 6 seeing 0 and 3
        let mut edges = vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 6), (3, 6)];
        for u in 0..3 {
            for v in 3..6 {
                edges.push((u, v));
            }
        }
        let g = Graph::from_edges(7, edges).unwrap();
        let mut trees = CdsInput::from_sets(&g, &[set(7, &[0, 1, 2]), set(7, &[3, 4, 5])])
            .unwrap()
            .trees;
        let cats = categorize_trees(&g, &mut trees, &[6, 4]).unwrap();
        assert_eq!(cats.t1, vec![0, 1]);
        assert!(trees[0].vertices.contains(6));
        assert_eq!(trees[0].validate(&g), Ok(()));
    }

    #[test]
    fn categories() {
        let g = Graph::complete(6);
        let sets = [set(6, &[0, 1]), set(6, &[2, 3]), set(6, &[4, 5])];
        let mut trees = CdsInput::from_sets(&g, &sets).unwrap().trees;
        let cats = categorize_trees(&g, &mut trees, &[0, 1, 2]).unwrap();
        assert_eq!((cats.t0, cats.t1, cats.many), (vec![2], vec![1], vec![0]));
        let cats = categorize_trees(&g, &mut trees, &[0, 2, 4]).unwrap();
        assert_eq!(cats.t1, vec![0, 1, 2]);
        assert!(cats.t0.is_empty() && cats.many.is_empty());
    }

    #[test]
    fn trimming_keeps_prefix_connected() {
        let g = Graph::path(6);
        let mut b = VertexSet::full(6);
        trim(&g, &mut b, 2, 3);
        assert_eq!(b, set(6, &[1, 2, 3]));
        assert_eq!(is_connected_subset(&g, &b), Ok(true));
    }

    fn planted(seed: u64) -> (GlInstance, CdsInput) {
        let mut r = crate::gen::rng(seed ^ 0x5eed);
        use rand::Rng;
        let k = r.gen_range(1..=6);
        let n = r.gen_range(2 * k..=80);
        let extra = r.gen_range(0..=n);
        let (g, cds) = gen_planted_cds(n, k, extra, seed).unwrap();
        let inst = gen_gl_extension(&g, k, seed, None).unwrap();
        (inst, cds)
    }

    #[test]
    fn planted_sweep_with_invariants() {
        for detector in [false, true] {
            let opts = SolveOptions {
                check_invariants: true,
                family_detector: detector,
            };
            for seed in 0..150 {
                let (inst, cds) = planted(seed);
                let run = solve_with(&inst, &cds, opts).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
                let report = verify_gl(&inst, &run.partition);
                assert!(report.ok(), "seed {seed}: {report}");
                assert!(run.stats.checkpoints > 0);
            }
        }
    }

    #[test]
    fn terminals_on_backbone_sweep() {
        for seed in 0..100 {
            let (g, cds) = gen_planted_cds(40, 4, 30, seed).unwrap();
            let inst = gen_gl_extension(&g, 4, seed, Some(&cds.trees[0].vertices)).unwrap();
            if cds.trees[0].vertices.len() < 4 {
                continue;
            }
            let opts = SolveOptions {
                check_invariants: true,
                family_detector: false,
            };
            match solve_single_tree_with(&inst, &cds, opts).unwrap() {
                SolveOutcome::Complete(p) => assert!(verify_gl(&inst, &p).ok()),
                SolveOutcome::Emit {
                    blocks,
                    reduced,
                    reduced_trees,
                    ..
                } => {
                    for (c, b) in &blocks {
                        assert!(b.contains(*c));
                        assert_eq!(is_connected_subset(&g, b), Ok(true));
                    }
                    if let Some(r) = reduced {
                        assert_eq!(reduced_trees.validate(&r.graph, r.k()), Ok(()));
                    }
                }
            }
        }
    }

    #[test]
    fn trace_is_in_original_ids() {
        let (inst, cds) = planted(7);
        let run = solve_with(&inst, &cds, SolveOptions::default()).unwrap();
        let n = inst.graph.n();
        let emits = run
            .trace
            .iter()
            .filter(|e| matches!(e, TraceEvent::Emit { .. }))
            .count();
        assert_eq!(emits, inst.k());
        for ev in &run.trace {
            match *ev {
                TraceEvent::Place { vertex, set } => assert!(vertex < n && set < inst.k()),
                TraceEvent::Steal { vertex, from, to } => assert!(vertex < n && from < inst.k() && to < inst.k()),
                TraceEvent::Emit { set, tree } => assert!(set < inst.k() && tree < inst.k()),
            }
        }
    }
}
