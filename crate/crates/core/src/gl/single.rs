//! Single-backbone case: every terminal lies on tree 0.

use std::collections::VecDeque;

use crate::graph::{VertexId, VertexSet};

use super::state::{broken, Halt, PartitionState, SetClass, Step};

/// Lowest-index non-full set with a placed neighbor of `v` passing `filter`,
/// and the lowest-id such neighbor as attachment parent.
pub(crate) fn attach_point(
    st: &PartitionState,
    v: VertexId,
    filter: impl Fn(VertexId) -> bool,
) -> Result<(usize, VertexId), Halt> {
    let mut best: Option<(usize, VertexId)> = None;
    for &u in st.g.neighbors(v) {
        if let Some(i) = st.set_of[u] {
            if filter(u) && !st.is_full(i) && best.is_none_or(|(b, _)| i < b) {
                best = Some((i, u));
            }
        }
    }
    best.ok_or_else(|| Halt::Broken(format!("vertex {v} has no adjacent non-full set")))
}

pub(crate) fn place_terminals(st: &mut PartitionState) -> Step {
    for i in 0..st.k() {
        let c = st.terminals[i];
        st.place(c, i, None)?;
    }
    Ok(())
}

/// Grows sets along the internal edges of tree `t`, starting from the
/// terminals on it, then attaches every vertex outside all trees.
pub(crate) fn grow_tree(st: &mut PartitionState, t: usize) -> Step {
    let g = st.g;
    let mut seen = VertexSet::new(g.n());
    let mut queue: VecDeque<VertexId> = VecDeque::new();
    let mut roots: Vec<VertexId> = st
        .terminals
        .iter()
        .copied()
        .filter(|&c| st.tree_of[c] == Some(t))
        .collect();
    roots.sort_unstable();
    for c in roots {
        seen.insert(c);
        queue.push_back(c);
    }
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if st.tree_of[w] != Some(t) || !seen.insert(w) {
                continue;
            }
            let (i, p) = attach_point(st, w, |x| st.tree_of[x] == Some(t))?;
            st.place(w, i, Some(p))?;
            queue.push_back(w);
        }
    }
    if st.trees[t].iter().any(|v| !st.is_placed(v)) {
        return broken(format!("tree {t} not reached from its terminals"));
    }
    Ok(())
}

pub(crate) fn place_non_tree(st: &mut PartitionState) -> Step {
    for v in 0..st.g.n() {
        if st.tree_of[v].is_none() && !st.is_placed(v) {
            let (i, p) = attach_point(st, v, |_| true)?;
            st.place(v, i, Some(p))?;
        }
    }
    Ok(())
}

pub(crate) fn add_trees(st: &mut PartitionState) -> Step {
    place_terminals(st)?;
    grow_tree(st, 0)?;
    place_non_tree(st)?;
    st.checkpoint("add-trees")
}

fn absorb_labels(st: &mut PartitionState, i: usize) -> Step {
    let labeled: Vec<VertexId> = st.vlabel[i].iter().copied().collect();
    for v in labeled {
        st.unlabel(v);
        let p = st
            .neighbor_in(v, i, |u| st.tree_of[u] == Some(0))
            .ok_or_else(|| Halt::Broken(format!("label of {v} lost its backbone neighbor in set {i}")))?;
        st.place(v, i, Some(p))?;
    }
    Ok(())
}

/// Moves set `i` to Under: it absorbs its labels and takes the lowest free tree.
fn enter_under(st: &mut PartitionState, i: usize) -> Step {
    st.set_class(i, SetClass::Under)?;
    absorb_labels(st, i)?;
    let Some(t) = (1..st.trees.len()).find(|&t| st.tree_owner[t].is_none()) else {
        return broken(format!("no free tree left for Under set {i}"));
    };
    st.tlabel[i] = Some(t);
    st.tree_owner[t] = Some(i);
    st.pending.push_back(i);
    Ok(())
}

/// Brings `u` into Under set `j`, taking it from a label or from another Under set.
fn pull(st: &mut PartitionState, u: VertexId, j: usize, parent: VertexId) -> Step {
    match st.set_of[u] {
        None => {
            let Some(s) = st.vlabel_of[u] else {
                return broken(format!("unplaced vertex {u} carries no label"));
            };
            st.steal_labeled(u, j, parent)?;
            if st.class[s] == SetClass::Over && st.deficit(s) > st.vlabel[s].len() {
                enter_under(st, s)?;
            }
            Ok(())
        }
        Some(s) if s != j && st.class[s] == SetClass::Under => st.steal_placed(u, j, parent),
        Some(s) => broken(format!("vertex {u} cannot be taken from set {s}")),
    }
}

/// Gives every queued Under set at least one vertex of its own tree,
/// adjacent to its backbone part.
fn settle(st: &mut PartitionState) -> Step {
    while let Some(j) = st.pending.pop_front() {
        let t = st.tlabel[j].expect("queued sets are Under");
        if st.hit_count(j, t) > 0 {
            continue;
        }
        let found = st.trees[t]
            .iter()
            .find_map(|u| st.neighbor_in(u, j, |x| st.tree_of[x] == Some(0)).map(|p| (u, p)));
        let Some((u, p)) = found else {
            return broken(format!("tree {t} misses the backbone part of set {j}"));
        };
        pull(st, u, j, p)?;
    }
    Ok(())
}

pub(crate) fn labeling(st: &mut PartitionState) -> Step {
    let g = st.g;
    for v in 0..g.n() {
        if st.is_placed(v) {
            continue;
        }
        if !matches!(st.tree_of[v], Some(t) if t > 0) {
            return broken(format!("vertex {v} left unplaced outside the secondary trees"));
        }
        let j = g
            .neighbors(v)
            .iter()
            .filter(|&&u| st.tree_of[u] == Some(0))
            .filter_map(|&u| st.set_of[u])
            .min()
            .ok_or_else(|| Halt::Broken(format!("vertex {v} not dominated by the backbone")))?;
        st.label(v, j);
    }
    st.labeled = true;
    let over: Vec<bool> = (0..st.k()).map(|i| st.deficit(i) <= st.vlabel[i].len()).collect();
    if !over.contains(&true) {
        return broken("no set is Over after classification");
    }
    for (i, &is_over) in over.iter().enumerate() {
        if is_over {
            st.set_class(i, SetClass::Over)?;
        }
    }
    for (i, &is_over) in over.iter().enumerate() {
        if !is_over {
            enter_under(st, i)?;
        }
    }
    settle(st)?;
    st.checkpoint("labeling")
}

pub(crate) fn add_vertices(st: &mut PartitionState) -> Step {
    let n = st.g.n();
    let k = st.k();
    let guard = 4 * n * (k + 1) + 16;
    let mut steps = 0;
    loop {
        settle(st)?;
        let next = (0..k).find_map(|j| {
            let t = st.tlabel[j]?;
            (st.class[j] == SetClass::Under && !st.is_full(j) && st.hit_count(j, t) < st.trees[t].len())
                .then_some((j, t))
        });
        let Some((j, t)) = next else { break };
        let found = st.trees[t].iter().filter(|&u| st.set_of[u] != Some(j)).find_map(|u| {
            st.neighbor_in(u, j, |x| matches!(st.tree_of[x], Some(s) if s == 0 || s == t))
                .map(|p| (u, p))
        });
        let Some((u, p)) = found else {
            return broken(format!("tree {t} has no vertex adjacent to set {j}"));
        };
        pull(st, u, j, p)?;
        steps += 1;
        if steps > guard {
            return broken("vertex addition does not terminate");
        }
        st.checkpoint("add-vertices step")?;
    }
    for s in 0..k {
        if st.class[s] != SetClass::Over {
            continue;
        }
        while !st.is_full(s) {
            let Some(&v) = st.vlabel[s].iter().next() else {
                return broken(format!("Over set {s} ran out of labels"));
            };
            st.unlabel(v);
            let p = st
                .neighbor_in(v, s, |u| st.tree_of[u] == Some(0))
                .ok_or_else(|| Halt::Broken(format!("label of {v} lost its backbone neighbor")))?;
            st.place(v, s, Some(p))?;
        }
    }
    for v in 0..n {
        if !st.is_placed(v) {
            st.unlabel(v);
            let (i, p) = attach_point(st, v, |_| true)?;
            st.place(v, i, Some(p))?;
        }
    }
    st.checkpoint("add-vertices")?;
    if !st.all_full() {
        return broken("sets not full after vertex addition");
    }
    Ok(())
}

pub(crate) fn run(st: &mut PartitionState) -> Step {
    add_trees(st)?;
    if st.all_full() {
        return Ok(());
    }
    labeling(st)?;
    add_vertices(st)
}
