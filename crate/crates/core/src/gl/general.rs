//! Terminals spread over several trees.

use crate::error::Result;
use crate::graph::{DominatingTree, Graph, VertexId};

use super::single::{grow_tree, place_non_tree, place_terminals};
use super::state::{broken, Halt, PartitionState, Step};

/// Trees bucketed by how many terminals they carry.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TreeCategories {
    pub t0: Vec<usize>,
    pub t1: Vec<usize>,
    pub many: Vec<usize>,
    /// Set indices whose terminal lies on each tree, ascending.
    pub sets_on: Vec<Vec<usize>>,
}

/// Puts every terminal on a tree and buckets trees by terminal count.
///
/// A terminal on no tree joins tree 0 through its lowest-id neighbor there,
/// which keeps tree 0 connected and dominating.
pub fn categorize_trees(g: &Graph, trees: &mut [DominatingTree], terminals: &[VertexId]) -> Result<TreeCategories> {
    let mut sets_on = vec![Vec::new(); trees.len()];
    for (i, &c) in terminals.iter().enumerate() {
        let t = match trees.iter().position(|t| t.vertices.contains(c)) {
            Some(t) => t,
            None => {
                let Some(&p) = g.neighbors(c).iter().find(|&&u| trees[0].vertices.contains(u)) else {
                    return Err(crate::error::Error::NotDominating(c));
                };
                trees[0].vertices.insert(c);
                trees[0].edges.push((p.min(c), p.max(c)));
                0
            }
        };
        sets_on[t].push(i);
    }
    let mut cats = TreeCategories::default();
    for (t, on) in sets_on.iter().enumerate() {
        match on.len() {
            0 => cats.t0.push(t),
            1 => cats.t1.push(t),
            _ => cats.many.push(t),
        }
    }
    cats.sets_on = sets_on;
    Ok(cats)
}

pub(crate) fn add_tree_vertices(st: &mut PartitionState, cats: &TreeCategories) -> Step {
    place_terminals(st)?;
    for t in 0..st.trees.len() {
        if !cats.sets_on[t].is_empty() {
            grow_tree(st, t)?;
        }
    }
    place_non_tree(st)?;
    st.checkpoint("add-tree-vertices")
}

/// A tree with terminals, the sets of those terminals, and as many
/// terminal-free trees as extra sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeGroup {
    pub lead: usize,
    pub zeros: Vec<usize>,
    pub sets: Vec<usize>,
}

/// First group whose terminal-free trees cover the combined deficit of its sets.
pub(crate) fn choose_tree_set(st: &PartitionState, cats: &TreeCategories) -> Result<TreeGroup, Halt> {
    let mut spare = cats.t0.iter().copied();
    let candidates = cats.many.iter().chain(&cats.t1);
    for &lead in candidates {
        let sets = cats.sets_on[lead].clone();
        let zeros: Vec<usize> = spare.by_ref().take(sets.len() - 1).collect();
        if zeros.len() + 1 < sets.len() {
            return broken("too few terminal-free trees for grouping");
        }
        let need: usize = sets.iter().map(|&i| st.deficit(i)).sum();
        let have: usize = zeros.iter().map(|&z| st.trees[z].len()).sum();
        if have >= need {
            return Ok(TreeGroup { lead, zeros, sets });
        }
    }
    broken("no tree group covers its deficit")
}
