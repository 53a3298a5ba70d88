//! Independent checkers and exhaustive oracles for small instances.
//!
//! Checkers only use the graph primitives, never solver state.

use std::fmt;

use crate::cds::{CdsFamily, CdsPartition, ConvexModel};
use crate::error::{Error, Result};
use crate::gl::{GlInstance, GlPartition};
use crate::graph::{dominates, is_connected_subset, Graph, VertexSet};

/// Default vertex limit of the exhaustive oracles.
pub const ORACLE_LIMIT: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: &'static str,
    pub detail: String,
    /// Offending vertex or block ids, 0-based.
    pub ids: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn fail(&mut self, rule: &'static str, ids: Vec<usize>, detail: String) {
        self.violations.push(Violation { rule, detail, ids });
    }

    pub fn rules(&self) -> Vec<&'static str> {
        self.violations.iter().map(|v| v.rule).collect()
    }
}

/// `OK`, or one `FAIL <rule-id> <detail>` line per violation.
impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return writeln!(f, "OK");
        }
        for v in &self.violations {
            writeln!(f, "FAIL {} {}", v.rule, v.detail)?;
        }
        Ok(())
    }
}

/// Checks that `blocks` partition the vertices; ids in details are 1-based.
fn check_cover(g: &Graph, blocks: &[VertexSet], report: &mut VerificationReport) {
    let n = g.n();
    let mut count = vec![0usize; n];
    for (i, b) in blocks.iter().enumerate() {
        for v in b.iter() {
            if v >= n {
                report.fail(
                    "vertex-out-of-range",
                    vec![v],
                    format!("block {} lists vertex {}", i + 1, v + 1),
                );
            } else {
                count[v] += 1;
            }
        }
    }
    for (v, &c) in count.iter().enumerate() {
        match c {
            0 => report.fail("vertex-missing", vec![v], format!("vertex {} is in no block", v + 1)),
            1 => {}
            _ => report.fail(
                "vertex-duplicated",
                vec![v],
                format!("vertex {} is in {c} blocks", v + 1),
            ),
        }
    }
}

/// In-range part of a block, over the graph's universe.
fn clip(g: &Graph, b: &VertexSet) -> VertexSet {
    VertexSet::from_iter(g.n(), b.iter().filter(|&v| v < g.n()))
}

fn check_connected(g: &Graph, i: usize, b: &VertexSet, report: &mut VerificationReport) -> bool {
    match is_connected_subset(g, &clip(g, b)) {
        Err(_) => {
            report.fail("empty-block", vec![i], format!("block {} is empty", i + 1));
            false
        }
        Ok(false) => {
            report.fail("disconnected", vec![i], format!("block {} is not connected", i + 1));
            false
        }
        Ok(true) => true,
    }
}

/// Partition of V, exact sizes, terminal containment and block connectivity;
/// every violation is reported.
pub fn verify_gl(inst: &GlInstance, p: &GlPartition) -> VerificationReport {
    let g = &inst.graph;
    let mut report = VerificationReport::default();
    if p.blocks.len() != inst.k() {
        report.fail(
            "block-count",
            vec![],
            format!("{} blocks for {} terminals", p.blocks.len(), inst.k()),
        );
    }
    check_cover(g, &p.blocks, &mut report);
    for (i, b) in p.blocks.iter().enumerate().take(inst.k()) {
        if b.len() != inst.demands[i] {
            report.fail(
                "size-mismatch",
                vec![i],
                format!("block {} has {} vertices, demand {}", i + 1, b.len(), inst.demands[i]),
            );
        }
        let c = inst.terminals[i];
        if !b.contains(c) {
            report.fail(
                "terminal-missing",
                vec![i, c],
                format!("block {} lacks terminal {}", i + 1, c + 1),
            );
        }
        check_connected(g, i, b, &mut report);
    }
    report
}

/// Partition of V into connected dominating blocks.
pub fn verify_cds_partition(g: &Graph, p: &CdsPartition) -> VerificationReport {
    let mut report = VerificationReport::default();
    check_cover(g, &p.sets, &mut report);
    for (i, b) in p.sets.iter().enumerate() {
        if check_connected(g, i, b, &mut report) && !dominates(g, &clip(g, b)) {
            let missed = (0..g.n())
                .find(|&v| !b.contains(v) && !g.neighbors(v).iter().any(|&u| b.contains(u)))
                .expect("domination failed");
            report.fail(
                "not-dominating",
                vec![i, missed],
                format!("block {} does not dominate vertex {}", i + 1, missed + 1),
            );
        }
    }
    report
}

fn guard(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::TooLargeForOracle { n, limit })
    } else {
        Ok(())
    }
}

pub fn brute_gl(inst: &GlInstance) -> Result<Option<GlPartition>> {
    brute_gl_limited(inst, ORACLE_LIMIT)
}

/// Lexicographically smallest block-assignment vector forming a GL-partition.
pub fn brute_gl_limited(inst: &GlInstance, limit: usize) -> Result<Option<GlPartition>> {
    let g = &inst.graph;
    let n = g.n();
    guard(n, limit)?;
    inst.validate().map_err(Error::InvalidInstance)?;
    let k = inst.k();
    let mut fixed = vec![None; n];
    for (i, &c) in inst.terminals.iter().enumerate() {
        fixed[c] = Some(i);
    }
    struct Search<'a> {
        g: &'a Graph,
        demands: &'a [usize],
        fixed: Vec<Option<usize>>,
        remaining: Vec<usize>,
        blocks: Vec<VertexSet>,
    }
    impl Search<'_> {
        fn go(&mut self, v: usize) -> bool {
            if v == self.g.n() {
                return true;
            }
            let choices: Vec<usize> = match self.fixed[v] {
                Some(i) => vec![i],
                None => (0..self.demands.len()).collect(),
            };
            for i in choices {
                if self.remaining[i] == 0 {
                    continue;
                }
                self.remaining[i] -= 1;
                self.blocks[i].insert(v);
                let closed = self.remaining[i] > 0 || is_connected_subset(self.g, &self.blocks[i]) == Ok(true);
                if closed && self.terminal_room() && self.go(v + 1) {
                    return true;
                }
                self.blocks[i].remove(v);
                self.remaining[i] += 1;
            }
            false
        }

        /// Every block still has room for its unplaced terminal.
        fn terminal_room(&self) -> bool {
            (0..self.demands.len()).all(|i| self.remaining[i] > 0 || self.has_terminal(i))
        }

        fn has_terminal(&self, i: usize) -> bool {
            self.blocks[i].iter().any(|v| self.fixed[v] == Some(i))
        }
    }
    let mut s = Search {
        g,
        demands: &inst.demands,
        fixed,
        remaining: inst.demands.clone(),
        blocks: vec![VertexSet::new(n); k],
    };
    Ok(s.go(0).then(|| GlPartition { blocks: s.blocks }))
}

pub fn brute_cds(g: &Graph, k: usize) -> Result<Option<CdsFamily>> {
    brute_cds_limited(g, k, ORACLE_LIMIT)
}

/// `k` pairwise disjoint connected dominating sets, or `None`.
///
/// Searches over inclusion-minimal connected dominating sets only (any
/// disjoint family shrinks to one of those), listed in lexicographic order of
/// their sorted members; returns the first family in that order.
pub fn brute_cds_limited(g: &Graph, k: usize, limit: usize) -> Result<Option<CdsFamily>> {
    let n = g.n();
    guard(n, limit.min(63))?;
    if k == 0 {
        return Ok(Some(CdsFamily { sets: vec![] }));
    }
    if n == 0 {
        return Ok(None);
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
        .collect();
    let all: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let is_cds = |s: u64| -> bool {
        if s == 0 {
            return false;
        }
        let mut closed = s;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            closed |= adj[v];
            rest &= rest - 1;
        }
        if closed != all {
            return false;
        }
        let mut reach = 1u64 << s.trailing_zeros();
        loop {
            let mut next = reach;
            let mut r = reach;
            while r != 0 {
                let v = r.trailing_zeros() as usize;
                next |= adj[v] & s;
                r &= r - 1;
            }
            if next == reach {
                return reach == s;
            }
            reach = next;
        }
    };
    let mut minimal: Vec<u64> = Vec::new();
    for s in 1..=all {
        if !is_cds(s) {
            continue;
        }
        let mut rest = s;
        let mut shrinkable = false;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            if is_cds(s & !bit) {
                shrinkable = true;
                break;
            }
            rest &= rest - 1;
        }
        if !shrinkable {
            minimal.push(s);
        }
    }
    let members = |s: u64| -> Vec<usize> { (0..n).filter(|&v| s >> v & 1 == 1).collect() };
    minimal.sort_by_key(|&s| members(s));
    fn pick(list: &[u64], from: usize, used: u64, left: usize, chosen: &mut Vec<u64>) -> bool {
        if left == 0 {
            return true;
        }
        for i in from..list.len() {
            if list[i] & used == 0 {
                chosen.push(list[i]);
                if pick(list, i + 1, used | list[i], left - 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    if !pick(&minimal, 0, 0, k, &mut chosen) {
        return Ok(None);
    }
    let sets = chosen
        .into_iter()
        .map(|s| VertexSet::from_iter(n, members(s)))
        .collect();
    Ok(Some(CdsFamily { sets }))
}

/// 2-connected chordal graph on `A..F` (ids 0..5) with no two disjoint
/// connected dominating sets.
pub fn negative_chordal() -> Graph {
    let (a, b, c, d, e, f) = (0, 1, 2, 3, 4, 5);
    Graph::from_edges(
        6,
        [(a, b), (a, d), (b, c), (b, d), (b, e), (c, e), (d, e), (d, f), (e, f)],
    )
    .expect("fixture edges are simple")
}

/// 2-connected convex bipartite graph `a1..a5` by `b1..b5` with no two
/// disjoint connected dominating sets.
pub fn negative_convex() -> ConvexModel {
    let edges = [
        (1, 1),
        (1, 4),
        (2, 1),
        (2, 2),
        (2, 3),
        (2, 4),
        (3, 2),
        (3, 3),
        (3, 4),
        (3, 5),
        (4, 4),
        (4, 5),
        (5, 4),
        (5, 5),
    ];
    let zero_based: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
    ConvexModel::from_edges(5, 5, &zero_based).expect("fixture is convex in the A order")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vertex_connectivity;

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_iter(n, vs.iter().copied())
    }

    #[test]
    fn gl_report_lists_every_violation() {
        let inst = GlInstance::new(Graph::complete(4), vec![0, 1], vec![1, 3]).unwrap();
        let good = GlPartition {
            blocks: vec![set(4, &[0]), set(4, &[1, 2, 3])],
        };
        assert!(verify_gl(&inst, &good).ok());
        let swapped = GlPartition {
            blocks: vec![set(4, &[1, 2, 3]), set(4, &[0])],
        };
        let r = verify_gl(&inst, &swapped);
        assert!(r.rules().contains(&"terminal-missing"));
        assert!(r.rules().contains(&"size-mismatch"));
        assert!(r.to_string().starts_with("FAIL "));
    }

    #[test]
    fn gl_report_cover_and_connectivity() {
        let inst = GlInstance::new(Graph::path(4), vec![0, 3], vec![2, 2]).unwrap();
        let bad = GlPartition {
            blocks: vec![set(4, &[0, 2]), set(4, &[3, 2])],
        };
        let rules = verify_gl(&inst, &bad).rules();
        assert!(rules.contains(&"vertex-missing"));
        assert!(rules.contains(&"vertex-duplicated"));
        assert!(rules.contains(&"disconnected"));
        assert_eq!(
            verify_gl(&inst, &GlPartition { blocks: vec![] }).rules()[0],
            "block-count"
        );
    }

    #[test]
    fn cds_partition_checks() {
        let k4 = Graph::complete(4);
        let p = CdsFamily {
            sets: vec![set(4, &[0, 1]), set(4, &[2, 3])],
        };
        assert_eq!(verify_cds_partition(&k4, &p).to_string(), "OK\n");
        let c6 = Graph::cycle(6);
        let p = CdsFamily {
            sets: vec![set(6, &[0, 1, 2]), set(6, &[3, 4, 5])],
        };
        let r = verify_cds_partition(&c6, &p);
        assert_eq!(r.violations[0].rule, "not-dominating");
        assert_eq!(r.violations[0].ids, vec![0, 4]);
    }

    #[test]
    fn brute_gl_is_lexicographic() {
        let inst = GlInstance::new(Graph::complete(4), vec![0, 1], vec![2, 2]).unwrap();
        let p = brute_gl(&inst).unwrap().unwrap();
        assert_eq!(p.blocks, vec![set(4, &[0, 2]), set(4, &[1, 3])]);
    }

    #[test]
    fn brute_gl_star() {
        let star = Graph::from_edges(5, (1..5).map(|v| (0, v))).unwrap();
        let center_small = GlInstance::new(star.clone(), vec![0, 1], vec![2, 3]).unwrap();
        assert_eq!(brute_gl(&center_small).unwrap(), None);
        let center_big = GlInstance::new(star, vec![1, 0], vec![2, 3]).unwrap();
        assert_eq!(brute_gl(&center_big).unwrap(), None);
        let leaf_pair = GlInstance::new(
            Graph::from_edges(5, (1..5).map(|v| (0, v))).unwrap(),
            vec![1, 0],
            vec![1, 4],
        )
        .unwrap();
        let p = brute_gl(&leaf_pair).unwrap().unwrap();
        assert!(verify_gl(&leaf_pair, &p).ok());
    }

    #[test]
    fn oracle_guard() {
        let g = Graph::path(15);
        let inst = GlInstance::new(g.clone(), vec![0], vec![15]).unwrap();
        assert_eq!(brute_gl(&inst), Err(Error::TooLargeForOracle { n: 15, limit: 14 }));
        assert!(brute_gl_limited(&inst, 15).unwrap().is_some());
        assert!(matches!(brute_cds(&g, 1), Err(Error::TooLargeForOracle { .. })));
    }

    #[test]
    fn brute_cds_complete_graph() {
        let fam = brute_cds(&Graph::complete(4), 2).unwrap().unwrap();
        assert_eq!(fam.sets, vec![set(4, &[0]), set(4, &[1])]);
        assert_eq!(brute_cds(&Graph::complete(4), 5).unwrap(), None);
    }

    #[test]
    fn negative_fixtures() {
        let chordal = negative_chordal();
        assert_eq!(vertex_connectivity(&chordal), Ok(2));
        assert_eq!(brute_cds(&chordal, 2).unwrap(), None);
        assert!(brute_cds(&chordal, 1).unwrap().is_some());
        let convex = negative_convex().graph();
        assert_eq!(vertex_connectivity(&convex), Ok(2));
        assert_eq!(brute_cds(&convex, 2).unwrap(), None);
    }

    #[test]
    fn chordal_fixture_examples() {
        let g = negative_chordal();
        // D, E, F
        assert_eq!(is_connected_subset(&g, &set(6, &[3, 4, 5])), Ok(true));
        // B, D, E
        assert!(dominates(&g, &set(6, &[1, 3, 4])));
    }
}
