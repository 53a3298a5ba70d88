use glcds::cds::{
    cds_biconvex_detailed, cds_interval, extend_to_partition, interval_path_decomposition, BiconvexModel, ConvexModel,
    IntervalModel,
};
use glcds::flow::{is_induced, make_induced, vertex_disjoint_paths};
use glcds::gen::{gen_gl_extension, gen_planted_cds};
use glcds::gl::{solve_with, SolveOptions};
use glcds::graph::{
    dominates, is_connected_subset, open_neighborhood, spanning_tree, vertex_connectivity, Graph, VertexSet,
};
use glcds::verify::{brute_cds, brute_gl, verify_cds_partition, verify_gl};
use proptest::prelude::*;

fn arb_graph(max_n: usize, max_m: usize) -> impl Strategy<Value = Graph> {
    (2usize..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec((0..n, 0..n), 0..=max_m).prop_map(move |pairs| {
            let mut seen = std::collections::BTreeSet::new();
            let edges: Vec<_> = pairs
                .into_iter()
                .filter(|&(u, v)| u != v && seen.insert((u.min(v), u.max(v))))
                .collect();
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

/// Every subset of `pool` of size `r`, as bitmasks.
fn subsets(pool: &[usize], r: usize, f: &mut impl FnMut(u64) -> bool) -> bool {
    fn rec(pool: &[usize], r: usize, from: usize, acc: u64, f: &mut impl FnMut(u64) -> bool) -> bool {
        if r == 0 {
            return f(acc);
        }
        for i in from..pool.len() {
            if pool.len() - i < r {
                break;
            }
            if rec(pool, r - 1, i + 1, acc | 1 << pool[i], f) {
                return true;
            }
        }
        false
    }
    rec(pool, r, 0, 0, f)
}

fn masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
        .collect()
}

/// Vertices reachable from `s` avoiding `removed`, as a mask.
fn reach(adj: &[u64], s: usize, removed: u64) -> u64 {
    let mut seen = 1u64 << s;
    loop {
        let mut next = seen;
        let mut r = seen;
        while r != 0 {
            let v = r.trailing_zeros() as usize;
            next |= adj[v] & !removed;
            r &= r - 1;
        }
        if next == seen {
            return seen;
        }
        seen = next;
    }
}

/// Smallest separator by enumeration; `n - 1` for complete graphs.
fn brute_connectivity(g: &Graph) -> usize {
    let n = g.n();
    let all: u64 = (1u64 << n) - 1;
    let adj = masks(g);
    let delta = (0..n).map(|v| g.degree(v)).min().unwrap();
    if delta == n - 1 {
        return n - 1;
    }
    let pool: Vec<usize> = (0..n).collect();
    for r in 0..delta {
        let found = subsets(&pool, r, &mut |s| {
            let rest = all & !s;
            let start = rest.trailing_zeros() as usize;
            reach(&adj, start, s) != rest
        });
        if found {
            return r;
        }
    }
    delta
}

/// Smallest `s`–`t` vertex cut; an `s`–`t` edge adds one.
fn brute_local(g: &Graph, s: usize, t: usize) -> usize {
    let mut adj = masks(g);
    let direct = usize::from(g.has_edge(s, t));
    adj[s] &= !(1 << t);
    adj[t] &= !(1 << s);
    let pool: Vec<usize> = (0..g.n()).filter(|&v| v != s && v != t).collect();
    for r in 0..=pool.len() {
        if subsets(&pool, r, &mut |cut| reach(&adj, s, cut) >> t & 1 == 0) {
            return r + direct;
        }
    }
    unreachable!("removing every other vertex separates")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn connectivity_matches_separator_enumeration(g in arb_graph(12, 40)) {
        prop_assert_eq!(vertex_connectivity(&g).unwrap(), brute_connectivity(&g));
    }

    #[test]
    fn menger_matches_min_cut(g in arb_graph(12, 30), s in 0usize..12, t in 0usize..12) {
        let (s, t) = (s % g.n(), t % g.n());
        prop_assume!(s != t);
        let fam = vertex_disjoint_paths(&g, s, t, usize::MAX).unwrap();
        prop_assert_eq!(fam.validate(&g), Ok(()));
        prop_assert_eq!(fam.paths.len(), brute_local(&g, s, t));
    }

    #[test]
    fn induced_shortening(g in arb_graph(14, 50), walk in proptest::collection::vec(0usize..100, 1..14)) {
        // greedy simple walk through the graph
        let mut path = vec![0usize];
        for w in walk {
            let last = *path.last().unwrap();
            let next: Vec<_> = g.neighbors(last).iter().copied().filter(|v| !path.contains(v)).collect();
            if next.is_empty() { break; }
            path.push(next[w % next.len()]);
        }
        let p = make_induced(&g, &path);
        prop_assert!(is_induced(&g, &p));
        prop_assert_eq!(p.first(), path.first());
        prop_assert_eq!(p.last(), path.last());
        prop_assert!(p.windows(2).all(|w| g.has_edge(w[0], w[1])));
        let mut it = path.iter();
        prop_assert!(p.iter().all(|v| it.any(|x| x == v)), "not a subsequence");
    }

    #[test]
    fn neighborhood_and_domination(g in arb_graph(16, 40), bits in any::<u16>()) {
        let s = VertexSet::from_iter(g.n(), (0..g.n()).filter(|v| bits >> v & 1 == 1));
        let nb = open_neighborhood(&g, &s);
        prop_assert!(nb.is_disjoint(&s));
        for v in 0..g.n() {
            let adjacent = g.neighbors(v).iter().any(|&u| s.contains(u));
            prop_assert_eq!(nb.contains(v), !s.contains(v) && adjacent);
        }
        let mut closed = s.clone();
        closed.union_with(&nb);
        prop_assert_eq!(dominates(&g, &s), closed.len() == g.n());
    }

    #[test]
    fn spanning_trees(g in arb_graph(16, 40), bits in any::<u16>()) {
        let s = VertexSet::from_iter(g.n(), (0..g.n()).filter(|v| bits >> v & 1 == 1));
        prop_assume!(!s.is_empty());
        match spanning_tree(&g, &s) {
            Ok(edges) => {
                prop_assert_eq!(is_connected_subset(&g, &s), Ok(true));
                prop_assert_eq!(edges.len(), s.len() - 1);
                let mut parent: Vec<usize> = (0..g.n()).collect();
                fn find(p: &mut Vec<usize>, x: usize) -> usize { if p[x] != x { let r = find(p, p[x]); p[x] = r; } p[x] }
                for (u, v) in edges {
                    prop_assert!(g.has_edge(u, v) && s.contains(u) && s.contains(v));
                    let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                    prop_assert_ne!(a, b, "cycle");
                    parent[a] = b;
                }
            }
            Err(_) => prop_assert_eq!(is_connected_subset(&g, &s), Ok(false)),
        }
    }

    #[test]
    fn interval_decomposition_axioms(iv in proptest::collection::vec((0i64..60, 1i64..25), 2..40)) {
        let m = IntervalModel::new(iv.into_iter().map(|(l, w)| (l, l + w)).collect()).unwrap();
        let g = m.graph();
        match interval_path_decomposition(&m) {
            Ok(pd) => {
                prop_assert!(g.is_connected());
                prop_assert_eq!(pd.validate(&g), Ok(()));
                for b in &pd.bags {
                    for u in b.iter() { for v in b.iter() { prop_assert!(u == v || g.has_edge(u, v)); } }
                }
                let k = vertex_connectivity(&g).unwrap();
                if k >= 1 {
                    let fam = cds_interval(&m, k).unwrap();
                    let part = extend_to_partition(&g, &fam).unwrap();
                    prop_assert!(verify_cds_partition(&g, &part).ok());
                }
            }
            Err(_) => prop_assert!(!g.is_connected()),
        }
    }

    #[test]
    fn staircase_biconvex_pipeline(
        na in 2usize..14,
        nb in 1usize..14,
        lo in proptest::collection::vec(0usize..14, 13),
        len in proptest::collection::vec(1usize..8, 13),
    ) {
        let mut f: Vec<usize> = lo[..nb].iter().map(|&x| x % na).collect();
        f.sort_unstable();
        let mut ranges = Vec::with_capacity(nb);
        let mut prev = 0;
        for j in 0..nb {
            let hi = (f[j] + len[j]).min(na).max(prev);
            prev = hi;
            ranges.push(f[j]..hi);
        }
        let m = BiconvexModel::new(ConvexModel::new(na, nb, ranges).unwrap()).unwrap();
        let g = m.graph();
        prop_assume!(g.is_connected());
        let k = vertex_connectivity(&g).unwrap();
        prop_assume!(k >= 1);
        let c = cds_biconvex_detailed(&m, k).unwrap();
        for b in [m.convex.b(0), m.convex.b(nb - 1)] {
            for p in &c.stripped_paths {
                prop_assert!(p.iter().filter(|&&v| g.has_edge(v, b)).count() <= 1);
            }
        }
        let part = extend_to_partition(&g, &c.family).unwrap();
        prop_assert_eq!(part.len(), k);
        prop_assert!(verify_cds_partition(&g, &part).ok());
    }

    #[test]
    fn cds_oracle_is_sound(g in arb_graph(9, 25), k in 1usize..4) {
        if let Some(fam) = brute_cds(&g, k).unwrap() {
            prop_assert_eq!(fam.sets.len(), k);
            prop_assert_eq!(fam.validate(&g), Ok(()));
            let part = extend_to_partition(&g, &fam).unwrap();
            prop_assert!(verify_cds_partition(&g, &part).ok());
        }
    }

    #[test]
    fn gl_oracle_and_solver_agree(n in 2usize..=12, k in 1usize..=4, extra in 0usize..20, seed in any::<u64>()) {
        prop_assume!(n >= 2 * k);
        let (g, cds) = gen_planted_cds(n, k, extra, seed).unwrap();
        let inst = gen_gl_extension(&g, k, seed, None).unwrap();
        let oracle = brute_gl(&inst).unwrap();
        prop_assert!(oracle.is_some(), "dominating trees guarantee a partition");
        prop_assert!(verify_gl(&inst, &oracle.unwrap()).ok());
        let opts = SolveOptions { check_invariants: true, family_detector: false };
        let run = solve_with(&inst, &cds, opts).unwrap();
        prop_assert!(verify_gl(&inst, &run.partition).ok());
    }
}

#[test]
fn planted_cds_oracle_recovers_plant() {
    for seed in 0..40 {
        let k = 1 + seed as usize % 3;
        let (g, _) = gen_planted_cds(10, k, 5, seed).unwrap();
        let fam = brute_cds(&g, k).unwrap().expect("planted family exists");
        assert_eq!(fam.validate(&g), Ok(()));
    }
}
