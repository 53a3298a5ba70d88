//! Seeded instance generators.
//!
//! Every generator draws from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded via
//! `seed_from_u64`, a fixed portable stream, so a seed and parameter tuple
//! always yield the same instance. Connectivity targets are met by rejection
//! sampling with a bounded retry budget.

use std::collections::BTreeSet;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cds::{BiconvexModel, ConvexModel, IntervalModel};
use crate::error::{Error, Result};
use crate::gl::{CdsInput, GlInstance};
use crate::graph::{vertex_connectivity, DominatingTree, Graph, VertexId, VertexSet};

pub const RETRY_BUDGET: usize = 200;

/// Name of the PRNG, written into generated file headers.
pub const RNG_NAME: &str = "chacha8";

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn reaches(g: &Graph, target: usize) -> bool {
    g.is_connected() && vertex_connectivity(g).is_ok_and(|c| c >= target)
}

/// Random integer intervals whose graph is connected with κ ≥ `target_k`.
///
/// Lengths are scaled so each point is covered by about `2 * target_k + 3`
/// intervals; left ends start one length before the axis to even out coverage.
pub fn gen_interval(n: usize, target_k: usize, seed: u64) -> Result<IntervalModel> {
    if n < target_k + 1 || n < 2 {
        return Err(Error::InvalidModel(format!(
            "{n} intervals cannot be {target_k}-connected"
        )));
    }
    let mut rng = rng(seed);
    let span: i64 = 1000;
    let cover = (2 * target_k + 3) as f64;
    let w = ((cover * span as f64) / (1.5 * n as f64)).ceil().max(1.0) as i64;
    for _ in 0..RETRY_BUDGET {
        let intervals: Vec<(i64, i64)> = (0..n)
            .map(|_| {
                let len = rng.gen_range(w..=2 * w);
                let l = rng.gen_range(-len..=span);
                (l, l + len)
            })
            .collect();
        let m = IntervalModel::new(intervals)?;
        if reaches(&m.graph(), target_k) {
            return Ok(m);
        }
    }
    Err(Error::GenerationFailed { attempts: RETRY_BUDGET })
}

/// Staircase biconvex model: `b_j` sees `a_f(j) ..= a_g(j)` with `f` and `g`
/// nondecreasing, `f(0) = 0` and `g(nB - 1) = nA - 1`.
///
/// Both sides get jittered sorted positions on a unit line and `b_j` sees
/// every A-vertex within a random band half-width of it. The band is scaled
/// so the extreme vertices have roughly `target_k + 1` neighbors, which is
/// where staircases are thinnest.
pub fn gen_biconvex(na: usize, nb: usize, target_k: usize, seed: u64) -> Result<BiconvexModel> {
    if na <= target_k || nb <= target_k {
        return Err(Error::InvalidModel(format!(
            "sides {na}x{nb} too small for connectivity {target_k}"
        )));
    }
    let mut rng = rng(seed);
    let positions = |rng: &mut ChaCha8Rng, len: usize| -> Vec<f64> {
        let mut xs: Vec<f64> = (0..len)
            .map(|i| ((i as f64 + rng.gen_range(-0.45..0.45)) / (len - 1) as f64).clamp(0.0, 1.0))
            .collect();
        xs.sort_by(f64::total_cmp);
        xs
    };
    let short = na.min(nb) as f64 - 1.0;
    for _ in 0..RETRY_BUDGET {
        let xa = positions(&mut rng, na);
        let xb = positions(&mut rng, nb);
        let w = target_k as f64 / short * rng.gen_range(0.7..1.0);
        let mut prev = (0, 0);
        let mut ranges = Vec::with_capacity(nb);
        for (j, &y) in xb.iter().enumerate() {
            let lo = xa.partition_point(|&x| x < y - w);
            let hi = xa.partition_point(|&x| x <= y + w).max(lo + 1).min(na);
            let lo = if j == 0 { 0 } else { lo.min(hi - 1).max(prev.0) };
            let hi = if j == nb - 1 { na } else { hi.max(prev.1) };
            prev = (lo, hi);
            ranges.push(lo..hi);
        }
        let cm = ConvexModel::new(na, nb, ranges)?;
        let Ok(bm) = BiconvexModel::new(cm) else { continue };
        if reaches(&bm.graph(), target_k) {
            return Ok(bm);
        }
    }
    Err(Error::GenerationFailed { attempts: RETRY_BUDGET })
}

/// Convex model where each `b_j` gets a random A-interval, resampled until
/// κ ≥ `target_k`.
///
/// Interval centers are stratified over the A-line padded by one mean width
/// on each side, so every gap between consecutive A-vertices (and each end)
/// is spanned by about `target_k + 1` intervals; widths are drawn
/// independently and the B order is shuffled.
pub fn gen_convex(na: usize, nb: usize, target_k: usize, seed: u64) -> Result<ConvexModel> {
    if na <= target_k || nb <= target_k + 1 {
        return Err(Error::InvalidModel(format!(
            "sides {na}x{nb} too small for connectivity {target_k}"
        )));
    }
    let mut rng = rng(seed);
    let t = target_k as f64;
    let width = ((t + 1.0) * na as f64 / (nb as f64 - t - 1.0)).max(t + 2.0);
    let min_width = (target_k + 1).min(na);
    for _ in 0..RETRY_BUDGET {
        let w = width * rng.gen_range(1.0..1.4);
        let step = (na as f64 + w) / nb as f64;
        let mut ranges: Vec<std::ops::Range<usize>> = (0..nb)
            .map(|j| {
                let c = -w / 2.0 + (j as f64 + rng.gen_range(0.0..1.0)) * step;
                let half = w * rng.gen_range(0.4..0.7);
                let l = (c - half).round().clamp(0.0, na as f64) as usize;
                let r = (c + half).round().clamp(0.0, na as f64) as usize;
                match (l, r) {
                    _ if r >= l + min_width => l..r,
                    (0, _) => 0..min_width,
                    _ if r == na => na - min_width..na,
                    _ => l..(l + min_width).min(na),
                }
            })
            .collect();
        ranges.shuffle(&mut rng);
        let cm = ConvexModel::new(na, nb, ranges)?;
        if reaches(&cm.graph(), target_k) {
            return Ok(cm);
        }
    }
    Err(Error::GenerationFailed { attempts: RETRY_BUDGET })
}

/// Graph with `k` planted disjoint dominating paths.
///
/// A random prefix of a random permutation is cut into `k` nonempty paths;
/// every vertex not on path `i` gets an edge to a random member of path `i`,
/// then `extra_edges` random edges are added.
pub fn gen_planted_cds(n: usize, k: usize, extra_edges: usize, seed: u64) -> Result<(Graph, CdsInput)> {
    if k == 0 || n < 2 * k {
        return Err(Error::InvalidInstance(format!(
            "planting {k} trees needs at least {} vertices",
            2 * k
        )));
    }
    let mut rng = rng(seed);
    let mut perm: Vec<VertexId> = (0..n).collect();
    perm.shuffle(&mut rng);
    let total = rng.gen_range(k..=n);
    let cuts = composition(&mut rng, total, k);
    let mut paths = Vec::with_capacity(k);
    let mut at = 0;
    for len in cuts {
        paths.push(perm[at..at + len].to_vec());
        at += len;
    }
    let mut edges: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    let add = |edges: &mut BTreeSet<(VertexId, VertexId)>, u: VertexId, v: VertexId| {
        edges.insert((u.min(v), u.max(v)));
    };
    for p in &paths {
        for w in p.windows(2) {
            add(&mut edges, w[0], w[1]);
        }
    }
    let mut owner = vec![usize::MAX; n];
    for (i, p) in paths.iter().enumerate() {
        for &v in p {
            owner[v] = i;
        }
    }
    for (v, &own) in owner.iter().enumerate() {
        for (i, p) in paths.iter().enumerate() {
            if own != i {
                let u = p[rng.gen_range(0..p.len())];
                add(&mut edges, u, v);
            }
        }
    }
    let max_edges = n * (n - 1) / 2;
    let target = (edges.len() + extra_edges).min(max_edges);
    while edges.len() < target {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            add(&mut edges, u, v);
        }
    }
    let g = Graph::from_edges(n, edges)?;
    let trees = paths
        .iter()
        .map(|p| DominatingTree {
            vertices: VertexSet::from_iter(n, p.iter().copied()),
            edges: p.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))).collect(),
        })
        .collect();
    let cds = CdsInput { trees };
    cds.validate(&g, k)?;
    Ok((g, cds))
}

/// Uniform random composition of `total` into `parts` positive parts.
fn composition(rng: &mut ChaCha8Rng, total: usize, parts: usize) -> Vec<usize> {
    let mut cuts: Vec<usize> = index::sample(rng, total - 1, parts - 1)
        .into_iter()
        .map(|c| c + 1)
        .collect();
    cuts.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut prev = 0;
    for c in cuts.into_iter().chain(std::iter::once(total)) {
        out.push(c - prev);
        prev = c;
    }
    out
}

/// `k` distinct uniform terminals (from `pool` when it has at least `k`
/// members) and a uniform random composition of `n` into demands.
pub fn gen_gl_extension(g: &Graph, k: usize, seed: u64, pool: Option<&VertexSet>) -> Result<GlInstance> {
    let n = g.n();
    if k == 0 || k > n {
        return Err(Error::InvalidInstance(format!(
            "cannot place {k} terminals on {n} vertices"
        )));
    }
    let mut rng = rng(seed);
    let candidates: Vec<VertexId> = match pool {
        Some(p) if p.len() >= k => p.to_vec(),
        _ => (0..n).collect(),
    };
    let terminals = index::sample(&mut rng, candidates.len(), k)
        .into_iter()
        .map(|i| candidates[i])
        .collect();
    let demands = composition(&mut rng, n, k);
    GlInstance::new(g.clone(), terminals, demands)
}
