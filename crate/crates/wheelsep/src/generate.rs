//! Seeded instance generators for tests and the CLI.
//!
//! All randomness comes from a SplitMix-style 64-bit generator spelled out
//! below, so identical seeds reproduce identical instances anywhere: the state
//! advances by the golden-ratio increment 0x9E3779B97F4A7C15 and the output is
//! the xor-shift-multiply mix with constants 0xBF58476D1CE4E5B9 and
//! 0x94D049BB133111EB. Bounded draws take the output modulo the bound.

use std::collections::{BTreeMap, BTreeSet};

use crate::cobweb::{validate_cobweb, wedges_anchored, Cobweb, WedgeSelection};
use crate::graph::{Graph, Vertex, VertexSequence, VertexSet};
use crate::minor::{find_induced_minor_capped, DEFAULT_ORACLE_CAP};
use crate::weights::{rat, Weighting};
use crate::{Error, Result};

/// How many rejection-sampling attempts a generator makes before giving up.
pub const REJECTION_BUDGET: usize = 10_000;

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw in `0..n` (modulo bias is irrelevant here).
    pub fn next_below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        self.next_u64() % n
    }

    /// True with probability `num/den`.
    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.next_below(den) < num
    }
}

/// Connected K4-minor-free graph on `n` vertices: starting from an edge, each
/// new vertex is attached across a random existing edge, either subdividing it
/// or doubling it as a length-2 path. Both moves keep the graph reducible, so
/// every output excludes K4 (and with it every wheel) as a minor.
pub fn gen_series_parallel(n: u32, seed: u64) -> Graph {
    assert!(n >= 1);
    if n == 1 {
        return Graph::new([0], []).unwrap();
    }
    let mut rng = SplitMix64::new(seed);
    let mut edges: BTreeSet<(Vertex, Vertex)> = BTreeSet::from([(0, 1)]);
    for v in 2..n {
        let list: Vec<(Vertex, Vertex)> = edges.iter().copied().collect();
        let (a, b) = list[rng.next_below(list.len() as u64) as usize];
        if rng.chance(1, 2) {
            edges.remove(&(a, b));
        }
        edges.insert((a, v));
        edges.insert((b, v));
    }
    Graph::new(0..n, edges).unwrap()
}

/// Erdős–Rényi-style draw: each pair becomes an edge with probability
/// `num/den`. May be disconnected.
pub fn gen_random_graph(n: u32, edge_prob: (u64, u64), seed: u64) -> Graph {
    let (num, den) = edge_prob;
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.chance(num, den) {
                edges.push((i, j));
            }
        }
    }
    Graph::new(0..n, edges).unwrap()
}

/// Which pattern a filtered generator must exclude.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterPattern {
    Wheel(u32),
    Fan(u32),
}

impl FilterPattern {
    pub fn graph(&self) -> Graph {
        match *self {
            FilterPattern::Wheel(ell) => Graph::wheel(ell),
            FilterPattern::Fan(ell) => Graph::fan(ell),
        }
    }
}

/// Rejection-samples random graphs until one is connected and certified free
/// of the pattern by the exhaustive oracle.
pub fn gen_filtered(
    n: u32,
    pattern: FilterPattern,
    edge_prob: (u64, u64),
    seed: u64,
    cap: usize,
) -> Result<Graph> {
    if n as usize > cap {
        return Err(Error::OracleCapExceeded {
            vertices: n as usize,
            cap,
        });
    }
    let target = pattern.graph();
    let (num, den) = edge_prob;
    let mut rng = SplitMix64::new(seed);
    for _ in 0..REJECTION_BUDGET {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.chance(num, den) {
                    edges.push((i, j));
                }
            }
        }
        let g = Graph::new(0..n, edges).unwrap();
        if !g.is_connected() {
            continue;
        }
        if find_induced_minor_capped(&g, &target, cap)?.is_none() {
            return Ok(g);
        }
    }
    Err(Error::BudgetExhausted(format!(
        "no {pattern:?}-free connected graph in {REJECTION_BUDGET} attempts; lower the edge probability"
    )))
}

/// Wheel-filtered generation under the default oracle cap.
pub fn gen_oracle_filtered(n: u32, ell: u32, edge_prob: (u64, u64), seed: u64) -> Result<Graph> {
    gen_filtered(n, FilterPattern::Wheel(ell), edge_prob, seed, DEFAULT_ORACLE_CAP)
}

/// Random cobweb: a cycle of length `m >= 4` plus `k` independent vertices
/// with random neighbourhoods of size at least 2, resampled until the cobweb
/// invariants hold.
pub fn gen_cobweb(m: u32, k: u32, seed: u64) -> Result<Cobweb> {
    if m < 4 {
        return Err(Error::Precondition(
            "cobweb cycles here have length at least 4".into(),
        ));
    }
    if k < 1 {
        return Err(Error::Precondition(
            "a cobweb needs at least one independent vertex".into(),
        ));
    }
    let mut rng = SplitMix64::new(seed);
    let cycle = VertexSequence::new((0..m).collect()).unwrap();
    let independent: VertexSet = (m..m + k).collect();
    for _ in 0..REJECTION_BUDGET {
        let mut edges: Vec<(Vertex, Vertex)> = (0..m).map(|i| (i, (i + 1) % m)).collect();
        for t in 0..k {
            let v = m + t;
            let d = 2 + rng.next_below((m - 1) as u64) as u32;
            let mut pool: Vec<Vertex> = (0..m).collect();
            for i in 0..d as usize {
                let j = i + rng.next_below((m as usize - i) as u64) as usize;
                pool.swap(i, j);
                edges.push((pool[i], v));
            }
        }
        let g = Graph::new(0..m + k, edges).unwrap();
        if let Ok(cw) = validate_cobweb(&g, &cycle, &independent) {
            return Ok(cw);
        }
    }
    Err(Error::BudgetExhausted(format!(
        "no valid cobweb with m = {m}, k = {k} in {REJECTION_BUDGET} attempts"
    )))
}

/// Random wedge selection: one independently drawn wedge per anchor.
pub fn gen_wedge_selection(cw: &Cobweb, seed: u64) -> Result<WedgeSelection> {
    let mut rng = SplitMix64::new(seed);
    let mut choice = BTreeMap::new();
    for &v in cw.independent() {
        let wedges = wedges_anchored(cw, v)?;
        let pick = rng.next_below(wedges.len() as u64) as usize;
        choice.insert(v, wedges[pick].clone());
    }
    WedgeSelection::new(cw, choice)
}

/// Independent rationals `p/q` with `0 <= p <= q <= max_denominator` per
/// vertex; resampled until some vertex is positive.
pub fn gen_weighting(g: &Graph, seed: u64, max_denominator: u64) -> Weighting {
    assert!(max_denominator >= 1);
    if g.vertex_count() == 0 {
        return Weighting::zero(g);
    }
    let mut rng = SplitMix64::new(seed);
    for _ in 0..REJECTION_BUDGET {
        let weights: BTreeMap<Vertex, _> = g
            .vertices()
            .map(|v| {
                let q = 1 + rng.next_below(max_denominator);
                let p = rng.next_below(q + 1);
                (v, rat(p as i64, q as i64))
            })
            .collect();
        let w = Weighting::new(g, weights).unwrap();
        if !w.is_trivial() {
            return w;
        }
    }
    Weighting::unit(g)
}

/// A generator request, as the CLI takes it.
#[derive(Debug, Clone)]
pub enum GenSpec {
    SeriesParallel { n: u32, seed: u64 },
    Filtered { n: u32, ell: u32, edge_prob: (u64, u64), seed: u64 },
    Cobweb { m: u32, k: u32, seed: u64 },
}

pub fn generate_graph(spec: &GenSpec, cap: usize) -> Result<Graph> {
    match *spec {
        GenSpec::SeriesParallel { n, seed } => Ok(gen_series_parallel(n, seed)),
        GenSpec::Filtered { n, ell, edge_prob, seed } => {
            gen_filtered(n, FilterPattern::Wheel(ell), edge_prob, seed, cap)
        }
        GenSpec::Cobweb { m, k, seed } => Ok(gen_cobweb(m, k, seed)?.graph().clone()),
    }
}
