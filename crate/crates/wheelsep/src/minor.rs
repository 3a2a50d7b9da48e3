//! Induced-minor models: verification, an exhaustive desk-scale oracle, the
//! series-parallel reduction behind the K4 test, and the structured wheel/fan
//! witness constructions used by the pipeline.

use std::collections::BTreeMap;

use crate::graph::{Graph, Vertex, VertexSequence, VertexSet};
use crate::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Hosts above this size are rejected by the exhaustive oracle unless an
/// explicit cap is supplied.
pub const DEFAULT_ORACLE_CAP: usize = 12;

// Branch sets are tracked as u64 bitmasks inside the oracle.
const HARD_CAP: usize = 60;

/// A branch-set model of `pattern` inside some host graph: pairwise disjoint
/// connected sets with a host edge between two sets iff the corresponding
/// pattern vertices are adjacent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedMinorWitness {
    pub pattern: Graph,
    pub branch_sets: BTreeMap<Vertex, VertexSet>,
}

impl InducedMinorWitness {
    /// All host vertices used by the model.
    pub fn support(&self) -> VertexSet {
        self.branch_sets.values().flatten().copied().collect()
    }

    /// Replaces every branch-set vertex by its fiber under a contraction,
    /// turning a model in the image graph into a model in the origin graph.
    pub fn expand_through(&self, cm: &crate::graph::ContractionMap) -> InducedMinorWitness {
        InducedMinorWitness {
            pattern: self.pattern.clone(),
            branch_sets: self
                .branch_sets
                .iter()
                .map(|(&p, set)| (p, cm.expand(set)))
                .collect(),
        }
    }
}

/// Checks the three model conditions: disjoint nonempty branch sets covering
/// exactly the pattern vertices, each inducing a connected host subgraph, and
/// the edge-iff condition between every pair.
pub fn verify_model(host: &Graph, witness: &InducedMinorWitness) -> Result<bool> {
    for set in witness.branch_sets.values() {
        for &v in set {
            if !host.contains_vertex(v) {
                return Err(Error::VertexNotInGraph(v));
            }
        }
    }
    let keys: VertexSet = witness.branch_sets.keys().copied().collect();
    if keys != witness.pattern.vertex_set() {
        return Ok(false);
    }
    let mut seen = VertexSet::new();
    for set in witness.branch_sets.values() {
        if set.is_empty() {
            return Ok(false);
        }
        for &v in set {
            if !seen.insert(v) {
                return Ok(false); // overlap
            }
        }
        if !host.induced(set).is_connected() {
            return Ok(false);
        }
    }
    let pairs: Vec<Vertex> = keys.iter().copied().collect();
    for (i, &u) in pairs.iter().enumerate() {
        for &v in &pairs[i + 1..] {
            let su = &witness.branch_sets[&u];
            let sv = &witness.branch_sets[&v];
            let host_edge = su.iter().any(|&x| sv.iter().any(|&y| host.has_edge(x, y)));
            if host_edge != witness.pattern.has_edge(u, v) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

struct MaskGraph {
    ids: Vec<Vertex>,
    adj: Vec<u64>,
}

impl MaskGraph {
    fn build(g: &Graph) -> Self {
        let ids: Vec<Vertex> = g.vertices().collect();
        let index: BTreeMap<Vertex, usize> =
            ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj = ids
            .iter()
            .map(|&v| {
                g.neighbors(v)
                    .iter()
                    .fold(0u64, |m, u| m | (1 << index[u]))
            })
            .collect();
        MaskGraph { ids, adj }
    }

    fn mask_connected(&self, mask: u64) -> bool {
        let start = 1u64 << mask.trailing_zeros();
        let mut reached = start;
        loop {
            let mut grow = reached;
            let mut bits = reached;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                grow |= self.adj[i] & mask;
            }
            if grow == reached {
                return reached == mask;
            }
            reached = grow;
        }
    }

    fn reach(&self, mask: u64) -> u64 {
        let mut out = 0u64;
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            out |= self.adj[i];
        }
        out
    }

    fn set_of(&self, mask: u64) -> VertexSet {
        let mut out = VertexSet::new();
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            out.insert(self.ids[i]);
        }
        out
    }
}

/// All nonempty connected vertex subsets in ascending bitmask order, paired
/// with the union of their members' neighbourhoods. Ascending mask order is
/// the canonical search order of the oracle: subsets seeded at low vertex ids
/// come first.
fn connected_subsets(mg: &MaskGraph) -> Vec<(u64, u64)> {
    let n = mg.ids.len();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << n) {
        if mg.mask_connected(mask) {
            out.push((mask, mg.reach(mask)));
        }
    }
    out
}

fn search_levels(
    subsets: &[(u64, u64)],
    pattern_adj: &[Vec<bool>],
    level: usize,
    used: u64,
    chosen: &mut Vec<u64>,
) -> Option<Vec<u64>> {
    if level == pattern_adj.len() {
        return Some(chosen.clone());
    }
    for &(mask, reach) in subsets {
        if mask & used != 0 {
            continue;
        }
        let ok = chosen
            .iter()
            .enumerate()
            .all(|(j, &prev)| ((reach & prev) != 0) == pattern_adj[level][j]);
        if !ok {
            continue;
        }
        chosen.push(mask);
        if let Some(hit) = search_levels(subsets, pattern_adj, level + 1, used | mask, chosen) {
            return Some(hit);
        }
        chosen.pop();
    }
    None
}

/// Exhaustive induced-minor search with an explicit host-size cap and a
/// parallelism request. `parallel` splits the work over the first branch-set
/// choice; the result is the same first witness in canonical order either way
/// (and the flag is ignored when the `parallel` feature is off).
pub fn find_induced_minor_opts(
    host: &Graph,
    pattern: &Graph,
    cap: usize,
    parallel: bool,
) -> Result<Option<InducedMinorWitness>> {
    let n = host.vertex_count();
    let cap = cap.min(HARD_CAP);
    if n > cap {
        return Err(Error::OracleCapExceeded { vertices: n, cap });
    }
    if pattern.vertex_count() == 0 {
        return Ok(Some(InducedMinorWitness {
            pattern: pattern.clone(),
            branch_sets: BTreeMap::new(),
        }));
    }
    if pattern.vertex_count() > n {
        return Ok(None);
    }
    let mg = MaskGraph::build(host);
    let subsets = connected_subsets(&mg);

    // Assign pattern vertices in increasing degree order, ties by id.
    let mut order: Vec<Vertex> = pattern.vertices().collect();
    order.sort_by_key(|&v| (pattern.degree(v), v));
    let pattern_adj: Vec<Vec<bool>> = order
        .iter()
        .enumerate()
        .map(|(i, &v)| (0..i).map(|j| pattern.has_edge(v, order[j])).collect())
        .collect();

    let try_first = |&(mask, _): &(u64, u64)| -> Option<Vec<u64>> {
        let mut chosen = vec![mask];
        search_levels(&subsets, &pattern_adj, 1, mask, &mut chosen)
    };

    #[cfg(feature = "parallel")]
    let hit = if parallel {
        subsets.par_iter().find_map_first(try_first)
    } else {
        subsets.iter().find_map(try_first)
    };
    #[cfg(not(feature = "parallel"))]
    let hit = {
        let _ = parallel;
        subsets.iter().find_map(try_first)
    };

    let Some(masks) = hit else {
        return Ok(None);
    };
    let witness = InducedMinorWitness {
        pattern: pattern.clone(),
        branch_sets: order
            .iter()
            .zip(&masks)
            .map(|(&p, &m)| (p, mg.set_of(m)))
            .collect(),
    };
    debug_assert_eq!(verify_model(host, &witness), Ok(true));
    Ok(Some(witness))
}

/// Exhaustive search under the default cap; `None` is a proof of absence.
pub fn find_induced_minor(host: &Graph, pattern: &Graph) -> Result<Option<InducedMinorWitness>> {
    find_induced_minor_opts(host, pattern, DEFAULT_ORACLE_CAP, cfg!(feature = "parallel"))
}

pub fn find_induced_minor_capped(
    host: &Graph,
    pattern: &Graph,
    cap: usize,
) -> Result<Option<InducedMinorWitness>> {
    find_induced_minor_opts(host, pattern, cap, cfg!(feature = "parallel"))
}

/// Builds a verified wheel model from an induced cycle `c` and a component `d`
/// of `g - V(c)` with at least `ell` neighbours on the cycle: the component is
/// the hub and the cycle splits into `ell` neighbour-anchored arcs.
///
/// The `ell` anchors start at the least-id neighbour and follow the cycle
/// rotation; each arc runs from its anchor up to the next one.
pub fn wheel_witness_from_component(
    g: &Graph,
    c: &VertexSequence,
    d: &VertexSet,
    ell: u32,
) -> Result<InducedMinorWitness> {
    if ell < 3 {
        return Err(Error::Precondition("wheel witness needs ell >= 3".into()));
    }
    if !g.is_induced_cycle(c) {
        return Err(Error::Precondition("c is not an induced cycle of g".into()));
    }
    let cycle_set = c.to_set();
    if !g.without(&cycle_set).components().iter().any(|comp| comp == d) {
        return Err(Error::Precondition(
            "d is not a component of g - V(c)".into(),
        ));
    }
    let dn = g.open_neighborhood(d)?;
    let items = c.items();
    let m = items.len();
    let nbr_positions: Vec<usize> = (0..m).filter(|&i| dn.contains(&items[i])).collect();
    if nbr_positions.len() < ell as usize {
        return Err(Error::Precondition(format!(
            "component has {} neighbours on the cycle, needs at least {ell}",
            nbr_positions.len()
        )));
    }
    let start = (0..nbr_positions.len())
        .min_by_key(|&j| items[nbr_positions[j]])
        .unwrap();
    let k = nbr_positions.len();
    let anchors: Vec<usize> = (0..ell as usize)
        .map(|j| nbr_positions[(start + j) % k])
        .collect();

    let mut branch_sets: BTreeMap<Vertex, VertexSet> = BTreeMap::new();
    for i in 0..ell as usize {
        let from = anchors[i];
        let to = anchors[(i + 1) % ell as usize];
        let mut arc = VertexSet::new();
        let mut pos = from;
        loop {
            arc.insert(items[pos]);
            pos = (pos + 1) % m;
            if pos == to {
                break;
            }
        }
        branch_sets.insert(i as Vertex, arc);
    }
    branch_sets.insert(ell, d.clone());
    let witness = InducedMinorWitness {
        pattern: Graph::wheel(ell),
        branch_sets,
    };
    match verify_model(g, &witness)? {
        true => Ok(witness),
        false => Err(Error::Internal(
            "constructed wheel witness failed verification".into(),
        )),
    }
}

/// Builds a verified fan model from an induced path `q` and a component `b` of
/// `g - V(q)` with at least `ell >= 2` neighbours on the path: the component
/// is the hub and the path splits into `ell` neighbour-anchored segments.
pub fn fan_witness(
    g: &Graph,
    q: &VertexSequence,
    b: &VertexSet,
    ell: u32,
) -> Result<InducedMinorWitness> {
    if ell < 2 {
        return Err(Error::Precondition("fan witness needs ell >= 2".into()));
    }
    if !g.is_induced_path(q) {
        return Err(Error::Precondition("q is not an induced path of g".into()));
    }
    let path_set = q.to_set();
    if !g.without(&path_set).components().iter().any(|comp| comp == b) {
        return Err(Error::Precondition(
            "b is not a component of g - V(q)".into(),
        ));
    }
    let bn = g.open_neighborhood(b)?;
    let items = q.items();
    let anchors: Vec<usize> = (0..items.len())
        .filter(|&i| bn.contains(&items[i]))
        .collect();
    if anchors.len() < ell as usize {
        return Err(Error::Precondition(format!(
            "component has {} neighbours on the path, needs at least {ell}",
            anchors.len()
        )));
    }
    let ell_us = ell as usize;
    let mut branch_sets: BTreeMap<Vertex, VertexSet> = BTreeMap::new();
    for i in 0..ell_us {
        let from = anchors[i];
        let to = if i + 1 < ell_us {
            anchors[i + 1] // exclusive
        } else {
            *anchors.last().unwrap() + 1 // absorb remaining anchors
        };
        branch_sets.insert(i as Vertex, items[from..to].iter().copied().collect());
    }
    branch_sets.insert(ell, b.clone());
    let witness = InducedMinorWitness {
        pattern: Graph::fan(ell),
        branch_sets,
    };
    match verify_model(g, &witness)? {
        true => Ok(witness),
        false => Err(Error::Internal(
            "constructed fan witness failed verification".into(),
        )),
    }
}

/// Replay data of the series-parallel reduction: the elimination order with
/// reduction-time neighbourhoods, and the stuck remainder if any.
#[derive(Debug, Clone)]
pub(crate) struct SpReplay {
    /// `(eliminated vertex, its neighbours at elimination time)`, in order.
    pub bags: Vec<(Vertex, VertexSet)>,
    /// The remainder with minimum degree >= 3, if the reduction got stuck.
    pub stuck: Option<Graph>,
}

/// Runs the reduction: repeatedly remove the least-id vertex of degree <= 2,
/// reconnecting the two neighbours of a degree-2 vertex (a no-op when the edge
/// already exists, which is exactly the parallel-edge case).
pub(crate) fn sp_reduce(g: &Graph) -> SpReplay {
    let mut adj: BTreeMap<Vertex, VertexSet> =
        g.vertices().map(|v| (v, g.neighbors(v).clone())).collect();
    let mut bags = Vec::with_capacity(adj.len());
    loop {
        let Some(v) = adj
            .iter()
            .find(|(_, nbrs)| nbrs.len() <= 2)
            .map(|(&v, _)| v)
        else {
            break;
        };
        let nbrs = adj.remove(&v).unwrap();
        for &u in &nbrs {
            adj.get_mut(&u).unwrap().remove(&v);
        }
        if nbrs.len() == 2 {
            let mut it = nbrs.iter();
            let (&a, &b) = (it.next().unwrap(), it.next().unwrap());
            adj.get_mut(&a).unwrap().insert(b);
            adj.get_mut(&b).unwrap().insert(a);
        }
        bags.push((v, nbrs));
    }
    let stuck = if adj.is_empty() {
        None
    } else {
        let vertices: Vec<Vertex> = adj.keys().copied().collect();
        let edges: Vec<(Vertex, Vertex)> = adj
            .iter()
            .flat_map(|(&u, nbrs)| nbrs.range(u + 1..).map(move |&w| (u, w)))
            .collect();
        Some(Graph::new(vertices, edges).expect("reduction state is a valid graph"))
    };
    SpReplay { bags, stuck }
}

/// True iff `g` has no K4 minor, decided by the series-parallel reduction.
pub fn k4_minor_free(g: &Graph) -> bool {
    sp_reduce(g).stuck.is_none()
}

fn contract_edge(g: &Graph, keep: Vertex, gone: Vertex) -> Graph {
    let mut edges = Vec::with_capacity(g.edge_count());
    for (mut u, mut v) in g.edges() {
        if u == gone {
            u = keep;
        }
        if v == gone {
            v = keep;
        }
        if u != v {
            edges.push((u, v));
        }
    }
    Graph::new(g.vertices().filter(|&v| v != gone), edges).unwrap()
}

/// Extracts an explicit K4 branch-set model from any graph with a K4 minor, by
/// greedily deleting vertices and contracting edges while the reduction test
/// still reports a K4 minor. Polynomial; no size cap.
pub fn k4_witness(g: &Graph) -> Result<InducedMinorWitness> {
    if k4_minor_free(g) {
        return Err(Error::Precondition("graph has no K4 minor".into()));
    }
    let mut cur = g.clone();
    let mut fibers: BTreeMap<Vertex, VertexSet> = cur
        .vertices()
        .map(|v| (v, VertexSet::from([v])))
        .collect();
    while cur.vertex_count() > 4 {
        let deletion = cur
            .vertices()
            .find(|&v| !k4_minor_free(&cur.without(&VertexSet::from([v]))));
        if let Some(v) = deletion {
            cur = cur.without(&VertexSet::from([v]));
            fibers.remove(&v);
            continue;
        }
        let contraction = cur
            .edges()
            .into_iter()
            .find(|&(u, v)| !k4_minor_free(&contract_edge(&cur, u, v)));
        match contraction {
            Some((u, v)) => {
                cur = contract_edge(&cur, u, v);
                let fv = fibers.remove(&v).unwrap();
                fibers.get_mut(&u).unwrap().extend(fv);
            }
            None => {
                return Err(Error::Internal(
                    "K4 extraction found no reducing move".into(),
                ))
            }
        }
    }
    if cur.edge_count() != 6 {
        return Err(Error::Internal("K4 extraction did not end at K4".into()));
    }
    // Graph::wheel(3) is K4 on vertex ids 0..=3.
    let witness = InducedMinorWitness {
        pattern: Graph::wheel(3),
        branch_sets: fibers
            .into_values()
            .enumerate()
            .map(|(i, f)| (i as Vertex, f))
            .collect(),
    };
    match verify_model(g, &witness)? {
        true => Ok(witness),
        false => Err(Error::Internal(
            "constructed K4 witness failed verification".into(),
        )),
    }
}
