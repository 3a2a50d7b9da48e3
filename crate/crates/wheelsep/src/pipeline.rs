//! Top-level separator pipelines.
//!
//! [`separator`] realizes the wheel theorem: every output is either a
//! certificate (balanced separator plus evidence) or an induced-minor witness
//! of the `ell`-wheel, and is re-verified from scratch before it is returned.
//! [`fan_separator`] is the fan analogue. Everywhere the underlying proofs
//! rely on wheel- or fan-freeness, the corresponding branch here constructs a
//! witness instead of assuming the hypothesis, so both functions are total on
//! arbitrary inputs.

use std::collections::BTreeMap;

use crate::cobweb::{
    barrier, good_vertices, intersection_components, separating_good_pair, validate_cobweb,
    wedges_anchored, SegmentSelection, Wedge, WedgeSelection,
};
use crate::graph::{Graph, Vertex, VertexSequence, VertexSet};
use crate::gyarfas::{cycle_plus_vertex, gyarfas_path, thin_separator, CycleOrPair};
use crate::minor::{
    fan_witness, k4_minor_free, k4_witness, sp_reduce, verify_model, wheel_witness_from_component,
    InducedMinorWitness,
};
use crate::weights::{
    heavy_component, is_balanced_separator, one_half, verify_certificate, Rational, Route,
    SeparatorCertificate, Weighting,
};
use crate::{Error, Result};

/// A tree of bags covering a graph; node ids index the bags.
#[derive(Debug, Clone)]
pub struct TreeDecomposition {
    pub tree: Graph,
    pub bags: BTreeMap<Vertex, VertexSet>,
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags.values().map(|b| b.len()).max().unwrap_or(0).saturating_sub(1)
    }

    /// Checks the three tree-decomposition conditions against `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let nodes = self.tree.vertex_set();
        if self.bags.keys().copied().collect::<VertexSet>() != nodes {
            return Err(Error::Precondition("bags must be keyed by tree nodes".into()));
        }
        if !nodes.is_empty()
            && (!self.tree.is_connected() || self.tree.edge_count() != nodes.len() - 1)
        {
            return Err(Error::Precondition("decomposition tree is not a tree".into()));
        }
        for v in g.vertices() {
            let holding: VertexSet = self
                .bags
                .iter()
                .filter(|(_, bag)| bag.contains(&v))
                .map(|(&n, _)| n)
                .collect();
            if holding.is_empty() {
                return Err(Error::Precondition(format!("vertex {v} is in no bag")));
            }
            if !self.tree.induced(&holding).is_connected() {
                return Err(Error::Precondition(format!(
                    "bags holding {v} are not connected in the tree"
                )));
            }
        }
        for (u, v) in g.edges() {
            if !self
                .bags
                .values()
                .any(|bag| bag.contains(&u) && bag.contains(&v))
            {
                return Err(Error::Precondition(format!("edge {u}-{v} is uncovered")));
            }
        }
        Ok(())
    }
}

/// Either a verified separator certificate or a verified induced-minor
/// witness; exactly what the pipelines return.
#[derive(Debug, Clone)]
pub enum PipelineResult {
    Certificate(SeparatorCertificate),
    Witness(InducedMinorWitness),
}

impl PipelineResult {
    pub fn certificate(&self) -> Option<&SeparatorCertificate> {
        match self {
            PipelineResult::Certificate(c) => Some(c),
            PipelineResult::Witness(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&InducedMinorWitness> {
        match self {
            PipelineResult::Witness(w) => Some(w),
            PipelineResult::Certificate(_) => None,
        }
    }
}

/// Re-verifies a pipeline result from scratch: certificates through
/// [`verify_certificate`], witnesses through [`verify_model`] with the pattern
/// required to be the `ell`-wheel or the `ell`-fan.
pub fn verify_result(g: &Graph, w: &Weighting, result: &PipelineResult, ell: u32) -> Result<bool> {
    match result {
        PipelineResult::Certificate(cert) => Ok(verify_certificate(g, w, cert, ell)?.passed()),
        PipelineResult::Witness(witness) => {
            let expected = witness.pattern == Graph::wheel(ell.max(3))
                || witness.pattern == Graph::fan(ell.max(2));
            Ok(expected && verify_model(g, witness)?)
        }
    }
}

/// A single vertex whose deletion leaves no heavy component of the tree,
/// found by orienting every edge towards its heavy side: either some edge has
/// no heavy side (its lesser endpoint works) or the orientation has a sink.
pub fn tree_balanced_vertex(t: &Graph, w: &Weighting) -> Result<Vertex> {
    let n = t.vertex_count();
    if n == 0 || !t.is_connected() || t.edge_count() != n - 1 {
        return Err(Error::Precondition("input is not a tree".into()));
    }
    let wn = w.normalize()?;
    let root = t.vertices().next().unwrap();
    if n == 1 {
        return Ok(root);
    }
    // Subtree weights from the root.
    let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    let mut order = vec![root];
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        for &u in t.neighbors(v) {
            if u != root && !parent.contains_key(&u) {
                parent.insert(u, v);
                order.push(u);
                stack.push(u);
            }
        }
    }
    let mut subtree: BTreeMap<Vertex, Rational> =
        t.vertices().map(|v| (v, wn.get(v).clone())).collect();
    for &v in order.iter().rev() {
        if let Some(&p) = parent.get(&v) {
            let s = subtree[&v].clone();
            *subtree.get_mut(&p).unwrap() += s;
        }
    }
    let half = one_half();
    let total = Rational::from_integer(1.into());
    // Weight on `child`'s side of the edge to its parent.
    let side = |child: Vertex| subtree[&child].clone();

    for (a, b) in t.edges() {
        let (child, _) = if parent.get(&a) == Some(&b) { (a, b) } else { (b, a) };
        let sa = side(child);
        let sb = &total - &sa;
        if sa <= half && sb <= half {
            return Ok(a.min(b));
        }
    }
    // Every edge has exactly one heavy side; the orientation has a sink.
    let sinks: Vec<Vertex> = t
        .vertices()
        .filter(|&v| {
            t.neighbors(v).iter().all(|&u| {
                let (child, own_side_heavy) = if parent.get(&u) == Some(&v) {
                    // u hangs below v: v's side of the edge is total - subtree(u)
                    (u, &total - &subtree[&u] > half)
                } else {
                    // v hangs below u: v's side is subtree(v)
                    (v, subtree[&v] > half)
                };
                let _ = child;
                own_side_heavy
            })
        })
        .collect();
    sinks
        .first()
        .copied()
        .ok_or_else(|| Error::Internal("heavy-side orientation has no sink".into()))
}

/// Width-2 tree decomposition of a K4-minor-free graph, built by replaying
/// the reduction: each eliminated vertex contributes a bag of itself and its
/// reduction-time neighbours; each bag hangs off the first-eliminated of
/// those neighbours, and component roots are chained.
pub fn tw2_decomposition(g: &Graph) -> Result<TreeDecomposition> {
    let replay = sp_reduce(g);
    if replay.stuck.is_some() {
        return Err(Error::Precondition("graph has K4 minor".into()));
    }
    let elim: BTreeMap<Vertex, u32> = replay
        .bags
        .iter()
        .enumerate()
        .map(|(i, (v, _))| (*v, i as u32))
        .collect();
    let mut bags = BTreeMap::new();
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for (i, (v, nbrs)) in replay.bags.iter().enumerate() {
        let node = i as u32;
        let mut bag = nbrs.clone();
        bag.insert(*v);
        bags.insert(node, bag);
        match nbrs.iter().min_by_key(|&&u| elim[&u]) {
            Some(&u) => edges.push((node, elim[&u])),
            None => roots.push(node),
        }
    }
    for pair in roots.windows(2) {
        edges.push((pair[0], pair[1]));
    }
    let tree = Graph::new(bags.keys().copied(), edges)?;
    let td = TreeDecomposition { tree, bags };
    debug_assert!(td.validate(g).is_ok());
    debug_assert!(td.width() <= 2);
    Ok(td)
}

/// Balanced separator of size at most 3 in a K4-minor-free graph: the first
/// balanced bag of the replayed decomposition, in node order.
pub fn tw2_separator(g: &Graph, w: &Weighting) -> Result<VertexSet> {
    if w.is_trivial() {
        return Err(Error::TrivialWeighting);
    }
    let td = tw2_decomposition(g)?;
    for bag in td.bags.values() {
        if is_balanced_separator(g, w, bag) {
            return Ok(bag.clone());
        }
    }
    Err(Error::Internal("no bag of the decomposition is balanced".into()))
}

/// Result of the sibling identification pass.
#[derive(Debug, Clone)]
pub enum SiblingsOutcome {
    /// No more nested neighbourhoods among the unprotected vertices.
    Reduced {
        graph: Graph,
        weighting: Weighting,
        merges: Vec<(Vertex, Vertex)>,
    },
    /// A surviving vertex accumulated weight above 1/2; its neighbourhood is
    /// already a balanced separator of the original graph.
    EarlySeparator { vertex: Vertex, separator: VertexSet },
}

/// Repeatedly deletes an unprotected vertex `u` whose neighbourhood is
/// contained in that of another unprotected vertex `v`, adding `u`'s weight to
/// `v` (least-id pairs first). Short-circuits as soon as an accumulated weight
/// exceeds 1/2. The unprotected set must be independent.
pub fn identify_siblings(
    g: &Graph,
    w: &Weighting,
    protected: &VertexSet,
) -> Result<SiblingsOutcome> {
    if !w.is_normal() {
        return Err(Error::NonNormalWeighting);
    }
    for &v in protected {
        if !g.contains_vertex(v) {
            return Err(Error::VertexNotInGraph(v));
        }
    }
    let mut live: VertexSet = g.vertices().filter(|v| !protected.contains(v)).collect();
    for &u in &live {
        if g.neighbors(u).iter().any(|x| live.contains(x)) {
            return Err(Error::Precondition(
                "unprotected vertices must form an independent set".into(),
            ));
        }
    }
    let mut cur = g.clone();
    let mut weights: BTreeMap<Vertex, Rational> =
        w.iter().map(|(v, r)| (v, r.clone())).collect();
    let mut merges = Vec::new();
    let half = one_half();
    'scan: loop {
        for &u in &live {
            for &v in &live {
                if u == v || !cur.neighbors(u).is_subset(cur.neighbors(v)) {
                    continue;
                }
                let wu = weights.remove(&u).unwrap();
                *weights.get_mut(&v).unwrap() += wu;
                cur = cur.without(&VertexSet::from([u]));
                live.remove(&u);
                merges.push((u, v));
                if weights[&v] > half {
                    return Ok(SiblingsOutcome::EarlySeparator {
                        vertex: v,
                        separator: cur.neighbors(v).clone(),
                    });
                }
                continue 'scan;
            }
        }
        break;
    }
    let weighting = Weighting::new(&cur, weights)?;
    Ok(SiblingsOutcome::Reduced {
        graph: cur,
        weighting,
        merges,
    })
}

/// Completes an unbalanced set `x` whose heavy component is a tree without
/// branch vertices off the cycle: adds the tree's one-vertex balanced
/// separator, replaced by its unique neighbour when it is a pendant off the
/// cycle.
pub fn extend_by_tree_vertex(
    g: &Graph,
    w: &Weighting,
    x: &VertexSet,
    cycle_vertices: &VertexSet,
) -> Result<VertexSet> {
    if is_balanced_separator(g, w, x) {
        return Err(Error::Precondition("x is already a balanced separator".into()));
    }
    let wn = w.normalize()?;
    let b = heavy_component(g, &wn, x)?
        .expect("unbalanced set leaves a heavy component");
    if let Some(&v) = b
        .iter()
        .find(|&&v| !cycle_vertices.contains(&v) && g.degree(v) >= 2)
    {
        return Err(Error::Precondition(format!(
            "heavy component contains the branch vertex {v}"
        )));
    }
    let bg = g.induced(&b);
    let wb = wn.restrict(&b);
    let inner = tree_balanced_vertex(&bg, &wb)?;
    let chosen = if cycle_vertices.contains(&inner) {
        inner
    } else {
        // A pendant carried the balance point; its unique neighbour inherits it.
        let nbrs = g.neighbors(inner);
        if nbrs.len() != 1 {
            return Err(Error::Internal(
                "off-cycle balance vertex is not a pendant".into(),
            ));
        }
        let u = *nbrs.iter().next().unwrap();
        if !cycle_vertices.contains(&u) {
            return Err(Error::Internal("pendant neighbour lies off the cycle".into()));
        }
        u
    };
    let mut out = x.clone();
    out.insert(chosen);
    if !is_balanced_separator(g, w, &out) {
        return Err(Error::Internal("tree completion is not balanced".into()));
    }
    Ok(out)
}

fn certified(
    g: &Graph,
    w: &Weighting,
    ell: u32,
    cert: SeparatorCertificate,
) -> Result<PipelineResult> {
    let report = verify_certificate(g, w, &cert, ell)?;
    if !report.passed() {
        let failed: Vec<&str> = report.failures().iter().map(|c| c.name).collect();
        return Err(Error::Internal(format!(
            "certificate failed verification on {failed:?} (route {:?})",
            cert.route
        )));
    }
    Ok(PipelineResult::Certificate(cert))
}

fn witnessed(g: &Graph, witness: InducedMinorWitness) -> Result<PipelineResult> {
    if !verify_model(g, &witness)? {
        return Err(Error::Internal("witness failed verification".into()));
    }
    Ok(PipelineResult::Witness(witness))
}

/// The contraction-case workhorse: `c` is an induced cycle of length at least
/// 4, everything off the cycle is independent with weight at most 1/2, and the
/// result is either a balanced separator inside `V(c)` of size at most
/// `(ell-1)^2` or an `ell`-wheel witness.
pub fn no_big_components(
    g: &Graph,
    w: &Weighting,
    c: &VertexSequence,
    ell: u32,
) -> Result<PipelineResult> {
    if ell < 4 {
        return Err(Error::Precondition("ell must be at least 4".into()));
    }
    if !w.is_normal() {
        return Err(Error::NonNormalWeighting);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if c.len() < 4 || !g.is_induced_cycle(c) {
        return Err(Error::Precondition(
            "c must be an induced cycle of length at least 4".into(),
        ));
    }
    let cycle_set = c.to_set();
    let off_cycle: VertexSet = g.vertices().filter(|v| !cycle_set.contains(v)).collect();
    let half = one_half();
    for &u in &off_cycle {
        if g.neighbors(u).iter().any(|x| off_cycle.contains(x)) {
            return Err(Error::Precondition(
                "non-cycle vertices must be independent".into(),
            ));
        }
        if w.get(u) > &half {
            return Err(Error::Precondition(format!(
                "non-cycle vertex {u} is heavier than 1/2"
            )));
        }
    }
    let limit = ((ell - 1) * (ell - 1)) as usize;
    let small = |sep: &VertexSet, bound: usize| -> Result<SeparatorCertificate> {
        if sep.len() > bound || !sep.is_subset(&cycle_set) {
            return Err(Error::Internal(format!(
                "cycle separator broke its bound: |S| = {}, bound {bound}",
                sep.len()
            )));
        }
        Ok(SeparatorCertificate::sized(
            Route::CycleSmall,
            sep.clone(),
            bound,
        ))
    };

    // No branch vertices off the cycle: one cycle vertex, possibly completed
    // through the tree it leaves.
    let branch: VertexSet = off_cycle.iter().copied().filter(|&v| g.degree(v) >= 2).collect();
    if branch.is_empty() {
        let x = VertexSet::from([*cycle_set.iter().next().unwrap()]);
        let sep = if is_balanced_separator(g, w, &x) {
            x
        } else {
            extend_by_tree_vertex(g, w, &x, &cycle_set)?
        };
        return certified(g, w, ell, small(&sep, 2)?);
    }

    // Merge nested neighbourhoods; an early heavy survivor either certifies
    // through its (small) neighbourhood or exhibits a wheel.
    let (g2, w2) = match identify_siblings(g, w, &cycle_set)? {
        SiblingsOutcome::EarlySeparator { vertex, separator } => {
            if separator.len() <= (ell - 1) as usize {
                return certified(g, w, ell, small(&separator, (ell - 1) as usize)?);
            }
            let witness = wheel_witness_from_component(g, c, &VertexSet::from([vertex]), ell)?;
            return witnessed(g, witness);
        }
        SiblingsOutcome::Reduced { graph, weighting, .. } => (graph, weighting),
    };
    let branch2: VertexSet = g2
        .vertices()
        .filter(|&v| !cycle_set.contains(&v) && g2.degree(v) >= 2)
        .collect();
    if branch2.is_empty() {
        return Err(Error::Internal("sibling merging lost every branch vertex".into()));
    }

    // Any branch vertex with ell cycle neighbours is a wheel hub on its own.
    for &v in &branch2 {
        if g2.degree(v) >= ell as usize {
            let witness = wheel_witness_from_component(&g2, c, &VertexSet::from([v]), ell)?;
            return witnessed(g, witness);
        }
    }

    // The cycle plus the branch vertices forms a cobweb.
    let mut cobweb_vertices = cycle_set.clone();
    cobweb_vertices.extend(branch2.iter().copied());
    let gp = g2.induced(&cobweb_vertices);
    let cw = validate_cobweb(&gp, c, &branch2)
        .map_err(|e| Error::Internal(format!("cobweb construction failed: {e}")))?;

    let mut anchored: BTreeMap<Vertex, Vec<Wedge>> = BTreeMap::new();
    for &v in &branch2 {
        anchored.insert(v, wedges_anchored(&cw, v)?);
    }

    // A barrier of size ell certifies a wheel: contract the component behind it.
    for wedges in anchored.values() {
        for wedge in wedges {
            if wedge.is_trivial() || wedge.is_co_trivial() {
                continue;
            }
            let beta = barrier(&cw, wedge);
            if beta.len() < ell as usize {
                continue;
            }
            let wset = wedge.vertex_set();
            let arc_set = wedge.arc().to_set();
            let outside = gp
                .without(&wset)
                .components()
                .into_iter()
                .find(|comp| comp.iter().any(|x| cycle_set.contains(x) && !arc_set.contains(x)))
                .ok_or_else(|| Error::Internal("wedge has no outside component".into()))?;
            let mut cyc = wedge.arc().items().to_vec();
            cyc.push(wedge.anchor());
            let wedge_cycle = VertexSequence::new(cyc)?;
            let witness = wheel_witness_from_component(&gp, &wedge_cycle, &outside, ell)?;
            return witnessed(g, witness);
        }
    }

    // Per-vertex barrier unions; on failure pick the wedge housing the heavy
    // component and check it is already cut out by that single barrier.
    let mut selection: BTreeMap<Vertex, Wedge> = BTreeMap::new();
    for (&v, wedges) in &anchored {
        let mut union = VertexSet::new();
        for wedge in wedges {
            union.extend(barrier(&cw, wedge));
        }
        if is_balanced_separator(&g2, &w2, &union) {
            return certified(g, w, ell, small(&union, limit)?);
        }
        let heavy = heavy_component(&g2, &w2, &union)?
            .expect("unbalanced separator leaves a heavy component");
        let on_cycle: VertexSet = heavy.intersection(&cycle_set).copied().collect();
        if on_cycle.is_empty() {
            return Err(Error::Internal("heavy component avoids the cycle".into()));
        }
        let mut hosting = wedges
            .iter()
            .filter(|wd| on_cycle.is_subset(&wd.arc().to_set()));
        let chosen = hosting
            .next()
            .ok_or_else(|| Error::Internal("no wedge hosts the heavy component".into()))?
            .clone();
        if hosting.next().is_some() {
            return Err(Error::Internal("hosting wedge is not unique".into()));
        }
        let beta = barrier(&cw, &chosen);
        if !g2.without(&beta).components().iter().any(|comp| *comp == heavy) {
            return Err(Error::Internal(
                "heavy component is not a component behind its own barrier".into(),
            ));
        }
        selection.insert(v, chosen);
    }
    let sel = WedgeSelection::new(&cw, selection)?;

    // Good sets of size up to 3: either some barrier union balances, or every
    // one pins a heavy component to a segment of the arc intersection.
    let good: Vec<Vertex> = good_vertices(&sel).into_iter().collect();
    let mut tsets: Vec<VertexSet> = Vec::new();
    for i in 0..good.len() {
        tsets.push(VertexSet::from([good[i]]));
    }
    for i in 0..good.len() {
        for j in i + 1..good.len() {
            tsets.push([good[i], good[j]].into_iter().collect());
        }
    }
    for i in 0..good.len() {
        for j in i + 1..good.len() {
            for k in j + 1..good.len() {
                tsets.push([good[i], good[j], good[k]].into_iter().collect());
            }
        }
    }
    let mut segments: BTreeMap<VertexSet, VertexSequence> = BTreeMap::new();
    let mut heavies: BTreeMap<VertexSet, VertexSet> = BTreeMap::new();
    for t in &tsets {
        let mut union = VertexSet::new();
        for &v in t {
            union.extend(barrier(&cw, sel.get(v)));
        }
        if is_balanced_separator(&g2, &w2, &union) {
            return certified(g, w, ell, small(&union, t.len() * (ell - 1) as usize)?);
        }
        let heavy = heavy_component(&g2, &w2, &union)?
            .expect("unbalanced separator leaves a heavy component");
        let on_cycle: VertexSet = heavy.intersection(&cycle_set).copied().collect();
        let segment = intersection_components(&sel, t)
            .into_iter()
            .find(|p| on_cycle.is_subset(&p.to_set()))
            .ok_or_else(|| {
                Error::Internal("no intersection component hosts the heavy component".into())
            })?;
        segments.insert(t.clone(), segment);
        heavies.insert(t.clone(), heavy);
    }
    let sigma = SegmentSelection::new(&sel, segments)?;

    // The separating good pair leaves a heavy tree hanging off the cycle;
    // one more vertex finishes the separator.
    let ((u, v), s_pair) = separating_good_pair(&cw, &sel, &sigma).map_err(|e| match e {
        Error::Precondition(m) => Error::Internal(format!("segment normality argument failed: {m}")),
        other => other,
    })?;
    let key: VertexSet = [u, v].into_iter().collect();
    let heavy = &heavies[&key];
    if heavy.iter().any(|x| branch2.contains(x)) {
        return Err(Error::Internal(
            "separated heavy component still meets a branch vertex".into(),
        ));
    }
    let sep = extend_by_tree_vertex(&g2, &w2, &s_pair, &cycle_set)?;
    certified(g, w, ell, small(&sep, (2 * (ell - 1) + 1) as usize)?)
}

fn separator_connected(g: &Graph, w: &Weighting, ell: u32) -> Result<PipelineResult> {
    if ell == 3 {
        // Wheel on three vertices is K4: the treewidth-2 route or an explicit
        // K4 model.
        if k4_minor_free(g) {
            let sep = tw2_separator(g, w)?;
            return Ok(PipelineResult::Certificate(SeparatorCertificate::sized(
                Route::Tw2,
                sep,
                3,
            )));
        }
        return Ok(PipelineResult::Witness(k4_witness(g)?));
    }
    match cycle_plus_vertex(g, w)? {
        CycleOrPair::Pair { p, q } => {
            let doms: VertexSet = [p, q].into_iter().collect();
            let sep = g.closed_neighborhood(&doms)?;
            Ok(PipelineResult::Certificate(SeparatorCertificate::dominated(
                Route::TwoVertices,
                sep,
                doms,
            )))
        }
        CycleOrPair::Cycle { cycle, p } => {
            let cset = cycle.to_set();
            match heavy_component(g, w, &cset)? {
                Some(b) => {
                    let nb = g.open_neighborhood(&b)?;
                    if nb.len() >= ell as usize {
                        return Ok(PipelineResult::Witness(wheel_witness_from_component(
                            g, &cycle, &b, ell,
                        )?));
                    }
                    let x = g.closed_neighborhood(&cset)?;
                    let y = g.closed_neighborhood(&VertexSet::from([p]))?;
                    let thin = thin_separator(g, w, &x, &y, &cset)?;
                    let mut doms = nb;
                    doms.insert(p);
                    let sep = g.closed_neighborhood(&doms)?;
                    debug_assert!(thin.is_subset(&sep));
                    Ok(PipelineResult::Certificate(SeparatorCertificate::dominated(
                        Route::NeighborBound,
                        sep,
                        doms,
                    )))
                }
                None => {
                    let cm = g.contract_components(&cset)?;
                    let weights: BTreeMap<Vertex, Rational> = cm
                        .fibers()
                        .iter()
                        .map(|(&iv, fiber)| (iv, w.weight_of(fiber)))
                        .collect();
                    let wp = Weighting::new(cm.image(), weights)?;
                    match no_big_components(cm.image(), &wp, &cycle, ell)? {
                        PipelineResult::Certificate(cert) => Ok(PipelineResult::Certificate(cert)),
                        PipelineResult::Witness(wit) => {
                            Ok(PipelineResult::Witness(wit.expand_through(&cm)))
                        }
                    }
                }
            }
        }
    }
}

/// Produces, for any graph and weighting, either a verified balanced
/// separator that is dominated by at most `ell` vertices or has size at most
/// `(ell-1)^2`, or a verified `ell`-wheel induced-minor witness.
pub fn separator(g: &Graph, w: &Weighting, ell: u32) -> Result<PipelineResult> {
    if ell < 3 {
        return Err(Error::Precondition("ell must be at least 3".into()));
    }
    if w.is_trivial() {
        return certified(g, w, ell, SeparatorCertificate::empty());
    }
    let wn = w.normalize()?;
    let Some(hcomp) = heavy_component(g, &wn, &VertexSet::new())? else {
        return certified(g, w, ell, SeparatorCertificate::empty());
    };
    // Every balanced separator of the heavy component, under the restricted
    // weighting, is balanced for the whole graph.
    let gh = g.induced(&hcomp);
    let wh = wn.restrict(&hcomp).normalize()?;
    let result = separator_connected(&gh, &wh, ell)?;
    match result {
        PipelineResult::Certificate(cert) => certified(g, w, ell, cert),
        PipelineResult::Witness(wit) => witnessed(g, wit),
    }
}

/// Fan analogue: either a verified balanced separator dominated by at most
/// `ell` vertices, or a verified `ell`-fan induced-minor witness.
pub fn fan_separator(g: &Graph, w: &Weighting, ell: u32) -> Result<PipelineResult> {
    if ell < 2 {
        return Err(Error::Precondition("ell must be at least 2".into()));
    }
    if w.is_trivial() {
        return certified(g, w, ell, SeparatorCertificate::empty());
    }
    let wn = w.normalize()?;
    let Some(hcomp) = heavy_component(g, &wn, &VertexSet::new())? else {
        return certified(g, w, ell, SeparatorCertificate::empty());
    };
    let gh = g.induced(&hcomp);
    let wh = wn.restrict(&hcomp).normalize()?;

    let path = gyarfas_path(&gh, &wh)?;
    let k = path.len();
    if k <= 2 {
        let doms = path.to_set();
        let sep = gh.closed_neighborhood(&doms)?;
        return certified(
            g,
            w,
            ell,
            SeparatorCertificate::dominated(Route::FanDominated, sep, doms),
        );
    }
    let tip = path.last().unwrap();
    let prefix = VertexSequence::new(path.items()[..k - 1].to_vec())?;
    let prefix_set = prefix.to_set();
    let b = heavy_component(&gh, &wh, &prefix_set)?.ok_or_else(|| {
        Error::Internal("growth minimality violated: prefix removal is balanced".into())
    })?;
    let nb = gh.open_neighborhood(&b)?;
    if nb.len() >= ell as usize {
        let witness = fan_witness(&gh, &prefix, &b, ell)?;
        return witnessed(g, witness);
    }
    let x = gh.closed_neighborhood(&prefix_set)?;
    let y = gh.closed_neighborhood(&VertexSet::from([tip]))?;
    let thin = thin_separator(&gh, &wh, &x, &y, &prefix_set)?;
    let mut doms = nb;
    doms.insert(tip);
    let sep = gh.closed_neighborhood(&doms)?;
    debug_assert!(thin.is_subset(&sep));
    certified(
        g,
        w,
        ell,
        SeparatorCertificate::dominated(Route::FanDominated, sep, doms),
    )
}
