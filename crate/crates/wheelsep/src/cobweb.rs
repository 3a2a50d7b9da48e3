//! Cobwebs: an induced cycle plus an independent set with minimum degree 2
//! and no nested neighbourhoods. Wedges, barriers, attachment, the wedge
//! improvement order, arc-intersection components, and the separating good
//! pair — each lemma about these objects is exposed as an executable check.

use std::collections::BTreeMap;

use crate::graph::{Graph, Vertex, VertexSequence, VertexSet};
use crate::{Error, Result};

/// A graph presented as an induced cycle `C` plus the independent remainder
/// `I = V \ V(C)`, nonempty, with minimum degree 2 and no `N(u) ⊆ N(v)`
/// between distinct members of `I`.
#[derive(Debug, Clone)]
pub struct Cobweb {
    graph: Graph,
    cycle: VertexSequence,
    independent: VertexSet,
}

impl Cobweb {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn cycle(&self) -> &VertexSequence {
        &self.cycle
    }

    pub fn independent(&self) -> &VertexSet {
        &self.independent
    }
}

/// Checks every cobweb invariant and names the first one that fails.
pub fn validate_cobweb(g: &Graph, c: &VertexSequence, i: &VertexSet) -> Result<Cobweb> {
    if !g.is_induced_cycle(c) {
        return Err(Error::CobwebInvalid("cycle is not induced".into()));
    }
    let cycle_set = c.to_set();
    let rest: VertexSet = g.vertices().filter(|v| !cycle_set.contains(v)).collect();
    if *i != rest {
        return Err(Error::CobwebInvalid(
            "independent set must be exactly the non-cycle vertices".into(),
        ));
    }
    if i.is_empty() {
        return Err(Error::CobwebInvalid("independent set is empty".into()));
    }
    for &u in i {
        if g.neighbors(u).iter().any(|v| i.contains(v)) {
            return Err(Error::CobwebInvalid(format!(
                "independent set has an internal edge at {u}"
            )));
        }
    }
    if let Some(v) = g.vertices().find(|&v| g.degree(v) < 2) {
        return Err(Error::CobwebInvalid(format!("minimum degree: vertex {v}")));
    }
    for &u in i {
        for &v in i {
            if u != v && g.neighbors(u).is_subset(g.neighbors(v)) {
                return Err(Error::CobwebInvalid(format!(
                    "nested neighbourhoods: N({u}) ⊆ N({v})"
                )));
            }
        }
    }
    Ok(Cobweb {
        graph: g.clone(),
        cycle: c.clone(),
        independent: i.clone(),
    })
}

/// A cycle through exactly one independent vertex (its anchor) and an arc of
/// `C` between two of the anchor's neighbours. Equality is anchor plus arc;
/// arcs are canonicalized to start at their lesser-id endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wedge {
    anchor: Vertex,
    arc: VertexSequence,
    co_trivial: bool,
}

impl Wedge {
    pub fn anchor(&self) -> Vertex {
        self.anchor
    }

    pub fn arc(&self) -> &VertexSequence {
        &self.arc
    }

    /// The arc is a single edge.
    pub fn is_trivial(&self) -> bool {
        self.arc.len() == 2
    }

    /// The arc covers the whole cycle.
    pub fn is_co_trivial(&self) -> bool {
        self.co_trivial
    }

    /// Arc vertices plus the anchor.
    pub fn vertex_set(&self) -> VertexSet {
        let mut out = self.arc.to_set();
        out.insert(self.anchor);
        out
    }
}

/// The `deg(v)` wedges anchored at `v`, one per gap between consecutive
/// cycle neighbours of `v`, listed in rotation order starting from the
/// least-id neighbour.
pub fn wedges_anchored(cw: &Cobweb, v: Vertex) -> Result<Vec<Wedge>> {
    if !cw.independent.contains(&v) {
        return Err(Error::Precondition(format!(
            "{v} is not an independent vertex of the cobweb"
        )));
    }
    let items = cw.cycle.items();
    let m = items.len();
    let nbrs = cw.graph.neighbors(v);
    let mut positions: Vec<usize> = (0..m).filter(|&i| nbrs.contains(&items[i])).collect();
    debug_assert!(positions.len() == nbrs.len(), "independent vertices attach only to the cycle");
    let start = (0..positions.len())
        .min_by_key(|&j| items[positions[j]])
        .expect("degree at least 2");
    positions.rotate_left(start);

    let d = positions.len();
    let mut out = Vec::with_capacity(d);
    for t in 0..d {
        let from = positions[t];
        let to = positions[(t + 1) % d];
        let mut arc = Vec::new();
        let mut pos = from;
        loop {
            arc.push(items[pos]);
            if pos == to {
                break;
            }
            pos = (pos + 1) % m;
        }
        let co_trivial = arc.len() == m;
        if arc.first() > arc.last() {
            arc.reverse();
        }
        out.push(Wedge {
            anchor: v,
            arc: VertexSequence::new(arc)?,
            co_trivial,
        });
    }
    Ok(out)
}

/// The barrier of a wedge: the endpoints of its arc, together with the
/// internal arc vertices that share an independent neighbour with some cycle
/// vertex outside the wedge. For a co-trivial wedge nothing lies outside, so
/// the barrier is exactly the two neighbours of the anchor.
pub fn barrier(cw: &Cobweb, w: &Wedge) -> VertexSet {
    let arc = w.arc.items();
    let mut out = VertexSet::from([arc[0], arc[arc.len() - 1]]);
    let arc_set = w.arc.to_set();
    let outside: VertexSet = cw
        .cycle
        .items()
        .iter()
        .copied()
        .filter(|x| !arc_set.contains(x))
        .collect();
    for &mid in &arc[1..arc.len() - 1] {
        let qualifies = cw.independent.iter().any(|&u| {
            cw.graph.has_edge(u, mid)
                && cw.graph.neighbors(u).iter().any(|c| outside.contains(c))
        });
        if qualifies {
            out.insert(mid);
        }
    }
    out
}

/// Whether `u` attaches to the wedge: all of `N(u)` lies inside it.
/// Undefined for the anchor itself.
pub fn attaches(cw: &Cobweb, u: Vertex, w: &Wedge) -> Result<bool> {
    if !cw.independent.contains(&u) {
        return Err(Error::Precondition(format!("{u} is not an independent vertex")));
    }
    if u == w.anchor {
        return Err(Error::Precondition(
            "attachment is undefined for the anchor of the wedge".into(),
        ));
    }
    Ok(cw.graph.neighbors(u).is_subset(&w.vertex_set()))
}

/// Reachability form of the barrier property: for `u` not attached to the
/// wedge (the anchor counts as not attached), the barrier separates `u` from
/// the arc. Always true on valid inputs; exists to be tested.
pub fn barrier_separates(cw: &Cobweb, w: &Wedge, u: Vertex) -> Result<bool> {
    if !cw.independent.contains(&u) {
        return Err(Error::Precondition(format!("{u} is not an independent vertex")));
    }
    if u != w.anchor && attaches(cw, u, w)? {
        return Err(Error::Precondition(format!(
            "{u} attaches to the wedge; separation is not promised"
        )));
    }
    let beta = barrier(cw, w);
    let reached = cw
        .graph
        .without(&beta)
        .reachable_from(&VertexSet::from([u]));
    let escapes = w
        .arc
        .items()
        .iter()
        .any(|x| !beta.contains(x) && reached.contains(x));
    Ok(!escapes)
}

/// One chosen wedge per independent vertex.
#[derive(Debug, Clone)]
pub struct WedgeSelection {
    choice: BTreeMap<Vertex, Wedge>,
}

impl WedgeSelection {
    /// Every independent vertex must map to one of its own wedges.
    pub fn new(cw: &Cobweb, choice: BTreeMap<Vertex, Wedge>) -> Result<Self> {
        let keys: VertexSet = choice.keys().copied().collect();
        if keys != *cw.independent() {
            return Err(Error::Precondition(
                "selection must cover exactly the independent set".into(),
            ));
        }
        for (&v, wedge) in &choice {
            if wedge.anchor != v || !wedges_anchored(cw, v)?.contains(wedge) {
                return Err(Error::Precondition(format!(
                    "selected wedge for {v} is not anchored there"
                )));
            }
        }
        Ok(WedgeSelection { choice })
    }

    pub fn get(&self, v: Vertex) -> &Wedge {
        self.choice
            .get(&v)
            .unwrap_or_else(|| panic!("vertex {v} has no selected wedge"))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, &Wedge)> {
        self.choice.iter().map(|(&v, w)| (v, w))
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.choice.keys().copied()
    }
}

/// Whether the arc selected for `u` is a proper subgraph (vertices and edges)
/// of the arc selected for `v`.
pub fn improves(sel: &WedgeSelection, u: Vertex, v: Vertex) -> bool {
    let (au, av) = (sel.get(u).arc(), sel.get(v).arc());
    let (vu, vv) = (au.to_set(), av.to_set());
    let (eu, ev) = (au.path_edges(), av.path_edges());
    vu.is_subset(&vv) && eu.is_subset(&ev) && (vu != vv || eu != ev)
}

/// Minimal elements of the improvement order.
pub fn good_vertices(sel: &WedgeSelection) -> VertexSet {
    sel.vertices()
        .filter(|&u| !sel.vertices().any(|w| w != u && improves(sel, w, u)))
        .collect()
}

/// Components of the intersection graph of the selected arcs for `t`,
/// restricted to the cycle. Shared vertices and shared edges both matter: two
/// arcs can share two vertices but no edge, giving two one-vertex components.
/// Components are returned as paths, listed by least vertex.
pub fn intersection_components(sel: &WedgeSelection, t: &VertexSet) -> Vec<VertexSequence> {
    assert!(!t.is_empty(), "intersection of an empty family");
    let mut members = t.iter().copied();
    let first = sel.get(members.next().unwrap()).arc();
    let mut verts = first.to_set();
    let mut edges = first.path_edges();
    for v in members {
        let arc = sel.get(v).arc();
        verts = verts.intersection(&arc.to_set()).copied().collect();
        edges = edges.intersection(&arc.path_edges()).copied().collect();
    }

    let mut out = Vec::new();
    let mut remaining = verts.clone();
    while let Some(&seed) = remaining.iter().next() {
        // Flood the component of `seed` in the intersection graph.
        let mut comp = VertexSet::from([seed]);
        loop {
            let grow: VertexSet = edges
                .iter()
                .filter(|(a, b)| comp.contains(a) || comp.contains(b))
                .flat_map(|&(a, b)| [a, b])
                .collect();
            let before = comp.len();
            comp.extend(grow);
            if comp.len() == before {
                break;
            }
        }
        for v in &comp {
            remaining.remove(v);
        }
        // Order the component as a path, starting at its lesser endpoint.
        let degree = |v: Vertex| {
            edges
                .iter()
                .filter(|&&(a, b)| (a == v && comp.contains(&b)) || (b == v && comp.contains(&a)))
                .count()
        };
        let start = comp
            .iter()
            .copied()
            .filter(|&v| degree(v) <= 1)
            .min()
            .expect("a path has an endpoint");
        let mut seq = vec![start];
        let mut prev = None;
        let mut cur = start;
        loop {
            let next = edges
                .iter()
                .filter_map(|&(a, b)| {
                    if a == cur && comp.contains(&b) && Some(b) != prev {
                        Some(b)
                    } else if b == cur && comp.contains(&a) && Some(a) != prev {
                        Some(a)
                    } else {
                        None
                    }
                })
                .next();
            match next {
                Some(n) => {
                    seq.push(n);
                    prev = Some(cur);
                    cur = n;
                }
                None => break,
            }
        }
        out.push(VertexSequence::new(seq).expect("component path is simple"));
    }
    out.sort_by_key(|s| s.items().iter().copied().min());
    out
}

/// Assigns to each good set of size at most 3 one component of its arc
/// intersection.
#[derive(Debug, Clone)]
pub struct SegmentSelection {
    choice: BTreeMap<VertexSet, VertexSequence>,
}

impl SegmentSelection {
    /// Each entry must pick an actual component of its set's intersection.
    pub fn new(sel: &WedgeSelection, choice: BTreeMap<VertexSet, VertexSequence>) -> Result<Self> {
        for (t, seq) in &choice {
            if t.is_empty() || t.len() > 3 {
                return Err(Error::Precondition(
                    "segment selection keys have size 1 to 3".into(),
                ));
            }
            if !intersection_components(sel, t).contains(seq) {
                return Err(Error::Precondition(format!(
                    "segment for {t:?} is not an intersection component"
                )));
            }
        }
        Ok(SegmentSelection { choice })
    }

    pub fn get(&self, t: &VertexSet) -> Option<&VertexSequence> {
        self.choice.get(t)
    }

    pub fn values(&self) -> impl Iterator<Item = &VertexSequence> {
        self.choice.values()
    }
}

/// Picks the good pair whose segment is inclusion-minimal (ties: least pair by
/// ids) and returns it with the union of the two barriers, after checking by
/// reachability that this union separates the independent set from the
/// segment. Requires the segment selection's image to be intersecting.
pub fn separating_good_pair(
    cw: &Cobweb,
    sel: &WedgeSelection,
    sigma: &SegmentSelection,
) -> Result<((Vertex, Vertex), VertexSet)> {
    let image: Vec<&VertexSequence> = sigma.values().collect();
    for (i, a) in image.iter().enumerate() {
        for b in &image[i + 1..] {
            if a.to_set().intersection(&b.to_set()).next().is_none() {
                return Err(Error::Precondition(
                    "intersecting precondition violated".into(),
                ));
            }
        }
    }
    let good = good_vertices(sel);
    let mut candidates: Vec<((Vertex, Vertex), VertexSet)> = Vec::new();
    for &u in &good {
        for &v in good.range(u..) {
            let key: VertexSet = [u, v].into_iter().collect();
            let seq = sigma.get(&key).ok_or_else(|| {
                Error::Precondition(format!("segment selection missing entry for {key:?}"))
            })?;
            candidates.push(((u, v), seq.to_set()));
        }
    }
    let minimal: Vec<&((Vertex, Vertex), VertexSet)> = candidates
        .iter()
        .filter(|(_, s)| {
            !candidates
                .iter()
                .any(|(_, other)| other.is_subset(s) && other != s)
        })
        .collect();
    let ((u, v), seg) = minimal
        .into_iter()
        .min_by_key(|((a, b), _)| (*a, *b))
        .expect("good vertices exist");
    let (u, v) = (*u, *v);

    let mut s = barrier(cw, sel.get(u));
    s.extend(barrier(cw, sel.get(v)));

    let sources: VertexSet = cw.independent.iter().copied().collect();
    let reached = cw.graph.without(&s).reachable_from(&sources);
    if seg.iter().any(|x| !s.contains(x) && reached.contains(x)) {
        return Err(Error::Internal(
            "barrier union failed to separate the independent set from the segment".into(),
        ));
    }
    Ok(((u, v), s))
}
