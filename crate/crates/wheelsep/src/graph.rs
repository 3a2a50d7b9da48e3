//! Simple undirected graphs with stable integer vertex identities.
//!
//! Every derived graph is a fresh value; nothing here mutates in place. All
//! iteration is in increasing vertex-id order, which makes every downstream
//! choice in the crate reproducible.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::{Error, Result};

pub type Vertex = u32;
pub type VertexSet = BTreeSet<Vertex>;

/// A finite simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<Vertex, VertexSet>,
}

impl Graph {
    /// Builds a graph from a vertex list and an edge list.
    ///
    /// Rejects self-loops and edges with unknown endpoints; duplicate edges
    /// collapse.
    pub fn new(
        vertices: impl IntoIterator<Item = Vertex>,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self> {
        let mut adj: BTreeMap<Vertex, VertexSet> = BTreeMap::new();
        for v in vertices {
            adj.entry(v).or_default();
        }
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            if !adj.contains_key(&u) {
                return Err(Error::InvalidGraph(format!("edge endpoint {u} unknown")));
            }
            if !adj.contains_key(&v) {
                return Err(Error::InvalidGraph(format!("edge endpoint {v} unknown")));
            }
            adj.get_mut(&u).unwrap().insert(v);
            adj.get_mut(&v).unwrap().insert(u);
        }
        Ok(Graph { adj })
    }

    pub fn empty() -> Self {
        Graph { adj: BTreeMap::new() }
    }

    /// Path on `n` vertices `0..n`.
    pub fn path(n: u32) -> Self {
        Graph::new(0..n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    /// Cycle on `n >= 3` vertices `0..n`.
    pub fn cycle(n: u32) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::new(0..n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn complete(n: u32) -> Self {
        Graph::new(0..n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    /// The `ell`-wheel: cycle `0..ell` plus the universal vertex `ell`.
    pub fn wheel(ell: u32) -> Self {
        assert!(ell >= 3);
        let mut edges: Vec<(Vertex, Vertex)> = (0..ell).map(|i| (i, (i + 1) % ell)).collect();
        edges.extend((0..ell).map(|i| (i, ell)));
        Graph::new(0..=ell, edges).unwrap()
    }

    /// The `ell`-fan: path `0..ell` plus the universal vertex `ell`.
    pub fn fan(ell: u32) -> Self {
        assert!(ell >= 1);
        let mut edges: Vec<(Vertex, Vertex)> = (1..ell).map(|i| (i - 1, i)).collect();
        edges.extend((0..ell).map(|i| (i, ell)));
        Graph::new(0..=ell, edges).unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.adj.keys().copied().collect()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    /// Neighbours of `v`. Panics if `v` is not a vertex; callers at API
    /// boundaries validate membership first.
    pub fn neighbors(&self, v: Vertex) -> &VertexSet {
        self.adj
            .get(&v)
            .unwrap_or_else(|| panic!("vertex {v} not in graph"))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj.get(&u).is_some_and(|s| s.contains(&v))
    }

    /// Edges as sorted `(min, max)` pairs.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (&u, nbrs) in &self.adj {
            for &v in nbrs.range(u + 1..) {
                out.push((u, v));
            }
        }
        out
    }

    /// Subgraph induced on `keep ∩ V(G)`.
    pub fn induced(&self, keep: &VertexSet) -> Graph {
        let mut adj: BTreeMap<Vertex, VertexSet> = BTreeMap::new();
        for (&v, nbrs) in &self.adj {
            if keep.contains(&v) {
                adj.insert(v, nbrs.intersection(keep).copied().collect());
            }
        }
        Graph { adj }
    }

    /// Graph with the vertices of `remove` deleted.
    pub fn without(&self, remove: &VertexSet) -> Graph {
        let keep: VertexSet = self.vertices().filter(|v| !remove.contains(v)).collect();
        self.induced(&keep)
    }

    pub fn is_connected(&self) -> bool {
        match self.vertices().next() {
            None => true,
            Some(start) => self.reachable_from(&VertexSet::from([start])).len() == self.vertex_count(),
        }
    }

    /// All vertices reachable from `sources` (which must be vertices of the graph).
    pub fn reachable_from(&self, sources: &VertexSet) -> VertexSet {
        let mut seen: VertexSet = sources.clone();
        let mut queue: VecDeque<Vertex> = sources.iter().copied().collect();
        while let Some(v) = queue.pop_front() {
            for &u in self.neighbors(v) {
                if seen.insert(u) {
                    queue.push_back(u);
                }
            }
        }
        seen
    }

    /// Connected components, each sorted, listed by least element.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        let mut visited = VertexSet::new();
        for v in self.vertices() {
            if visited.contains(&v) {
                continue;
            }
            let comp = self.reachable_from(&VertexSet::from([v]));
            visited.extend(comp.iter().copied());
            out.push(comp);
        }
        // BTreeMap iteration already yields components by least element.
        out
    }

    /// Closed neighbourhood `N[A]`.
    pub fn closed_neighborhood(&self, a: &VertexSet) -> Result<VertexSet> {
        let mut out = VertexSet::new();
        for &v in a {
            if !self.contains_vertex(v) {
                return Err(Error::VertexNotInGraph(v));
            }
            out.insert(v);
            out.extend(self.neighbors(v).iter().copied());
        }
        Ok(out)
    }

    /// Open neighbourhood `N(A) = N[A] \ A`.
    pub fn open_neighborhood(&self, a: &VertexSet) -> Result<VertexSet> {
        let mut out = self.closed_neighborhood(a)?;
        for v in a {
            out.remove(v);
        }
        Ok(out)
    }

    /// True iff `s` walks an induced path of this graph.
    pub fn is_induced_path(&self, s: &VertexSequence) -> bool {
        let items = s.items();
        if items.is_empty() || items.iter().any(|&v| !self.contains_vertex(v)) {
            return false;
        }
        for i in 0..items.len() {
            for j in i + 1..items.len() {
                let adjacent = self.has_edge(items[i], items[j]);
                let consecutive = j == i + 1;
                if adjacent != consecutive {
                    return false;
                }
            }
        }
        true
    }

    /// True iff `s` walks an induced cycle (closing last to first, length >= 3).
    pub fn is_induced_cycle(&self, s: &VertexSequence) -> bool {
        let items = s.items();
        let n = items.len();
        if n < 3 || items.iter().any(|&v| !self.contains_vertex(v)) {
            return false;
        }
        for i in 0..n {
            for j in i + 1..n {
                let adjacent = self.has_edge(items[i], items[j]);
                let consecutive = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent != consecutive {
                    return false;
                }
            }
        }
        true
    }

    /// Contracts every component of `G - keep` to a single fresh vertex.
    ///
    /// The vertices of `keep` survive verbatim. Fresh ids are assigned past the
    /// largest existing id, in increasing order of each component's least
    /// origin vertex.
    pub fn contract_components(&self, keep: &VertexSet) -> Result<ContractionMap> {
        for &v in keep {
            if !self.contains_vertex(v) {
                return Err(Error::VertexNotInGraph(v));
            }
        }
        let mut fibers: BTreeMap<Vertex, VertexSet> = keep
            .iter()
            .map(|&v| (v, VertexSet::from([v])))
            .collect();
        let rest = self.without(keep);
        let mut next = self.vertices().max().map_or(0, |m| m + 1);
        let mut owner: BTreeMap<Vertex, Vertex> = keep.iter().map(|&v| (v, v)).collect();
        for comp in rest.components() {
            for &x in &comp {
                owner.insert(x, next);
            }
            fibers.insert(next, comp);
            next += 1;
        }
        let mut edges = Vec::new();
        for (u, v) in self.edges() {
            let (iu, iv) = (owner[&u], owner[&v]);
            if iu != iv {
                edges.push((iu, iv));
            }
        }
        let image = Graph::new(fibers.keys().copied(), edges)?;
        Ok(ContractionMap {
            origin: self.clone(),
            image,
            fibers,
        })
    }

    /// Shortest path from `from` to `to` inside `G[allowed]`, or `None` if they
    /// are not connected there. Among shortest paths, returns the one whose
    /// vertex-id sequence is lexicographically smallest.
    pub fn shortest_path(
        &self,
        from: Vertex,
        to: Vertex,
        allowed: &VertexSet,
    ) -> Result<Option<VertexSequence>> {
        for &v in [from, to].iter() {
            if !allowed.contains(&v) {
                return Err(Error::Precondition(format!(
                    "endpoint {v} not in allowed set"
                )));
            }
        }
        for &v in allowed {
            if !self.contains_vertex(v) {
                return Err(Error::VertexNotInGraph(v));
            }
        }
        let sub = self.induced(allowed);
        // Distances to `to`; then greedily walk from `from` picking the
        // least-id neighbour one layer closer.
        let mut dist: BTreeMap<Vertex, usize> = BTreeMap::new();
        dist.insert(to, 0);
        let mut queue = VecDeque::from([to]);
        while let Some(v) = queue.pop_front() {
            let d = dist[&v];
            for &u in sub.neighbors(v) {
                if !dist.contains_key(&u) {
                    dist.insert(u, d + 1);
                    queue.push_back(u);
                }
            }
        }
        let Some(&total) = dist.get(&from) else {
            return Ok(None);
        };
        let mut path = vec![from];
        let mut cur = from;
        for step in (0..total).rev() {
            let next = sub
                .neighbors(cur)
                .iter()
                .copied()
                .find(|u| dist.get(u) == Some(&step))
                .expect("BFS layer must contain a predecessor");
            path.push(next);
            cur = next;
        }
        Ok(Some(VertexSequence::new(path)?))
    }
}

/// An ordered sequence of pairwise distinct vertices; used for paths and
/// cycles (cycles close last to first).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSequence {
    items: Vec<Vertex>,
}

impl VertexSequence {
    pub fn new(items: Vec<Vertex>) -> Result<Self> {
        let mut seen = VertexSet::new();
        for &v in &items {
            if !seen.insert(v) {
                return Err(Error::RepeatedVertex(v));
            }
        }
        Ok(VertexSequence { items })
    }

    pub fn items(&self) -> &[Vertex] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.items.contains(&v)
    }

    pub fn first(&self) -> Option<Vertex> {
        self.items.first().copied()
    }

    pub fn last(&self) -> Option<Vertex> {
        self.items.last().copied()
    }

    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.items.iter().position(|&x| x == v)
    }

    pub fn to_set(&self) -> VertexSet {
        self.items.iter().copied().collect()
    }

    pub fn reversed(&self) -> VertexSequence {
        let mut items = self.items.clone();
        items.reverse();
        VertexSequence { items }
    }

    /// Consecutive edges of the walk, as sorted pairs (not closing the cycle).
    pub fn path_edges(&self) -> BTreeSet<(Vertex, Vertex)> {
        self.items
            .windows(2)
            .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
            .collect()
    }
}

/// Records a component contraction: which origin vertices were merged into
/// each image vertex.
#[derive(Debug, Clone)]
pub struct ContractionMap {
    origin: Graph,
    image: Graph,
    fibers: BTreeMap<Vertex, VertexSet>,
}

impl ContractionMap {
    pub fn origin(&self) -> &Graph {
        &self.origin
    }

    pub fn image(&self) -> &Graph {
        &self.image
    }

    pub fn fibers(&self) -> &BTreeMap<Vertex, VertexSet> {
        &self.fibers
    }

    pub fn fiber(&self, image_vertex: Vertex) -> &VertexSet {
        &self.fibers[&image_vertex]
    }

    /// Union of the fibers of a set of image vertices.
    pub fn expand(&self, image_vertices: &VertexSet) -> VertexSet {
        image_vertices
            .iter()
            .flat_map(|v| self.fiber(*v).iter().copied())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_cases() {
        assert!(Graph::empty().components().is_empty());

        let g = Graph::new([0, 1, 2], [(0, 1)]).unwrap();
        assert_eq!(
            g.components(),
            vec![VertexSet::from([0, 1]), VertexSet::from([2])]
        );

        // C6 minus two antipodal vertices leaves two paths of two vertices.
        let g = Graph::cycle(6).without(&VertexSet::from([0, 3]));
        let comps = g.components();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.len() == 2));
    }

    #[test]
    fn neighborhoods() {
        let star = Graph::new([0, 1, 2, 3], [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(
            star.closed_neighborhood(&VertexSet::from([0])).unwrap(),
            VertexSet::from([0, 1, 2, 3])
        );
        assert_eq!(
            star.closed_neighborhood(&VertexSet::new()).unwrap(),
            VertexSet::new()
        );
        let c5 = Graph::cycle(5);
        assert_eq!(
            c5.closed_neighborhood(&VertexSet::from([1])).unwrap(),
            VertexSet::from([0, 1, 2])
        );
        assert_eq!(
            c5.open_neighborhood(&VertexSet::from([1])).unwrap(),
            VertexSet::from([0, 2])
        );
        assert_eq!(
            star.closed_neighborhood(&VertexSet::from([9])),
            Err(Error::VertexNotInGraph(9))
        );
    }

    #[test]
    fn induced_path_and_cycle() {
        let p3 = Graph::path(3);
        let seq = VertexSequence::new(vec![0, 1, 2]).unwrap();
        assert!(p3.is_induced_path(&seq));

        let k3 = Graph::complete(3);
        assert!(!k3.is_induced_path(&seq)); // chord 0-2

        let w5 = Graph::wheel(5);
        let rim = VertexSequence::new(vec![0, 1, 2, 3, 4]).unwrap();
        assert!(w5.is_induced_cycle(&rim));
        assert!(!w5.is_induced_path(&rim));

        assert_eq!(
            VertexSequence::new(vec![0, 1, 0]),
            Err(Error::RepeatedVertex(0))
        );
    }

    #[test]
    fn contraction() {
        let g = Graph::cycle(4);
        let cm = g.contract_components(&g.vertex_set()).unwrap();
        assert_eq!(cm.image(), &g);
        assert!(cm.fibers().values().all(|f| f.len() == 1));

        // Star with centre kept: the three leaves are separate components.
        let star = Graph::new([0, 1, 2, 3], [(0, 1), (0, 2), (0, 3)]).unwrap();
        let cm = star.contract_components(&VertexSet::from([0])).unwrap();
        assert_eq!(cm.image().vertex_count(), 4);
        assert_eq!(cm.image().degree(0), 3);
        assert!(cm.image().vertices().filter(|&v| v != 0).all(|v| cm.image().degree(v) == 1));

        // C4 with a pendant path of length 2 at vertex 0 contracts to C4 plus
        // one pendant blob at 0.
        let g = Graph::new(
            0..6,
            [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5)],
        )
        .unwrap();
        let keep = VertexSet::from([0, 1, 2, 3]);
        let cm = g.contract_components(&keep).unwrap();
        assert_eq!(cm.image().vertex_count(), 5);
        let blob = cm.image().vertices().find(|v| !keep.contains(v)).unwrap();
        assert_eq!(cm.image().neighbors(blob), &VertexSet::from([0]));
        assert_eq!(cm.fiber(blob), &VertexSet::from([4, 5]));
    }

    #[test]
    fn contraction_adjacency_round_trip() {
        // Image adjacency must equal existence of an origin edge between fibers.
        let g = Graph::new(0..7, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 2)])
            .unwrap();
        let keep = VertexSet::from([0, 1, 2]);
        let cm = g.contract_components(&keep).unwrap();
        let img = cm.image();
        for &a in img.vertex_set().iter() {
            for &b in img.vertex_set().iter() {
                if a >= b {
                    continue;
                }
                let origin_edge = cm.fiber(a).iter().any(|&x| {
                    cm.fiber(b).iter().any(|&y| g.has_edge(x, y))
                });
                assert_eq!(img.has_edge(a, b), origin_edge);
            }
        }
    }

    #[test]
    fn shortest_paths() {
        let c6 = Graph::cycle(6);
        let all = c6.vertex_set();
        let p = c6.shortest_path(0, 0, &all).unwrap().unwrap();
        assert_eq!(p.items(), &[0]);

        let p = c6.shortest_path(0, 3, &all).unwrap().unwrap();
        assert_eq!(p.items(), &[0, 1, 2, 3]); // lexicographically smaller arc

        let g = Graph::new([0, 1, 2], [(0, 1)]).unwrap();
        assert_eq!(g.shortest_path(0, 2, &g.vertex_set()).unwrap(), None);

        // Shortest paths are induced.
        let p = c6.shortest_path(1, 4, &all).unwrap().unwrap();
        assert!(c6.is_induced_path(&p));
    }
}
