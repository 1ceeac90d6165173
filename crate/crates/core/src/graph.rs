//! Half-edge multigraphs with legs and vertex weights.
//!
//! A [`Graph`] is the combinatorial datum `(V, H, ι, ε)`: a vertex set, a set
//! of half-edges, an involution on half-edges and an endpoint map. Fixed
//! points of the involution are legs and carry distinct positive labels;
//! every other orbit `{h, ι(h)}` is an edge. Loops count twice toward
//! valency, legs once.
//!
//! All ids are dense small integers. Edges are numbered by the order of
//! their smaller half-edge, so the numbering is a function of the half-edge
//! data alone. Values are immutable: every operation returns a fresh graph.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{precondition, Error, Result};
use crate::util::DisjointSet;

macro_rules! id_type {
    ($(#[$m:meta])* $name:ident) => {
        $(#[$m])*
        #[derive(
            Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
        )]
        #[serde(transparent)]
        pub struct $name(pub usize);

        impl $name {
            #[inline]
            pub fn index(self) -> usize {
                self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }
    };
}

id_type!(
    /// Index of a vertex.
    VertexId
);
id_type!(
    /// Index of a half-edge.
    HalfEdgeId
);
id_type!(
    /// Index of an edge in [`Graph::edges`] order.
    EdgeId
);

/// A one-cell of a graph: an edge or a leg.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cell {
    Edge(EdgeId),
    Leg(HalfEdgeId),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_count: usize,
    endpoint: Vec<VertexId>,
    partner: Vec<HalfEdgeId>,
    leg_label: Vec<Option<u32>>,
    // Derived from the fields above.
    edges: Vec<[HalfEdgeId; 2]>,
    edge_of: Vec<Option<EdgeId>>,
    incident: Vec<Vec<HalfEdgeId>>,
}

impl Graph {
    /// Builds a graph from raw half-edge data and checks every invariant,
    /// including connectedness.
    pub fn from_parts(
        vertex_count: usize,
        endpoint: Vec<VertexId>,
        partner: Vec<HalfEdgeId>,
        leg_label: Vec<Option<u32>>,
    ) -> Result<Graph> {
        let g = Graph::assemble(vertex_count, endpoint, partner, leg_label)?;
        if !g.is_connected() {
            return Err(Error::Malformed("graph is not connected".into()));
        }
        Ok(g)
    }

    /// Same checks as [`Graph::from_parts`] except connectedness.
    pub(crate) fn assemble(
        vertex_count: usize,
        endpoint: Vec<VertexId>,
        partner: Vec<HalfEdgeId>,
        leg_label: Vec<Option<u32>>,
    ) -> Result<Graph> {
        let n = endpoint.len();
        if vertex_count == 0 {
            return Err(Error::Malformed("vertex set is empty".into()));
        }
        if partner.len() != n || leg_label.len() != n {
            return Err(Error::Malformed(
                "half-edge tables have different lengths".into(),
            ));
        }
        let mut labels = BTreeSet::new();
        for h in 0..n {
            if endpoint[h].0 >= vertex_count {
                return Err(Error::Malformed(format!(
                    "half-edge {h} has unknown endpoint {}",
                    endpoint[h]
                )));
            }
            let q = partner[h].0;
            if q >= n || partner[q].0 != h {
                return Err(Error::Malformed(format!(
                    "partner map is not an involution at half-edge {h}"
                )));
            }
            match (q == h, leg_label[h]) {
                (true, Some(l)) => {
                    if l == 0 || !labels.insert(l) {
                        return Err(Error::Malformed(format!(
                            "leg label {l} is zero or repeated"
                        )));
                    }
                }
                (true, None) => {
                    return Err(Error::Malformed(format!("leg {h} has no label")));
                }
                (false, Some(_)) => {
                    return Err(Error::Malformed(format!(
                        "half-edge {h} is not a leg but carries a label"
                    )));
                }
                (false, None) => {}
            }
        }
        let mut edges = Vec::new();
        let mut edge_of = vec![None; n];
        for h in 0..n {
            let q = partner[h].0;
            if q > h {
                edge_of[h] = Some(EdgeId(edges.len()));
                edge_of[q] = Some(EdgeId(edges.len()));
                edges.push([HalfEdgeId(h), HalfEdgeId(q)]);
            }
        }
        let mut incident = vec![Vec::new(); vertex_count];
        for (h, v) in endpoint.iter().enumerate() {
            incident[v.0].push(HalfEdgeId(h));
        }
        Ok(Graph {
            vertex_count,
            endpoint,
            partner,
            leg_label,
            edges,
            edge_of,
            incident,
        })
    }

    /// Convenience constructor: edge `k` gets half-edges `2k` (at `u`) and
    /// `2k + 1` (at `v`); legs follow in the given order.
    pub fn from_edges(
        vertex_count: usize,
        edges: &[(usize, usize)],
        legs: &[(usize, u32)],
    ) -> Result<Graph> {
        let mut endpoint = Vec::new();
        let mut partner = Vec::new();
        let mut leg_label = Vec::new();
        for &(u, v) in edges {
            let h = endpoint.len();
            endpoint.push(VertexId(u));
            endpoint.push(VertexId(v));
            partner.push(HalfEdgeId(h + 1));
            partner.push(HalfEdgeId(h));
            leg_label.push(None);
            leg_label.push(None);
        }
        for &(v, label) in legs {
            let h = endpoint.len();
            endpoint.push(VertexId(v));
            partner.push(HalfEdgeId(h));
            leg_label.push(Some(label));
        }
        Graph::from_parts(vertex_count, endpoint, partner, leg_label)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn half_edge_count(&self) -> usize {
        self.endpoint.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn leg_count(&self) -> usize {
        self.endpoint.len() - 2 * self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count).map(VertexId)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn half_edges(&self) -> impl Iterator<Item = HalfEdgeId> + '_ {
        (0..self.endpoint.len()).map(HalfEdgeId)
    }

    /// Legs in increasing half-edge order.
    pub fn legs(&self) -> impl Iterator<Item = HalfEdgeId> + '_ {
        self.half_edges().filter(move |&h| self.is_leg(h))
    }

    pub fn endpoint(&self, h: HalfEdgeId) -> VertexId {
        self.endpoint[h.0]
    }

    pub fn partner(&self, h: HalfEdgeId) -> HalfEdgeId {
        self.partner[h.0]
    }

    pub fn is_leg(&self, h: HalfEdgeId) -> bool {
        self.partner[h.0] == h
    }

    pub fn leg_label(&self, h: HalfEdgeId) -> Option<u32> {
        self.leg_label[h.0]
    }

    pub fn leg_with_label(&self, label: u32) -> Option<HalfEdgeId> {
        self.legs().find(|&h| self.leg_label(h) == Some(label))
    }

    pub fn edge_of(&self, h: HalfEdgeId) -> Option<EdgeId> {
        self.edge_of[h.0]
    }

    /// The two half-edges of `e`, smaller id first.
    pub fn edge_halves(&self, e: EdgeId) -> [HalfEdgeId; 2] {
        self.edges[e.0]
    }

    pub fn edge_endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        let [a, b] = self.edges[e.0];
        (self.endpoint(a), self.endpoint(b))
    }

    /// The endpoint of `e` different from `v` (or `v` itself for a loop).
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edge_endpoints(e);
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let (a, b) = self.edge_endpoints(e);
        a == b
    }

    pub fn incident(&self, v: VertexId) -> &[HalfEdgeId] {
        &self.incident[v.0]
    }

    pub fn valency(&self, v: VertexId) -> usize {
        self.incident[v.0].len()
    }

    pub fn loop_count(&self, v: VertexId) -> usize {
        self.incident[v.0]
            .iter()
            .filter(|&&h| !self.is_leg(h) && self.endpoint(self.partner(h)) == v)
            .count()
            / 2
    }

    pub fn total_loops(&self) -> usize {
        self.edges().filter(|&e| self.is_loop(e)).count()
    }

    pub fn legs_at(&self, v: VertexId) -> Vec<HalfEdgeId> {
        self.incident[v.0]
            .iter()
            .copied()
            .filter(|&h| self.is_leg(h))
            .collect()
    }

    pub fn edges_between(&self, u: VertexId, v: VertexId) -> Vec<EdgeId> {
        self.edges()
            .filter(|&e| {
                let (a, b) = self.edge_endpoints(e);
                (a == u && b == v) || (a == v && b == u)
            })
            .collect()
    }

    /// Symmetric edge-multiplicity matrix; the diagonal counts loops.
    pub fn multiplicity_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count;
        let mut m = vec![vec![0; n]; n];
        for e in self.edges() {
            let (a, b) = self.edge_endpoints(e);
            m[a.0][b.0] += 1;
            if a != b {
                m[b.0][a.0] += 1;
            }
        }
        m
    }

    /// First Betti number `|E| - |V| + 1` of a connected graph.
    pub fn betti_number(&self) -> usize {
        (self.edges.len() + 1)
            .checked_sub(self.vertex_count)
            .expect("connected graph has |E| >= |V| - 1")
    }

    pub fn is_connected(&self) -> bool {
        let mut ds = DisjointSet::new(self.vertex_count);
        for e in self.edges() {
            let (a, b) = self.edge_endpoints(e);
            ds.union(a.0, b.0);
        }
        ds.components() == 1
    }

    /// Key of a cell used in JSON documents: the decimal id of the smaller
    /// half-edge of an edge, or of the leg half-edge.
    pub fn cell_key(&self, cell: Cell) -> String {
        match cell {
            Cell::Edge(e) => self.edges[e.0][0].0.to_string(),
            Cell::Leg(h) => h.0.to_string(),
        }
    }

    pub fn edge_key(&self, e: EdgeId) -> String {
        self.cell_key(Cell::Edge(e))
    }

    pub fn cell_from_key(&self, key: &str) -> Option<Cell> {
        let h: usize = key.parse().ok()?;
        if h >= self.endpoint.len() {
            return None;
        }
        let h = HalfEdgeId(h);
        if self.is_leg(h) {
            Some(Cell::Leg(h))
        } else {
            let e = self.edge_of(h)?;
            (self.edges[e.0][0] == h).then_some(Cell::Edge(e))
        }
    }

    pub fn edge_from_key(&self, key: &str) -> Option<EdgeId> {
        match self.cell_from_key(key)? {
            Cell::Edge(e) => Some(e),
            Cell::Leg(_) => None,
        }
    }

    /// Contracts a set of edges. Legs are not contractible.
    pub fn contract(&self, cells: &[Cell]) -> Result<(Graph, ContractionMap)> {
        let mut set = BTreeSet::new();
        for &c in cells {
            match c {
                Cell::Edge(e) if e.0 < self.edges.len() => {
                    set.insert(e);
                }
                Cell::Edge(e) => return precondition(format!("unknown edge {e}")),
                Cell::Leg(h) => return precondition(format!("leg {h} cannot be contracted")),
            }
        }
        Ok(self.contract_set(&set))
    }

    pub fn contract_edges(&self, edges: &[EdgeId]) -> (Graph, ContractionMap) {
        let set: BTreeSet<EdgeId> = edges.iter().copied().collect();
        self.contract_set(&set)
    }

    pub fn contract_edge(&self, e: EdgeId) -> (Graph, ContractionMap) {
        self.contract_edges(&[e])
    }

    fn contract_set(&self, set: &BTreeSet<EdgeId>) -> (Graph, ContractionMap) {
        let mut ds = DisjointSet::new(self.vertex_count);
        for &e in set {
            let (a, b) = self.edge_endpoints(e);
            ds.union(a.0, b.0);
        }
        let mut root_id = vec![usize::MAX; self.vertex_count];
        let mut vertex_map = Vec::with_capacity(self.vertex_count);
        let mut next = 0;
        for v in 0..self.vertex_count {
            let r = ds.find(v);
            if root_id[r] == usize::MAX {
                root_id[r] = next;
                next += 1;
            }
            vertex_map.push(VertexId(root_id[r]));
        }
        let mut half_edge_map = vec![None; self.endpoint.len()];
        let mut kept = Vec::new();
        for h in self.half_edges() {
            let dropped = self.edge_of(h).is_some_and(|e| set.contains(&e));
            if !dropped {
                half_edge_map[h.0] = Some(HalfEdgeId(kept.len()));
                kept.push(h);
            }
        }
        let endpoint = kept
            .iter()
            .map(|&h| vertex_map[self.endpoint(h).0])
            .collect();
        let partner = kept
            .iter()
            .map(|&h| half_edge_map[self.partner(h).0].expect("partner kept"))
            .collect();
        let leg_label = kept.iter().map(|&h| self.leg_label(h)).collect();
        let target = Graph::assemble(next, endpoint, partner, leg_label)
            .expect("contraction of a valid graph is valid");
        let edge_map = self
            .edges()
            .map(|e| half_edge_map[self.edges[e.0][0].0].map(|h| target.edge_of(h).expect("edge")))
            .collect();
        (
            target,
            ContractionMap {
                contracted: set.clone(),
                vertex_map,
                edge_map,
                half_edge_map,
            },
        )
    }

    /// Inserts a new vertex in the interior of `cell`, optionally carrying a
    /// new leg with the given label.
    pub fn subdivide(&self, cell: Cell, new_leg: Option<u32>) -> Result<(Graph, Subdivision)> {
        let n = self.endpoint.len();
        let z = VertexId(self.vertex_count);
        let mut endpoint = self.endpoint.clone();
        let mut partner = self.partner.clone();
        let mut leg_label = self.leg_label.clone();
        let (c, d) = (HalfEdgeId(n), HalfEdgeId(n + 1));
        let moved_leg;
        match cell {
            Cell::Edge(e) => {
                if e.0 >= self.edges.len() {
                    return precondition(format!("unknown edge {e}"));
                }
                let [a, b] = self.edges[e.0];
                endpoint.extend([z, z]);
                partner[a.0] = c;
                partner[b.0] = d;
                partner.extend([a, b]);
                leg_label.extend([None, None]);
                moved_leg = None;
            }
            Cell::Leg(l) => {
                if l.0 >= n || !self.is_leg(l) {
                    return precondition(format!("{l} is not a leg"));
                }
                endpoint.extend([z, z]);
                partner[l.0] = c;
                partner.extend([l, d]);
                leg_label.push(None);
                leg_label.push(leg_label[l.0]);
                leg_label[l.0] = None;
                moved_leg = Some(d);
            }
        }
        let new_leg_half = new_leg.map(|label| {
            let h = HalfEdgeId(endpoint.len());
            endpoint.push(z);
            partner.push(h);
            leg_label.push(Some(label));
            h
        });
        let g = Graph::from_parts(self.vertex_count + 1, endpoint, partner, leg_label)?;
        let edge_map = self
            .edges()
            .map(|e| match cell {
                Cell::Edge(s) if s == e => None,
                _ => g.edge_of(self.edges[e.0][0]),
            })
            .collect();
        let pieces = match cell {
            Cell::Edge(e) => {
                let [a, b] = self.edges[e.0];
                vec![g.edge_of(a).unwrap(), g.edge_of(b).unwrap()]
            }
            Cell::Leg(l) => vec![g.edge_of(l).unwrap()],
        };
        Ok((
            g,
            Subdivision {
                new_vertex: z,
                new_leg: new_leg_half,
                moved_leg,
                pieces,
                edge_map,
            },
        ))
    }

    /// Inverse of [`Graph::subdivide`] with a new leg: removes the leg with
    /// `label` together with its 3-valent endpoint, fusing the two remaining
    /// cells at that vertex into one. Returns the smaller graph and the cell
    /// of it that the removed vertex sat on.
    pub fn smooth_leg(&self, label: u32) -> Result<(Graph, Cell)> {
        let leg = match self.leg_with_label(label) {
            Some(l) => l,
            None => return precondition(format!("no leg labelled {label}")),
        };
        let v = self.endpoint(leg);
        let others: Vec<HalfEdgeId> = self
            .incident(v)
            .iter()
            .copied()
            .filter(|&h| h != leg)
            .collect();
        if others.len() != 2 {
            return precondition(format!("endpoint of leg {label} is not 3-valent"));
        }
        let (x, y) = (others[0], others[1]);
        if self.partner(x) == y {
            return precondition("leg endpoint carries a loop; nothing to smooth onto");
        }
        if self.is_leg(x) && self.is_leg(y) {
            return precondition("leg endpoint has no edge");
        }
        // Fuse: the outer partners of x and y become partners of each other
        // (or the outer partner of the edge becomes a leg with the carried label).
        let removed: BTreeSet<usize> = [leg.0, x.0, y.0].into_iter().collect();
        let mut new_id = vec![usize::MAX; self.endpoint.len()];
        let mut kept = Vec::new();
        for h in 0..self.endpoint.len() {
            if !removed.contains(&h) {
                new_id[h] = kept.len();
                kept.push(h);
            }
        }
        let vmap = |w: VertexId| VertexId(if w.0 > v.0 { w.0 - 1 } else { w.0 });
        let mut endpoint = Vec::with_capacity(kept.len());
        let mut partner = Vec::with_capacity(kept.len());
        let mut leg_label = Vec::with_capacity(kept.len());
        let outer = |h: HalfEdgeId| -> Option<usize> {
            if self.is_leg(h) {
                None
            } else {
                Some(self.partner(h).0)
            }
        };
        let (ox, oy) = (outer(x), outer(y));
        for &h in &kept {
            endpoint.push(vmap(self.endpoint[h]));
            leg_label.push(self.leg_label[h]);
            let p = if Some(h) == ox {
                match oy {
                    Some(o) => new_id[o],
                    None => {
                        *leg_label.last_mut().unwrap() = self.leg_label(y);
                        new_id[h]
                    }
                }
            } else if Some(h) == oy {
                match ox {
                    Some(o) => new_id[o],
                    None => {
                        *leg_label.last_mut().unwrap() = self.leg_label(x);
                        new_id[h]
                    }
                }
            } else {
                new_id[self.partner[h].0]
            };
            partner.push(HalfEdgeId(p));
        }
        let g = Graph::from_parts(self.vertex_count - 1, endpoint, partner, leg_label)?;
        // The fused cell contains the surviving outer half-edge.
        let anchor = HalfEdgeId(new_id[ox.or(oy).unwrap()]);
        let cell = if g.is_leg(anchor) {
            Cell::Leg(anchor)
        } else {
            Cell::Edge(g.edge_of(anchor).unwrap())
        };
        Ok((g, cell))
    }

    /// Replaces leg labels through `relabel` (old label → new label).
    pub fn with_leg_labels(&self, relabel: &BTreeMap<u32, u32>) -> Result<Graph> {
        let leg_label = self
            .leg_label
            .iter()
            .map(|l| l.map(|x| relabel.get(&x).copied().unwrap_or(x)))
            .collect();
        Graph::from_parts(
            self.vertex_count,
            self.endpoint.clone(),
            self.partner.clone(),
            leg_label,
        )
    }

    /// Same graph with new endpoints for some half-edges.
    pub(crate) fn with_endpoints(&self, changes: &[(HalfEdgeId, VertexId)]) -> Result<Graph> {
        let mut endpoint = self.endpoint.clone();
        for &(h, v) in changes {
            endpoint[h.0] = v;
        }
        Graph::from_parts(
            self.vertex_count,
            endpoint,
            self.partner.clone(),
            self.leg_label.clone(),
        )
    }

    pub(crate) fn raw_parts(&self) -> (usize, &[VertexId], &[HalfEdgeId], &[Option<u32>]) {
        (
            self.vertex_count,
            &self.endpoint,
            &self.partner,
            &self.leg_label,
        )
    }
}

/// Bookkeeping for `Γ → Γ/S`.
///
/// `vertex_map` is the surjection on vertices; every preimage of a target
/// vertex spans a connected component of `Γ` minus the edges outside `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionMap {
    pub contracted: BTreeSet<EdgeId>,
    pub vertex_map: Vec<VertexId>,
    /// Source edge → target edge; `None` exactly on `contracted`.
    pub edge_map: Vec<Option<EdgeId>>,
    /// Source half-edge → target half-edge; `None` on half-edges of `contracted`.
    pub half_edge_map: Vec<Option<HalfEdgeId>>,
}

impl ContractionMap {
    pub fn image_vertex(&self, source: &Graph, e: EdgeId) -> VertexId {
        self.vertex_map[source.edge_endpoints(e).0 .0]
    }

    pub fn leg_map(&self, source: &Graph) -> BTreeMap<HalfEdgeId, HalfEdgeId> {
        source
            .legs()
            .map(|l| (l, self.half_edge_map[l.0].expect("legs survive")))
            .collect()
    }

    /// Inverse of the edge correspondence `E(Γ) ∖ S → E(Γ/S)`.
    pub fn edge_preimages(&self) -> BTreeMap<EdgeId, EdgeId> {
        self.edge_map
            .iter()
            .enumerate()
            .filter_map(|(s, t)| t.map(|t| (t, EdgeId(s))))
            .collect()
    }
}

/// Bookkeeping returned by [`Graph::subdivide`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    pub new_vertex: VertexId,
    pub new_leg: Option<HalfEdgeId>,
    /// When a leg was subdivided, the half-edge now carrying its label.
    pub moved_leg: Option<HalfEdgeId>,
    /// Edges incident to the new vertex, in the order
    /// `[toward first endpoint, toward second endpoint]` (one entry for a leg).
    pub pieces: Vec<EdgeId>,
    /// Old edge → new edge for edges that were not subdivided.
    pub edge_map: Vec<Option<EdgeId>>,
}

/// A graph with a nonnegative integer weight on every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedGraph {
    graph: Graph,
    weights: Vec<u32>,
}

impl WeightedGraph {
    pub fn new(graph: Graph, weights: Vec<u32>) -> Result<WeightedGraph> {
        if weights.len() != graph.vertex_count() {
            return Err(Error::Malformed(format!(
                "{} weights for {} vertices",
                weights.len(),
                graph.vertex_count()
            )));
        }
        Ok(WeightedGraph { graph, weights })
    }

    /// All weights zero.
    pub fn pure(graph: Graph) -> WeightedGraph {
        let weights = vec![0; graph.vertex_count()];
        WeightedGraph { graph, weights }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, v: VertexId) -> u32 {
        self.weights[v.0]
    }

    pub fn total_weight(&self) -> usize {
        self.weights.iter().map(|&w| w as usize).sum()
    }

    pub fn is_pure(&self) -> bool {
        self.weights.iter().all(|&w| w == 0)
    }

    pub fn genus(&self) -> usize {
        genus(self)
    }

    /// Weight-0 vertices have valency ≥ 3, weight-1 vertices valency ≥ 1.
    pub fn is_stable(&self) -> bool {
        self.graph.vertices().all(|v| {
            let val = self.graph.valency(v);
            match self.weight(v) {
                0 => val >= 3,
                1 => val >= 1,
                _ => true,
            }
        })
    }

    /// Weighted contraction: each target vertex receives the first Betti
    /// number of its preimage plus the preimage's total weight.
    pub fn weighted_contract(&self, cells: &[Cell]) -> Result<(WeightedGraph, ContractionMap)> {
        let (target, map) = self.graph.contract(cells)?;
        let weights = contracted_weights(&self.graph, &self.weights, &target, &map);
        Ok((
            WeightedGraph {
                graph: target,
                weights,
            },
            map,
        ))
    }

    pub fn weighted_contract_edge(&self, e: EdgeId) -> (WeightedGraph, ContractionMap) {
        let (target, map) = self.graph.contract_edge(e);
        let weights = contracted_weights(&self.graph, &self.weights, &target, &map);
        (
            WeightedGraph {
                graph: target,
                weights,
            },
            map,
        )
    }
}

fn contracted_weights(
    source: &Graph,
    weights: &[u32],
    target: &Graph,
    map: &ContractionMap,
) -> Vec<u32> {
    let t = target.vertex_count();
    let mut vertices = vec![0i64; t];
    let mut edges = vec![0i64; t];
    let mut total = vec![0u32; t];
    for v in source.vertices() {
        let tv = map.vertex_map[v.0].0;
        vertices[tv] += 1;
        total[tv] += weights[v.0];
    }
    for &e in &map.contracted {
        edges[map.image_vertex(source, e).0] += 1;
    }
    (0..t)
        .map(|i| total[i] + (edges[i] - vertices[i] + 1) as u32)
        .collect()
}

/// `b₁(Γ) + Σ w(v)`.
pub fn genus(wg: &WeightedGraph) -> usize {
    wg.graph.betti_number() + wg.total_weight()
}

/// First Betti number of the spanning subgraph with edge set `edges`
/// (all vertices kept, possibly disconnected): `|E| - |V| + #components`.
pub fn betti_of_subgraph(g: &Graph, edges: &BTreeSet<EdgeId>) -> usize {
    let mut ds = DisjointSet::new(g.vertex_count());
    for &e in edges {
        let (a, b) = g.edge_endpoints(e);
        ds.union(a.0, b.0);
    }
    edges.len() + ds.components() - g.vertex_count()
}
