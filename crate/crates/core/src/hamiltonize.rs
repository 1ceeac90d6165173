//! Linking a regular graph to a `p`-hamiltonian one.
//!
//! A longest cycle that misses a vertex is lengthened by one strong link;
//! once the cycle is hamiltonian the remaining loops are removed, again one
//! strong link at a time.

use crate::canon::LegMode;
use crate::connectivity::{is_three_edge_connected, longest_cycle, regularity, Cycle};
use crate::error::{internal, precondition, Result};
use crate::graph::{EdgeId, Graph, HalfEdgeId, VertexId};
use crate::linkage::{strong_link, LinkMode, StrongLinkStep};
use crate::util::combinations;

/// Result of splitting a `(2p − 2)`-valent vertex into two `p`-valent ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    pub graph: Graph,
    /// The new edge between the two halves.
    pub new_edge: EdgeId,
    /// Keeps the id of the split vertex.
    pub left: VertexId,
    /// The vertex added last.
    pub right: VertexId,
}

fn accepts(g: &Graph, mode: LinkMode) -> bool {
    mode == LinkMode::Plain || is_three_edge_connected(g)
}

/// Splits `w` into `w` and a new vertex joined by a new edge, with the
/// half-edges in `left_required` staying at `w` and those in
/// `right_required` moving. The remaining half-edges are distributed so
/// both sides get `p − 1` of them; distributions are tried in
/// lexicographic order of the set kept at `w`, and the first accepted by
/// `mode` wins.
pub fn valency_reducing_extension(
    g: &Graph,
    w: VertexId,
    left_required: &[HalfEdgeId],
    right_required: &[HalfEdgeId],
    mode: LinkMode,
) -> Result<Extension> {
    let val = g.valency(w);
    if val < 2 || !val.is_multiple_of(2) {
        return precondition("split vertex must have even valency");
    }
    let side = val / 2;
    let incident = g.incident(w);
    for h in left_required.iter().chain(right_required) {
        if !incident.contains(h) {
            return precondition(format!("half-edge {h} is not at the split vertex"));
        }
    }
    if left_required.iter().any(|h| right_required.contains(h))
        || left_required.len() > side
        || right_required.len() > side
    {
        return precondition("required half-edges do not fit on their sides");
    }
    let free: Vec<HalfEdgeId> = incident
        .iter()
        .copied()
        .filter(|h| !left_required.contains(h) && !right_required.contains(h))
        .collect();
    let (vertex_count, endpoint, partner, leg_label) = g.raw_parts();
    let u = VertexId(vertex_count);
    let n = endpoint.len();
    for keep in combinations(free.len(), side - left_required.len()) {
        let mut endpoint = endpoint.to_vec();
        for (k, h) in free.iter().enumerate() {
            if !keep.contains(&k) {
                endpoint[h.0] = u;
            }
        }
        for h in right_required {
            endpoint[h.0] = u;
        }
        endpoint.extend([w, u]);
        let mut partner = partner.to_vec();
        partner.extend([HalfEdgeId(n + 1), HalfEdgeId(n)]);
        let mut leg_label = leg_label.to_vec();
        leg_label.extend([None, None]);
        let Ok(out) = Graph::from_parts(vertex_count + 1, endpoint, partner, leg_label) else {
            continue;
        };
        if accepts(&out, mode) {
            let new_edge = out.edge_of(HalfEdgeId(n)).expect("new edge");
            return Ok(Extension {
                graph: out,
                new_edge,
                left: w,
                right: u,
            });
        }
    }
    internal("no split of the vertex is admissible")
}

/// One strong link from `g` to a graph whose longest cycle is longer than
/// `delta`, which must be a longest cycle of `g` missing some vertex.
///
/// The least edge `e = v₁v` with only `v₁` on `delta` is contracted, and the
/// merged vertex is split again so that the two cycle edges at `v₁` end on
/// different sides of a new edge, which then closes a cycle through `v`'s
/// old position as well.
pub fn lengthen_cycle_step(
    g: &Graph,
    delta: &Cycle,
    mode: LinkMode,
) -> Result<(Graph, StrongLinkStep)> {
    if !delta.is_valid(g) {
        return precondition("cycle is not a cycle of the graph");
    }
    if delta.len() >= g.vertex_count() {
        return precondition("cycle is already hamiltonian");
    }
    if regularity(g).is_none() || g.leg_count() > 0 {
        return precondition("graph must be regular without legs");
    }
    if mode == LinkMode::ThreeEc && !is_three_edge_connected(g) {
        return precondition("graph is not 3-edge-connected");
    }
    let Some(e) = g.edges().find(|&e| {
        let (a, b) = g.edge_endpoints(e);
        delta.contains_vertex(a) != delta.contains_vertex(b)
    }) else {
        return internal("connected graph has no edge leaving the cycle");
    };
    let (a, b) = g.edge_endpoints(e);
    let v1 = if delta.contains_vertex(a) { a } else { b };
    let k = delta.len();
    let pos = delta.position(v1).expect("on cycle");
    let forward = delta.edges[pos];
    let backward = delta.edges[(pos + k - 1) % k];
    let half_at = |f: EdgeId, exclude: Option<HalfEdgeId>| {
        g.edge_halves(f)
            .into_iter()
            .find(|&h| g.endpoint(h) == v1 && Some(h) != exclude)
            .expect("cycle edge meets v1")
    };
    let h1 = half_at(forward, None);
    let hl = half_at(backward, Some(h1));
    let (contracted, map) = g.contract_edge(e);
    let w = map.vertex_map[v1.0];
    let ext = valency_reducing_extension(
        &contracted,
        w,
        &[map.half_edge_map[h1.0].expect("kept")],
        &[map.half_edge_map[hl.0].expect("kept")],
        mode,
    )?;
    let step = strong_link(g, e, &ext.graph, ext.new_edge, LegMode::Labeled)?;
    Ok((ext.graph, step))
}

/// One strong link removing a loop at a vertex of the hamiltonian cycle
/// `delta`, which stays a hamiltonian cycle of the result.
///
/// With `v₂` the successor of the loop's vertex `v₁`, one half of the loop
/// moves to `v₂` and a half-edge at `v₂` off the cycle moves to `v₁`; the
/// cycle edge `v₁v₂` is contracted on both sides.
pub fn remove_loop_step(
    g: &Graph,
    delta: &Cycle,
    loop_edge: EdgeId,
    mode: LinkMode,
) -> Result<(Graph, StrongLinkStep)> {
    if delta.len() != g.vertex_count() || !delta.is_valid(g) || delta.len() < 2 {
        return precondition("cycle is not hamiltonian");
    }
    if loop_edge.0 >= g.edge_count() || !g.is_loop(loop_edge) {
        return precondition("edge is not a loop");
    }
    let [_, l2] = g.edge_halves(loop_edge);
    let v1 = g.endpoint(l2);
    let k = delta.len();
    let pos = delta.position(v1).expect("hamiltonian");
    let v2 = delta.vertices[(pos + 1) % k];
    let e1 = delta.edges[pos];
    let on_cycle = |h: HalfEdgeId| g.edge_of(h).is_some_and(|f| delta.edges.contains(&f));
    for &h in g.incident(v2) {
        if on_cycle(h) || (!g.is_leg(h) && g.endpoint(g.partner(h)) == v1) {
            continue;
        }
        let out = g.with_endpoints(&[(l2, v2), (h, v1)])?;
        if !accepts(&out, mode) {
            continue;
        }
        if !delta.is_valid(&out) {
            return internal("loop removal broke the cycle");
        }
        let step = strong_link(g, e1, &out, e1, LegMode::Labeled)?;
        return Ok((out, step));
    }
    internal("no half-edge at the successor can be exchanged")
}

/// Links a `p`-regular graph without legs to a `p`-hamiltonian graph
/// (hamiltonian and loop-free). In [`LinkMode::ThreeEc`] every graph along
/// the way is 3-edge-connected.
pub fn hamiltonize(g: &Graph, mode: LinkMode) -> Result<(Graph, Vec<StrongLinkStep>)> {
    if regularity(g).is_none() || g.leg_count() > 0 {
        return precondition("graph must be regular without legs");
    }
    if g.vertex_count() < 2 {
        return precondition("graph needs at least two vertices");
    }
    if mode == LinkMode::ThreeEc && !is_three_edge_connected(g) {
        return precondition("graph is not 3-edge-connected");
    }
    let mut cur = g.clone();
    let mut steps = Vec::new();
    let mut delta = longest_cycle(&cur)?.expect("regular graphs have cycles");
    while delta.len() < cur.vertex_count() {
        let (next, step) = lengthen_cycle_step(&cur, &delta, mode)?;
        let longer = longest_cycle(&next)?.expect("regular graphs have cycles");
        if longer.len() <= delta.len() {
            return internal("longest cycle did not grow");
        }
        steps.push(step);
        cur = next;
        delta = longer;
    }
    loop {
        let Some(l) = cur.edges().find(|&e| cur.is_loop(e)) else {
            break;
        };
        let before = cur.total_loops();
        let (next, step) = remove_loop_step(&cur, &delta, l, mode)?;
        if next.total_loops() >= before {
            return internal("loop count did not drop");
        }
        steps.push(step);
        cur = next;
    }
    Ok((cur, steps))
}
