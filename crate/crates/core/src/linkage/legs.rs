use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{junction_step, link, strong_link, LinkMode, LinkageCertificate, StrongLinkStep};
use crate::canon::{graphs_isomorphic, LegMode};
use crate::connectivity::is_p_regular;
use crate::error::{internal, precondition, Result};
use crate::graph::{Cell, Graph, VertexId};

fn cell_vertices(g: &Graph, c: Cell) -> Vec<VertexId> {
    match c {
        Cell::Edge(e) => {
            let (a, b) = g.edge_endpoints(e);
            vec![a, b]
        }
        Cell::Leg(l) => vec![g.endpoint(l)],
    }
}

fn cells(g: &Graph) -> Vec<Cell> {
    g.edges()
        .map(Cell::Edge)
        .chain(g.legs().map(Cell::Leg))
        .collect()
}

/// The piece of `cell`, subdivided, incident to `u`.
fn piece_at(
    g: &Graph,
    cell: Cell,
    u: VertexId,
    label: u32,
) -> Result<(Graph, crate::graph::EdgeId)> {
    let (sub, info) = g.subdivide(cell, Some(label))?;
    let k = match cell {
        Cell::Edge(e) if g.edge_endpoints(e).0 != u => 1,
        _ => 0,
    };
    Ok((sub, info.pieces[k]))
}

/// Strong links moving a leg `label` attached in the interior of cell
/// `from` of `base` to the interior of cell `to`, one shared vertex at a
/// time along a shortest path of cells.
pub fn move_leg(
    base: &Graph,
    from: Cell,
    to: Cell,
    label: u32,
    leg_mode: LegMode,
) -> Result<Vec<StrongLinkStep>> {
    let all = cells(base);
    let mut prev: BTreeMap<Cell, (Cell, VertexId)> = BTreeMap::new();
    let mut seen: BTreeSet<Cell> = [from].into_iter().collect();
    let mut queue = VecDeque::from([from]);
    while let Some(c) = queue.pop_front() {
        if c == to {
            break;
        }
        for &u in &cell_vertices(base, c) {
            for &d in &all {
                if !seen.contains(&d) && cell_vertices(base, d).contains(&u) {
                    seen.insert(d);
                    prev.insert(d, (c, u));
                    queue.push_back(d);
                }
            }
        }
    }
    if !seen.contains(&to) {
        return precondition("target cell is not in the graph");
    }
    let mut path = Vec::new();
    let mut c = to;
    while c != from {
        let (p, u) = prev[&c];
        path.push((p, c, u));
        c = p;
    }
    path.reverse();
    let mut steps = Vec::with_capacity(path.len());
    for (x, z, u) in path {
        let (left, le) = piece_at(base, x, u, label)?;
        let (right, re) = piece_at(base, z, u, label)?;
        steps.push(strong_link(&left, le, &right, re, leg_mode)?);
    }
    Ok(steps)
}

fn label_set(g: &Graph) -> BTreeSet<u32> {
    g.legs().filter_map(|l| g.leg_label(l)).collect()
}

/// Certified chain of strong links between two 3-regular graphs with the
/// same genus and number of legs.
///
/// The leg with the largest label is smoothed away on both sides and the
/// smaller graphs are linked recursively. Each step `A → B` of that chain
/// is lifted by attaching the leg in the interior of a cell of `A` other
/// than the contracted edge and the matching cell of `B`; when the leg sits
/// on the contracted edge it is first moved to a neighbouring cell. At the
/// end the leg is walked to the cell corresponding to its place in the
/// target.
///
/// In [`LegMode::Labeled`] both graphs must carry the same labels and
/// isomorphisms preserve them; in [`LegMode::Unlabeled`] legs are
/// interchangeable.
pub fn link_with_legs(g1: &Graph, g2: &Graph, leg_mode: LegMode) -> Result<LinkageCertificate> {
    if !is_p_regular(g1, 3) || !is_p_regular(g2, 3) {
        return precondition("graphs must be 3-regular, legs included");
    }
    if g1.betti_number() != g2.betti_number() || g1.leg_count() != g2.leg_count() {
        return precondition("genus or number of legs differ");
    }
    if leg_mode == LegMode::Labeled && label_set(g1) != label_set(g2) {
        return precondition("leg labels differ");
    }
    let n = g1.leg_count();
    if n == 0 {
        return link(g1, g2, LinkMode::Plain);
    }
    if g1 == g2 || g1.edge_count() <= 1 {
        if graphs_isomorphic(g1, g2, leg_mode).is_none() {
            return internal("graphs with at most one edge are not isomorphic");
        }
        return Ok(LinkageCertificate::new(
            LinkMode::Plain,
            3,
            leg_mode,
            g1.clone(),
        ));
    }
    let n1 = *label_set(g1).iter().next_back().expect("has legs");
    let n2 = *label_set(g2).iter().next_back().expect("has legs");
    let (g1s, c1) = g1.smooth_leg(n1)?;
    let (g2s, c2) = g2.smooth_leg(n2)?;
    let inner = link_with_legs(&g1s, &g2s, leg_mode)?;

    let mut cert = LinkageCertificate::new(LinkMode::Plain, 3, leg_mode, g1.clone());
    let (start, _) = g1s.subdivide(c1, Some(n1))?;
    if let Some(j) = junction_step(g1, &start, leg_mode)? {
        cert.push(j)?;
    }
    let mut x = c1;
    for s in inner.iter_steps() {
        if x == Cell::Edge(s.left_edge) {
            let (u, _) = s.left.edge_endpoints(s.left_edge);
            let f = cells(&s.left)
                .into_iter()
                .find(|&c| c != x && cell_vertices(&s.left, c).contains(&u))
                .expect("a 3-valent vertex meets another cell");
            for st in move_leg(&s.left, x, f, n1, leg_mode)? {
                cert.push(st)?;
            }
            x = f;
        }
        let y = match x {
            Cell::Edge(f) => Cell::Edge(
                *s.witness
                    .edge_map
                    .iter()
                    .find(|(_, &v)| v == f)
                    .expect("edge map is onto")
                    .0,
            ),
            Cell::Leg(l) => Cell::Leg(
                *s.witness
                    .leg_map
                    .iter()
                    .find(|(_, &v)| v == l)
                    .expect("leg map is onto")
                    .0,
            ),
        };
        let (left, ls) = s.left.subdivide(x, Some(n1))?;
        let (right, rs) = s.right.subdivide(y, Some(n1))?;
        let le = ls.edge_map[s.left_edge.0].expect("contracted edge is kept");
        let re = rs.edge_map[s.right_edge.0].expect("contracted edge is kept");
        cert.push(strong_link(&left, le, &right, re, leg_mode)?)?;
        x = y;
    }
    let last = inner.end();
    let Some(iso) = graphs_isomorphic(last, &g2s, leg_mode) else {
        return internal("inner chain does not reach the smoothed target");
    };
    let target = match c2 {
        Cell::Edge(f) => Cell::Edge(crate::graph::EdgeId(
            iso.edge_map
                .iter()
                .position(|&t| t == f)
                .expect("bijection"),
        )),
        Cell::Leg(l) => Cell::Leg(
            *iso.leg_map
                .iter()
                .find(|(_, &t)| t == l)
                .expect("bijection")
                .0,
        ),
    };
    for st in move_leg(last, x, target, n1, leg_mode)? {
        cert.push(st)?;
    }
    let end = cert.end().clone();
    if let Some(j) = junction_step(&end, g2, leg_mode)? {
        cert.push(j)?;
    }
    Ok(cert)
}
