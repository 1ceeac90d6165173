use super::{strong_link, LinkMode, LinkageCertificate, StrongLinkStep};
use crate::canon::{graphs_isomorphic, LegMode};
use crate::connectivity::{is_three_edge_connected, regularity};
use crate::error::{internal, precondition, Result};
use crate::graph::Graph;
use crate::hamiltonize::hamiltonize;

use super::reduce::reduce_to_polygon;

/// A strong link between isomorphic graphs `a ≠ b`: the least non-loop
/// edge of `a` and its image under an isomorphism. `None` when `a == b`.
pub fn junction_step(a: &Graph, b: &Graph, leg_mode: LegMode) -> Result<Option<StrongLinkStep>> {
    if a == b {
        return Ok(None);
    }
    let Some(iso) = graphs_isomorphic(a, b, leg_mode) else {
        return precondition("junction graphs are not isomorphic");
    };
    let Some(e) = a.edges().find(|&e| !a.is_loop(e)) else {
        return precondition("junction needs a non-loop edge");
    };
    strong_link(a, e, b, iso.edge_map[e.0], leg_mode).map(Some)
}

/// Certified chain of strong links between two `p`-regular graphs without
/// legs of equal first Betti number.
///
/// Each side is hamiltonized and then reduced to the polygon; the two
/// polygons are joined by a junction step when their half-edge data
/// differ, and the second half is reversed. In [`LinkMode::ThreeEc`] both
/// inputs must be 3-edge-connected and so is every graph of the chain.
///
/// Single-vertex inputs are unique up to isomorphism and get a zero-step
/// certificate.
pub fn link(g1: &Graph, g2: &Graph, mode: LinkMode) -> Result<LinkageCertificate> {
    if g1.leg_count() > 0 || g2.leg_count() > 0 {
        return precondition("graphs with legs are linked by link_with_legs");
    }
    let (Some(p), Some(p2)) = (regularity(g1), regularity(g2)) else {
        return precondition("graphs must be regular");
    };
    if p != p2 {
        return precondition(format!("valencies differ: {p} and {p2}"));
    }
    if g1.betti_number() != g2.betti_number() {
        return precondition("first Betti numbers differ");
    }
    if mode == LinkMode::ThreeEc && !(is_three_edge_connected(g1) && is_three_edge_connected(g2)) {
        return precondition("graphs must be 3-edge-connected");
    }
    if g1 == g2 || g1.vertex_count() == 1 {
        return Ok(LinkageCertificate::new(
            mode,
            p,
            LegMode::Labeled,
            g1.clone(),
        ));
    }
    let side = |g: &Graph| -> Result<LinkageCertificate> {
        let (h, steps) = hamiltonize(g, mode)?;
        let mut cert = LinkageCertificate::from_steps(mode, p, LegMode::Labeled, g.clone(), steps)?;
        let red = reduce_to_polygon(&h, mode)?;
        cert.append(red.certificate)?;
        Ok(cert)
    };
    let mut a = side(g1)?;
    let b = side(g2)?;
    if let Some(j) = junction_step(a.end(), b.end(), LegMode::Labeled)? {
        a.push(j)?;
    }
    a.append(b.reversed())?;
    if a.end() != g2 {
        return internal("chain does not end at the target");
    }
    Ok(a)
}
