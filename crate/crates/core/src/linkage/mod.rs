//! Strong links, twists, the ε-descent to the `p`-polygon, and linkage
//! certificates.
//!
//! Two graphs are strongly linked when contracting one non-loop edge on each
//! side gives isomorphic graphs, with the isomorphism matching the two
//! vertices the contracted edges collapse to. A [`StrongLinkStep`] records
//! such a pair together with the isomorphism.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::canon::{isomorphism_marked, LegMode};
use crate::error::{precondition, Error, Result};
use crate::graph::{EdgeId, Graph, HalfEdgeId, VertexId, WeightedGraph};

mod certificate;
mod legs;
mod link;
mod reduce;
mod twist;

pub use certificate::{
    verify_certificate, LinkageCertificate, StepRecord, VerifyReport, Violation,
};
pub use legs::{link_with_legs, move_leg};
pub use link::{junction_step, link};
pub use reduce::{reduce_to_polygon, select_pair, Iteration, PairSelection, Reduction};
pub use twist::{consecutive_swap, factor_twist, twist, twist_3ec, ThreeEcCase, ThreeEcTwist};

/// Whether every graph of a chain must stay 3-edge-connected.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LinkMode {
    #[default]
    #[serde(rename = "plain")]
    Plain,
    #[serde(rename = "3ec")]
    ThreeEc,
}

impl std::str::FromStr for LinkMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(LinkMode::Plain),
            "3ec" => Ok(LinkMode::ThreeEc),
            other => precondition(format!("unknown mode {other:?}")),
        }
    }
}

impl std::fmt::Display for LinkMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LinkMode::Plain => "plain",
            LinkMode::ThreeEc => "3ec",
        })
    }
}

/// Isomorphism `right/right_edge → left/left_edge`.
///
/// Edges and legs are named by their ids in `right` and `left` (not in the
/// contractions), so the witness pins down which edge of one side
/// corresponds to which edge of the other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkWitness {
    /// Indexed by vertices of `right/right_edge`, valued in the middle graph.
    pub vertex_map: Vec<VertexId>,
    /// `E(right) ∖ {right_edge} → E(left) ∖ {left_edge}`.
    pub edge_map: BTreeMap<EdgeId, EdgeId>,
    /// `L(right) → L(left)`.
    pub leg_map: BTreeMap<HalfEdgeId, HalfEdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongLinkStep {
    pub left: Graph,
    pub left_edge: EdgeId,
    pub right: Graph,
    pub right_edge: EdgeId,
    /// Exactly `left.contract_edge(left_edge)`.
    pub middle: Graph,
    pub witness: LinkWitness,
}

/// Why two edge contractions fail to give a strong link.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkFailure {
    NotIsomorphic,
    /// The contractions are isomorphic, but never with the images of the
    /// contracted edges corresponding.
    ImageMismatch,
}

/// Contracts `left_edge` and `right_edge` and looks for an isomorphism
/// matching the two image vertices.
pub fn strong_link_check(
    left: &Graph,
    left_edge: EdgeId,
    right: &Graph,
    right_edge: EdgeId,
    leg_mode: LegMode,
) -> Result<std::result::Result<StrongLinkStep, LinkFailure>> {
    for (g, e) in [(left, left_edge), (right, right_edge)] {
        if e.0 >= g.edge_count() {
            return precondition(format!("unknown edge {e}"));
        }
        if g.is_loop(e) {
            return precondition("strong links contract non-loop edges");
        }
    }
    let (middle, lmap) = left.contract_edge(left_edge);
    let (rc, rmap) = right.contract_edge(right_edge);
    let lm = lmap.image_vertex(left, left_edge);
    let rm = rmap.image_vertex(right, right_edge);
    let wm = WeightedGraph::pure(middle.clone());
    let wr = WeightedGraph::pure(rc);
    let Some(iso) = isomorphism_marked(&wr, Some(rm), &wm, Some(lm), leg_mode) else {
        let failure = if isomorphism_marked(&wr, None, &wm, None, leg_mode).is_some() {
            LinkFailure::ImageMismatch
        } else {
            LinkFailure::NotIsomorphic
        };
        return Ok(Err(failure));
    };
    let left_pre = lmap.edge_preimages();
    let mut edge_map = BTreeMap::new();
    for f in right.edges().filter(|&f| f != right_edge) {
        let img = rmap.edge_map[f.0].expect("kept");
        edge_map.insert(f, left_pre[&iso.edge_map[img.0]]);
    }
    let left_leg_pre: BTreeMap<HalfEdgeId, HalfEdgeId> = lmap
        .leg_map(left)
        .into_iter()
        .map(|(src, tgt)| (tgt, src))
        .collect();
    let mut leg_map = BTreeMap::new();
    for (src, tgt) in rmap.leg_map(right) {
        leg_map.insert(src, left_leg_pre[&iso.leg_map[&tgt]]);
    }
    Ok(Ok(StrongLinkStep {
        left: left.clone(),
        left_edge,
        right: right.clone(),
        right_edge,
        middle,
        witness: LinkWitness {
            vertex_map: iso.vertex_map,
            edge_map,
            leg_map,
        },
    }))
}

/// [`strong_link_check`] for constructions that guarantee success.
pub(crate) fn strong_link(
    left: &Graph,
    left_edge: EdgeId,
    right: &Graph,
    right_edge: EdgeId,
    leg_mode: LegMode,
) -> Result<StrongLinkStep> {
    match strong_link_check(left, left_edge, right, right_edge, leg_mode)? {
        Ok(step) => Ok(step),
        Err(f) => Err(Error::Internal(format!(
            "expected a strong link, got {f:?}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn self_link() {
        let k4 = families::k4();
        let s = strong_link_check(&k4, EdgeId(0), &k4, EdgeId(0), LegMode::Labeled)
            .unwrap()
            .unwrap();
        assert_eq!(s.middle.vertex_count(), 3);
    }

    #[test]
    fn theta_dumbbell_link() {
        let t = families::theta();
        let d = families::dumbbell();
        let bridge = d.edges().find(|&e| !d.is_loop(e)).unwrap();
        assert!(
            strong_link_check(&t, EdgeId(0), &d, bridge, LegMode::Labeled)
                .unwrap()
                .is_ok()
        );
        assert!(strong_link_check(&t, EdgeId(0), &d, EdgeId(0), LegMode::Labeled).is_err());
    }

    #[test]
    fn non_isomorphic_contractions() {
        let k4 = families::k4();
        let k33 = families::k33();
        let prism = families::prism();
        assert!(
            strong_link_check(&k4, EdgeId(0), &k4, EdgeId(1), LegMode::Labeled)
                .unwrap()
                .is_ok()
        );
        // K_{3,3}/e has no triangle; every prism edge lies on a triangle or
        // a square, and its contractions contain triangles or double edges.
        let r = strong_link_check(&k33, EdgeId(0), &prism, EdgeId(0), LegMode::Labeled).unwrap();
        assert_eq!(r.err(), Some(LinkFailure::NotIsomorphic));
    }
}
