//! Linkage certificates: a chain `Γ₀, Γ₀/e₀, Γ₁, Γ₁/e₁, …, Γ_m` with one
//! witness per step, their JSON form, and an independent verifier.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{LinkMode, LinkWitness, StrongLinkStep};
use crate::canon::LegMode;
use crate::connectivity::{is_p_regular, is_three_edge_connected};
use crate::error::{precondition, Error, Result};
use crate::graph::{EdgeId, Graph, HalfEdgeId, VertexId};
use crate::io::GraphDoc;

/// One step of a certificate; the graphs live in [`LinkageCertificate::graphs`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub left_edge: EdgeId,
    pub right_edge: EdgeId,
    pub witness: LinkWitness,
}

/// `graphs[2i]` is `Γᵢ`, `graphs[2i + 1]` is `Γᵢ / eᵢ`, and step `i` links
/// `graphs[2i]` to `graphs[2i + 2]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkageCertificate {
    pub mode: LinkMode,
    pub p: usize,
    pub leg_mode: LegMode,
    pub graphs: Vec<Graph>,
    pub steps: Vec<StepRecord>,
}

impl LinkageCertificate {
    /// The zero-step certificate at `start`.
    pub fn new(mode: LinkMode, p: usize, leg_mode: LegMode, start: Graph) -> LinkageCertificate {
        LinkageCertificate {
            mode,
            p,
            leg_mode,
            graphs: vec![start],
            steps: Vec::new(),
        }
    }

    pub fn from_steps(
        mode: LinkMode,
        p: usize,
        leg_mode: LegMode,
        start: Graph,
        steps: impl IntoIterator<Item = StrongLinkStep>,
    ) -> Result<LinkageCertificate> {
        let mut cert = LinkageCertificate::new(mode, p, leg_mode, start);
        for s in steps {
            cert.push(s)?;
        }
        Ok(cert)
    }

    /// Appends a step whose left graph is the current end.
    pub fn push(&mut self, step: StrongLinkStep) -> Result<()> {
        if &step.left != self.end() {
            return precondition("step does not start where the chain ends");
        }
        self.graphs.push(step.middle);
        self.graphs.push(step.right);
        self.steps.push(StepRecord {
            left_edge: step.left_edge,
            right_edge: step.right_edge,
            witness: step.witness,
        });
        Ok(())
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn append(&mut self, other: LinkageCertificate) -> Result<()> {
        if other.start() != self.end() {
            return precondition("certificates do not meet");
        }
        self.graphs.extend(other.graphs.into_iter().skip(1));
        self.steps.extend(other.steps);
        Ok(())
    }

    pub fn start(&self) -> &Graph {
        &self.graphs[0]
    }

    pub fn end(&self) -> &Graph {
        self.graphs.last().expect("non-empty chain")
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `Γ₀, …, Γ_m` without the middle graphs.
    pub fn chain(&self) -> impl Iterator<Item = &Graph> + '_ {
        self.graphs.iter().step_by(2)
    }

    pub fn step(&self, i: usize) -> StrongLinkStep {
        let r = &self.steps[i];
        StrongLinkStep {
            left: self.graphs[2 * i].clone(),
            left_edge: r.left_edge,
            right: self.graphs[2 * i + 2].clone(),
            right_edge: r.right_edge,
            middle: self.graphs[2 * i + 1].clone(),
            witness: r.witness.clone(),
        }
    }

    pub fn iter_steps(&self) -> impl Iterator<Item = StrongLinkStep> + '_ {
        (0..self.len()).map(|i| self.step(i))
    }

    /// The same chain walked backwards.
    pub fn reversed(&self) -> LinkageCertificate {
        let mut out = LinkageCertificate::new(self.mode, self.p, self.leg_mode, self.end().clone());
        for i in (0..self.len()).rev() {
            out.push(reverse_step(&self.step(i)))
                .expect("reversed steps chain");
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<LinkageCertificate> {
        let doc: CertificateDoc = serde_json::from_str(s)?;
        LinkageCertificate::from_doc(&doc)
    }

    fn to_doc(&self) -> CertificateDoc {
        // Ids outside the graph get a key that fails to parse back.
        let edge_key = |g: &Graph, e: EdgeId| {
            if e.0 < g.edge_count() {
                g.edge_key(e)
            } else {
                format!("unknown:{}", e.0)
            }
        };
        let steps = self
            .steps
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let (left, right) = (&self.graphs[2 * i], &self.graphs[2 * i + 2]);
                StepDoc {
                    left_index: 2 * i,
                    left_edge: edge_key(left, r.left_edge),
                    right_edge: edge_key(right, r.right_edge),
                    witness: WitnessDoc {
                        vertex_map: r.witness.vertex_map.iter().map(|v| v.0).collect(),
                        edge_map: r
                            .witness
                            .edge_map
                            .iter()
                            .map(|(&f, &g)| (edge_key(right, f), edge_key(left, g)))
                            .collect(),
                        leg_map: r
                            .witness
                            .leg_map
                            .iter()
                            .map(|(f, g)| (f.0.to_string(), g.0.to_string()))
                            .collect(),
                    },
                }
            })
            .collect();
        CertificateDoc {
            mode: self.mode,
            p: self.p,
            legs: self.leg_mode,
            graphs: self.graphs.iter().map(GraphDoc::from_graph).collect(),
            steps,
        }
    }

    fn from_doc(doc: &CertificateDoc) -> Result<LinkageCertificate> {
        let graphs = doc
            .graphs
            .iter()
            .map(GraphDoc::to_graph)
            .collect::<Result<Vec<_>>>()?;
        if graphs.len() != 2 * doc.steps.len() + 1 {
            return Err(Error::Malformed(format!(
                "{} steps need {} graphs, found {}",
                doc.steps.len(),
                2 * doc.steps.len() + 1,
                graphs.len()
            )));
        }
        let mut steps = Vec::with_capacity(doc.steps.len());
        for (i, s) in doc.steps.iter().enumerate() {
            if s.left_index != 2 * i {
                return Err(Error::Malformed(format!(
                    "step {i} has left_index {}, expected {}",
                    s.left_index,
                    2 * i
                )));
            }
            let (left, right) = (&graphs[2 * i], &graphs[2 * i + 2]);
            let edge = |g: &Graph, key: &str| {
                g.edge_from_key(key)
                    .ok_or_else(|| Error::Malformed(format!("step {i}: unknown edge key {key:?}")))
            };
            let leg = |g: &Graph, key: &str| -> Result<HalfEdgeId> {
                key.parse::<usize>()
                    .ok()
                    .map(HalfEdgeId)
                    .filter(|h| h.0 < g.half_edge_count() && g.is_leg(*h))
                    .ok_or_else(|| Error::Malformed(format!("step {i}: unknown leg key {key:?}")))
            };
            let mut edge_map = BTreeMap::new();
            for (f, g) in &s.witness.edge_map {
                edge_map.insert(edge(right, f)?, edge(left, g)?);
            }
            let mut leg_map = BTreeMap::new();
            for (f, g) in &s.witness.leg_map {
                leg_map.insert(leg(right, f)?, leg(left, g)?);
            }
            steps.push(StepRecord {
                left_edge: edge(left, &s.left_edge)?,
                right_edge: edge(right, &s.right_edge)?,
                witness: LinkWitness {
                    vertex_map: s.witness.vertex_map.iter().map(|&v| VertexId(v)).collect(),
                    edge_map,
                    leg_map,
                },
            });
        }
        Ok(LinkageCertificate {
            mode: doc.mode,
            p: doc.p,
            leg_mode: doc.legs,
            graphs,
            steps,
        })
    }
}

/// The step `right → left` with the inverse witness.
pub(crate) fn reverse_step(s: &StrongLinkStep) -> StrongLinkStep {
    let (middle, _) = s.right.contract_edge(s.right_edge);
    let mut vertex_map = vec![VertexId(0); s.witness.vertex_map.len()];
    for (r, &m) in s.witness.vertex_map.iter().enumerate() {
        vertex_map[m.0] = VertexId(r);
    }
    StrongLinkStep {
        left: s.right.clone(),
        left_edge: s.right_edge,
        right: s.left.clone(),
        right_edge: s.left_edge,
        middle,
        witness: LinkWitness {
            vertex_map,
            edge_map: s.witness.edge_map.iter().map(|(&a, &b)| (b, a)).collect(),
            leg_map: s.witness.leg_map.iter().map(|(&a, &b)| (b, a)).collect(),
        },
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateDoc {
    mode: LinkMode,
    p: usize,
    #[serde(default)]
    legs: LegMode,
    graphs: Vec<GraphDoc>,
    steps: Vec<StepDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StepDoc {
    left_index: usize,
    left_edge: String,
    right_edge: String,
    witness: WitnessDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WitnessDoc {
    vertex_map: Vec<usize>,
    edge_map: BTreeMap<String, String>,
    #[serde(default)]
    leg_map: BTreeMap<String, String>,
}

/// Outcome of [`verify_certificate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub valid: bool,
    pub steps: usize,
    pub violation: Option<Violation>,
}

/// The first failed check: graph checks for `Γᵢ` and the middle graph of
/// step `i` come before the checks of step `i` itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub step: Option<usize>,
    pub graph: Option<usize>,
    pub reason: String,
}

/// Rechecks every claim of `cert` from scratch: each middle graph is the
/// stated contraction, each witness is an isomorphism matching the
/// contracted edges, every `Γᵢ` is `p`-regular, and in [`LinkMode::ThreeEc`]
/// every graph of the chain is 3-edge-connected.
pub fn verify_certificate(cert: &LinkageCertificate, p: usize, mode: LinkMode) -> VerifyReport {
    let steps = cert.steps.len();
    let fail = |step, graph, reason: String| VerifyReport {
        valid: false,
        steps,
        violation: Some(Violation {
            step,
            graph,
            reason,
        }),
    };
    if cert.p != p {
        return fail(
            None,
            None,
            format!("certificate is for p = {}, not {p}", cert.p),
        );
    }
    if cert.graphs.len() != 2 * steps + 1 {
        return fail(None, None, "graph count does not match step count".into());
    }
    let first = (0..=steps)
        .into_par_iter()
        .filter_map(|i| check_index(cert, i, p, mode).err().map(|v| (i, v)))
        .min_by_key(|(i, _)| *i);
    match first {
        Some((_, v)) => VerifyReport {
            valid: false,
            steps,
            violation: Some(v),
        },
        None => VerifyReport {
            valid: true,
            steps,
            violation: None,
        },
    }
}

fn check_index(
    cert: &LinkageCertificate,
    i: usize,
    p: usize,
    mode: LinkMode,
) -> std::result::Result<(), Violation> {
    let at_graph = |k: usize, reason: String| Violation {
        step: None,
        graph: Some(k),
        reason,
    };
    let g = &cert.graphs[2 * i];
    if !is_p_regular(g, p) {
        return Err(at_graph(2 * i, format!("graph is not {p}-regular")));
    }
    if mode == LinkMode::ThreeEc && !is_three_edge_connected(g) {
        return Err(at_graph(2 * i, "graph is not 3-edge-connected".into()));
    }
    if i == cert.steps.len() {
        return Ok(());
    }
    let middle = &cert.graphs[2 * i + 1];
    if mode == LinkMode::ThreeEc && !is_three_edge_connected(middle) {
        return Err(at_graph(2 * i + 1, "graph is not 3-edge-connected".into()));
    }
    check_step(
        g,
        middle,
        &cert.graphs[2 * i + 2],
        &cert.steps[i],
        cert.leg_mode,
    )
    .map_err(|reason| Violation {
        step: Some(i),
        graph: None,
        reason,
    })
}

fn check_step(
    left: &Graph,
    middle: &Graph,
    right: &Graph,
    r: &StepRecord,
    leg_mode: LegMode,
) -> std::result::Result<(), String> {
    let (le, re) = (r.left_edge, r.right_edge);
    if left.vertex_count() != right.vertex_count() || left.edge_count() != right.edge_count() {
        return Err("left and right graphs differ in size".into());
    }
    if le.0 >= left.edge_count() || re.0 >= right.edge_count() {
        return Err("contracted edge out of range".into());
    }
    if left.is_loop(le) || right.is_loop(re) {
        return Err("contracted edge is a loop".into());
    }
    let (lc, lmap) = left.contract_edge(le);
    if &lc != middle {
        return Err("middle graph is not the contraction of the left edge".into());
    }
    let (rc, rmap) = right.contract_edge(re);
    let w = &r.witness;

    let n = rc.vertex_count();
    if w.vertex_map.len() != n || middle.vertex_count() != n {
        return Err("vertex map has the wrong size".into());
    }
    let mut hit = vec![false; n];
    for &t in &w.vertex_map {
        if t.0 >= n || std::mem::replace(&mut hit[t.0], true) {
            return Err("vertex map is not a bijection".into());
        }
    }
    if w.vertex_map[rmap.image_vertex(right, re).0] != lmap.image_vertex(left, le) {
        return Err("images of the contracted edges do not correspond".into());
    }

    let right_domain: BTreeSet<EdgeId> = right.edges().filter(|&f| f != re).collect();
    let keys: BTreeSet<EdgeId> = w.edge_map.keys().copied().collect();
    if keys != right_domain {
        return Err("edge map domain is not E(right) minus the contracted edge".into());
    }
    let image: BTreeSet<EdgeId> = w.edge_map.values().copied().collect();
    let left_domain: BTreeSet<EdgeId> = left.edges().filter(|&f| f != le).collect();
    if image != left_domain {
        return Err("edge map is not a bijection onto E(left) minus the contracted edge".into());
    }
    for (&f, &g) in &w.edge_map {
        let fr = rmap.edge_map[f.0].expect("kept");
        let gl = lmap.edge_map[g.0].expect("kept");
        let (a, b) = rc.edge_endpoints(fr);
        let (a, b) = (w.vertex_map[a.0], w.vertex_map[b.0]);
        let (x, y) = middle.edge_endpoints(gl);
        if !((a == x && b == y) || (a == y && b == x)) {
            return Err(format!("edge map breaks incidence at right edge {f}"));
        }
    }

    let right_legs: BTreeSet<HalfEdgeId> = right.legs().collect();
    let left_legs: BTreeSet<HalfEdgeId> = left.legs().collect();
    if w.leg_map.keys().copied().collect::<BTreeSet<_>>() != right_legs
        || w.leg_map.values().copied().collect::<BTreeSet<_>>() != left_legs
    {
        return Err("leg map is not a bijection of legs".into());
    }
    for (&f, &g) in &w.leg_map {
        let fr = rmap.half_edge_map[f.0].expect("legs survive");
        let gl = lmap.half_edge_map[g.0].expect("legs survive");
        if w.vertex_map[rc.endpoint(fr).0] != middle.endpoint(gl) {
            return Err(format!("leg map breaks incidence at right leg {f}"));
        }
        if leg_mode == LegMode::Labeled && right.leg_label(f) != left.leg_label(g) {
            return Err(format!("leg map changes the label of right leg {f}"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::linkage::strong_link;

    fn sample() -> LinkageCertificate {
        let t = families::theta();
        let d = families::dumbbell();
        let bridge = d.edges().find(|&e| !d.is_loop(e)).unwrap();
        let s1 = strong_link(&t, EdgeId(0), &d, bridge, LegMode::Labeled).unwrap();
        let s2 = strong_link(&d, bridge, &t, EdgeId(1), LegMode::Labeled).unwrap();
        LinkageCertificate::from_steps(LinkMode::Plain, 3, LegMode::Labeled, t, [s1, s2]).unwrap()
    }

    #[test]
    fn verifies_and_round_trips() {
        let c = sample();
        assert!(verify_certificate(&c, 3, LinkMode::Plain).valid);
        assert!(!verify_certificate(&c, 4, LinkMode::Plain).valid);
        let r = verify_certificate(&c, 3, LinkMode::ThreeEc);
        assert_eq!(r.violation.unwrap().graph, Some(2));
        let back = LinkageCertificate::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_json(), c.to_json());
    }

    #[test]
    fn reversal_is_valid() {
        let c = sample();
        let r = c.reversed();
        assert_eq!(r.start(), c.end());
        assert_eq!(r.end(), c.start());
        assert!(verify_certificate(&r, 3, LinkMode::Plain).valid);
        assert_eq!(r.reversed(), c);
    }

    #[test]
    fn corrupted_witness_is_caught() {
        let mut c = sample();
        let first = *c.steps[0].witness.edge_map.keys().next().unwrap();
        c.steps[0].witness.edge_map.remove(&first);
        let r = verify_certificate(&c, 3, LinkMode::Plain);
        assert_eq!(r.violation.unwrap().step, Some(0));
        let mut c = sample();
        c.graphs[1] = families::theta();
        assert!(!verify_certificate(&c, 3, LinkMode::Plain).valid);
    }
}
