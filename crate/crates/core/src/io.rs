//! JSON and DOT formats for graphs and tropical curves.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, HalfEdgeId, VertexId, WeightedGraph};
use crate::tropical::{Length, TropicalCurve};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexDoc {
    pub id: usize,
    pub weight: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfEdgeDoc {
    pub id: usize,
    pub vertex: usize,
    pub partner: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LegDoc {
    pub half_edge: usize,
    pub label: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LengthDoc {
    Finite(f64),
    Text(String),
}

/// The on-disk graph document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: Vec<VertexDoc>,
    pub half_edges: Vec<HalfEdgeDoc>,
    #[serde(default)]
    pub legs: Vec<LegDoc>,
    #[serde(default)]
    pub lengths: BTreeMap<String, LengthDoc>,
}

impl GraphDoc {
    pub fn from_weighted(wg: &WeightedGraph) -> GraphDoc {
        let g = wg.graph();
        GraphDoc {
            vertices: g
                .vertices()
                .map(|v| VertexDoc {
                    id: v.0,
                    weight: wg.weight(v),
                })
                .collect(),
            half_edges: g
                .half_edges()
                .map(|h| HalfEdgeDoc {
                    id: h.0,
                    vertex: g.endpoint(h).0,
                    partner: g.partner(h).0,
                })
                .collect(),
            legs: g
                .legs()
                .map(|h| LegDoc {
                    half_edge: h.0,
                    label: g.leg_label(h).expect("labelled"),
                })
                .collect(),
            lengths: BTreeMap::new(),
        }
    }

    pub fn from_graph(g: &Graph) -> GraphDoc {
        GraphDoc::from_weighted(&WeightedGraph::pure(g.clone()))
    }

    pub fn from_tropical(tc: &TropicalCurve) -> GraphDoc {
        let mut doc = GraphDoc::from_weighted(tc.wgraph());
        let g = tc.wgraph().graph();
        for (&cell, &len) in tc.lengths() {
            let v = match len {
                Length::Finite(x) => LengthDoc::Finite(x),
                Length::Infinite => LengthDoc::Text("inf".into()),
            };
            doc.lengths.insert(g.cell_key(cell), v);
        }
        doc
    }

    /// Rebuilds the weighted graph; `lengths` is ignored.
    pub fn to_weighted(&self) -> Result<WeightedGraph> {
        let nv = self.vertices.len();
        let mut weights = vec![None; nv];
        for v in &self.vertices {
            if v.id >= nv || weights[v.id].replace(v.weight).is_some() {
                return Err(Error::Malformed(format!(
                    "vertex ids must be exactly 0..{nv}; offending id {}",
                    v.id
                )));
            }
        }
        let nh = self.half_edges.len();
        let mut endpoint = vec![None; nh];
        let mut partner = vec![HalfEdgeId(0); nh];
        for h in &self.half_edges {
            if h.id >= nh || endpoint[h.id].is_some() {
                return Err(Error::Malformed(format!(
                    "half-edge ids must be exactly 0..{nh}; offending id {}",
                    h.id
                )));
            }
            if h.partner >= nh {
                return Err(Error::Malformed(format!(
                    "half-edge {} has unknown partner {}",
                    h.id, h.partner
                )));
            }
            endpoint[h.id] = Some(VertexId(h.vertex));
            partner[h.id] = HalfEdgeId(h.partner);
        }
        let mut leg_label = vec![None; nh];
        for l in &self.legs {
            if l.half_edge >= nh || leg_label[l.half_edge].replace(l.label).is_some() {
                return Err(Error::Malformed(format!(
                    "bad or repeated leg entry for half-edge {}",
                    l.half_edge
                )));
            }
        }
        let g = Graph::from_parts(
            nv,
            endpoint.into_iter().map(|e| e.expect("filled")).collect(),
            partner,
            leg_label,
        )?;
        WeightedGraph::new(g, weights.into_iter().map(|w| w.expect("filled")).collect())
    }

    pub fn to_graph(&self) -> Result<Graph> {
        Ok(self.to_weighted()?.into_graph())
    }

    /// Rebuilds a tropical curve; every edge and leg needs a length.
    pub fn to_tropical(&self) -> Result<TropicalCurve> {
        let wg = self.to_weighted()?;
        let mut lengths = BTreeMap::new();
        for (key, v) in &self.lengths {
            let cell = wg
                .graph()
                .cell_from_key(key)
                .ok_or_else(|| Error::Malformed(format!("unknown length key {key:?}")))?;
            let len = match v {
                LengthDoc::Finite(x) => Length::Finite(*x),
                LengthDoc::Text(s) if s == "inf" => Length::Infinite,
                LengthDoc::Text(s) => {
                    return Err(Error::Malformed(format!("bad length {s:?}")));
                }
            };
            lengths.insert(cell, len);
        }
        TropicalCurve::new(wg, lengths)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<GraphDoc> {
        Ok(serde_json::from_str(s)?)
    }
}

pub fn read_weighted(path: impl AsRef<Path>) -> Result<WeightedGraph> {
    GraphDoc::from_json(&std::fs::read_to_string(path)?)?.to_weighted()
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Graph> {
    Ok(read_weighted(path)?.into_graph())
}

pub fn write_graph(path: impl AsRef<Path>, g: &Graph) -> Result<()> {
    std::fs::write(path, GraphDoc::from_graph(g).to_json())?;
    Ok(())
}

/// DOT rendering: parallel edges stay parallel, weights label vertices,
/// legs are arrowless stubs to invisible points.
pub fn to_dot(wg: &WeightedGraph, name: &str) -> String {
    let g = wg.graph();
    let mut out = String::new();
    let _ = writeln!(out, "graph \"{name}\" {{");
    for v in g.vertices() {
        let _ = writeln!(out, "  v{} [label=\"{}\"];", v.0, wg.weight(v));
    }
    for e in g.edges() {
        let (a, b) = g.edge_endpoints(e);
        let _ = writeln!(out, "  v{} -- v{} [id=\"e{}\"];", a.0, b.0, g.edge_key(e));
    }
    for l in g.legs() {
        let v = g.endpoint(l);
        let label = g.leg_label(l).unwrap_or(0);
        let _ = writeln!(out, "  l{} [shape=point, style=invis];", l.0);
        let _ = writeln!(
            out,
            "  v{} -- l{} [dir=none, label=\"{}\"];",
            v.0, l.0, label
        );
    }
    out.push_str("}\n");
    out
}
