//! Tropical curves: weighted graphs with edge and leg lengths.

use std::collections::BTreeMap;

use crate::error::{precondition, Error, Result};
use crate::graph::{Cell, EdgeId, Graph, VertexId, WeightedGraph};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Length {
    Finite(f64),
    Infinite,
}

impl Length {
    pub fn is_infinite(self) -> bool {
        matches!(self, Length::Infinite)
    }

    fn add(self, other: Length) -> Length {
        match (self, other) {
            (Length::Finite(a), Length::Finite(b)) => Length::Finite(a + b),
            _ => Length::Infinite,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TropicalCurve {
    wgraph: WeightedGraph,
    lengths: BTreeMap<Cell, Length>,
}

impl TropicalCurve {
    /// Checks that every cell has a length, finite lengths are positive, and
    /// a length is infinite exactly on legs and on edges at 1-valent
    /// weight-0 vertices.
    pub fn new(wgraph: WeightedGraph, lengths: BTreeMap<Cell, Length>) -> Result<TropicalCurve> {
        let g = wgraph.graph();
        let cells = all_cells(g);
        if lengths.len() != cells.len() || cells.iter().any(|c| !lengths.contains_key(c)) {
            return Err(Error::Malformed(
                "lengths must cover every edge and leg exactly".into(),
            ));
        }
        for (&cell, &len) in &lengths {
            if let Length::Finite(x) = len {
                if !(x.is_finite() && x > 0.0) {
                    return Err(Error::Malformed(format!("non-positive length {x}")));
                }
            }
            let must_be_infinite = match cell {
                Cell::Leg(_) => true,
                Cell::Edge(e) => {
                    let (a, b) = g.edge_endpoints(e);
                    [a, b]
                        .into_iter()
                        .any(|v| g.valency(v) == 1 && wgraph.weight(v) == 0)
                }
            };
            if must_be_infinite != len.is_infinite() {
                return Err(Error::Malformed(format!(
                    "cell {} has {} length",
                    g.cell_key(cell),
                    if len.is_infinite() {
                        "an unexpected infinite"
                    } else {
                        "a finite"
                    }
                )));
            }
        }
        Ok(TropicalCurve { wgraph, lengths })
    }

    /// Unit length on every edge, infinite where required.
    pub fn unit(wgraph: WeightedGraph) -> TropicalCurve {
        let g = wgraph.graph();
        let lengths = all_cells(g)
            .into_iter()
            .map(|c| {
                let inf = match c {
                    Cell::Leg(_) => true,
                    Cell::Edge(e) => {
                        let (a, b) = g.edge_endpoints(e);
                        [a, b]
                            .into_iter()
                            .any(|v| g.valency(v) == 1 && wgraph.weight(v) == 0)
                    }
                };
                (
                    c,
                    if inf {
                        Length::Infinite
                    } else {
                        Length::Finite(1.0)
                    },
                )
            })
            .collect();
        TropicalCurve { wgraph, lengths }
    }

    pub fn wgraph(&self) -> &WeightedGraph {
        &self.wgraph
    }

    pub fn lengths(&self) -> &BTreeMap<Cell, Length> {
        &self.lengths
    }

    pub fn length(&self, cell: Cell) -> Length {
        self.lengths[&cell]
    }

    pub fn genus(&self) -> usize {
        self.wgraph.genus()
    }

    pub fn is_stable(&self) -> bool {
        self.wgraph.is_stable()
    }

    /// Subdivides edge `e` at fraction `t` of its length (a tropically
    /// equivalent curve with one more 2-valent weight-0 vertex).
    pub fn subdivide_edge(&self, e: EdgeId, t: f64) -> Result<TropicalCurve> {
        let Length::Finite(len) = self.length(Cell::Edge(e)) else {
            return precondition("only finite edges can be subdivided");
        };
        if !(0.0 < t && t < 1.0) {
            return precondition("subdivision point must be interior");
        }
        let (g2, sub) = self.wgraph.graph().subdivide(Cell::Edge(e), None)?;
        let mut weights = self.wgraph.weights().to_vec();
        weights.push(0);
        let mut lengths = BTreeMap::new();
        for (&cell, &l) in &self.lengths {
            match cell {
                Cell::Edge(f) if f == e => {}
                Cell::Edge(f) => {
                    lengths.insert(Cell::Edge(sub.edge_map[f.0].expect("kept")), l);
                }
                Cell::Leg(h) => {
                    lengths.insert(Cell::Leg(h), l);
                }
            }
        }
        lengths.insert(Cell::Edge(sub.pieces[0]), Length::Finite(len * t));
        lengths.insert(Cell::Edge(sub.pieces[1]), Length::Finite(len * (1.0 - t)));
        TropicalCurve::new(WeightedGraph::new(g2, weights)?, lengths)
    }
}

fn all_cells(g: &Graph) -> Vec<Cell> {
    g.edges()
        .map(Cell::Edge)
        .chain(g.legs().map(Cell::Leg))
        .collect()
}

#[derive(Clone, Copy)]
enum End {
    Vertex(usize),
    Free(u32),
}

#[derive(Clone, Copy)]
struct Piece {
    a: usize,
    b: End,
    len: Length,
}

/// The unique stable representative of the tropical equivalence class:
/// repeatedly drops 1-valent weight-0 vertices with their edge and smooths
/// 2-valent weight-0 vertices, adding lengths.
pub fn stabilize(tc: &TropicalCurve) -> Result<TropicalCurve> {
    let wg = tc.wgraph();
    let g = wg.graph();
    let n = g.leg_count();
    if 2 * wg.genus() + n <= 2 {
        return precondition(format!(
            "genus {} with {} legs has no stable model",
            wg.genus(),
            n
        ));
    }
    let mut alive = vec![true; g.vertex_count()];
    let weights = wg.weights().to_vec();
    let mut pieces: Vec<Option<Piece>> = g
        .edges()
        .map(|e| {
            let (a, b) = g.edge_endpoints(e);
            Some(Piece {
                a: a.0,
                b: End::Vertex(b.0),
                len: tc.length(Cell::Edge(e)),
            })
        })
        .chain(g.legs().map(|l| {
            Some(Piece {
                a: g.endpoint(l).0,
                b: End::Free(g.leg_label(l).expect("legs are labelled")),
                len: Length::Infinite,
            })
        }))
        .collect();

    loop {
        let mut incident: Vec<Vec<(usize, bool)>> = vec![Vec::new(); alive.len()];
        for (i, p) in pieces.iter().enumerate() {
            if let Some(p) = p {
                incident[p.a].push((i, true));
                if let End::Vertex(b) = p.b {
                    incident[b].push((i, false));
                }
            }
        }
        let candidate = (0..alive.len())
            .find(|&v| alive[v] && weights[v] == 0 && matches!(incident[v].len(), 1 | 2));
        let Some(v) = candidate else { break };
        let inc = &incident[v];
        if inc.len() == 1 {
            // Only reachable for edges: a lone leg vertex was excluded above.
            pieces[inc[0].0] = None;
            alive[v] = false;
            continue;
        }
        let (i, i_at_a) = inc[0];
        let (j, j_at_a) = inc[1];
        if i == j {
            return Err(Error::Internal("isolated weight-0 loop vertex".into()));
        }
        let far = |k: usize, at_a: bool| -> End {
            let p = pieces[k].expect("alive");
            if at_a {
                p.b
            } else {
                End::Vertex(p.a)
            }
        };
        let (fi, fj) = (far(i, i_at_a), far(j, j_at_a));
        let len = pieces[i].unwrap().len.add(pieces[j].unwrap().len);
        let merged = match (fi, fj) {
            (End::Vertex(x), other) => Piece {
                a: x,
                b: other,
                len,
            },
            (other, End::Vertex(y)) => Piece {
                a: y,
                b: other,
                len,
            },
            (End::Free(_), End::Free(_)) => {
                return Err(Error::Internal("two legs at a smoothed vertex".into()));
            }
        };
        let slot = i.min(j);
        pieces[i.max(j)] = None;
        pieces[slot] = Some(merged);
        alive[v] = false;
    }

    let mut new_id = vec![usize::MAX; alive.len()];
    let mut new_weights = Vec::new();
    for v in 0..alive.len() {
        if alive[v] {
            new_id[v] = new_weights.len();
            new_weights.push(weights[v]);
        }
    }
    let mut edges = Vec::new();
    let mut edge_lengths = Vec::new();
    let mut legs = Vec::new();
    for p in pieces.iter().flatten() {
        match p.b {
            End::Vertex(b) => {
                edges.push((new_id[p.a], new_id[b]));
                edge_lengths.push(p.len);
            }
            End::Free(label) => legs.push((new_id[p.a], label)),
        }
    }
    let g2 = Graph::from_edges(new_weights.len(), &edges, &legs)?;
    let mut lengths = BTreeMap::new();
    for (k, len) in edge_lengths.into_iter().enumerate() {
        // from_edges puts edge k on half-edges 2k, 2k+1, so it keeps index k.
        lengths.insert(Cell::Edge(EdgeId(k)), len);
    }
    for l in g2.legs() {
        lengths.insert(Cell::Leg(l), Length::Infinite);
    }
    let out = TropicalCurve::new(WeightedGraph::new(g2, new_weights)?, lengths)?;
    debug_assert!(out.is_stable());
    Ok(out)
}

/// `true` when `v` is a weight-0 vertex of valency at most 2.
pub fn is_unstable_vertex(wg: &WeightedGraph, v: VertexId) -> bool {
    wg.weight(v) == 0 && wg.graph().valency(v) <= 2
}
