//! Normalized forms of `p`-hamiltonian graphs.
//!
//! Positions on the hamiltonian cycle are 1-based: `v₁ … v_γ`, with cycle
//! edge `eᵢ` joining `vᵢ` and `vᵢ₊₁` (indices mod `γ`). Every other edge is
//! a chord `d_{i,j}` with `i < j`.

use crate::connectivity::Cycle;
use crate::error::{internal, precondition, Error, Result};
use crate::graph::{EdgeId, Graph, HalfEdgeId, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chord {
    pub i: usize,
    pub j: usize,
    /// 1-based index among the chords joining the same two positions,
    /// in edge-id order.
    pub copy: usize,
    pub edge: EdgeId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedForm {
    base: Graph,
    order: Vec<VertexId>,
    cycle_edges: Vec<EdgeId>,
    position: Vec<usize>,
    chords: Vec<Chord>,
}

impl NormalizedForm {
    /// Normalized form for the labeling `v₁ = order[0], …` with
    /// `e_i = cycle_edges[i-1]`.
    pub fn with_order(
        base: Graph,
        order: Vec<VertexId>,
        cycle_edges: Vec<EdgeId>,
    ) -> Result<NormalizedForm> {
        let gamma = base.vertex_count();
        let cycle = Cycle {
            vertices: order.clone(),
            edges: cycle_edges.clone(),
        };
        if gamma < 2 || order.len() != gamma || !cycle.is_valid(&base) {
            return precondition("labeling is not a hamiltonian cycle of the graph");
        }
        if base.total_loops() > 0 {
            return precondition("graphs with loops have no normalized form");
        }
        if base.leg_count() > 0 {
            return precondition("normalized forms are defined for graphs without legs");
        }
        let mut position = vec![0; gamma];
        for (k, v) in order.iter().enumerate() {
            position[v.0] = k + 1;
        }
        let mut on_cycle = vec![false; base.edge_count()];
        for e in &cycle_edges {
            on_cycle[e.0] = true;
        }
        let mut raw: Vec<(usize, usize, EdgeId)> = base
            .edges()
            .filter(|e| !on_cycle[e.0])
            .map(|e| {
                let (a, b) = base.edge_endpoints(e);
                let (x, y) = (position[a.0], position[b.0]);
                (x.min(y), x.max(y), e)
            })
            .collect();
        raw.sort();
        let mut chords = Vec::with_capacity(raw.len());
        for (k, &(i, j, edge)) in raw.iter().enumerate() {
            let copy = if k > 0 && raw[k - 1].0 == i && raw[k - 1].1 == j {
                chords.last().map_or(1, |c: &Chord| c.copy + 1)
            } else {
                1
            };
            chords.push(Chord { i, j, copy, edge });
        }
        Ok(NormalizedForm {
            base,
            order,
            cycle_edges,
            position,
            chords,
        })
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn into_base(self) -> Graph {
        self.base
    }

    pub fn gamma(&self) -> usize {
        self.order.len()
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    /// Vertex at 1-based position `i` (taken mod `γ`).
    pub fn vertex(&self, i: usize) -> VertexId {
        self.order[(i + self.gamma() - 1) % self.gamma()]
    }

    pub fn position(&self, v: VertexId) -> usize {
        self.position[v.0]
    }

    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    /// Cycle edge `e_i`, joining positions `i` and `i + 1`.
    pub fn cycle_edge(&self, i: usize) -> EdgeId {
        self.cycle_edges[(i + self.gamma() - 1) % self.gamma()]
    }

    pub fn cycle_edges(&self) -> &[EdgeId] {
        &self.cycle_edges
    }

    pub fn cycle(&self) -> Cycle {
        Cycle {
            vertices: self.order.clone(),
            edges: self.cycle_edges.clone(),
        }
    }

    pub fn chord_of(&self, e: EdgeId) -> Option<Chord> {
        self.chords.iter().copied().find(|c| c.edge == e)
    }

    /// Chords with an end at position `i`.
    pub fn chords_at(&self, i: usize) -> Vec<Chord> {
        self.chords
            .iter()
            .copied()
            .filter(|c| c.i == i || c.j == i)
            .collect()
    }

    /// The half-edge of chord `e` at position `i`.
    pub fn chord_half_at(&self, e: EdgeId, i: usize) -> Option<HalfEdgeId> {
        let v = self.vertex(i);
        self.base
            .edge_halves(e)
            .into_iter()
            .find(|&h| self.base.endpoint(h) == v)
    }

    pub fn amplitude(&self, c: &Chord) -> usize {
        amplitude(self.gamma(), c.i, c.j)
    }

    pub fn is_short(&self, c: &Chord) -> bool {
        2 * self.amplitude(c) + 2 <= self.gamma()
    }

    pub fn epsilon(&self) -> usize {
        epsilon(self)
    }

    /// Sorted `(i, j)` list, the key used to pick a labeling.
    pub fn chord_key(&self) -> Vec<(usize, usize)> {
        self.chords.iter().map(|c| (c.i, c.j)).collect()
    }

    /// The labeling starting at current position `start` and running
    /// backwards when `reversed`.
    pub fn relabel(&self, start: usize, reversed: bool) -> NormalizedForm {
        let g = self.gamma();
        let (order, edges) = labeling(&self.order, &self.cycle_edges, start - 1, reversed);
        debug_assert_eq!(order.len(), g);
        NormalizedForm::with_order(self.base.clone(), order, edges).expect("relabeling is valid")
    }

    /// All `2γ` compatible labelings: starts `1..=γ`, forward then backward.
    pub fn labelings(&self) -> Vec<NormalizedForm> {
        let mut out = Vec::with_capacity(2 * self.gamma());
        for s in 1..=self.gamma() {
            for rev in [false, true] {
                out.push(self.relabel(s, rev));
            }
        }
        out
    }

    /// Same cycle labeling on another graph with the same cycle edges.
    pub fn transfer(&self, g: Graph) -> Result<NormalizedForm> {
        NormalizedForm::with_order(g, self.order.clone(), self.cycle_edges.clone())
    }
}

fn labeling(
    order: &[VertexId],
    edges: &[EdgeId],
    start: usize,
    reversed: bool,
) -> (Vec<VertexId>, Vec<EdgeId>) {
    let g = order.len();
    if !reversed {
        (
            (0..g).map(|k| order[(start + k) % g]).collect(),
            (0..g).map(|k| edges[(start + k) % g]).collect(),
        )
    } else {
        (
            (0..g).map(|k| order[(start + g - k) % g]).collect(),
            (0..g).map(|k| edges[(start + g - k - 1) % g]).collect(),
        )
    }
}

/// `min{j − i, γ − j + i}`.
pub fn amplitude(gamma: usize, i: usize, j: usize) -> usize {
    let (i, j) = (i.min(j), i.max(j));
    (j - i).min(gamma - j + i)
}

/// `Σ (⌊γ/2⌋ − α(d))` over all chords.
pub fn epsilon(nf: &NormalizedForm) -> usize {
    let half = nf.gamma() / 2;
    nf.chords.iter().map(|c| half - nf.amplitude(c)).sum()
}

/// The normalized form along `delta` whose sorted chord list is least among
/// all compatible labelings.
pub fn normalize(g: &Graph, delta: &Cycle) -> Result<NormalizedForm> {
    if g.total_loops() > 0 {
        return precondition("graph has loops");
    }
    if delta.len() != g.vertex_count() || !delta.is_valid(g) {
        return precondition("cycle is not hamiltonian");
    }
    let first = NormalizedForm::with_order(g.clone(), delta.vertices.clone(), delta.edges.clone())?;
    let mut best: Option<NormalizedForm> = None;
    for nf in first.labelings() {
        if best.as_ref().is_none_or(|b| nf.chord_key() < b.chord_key()) {
            best = Some(nf);
        }
    }
    Ok(best.expect("at least one labeling"))
}

/// A short chord `d_{k,l}` not crossing `d` whose short side misses the
/// short side of `d`. Positions are read in the labeling that starts at
/// `d`'s short side and runs along it; among valid partners the least
/// `(k, l)`, then edge id, is returned.
pub fn find_partner_short_chord(nf: &NormalizedForm, d: &Chord) -> Result<Chord> {
    if !nf.is_short(d) {
        return precondition("chord is not short");
    }
    let gamma = nf.gamma();
    let start = if d.j - d.i == nf.amplitude(d) {
        d.i
    } else {
        d.j
    };
    let rel = nf.relabel(start, false);
    let d2 = rel.chord_of(d.edge).expect("same chord set");
    let j = d2.j;
    rel.chords()
        .iter()
        .filter(|c| c.edge != d.edge && c.i > j && c.j - c.i < gamma / 2)
        .min_by_key(|c| (c.i, c.j, c.edge))
        .map(|c| nf.chord_of(c.edge).expect("same chord set"))
        .ok_or_else(|| Error::Internal("no partner for a short chord".into()))
}

/// The `p`-polygon `Π_γ^p`: cycle edges `0–1, …, (γ−1)–0` first, then the
/// chords.
pub fn build_polygon(p: usize, gamma: usize) -> Result<Graph> {
    if p < 3 || gamma < 2 {
        return precondition("polygon needs p ≥ 3 and γ ≥ 2");
    }
    if gamma % 2 == 1 && p % 2 == 1 {
        return precondition("odd γ needs even p");
    }
    let mut edges: Vec<(usize, usize)> = (0..gamma).map(|i| (i, (i + 1) % gamma)).collect();
    if gamma.is_multiple_of(2) {
        for i in 0..gamma / 2 {
            for _ in 0..p - 2 {
                edges.push((i, i + gamma / 2));
            }
        }
    } else {
        // Each vertex meets (p-2)/2 chords to each of its two antipodes; the
        // pair {i, i+(γ+1)/2} is the pair {i', i'+(γ-1)/2} for i' = i+(γ+1)/2.
        let s = (gamma - 1) / 2;
        for i in 0..gamma {
            for _ in 0..(p - 2) / 2 {
                edges.push((i, (i + s) % gamma));
            }
        }
    }
    let g = Graph::from_edges(gamma, &edges, &[])?;
    if !crate::connectivity::is_p_regular(&g, p) {
        return internal("polygon is not regular");
    }
    Ok(g)
}

/// The normalized form of `build_polygon` along its defining cycle.
pub fn polygon_form(p: usize, gamma: usize) -> Result<NormalizedForm> {
    let g = build_polygon(p, gamma)?;
    let order = (0..gamma).map(VertexId).collect();
    let edges = (0..gamma).map(EdgeId).collect();
    NormalizedForm::with_order(g, order, edges)
}
