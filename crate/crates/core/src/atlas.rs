//! Exhaustive enumeration of small graphs up to isomorphism, and the
//! strong-link move graph over isomorphism classes.
//!
//! Regular graphs are generated as symmetric multiplicity matrices with
//! prescribed row degrees (the pairing model with stub symmetry quotiented
//! out) and deduplicated by canonical form.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_form, canonical_form_marked, graph_form, CanonicalForm, LegMode};
use crate::connectivity::is_three_edge_connected;
use crate::error::{precondition, Result};
use crate::graph::{EdgeId, Graph, VertexId, WeightedGraph};
use crate::normal_form::NormalizedForm;
use crate::util::DisjointSet;

/// Which classes to keep.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Filter {
    #[default]
    All,
    ThreeEdgeConnected,
}

/// Symmetric matrices `m` with `Σ_{j≠i} m_ij + 2 m_ii = degree[i]`. When
/// `loops` is false the diagonal is zero.
pub(crate) fn degree_matrices(degree: &[usize], loops: bool) -> Vec<Vec<Vec<usize>>> {
    let n = degree.len();
    let mut out = Vec::new();
    let mut m = vec![vec![0; n]; n];
    let mut rem = degree.to_vec();
    fn rec(
        i: usize,
        j: usize,
        loops: bool,
        m: &mut Vec<Vec<usize>>,
        rem: &mut Vec<usize>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        let n = rem.len();
        if i == n {
            out.push(m.clone());
            return;
        }
        if j == n {
            if rem[i] == 0 {
                rec(i + 1, i + 1, loops, m, rem, out);
            }
            return;
        }
        if i == j {
            let max = if loops { rem[i] / 2 } else { 0 };
            for l in 0..=max {
                m[i][i] = l;
                rem[i] -= 2 * l;
                rec(i, j + 1, loops, m, rem, out);
                rem[i] += 2 * l;
            }
            m[i][i] = 0;
            return;
        }
        // What is left at i must fit into the columns j..n.
        let capacity: usize = (j..n).map(|c| rem[c]).sum();
        if rem[i] > capacity {
            return;
        }
        for x in 0..=rem[i].min(rem[j]) {
            m[i][j] = x;
            m[j][i] = x;
            rem[i] -= x;
            rem[j] -= x;
            rec(i, j + 1, loops, m, rem, out);
            rem[i] += x;
            rem[j] += x;
        }
        m[i][j] = 0;
        m[j][i] = 0;
    }
    rec(0, 0, loops, &mut m, &mut rem, &mut out);
    out
}

fn matrix_graph(m: &[Vec<usize>], legs: &[(usize, u32)]) -> Option<Graph> {
    let n = m.len();
    let mut ds = DisjointSet::new(n);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i..n {
            for _ in 0..m[i][j] {
                edges.push((i, j));
            }
            if m[i][j] > 0 {
                ds.union(i, j);
            }
        }
    }
    (ds.components() == 1).then(|| Graph::from_edges(n, &edges, legs).expect("valid matrix"))
}

fn dedup(graphs: Vec<Graph>, mode: LegMode) -> Vec<Graph> {
    let keyed: Vec<(CanonicalForm, Graph)> = graphs
        .into_par_iter()
        .map(|g| (graph_form(&g, mode), g))
        .collect();
    let mut seen: BTreeMap<CanonicalForm, Graph> = BTreeMap::new();
    for (f, g) in keyed {
        seen.entry(f).or_insert(g);
    }
    seen.into_values().collect()
}

/// Vertex count of a `p`-valent graph of first Betti number `b` with `n`
/// legs, when integral and positive.
pub fn vertex_count_for(p: usize, b: usize, n: usize) -> Option<usize> {
    if p < 3 {
        return None;
    }
    let num = (2 * b + n).checked_sub(2)?;
    (num > 0 && num % (p - 2) == 0).then_some(num / (p - 2))
}

/// One graph per isomorphism class of connected `p`-regular multigraphs
/// without legs of first Betti number `b`, ordered by canonical form.
/// Returns an empty list when `p − 2` does not divide `2b − 2`.
pub fn enumerate_p_regular(p: usize, b: usize, filter: Filter) -> Result<Vec<Graph>> {
    if b < 2 {
        return precondition("first Betti number must be at least 2");
    }
    enumerate_legged(p, b, 0, LegMode::Labeled, filter)
}

/// Classes of connected graphs of first Betti number `b` with `n` legs
/// labelled `1..=n` in which every vertex has valency `p`, legs included.
pub fn enumerate_legged(
    p: usize,
    b: usize,
    n: u32,
    leg_mode: LegMode,
    filter: Filter,
) -> Result<Vec<Graph>> {
    let Some(nv) = vertex_count_for(p, b, n as usize) else {
        return Ok(Vec::new());
    };
    let mut candidates = Vec::new();
    for assignment in leg_assignments(nv, n, p) {
        let mut degree = vec![p; nv];
        let legs: Vec<(usize, u32)> = assignment
            .iter()
            .enumerate()
            .map(|(k, &v)| {
                degree[v] -= 1;
                (v, k as u32 + 1)
            })
            .collect();
        for m in degree_matrices(&degree, true) {
            if let Some(g) = matrix_graph(&m, &legs) {
                if filter == Filter::All || is_three_edge_connected(&g) {
                    candidates.push(g);
                }
            }
        }
    }
    Ok(dedup(candidates, leg_mode))
}

/// Vertices for legs `1..=n`. Leg 1 goes to vertex 0 and every later leg to
/// an already used vertex or the next unused one, one choice per orbit of
/// vertex relabelings.
fn leg_assignments(nv: usize, n: u32, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(nv: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let used = cur.iter().map(|&v| v + 1).max().unwrap_or(0);
        for v in 0..=used.min(nv - 1) {
            if cur.iter().filter(|&&x| x == v).count() < p {
                cur.push(v);
                rec(nv, n, p, cur, out);
                cur.pop();
            }
        }
    }
    rec(nv, n as usize, p, &mut Vec::new(), &mut out);
    out
}

/// Stable weighted graphs of genus `g` with legs `1..=n`, one per class, in
/// decreasing dimension `|E|` and then canonical order.
///
/// Every stable graph is a weighted contraction of a 3-regular graph with
/// zero weights, so the classes are generated as the downward closure of
/// those under one-edge weighted contraction.
pub fn enumerate_stable(g: usize, n: u32) -> Result<Vec<WeightedGraph>> {
    if 2 * g + n as usize <= 2 {
        return precondition("2g − 2 + n must be positive");
    }
    let top: Vec<WeightedGraph> = enumerate_legged(3, g, n, LegMode::Labeled, Filter::All)?
        .into_iter()
        .map(WeightedGraph::pure)
        .collect();
    Ok(downward_closure(top, |_| true)
        .into_iter()
        .map(|(_, wg)| wg)
        .collect())
}

/// Closure of `top` under one-edge weighted contraction, keeping only
/// graphs accepted by `keep`. Sorted by decreasing `|E|`, then form.
pub(crate) fn downward_closure(
    top: Vec<WeightedGraph>,
    keep: impl Fn(&WeightedGraph) -> bool + Sync,
) -> Vec<(CanonicalForm, WeightedGraph)> {
    let mut seen: BTreeMap<CanonicalForm, WeightedGraph> = BTreeMap::new();
    let mut frontier: Vec<WeightedGraph> = Vec::new();
    for wg in top {
        if keep(&wg) {
            let f = canonical_form(&wg, LegMode::Labeled);
            if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(f) {
                e.insert(wg.clone());
                frontier.push(wg);
            }
        }
    }
    while !frontier.is_empty() {
        let next: Vec<(CanonicalForm, WeightedGraph)> = frontier
            .par_iter()
            .flat_map_iter(|wg| {
                wg.graph()
                    .edges()
                    .map(|e| wg.weighted_contract_edge(e).0)
                    .filter(|c| keep(c))
                    .map(|c| (canonical_form(&c, LegMode::Labeled), c))
                    .collect::<Vec<_>>()
            })
            .collect();
        frontier = Vec::new();
        for (f, c) in next {
            if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(f) {
                e.insert(c.clone());
                frontier.push(c);
            }
        }
    }
    let mut out: Vec<(CanonicalForm, WeightedGraph)> = seen.into_iter().collect();
    out.sort_by(|(fa, a), (fb, b)| {
        b.graph()
            .edge_count()
            .cmp(&a.graph().edge_count())
            .then_with(|| fa.cmp(fb))
    });
    out
}

/// Every `p`-hamiltonian graph on `γ` vertices in normalized position: the
/// cycle `0–1–…–(γ−1)–0` as edges `0..γ` plus every loop-free chord
/// multiset giving each vertex `p − 2` chords. Not deduplicated: isomorphic
/// graphs appear once per compatible chord configuration.
pub fn enumerate_hamiltonian_normal_forms(p: usize, gamma: usize) -> Result<Vec<NormalizedForm>> {
    if p < 3 || gamma < 2 {
        return precondition("need p ≥ 3 and γ ≥ 2");
    }
    let order: Vec<VertexId> = (0..gamma).map(VertexId).collect();
    let cycle_edges: Vec<EdgeId> = (0..gamma).map(EdgeId).collect();
    degree_matrices(&vec![p - 2; gamma], false)
        .into_par_iter()
        .map(|m| {
            let mut edges: Vec<(usize, usize)> = (0..gamma).map(|i| (i, (i + 1) % gamma)).collect();
            for i in 0..gamma {
                for j in i + 1..gamma {
                    for _ in 0..m[i][j] {
                        edges.push((i, j));
                    }
                }
            }
            let g = Graph::from_edges(gamma, &edges, &[])?;
            NormalizedForm::with_order(g, order.clone(), cycle_edges.clone())
        })
        .collect()
}

/// Strong-link adjacency over a list of classes.
#[derive(Clone, Debug, Serialize)]
pub struct MoveGraph {
    pub ids: Vec<String>,
    pub edges: BTreeSet<(usize, usize)>,
}

impl MoveGraph {
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.ids.len();
        let mut ds = DisjointSet::new(n);
        for &(a, b) in &self.edges {
            ds.union(a, b);
        }
        let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            comps.entry(ds.find(v)).or_default().push(v);
        }
        comps.into_values().collect()
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph \"{name}\" {{");
        for id in &self.ids {
            let _ = writeln!(out, "  \"c{id}\";");
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  \"c{}\" -- \"c{}\";", self.ids[a], self.ids[b]);
        }
        out.push_str("}\n");
        out
    }
}

/// Two classes are adjacent when a non-loop one-edge contraction of one is
/// isomorphic to one of the other with the contracted images matched. With
/// `three_ec_middles` only 3-edge-connected contractions count.
pub fn move_graph(classes: &[Graph], leg_mode: LegMode, three_ec_middles: bool) -> MoveGraph {
    let marked: Vec<BTreeSet<CanonicalForm>> = classes
        .par_iter()
        .map(|g| {
            g.edges()
                .filter(|&e| !g.is_loop(e))
                .filter_map(|e| {
                    let (c, map) = g.contract_edge(e);
                    if three_ec_middles && !is_three_edge_connected(&c) {
                        return None;
                    }
                    let m = map.image_vertex(g, e);
                    Some(canonical_form_marked(
                        &WeightedGraph::pure(c),
                        Some(m),
                        leg_mode,
                    ))
                })
                .collect()
        })
        .collect();
    let mut edges = BTreeSet::new();
    for a in 0..classes.len() {
        for b in a + 1..classes.len() {
            if !marked[a].is_disjoint(&marked[b]) {
                edges.insert((a, b));
            }
        }
    }
    MoveGraph {
        ids: classes
            .iter()
            .map(|g| graph_form(g, leg_mode).short_id())
            .collect(),
        edges,
    }
}
