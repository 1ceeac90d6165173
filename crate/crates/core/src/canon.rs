//! Canonical forms and isomorphisms of weighted graphs with legs.
//!
//! Vertices are coloured by local invariants, the colouring is refined by
//! neighbour multisets until stable, and the remaining ambiguity is resolved
//! by individualizing vertices of the first non-singleton cell and
//! backtracking. Every discrete colouring gives an encoding; the
//! lexicographically least one is the canonical form.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::{EdgeId, Graph, HalfEdgeId, VertexId, WeightedGraph};

/// Whether isomorphisms must preserve leg labels.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LegMode {
    #[default]
    Labeled,
    Unlabeled,
}

/// A complete isomorphism invariant. Equal forms mean isomorphic inputs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm(pub Vec<u32>);

impl CanonicalForm {
    /// Hex SHA-256 of the encoding, used as a stable identifier.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut h = Sha256::new();
        for x in &self.0 {
            h.update(x.to_le_bytes());
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn short_id(&self) -> String {
        self.digest()[..12].to_string()
    }
}

/// An isomorphism `a → b`: maps on vertices, edges and legs that commute
/// with endpoints and preserve weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub vertex_map: Vec<VertexId>,
    pub edge_map: Vec<EdgeId>,
    pub leg_map: BTreeMap<HalfEdgeId, HalfEdgeId>,
}

impl Isomorphism {
    /// Checks that this is an isomorphism `a → b` respecting weights, the
    /// optional marked vertices, and leg labels in [`LegMode::Labeled`].
    pub fn is_valid(
        &self,
        a: &WeightedGraph,
        a_marked: Option<VertexId>,
        b: &WeightedGraph,
        b_marked: Option<VertexId>,
        mode: LegMode,
    ) -> bool {
        let (ga, gb) = (a.graph(), b.graph());
        if ga.vertex_count() != gb.vertex_count()
            || ga.edge_count() != gb.edge_count()
            || ga.leg_count() != gb.leg_count()
            || self.vertex_map.len() != ga.vertex_count()
            || self.edge_map.len() != ga.edge_count()
            || self.leg_map.len() != ga.leg_count()
        {
            return false;
        }
        let mut hit = vec![false; gb.vertex_count()];
        for (v, &t) in self.vertex_map.iter().enumerate() {
            if t.0 >= gb.vertex_count() || std::mem::replace(&mut hit[t.0], true) {
                return false;
            }
            if a.weight(VertexId(v)) != b.weight(t) {
                return false;
            }
        }
        if a_marked.map(|m| self.vertex_map[m.0]) != b_marked {
            return false;
        }
        let mut hit = vec![false; gb.edge_count()];
        for (e, &t) in self.edge_map.iter().enumerate() {
            if t.0 >= gb.edge_count() || std::mem::replace(&mut hit[t.0], true) {
                return false;
            }
            let (x, y) = ga.edge_endpoints(EdgeId(e));
            let (x, y) = (self.vertex_map[x.0], self.vertex_map[y.0]);
            let (u, v) = gb.edge_endpoints(t);
            if !((x == u && y == v) || (x == v && y == u)) {
                return false;
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for (&l, &t) in &self.leg_map {
            if l.0 >= ga.half_edge_count()
                || t.0 >= gb.half_edge_count()
                || !ga.is_leg(l)
                || !gb.is_leg(t)
                || !seen.insert(t)
            {
                return false;
            }
            if self.vertex_map[ga.endpoint(l).0] != gb.endpoint(t) {
                return false;
            }
            if mode == LegMode::Labeled && ga.leg_label(l) != gb.leg_label(t) {
                return false;
            }
        }
        true
    }
}

pub fn canonical_form(wg: &WeightedGraph, mode: LegMode) -> CanonicalForm {
    canonical_labeling(wg, None, mode).0
}

/// Canonical form with one distinguished vertex.
pub fn canonical_form_marked(
    wg: &WeightedGraph,
    marked: Option<VertexId>,
    mode: LegMode,
) -> CanonicalForm {
    canonical_labeling(wg, marked, mode).0
}

/// Canonical form of an unweighted graph.
pub fn graph_form(g: &Graph, mode: LegMode) -> CanonicalForm {
    canonical_form(&WeightedGraph::pure(g.clone()), mode)
}

pub fn are_isomorphic(a: &WeightedGraph, b: &WeightedGraph, mode: LegMode) -> Option<Isomorphism> {
    isomorphism_marked(a, None, b, None, mode)
}

pub fn graphs_isomorphic(a: &Graph, b: &Graph, mode: LegMode) -> Option<Isomorphism> {
    are_isomorphic(
        &WeightedGraph::pure(a.clone()),
        &WeightedGraph::pure(b.clone()),
        mode,
    )
}

/// An isomorphism `a → b` sending `a_marked` to `b_marked`, if one exists.
pub fn isomorphism_marked(
    a: &WeightedGraph,
    a_marked: Option<VertexId>,
    b: &WeightedGraph,
    b_marked: Option<VertexId>,
    mode: LegMode,
) -> Option<Isomorphism> {
    if a_marked.is_some() != b_marked.is_some() {
        return None;
    }
    let (fa, la) = canonical_labeling(a, a_marked, mode);
    let (fb, lb) = canonical_labeling(b, b_marked, mode);
    if fa != fb {
        return None;
    }
    let (ga, gb) = (a.graph(), b.graph());
    let n = ga.vertex_count();
    let mut vertex_map = vec![VertexId(0); n];
    for pos in 0..n {
        vertex_map[la[pos]] = VertexId(lb[pos]);
    }
    let mut edge_map = vec![EdgeId(0); ga.edge_count()];
    let mut a_groups: BTreeMap<(usize, usize), Vec<EdgeId>> = BTreeMap::new();
    for e in ga.edges() {
        let (x, y) = ga.edge_endpoints(e);
        let (x, y) = (vertex_map[x.0].0, vertex_map[y.0].0);
        a_groups.entry((x.min(y), x.max(y))).or_default().push(e);
    }
    let mut b_groups: BTreeMap<(usize, usize), Vec<EdgeId>> = BTreeMap::new();
    for e in gb.edges() {
        let (x, y) = gb.edge_endpoints(e);
        b_groups
            .entry((x.0.min(y.0), x.0.max(y.0)))
            .or_default()
            .push(e);
    }
    for (key, es) in &a_groups {
        let ts = b_groups.get(key)?;
        if ts.len() != es.len() {
            return None;
        }
        for (e, t) in es.iter().zip(ts) {
            edge_map[e.0] = *t;
        }
    }
    let mut leg_map = BTreeMap::new();
    match mode {
        LegMode::Labeled => {
            for l in ga.legs() {
                let t = gb.leg_with_label(ga.leg_label(l)?)?;
                leg_map.insert(l, t);
            }
        }
        LegMode::Unlabeled => {
            for v in ga.vertices() {
                let ls = ga.legs_at(v);
                let ts = gb.legs_at(vertex_map[v.0]);
                if ls.len() != ts.len() {
                    return None;
                }
                leg_map.extend(ls.into_iter().zip(ts));
            }
        }
    }
    Some(Isomorphism {
        vertex_map,
        edge_map,
        leg_map,
    })
}

/// Returns the canonical form and the labeling `position → vertex` that
/// realizes it.
pub fn canonical_labeling(
    wg: &WeightedGraph,
    marked: Option<VertexId>,
    mode: LegMode,
) -> (CanonicalForm, Vec<usize>) {
    let ctx = Ctx::new(wg, marked, mode);
    let n = ctx.n;
    let init: Vec<Vec<u32>> = (0..n).map(|v| ctx.invariant(v)).collect();
    let colors = rank(&init);
    let colors = ctx.refine(colors);
    let mut best: Option<(Vec<u32>, Vec<usize>)> = None;
    ctx.search(colors, &mut best);
    let (code, lab) = best.expect("search visits at least one leaf");
    (CanonicalForm(code), lab)
}

struct Ctx<'a> {
    wg: &'a WeightedGraph,
    n: usize,
    mult: Vec<Vec<usize>>,
    marked: Option<usize>,
    mode: LegMode,
    labels: Vec<Vec<u32>>,
}

impl<'a> Ctx<'a> {
    fn new(wg: &'a WeightedGraph, marked: Option<VertexId>, mode: LegMode) -> Self {
        let g = wg.graph();
        let labels = g
            .vertices()
            .map(|v| {
                let mut ls: Vec<u32> = g
                    .legs_at(v)
                    .into_iter()
                    .map(|h| g.leg_label(h).unwrap_or(0))
                    .collect();
                ls.sort_unstable();
                ls
            })
            .collect();
        Ctx {
            wg,
            n: g.vertex_count(),
            mult: g.multiplicity_matrix(),
            marked: marked.map(|m| m.0),
            mode,
            labels,
        }
    }

    fn vertex_header(&self, v: usize, out: &mut Vec<u32>) {
        out.push(self.wg.weights()[v]);
        out.push(u32::from(self.marked == Some(v)));
        out.push(self.labels[v].len() as u32);
        if self.mode == LegMode::Labeled {
            out.extend(&self.labels[v]);
        }
    }

    fn invariant(&self, v: usize) -> Vec<u32> {
        let mut out = Vec::new();
        self.vertex_header(v, &mut out);
        out.push(self.mult[v][v] as u32);
        out.push(self.wg.graph().valency(VertexId(v)) as u32);
        out
    }

    fn refine(&self, mut colors: Vec<usize>) -> Vec<usize> {
        let mut classes = count_classes(&colors);
        loop {
            let sigs: Vec<(usize, Vec<(usize, usize)>)> = (0..self.n)
                .map(|v| {
                    let mut nb: Vec<(usize, usize)> = (0..self.n)
                        .filter(|&u| u != v && self.mult[v][u] > 0)
                        .map(|u| (colors[u], self.mult[v][u]))
                        .collect();
                    nb.sort_unstable();
                    (colors[v], nb)
                })
                .collect();
            colors = rank(&sigs);
            let c = count_classes(&colors);
            if c == classes {
                return colors;
            }
            classes = c;
        }
    }

    fn search(&self, colors: Vec<usize>, best: &mut Option<(Vec<u32>, Vec<usize>)>) {
        let mut size = vec![0usize; self.n];
        for &c in &colors {
            size[c] += 1;
        }
        let target = (0..self.n).find(|&c| size[c] > 1);
        let Some(target) = target else {
            let mut lab = vec![0; self.n];
            for (v, &c) in colors.iter().enumerate() {
                lab[c] = v;
            }
            let code = self.encode(&lab);
            if best.as_ref().is_none_or(|(b, _)| code < *b) {
                *best = Some((code, lab));
            }
            return;
        };
        for x in (0..self.n).filter(|&v| colors[v] == target) {
            let keyed: Vec<(usize, bool)> = (0..self.n).map(|v| (colors[v], v != x)).collect();
            let next = self.refine(rank(&keyed));
            self.search(next, best);
        }
    }

    fn encode(&self, lab: &[usize]) -> Vec<u32> {
        let mut out = vec![self.n as u32];
        for &v in lab {
            self.vertex_header(v, &mut out);
        }
        for i in 0..self.n {
            for j in i..self.n {
                out.push(self.mult[lab[i]][lab[j]] as u32);
            }
        }
        out
    }
}

/// Replace values by their rank among the distinct values.
fn rank<T: Ord + Clone>(keys: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("present"))
        .collect()
}

fn count_classes(colors: &[usize]) -> usize {
    let mut seen = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn pure(g: Graph) -> WeightedGraph {
        WeightedGraph::pure(g)
    }

    #[test]
    fn k4_relabeled() {
        let a = families::k4();
        let b =
            Graph::from_edges(4, &[(3, 2), (1, 3), (0, 3), (2, 1), (0, 2), (1, 0)], &[]).unwrap();
        let iso = are_isomorphic(&pure(a.clone()), &pure(b.clone()), LegMode::Labeled).unwrap();
        assert!(iso.is_valid(&pure(a), None, &pure(b), None, LegMode::Labeled));
    }

    #[test]
    fn theta_vs_dumbbell() {
        assert_ne!(
            graph_form(&families::theta(), LegMode::Labeled),
            graph_form(&families::dumbbell(), LegMode::Labeled)
        );
    }

    #[test]
    fn square_with_diagonals_is_k4() {
        let sq =
            Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)], &[]).unwrap();
        assert_eq!(
            graph_form(&sq, LegMode::Labeled),
            graph_form(&families::k4(), LegMode::Labeled)
        );
    }

    #[test]
    fn petersen_is_not_prism_like() {
        let p = families::petersen();
        let q = Graph::from_edges(
            10,
            &(0..10)
                .map(|i| (i, (i + 1) % 10))
                .chain((0..5).map(|i| (i, i + 5)))
                .collect::<Vec<_>>(),
            &[],
        )
        .unwrap();
        assert!(graphs_isomorphic(&p, &q, LegMode::Labeled).is_none());
        assert!(graphs_isomorphic(&p, &p, LegMode::Labeled).is_some());
    }

    #[test]
    fn weights_and_marks_matter() {
        let g = families::cycle(2);
        let a = WeightedGraph::new(g.clone(), vec![1, 0]).unwrap();
        let b = WeightedGraph::new(g.clone(), vec![0, 1]).unwrap();
        let c = WeightedGraph::new(g, vec![1, 1]).unwrap();
        assert!(are_isomorphic(&a, &b, LegMode::Labeled).is_some());
        assert!(are_isomorphic(&a, &c, LegMode::Labeled).is_none());
        assert!(isomorphism_marked(
            &a,
            Some(VertexId(0)),
            &b,
            Some(VertexId(0)),
            LegMode::Labeled
        )
        .is_none());
        assert!(isomorphism_marked(
            &a,
            Some(VertexId(0)),
            &b,
            Some(VertexId(1)),
            LegMode::Labeled
        )
        .is_some());
    }

    #[test]
    fn leg_modes() {
        let a = Graph::from_edges(2, &[(0, 1), (0, 1)], &[(0, 1), (1, 2)]).unwrap();
        let b = Graph::from_edges(2, &[(0, 1), (0, 1)], &[(0, 2), (1, 1)]).unwrap();
        let c = Graph::from_edges(2, &[(0, 1), (0, 1)], &[(0, 1), (0, 2)]).unwrap();
        assert!(graphs_isomorphic(&a, &b, LegMode::Labeled).is_some());
        assert!(graphs_isomorphic(&a, &c, LegMode::Labeled).is_none());
        // c has valency 4 at one end; different even without labels.
        assert!(graphs_isomorphic(&a, &c, LegMode::Unlabeled).is_none());
        let d = Graph::from_edges(2, &[(0, 1), (0, 1), (1, 1)], &[(0, 1), (0, 2)]).unwrap();
        let e = Graph::from_edges(2, &[(0, 1), (0, 1), (1, 1)], &[(0, 2), (0, 1)]).unwrap();
        let iso = graphs_isomorphic(&d, &e, LegMode::Labeled).unwrap();
        assert!(iso.is_valid(&pure(d), None, &pure(e), None, LegMode::Labeled));
    }
}
