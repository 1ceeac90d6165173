//! Twists of normalized forms and their factorization into strong links.
//!
//! Twisting chords `a` and `b` at positions `s` and `t` exchanges the two
//! half-edges sitting there: afterwards `a` ends at `t` and `b` at `s`. For
//! consecutive positions the twist is a strong link through the cycle edge
//! between them, contracted on both sides.

use std::collections::BTreeSet;

use super::{strong_link, StrongLinkStep};
use crate::canon::LegMode;
use crate::connectivity::{is_three_edge_connected, Cycle};
use crate::error::{internal, precondition, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::normal_form::{Chord, NormalizedForm};

fn other_end(c: &Chord, at: usize) -> usize {
    if c.i == at {
        c.j
    } else {
        c.i
    }
}

/// The graph obtained by moving `a`'s end at `a_end` to `b_end` and `b`'s
/// end at `b_end` to `a_end`, in the same labeling.
pub fn twist(
    nf: &NormalizedForm,
    a: EdgeId,
    a_end: usize,
    b: EdgeId,
    b_end: usize,
) -> Result<NormalizedForm> {
    let (ca, cb) = match (nf.chord_of(a), nf.chord_of(b)) {
        (Some(x), Some(y)) if a != b => (x, y),
        _ => return precondition("twist needs two distinct chords"),
    };
    if a_end == b_end {
        return precondition("twisted ends coincide");
    }
    if (ca.i != a_end && ca.j != a_end) || (cb.i != b_end && cb.j != b_end) {
        return precondition("chord does not end at the given position");
    }
    if other_end(&ca, a_end) == b_end || other_end(&cb, b_end) == a_end {
        return precondition("twist would create a loop");
    }
    let ha = nf.chord_half_at(a, a_end).expect("end checked");
    let hb = nf.chord_half_at(b, b_end).expect("end checked");
    let g = nf
        .base()
        .with_endpoints(&[(ha, nf.vertex(b_end)), (hb, nf.vertex(a_end))])?;
    nf.transfer(g)
}

/// Twist at consecutive positions (`b_end = a_end ± 1` mod `γ`), with its
/// strong link.
pub fn consecutive_swap(
    nf: &NormalizedForm,
    a: EdgeId,
    a_end: usize,
    b: EdgeId,
    b_end: usize,
) -> Result<(NormalizedForm, StrongLinkStep)> {
    let e = connecting_edge(nf, a_end, b_end)?;
    let out = twist(nf, a, a_end, b, b_end)?;
    let step = strong_link(nf.base(), e, out.base(), e, LegMode::Labeled)?;
    Ok((out, step))
}

fn connecting_edge(nf: &NormalizedForm, s: usize, t: usize) -> Result<EdgeId> {
    let g = nf.gamma();
    if t == s % g + 1 {
        Ok(nf.cycle_edge(s))
    } else if s == t % g + 1 {
        Ok(nf.cycle_edge(t))
    } else {
        precondition("positions are not consecutive")
    }
}

/// A general twist as a chain of consecutive swaps.
///
/// Walking from `a_end` toward `b_end`, `a` is passed along by swapping it
/// with a chord at the next position, which is swapped back onto `b` on the
/// return, giving `2m − 1` swaps when the positions are `m` apart. The
/// direction of increasing positions is tried first.
pub fn factor_twist(
    nf: &NormalizedForm,
    a: EdgeId,
    a_end: usize,
    b: EdgeId,
    b_end: usize,
) -> Result<(NormalizedForm, Vec<StrongLinkStep>)> {
    let target = twist(nf, a, a_end, b, b_end)?;
    for forward in [true, false] {
        let mut steps = Vec::new();
        if let Some(out) = walk(nf, a, a_end, b, b_end, forward, &mut steps)? {
            if out.base() != target.base() {
                return internal("factored twist differs from the direct twist");
            }
            return Ok((out, steps));
        }
    }
    precondition("no chord sequence realizes the twist")
}

fn walk(
    nf: &NormalizedForm,
    a: EdgeId,
    s: usize,
    b: EdgeId,
    t: usize,
    forward: bool,
    steps: &mut Vec<StrongLinkStep>,
) -> Result<Option<NormalizedForm>> {
    let g = nf.gamma();
    let next = |x: usize| {
        if forward {
            x % g + 1
        } else {
            (x + g - 2) % g + 1
        }
    };
    let x = next(s);
    if x == t {
        let (out, st) = consecutive_swap(nf, a, s, b, t)?;
        steps.push(st);
        return Ok(Some(out));
    }
    let ca = nf.chord_of(a).expect("chord");
    let cb = nf.chord_of(b).expect("chord");
    let (oa, ob) = (other_end(&ca, s), other_end(&cb, t));
    let mut y = x;
    while y != t {
        if y == oa || y == ob {
            return Ok(None);
        }
        y = next(y);
    }
    let Some(c) = nf
        .chords_at(x)
        .into_iter()
        .filter(|c| c.edge != a && c.edge != b && other_end(c, x) != s)
        .min_by_key(|c| (other_end(c, x), c.edge))
    else {
        return Ok(None);
    };
    let mark = steps.len();
    let (nf1, s1) = consecutive_swap(nf, a, s, c.edge, x)?;
    steps.push(s1);
    let Some(nf2) = walk(&nf1, a, x, b, t, forward, steps)? else {
        steps.truncate(mark);
        return Ok(None);
    };
    let (nf3, s3) = consecutive_swap(&nf2, b, x, c.edge, s)?;
    steps.push(s3);
    Ok(Some(nf3))
}

/// Which configuration certified 3-edge-connectivity of a twist.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThreeEcCase {
    /// `d_{1,j}` moves to `j + 1`, `d_{j+1,h}` with `h > j + 1` moves to `j`.
    Outward,
    /// `d_{1,j}` moves to `j + 1`, `d_{h,j+1}` with `1 < h < j` moves to
    /// `j`, and a chord `d_{x,y}` with `h < x < j < j + 1 < y` crosses.
    Crossing,
    /// `d_{h-1,k}` and `d_{h,l}` with `h < k < l` swap their ends at
    /// `h − 1, h`, and a chord `d_{1,k}` closes the first cycle.
    Shared,
}

/// A consecutive swap together with, for its contracted edge `e`, two cycles
/// of the twisted graph meeting exactly in `e`.
#[derive(Clone, Debug)]
pub struct ThreeEcTwist {
    pub form: NormalizedForm,
    pub step: StrongLinkStep,
    pub cycles: [Cycle; 2],
    pub case: ThreeEcCase,
    /// The labeling (start position and direction, in `nf`'s positions) in
    /// which the configuration was found.
    pub labeling: (usize, bool),
}

/// A consecutive swap of a 3-edge-connected graph that provably keeps it
/// 3-edge-connected. Every compatible labeling is searched for one of the
/// configurations of [`ThreeEcCase`]; if none applies the swap is rejected.
pub fn twist_3ec(
    nf: &NormalizedForm,
    a: EdgeId,
    a_end: usize,
    b: EdgeId,
    b_end: usize,
) -> Result<ThreeEcTwist> {
    if !is_three_edge_connected(nf.base()) {
        return precondition("graph is not 3-edge-connected");
    }
    let e = connecting_edge(nf, a_end, b_end)?;
    let (form, step) = consecutive_swap(nf, a, a_end, b, b_end)?;
    let twisted = form.base();
    let gamma = nf.gamma();
    for start in 1..=gamma {
        for rev in [false, true] {
            let l = nf.relabel(start, rev);
            let to_l = |pos: usize| l.position(nf.vertex(pos));
            let (sa, sb) = (to_l(a_end), to_l(b_end));
            // The lower position must be `j` with `j + 1` the upper one.
            let (x_edge, y_edge, j) = if sb == sa + 1 {
                (a, b, sa)
            } else if sa == sb + 1 {
                (b, a, sb)
            } else {
                continue;
            };
            let x = l.chord_of(x_edge).expect("chord");
            let y = l.chord_of(y_edge).expect("chord");
            if let Some((case, cycles)) = configurations(&l, twisted, e, &x, &y, j) {
                if !is_three_edge_connected(twisted) {
                    return internal("certified twist is not 3-edge-connected");
                }
                return Ok(ThreeEcTwist {
                    form,
                    step,
                    cycles,
                    case,
                    labeling: (start, rev),
                });
            }
        }
    }
    precondition("no configuration certifies this twist")
}

fn configurations(
    l: &NormalizedForm,
    twisted: &Graph,
    e: EdgeId,
    x: &Chord,
    y: &Chord,
    j: usize,
) -> Option<(ThreeEcCase, [Cycle; 2])> {
    let path =
        |from: usize, to: usize| -> Vec<EdgeId> { (from..to).map(|i| l.cycle_edge(i)).collect() };
    let check = |case, c1: Vec<EdgeId>, c2: Vec<EdgeId>| {
        let c1 = cycle_from_edges(twisted, &c1)?;
        let c2 = cycle_from_edges(twisted, &c2)?;
        let s1: BTreeSet<EdgeId> = c1.edges.iter().copied().collect();
        let s2: BTreeSet<EdgeId> = c2.edges.iter().copied().collect();
        let common: Vec<EdgeId> = s1.intersection(&s2).copied().collect();
        (common == [e]).then_some((case, [c1, c2]))
    };
    let ej = l.cycle_edge(j);
    // X = d_{1,j} moving to j + 1.
    if x.i == 1 && x.j == j {
        if y.i == j + 1 && y.j > j + 1 {
            let h = y.j;
            let mut c1 = vec![ej, x.edge];
            c1.extend(path(1, j));
            let mut c2 = vec![ej, y.edge];
            c2.extend(path(j + 1, h));
            if let Some(r) = check(ThreeEcCase::Outward, c1, c2) {
                return Some(r);
            }
        }
        if y.j == j + 1 && y.i > 1 && y.i < j {
            let h = y.i;
            let witness = l
                .chords()
                .iter()
                .filter(|w| w.edge != x.edge && w.edge != y.edge)
                .filter(|w| w.i > h && w.i < j && w.j > j + 1)
                .min_by_key(|w| (w.i, w.j, w.edge));
            if let Some(w) = witness {
                let mut c1 = vec![ej, x.edge, y.edge];
                c1.extend(path(1, h));
                let mut c2 = vec![ej, w.edge];
                c2.extend(path(j + 1, w.j));
                c2.extend(path(w.i, j));
                if let Some(r) = check(ThreeEcCase::Crossing, c1, c2) {
                    return Some(r);
                }
            }
        }
    }
    // Q = d_{j,k} moving to j + 1, P = d_{j+1,l} moving to j.
    if j > 1 && x.i == j && y.i == j + 1 {
        let (k, lpos) = (x.j, y.j);
        if j + 1 < k && k < lpos {
            let r = l
                .chords()
                .iter()
                .filter(|r| r.edge != x.edge && r.edge != y.edge && r.i == 1 && r.j == k)
                .min_by_key(|r| r.edge);
            if let Some(r) = r {
                let mut c1 = vec![ej, x.edge, r.edge];
                c1.extend(path(1, j));
                let mut c2 = vec![ej, y.edge];
                c2.extend(path(j + 1, lpos));
                if let Some(res) = check(ThreeEcCase::Shared, c1, c2) {
                    return Some(res);
                }
            }
        }
    }
    None
}

/// Orders an edge set forming a single cycle, or `None` if it is not one.
pub(crate) fn cycle_from_edges(g: &Graph, edges: &[EdgeId]) -> Option<Cycle> {
    let set: BTreeSet<EdgeId> = edges.iter().copied().collect();
    if set.len() != edges.len() || set.is_empty() {
        return None;
    }
    let mut deg = vec![0usize; g.vertex_count()];
    for &e in &set {
        let (u, v) = g.edge_endpoints(e);
        deg[u.0] += 1;
        deg[v.0] += 1;
    }
    if deg.iter().any(|&d| d != 0 && d != 2) {
        return None;
    }
    let first = *set.iter().next().expect("non-empty");
    let (start, mut cur) = g.edge_endpoints(first);
    let mut vertices: Vec<VertexId> = vec![start];
    let mut order = vec![first];
    let mut used: BTreeSet<EdgeId> = [first].into_iter().collect();
    while cur != start {
        vertices.push(cur);
        let nxt = set.iter().copied().find(|f| {
            !used.contains(f) && {
                let (a, b) = g.edge_endpoints(*f);
                a == cur || b == cur
            }
        })?;
        used.insert(nxt);
        order.push(nxt);
        cur = g.opposite(nxt, cur);
    }
    (used.len() == set.len()).then_some(Cycle {
        vertices,
        edges: order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::linkage::{verify_certificate, LinkMode, LinkageCertificate};
    use crate::normal_form::normalize;

    fn form(gamma: usize, chords: &[(usize, usize)]) -> NormalizedForm {
        let mut edges: Vec<(usize, usize)> = (0..gamma).map(|i| (i, (i + 1) % gamma)).collect();
        edges.extend(chords.iter().map(|&(a, b)| (a - 1, b - 1)));
        let g = Graph::from_edges(gamma, &edges, &[]).unwrap();
        NormalizedForm::with_order(
            g,
            (0..gamma).map(VertexId).collect(),
            (0..gamma).map(EdgeId).collect(),
        )
        .unwrap()
    }

    #[test]
    fn twist_moves_ends() {
        let nf = form(6, &[(1, 2), (3, 6), (4, 5)]);
        let a = nf.chords()[0].edge;
        let b = nf.chords()[2].edge;
        let t = twist(&nf, a, 2, b, 4).unwrap();
        assert_eq!(t.chord_key(), vec![(1, 4), (2, 5), (3, 6)]);
        assert!(twist(&nf, a, 2, a, 1).is_err());
        let c = nf.chords()[1].edge;
        assert_eq!(
            twist(&nf, c, 3, b, 4).unwrap().chord_key(),
            vec![(1, 2), (3, 5), (4, 6)]
        );
    }

    #[test]
    fn loop_creating_twist_rejected() {
        let nf = form(4, &[(1, 3), (1, 3), (2, 4), (2, 4)]);
        let (a, b) = (nf.chords()[0].edge, nf.chords()[1].edge);
        assert!(twist(&nf, a, 1, b, 3).is_err());
        let c = nf.chords()[2].edge;
        assert!(twist(&nf, a, 1, c, 2).is_ok());
    }

    #[test]
    fn factor_twist_has_expected_length() {
        let nf = form(6, &[(1, 2), (3, 6), (4, 5)]);
        let a = nf.chords()[0].edge;
        let b = nf.chords()[2].edge;
        let (out, steps) = factor_twist(&nf, a, 2, b, 4).unwrap();
        assert_eq!(steps.len(), 3);
        assert_eq!(out.chord_key(), vec![(1, 4), (2, 5), (3, 6)]);
        let cert = LinkageCertificate::from_steps(
            LinkMode::Plain,
            3,
            LegMode::Labeled,
            nf.base().clone(),
            steps,
        )
        .unwrap();
        assert!(verify_certificate(&cert, 3, LinkMode::Plain).valid);
    }

    #[test]
    fn three_ec_twists_of_the_prism() {
        let g = families::prism();
        let c = crate::connectivity::hamiltonian_cycle(&g).unwrap().unwrap();
        let nf = normalize(&g, &c).unwrap();
        let mut found = false;
        for s in 1..=nf.gamma() {
            let t = s % nf.gamma() + 1;
            for ca in nf.chords_at(s) {
                for cb in nf.chords_at(t) {
                    if ca.edge == cb.edge {
                        continue;
                    }
                    if let Ok(r) = twist_3ec(&nf, ca.edge, s, cb.edge, t) {
                        found = true;
                        assert!(is_three_edge_connected(r.form.base()));
                        let [c1, c2] = &r.cycles;
                        assert!(c1.is_valid(r.form.base()) && c2.is_valid(r.form.base()));
                    }
                }
            }
        }
        assert!(found);
    }

    #[test]
    fn cycle_from_edge_sets() {
        let k4 = families::k4();
        let tri: Vec<EdgeId> = k4
            .edges()
            .filter(|&e| {
                let (a, b) = k4.edge_endpoints(e);
                a.0 < 3 && b.0 < 3
            })
            .collect();
        assert_eq!(cycle_from_edges(&k4, &tri).unwrap().len(), 3);
        let all: Vec<EdgeId> = k4.edges().collect();
        assert!(cycle_from_edges(&k4, &all).is_none());
    }
}
