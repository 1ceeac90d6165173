//! The ε-descent: linking a `p`-hamiltonian graph to the `p`-polygon.
//!
//! While some chord is short, a pair `d = d_{1,j}`, `d' = d_{k,l}` of
//! nested short chords is chosen and the twist exchanging `d`'s end at `j`
//! with `d'`'s end at `k` is applied. It lowers ε by at least two, and is
//! realized as a chain of consecutive swaps.

use super::{factor_twist, twist, twist_3ec, LinkMode, LinkageCertificate, StrongLinkStep};
use crate::canon::LegMode;
use crate::connectivity::{
    hamiltonian_cycle, is_p_hamiltonian, is_three_edge_connected, regularity,
};
use crate::error::{internal, precondition, Result};
use crate::graph::{EdgeId, Graph};
use crate::normal_form::{normalize, Chord, NormalizedForm};

/// The chord pair of one descent iteration, in the labeling where `d`
/// starts at position 1.
#[derive(Clone, Debug)]
pub struct PairSelection {
    pub labeling: NormalizedForm,
    pub d: Chord,
    pub d_prime: Chord,
}

impl PairSelection {
    pub fn j(&self) -> usize {
        self.d.j
    }

    pub fn k(&self) -> usize {
        self.d_prime.i
    }

    pub fn l(&self) -> usize {
        self.d_prime.j
    }
}

/// Picks the descent pair.
///
/// Over all labelings, `d = d_{1,j}` is short with `j − 1` its amplitude,
/// and `d' = d_{k,l}` satisfies `j < k < l`, `l − k < ⌊γ/2⌋`,
/// `k − j ≤ γ + 1 − l` and `j − 1 ≤ l − k`. The pair minimizing
/// `(k − j, j, k, l)` is returned, ties broken by labeling index and edge
/// ids. The choice guarantees `k ≤ ⌊γ/2⌋ + 1` and that every chord at a
/// position strictly between `j` and `k` ends at or beyond `k`; both are
/// checked.
pub fn select_pair(nf: &NormalizedForm) -> Result<PairSelection> {
    let gamma = nf.gamma();
    let half = gamma / 2;
    type Key = (usize, usize, usize, usize, usize, EdgeId, EdgeId);
    let mut best: Option<(Key, NormalizedForm, Chord, Chord)> = None;
    for (idx, l) in nf.labelings().into_iter().enumerate() {
        let mut local: Option<(Key, Chord, Chord)> = None;
        for d in l.chords().iter().filter(|d| d.i == 1) {
            let j = d.j;
            if !(l.is_short(d) && l.amplitude(d) == j - 1) {
                continue;
            }
            for dp in l.chords() {
                let (k, m) = (dp.i, dp.j);
                if k <= j || m - k >= half || k - j > gamma + 1 - m || j - 1 > m - k {
                    continue;
                }
                let key = (k - j, j, k, m, idx, d.edge, dp.edge);
                if local.as_ref().is_none_or(|b| key < b.0) {
                    local = Some((key, *d, *dp));
                }
            }
        }
        if let Some((key, d, dp)) = local {
            if best.as_ref().is_none_or(|b| key < b.0) {
                best = Some((key, l, d, dp));
            }
        }
    }
    let Some((_, labeling, d, d_prime)) = best else {
        return internal("no descent pair although a chord is short");
    };
    let (j, k) = (d.j, d_prime.i);
    if k > half + 1 {
        return internal(format!("descent pair has k = {k} > ⌊γ/2⌋ + 1"));
    }
    for g in j + 1..k {
        for c in labeling.chords_at(g) {
            let other = if c.i == g { c.j } else { c.i };
            if other < k {
                return internal(format!(
                    "chord at position {g} ends at {other}, before k = {k}"
                ));
            }
        }
    }
    Ok(PairSelection {
        labeling,
        d,
        d_prime,
    })
}

/// One outer iteration of the descent.
#[derive(Clone, Debug)]
pub struct Iteration {
    pub epsilon_before: usize,
    pub epsilon_after: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub swaps: usize,
}

/// Output of [`reduce_to_polygon`].
#[derive(Clone, Debug)]
pub struct Reduction {
    pub certificate: LinkageCertificate,
    pub iterations: Vec<Iteration>,
    pub polygon: NormalizedForm,
}

/// Links a `p`-hamiltonian graph to the `p`-polygon on its vertex count.
///
/// In [`LinkMode::ThreeEc`] the input must be 3-edge-connected and each
/// twist is carried out by swaps that individually preserve
/// 3-edge-connectivity: `d` is first walked from `j` to `k`, each swap
/// exchanging it with the least chord at the next position, then `d'` is
/// walked back from `k − 1` to `j`, returning those chords.
pub fn reduce_to_polygon(g: &Graph, mode: LinkMode) -> Result<Reduction> {
    let Some(p) = regularity(g) else {
        return precondition("graph is not regular");
    };
    if !is_p_hamiltonian(g, p)? {
        return precondition("graph is not p-hamiltonian");
    }
    if mode == LinkMode::ThreeEc && !is_three_edge_connected(g) {
        return precondition("graph is not 3-edge-connected");
    }
    let delta = hamiltonian_cycle(g)?.expect("hamiltonian");
    let mut nf = normalize(g, &delta)?;
    let mut cert = LinkageCertificate::new(mode, p, LegMode::Labeled, g.clone());
    let mut iterations = Vec::new();
    while nf.epsilon() > 0 {
        let before = nf.epsilon();
        let sel = select_pair(&nf)?;
        let (j, k) = (sel.j(), sel.k());
        let target = twist(&sel.labeling, sel.d.edge, j, sel.d_prime.edge, k)?;
        let after = target.epsilon();
        if after >= before {
            return internal(format!("ε did not drop ({before} → {after})"));
        }
        let (out, steps) = match mode {
            LinkMode::Plain => factor_twist(&sel.labeling, sel.d.edge, j, sel.d_prime.edge, k)?,
            LinkMode::ThreeEc => three_ec_schedule(&sel)?,
        };
        if out.base() != target.base() {
            return internal("swap schedule does not realize the twist");
        }
        iterations.push(Iteration {
            epsilon_before: before,
            epsilon_after: after,
            j,
            k,
            l: sel.l(),
            swaps: steps.len(),
        });
        for s in steps {
            cert.push(s)?;
        }
        nf = normalize(out.base(), &out.cycle())?;
    }
    Ok(Reduction {
        certificate: cert,
        iterations,
        polygon: nf,
    })
}

fn three_ec_schedule(sel: &PairSelection) -> Result<(NormalizedForm, Vec<StrongLinkStep>)> {
    let (j, k) = (sel.j(), sel.k());
    let (d, dp) = (sel.d.edge, sel.d_prime.edge);
    let mut cur = sel.labeling.clone();
    let mut steps = Vec::new();
    // Chord moved from h + 1 to h while d walks from j to k.
    let mut carried: Vec<(usize, EdgeId)> = Vec::new();
    for h in j..k {
        let c = if h + 1 == k {
            dp
        } else {
            cur.chords_at(h + 1)
                .into_iter()
                .filter(|c| c.edge != d && c.edge != dp)
                .min_by_key(|c| (if c.i == h + 1 { c.j } else { c.i }, c.edge))
                .map(|c| c.edge)
                .ok_or_else(|| crate::error::Error::Internal(format!("no chord at {}", h + 1)))?
        };
        let t = twist_3ec(&cur, d, h, c, h + 1)?;
        steps.push(t.step);
        cur = t.form;
        if h + 1 < k {
            carried.push((h, c));
        }
    }
    for &(h, c) in carried.iter().rev() {
        let t = twist_3ec(&cur, dp, h + 1, c, h)?;
        steps.push(t.step);
        cur = t.form;
    }
    Ok((cur, steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::linkage::verify_certificate;
    use crate::normal_form::build_polygon;

    #[test]
    fn k4_is_already_a_polygon() {
        let r = reduce_to_polygon(&families::k4(), LinkMode::ThreeEc).unwrap();
        assert!(r.certificate.is_empty());
    }

    #[test]
    fn prism_reduces_to_k33() {
        for mode in [LinkMode::Plain, LinkMode::ThreeEc] {
            let r = reduce_to_polygon(&families::prism(), mode).unwrap();
            assert_eq!(r.polygon.epsilon(), 0);
            assert!(crate::canon::graphs_isomorphic(
                r.certificate.end(),
                &build_polygon(3, 6).unwrap(),
                LegMode::Labeled
            )
            .is_some());
            assert!(verify_certificate(&r.certificate, 3, mode).valid);
            for it in &r.iterations {
                assert!(it.epsilon_before >= it.epsilon_after + 2);
            }
        }
    }
}
