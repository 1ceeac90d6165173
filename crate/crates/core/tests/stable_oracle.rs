//! Stable graph enumeration against a brute-force count over multiplicity
//! matrices, weights and leg placements.

use std::collections::BTreeSet;

use tropolink::atlas::enumerate_stable;
use tropolink::moduli::{build_poset, Locus};

/// Weights, upper-triangular multiplicities (loops on the diagonal), leg
/// vertex per label.
type Key = (Vec<u32>, Vec<usize>, Vec<usize>);

fn key(n: usize, w: &[u32], mult: &[Vec<usize>], legs: &[usize]) -> Key {
    let mut best: Option<Key> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        let mut inv = vec![0; n];
        for (i, &x) in p.iter().enumerate() {
            inv[x] = i;
        }
        let kw: Vec<u32> = (0..n).map(|i| w[p[i]]).collect();
        let mut km = Vec::new();
        for i in 0..n {
            for j in i..n {
                km.push(mult[p[i].min(p[j])][p[i].max(p[j])]);
            }
        }
        let kl: Vec<usize> = legs.iter().map(|&v| inv[v]).collect();
        let k = (kw, km, kl);
        if best.as_ref().is_none_or(|b| k < *b) {
            best = Some(k);
        }
    });
    best.expect("at least one permutation")
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

fn connected(n: usize, mult: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for u in 0..n {
            if !seen[u] && mult[v.min(u)][v.max(u)] > 0 {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    seen.iter().all(|&s| s)
}

fn brute_force(g: usize, n: usize) -> BTreeSet<Key> {
    let mut out = BTreeSet::new();
    for v in 1..=2 * g + n - 2 {
        let slots: Vec<(usize, usize)> = (0..v).flat_map(|i| (i..v).map(move |j| (i, j))).collect();
        let mut weights = vec![0u32; v];
        loop {
            let total: usize = weights.iter().map(|&x| x as usize).sum();
            if total <= g && g - total + v >= 1 {
                let edges = g - total + v - 1;
                let mut counts = vec![0usize; slots.len()];
                multisets(&mut counts, 0, edges, &mut |counts| {
                    let mut mult = vec![vec![0; v]; v];
                    for (s, &c) in slots.iter().zip(counts) {
                        mult[s.0][s.1] = c;
                    }
                    if !connected(v, &mult) {
                        return;
                    }
                    let mut legs = vec![0usize; n];
                    loop {
                        let stable = (0..v).all(|x| {
                            let val: usize = (0..v)
                                .map(|y| mult[x.min(y)][x.max(y)] * if x == y { 2 } else { 1 })
                                .sum::<usize>()
                                + legs.iter().filter(|&&l| l == x).count();
                            2 * weights[x] as usize + val > 2
                        });
                        if stable {
                            out.insert(key(v, &weights, &mult, &legs));
                        }
                        if !odometer(&mut legs, v) {
                            break;
                        }
                    }
                });
            }
            if !odometer_u32(&mut weights, g as u32 + 1) {
                break;
            }
        }
    }
    out
}

fn multisets(counts: &mut Vec<usize>, i: usize, left: usize, f: &mut dyn FnMut(&[usize])) {
    if i + 1 == counts.len() {
        counts[i] = left;
        f(counts);
        counts[i] = 0;
        return;
    }
    for c in 0..=left {
        counts[i] = c;
        multisets(counts, i + 1, left - c, f);
    }
    counts[i] = 0;
}

fn odometer(d: &mut [usize], base: usize) -> bool {
    for x in d.iter_mut() {
        *x += 1;
        if *x < base {
            return true;
        }
        *x = 0;
    }
    false
}

fn odometer_u32(d: &mut [u32], base: u32) -> bool {
    for x in d.iter_mut() {
        *x += 1;
        if *x < base {
            return true;
        }
        *x = 0;
    }
    false
}

fn crate_keys(g: usize, n: u32) -> BTreeSet<Key> {
    enumerate_stable(g, n)
        .unwrap()
        .iter()
        .map(|wg| {
            let gr = wg.graph();
            let v = gr.vertex_count();
            let mut mult = vec![vec![0; v]; v];
            for e in gr.edges() {
                let (a, b) = gr.edge_endpoints(e);
                mult[a.0.min(b.0)][a.0.max(b.0)] += 1;
            }
            let legs: Vec<usize> = (1..=n)
                .map(|l| gr.endpoint(gr.leg_with_label(l).expect("label present")).0)
                .collect();
            key(v, wg.weights(), &mult, &legs)
        })
        .collect()
}

#[test]
fn stable_types_match_brute_force() {
    for (g, n) in [
        (0, 3),
        (0, 4),
        (0, 5),
        (1, 1),
        (1, 2),
        (1, 3),
        (2, 0),
        (2, 1),
        (2, 2),
        (3, 0),
    ] {
        let expected = brute_force(g, n);
        let got = crate_keys(g, n as u32);
        assert_eq!(
            got.len(),
            enumerate_stable(g, n as u32).unwrap().len(),
            "duplicates at ({g},{n})"
        );
        assert_eq!(got, expected, "stable types of genus {g} with {n} legs");
        let poset = build_poset(g, n as u32, Locus::All).unwrap();
        assert_eq!(poset.strata.len(), expected.len());
    }
}

#[test]
fn pure_locus_is_the_zero_weight_part() {
    for (g, n) in [(1, 2), (2, 0), (2, 1), (3, 0)] {
        let expected = brute_force(g, n)
            .into_iter()
            .filter(|k| k.0.iter().all(|&w| w == 0))
            .count();
        assert_eq!(
            build_poset(g, n as u32, Locus::Pure).unwrap().strata.len(),
            expected
        );
    }
}
