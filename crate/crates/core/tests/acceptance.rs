//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use common::{betti, edge_list, random_graph, random_weighted, report};
use tropolink::atlas::{
    enumerate_hamiltonian_normal_forms, enumerate_legged, enumerate_p_regular, move_graph, Filter,
};
use tropolink::canon::{graphs_isomorphic, LegMode};
use tropolink::connectivity::{
    edge_connectivity_capped, is_hamiltonian, is_p_hamiltonian, is_p_regular,
    is_three_edge_connected,
};
use tropolink::graph::{Cell, EdgeId, Graph, HalfEdgeId, VertexId};
use tropolink::linkage::{
    link, link_with_legs, reduce_to_polygon, verify_certificate, LinkMode, LinkageCertificate,
};
use tropolink::moduli::{build_poset, check_schottky_codim1, connected_through_codim_one, Locus};
use tropolink::normal_form::{build_polygon, polygon_form};
use tropolink::{families, Error};

const SIZES: [(usize, usize); 4] = [(3, 2), (3, 3), (3, 4), (4, 3)];

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

/// Links every pair of `classes` and checks the certificates; returns the
/// problems found.
fn link_all(classes: &[Graph], p: usize, mode: LinkMode, tag: &str) -> Vec<String> {
    pairs(classes.len())
        .into_par_iter()
        .filter_map(|(i, j)| {
            let cert = match link(&classes[i], &classes[j], mode) {
                Ok(c) => c,
                Err(e) => return Some(format!("{tag}: link {i}→{j} failed: {e}")),
            };
            if cert.start() != &classes[i] || cert.end() != &classes[j] {
                return Some(format!("{tag}: certificate {i}→{j} has wrong endpoints"));
            }
            let r = verify_certificate(&cert, p, mode);
            if !r.valid {
                return Some(format!(
                    "{tag}: certificate {i}→{j} rejected: {:?}",
                    r.violation
                ));
            }
            if mode == LinkMode::ThreeEc {
                if let Some(k) = cert
                    .graphs
                    .iter()
                    .position(|g| edge_connectivity_capped(g, 3) != 3)
                {
                    return Some(format!("{tag}: chain graph {k} of {i}→{j} is not 3ec"));
                }
            }
            None
        })
        .collect()
}

#[test]
fn criterion_01_linkage_exhaustive() {
    let mut problems = Vec::new();
    for (p, b) in SIZES {
        let classes = enumerate_p_regular(p, b, Filter::All).unwrap();
        println!("  (p={p}, b={b}): {} classes", classes.len());
        if classes.is_empty() {
            problems.push(format!("(p={p}, b={b}): no classes"));
        }
        let mg = move_graph(&classes, LegMode::Labeled, false);
        if !mg.is_connected() {
            problems.push(format!(
                "(p={p}, b={b}): move graph has {} components",
                mg.components().len()
            ));
        }
        problems.extend(link_all(
            &classes,
            p,
            LinkMode::Plain,
            &format!("(p={p}, b={b})"),
        ));
    }
    report(
        1,
        "strong-link move graph connected and all pairs linked",
        &problems,
    );
}

#[test]
fn criterion_02_three_linkage_exhaustive() {
    let mut problems = Vec::new();
    for (p, b) in SIZES {
        let classes = enumerate_p_regular(p, b, Filter::ThreeEdgeConnected).unwrap();
        println!("  (p={p}, b={b}): {} 3ec classes", classes.len());
        if classes.iter().any(|g| !is_three_edge_connected(g)) {
            problems.push(format!(
                "(p={p}, b={b}): filter let a non-3ec class through"
            ));
        }
        let mg = move_graph(&classes, LegMode::Labeled, true);
        if !mg.is_connected() {
            problems.push(format!(
                "(p={p}, b={b}): 3ec move graph has {} components",
                mg.components().len()
            ));
        }
        problems.extend(link_all(
            &classes,
            p,
            LinkMode::ThreeEc,
            &format!("(p={p}, b={b})"),
        ));
    }
    report(
        2,
        "3ec move graph connected and all pairs 3-linked",
        &problems,
    );
}

#[test]
fn criterion_03_petersen_end_to_end() {
    let mut problems = Vec::new();
    let petersen = families::petersen();
    let polygon = build_polygon(3, 10).unwrap();
    match link(&petersen, &polygon, LinkMode::ThreeEc) {
        Err(e) => problems.push(format!("link failed: {e}")),
        Ok(cert) => {
            let r = verify_certificate(&cert, 3, LinkMode::ThreeEc);
            if !r.valid {
                problems.push(format!("certificate rejected: {:?}", r.violation));
            }
            if cert.is_empty() {
                problems.push("certificate has no steps".into());
            } else {
                let s = cert.step(0);
                if s.left != petersen {
                    problems.push("first step does not start at the Petersen graph".into());
                }
                if !is_hamiltonian(&s.right).unwrap() {
                    problems.push("first step does not reach a hamiltonian graph".into());
                }
                let (a, _) = s.left.contract_edge(s.left_edge);
                let (b, _) = s.right.contract_edge(s.right_edge);
                if graphs_isomorphic(&a, &b, LegMode::Labeled).is_none() {
                    problems.push("first step contractions are not isomorphic".into());
                }
            }
            println!("  {} steps", cert.len());
        }
    }
    report(
        3,
        "Petersen graph 3-linked to the 3-polygon on 10 vertices",
        &problems,
    );
}

#[test]
fn criterion_04_polygon_suite() {
    let mut problems = Vec::new();
    for (p, gamma) in [(3, 4), (3, 6), (3, 8), (3, 10), (4, 6), (4, 9), (6, 5)] {
        let tag = format!("(p={p}, γ={gamma})");
        let g = match build_polygon(p, gamma) {
            Ok(g) => g,
            Err(e) => {
                problems.push(format!("{tag}: {e}"));
                continue;
            }
        };
        if !is_p_regular(&g, p) {
            problems.push(format!("{tag}: not {p}-regular"));
        }
        if g.total_loops() != 0 {
            problems.push(format!("{tag}: has loops"));
        }
        if !is_hamiltonian(&g).unwrap() {
            problems.push(format!("{tag}: not hamiltonian"));
        }
        if edge_connectivity_capped(&g, 3) != 3 {
            problems.push(format!("{tag}: not 3-edge-connected"));
        }
        if polygon_form(p, gamma).unwrap().epsilon() != 0 {
            problems.push(format!("{tag}: ε ≠ 0"));
        }
        let forms = enumerate_hamiltonian_normal_forms(p, gamma).unwrap();
        let flat: Vec<_> = forms.iter().filter(|nf| nf.epsilon() == 0).collect();
        if flat.is_empty() {
            problems.push(format!("{tag}: no configuration with ε = 0"));
        }
        let strays = flat
            .par_iter()
            .filter(|nf| graphs_isomorphic(nf.base(), &g, LegMode::Labeled).is_none())
            .count();
        if strays > 0 {
            problems.push(format!(
                "{tag}: {strays} ε = 0 configurations not isomorphic to it"
            ));
        }
        println!(
            "  {tag}: {} configurations, {} with ε = 0",
            forms.len(),
            flat.len()
        );
    }
    if build_polygon(3, 9).is_ok() {
        problems.push("odd p with odd γ was accepted".into());
    }
    report(
        4,
        "p-polygons are regular, hamiltonian, 3ec and unique",
        &problems,
    );
}

#[test]
fn criterion_05_epsilon_descent() {
    let mut problems = Vec::new();
    let mut runs = 0;
    for b in 2..=4 {
        let classes = enumerate_p_regular(3, b, Filter::All).unwrap();
        for (i, g) in classes.iter().enumerate() {
            if !is_p_hamiltonian(g, 3).unwrap() {
                continue;
            }
            let mut modes = vec![LinkMode::Plain];
            if is_three_edge_connected(g) {
                modes.push(LinkMode::ThreeEc);
            }
            for mode in modes {
                runs += 1;
                let tag = format!("(b={b}, class {i}, {mode})");
                match reduce_to_polygon(g, mode) {
                    Err(Error::Internal(m)) => problems.push(format!("{tag}: internal: {m}")),
                    Err(e) => problems.push(format!("{tag}: {e}")),
                    Ok(red) => {
                        for it in &red.iterations {
                            if it.epsilon_after >= it.epsilon_before {
                                problems.push(format!(
                                    "{tag}: ε went {} → {}",
                                    it.epsilon_before, it.epsilon_after
                                ));
                            }
                        }
                        if red.polygon.epsilon() != 0 {
                            problems.push(format!("{tag}: ended at ε = {}", red.polygon.epsilon()));
                        }
                        let r = verify_certificate(&red.certificate, 3, mode);
                        if !r.valid {
                            problems.push(format!("{tag}: rejected: {:?}", r.violation));
                        }
                    }
                }
            }
        }
    }
    println!("  {runs} reductions");
    report(
        5,
        "ε strictly decreases on every outer iteration",
        &problems,
    );
}

#[test]
fn criterion_06_legged_linkage() {
    let mut problems = Vec::new();
    for (g, n) in [(1, 2), (2, 1), (2, 2)] {
        for leg_mode in [LegMode::Labeled, LegMode::Unlabeled] {
            let classes = enumerate_legged(3, g, n, leg_mode, Filter::All).unwrap();
            println!("  (g={g}, n={n}, {leg_mode:?}): {} classes", classes.len());
            let found: Vec<String> = pairs(classes.len())
                .into_par_iter()
                .filter_map(|(i, j)| {
                    let tag = format!("(g={g}, n={n}, {leg_mode:?}) {i}→{j}");
                    match link_with_legs(&classes[i], &classes[j], leg_mode) {
                        Err(e) => Some(format!("{tag}: {e}")),
                        Ok(cert) => {
                            let r = verify_certificate(&cert, 3, LinkMode::Plain);
                            if !r.valid {
                                Some(format!("{tag}: rejected: {:?}", r.violation))
                            } else if cert.start() != &classes[i] || cert.end() != &classes[j] {
                                Some(format!("{tag}: wrong endpoints"))
                            } else {
                                None
                            }
                        }
                    }
                })
                .collect();
            problems.extend(found);
        }
    }
    report(6, "3-regular legged classes pairwise linked", &problems);
}

#[test]
fn criterion_07_moduli_posets() {
    let mut problems = Vec::new();
    let p = build_poset(2, 0, Locus::All).unwrap();
    if p.strata.len() != 7 {
        problems.push(format!("(2,0): {} strata, expected 7", p.strata.len()));
    }
    let expected = BTreeMap::from([(3, 2), (2, 2), (1, 2), (0, 1)]);
    if p.dimension_profile() != expected {
        problems.push(format!("(2,0): profile {:?}", p.dimension_profile()));
    }
    for (g, n) in [(1, 1), (1, 2), (2, 0), (2, 1), (3, 0)] {
        for locus in [Locus::All, Locus::Pure] {
            let poset = build_poset(g, n, locus).unwrap();
            let r = connected_through_codim_one(&poset).unwrap();
            println!(
                "  (g={g}, n={n}, {locus}): {} strata, {} components in codim ≤ 1",
                poset.strata.len(),
                r.components.len()
            );
            if !r.connected {
                problems.push(format!("(g={g}, n={n}, {locus}): not connected"));
            }
        }
    }
    report(
        7,
        "moduli posets connected through codimension one",
        &problems,
    );
}

#[test]
fn criterion_08_schottky() {
    let mut problems = Vec::new();
    for g in 2..=4 {
        let r = check_schottky_codim1(g).unwrap();
        let poset = build_poset(g, 0, Locus::ThreeEc).unwrap();
        println!("  g={g}: {} strata", poset.strata.len());
        if !r.connected {
            problems.push(format!("g={g}: not connected"));
        }
        if r.top_dimension != 3 * g - 3 || !r.pure_dimensional {
            problems.push(format!(
                "g={g}: top {} pure {}",
                r.top_dimension, r.pure_dimensional
            ));
        }
        if poset
            .maximal()
            .iter()
            .any(|&i| poset.strata[i].dimension != 3 * g - 3)
        {
            problems.push(format!("g={g}: a maximal stratum has the wrong dimension"));
        }
    }
    report(8, "3ec locus connected through codimension one", &problems);
}

#[test]
fn criterion_09_conservation_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut problems = Vec::new();
    for trial in 0..1000 {
        let g = random_graph(&mut rng, 12);
        let edges = edge_list(&g);
        let s: BTreeSet<EdgeId> = g.edges().filter(|_| rng.gen_bool(0.5)).collect();
        let s_edges: Vec<(usize, usize)> = s.iter().map(|e| edges[e.0]).collect();
        let (c, map) = g.contract_edges(&s.iter().copied().collect::<Vec<_>>());
        let whole = betti(g.vertex_count(), &edges);
        let quotient = betti(c.vertex_count(), &edge_list(&c));
        let kept = betti(g.vertex_count(), &s_edges);
        if whole != quotient + kept {
            problems.push(format!("trial {trial}: {whole} ≠ {quotient} + {kept}"));
        }
        let mut sum = 0;
        for vbar in 0..c.vertex_count() {
            let pre: Vec<usize> = (0..g.vertex_count())
                .filter(|&v| map.vertex_map[v] == VertexId(vbar))
                .collect();
            let local: BTreeMap<usize, usize> =
                pre.iter().enumerate().map(|(k, &v)| (v, k)).collect();
            let inner: Vec<(usize, usize)> = s_edges
                .iter()
                .filter(|(a, _)| local.contains_key(a))
                .map(|(a, b)| (local[a], local[b]))
                .collect();
            if inner.len() + 1 < pre.len() {
                problems.push(format!("trial {trial}: preimage of {vbar} is disconnected"));
            }
            sum += betti(pre.len(), &inner);
        }
        if sum != kept {
            problems.push(format!("trial {trial}: Σ b₁(preimages) = {sum} ≠ {kept}"));
        }

        let wg = random_weighted(&mut rng, 12);
        let cells: Vec<Cell> = wg
            .graph()
            .edges()
            .filter(|_| rng.gen_bool(0.5))
            .map(Cell::Edge)
            .collect();
        let (wc, _) = wg.weighted_contract(&cells).unwrap();
        let genus_of = |w: &tropolink::graph::WeightedGraph| {
            betti(w.graph().vertex_count(), &edge_list(w.graph()))
                + w.weights().iter().map(|&x| x as usize).sum::<usize>()
        };
        if genus_of(&wg) != genus_of(&wc) {
            problems.push(format!(
                "trial {trial}: genus {} became {}",
                genus_of(&wg),
                genus_of(&wc)
            ));
        }
        if wc.graph().leg_count() != wg.graph().leg_count() {
            problems.push(format!("trial {trial}: legs changed under contraction"));
        }
    }
    report(
        9,
        "contraction identities and genus conservation",
        &problems,
    );
}

/// Every single-entry corruption of `cert` that must be rejected.
fn mutations(cert: &LinkageCertificate) -> Vec<LinkageCertificate> {
    let mut out = Vec::new();
    for (i, step) in cert.steps.iter().enumerate() {
        let left = &cert.graphs[2 * i];
        let middle = &cert.graphs[2 * i + 1];
        let right = &cert.graphs[2 * i + 2];
        let with = |f: &dyn Fn(&mut tropolink::linkage::StepRecord)| {
            let mut c = cert.clone();
            f(&mut c.steps[i]);
            c
        };
        for v in 0..step.witness.vertex_map.len() {
            for t in 0..=middle.vertex_count() {
                if VertexId(t) != step.witness.vertex_map[v] {
                    out.push(with(&|s| s.witness.vertex_map[v] = VertexId(t)));
                }
            }
        }
        for (&k, &val) in &step.witness.edge_map {
            for t in 0..=left.edge_count() {
                if EdgeId(t) != val {
                    out.push(with(&|s| {
                        s.witness.edge_map.insert(k, EdgeId(t));
                    }));
                }
            }
            for t in 0..=right.edge_count() {
                if !step.witness.edge_map.contains_key(&EdgeId(t)) {
                    out.push(with(&|s| {
                        s.witness.edge_map.remove(&k);
                        s.witness.edge_map.insert(EdgeId(t), val);
                    }));
                }
            }
        }
        for (&k, &val) in &step.witness.leg_map {
            for t in 0..=left.half_edge_count() {
                if HalfEdgeId(t) != val {
                    out.push(with(&|s| {
                        s.witness.leg_map.insert(k, HalfEdgeId(t));
                    }));
                }
            }
        }
        for t in 0..=left.edge_count() {
            if EdgeId(t) != step.left_edge {
                out.push(with(&|s| s.left_edge = EdgeId(t)));
            }
        }
        for t in 0..=right.edge_count() {
            if EdgeId(t) != step.right_edge {
                out.push(with(&|s| s.right_edge = EdgeId(t)));
            }
        }
        if step.left_edge != step.right_edge {
            out.push(with(&|s| {
                std::mem::swap(&mut s.left_edge, &mut s.right_edge)
            }));
        }
    }
    out
}

#[test]
fn criterion_10_mutation_detection() {
    let mut problems = Vec::new();
    let legged = enumerate_legged(3, 1, 2, LegMode::Labeled, Filter::All).unwrap();
    let samples = vec![
        (
            "k33→prism plain",
            link(&families::k33(), &families::prism(), LinkMode::Plain).unwrap(),
            LinkMode::Plain,
        ),
        (
            "k33→prism 3ec",
            link(&families::k33(), &families::prism(), LinkMode::ThreeEc).unwrap(),
            LinkMode::ThreeEc,
        ),
        (
            "dumbbell→theta",
            link(&families::dumbbell(), &families::theta(), LinkMode::Plain).unwrap(),
            LinkMode::Plain,
        ),
        (
            "legged (1,2)",
            link_with_legs(&legged[0], &legged[legged.len() - 1], LegMode::Labeled).unwrap(),
            LinkMode::Plain,
        ),
    ];
    let mut total = 0;
    for (name, cert, mode) in &samples {
        if !verify_certificate(cert, 3, *mode).valid {
            problems.push(format!("{name}: original rejected"));
            continue;
        }
        let muts = mutations(cert);
        total += muts.len();
        let missed = muts
            .par_iter()
            .filter(|m| verify_certificate(m, 3, *mode).valid)
            .count();
        if missed > 0 {
            problems.push(format!(
                "{name}: {missed} of {} mutations accepted",
                muts.len()
            ));
        }
        let json_missed = muts
            .par_iter()
            .filter(|m| {
                LinkageCertificate::from_json(&m.to_json())
                    .map(|c| verify_certificate(&c, 3, *mode).valid)
                    .unwrap_or(false)
            })
            .count();
        if json_missed > 0 {
            problems.push(format!(
                "{name}: {json_missed} mutations accepted after JSON round trip"
            ));
        }
    }
    println!("  {total} mutations");
    report(
        10,
        "every single-entry witness or edge-id corruption is detected",
        &problems,
    );
}
