#![allow(dead_code)]

use rand::Rng;
use tropolink::graph::{Graph, WeightedGraph};

/// Connected multigraph on `1..=max_vertices` vertices: a random tree plus
/// extra edges (loops allowed) and a few labeled legs.
pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize) -> Graph {
    let n = rng.gen_range(1..=max_vertices);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for _ in 0..rng.gen_range(0..=n + 2) {
        edges.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    let legs: Vec<(usize, u32)> = (1..=rng.gen_range(0..=3u32))
        .map(|l| (rng.gen_range(0..n), l))
        .collect();
    Graph::from_edges(n, &edges, &legs).expect("well-formed")
}

pub fn random_weighted<R: Rng>(rng: &mut R, max_vertices: usize) -> WeightedGraph {
    let g = random_graph(rng, max_vertices);
    let w = (0..g.vertex_count()).map(|_| rng.gen_range(0..3)).collect();
    WeightedGraph::new(g, w).expect("one weight per vertex")
}

/// `|E| − |V| + #components` of the graph on `n` vertices with the given
/// edge list, by plain flood fill.
pub fn betti(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut comps = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        comps += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
    }
    edges.len() + comps - n
}

pub fn edge_list(g: &Graph) -> Vec<(usize, usize)> {
    g.edges()
        .map(|e| {
            let (a, b) = g.edge_endpoints(e);
            (a.0, b.0)
        })
        .collect()
}

/// Prints the criterion's verdict and fails the test on any problem.
pub fn report(n: usize, title: &str, problems: &[String]) {
    if problems.is_empty() {
        println!("PASS criterion {n}: {title}");
    } else {
        println!("FAIL criterion {n}: {title}");
        for p in problems.iter().take(20) {
            println!("  {p}");
        }
        panic!("criterion {n} failed with {} problem(s)", problems.len());
    }
}
