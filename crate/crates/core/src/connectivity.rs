//! Regularity, small edge-connectivity and cycle search.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::util::{combinations, DisjointSet};

/// Node budget of the default cycle search.
pub const DEFAULT_CYCLE_BUDGET: u64 = 200_000_000;

/// A cycle `v₁ e₁ v₂ … v_k e_k v₁`, where `eᵢ` joins `vᵢ` and `vᵢ₊₁`.
///
/// Length 1 is a loop, length 2 a pair of parallel edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cycle {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_valid(&self, g: &Graph) -> bool {
        let k = self.vertices.len();
        if k == 0 || self.edges.len() != k {
            return false;
        }
        let mut vs = self.vertices.clone();
        vs.sort();
        vs.dedup();
        let mut es = self.edges.clone();
        es.sort();
        es.dedup();
        if vs.len() != k || es.len() != k {
            return false;
        }
        (0..k).all(|i| {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % k]);
            let e = self.edges[i];
            e.0 < g.edge_count() && {
                let (x, y) = g.edge_endpoints(e);
                (x == a && y == b) || (x == b && y == a)
            }
        })
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }
}

/// Every vertex has valency `p`, legs included.
pub fn is_p_regular(g: &Graph, p: usize) -> bool {
    g.vertices().all(|v| g.valency(v) == p)
}

/// The common valency, if the graph is regular.
pub fn regularity(g: &Graph) -> Option<usize> {
    let p = g.valency(VertexId(0));
    is_p_regular(g, p).then_some(p)
}

fn connected_without(g: &Graph, removed: &[EdgeId]) -> bool {
    let mut ds = DisjointSet::new(g.vertex_count());
    for e in g.edges() {
        if !removed.contains(&e) {
            let (a, b) = g.edge_endpoints(e);
            ds.union(a.0, b.0);
        }
    }
    ds.components() == 1
}

/// Largest `k ≤ cap` such that removing fewer than `k` edges never
/// disconnects `g`, found by trying every removal set.
pub fn edge_connectivity_capped(g: &Graph, cap: usize) -> usize {
    let m = g.edge_count();
    for k in 0..cap {
        for set in combinations(m, k) {
            let removed: Vec<EdgeId> = set.into_iter().map(EdgeId).collect();
            if !connected_without(g, &removed) {
                return k;
            }
        }
    }
    cap
}

pub fn is_three_edge_connected(g: &Graph) -> bool {
    edge_connectivity_capped(g, 3) == 3
}

/// For every edge `e` there are cycles `Δ₁ ≠ Δ₂` with `E(Δ₁) ∩ E(Δ₂) = {e}`.
///
/// A loop lies on one cycle only. For a non-loop edge `uv` the two cycles
/// amount to two edge-disjoint `u`–`v` paths in `g − e`, which exist unless
/// one further edge separates `u` from `v`.
pub fn two_cycle_criterion(g: &Graph) -> bool {
    if g.total_loops() > 0 {
        return false;
    }
    g.edges().all(|e| {
        let (u, v) = g.edge_endpoints(e);
        g.edges().filter(|&f| f != e).all(|f| {
            let mut ds = DisjointSet::new(g.vertex_count());
            for x in g.edges() {
                if x != e && x != f {
                    let (a, b) = g.edge_endpoints(x);
                    ds.union(a.0, b.0);
                }
            }
            ds.find(u.0) == ds.find(v.0)
        }) && {
            // `g − e` must connect u and v at all (f ranges over nothing when |E| = 1).
            let mut ds = DisjointSet::new(g.vertex_count());
            for x in g.edges().filter(|&x| x != e) {
                let (a, b) = g.edge_endpoints(x);
                ds.union(a.0, b.0);
            }
            ds.find(u.0) == ds.find(v.0)
        }
    })
}

pub fn longest_cycle(g: &Graph) -> Result<Option<Cycle>> {
    longest_cycle_with_budget(g, DEFAULT_CYCLE_BUDGET)
}

/// A cycle of maximum length, the lexicographically least vertex sequence
/// among them (started at its smallest vertex, oriented so the second
/// vertex is smaller than the last, smallest edge ids between consecutive
/// vertices).
pub fn longest_cycle_with_budget(g: &Graph, budget: u64) -> Result<Option<Cycle>> {
    let n = g.vertex_count();
    let mult = g.multiplicity_matrix();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|v| (0..n).filter(|&u| u != v && mult[v][u] > 0).collect())
        .collect();

    let mut best: Option<Vec<usize>> = None;
    let mut nodes = 0u64;
    for s in 0..n {
        let best_len = best.as_ref().map_or(0, |b| b.len());
        if n - s <= best_len || best_len == n {
            break;
        }
        let mut path = vec![s];
        let mut on_path = vec![false; n];
        on_path[s] = true;
        dfs(
            &adj,
            s,
            &mut path,
            &mut on_path,
            &mut best,
            &mut nodes,
            budget,
        )?;
    }
    if let Some(seq) = best {
        let vertices: Vec<VertexId> = seq.iter().map(|&v| VertexId(v)).collect();
        let k = seq.len();
        let edges = (0..k)
            .map(|i| g.edges_between(vertices[i], vertices[(i + 1) % k])[0])
            .collect();
        return Ok(Some(Cycle { vertices, edges }));
    }
    // No cycle of length ≥ 3: parallel pairs, then loops.
    for u in 0..n {
        for v in u + 1..n {
            if mult[u][v] >= 2 {
                let es = g.edges_between(VertexId(u), VertexId(v));
                return Ok(Some(Cycle {
                    vertices: vec![VertexId(u), VertexId(v)],
                    edges: vec![es[0], es[1]],
                }));
            }
        }
    }
    for v in 0..n {
        if mult[v][v] > 0 {
            let e = g.edges_between(VertexId(v), VertexId(v))[0];
            return Ok(Some(Cycle {
                vertices: vec![VertexId(v)],
                edges: vec![e],
            }));
        }
    }
    Ok(None)
}

fn dfs(
    adj: &[Vec<usize>],
    s: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    best: &mut Option<Vec<usize>>,
    nodes: &mut u64,
    budget: u64,
) -> Result<bool> {
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::BudgetExceeded(budget));
    }
    let n = adj.len();
    let cur = *path.last().unwrap();
    if path.len() >= 3 && path[1] < cur && adj[cur].contains(&s) {
        let better = match best {
            None => true,
            Some(b) => path.len() > b.len(),
        };
        if better {
            *best = Some(path.clone());
            if path.len() == n {
                return Ok(true);
            }
        }
    }
    for &u in &adj[cur] {
        if u > s && !on_path[u] {
            on_path[u] = true;
            path.push(u);
            let done = dfs(adj, s, path, on_path, best, nodes, budget)?;
            path.pop();
            on_path[u] = false;
            if done {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// A hamiltonian cycle; graphs with fewer than two vertices have none.
pub fn hamiltonian_cycle(g: &Graph) -> Result<Option<Cycle>> {
    if g.vertex_count() < 2 {
        return Ok(None);
    }
    Ok(longest_cycle(g)?.filter(|c| c.len() == g.vertex_count()))
}

pub fn is_hamiltonian(g: &Graph) -> Result<bool> {
    Ok(hamiltonian_cycle(g)?.is_some())
}

/// `p`-regular, loop-free and hamiltonian.
pub fn is_p_hamiltonian(g: &Graph, p: usize) -> Result<bool> {
    Ok(is_p_regular(g, p) && g.total_loops() == 0 && is_hamiltonian(g)?)
}
