//! Small named graphs used throughout the examples and tests.

use crate::graph::Graph;

/// Two vertices joined by three parallel edges.
pub fn theta() -> Graph {
    Graph::from_edges(2, &[(0, 1), (0, 1), (0, 1)], &[]).expect("valid")
}

/// Two vertices, each with a loop, joined by a bridge.
pub fn dumbbell() -> Graph {
    Graph::from_edges(2, &[(0, 0), (0, 1), (1, 1)], &[]).expect("valid")
}

pub fn k4() -> Graph {
    complete(4)
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    Graph::from_edges(n, &edges, &[]).expect("valid")
}

/// `K_{3,3}`.
pub fn k33() -> Graph {
    let mut edges = Vec::new();
    for i in 0..3 {
        for j in 3..6 {
            edges.push((i, j));
        }
    }
    Graph::from_edges(6, &edges, &[]).expect("valid")
}

/// Triangular prism: two triangles joined by a perfect matching.
pub fn prism() -> Graph {
    let edges = [
        (0, 1),
        (1, 2),
        (2, 0),
        (3, 4),
        (4, 5),
        (5, 3),
        (0, 3),
        (1, 4),
        (2, 5),
    ];
    Graph::from_edges(6, &edges, &[]).expect("valid")
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i, i+5`.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
    }
    for i in 0..5 {
        edges.push((i, i + 5));
    }
    for i in 0..5 {
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &edges, &[]).expect("valid")
}

/// The cycle `C_n`; `C_1` is a single loop and `C_2` a double edge.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 1);
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges, &[]).expect("valid")
}

/// One vertex with `loops` loops and legs labelled `1..=legs`.
pub fn rose(loops: usize, legs: u32) -> Graph {
    let edges = vec![(0, 0); loops];
    let legs: Vec<(usize, u32)> = (1..=legs).map(|l| (0, l)).collect();
    Graph::from_edges(1, &edges, &legs).expect("valid")
}
