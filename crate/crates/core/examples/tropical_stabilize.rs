//! Stabilizes a tropical curve with trees and subdivided edges hanging off
//! a weighted core.
//!
//! ```text
//! cargo run --release --example tropical_stabilize
//! ```

use std::collections::BTreeMap;

use tropolink::graph::{Cell, EdgeId, Graph, WeightedGraph};
use tropolink::io::GraphDoc;
use tropolink::tropical::{stabilize, Length, TropicalCurve};

fn main() -> tropolink::Result<()> {
    // A loop at vertex 0 subdivided by vertex 1, a weight-1 vertex 2, and a
    // dangling path 0-3-4.
    let g = Graph::from_edges(5, &[(0, 1), (1, 0), (0, 2), (0, 3), (3, 4)], &[(2, 1)])?;
    let wg = WeightedGraph::new(g.clone(), vec![0, 0, 1, 0, 0])?;
    let mut lengths = BTreeMap::new();
    for e in g.edges() {
        let len = if e == EdgeId(4) {
            Length::Infinite
        } else {
            Length::Finite(1.5)
        };
        lengths.insert(Cell::Edge(e), len);
    }
    for l in g.legs() {
        lengths.insert(Cell::Leg(l), Length::Infinite);
    }
    let tc = TropicalCurve::new(wg, lengths)?;
    println!("input: genus {}, stable: {}", tc.genus(), tc.is_stable());
    let s = stabilize(&tc)?;
    println!(
        "stable model: {} vertices, {} edges, genus {}",
        s.wgraph().graph().vertex_count(),
        s.wgraph().graph().edge_count(),
        s.genus()
    );
    println!("{}", GraphDoc::from_tropical(&s).to_json());
    Ok(())
}
