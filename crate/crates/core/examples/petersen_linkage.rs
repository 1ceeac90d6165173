//! Links the Petersen graph to the 3-polygon on ten vertices through
//! 3-edge-connected graphs only, then checks the certificate.
//!
//! ```text
//! cargo run --release --example petersen_linkage
//! ```

use tropolink::connectivity::{edge_connectivity_capped, is_hamiltonian};
use tropolink::families::petersen;
use tropolink::linkage::{link, verify_certificate, LinkMode};
use tropolink::normal_form::build_polygon;

fn main() -> tropolink::Result<()> {
    let g = petersen();
    let polygon = build_polygon(3, 10)?;
    println!(
        "Petersen: {} vertices, genus {}, hamiltonian: {}",
        g.vertex_count(),
        g.betti_number(),
        is_hamiltonian(&g)?
    );

    let cert = link(&g, &polygon, LinkMode::ThreeEc)?;
    for (i, step) in cert.iter_steps().enumerate() {
        println!(
            "step {i}: contract {} on the left, {} on the right; right side hamiltonian: {}",
            step.left_edge,
            step.right_edge,
            is_hamiltonian(&step.right)?
        );
    }
    let worst = cert
        .graphs
        .iter()
        .map(|g| edge_connectivity_capped(g, 3))
        .min()
        .unwrap_or(3);
    let report = verify_certificate(&cert, 3, LinkMode::ThreeEc);
    println!(
        "{} steps, valid: {}, least edge connectivity on the chain: {worst}",
        cert.len(),
        report.valid
    );
    Ok(())
}
