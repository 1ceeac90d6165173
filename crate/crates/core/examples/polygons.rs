//! Builds p-polygons and checks that they are the only configurations
//! without short chords.
//!
//! ```text
//! cargo run --release --example polygons
//! ```

use tropolink::atlas::enumerate_hamiltonian_normal_forms;
use tropolink::canon::{graphs_isomorphic, LegMode};
use tropolink::connectivity::is_three_edge_connected;
use tropolink::normal_form::{build_polygon, polygon_form};

fn main() -> tropolink::Result<()> {
    for (p, gamma) in [(3, 4), (3, 6), (3, 8), (4, 5), (4, 6), (5, 4), (6, 5)] {
        let g = build_polygon(p, gamma)?;
        let nf = polygon_form(p, gamma)?;
        let chords: Vec<String> = nf
            .chords()
            .iter()
            .map(|c| format!("{}-{}", c.i, c.j))
            .collect();
        let flat: Vec<_> = enumerate_hamiltonian_normal_forms(p, gamma)?
            .into_iter()
            .filter(|f| f.epsilon() == 0)
            .collect();
        let unique = flat
            .iter()
            .all(|f| graphs_isomorphic(f.base(), &g, LegMode::Labeled).is_some());
        println!(
            "p={p} γ={gamma}: chords [{}], 3ec {}, {} flat configurations, all isomorphic: {unique}",
            chords.join(" "),
            is_three_edge_connected(&g),
            flat.len()
        );
    }
    match build_polygon(3, 7) {
        Ok(_) => println!("p=3 γ=7 unexpectedly built"),
        Err(e) => println!("p=3 γ=7: {e}"),
    }
    Ok(())
}
