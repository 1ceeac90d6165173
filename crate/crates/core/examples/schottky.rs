//! Codimension-one connectivity of the 3-edge-connected locus for small
//! genus.
//!
//! ```text
//! cargo run --release --example schottky
//! ```

use tropolink::moduli::{build_poset, check_schottky_codim1, Locus};

fn main() -> tropolink::Result<()> {
    for g in 2..=4 {
        let poset = build_poset(g, 0, Locus::ThreeEc)?;
        let report = check_schottky_codim1(g)?;
        println!(
            "g={g}: {} strata, {} maximal, top dimension {} (3g-3 = {}), pure: {}, connected: {}",
            poset.strata.len(),
            poset.maximal().len(),
            report.top_dimension,
            3 * g - 3,
            report.pure_dimensional,
            report.connected
        );
    }
    Ok(())
}
