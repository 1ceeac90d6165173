//! Stratification posets of tropical moduli spaces and their
//! codimension-one connectivity.
//!
//! ```text
//! cargo run --release --example moduli_posets
//! ```

use tropolink::moduli::{build_poset, connected_through_codim_one, Locus};

fn main() -> tropolink::Result<()> {
    for (g, n) in [(0, 4), (1, 1), (1, 2), (2, 0), (2, 1), (3, 0)] {
        for locus in [Locus::All, Locus::Pure] {
            let poset = build_poset(g, n, locus)?;
            let report = connected_through_codim_one(&poset)?;
            println!(
                "M_{g},{n} {locus:<4}: {:>3} strata, profile {:?}, connected through codim 1: {}",
                poset.strata.len(),
                poset.dimension_profile(),
                report.connected
            );
        }
    }
    let poset = build_poset(3, 0, Locus::PRegular(4))?;
    println!(
        "closure of 4-regular genus 3 types: {} strata",
        poset.strata.len()
    );
    print!("{}", build_poset(2, 0, Locus::All)?.to_dot());
    Ok(())
}
