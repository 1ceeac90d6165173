//! Links 3-regular graphs with legs, in labeled and unlabeled leg modes.
//!
//! ```text
//! cargo run --release --example legged_linkage
//! ```

use tropolink::atlas::{enumerate_legged, Filter};
use tropolink::canon::LegMode;
use tropolink::linkage::{link_with_legs, verify_certificate, LinkMode};

fn main() -> tropolink::Result<()> {
    for (g, n) in [(1, 2), (2, 1), (2, 2)] {
        for mode in [LegMode::Labeled, LegMode::Unlabeled] {
            let classes = enumerate_legged(3, g, n, mode, Filter::All)?;
            let mut steps = 0;
            let mut valid = 0;
            let mut pairs = 0;
            for i in 0..classes.len() {
                for j in i + 1..classes.len() {
                    let cert = link_with_legs(&classes[i], &classes[j], mode)?;
                    steps += cert.len();
                    pairs += 1;
                    if verify_certificate(&cert, 3, LinkMode::Plain).valid {
                        valid += 1;
                    }
                }
            }
            println!(
                "g={g} n={n} {mode:?}: {} classes, {valid}/{pairs} pairs verified, {steps} steps in total",
                classes.len()
            );
        }
    }
    Ok(())
}
