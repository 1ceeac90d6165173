//! Writes a certificate as JSON, reads it back and shows that a single
//! corrupted witness entry is caught.
//!
//! ```text
//! cargo run --release --example certificate_io
//! ```

use tropolink::families::{dumbbell, theta};
use tropolink::linkage::{link, verify_certificate, LinkMode, LinkageCertificate};

fn main() -> tropolink::Result<()> {
    let cert = link(&theta(), &dumbbell(), LinkMode::Plain)?;
    let json = cert.to_json();
    println!("{json}");

    let back = LinkageCertificate::from_json(&json)?;
    assert_eq!(back.to_json(), json);
    println!(
        "round trip identical; valid: {}",
        verify_certificate(&back, 3, LinkMode::Plain).valid
    );

    let mut bad = back.clone();
    let step = &mut bad.steps[0];
    let keys: Vec<_> = step.witness.edge_map.keys().copied().collect();
    let target = step.witness.edge_map[&keys[1]];
    step.witness.edge_map.insert(keys[0], target);
    let report = verify_certificate(&bad, 3, LinkMode::Plain);
    println!(
        "corrupted: {}",
        serde_json::to_string(&report).expect("serializable")
    );
    println!(
        "as 3ec: {:?}",
        verify_certificate(&back, 3, LinkMode::ThreeEc).violation
    );
    Ok(())
}
