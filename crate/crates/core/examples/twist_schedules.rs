//! Reduces the prism to the 3-polygon on six vertices, once by factored
//! twists and once keeping every graph 3-edge-connected.
//!
//! ```text
//! cargo run --release --example twist_schedules
//! ```

use tropolink::connectivity::hamiltonian_cycle;
use tropolink::families::prism;
use tropolink::linkage::{reduce_to_polygon, select_pair, twist_3ec, verify_certificate, LinkMode};
use tropolink::normal_form::normalize;

fn main() -> tropolink::Result<()> {
    let g = prism();
    let nf = normalize(&g, &hamiltonian_cycle(&g)?.expect("prism is hamiltonian"))?;
    let pair = select_pair(&nf)?;
    println!(
        "ε = {}, selected d = {}-{} and d' = {}-{}",
        nf.epsilon(),
        pair.d.i,
        pair.d.j,
        pair.d_prime.i,
        pair.d_prime.j
    );

    for mode in [LinkMode::Plain, LinkMode::ThreeEc] {
        let red = reduce_to_polygon(&g, mode)?;
        println!("{mode} mode:");
        for it in &red.iterations {
            println!(
                "  j={} k={} l={}: ε {} -> {} in {} swaps",
                it.j, it.k, it.l, it.epsilon_before, it.epsilon_after, it.swaps
            );
        }
        let report = verify_certificate(&red.certificate, 3, mode);
        println!("  {} steps, valid: {}", red.certificate.len(), report.valid);
    }

    // A single 3-edge-connected twist with its certifying cycles.
    let lab = nf.labelings();
    'outer: for f in &lab {
        for a in f.chords() {
            for b in f.chords() {
                if a.edge == b.edge {
                    continue;
                }
                if let Ok(t) = twist_3ec(f, a.edge, a.j, b.edge, b.i) {
                    println!(
                        "twist_3ec: case {:?}, cycles of length {} and {}",
                        t.case,
                        t.cycles[0].len(),
                        t.cycles[1].len()
                    );
                    break 'outer;
                }
            }
        }
    }
    Ok(())
}
