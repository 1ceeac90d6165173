//! Counts p-regular multigraphs by genus and prints their strong-link move
//! graphs.
//!
//! ```text
//! cargo run --release --example enumerate_classes
//! ```

use tropolink::atlas::{enumerate_p_regular, move_graph, Filter};
use tropolink::canon::LegMode;

fn main() -> tropolink::Result<()> {
    println!(
        "{:>3} {:>3} {:>8} {:>8} {:>10}",
        "p", "b", "classes", "3ec", "connected"
    );
    for (p, b) in [
        (3, 2),
        (3, 3),
        (3, 4),
        (3, 5),
        (4, 2),
        (4, 3),
        (4, 4),
        (5, 4),
    ] {
        let all = enumerate_p_regular(p, b, Filter::All)?;
        let tec = enumerate_p_regular(p, b, Filter::ThreeEdgeConnected)?;
        let moves = move_graph(&all, LegMode::Labeled, false);
        println!(
            "{p:>3} {b:>3} {:>8} {:>8} {:>10}",
            all.len(),
            tec.len(),
            moves.is_connected()
        );
    }

    let classes = enumerate_p_regular(3, 3, Filter::All)?;
    print!(
        "{}",
        move_graph(&classes, LegMode::Labeled, false).to_dot("cubic_genus_3")
    );
    Ok(())
}
