//! The ±- and ∓-partitions of a few graphs, checked against A1–A4.
//!
//! cargo run --example partition

use tourlab::base::{Digraph, PresentedGraph, Sign};
use tourlab::embedding::{check_axioms, pm_partition_prefix};

fn main() -> tourlab::Result<()> {
    for g in [
        PresentedGraph::anti_directed_path(),
        PresentedGraph::interleaved_forest(),
        PresentedGraph::random_layered(2),
    ] {
        for flavor in [Sign::Plus, Sign::Minus] {
            // a + partition starts at a source, a - partition at a sink
            let v = (0..).find(|&v| g.neighbors(v, flavor.opposite()).is_empty()).unwrap();
            let p = pm_partition_prefix(&g, v, flavor, 10_000, 8)?;
            println!("{} from {v} ({flavor}), axioms {:?}", g.name(), check_axioms(&g, &p));
            for (i, cell) in p.cells.iter().enumerate() {
                println!("  C{} [{}] {cell:?}", i + 1, p.cell_type(i + 1));
            }
        }
    }
    Ok(())
}
