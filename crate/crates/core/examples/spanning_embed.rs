//! Spanning embedding of a graph into a tournament up to a horizon.
//!
//! cargo run --example spanning_embed -- [graph] [tournament] [horizon]
//! graph: anti-path | out-stars | forest; tournament: omega | omega-star | a seed

use tourlab::base::{PresentedGraph, TournamentOracle};
use tourlab::embedding::{auto_oracle, spanning_embed};

fn main() -> tourlab::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let g = match args.first().map(String::as_str).unwrap_or("forest") {
        "anti-path" => PresentedGraph::anti_directed_path(),
        "out-stars" => PresentedGraph::out_stars(),
        _ => PresentedGraph::interleaved_forest(),
    };
    let k = match args.get(1).map(String::as_str).unwrap_or("7") {
        "omega" => TournamentOracle::transitive_omega(),
        "omega-star" => TournamentOracle::transitive_omega_star(),
        s => TournamentOracle::seeded_random(s.parse().unwrap_or(7)),
    };
    let horizon = args.get(2).and_then(|h| h.parse().ok()).unwrap_or(30);

    let oracle = auto_oracle(&k)?;
    let run = spanning_embed(&g, &k, oracle.as_ref(), horizon)?;
    for u in 0..horizon {
        let v = run.map.preimage(u).expect("covered");
        println!("u{u:<3} <- {} vertex {v}", g.name());
    }
    println!(
        "covered={} valid={} conform={} engines={} finite components={}",
        run.covered,
        run.valid,
        run.cells_conform,
        run.engines.len(),
        run.finite_components
    );
    Ok(())
}
