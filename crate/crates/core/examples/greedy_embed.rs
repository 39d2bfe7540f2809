//! Greedy embedding of an acyclic locally finite graph into K_ω and K_ω*.
//!
//! cargo run --example greedy_embed -- [seed] [horizon]

use tourlab::base::{Digraph, PresentedGraph, TournamentOracle};
use tourlab::embedding::{greedy_embed_transitive, TransitiveTarget};

fn main() -> tourlab::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let seed = args.first().copied().unwrap_or(0);
    let horizon = args.get(1).copied().unwrap_or(20) as usize;

    let g = PresentedGraph::random_layered(seed);
    for (target, k) in [
        (TransitiveTarget::Omega, TournamentOracle::transitive_omega()),
        (TransitiveTarget::OmegaStar, TournamentOracle::transitive_omega_star()),
    ] {
        let map = greedy_embed_transitive(&g, target, horizon)?;
        let mut by_position: Vec<(usize, usize)> = map.iter().map(|(v, p)| (p, v)).collect();
        by_position.sort();
        let order: Vec<usize> = by_position.iter().map(|&(_, v)| v).collect();
        println!("{target:?}: valid={} order {order:?}", map.is_valid(&g, &k)?);
    }
    println!("out-neighbours of 0: {:?}", g.out_neighbors(0));
    Ok(())
}
