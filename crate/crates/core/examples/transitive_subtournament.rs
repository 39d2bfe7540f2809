//! Pulls a transitive subtournament of order t out of 2^(t-1) vertices of a
//! random tournament, then shows the pair colouring behind it.
//!
//! cargo run --example transitive_subtournament -- [t] [seed]

use tourlab::base::TournamentOracle;
use tourlab::embedding::{find_transitive_subtournament, tournament_to_coloring, Color};

fn main() -> tourlab::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let t = args.first().copied().unwrap_or(6) as usize;
    let seed = args.get(1).copied().unwrap_or(1);

    let k = TournamentOracle::seeded_random(seed);
    let pool: Vec<usize> = (0..1 << (t - 1)).collect();
    let w = find_transitive_subtournament(&k, &pool, t)?;
    println!("{k}: transitive order {t} from a pool of {}: {w:?}", pool.len());

    let phi: Vec<usize> = (0..w.len()).collect();
    let c = tournament_to_coloring(&k, &w, &phi)?;
    let all: Vec<usize> = (0..w.len()).collect();
    println!("monochromatic red: {}", c.is_monochromatic(&all, Color::Red));
    Ok(())
}
