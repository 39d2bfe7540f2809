//! Rank decomposition of a tournament prefix and the injection it induces.
//!
//! cargo run --example rank_decomposition -- [seed] [n]

use tourlab::base::TournamentOracle;
use tourlab::density::{dominance_check, forward_pair_count, inversion_count, rank_decompose};

fn main() -> tourlab::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let seed = args.first().copied().unwrap_or(3);
    let n = args.get(1).copied().unwrap_or(200) as usize;

    let k = TournamentOracle::seeded_random(seed);
    let d = rank_decompose(&k, n)?;
    println!("{k}, n={n}: {} levels", d.lambda);
    for (a, level) in d.levels().iter().enumerate().take(5) {
        println!("  level {a}: {} vertices, first {:?}", level.len(), &level[..level.len().min(8)]);
    }
    println!("invariants: {:?}", d.check(&k));
    println!("dominance: {}", dominance_check(&k, &d, n)?);
    println!(
        "forward pairs {} <= inversions {}",
        forward_pair_count(&k, n)?,
        inversion_count(&d.induced_injection, n)?
    );
    Ok(())
}
