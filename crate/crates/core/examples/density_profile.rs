//! Forward-density profiles of the built-in tournament families.
//!
//! cargo run --release --example density_profile -- [nmax]

use tourlab::base::TournamentOracle;
use tourlab::density::density_profile;

fn main() -> tourlab::Result<()> {
    let nmax = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(40_320);
    for k in [
        TournamentOracle::transitive_omega(),
        TournamentOracle::factorial_block(),
        TournamentOracle::exponential_threshold(),
        TournamentOracle::seeded_random(1),
    ] {
        // the random family is scanned pair by pair, so keep it short
        let n = if matches!(k.family(), tourlab::base::Family::SeededRandom(_)) { nmax.min(3000) } else { nmax };
        let p = density_profile(&k, n, 1)?;
        let min = p.min_in(n as u64 / 8, n as u64).unwrap();
        let last = p.samples.last().unwrap();
        println!(
            "{:24} d(n={})={:.6}  min over [{}, {}] {:.6} at {}",
            k.name(),
            last.n,
            last.to_f64(),
            n / 8,
            n,
            min.to_f64(),
            min.n
        );
    }
    Ok(())
}
