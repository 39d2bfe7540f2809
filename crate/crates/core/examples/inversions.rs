//! Inversion counts of an injection, and the forward-edge count of its K_{f*}.
//!
//! cargo run --release --example inversions -- [n]

use std::time::Instant;

use tourlab::base::{make_ordinal_injection_tournament, InjectionSpec, OrdinalValue};
use tourlab::density::{density_profile_by_scan, inversion_count, inversion_density_profile};

fn main() -> tourlab::Result<()> {
    let n = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(1_000_000);

    // a scrambled permutation: i -> (i * 7919) mod n, when gcd(7919, n) = 1
    let f = InjectionSpec::from_table(
        (0..n).map(|i| OrdinalValue::finite((i as u64 * 7919) % n as u64)).collect(),
    );
    let start = Instant::now();
    let inv = inversion_count(&f, n)?;
    println!("I_f[{n}] = {inv} ({:.1?})", start.elapsed());

    let small = 500.min(n);
    let by_inversions = inversion_density_profile(&f, small)?;
    let by_edges = density_profile_by_scan(&make_ordinal_injection_tournament(f), small, 1)?;
    println!("first {small} vertices: profiles agree = {}", by_inversions == by_edges);
    Ok(())
}
