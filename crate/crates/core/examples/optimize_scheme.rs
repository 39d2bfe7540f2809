//! Searches the block-scheme catalogue for a high minimum inversion density
//! on a window, and compares it with the factorial scheme.
//!
//! cargo run --release --example optimize_scheme -- [lo] [hi]

use std::time::Instant;

use tourlab::density::{catalogue, evaluate_scheme, factorial_scheme, optimize_scheme};

fn main() -> tourlab::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let lo = args.first().copied().unwrap_or(1_000);
    let hi = args.get(1).copied().unwrap_or(1_000_000);

    let start = Instant::now();
    let fact = evaluate_scheme(&factorial_scheme(), (lo, hi));
    println!("factorial      min={:.6} at n={}", fact.to_f64(), fact.n);

    let (scheme, report) = optimize_scheme(&catalogue(), hi, (lo, hi))?;
    println!("optimized      min={:.6} at n={}", report.minimum.to_f64(), report.minimum.n);
    println!("scheme         {scheme}");
    println!("{report}");
    println!("elapsed        {:.1?}", start.elapsed());
    Ok(())
}
