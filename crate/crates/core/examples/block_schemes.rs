//! Window inversion densities of every catalogue pattern at a few ratios.
//!
//! cargo run --release --example block_schemes -- [lo] [hi]

use tourlab::density::{catalogue, evaluate_robust, RATIO_GRID};

fn main() -> tourlab::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let lo = args.first().copied().unwrap_or(1_000);
    let hi = args.get(1).copied().unwrap_or(100_000);

    for t in catalogue() {
        let ratios: Vec<f64> = if t.uses_ratio() { RATIO_GRID.to_vec() } else { vec![f64::NAN] };
        for r in ratios {
            let params = if t.uses_ratio() { t.at_ratio(r) } else { t.params.clone() };
            // worst of 8 grid alignments
            let (_, min) = evaluate_robust(&params, (lo, hi), 8)?;
            println!("{:18} r={:<4} min={:.6} at n={}", t.name, r, min.to_f64(), min.n);
        }
    }
    Ok(())
}
