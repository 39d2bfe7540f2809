use std::cmp::Ordering;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::inversions::prefix_inversion_counts;
use crate::base::{factorial_block_of, Family, OrdinalValue, TournamentOracle};
use crate::error::{Error, Result};

/// Digits after the point in the CSV density column.
pub const CSV_DIGITS: u32 = 12;

pub const CSV_HEADER: &str = "n,forward_pairs,total_pairs,density";

/// `C(n, 2)`.
pub fn binom2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// Forward pairs among the first `n` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DensitySample {
    pub n: u64,
    pub forward: u64,
    pub total: u64,
}

impl DensitySample {
    pub fn new(n: u64, forward: u64) -> Self {
        Self { n, forward, total: binom2(n) }
    }

    pub fn density(&self) -> BigRational {
        BigRational::new(BigInt::from(self.forward), BigInt::from(self.total))
    }

    /// Exact comparison of the two densities.
    pub fn cmp_density(&self, other: &Self) -> Ordering {
        let a = self.forward as u128 * other.total as u128;
        let b = other.forward as u128 * self.total as u128;
        a.cmp(&b)
    }

    /// The density truncated to [`CSV_DIGITS`] decimals.
    pub fn decimal(&self) -> String {
        let scale = 10u128.pow(CSV_DIGITS);
        let q = self.forward as u128 * scale / self.total as u128;
        format!("{}.{:0width$}", q / scale, q % scale, width = CSV_DIGITS as usize)
    }

    pub fn to_f64(&self) -> f64 {
        self.forward as f64 / self.total as f64
    }
}

/// Exact prefix densities at the sampled `n`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DensityProfile {
    pub samples: Vec<DensitySample>,
}

impl DensityProfile {
    /// Samples `n = 2, 2 + stride, …` and always `n_max`, given cumulative
    /// counts `counts[n]` for `n ≤ n_max`.
    pub fn from_counts(counts: &[u64], stride: usize) -> Self {
        let n_max = counts.len() - 1;
        let stride = stride.max(1);
        let mut samples: Vec<DensitySample> = (2..=n_max)
            .step_by(stride)
            .map(|n| DensitySample::new(n as u64, counts[n]))
            .collect();
        if samples.last().map(|s| s.n as usize) != Some(n_max) && n_max >= 2 {
            samples.push(DensitySample::new(n_max as u64, counts[n_max]));
        }
        Self { samples }
    }

    /// Smallest density among samples with `lo ≤ n ≤ hi`; the first one on ties.
    pub fn min_in(&self, lo: u64, hi: u64) -> Option<DensitySample> {
        self.samples
            .iter()
            .filter(|s| s.n >= lo && s.n <= hi)
            .copied()
            .reduce(|best, s| if s.cmp_density(&best) == Ordering::Less { s } else { best })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for s in &self.samples {
            let _ = writeln!(out, "{},{},{},{}", s.n, s.forward, s.total, s.decimal());
        }
        out
    }

    /// Parses [`DensityProfile::to_csv`] output, checking every density
    /// column against its counts.
    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        if lines.next() != Some(CSV_HEADER) {
            return Err(Error::Parse(format!("expected header `{CSV_HEADER}`")));
        }
        let mut samples = Vec::new();
        for (i, line) in lines.enumerate() {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 4 {
                return Err(Error::Parse(format!("row {}: expected 4 fields", i + 1)));
            }
            let num = |s: &str| s.parse::<u64>().map_err(|e| Error::Parse(format!("row {}: {e}", i + 1)));
            let s = DensitySample { n: num(f[0])?, forward: num(f[1])?, total: num(f[2])? };
            if s.total != binom2(s.n) || s.decimal() != f[3] {
                return Err(Error::Parse(format!("row {}: counts and density disagree", i + 1)));
            }
            samples.push(s);
        }
        Ok(Self { samples })
    }
}

/// Forward pairs `(i, j)`, `i < j < n`.
pub fn forward_pair_count(k: &TournamentOracle, n: usize) -> Result<u64> {
    if n < 2 {
        return Err(Error::TooFewVertices(n));
    }
    Ok(forward_counts(k, n)?[n])
}

/// Cumulative forward-pair counts `F[0..=n_max]`, using the closed forms of
/// the structured families and inversion counting for `K_{f*}`.
pub fn forward_counts(k: &TournamentOracle, n_max: usize) -> Result<Vec<u64>> {
    match k.family() {
        Family::TransitiveOmega => Ok((0..=n_max as u64).map(binom2).collect()),
        Family::TransitiveOmegaStar => Ok(vec![0; n_max + 1]),
        Family::OrdinalInjection(f) => {
            let values: Vec<OrdinalValue> = (0..n_max).map(|i| f.eval(i)).collect();
            prefix_inversion_counts(&values)
        }
        Family::FactorialBlock => Ok(cumulate(n_max, |i| {
            // earlier members of the block of 1-based b = i + 1
            let b = i as u64 + 1;
            let k = factorial_block_of(i);
            let low = if k == 1 { 0 } else { (1..k as u64).product::<u64>() };
            b - low - 1
        })),
        Family::ExponentialThreshold => Ok(cumulate(n_max, |i| {
            // a < b with b ≤ 2^a, i.e. a ≥ ⌈log2 b⌉
            let b = i as u64 + 1;
            if b < 2 {
                return 0;
            }
            let a_min = (b - 1).ilog2() as u64 + 1;
            b.saturating_sub(a_min)
        })),
        Family::SeededRandom(_) => scan_counts(k, n_max),
    }
}

fn cumulate(n_max: usize, step: impl Fn(usize) -> u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut total = 0;
    out.push(0);
    for i in 0..n_max {
        total += step(i);
        out.push(total);
    }
    out
}

/// `F[0..=n_max]` by asking the oracle about every pair.
pub fn scan_counts(k: &TournamentOracle, n_max: usize) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut total = 0;
    out.push(0);
    for j in 0..n_max {
        for i in 0..j {
            total += k.has_edge(i, j)? as u64;
        }
        out.push(total);
    }
    Ok(out)
}

/// Exact prefix densities for `n = 2, 2 + stride, …, n_max`.
pub fn density_profile(k: &TournamentOracle, n_max: usize, stride: usize) -> Result<DensityProfile> {
    if n_max < 2 {
        return Err(Error::TooFewVertices(n_max));
    }
    Ok(DensityProfile::from_counts(&forward_counts(k, n_max)?, stride))
}

/// Same samples as [`density_profile`], always through the edge oracle.
pub fn density_profile_by_scan(
    k: &TournamentOracle,
    n_max: usize,
    stride: usize,
) -> Result<DensityProfile> {
    if n_max < 2 {
        return Err(Error::TooFewVertices(n_max));
    }
    Ok(DensityProfile::from_counts(&scan_counts(k, n_max)?, stride))
}
