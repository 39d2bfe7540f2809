use super::profile::DensityProfile;
use crate::base::{InjectionSpec, OrdinalValue};
use crate::error::{Error, Result};

/// Counts over `0..n` with point updates and prefix sums.
#[derive(Debug, Clone)]
pub struct Fenwick {
    tree: Vec<u64>,
}

impl Fenwick {
    pub fn new(n: usize) -> Self {
        Self { tree: vec![0; n + 1] }
    }

    pub fn add(&mut self, i: usize, by: u64) {
        let mut i = i + 1;
        while i < self.tree.len() {
            self.tree[i] += by;
            i += i & i.wrapping_neg();
        }
    }

    /// Sum over `0..i`.
    pub fn prefix(&self, i: usize) -> u64 {
        let mut i = i;
        let mut s = 0;
        while i > 0 {
            s += self.tree[i];
            i &= i - 1;
        }
        s
    }
}

/// Ranks `0..n` of the values, erroring on a repeated value.
pub fn compress(values: &[OrdinalValue]) -> Result<Vec<usize>> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_unstable_by_key(|&i| values[i]);
    let mut rank = vec![0; values.len()];
    for (r, w) in order.iter().enumerate() {
        if r > 0 && values[order[r - 1]] == values[*w] {
            let (a, b) = (order[r - 1].min(*w), order[r - 1].max(*w));
            return Err(Error::NotInjective {
                first: a,
                second: b,
                value: values[*w].to_string(),
            });
        }
        rank[*w] = r;
    }
    Ok(rank)
}

/// `out[m] = I[m]`, the inversions among the first `m` values, for every
/// `m ≤ values.len()`.
pub fn prefix_inversion_counts(values: &[OrdinalValue]) -> Result<Vec<u64>> {
    let rank = compress(values)?;
    let mut fw = Fenwick::new(values.len());
    let mut out = Vec::with_capacity(values.len() + 1);
    let mut total = 0u64;
    out.push(0);
    for (j, &r) in rank.iter().enumerate() {
        // earlier values that are larger
        total += j as u64 - fw.prefix(r);
        fw.add(r, 1);
        out.push(total);
    }
    Ok(out)
}

/// `I_f[n]`: pairs `i < j < n` with `f(i) > f(j)`.
pub fn inversion_count(f: &InjectionSpec, n: usize) -> Result<u64> {
    let values: Vec<OrdinalValue> = (0..n).map(|i| f.eval(i)).collect();
    Ok(*prefix_inversion_counts(&values)?.last().unwrap())
}

/// `I_f[n] / C(n,2)` for every `n` in `2..=n_max`.
pub fn inversion_density_profile(f: &InjectionSpec, n_max: usize) -> Result<DensityProfile> {
    if n_max < 2 {
        return Err(Error::TooFewVertices(n_max));
    }
    let values: Vec<OrdinalValue> = (0..n_max).map(|i| f.eval(i)).collect();
    let counts = prefix_inversion_counts(&values)?;
    Ok(DensityProfile::from_counts(&counts, 1))
}
