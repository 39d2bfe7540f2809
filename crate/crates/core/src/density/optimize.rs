use std::cmp::Ordering;
use std::fmt;
use std::thread;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::profile::DensitySample;
use super::scheme::{make_block_scheme, BlockScheme, PatternKind, PatternTemplate, SchemeParams};
use crate::error::{Error, Result};

/// Growth ratios tried for every ratio-dependent pattern.
pub const RATIO_GRID: [f64; 6] = [1.5, 2.0, 3.0, 4.0, 6.0, 8.0];

/// Empirical window bounds on a prefix density; never a claim about the
/// limit.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityBoundsReport {
    pub identifier: String,
    /// The sample attaining the window minimum (first one on ties).
    pub minimum: DensitySample,
    pub window: (u64, u64),
    pub target: BigRational,
}

impl DensityBoundsReport {
    pub fn min_window_density(&self) -> BigRational {
        self.minimum.density()
    }

    /// True when the window minimum is at least `p/q`.
    pub fn at_least(&self, p: u64, q: u64) -> bool {
        self.minimum.forward as u128 * q as u128 >= p as u128 * self.minimum.total as u128
    }
}

impl fmt::Display for DensityBoundsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "window={}:{} argmin={} target={} min_density={}",
            self.window.0,
            self.window.1,
            self.minimum.n,
            self.target,
            self.min_window_density()
        )
    }
}

/// Search settings. The defaults are what [`optimize_scheme`] uses.
#[derive(Debug, Clone)]
pub struct OptimizeOptions {
    pub ratio_grid: Vec<f64>,
    /// Evaluations allowed in the coordinate-descent phase.
    pub max_refinements: usize,
    /// Step halvings in the coordinate-descent phase.
    pub refine_levels: u32,
    /// Evenly spaced grid offsets a candidate is judged at; its score is
    /// the worst of them.
    pub offsets: usize,
    pub threads: usize,
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        Self {
            ratio_grid: RATIO_GRID.to_vec(),
            max_refinements: 300,
            refine_levels: 4,
            offsets: 8,
            threads: thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

/// Smallest density over `lo ≤ n ≤ hi` given cumulative counts.
pub fn window_minimum(counts: &[u64], lo: u64, hi: u64) -> DensitySample {
    let mut best = DensitySample::new(lo, counts[lo as usize]);
    for n in lo + 1..=hi {
        let s = DensitySample::new(n, counts[n as usize]);
        if s.cmp_density(&best) == Ordering::Less {
            best = s;
        }
    }
    best
}

/// Window minimum of a scheme's prefix inversion density.
pub fn evaluate_scheme(scheme: &BlockScheme, window: (u64, u64)) -> DensitySample {
    window_minimum(&scheme.prefix_inversion_counts(window.1 as usize), window.0, window.1)
}

/// The worst window minimum over `offsets` shifts of the segment grid, and
/// the scheme attaining it (the first on ties).
///
/// Judging a periodic scheme at one alignment lets a search line a single
/// long descending block up with the window; the worst alignment cannot be
/// gamed that way.
pub fn evaluate_robust(
    params: &SchemeParams,
    window: (u64, u64),
    offsets: usize,
) -> Result<(BlockScheme, DensitySample)> {
    if !params.pattern.uses_ratio() || offsets <= 1 {
        let s = make_block_scheme(params.clone())?;
        let score = evaluate_scheme(&s, window);
        return Ok((s, score));
    }
    let mut worst: Option<(BlockScheme, DensitySample)> = None;
    for j in 0..offsets {
        let s = make_block_scheme(params.with_offset(j as f64 / offsets as f64))?;
        let score = evaluate_scheme(&s, window);
        if worst.as_ref().map_or(true, |w| score.cmp_density(&w.1) == Ordering::Less) {
            worst = Some((s, score));
        }
    }
    Ok(worst.unwrap())
}

/// Best scheme over the ratio grid, refined by coordinate descent.
pub fn optimize_scheme(
    space: &[PatternTemplate],
    horizon: u64,
    window: (u64, u64),
) -> Result<(BlockScheme, DensityBoundsReport)> {
    optimize_scheme_with(space, horizon, window, &OptimizeOptions::default())
}

pub fn optimize_scheme_with(
    space: &[PatternTemplate],
    horizon: u64,
    window: (u64, u64),
    opts: &OptimizeOptions,
) -> Result<(BlockScheme, DensityBoundsReport)> {
    if space.is_empty() {
        return Err(Error::EmptyPatternSpace);
    }
    let (lo, hi) = window;
    if lo < 2 || lo > hi || hi > horizon {
        return Err(Error::InvalidScheme(format!(
            "window {lo}:{hi} must satisfy 2 ≤ lo ≤ hi ≤ horizon = {horizon}"
        )));
    }

    let mut grid = Vec::new();
    for t in space {
        if t.uses_ratio() {
            grid.extend(opts.ratio_grid.iter().map(|&r| t.at_ratio(r).with_offset(0.0)));
        } else {
            grid.push(t.params.clone());
        }
    }
    let mut scored = evaluate_all(&grid, window, opts)?;
    // first strict maximum wins
    let mut best = 0;
    for i in 1..scored.len() {
        if scored[i].1.cmp_density(&scored[best].1) == Ordering::Greater {
            best = i;
        }
    }
    let (start, start_score) = scored.swap_remove(best);
    let (scheme, score) = refine(grid.swap_remove(best), start, start_score, window, opts);
    let report = DensityBoundsReport {
        identifier: scheme.to_string(),
        minimum: score,
        window,
        target: BigRational::new(BigInt::from(3), BigInt::from(4)),
    };
    Ok((scheme, report))
}

fn evaluate_all(
    grid: &[SchemeParams],
    window: (u64, u64),
    opts: &OptimizeOptions,
) -> Result<Vec<(BlockScheme, DensitySample)>> {
    let threads = opts.threads.clamp(1, grid.len().max(1));
    let chunk = grid.len().div_ceil(threads).max(1);
    let offsets = opts.offsets;
    thread::scope(|s| {
        let handles: Vec<_> = grid
            .chunks(chunk)
            .map(|part| {
                s.spawn(move || {
                    part.iter()
                        .map(|p| evaluate_robust(p, window, offsets))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("evaluation thread panicked"))
            .collect()
    })
}

/// One tunable coordinate of the parameters.
#[derive(Debug, Clone, Copy)]
enum Coord {
    LogRatio,
    Key(usize),
    Share(usize, usize),
}

fn coords(p: &SchemeParams) -> Vec<(Coord, f64)> {
    let mut out = Vec::new();
    match p.pattern {
        PatternKind::Identity | PatternKind::Factorial => return out,
        PatternKind::SingleHigh => out.push((Coord::LogRatio, 0.25)),
        PatternKind::PairedHighLow => {
            out.push((Coord::LogRatio, 0.25));
            out.push((Coord::Key(1), 0.2));
        }
        PatternKind::Interleaved => {
            out.push((Coord::LogRatio, 0.25));
            out.extend((0..p.phases()).map(|i| (Coord::Key(i), 0.5)));
            if p.lanes() > 1 {
                for l in 0..p.lanes() {
                    out.extend((0..p.phases()).map(|i| (Coord::Share(l, i), 0.5)));
                }
            }
        }
    }
    out
}

fn shifted(p: &SchemeParams, c: Coord, by: f64) -> SchemeParams {
    let mut q = p.clone();
    match c {
        Coord::LogRatio => q.ratio = (q.ratio.ln() + by).exp(),
        Coord::Key(i) => q.keys[i] += by,
        Coord::Share(l, i) => q.shares[l][i] += by,
    }
    q
}

/// Coordinate descent with halving steps; only strict improvements move.
fn refine(
    params: SchemeParams,
    start: BlockScheme,
    score: DensitySample,
    window: (u64, u64),
    opts: &OptimizeOptions,
) -> (BlockScheme, DensitySample) {
    let (mut params, mut cur, mut cur_score) = (params, start, score);
    let coords = coords(&params);
    let mut spent = 0;
    for level in 0..opts.refine_levels {
        let scale = 0.5f64.powi(level as i32);
        loop {
            let mut moved = false;
            for &(c, step) in &coords {
                for dir in [1.0, -1.0] {
                    if spent >= opts.max_refinements {
                        return (cur, cur_score);
                    }
                    let p = shifted(&params, c, dir * step * scale);
                    let Ok((cand, s)) = evaluate_robust(&p, window, opts.offsets) else {
                        continue;
                    };
                    spent += 1;
                    if s.cmp_density(&cur_score) == Ordering::Greater {
                        params = p;
                        cur = cand;
                        cur_score = s;
                        moved = true;
                        break;
                    }
                }
            }
            if !moved {
                break;
            }
        }
    }
    (cur, cur_score)
}
