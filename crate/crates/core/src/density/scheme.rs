use std::fmt;

use super::inversions::Fenwick;
use crate::base::{factorial_block_of, InjectionKind, InjectionSpec, OrdinalValue};
use crate::error::{Error, Result};

/// Smallest admissible growth ratio for geometric segments.
pub const MIN_RATIO: f64 = 1.25;

const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Placement rules of the shipped catalogue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PatternKind {
    /// Increasing everywhere; no inversions at all.
    Identity,
    /// Blocks `((k-1)!, k!]`, each descending and above all earlier blocks.
    Factorial,
    /// Geometric blocks, each descending and above all earlier blocks.
    SingleHigh,
    /// Geometric blocks in pairs: a new block above everything, then one
    /// just below it but above all older blocks.
    PairedHighLow,
    /// Several lanes share every segment; lane `l` of segment `t` forms
    /// block `t - l`, and the block intervals follow a periodic key table.
    Interleaved,
}

impl PatternKind {
    pub fn name(self) -> &'static str {
        match self {
            PatternKind::Identity => "identity",
            PatternKind::Factorial => "factorial",
            PatternKind::SingleHigh => "single-high",
            PatternKind::PairedHighLow => "paired-high-low",
            PatternKind::Interleaved => "interleaved",
        }
    }

    pub fn uses_ratio(self) -> bool {
        !matches!(self, PatternKind::Identity | PatternKind::Factorial)
    }
}

/// Free parameters of a block scheme.
///
/// Block `k` has the key `⌊k / phases⌋ + keys[k mod phases]`; blocks are
/// stacked by key (ties put the later block lower), so every block owns a
/// fixed finite interval of values. `shares[l][p]` is the log-weight of lane
/// `l` in segments of phase `p`. `offset` in `[0, 1)` shifts the segment
/// grid by that fraction of one full period in log scale.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeParams {
    pub pattern: PatternKind,
    pub ratio: f64,
    pub keys: Vec<f64>,
    pub shares: Vec<Vec<f64>>,
    pub offset: f64,
}

impl SchemeParams {
    pub fn identity() -> Self {
        Self::single(PatternKind::Identity, 1.0, vec![0.0])
    }

    pub fn factorial() -> Self {
        Self::single(PatternKind::Factorial, 1.0, vec![0.0])
    }

    pub fn single_high(ratio: f64) -> Self {
        Self::single(PatternKind::SingleHigh, ratio, vec![0.0])
    }

    /// `drop` in `(0, 1)` is how far the low block of each pair sits below
    /// its partner, in units of one pair.
    pub fn paired_high_low(ratio: f64, drop: f64) -> Self {
        Self::single(PatternKind::PairedHighLow, ratio, vec![0.0, -drop])
    }

    pub fn interleaved(ratio: f64, keys: Vec<f64>, shares: Vec<Vec<f64>>) -> Self {
        Self { pattern: PatternKind::Interleaved, ratio, keys, shares, offset: 0.0 }
    }

    fn single(pattern: PatternKind, ratio: f64, keys: Vec<f64>) -> Self {
        let phases = keys.len();
        Self { pattern, ratio, keys, shares: vec![vec![0.0; phases]], offset: 0.0 }
    }

    pub fn lanes(&self) -> usize {
        self.shares.len()
    }

    pub fn phases(&self) -> usize {
        self.keys.len()
    }

    /// The same scheme with its segment grid shifted by `offset` periods.
    pub fn with_offset(&self, offset: f64) -> Self {
        Self { offset, ..self.clone() }
    }
}

/// A validated block scheme and the injection it induces.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockScheme {
    params: SchemeParams,
    log_ratio: f64,
    /// `offset` times the period, in log scale.
    shift: f64,
    /// Cumulative lane weights per phase.
    cumulative: Vec<Vec<f64>>,
    key_lo: f64,
    key_hi: f64,
}

/// Checks the parameters and builds the scheme.
pub fn make_block_scheme(params: SchemeParams) -> Result<BlockScheme> {
    let bad = |msg: String| Err(Error::InvalidScheme(msg));
    let (lanes, phases) = (params.lanes(), params.phases());
    if lanes == 0 || phases == 0 {
        return bad("at least one lane and one phase are required".into());
    }
    if params.shares.iter().any(|row| row.len() != phases) {
        return bad(format!("every lane needs {phases} share entries"));
    }
    if params.keys.iter().chain(params.shares.iter().flatten()).any(|x| !x.is_finite()) {
        return bad("keys and shares must be finite".into());
    }
    if params.pattern.uses_ratio() && !(params.ratio >= MIN_RATIO && params.ratio.is_finite()) {
        return bad(format!(
            "growth ratio {} is below the minimum {MIN_RATIO}",
            params.ratio
        ));
    }
    if !(0.0..1.0).contains(&params.offset) {
        return bad(format!("offset {} is outside [0, 1)", params.offset));
    }
    match params.pattern {
        PatternKind::Interleaved => {}
        PatternKind::PairedHighLow => {
            let drop = -params.keys.get(1).copied().unwrap_or(0.0);
            if lanes != 1 || phases != 2 || params.keys[0] != 0.0 || !(drop > 0.0 && drop < 1.0) {
                return bad(format!(
                    "paired blocks need a drop strictly inside (0, 1), got {drop}; other values overlap older intervals"
                ));
            }
        }
        _ => {
            if lanes != 1 || phases != 1 {
                return bad(format!("{} takes one lane and one phase", params.pattern.name()));
            }
        }
    }
    let cumulative = (0..phases)
        .map(|p| {
            let w: Vec<f64> = params.shares.iter().map(|row| row[p].exp()).collect();
            let sum: f64 = w.iter().sum();
            let mut acc = 0.0;
            w.iter()
                .map(|x| {
                    acc += x / sum;
                    acc
                })
                .collect()
        })
        .collect();
    let key_lo = params.keys.iter().copied().fold(f64::INFINITY, f64::min);
    let key_hi = params.keys.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let log_ratio = params.ratio.ln();
    let shift = if params.pattern.uses_ratio() {
        params.offset * phases as f64 * log_ratio
    } else {
        0.0
    };
    Ok(BlockScheme {
        log_ratio,
        shift,
        params,
        cumulative,
        key_lo,
        key_hi,
    })
}

/// The factorial-block reversal scheme: block `k` is `((k-1)!, k!]`
/// (1-based), descending inside, above every earlier block.
pub fn factorial_scheme() -> BlockScheme {
    make_block_scheme(SchemeParams::factorial()).expect("factorial parameters are valid")
}

impl BlockScheme {
    pub fn params(&self) -> &SchemeParams {
        &self.params
    }

    pub fn pattern(&self) -> PatternKind {
        self.params.pattern
    }

    /// 0-based segment of the 1-based position `n`.
    pub fn segment(&self, n: u64) -> i64 {
        match self.params.pattern {
            PatternKind::Factorial => factorial_block_of(n as usize - 1) as i64 - 1,
            PatternKind::Identity => 0,
            _ => (((n as f64).ln() + self.shift) / self.log_ratio).floor() as i64,
        }
    }

    fn lane(&self, n: u64, t: i64) -> i64 {
        let lanes = self.params.lanes();
        if lanes == 1 {
            return 0;
        }
        let cw = &self.cumulative[t.rem_euclid(self.params.phases() as i64) as usize];
        let fr = (n as f64 * GOLDEN).fract();
        (cw.iter().filter(|&&c| fr > c).count()).min(lanes - 1) as i64
    }

    /// Block of the 1-based position `n`.
    pub fn block(&self, n: u64) -> i64 {
        let t = self.segment(n);
        t - self.lane(n, t)
    }

    fn key(&self, k: i64) -> f64 {
        let m = self.params.phases() as i64;
        k.div_euclid(m) as f64 + self.params.keys[k.rem_euclid(m) as usize]
    }

    fn below(&self, a: i64, b: i64) -> bool {
        let (ka, kb) = (self.key(a), self.key(b));
        ka < kb || (ka == kb && a > b)
    }

    /// Number of blocks stacked below block `k`.
    pub fn block_rank(&self, k: i64) -> u64 {
        let m = self.params.phases() as i64;
        let first = 1 - self.params.lanes() as i64;
        // a block more than this far along always has a larger key
        let spread = (self.key_hi - self.key_lo).ceil() as i64 + 1;
        let last = (k.div_euclid(m) + spread + 1) * m;
        (first..=last).filter(|&b| b != k && self.below(b, k)).count() as u64
    }

    /// `f(i)` for the 0-based position `i`: the block's place in the stack,
    /// then the position inside the block (descending).
    pub fn value(&self, i: usize) -> OrdinalValue {
        if self.params.pattern == PatternKind::Identity {
            return OrdinalValue::finite(i as u64);
        }
        let k = self.block(i as u64 + 1);
        OrdinalValue::new(self.block_rank(k), u64::MAX - i as u64)
    }

    pub fn injection(&self) -> InjectionSpec {
        let me = self.clone();
        InjectionSpec::new(InjectionKind::BlockScheme(self.to_string()), true, move |i| me.value(i))
    }

    /// Cumulative inversion counts `I[0..=n_max]`, using that the value
    /// order is "block stack, then descending".
    pub fn prefix_inversion_counts(&self, n_max: usize) -> Vec<u64> {
        if self.params.pattern == PatternKind::Identity {
            return vec![0; n_max + 1];
        }
        let blocks: Vec<i64> = (1..=n_max as u64).map(|n| self.block(n)).collect();
        let mut distinct = blocks.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let mut stacked = distinct.clone();
        stacked.sort_by(|&a, &b| {
            if a == b {
                std::cmp::Ordering::Equal
            } else if self.below(a, b) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        let place = |k: i64| distinct.binary_search(&k).unwrap();
        let mut rank_of = vec![0usize; distinct.len()];
        for (r, &k) in stacked.iter().enumerate() {
            rank_of[place(k)] = r;
        }
        let mut fw = Fenwick::new(stacked.len());
        let mut out = Vec::with_capacity(n_max + 1);
        let mut total = 0u64;
        out.push(0);
        for (j, &k) in blocks.iter().enumerate() {
            let r = rank_of[place(k)];
            // everything earlier except the blocks stacked strictly below
            total += j as u64 - fw.prefix(r);
            fw.add(r, 1);
            out.push(total);
        }
        out
    }
}

impl fmt::Display for BlockScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        write!(f, "pattern={}", p.pattern.name())?;
        if p.pattern.uses_ratio() {
            write!(f, " ratio={}", p.ratio)?;
        }
        if p.pattern == PatternKind::Interleaved || p.pattern == PatternKind::PairedHighLow {
            write!(f, " lanes={} phases={} keys={:?}", p.lanes(), p.phases(), p.keys)?;
        }
        if p.lanes() > 1 {
            write!(f, " shares={:?}", p.shares)?;
        }
        if p.offset != 0.0 {
            write!(f, " offset={}", p.offset)?;
        }
        Ok(())
    }
}

/// A catalogue entry: a pattern with its starting offsets. Ratio-free
/// patterns are evaluated once, the rest over the optimizer's ratio grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternTemplate {
    pub name: &'static str,
    pub params: SchemeParams,
}

impl PatternTemplate {
    pub fn uses_ratio(&self) -> bool {
        self.params.pattern.uses_ratio()
    }

    /// The template at growth ratio `r`.
    pub fn at_ratio(&self, r: f64) -> SchemeParams {
        let mut p = self.params.clone();
        if self.uses_ratio() {
            p.ratio = r;
        }
        p
    }
}

/// The shipped catalogue, in tie-break order.
///
/// The interleaved starting offsets were found by an offline search over a
/// continuous (log-time) model of these schemes.
pub fn catalogue() -> Vec<PatternTemplate> {
    vec![
        PatternTemplate { name: "identity", params: SchemeParams::identity() },
        PatternTemplate { name: "factorial", params: SchemeParams::factorial() },
        PatternTemplate { name: "single-high", params: SchemeParams::single_high(2.0) },
        PatternTemplate { name: "paired-high-low", params: SchemeParams::paired_high_low(2.0, 0.5) },
        PatternTemplate {
            name: "interleave-2x4",
            params: SchemeParams::interleaved(
                2.0,
                vec![1.893, 3.568, 0.357, 5.66],
                vec![vec![-1.333; 4], vec![-1.386; 4]],
            ),
        },
        PatternTemplate {
            name: "interleave-3x6-a",
            params: SchemeParams::interleaved(
                2.0,
                vec![5.004, 4.681, 0.484, 9.628, 6.853, -3.996],
                vec![
                    vec![-1.726, -1.121, 1.019, -5.237, -6.125, 2.603],
                    vec![5.374, 2.8, -1.545, 1.767, -0.854, -2.135],
                    vec![5.932, -3.517, -6.976, -4.665, -0.421, 2.578],
                ],
            ),
        },
        PatternTemplate {
            name: "interleave-3x6-b",
            params: SchemeParams::interleaved(
                2.0,
                vec![0.493, -1.518, 3.599, -2.261, 2.158, 4.766],
                vec![
                    vec![1.876, -2.871, -1.073, -1.899, -5.849, -2.492],
                    vec![1.494, 0.971, -0.884, 3.019, 0.736, 1.536],
                    vec![3.153, 0.363, -6.354, 2.862, 1.333, -0.364],
                ],
            ),
        },
    ]
}
