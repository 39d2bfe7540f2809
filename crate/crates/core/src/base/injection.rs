use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::OrdinalValue;
use crate::error::{Error, Result};

type EvalFn = dyn Fn(usize) -> OrdinalValue + Send + Sync;

/// Where an injection came from. Purely descriptive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InjectionKind {
    Identity,
    ReversedPrefix(usize),
    Table(usize),
    BlockScheme(String),
    RankDerived { n: usize, lambda: usize },
    Custom(String),
}

/// A total map `ℕ → ω·ω`, expected to be injective.
///
/// Injectivity cannot be checked up front for an infinite map, so it is
/// checked on whatever prefix is demanded (see [`InjectionSpec::prefix`]).
#[derive(Clone)]
pub struct InjectionSpec {
    eval: Arc<EvalFn>,
    kind: InjectionKind,
    finite_below: bool,
}

impl fmt::Debug for InjectionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InjectionSpec")
            .field("kind", &self.kind)
            .field("finite_below", &self.finite_below)
            .finish()
    }
}

impl InjectionSpec {
    /// Wraps an arbitrary evaluation function.
    ///
    /// `finite_below` promises that every value has only finitely many image
    /// values below it (the image has order type `ω`). Oracles rely on it, so
    /// only set it when it is true.
    pub fn new<F>(kind: InjectionKind, finite_below: bool, eval: F) -> Self
    where
        F: Fn(usize) -> OrdinalValue + Send + Sync + 'static,
    {
        Self {
            eval: Arc::new(eval),
            kind,
            finite_below,
        }
    }

    pub fn identity() -> Self {
        Self::new(InjectionKind::Identity, true, |i| {
            OrdinalValue::finite(i as u64)
        })
    }

    /// `f(i) = (0, n - i)` on `[0, n)`, then `f(i) = (1, i)`.
    pub fn reversed_prefix(n: usize) -> Self {
        Self::new(InjectionKind::ReversedPrefix(n), true, move |i| {
            if i < n {
                OrdinalValue::finite((n - i) as u64)
            } else {
                OrdinalValue::new(1, i as u64)
            }
        })
    }

    /// Explicit values for a prefix, then an increasing tail placed above
    /// every table value.
    pub fn from_table(values: Vec<OrdinalValue>) -> Self {
        let len = values.len();
        let top = values.iter().map(|v| v.major).max().unwrap_or(0) + 1;
        let values = Arc::new(values);
        Self::new(InjectionKind::Table(len), true, move |i| {
            values
                .get(i)
                .copied()
                .unwrap_or(OrdinalValue::new(top, i as u64))
        })
    }

    pub fn kind(&self) -> &InjectionKind {
        &self.kind
    }

    /// True when every value has finitely many image values below it.
    pub fn finite_below(&self) -> bool {
        self.finite_below
    }

    pub fn eval(&self, i: usize) -> OrdinalValue {
        (self.eval)(i)
    }

    /// Values on `[0, n)`, with injectivity checked.
    pub fn prefix(&self, n: usize) -> Result<Vec<OrdinalValue>> {
        let values: Vec<OrdinalValue> = (0..n).map(|i| self.eval(i)).collect();
        check_injective(&values)?;
        Ok(values)
    }

    /// Parses the text form: one `i major minor` triple per line (1-based
    /// `i`), then optionally `tail identity`. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: HashMap<usize, OrdinalValue> = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields[0] == "tail" {
                if fields.get(1) != Some(&"identity") || fields.len() != 2 {
                    return Err(Error::Parse(format!(
                        "line {}: only `tail identity` is supported",
                        lineno + 1
                    )));
                }
                continue;
            }
            if fields.len() != 3 {
                return Err(Error::Parse(format!(
                    "line {}: expected `i major minor`",
                    lineno + 1
                )));
            }
            let nums: Vec<u64> = fields
                .iter()
                .map(|s| s.parse::<u64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            if nums[0] == 0 {
                return Err(Error::Parse(format!(
                    "line {}: indices are 1-based",
                    lineno + 1
                )));
            }
            let i = (nums[0] - 1) as usize;
            if entries.insert(i, OrdinalValue::new(nums[1], nums[2])).is_some() {
                return Err(Error::Parse(format!("line {}: index {} repeated", lineno + 1, nums[0])));
            }
        }
        let len = entries.len();
        let mut values = Vec::with_capacity(len);
        for i in 0..len {
            match entries.get(&i) {
                Some(v) => values.push(*v),
                None => {
                    return Err(Error::Parse(format!(
                        "indices must cover 1..{len} without gaps; {} is missing",
                        i + 1
                    )))
                }
            }
        }
        check_injective(&values)?;
        Ok(Self::from_table(values))
    }
}

/// Errors with the first colliding pair if two entries share a value.
pub fn check_injective(values: &[OrdinalValue]) -> Result<()> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_unstable_by_key(|&i| (values[i], i));
    for w in order.windows(2) {
        if values[w[0]] == values[w[1]] {
            return Err(Error::NotInjective {
                first: w[0],
                second: w[1],
                value: values[w[0]].to_string(),
            });
        }
    }
    Ok(())
}
