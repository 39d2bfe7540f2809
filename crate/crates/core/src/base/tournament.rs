use std::fmt;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::InjectionSpec;
use crate::error::{Error, Result};

/// Orientation of an ordered pair `(i, j)`: `Forward` means the edge `i → j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn reverse(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

/// The built-in tournament families on `ℕ` (0-based vertices).
#[derive(Debug, Clone)]
pub enum Family {
    /// `i → j` whenever `i < j`.
    TransitiveOmega,
    /// `j → i` whenever `i < j`.
    TransitiveOmegaStar,
    /// For `i < j`, `i → j` iff `f(i) > f(j)`.
    OrdinalInjection(InjectionSpec),
    /// Forward inside the factorial blocks `[1], [2], [3..6], [7..24], …`
    /// (1-based), backward across blocks.
    FactorialBlock,
    /// For 1-based `a < b`, `a → b` iff `b ≤ 2^a`.
    ExponentialThreshold,
    /// Independent fair coin per pair, keyed on `(seed, min, max)`.
    SeededRandom(u64),
}

/// A countably infinite tournament given by a pure edge oracle.
#[derive(Debug, Clone)]
pub struct TournamentOracle {
    family: Family,
}

impl TournamentOracle {
    pub fn new(family: Family) -> Self {
        Self { family }
    }

    pub fn transitive_omega() -> Self {
        Self::new(Family::TransitiveOmega)
    }

    pub fn transitive_omega_star() -> Self {
        Self::new(Family::TransitiveOmegaStar)
    }

    pub fn factorial_block() -> Self {
        Self::new(Family::FactorialBlock)
    }

    pub fn exponential_threshold() -> Self {
        Self::new(Family::ExponentialThreshold)
    }

    pub fn seeded_random(seed: u64) -> Self {
        Self::new(Family::SeededRandom(seed))
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// Direction of the ordered pair `(i, j)`.
    pub fn orient(&self, i: usize, j: usize) -> Result<Direction> {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => Err(Error::LoopQuery(i)),
            std::cmp::Ordering::Less => Ok(self.orient_lt(i, j)?),
            std::cmp::Ordering::Greater => Ok(self.orient_lt(j, i)?.reverse()),
        }
    }

    /// True iff `u → v` is an edge.
    pub fn has_edge(&self, u: usize, v: usize) -> Result<bool> {
        Ok(self.orient(u, v)? == Direction::Forward)
    }

    fn orient_lt(&self, i: usize, j: usize) -> Result<Direction> {
        let forward = match &self.family {
            Family::TransitiveOmega => true,
            Family::TransitiveOmegaStar => false,
            Family::OrdinalInjection(f) => {
                let (a, b) = (f.eval(i), f.eval(j));
                if a == b {
                    return Err(Error::NotInjective {
                        first: i,
                        second: j,
                        value: a.to_string(),
                    });
                }
                a > b
            }
            Family::FactorialBlock => factorial_block_of(i) == factorial_block_of(j),
            Family::ExponentialThreshold => {
                let (a, b) = (i + 1, j + 1);
                a >= 64 || (b as u128) <= (1u128 << a)
            }
            Family::SeededRandom(seed) => random_bit(*seed, i, j),
        };
        Ok(if forward {
            Direction::Forward
        } else {
            Direction::Backward
        })
    }

    /// CLI name of the family.
    pub fn name(&self) -> String {
        match &self.family {
            Family::TransitiveOmega => "transitive-omega".into(),
            Family::TransitiveOmegaStar => "transitive-omega-star".into(),
            Family::OrdinalInjection(_) => "injection".into(),
            Family::FactorialBlock => "factorial-block".into(),
            Family::ExponentialThreshold => "exp-threshold".into(),
            Family::SeededRandom(s) => format!("random:{s}"),
        }
    }
}

impl fmt::Display for TournamentOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// The K_{f*} tournament of an injection.
pub fn make_ordinal_injection_tournament(f: InjectionSpec) -> TournamentOracle {
    TournamentOracle::new(Family::OrdinalInjection(f))
}

/// Block number `k` of the 0-based vertex `i`, i.e. the 1-based vertex
/// `i + 1` lies in `((k-1)!, k!]`.
pub fn factorial_block_of(i: usize) -> u32 {
    let x = i as u128 + 1;
    let (mut k, mut fact) = (1u32, 1u128);
    while fact < x {
        k += 1;
        fact *= k as u128;
    }
    k
}

fn random_bit(seed: u64, i: usize, j: usize) -> bool {
    let (a, b) = (i.min(j) as u128, i.max(j) as u128);
    let pair = b * (b - 1) / 2 + a;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_word_pos(pair);
    rng.next_u32() & 1 == 1
}
