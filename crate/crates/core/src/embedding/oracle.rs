use std::collections::HashSet;

use crate::base::{Family, Sign, TournamentOracle};
use crate::error::{Error, Result};

/// How far `enumerate` scans before declaring the oracle inconsistent.
pub const DEFAULT_SCAN_LIMIT: usize = 1 << 20;

/// Answers whether `⋂ N^sign(v)` over a finite constraint list is infinite,
/// which the edge oracle alone cannot decide.
pub trait InfinitenessOracle {
    fn name(&self) -> &'static str;

    /// Is `⋂_{(v,s)} N^s(v)` infinite?
    fn decide(&self, k: &TournamentOracle, constraints: &[(usize, Sign)]) -> Result<bool>;

    /// Is the intersection infinite even after restricting to `V^class`?
    fn decide_in_class(
        &self,
        k: &TournamentOracle,
        constraints: &[(usize, Sign)],
        class: Sign,
    ) -> Result<bool>;

    /// The first `count` vertices (by index) of the intersection that are
    /// not in `exclusions` and pass `accept`.
    fn enumerate(
        &self,
        k: &TournamentOracle,
        constraints: &[(usize, Sign)],
        exclusions: &HashSet<usize>,
        count: usize,
        accept: &mut dyn FnMut(usize) -> Result<bool>,
    ) -> Result<Vec<usize>> {
        scan(k, constraints, exclusions, count, accept, DEFAULT_SCAN_LIMIT)
    }
}

fn scan(
    k: &TournamentOracle,
    constraints: &[(usize, Sign)],
    exclusions: &HashSet<usize>,
    count: usize,
    accept: &mut dyn FnMut(usize) -> Result<bool>,
    limit: usize,
) -> Result<Vec<usize>> {
    let mut found = Vec::with_capacity(count);
    let mut w = 0;
    while found.len() < count {
        if w >= limit {
            return Err(Error::Oracle(format!(
                "intersection declared infinite but only {} of {count} vertices below {limit}",
                found.len()
            )));
        }
        if !exclusions.contains(&w) && member(k, constraints, w)? && accept(w)? {
            found.push(w);
        }
        w += 1;
    }
    Ok(found)
}

/// `w ∈ ⋂ N^s(v)`; constraint vertices themselves are never members.
pub fn member(k: &TournamentOracle, constraints: &[(usize, Sign)], w: usize) -> Result<bool> {
    for &(v, s) in constraints {
        if v == w {
            return Ok(false);
        }
        let ok = match s {
            Sign::Plus => k.has_edge(v, w)?,
            Sign::Minus => k.has_edge(w, v)?,
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact for tournaments where every vertex has finite in-degree (such as
/// `K_ω`): out-neighbourhoods are cofinite, in-neighbourhoods finite.
#[derive(Debug, Clone, Copy, Default)]
pub struct FiniteInDegree;

/// Exact for tournaments where every vertex has finite out-degree: `K_ω*`,
/// the factorial-block and exponential-threshold families, and `K_{f*}` for
/// any injection into `ω`.
#[derive(Debug, Clone, Copy, Default)]
pub struct FiniteOutDegree;

/// Says "infinite" to everything. For random tournaments this is correct
/// with probability 1, and `enumerate` still checks every vertex it returns.
#[derive(Debug, Clone, Copy, Default)]
pub struct AlwaysInfinite;

impl InfinitenessOracle for FiniteInDegree {
    fn name(&self) -> &'static str {
        "finite-in-degree"
    }
    fn decide(&self, _: &TournamentOracle, c: &[(usize, Sign)]) -> Result<bool> {
        Ok(c.iter().all(|&(_, s)| s == Sign::Plus))
    }
    fn decide_in_class(&self, k: &TournamentOracle, c: &[(usize, Sign)], class: Sign) -> Result<bool> {
        Ok(class == Sign::Plus && self.decide(k, c)?)
    }
}

impl InfinitenessOracle for FiniteOutDegree {
    fn name(&self) -> &'static str {
        "finite-out-degree"
    }
    fn decide(&self, _: &TournamentOracle, c: &[(usize, Sign)]) -> Result<bool> {
        Ok(c.iter().all(|&(_, s)| s == Sign::Minus))
    }
    fn decide_in_class(&self, k: &TournamentOracle, c: &[(usize, Sign)], class: Sign) -> Result<bool> {
        Ok(class == Sign::Minus && self.decide(k, c)?)
    }
}

impl InfinitenessOracle for AlwaysInfinite {
    fn name(&self) -> &'static str {
        "always-infinite"
    }
    fn decide(&self, _: &TournamentOracle, _: &[(usize, Sign)]) -> Result<bool> {
        Ok(true)
    }
    // every sign comes out `+`, so V^- is empty
    fn decide_in_class(&self, _: &TournamentOracle, _: &[(usize, Sign)], class: Sign) -> Result<bool> {
        Ok(class == Sign::Plus)
    }
}

/// The shipped oracle matching a tournament family.
pub fn auto_oracle(k: &TournamentOracle) -> Result<Box<dyn InfinitenessOracle>> {
    Ok(match k.family() {
        Family::TransitiveOmega => Box::new(FiniteInDegree),
        Family::TransitiveOmegaStar | Family::FactorialBlock | Family::ExponentialThreshold => {
            Box::new(FiniteOutDegree)
        }
        Family::OrdinalInjection(f) if f.finite_below() => Box::new(FiniteOutDegree),
        Family::OrdinalInjection(_) => {
            return Err(Error::Oracle(
                "no exact oracle for an injection whose image is not of order type ω".into(),
            ))
        }
        Family::SeededRandom(_) => Box::new(AlwaysInfinite),
    })
}

/// Star signs `∗_1, ∗_2, …` of the K-vertices, computed left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StarSigns {
    pub signs: Vec<Sign>,
}

impl StarSigns {
    pub fn get(&self, u: usize) -> Option<Sign> {
        self.signs.get(u).copied()
    }

    /// Extends the sign vector to cover `u_0 … u_{n-1}`.
    pub fn extend_to(
        &mut self,
        k: &TournamentOracle,
        oracle: &dyn InfinitenessOracle,
        n: usize,
    ) -> Result<()> {
        let mut constraints: Vec<(usize, Sign)> = self.signs.iter().copied().enumerate().collect();
        while self.signs.len() < n {
            let u = self.signs.len();
            constraints.push((u, Sign::Plus));
            let s = if oracle.decide(k, &constraints)? {
                Sign::Plus
            } else {
                Sign::Minus
            };
            constraints.last_mut().unwrap().1 = s;
            self.signs.push(s);
        }
        Ok(())
    }

    /// Sign of `u`, extending as needed.
    pub fn sign(&mut self, k: &TournamentOracle, oracle: &dyn InfinitenessOracle, u: usize) -> Result<Sign> {
        self.extend_to(k, oracle, u + 1)?;
        Ok(self.signs[u])
    }
}

/// `∗_i = +` iff the running intersection stays infinite with `N^+(u_i)`.
pub fn classify_vertices(
    k: &TournamentOracle,
    oracle: &dyn InfinitenessOracle,
    n: usize,
) -> Result<StarSigns> {
    let mut s = StarSigns::default();
    s.extend_to(k, oracle, n)?;
    Ok(s)
}
