use std::sync::Arc;

use crate::base::{InjectionKind, InjectionSpec, OrdinalValue, TournamentOracle};
use crate::error::{Error, Result};

/// Levels of a tournament prefix: level 0 has no forward out-neighbour, and
/// level `α + 1` holds the vertices whose forward out-neighbours all sit at
/// level `≤ α`, at least one of them at `α`.
#[derive(Debug, Clone)]
pub struct RankDecomposition {
    pub n: usize,
    pub alpha: Vec<usize>,
    pub lambda: usize,
    pub induced_injection: InjectionSpec,
}

impl RankDecomposition {
    /// Vertices of each level.
    pub fn levels(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.lambda];
        for (v, &a) in self.alpha.iter().enumerate() {
            out[a].push(v);
        }
        out
    }

    /// Checks the level conditions against `k`, naming the first failure.
    pub fn check(&self, k: &TournamentOracle) -> std::result::Result<(), String> {
        let n = self.n;
        if self.alpha.len() != n {
            return Err(format!("{} levels for {n} vertices", self.alpha.len()));
        }
        for i in 0..n {
            let mut top: Option<usize> = None;
            for j in i + 1..n {
                if k.has_edge(i, j).map_err(|e| e.to_string())? {
                    if self.alpha[i] <= self.alpha[j] {
                        return Err(format!(
                            "forward edge ({i}, {j}) does not descend: levels {} and {}",
                            self.alpha[i], self.alpha[j]
                        ));
                    }
                    top = top.max(Some(self.alpha[j]));
                }
            }
            let want = top.map_or(0, |t| t + 1);
            if self.alpha[i] != want {
                return Err(format!("vertex {i} has level {} but should be {want}", self.alpha[i]));
            }
        }
        let used = self.alpha.iter().max().map_or(0, |m| m + 1);
        if used != self.lambda {
            return Err(format!("lambda is {} but {used} levels are used", self.lambda));
        }
        for i in 0..n {
            if self.induced_injection.eval(i) != OrdinalValue::new(self.alpha[i] as u64, i as u64) {
                return Err(format!("induced injection disagrees at {i}"));
            }
        }
        Ok(())
    }
}

/// Peels `[n]` into levels from the top index down; only forward
/// out-neighbours inside `[n]` count.
pub fn rank_decompose(k: &TournamentOracle, n: usize) -> Result<RankDecomposition> {
    if n == 0 {
        return Err(Error::TooFewVertices(0));
    }
    let mut alpha = vec![0usize; n];
    for i in (0..n).rev() {
        let mut level = 0;
        for j in i + 1..n {
            if alpha[j] + 1 > level && k.has_edge(i, j)? {
                level = alpha[j] + 1;
            }
        }
        alpha[i] = level;
    }
    let lambda = alpha.iter().max().unwrap() + 1;
    let table = Arc::new(alpha.clone());
    let induced_injection = InjectionSpec::new(
        InjectionKind::RankDerived { n, lambda },
        true,
        move |i| match table.get(i) {
            Some(&a) => OrdinalValue::new(a as u64, i as u64),
            None => OrdinalValue::new(lambda as u64, i as u64),
        },
    );
    Ok(RankDecomposition { n, alpha, lambda, induced_injection })
}

/// Every forward pair of `k` inside `[n]` is forward in `K_{f*}` for the
/// induced injection `f`.
pub fn dominance_check(k: &TournamentOracle, d: &RankDecomposition, n: usize) -> Result<bool> {
    if d.n != n {
        return Err(Error::MismatchedDecomposition { built: d.n, queried: n });
    }
    let f = &d.induced_injection;
    for j in 1..n {
        let fj = f.eval(j);
        for i in 0..j {
            if k.has_edge(i, j)? && f.eval(i) <= fj {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transitive_prefixes() {
        let d = rank_decompose(&TournamentOracle::transitive_omega_star(), 30).unwrap();
        assert!(d.alpha.iter().all(|&a| a == 0));
        assert_eq!(d.lambda, 1);
        let k = TournamentOracle::transitive_omega();
        let d = rank_decompose(&k, 12).unwrap();
        assert_eq!(d.alpha, (0..12).rev().collect::<Vec<_>>());
        assert_eq!(d.lambda, 12);
        assert!(dominance_check(&k, &d, 12).unwrap());
        assert!(matches!(dominance_check(&k, &d, 11), Err(Error::MismatchedDecomposition { .. })));
    }

    #[test]
    fn random_prefix() {
        let k = TournamentOracle::seeded_random(5);
        let d = rank_decompose(&k, 200).unwrap();
        d.check(&k).unwrap();
        assert!(dominance_check(&k, &d, 200).unwrap());
    }
}
