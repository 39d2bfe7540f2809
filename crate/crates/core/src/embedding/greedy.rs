use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use super::EmbeddingMap;
use crate::analysis::{budget_from_env, find_cycle};
use crate::base::{Digraph, Sign};
use crate::error::{Error, Result};

/// The two transitive targets of the greedy embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransitiveTarget {
    Omega,
    OmegaStar,
}

/// Embeds an acyclic graph into `K_ω` (or `K_ω*`) by repeatedly taking the
/// smallest-index vertex with no unassigned in-neighbour (out-neighbour for
/// `K_ω*`) and giving it the next position.
///
/// Finite graphs are embedded completely when `horizon ≥ n`; otherwise the
/// first `horizon` positions are filled.
pub fn greedy_embed_transitive(
    g: &dyn Digraph,
    target: TransitiveTarget,
    horizon: usize,
) -> Result<EmbeddingMap> {
    // for K_ω a vertex waits on its in-neighbours, for K_ω* on its out-neighbours
    let wait = match target {
        TransitiveTarget::Omega => Sign::Minus,
        TransitiveTarget::OmegaStar => Sign::Plus,
    };
    let total = g.order().map_or(horizon, |n| n.min(horizon));
    let scan_limit = horizon.saturating_add(budget_from_env());

    let mut map = EmbeddingMap::new();
    let mut pending: HashMap<usize, usize> = HashMap::new();
    let mut ready: BinaryHeap<Reverse<usize>> = BinaryHeap::new();
    let mut next = 0usize;

    while map.len() < total {
        if ready.is_empty() {
            let bound = g.order().unwrap_or(usize::MAX);
            if next >= bound {
                let rest: Vec<usize> = (0..bound).filter(|&v| map.get(v).is_none()).collect();
                let cycle = find_cycle(rest, |v| g.out_neighbors(v))
                    .expect("no ready vertex implies a cycle");
                return Err(Error::Cyclic(cycle));
            }
            if next >= scan_limit {
                return Err(Error::BudgetExhausted { vertex: next, budget: scan_limit });
            }
            let v = next;
            next += 1;
            let waiting = g
                .neighbors(v, wait)
                .into_iter()
                .filter(|&w| map.get(w).is_none())
                .count();
            if waiting == 0 {
                ready.push(Reverse(v));
            } else {
                pending.insert(v, waiting);
            }
            continue;
        }
        let Reverse(v) = ready.pop().unwrap();
        map.insert(v, map.len())?;
        for w in g.neighbors(v, wait.opposite()) {
            if let Some(c) = pending.get_mut(&w) {
                *c -= 1;
                if *c == 0 {
                    pending.remove(&w);
                    ready.push(Reverse(w));
                }
            }
        }
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{FiniteOrientedGraph, PresentedGraph, TournamentOracle};

    #[test]
    fn small_examples() {
        let e = FiniteOrientedGraph::new(2, [(0, 1)]).unwrap();
        let m = greedy_embed_transitive(&e, TransitiveTarget::Omega, 10).unwrap();
        assert_eq!((m.get(0), m.get(1)), (Some(0), Some(1)));
        let star = FiniteOrientedGraph::new(3, [(0, 1), (0, 2)]).unwrap();
        let m = greedy_embed_transitive(&star, TransitiveTarget::Omega, 10).unwrap();
        assert_eq!(m.iter().collect::<Vec<_>>(), vec![(0, 0), (1, 1), (2, 2)]);
        let m = greedy_embed_transitive(&star, TransitiveTarget::OmegaStar, 10).unwrap();
        assert_eq!(m.iter().collect::<Vec<_>>(), vec![(0, 2), (1, 0), (2, 1)]);
        assert!(m.is_valid(&star, &TournamentOracle::transitive_omega_star()).unwrap());
    }

    #[test]
    fn cycle_is_rejected() {
        let c = FiniteOrientedGraph::new(4, [(0, 1), (1, 2), (2, 1), (2, 3)]);
        assert!(c.is_err());
        let c = FiniteOrientedGraph::new(4, [(0, 1), (1, 2), (2, 3), (3, 1)]).unwrap();
        assert!(matches!(
            greedy_embed_transitive(&c, TransitiveTarget::Omega, 10),
            Err(Error::Cyclic(_))
        ));
    }

    #[test]
    fn presented_anti_path_fills_positions() {
        let g = PresentedGraph::anti_directed_path();
        for target in [TransitiveTarget::Omega, TransitiveTarget::OmegaStar] {
            let m = greedy_embed_transitive(&g, target, 500).unwrap();
            let mut pos: Vec<usize> = m.image().collect();
            pos.sort_unstable();
            assert_eq!(pos, (0..500).collect::<Vec<_>>());
            let k = match target {
                TransitiveTarget::Omega => TournamentOracle::transitive_omega(),
                TransitiveTarget::OmegaStar => TournamentOracle::transitive_omega_star(),
            };
            assert!(m.is_valid(&g, &k).unwrap());
        }
    }
}
