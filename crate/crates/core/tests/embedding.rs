mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use tourlab::analysis::{classify_unavoidability, Classification};
use tourlab::base::{Digraph, FiniteOrientedGraph, PresentedGraph, Sign, TournamentOracle};
use tourlab::embedding::{
    auto_oracle, embed_finite_acyclic, find_transitive_subtournament, greedy_embed_transitive,
    pm_partition, pm_partition_prefix, spanning_embed, tournament_to_coloring, AlwaysInfinite,
    Color, TransitiveTarget,
};
use tourlab::Error;

/// A weakly connected DAG: a random tree plus extra edges, all oriented
/// along a hidden random order.
fn connected_dag(seed: u64, n: usize) -> FiniteOrientedGraph {
    let mut r = rng(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut r);
    let mut pos = vec![0; n];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    let mut pairs = BTreeSet::new();
    for v in 1..n {
        pairs.insert((r.gen_range(0..v), v));
    }
    for _ in 0..n / 3 {
        let (a, b) = (r.gen_range(0..n), r.gen_range(0..n));
        if a != b {
            pairs.insert((a.min(b), a.max(b)));
        }
    }
    let edges = pairs
        .into_iter()
        .map(|(a, b)| if pos[a] < pos[b] { (a, b) } else { (b, a) });
    FiniteOrientedGraph::new(n, edges).unwrap()
}

proptest! {
    #[test]
    fn greedy_fills_omega_and_omega_star(seed in any::<u64>(), n in 1usize..60, p in 0.0f64..0.6) {
        let g = FiniteOrientedGraph::new(n, random_dag(&mut rng(seed), n, p)).unwrap();
        for (target, k) in [
            (TransitiveTarget::Omega, TournamentOracle::transitive_omega()),
            (TransitiveTarget::OmegaStar, TournamentOracle::transitive_omega_star()),
        ] {
            let map = greedy_embed_transitive(&g, target, n + 10).unwrap();
            prop_assert_eq!(map.len(), n);
            let image: BTreeSet<usize> = map.image().collect();
            prop_assert_eq!(image, (0..n).collect::<BTreeSet<_>>());
            prop_assert!(broken_edges(&map, &g, &k).is_empty());
        }
    }

    #[test]
    fn partitions_of_finite_dags(seed in any::<u64>(), n in 1usize..50) {
        let g = connected_dag(seed, n);
        for flavor in [Sign::Plus, Sign::Minus] {
            for v in (0..n).filter(|&v| g.neighbors(v, flavor.opposite()).is_empty()) {
                let p = pm_partition(&g, v, flavor, 10_000).unwrap();
                prop_assert_eq!(&p.cells[0], &vec![v]);
                let covered: usize = p.cells.iter().map(Vec::len).sum();
                prop_assert_eq!(covered, n);
                prop_assert_eq!(axioms_hold(&g, &p.cells, flavor, true), Ok(()));
            }
        }
    }

    #[test]
    fn halving_finds_transitive_sets(seed in any::<u64>(), t in 1usize..7, extra in 0usize..20) {
        let k = TournamentOracle::seeded_random(seed);
        let pool: Vec<usize> = (0..(1 << (t - 1)) + extra).map(|i| 3 * i + 1).collect();
        let w = find_transitive_subtournament(&k, &pool, t).unwrap();
        prop_assert_eq!(w.len(), t);
        prop_assert!(is_transitive_in(&k, &w, &pool));
    }

    #[test]
    fn finite_acyclic_graphs_embed_into_random_tournaments(seed in any::<u64>(), n in 1usize..9) {
        let g = FiniteOrientedGraph::new(n, random_dag(&mut rng(seed), n, 0.4)).unwrap();
        let k = TournamentOracle::seeded_random(seed);
        let pool: Vec<usize> = (0..1usize << n.saturating_sub(1)).collect();
        let map = embed_finite_acyclic(&g, &k, &pool, &BTreeMap::new()).unwrap();
        prop_assert_eq!(map.len(), n);
        prop_assert!(map.image().all(|x| pool.contains(&x)));
        prop_assert!(broken_edges(&map, &g, &k).is_empty());
    }
}

#[test]
fn coloring_reduction_matches_orientation() {
    let k = TournamentOracle::seeded_random(5);
    let slice: Vec<usize> = (0..12).collect();
    let phi: Vec<usize> = (0..12).rev().collect();
    let c = tournament_to_coloring(&k, &slice, &phi).unwrap();
    for b in 0..12 {
        for a in 0..b {
            // phi reverses the order, so red means the edge runs b → a
            let red = k.has_edge(slice[b], slice[a]).unwrap();
            assert_eq!(c.color(a, b), if red { Color::Red } else { Color::Blue });
        }
    }
}

#[test]
fn small_pool_is_an_error() {
    let k = TournamentOracle::transitive_omega();
    assert!(matches!(
        find_transitive_subtournament(&k, &[0, 1, 2], 4),
        Err(Error::PoolTooSmall { have: 3, need: 8, target: 4 })
    ));
}

#[test]
fn greedy_rejects_cycles() {
    let g = FiniteOrientedGraph::new(4, [(0, 1), (1, 2), (2, 1), (2, 3)]);
    assert!(g.is_err());
    let g = FiniteOrientedGraph::new(4, [(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
    assert!(matches!(
        greedy_embed_transitive(&g, TransitiveTarget::Omega, 10),
        Err(Error::Cyclic(_))
    ));
}

#[test]
fn partition_needs_an_extremal_start() {
    let g = PresentedGraph::anti_directed_path();
    let bad = (0..).find(|&v| !g.in_neighbors(v).is_empty()).unwrap();
    assert!(matches!(
        pm_partition_prefix(&g, bad, Sign::Plus, 100, 5),
        Err(Error::NotExtremal { .. })
    ));
}

#[test]
fn infinite_partitions_satisfy_the_axioms() {
    for g in [
        PresentedGraph::anti_directed_path(),
        PresentedGraph::interleaved_forest(),
        PresentedGraph::random_layered(3),
    ] {
        for flavor in [Sign::Plus, Sign::Minus] {
            let v = (0..).find(|&v| g.neighbors(v, flavor.opposite()).is_empty()).unwrap();
            let p = pm_partition_prefix(&g, v, flavor, 10_000, 60).unwrap();
            assert_eq!(axioms_hold(&g, &p.cells, flavor, p.complete), Ok(()), "{}", g.name());
        }
    }
}

#[test]
fn spanning_runs_cover_and_respect_edges() {
    for g in [PresentedGraph::anti_directed_path(), PresentedGraph::out_stars(), PresentedGraph::interleaved_forest()] {
        for k in [
            TournamentOracle::transitive_omega(),
            TournamentOracle::transitive_omega_star(),
            TournamentOracle::seeded_random(99),
        ] {
            let oracle = auto_oracle(&k).unwrap();
            let run = spanning_embed(&g, &k, oracle.as_ref(), 40).unwrap();
            assert!((0..40).all(|u| run.map.covers(u)), "{} into {k}", g.name());
            assert!(broken_edges(&run.map, &g, &k).is_empty(), "{} into {k}", g.name());
            assert!(run.is_complete());
        }
    }
}

#[test]
fn spanning_is_deterministic() {
    let g = PresentedGraph::interleaved_forest();
    let k = TournamentOracle::seeded_random(4);
    let a = spanning_embed(&g, &k, &AlwaysInfinite, 30).unwrap();
    let b = spanning_embed(&g, &k, &AlwaysInfinite, 30).unwrap();
    assert_eq!(a.map.iter().collect::<Vec<_>>(), b.map.iter().collect::<Vec<_>>());
}

#[test]
fn layered_graphs_are_unavoidable_on_the_explored_region() {
    let g = PresentedGraph::random_layered(8);
    assert_eq!(classify_unavoidability(&g, 200), Classification::Unavoidable);
}
