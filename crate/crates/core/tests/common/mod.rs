//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library's own checkers.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tourlab::base::{Digraph, InjectionSpec, OrdinalValue, Sign, TournamentOracle};
use tourlab::embedding::EmbeddingMap;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `I_f[n]` by looking at every pair.
pub fn brute_inversions(values: &[OrdinalValue]) -> u64 {
    let mut count = 0;
    for j in 0..values.len() {
        for i in 0..j {
            count += (values[i] > values[j]) as u64;
        }
    }
    count
}

/// Distinct values with a random mix of majors, so ties on `major` happen.
pub fn random_values(rng: &mut ChaCha8Rng, n: usize) -> Vec<OrdinalValue> {
    let mut minors: Vec<u64> = (0..n as u64).collect();
    minors.shuffle(rng);
    let majors = rng.gen_range(1..=4u64);
    minors
        .into_iter()
        .map(|m| OrdinalValue::new(rng.gen_range(0..majors), m))
        .collect()
}

pub fn random_injection(rng: &mut ChaCha8Rng, n: usize) -> InjectionSpec {
    InjectionSpec::from_table(random_values(rng, n))
}

/// Sizes of the factorial blocks `{1}, {2}, {3..6}, {7..24}, …` (1-based).
pub fn factorial_block_sizes(up_to: u64) -> Vec<u64> {
    let mut sizes = vec![1];
    let (mut lo, mut k) = (1u64, 2u64);
    while lo < up_to {
        let hi = lo * k;
        sizes.push(hi - lo);
        lo = hi;
        k += 1;
    }
    sizes
}

/// Forward pairs among the first `n` vertices of the factorial-block
/// tournament: pairs inside a block.
pub fn factorial_forward(n: u64) -> u64 {
    let mut left = n;
    let mut total = 0;
    for s in factorial_block_sizes(n) {
        let take = s.min(left);
        total += take * take.saturating_sub(1) / 2;
        left -= take;
        if left == 0 {
            break;
        }
    }
    total
}

/// `a/b < c/d` for positive denominators.
pub fn frac_lt(a: u64, b: u64, c: u64, d: u64) -> bool {
    (a as u128) * (d as u128) < (c as u128) * (b as u128)
}

pub fn pairs(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// `w_a → w_b` for all `a < b`, with distinct members from `pool`.
pub fn is_transitive_in(k: &TournamentOracle, seq: &[usize], pool: &[usize]) -> bool {
    let distinct: HashSet<usize> = seq.iter().copied().collect();
    if distinct.len() != seq.len() || seq.iter().any(|v| !pool.contains(v)) {
        return false;
    }
    for b in 0..seq.len() {
        for a in 0..b {
            if !k.has_edge(seq[a], seq[b]).unwrap() {
                return false;
            }
        }
    }
    true
}

/// The tournament on `0..n` that `k` induces, as a bit per pair `i < j`
/// (set when `i → j`).
pub fn pattern(k: &TournamentOracle, n: usize) -> u32 {
    let mut bits = 0;
    let mut at = 0;
    for j in 0..n {
        for i in 0..j {
            if k.has_edge(i, j).unwrap() {
                bits |= 1 << at;
            }
            at += 1;
        }
    }
    bits
}

/// Edges of `g` between mapped vertices whose image is not a `k`-edge.
pub fn broken_edges(map: &EmbeddingMap, g: &dyn Digraph, k: &TournamentOracle) -> Vec<(usize, usize)> {
    let mut bad = Vec::new();
    for (u, ku) in map.iter() {
        for v in g.out_neighbors(u) {
            if let Some(kv) = map.get(v) {
                if !k.has_edge(ku, kv).unwrap() {
                    bad.push((u, v));
                }
            }
        }
    }
    bad
}

/// A1–A4 read off the definition, for a complete partition or a prefix
/// (`complete = false`), where the unknown cell after the last one is
/// treated as empty and edges leaving the last cell into unplaced vertices
/// are not judged.
pub fn axioms_hold(g: &dyn Digraph, cells: &[Vec<usize>], flavor: Sign, complete: bool) -> Result<(), String> {
    let mut at: HashMap<usize, usize> = HashMap::new();
    for (idx, cell) in cells.iter().enumerate() {
        if cell.is_empty() {
            return Err(format!("A1 fails: C{} is empty", idx + 1));
        }
        for &v in cell {
            if at.insert(v, idx + 1).is_some() {
                return Err(format!("A1 fails: vertex {v} placed twice"));
            }
        }
    }
    let last = cells.len();
    for (idx, cell) in cells.iter().enumerate() {
        let i = idx + 1;
        // the "in" side of a + cell
        let plus = (i % 2 == 1) == (flavor == Sign::Plus);
        for &x in cell {
            for (y, out) in g
                .out_neighbors(x)
                .into_iter()
                .map(|y| (y, true))
                .chain(g.in_neighbors(x).into_iter().map(|y| (y, false)))
            {
                let Some(&j) = at.get(&y) else {
                    if !complete && i == last {
                        continue;
                    }
                    return Err(format!("A2 fails: neighbour {y} of {x} (C{i}) is unplaced"));
                };
                if i.abs_diff(j) > 1 {
                    return Err(format!("A2 fails: edge between C{i} and C{j}"));
                }
                if j != i {
                    // an in-edge into a + cell, or an out-edge from a - cell
                    if plus && !out {
                        return Err(format!("A3 fails: {x} in C{i} has in-neighbour {y} in C{j}"));
                    }
                    if !plus && out {
                        return Err(format!("A3 fails: {x} in C{i} has out-neighbour {y} in C{j}"));
                    }
                }
            }
        }
        let extremal = cell.iter().any(|&x| {
            if plus {
                g.in_neighbors(x).is_empty()
            } else {
                g.out_neighbors(x).is_empty()
            }
        });
        if !extremal {
            return Err(format!("A4 fails: C{i} has no extremal vertex"));
        }
    }
    Ok(())
}

/// Levels by the peeling iteration `A_{α+1} = {x : every forward
/// out-neighbour of x is in A_α}` on `[n]`.
pub fn peel_levels(k: &TournamentOracle, n: usize) -> Vec<usize> {
    let mut fwd: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if k.has_edge(i, j).unwrap() {
                fwd[i].push(j);
            }
        }
    }
    let mut level = vec![usize::MAX; n];
    let mut alpha = 0;
    let mut placed = 0;
    while placed < n {
        let layer: Vec<usize> = (0..n)
            .filter(|&x| level[x] == usize::MAX && fwd[x].iter().all(|&y| level[y] < alpha))
            .collect();
        assert!(!layer.is_empty(), "peeling stalled at level {alpha}");
        for &x in &layer {
            level[x] = alpha;
        }
        placed += layer.len();
        alpha += 1;
    }
    level
}

/// Random DAG on `n` vertices: edges go from lower to higher index.
pub fn random_dag(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for b in 0..n {
        for a in 0..b {
            if rng.gen_bool(p) {
                edges.push((order[a], order[b]));
            }
        }
    }
    edges
}
