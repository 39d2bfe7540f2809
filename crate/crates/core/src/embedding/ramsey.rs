use std::collections::{BTreeMap, HashMap, HashSet};

use super::EmbeddingMap;
use crate::analysis::topological_order;
use crate::base::{FiniteOrientedGraph, TournamentOracle};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Color {
    Red,
    Blue,
}

/// A 2-colouring of the pairs of a tournament slice, keyed by slice
/// positions `(a, b)` with `a < b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub colors: HashMap<(usize, usize), Color>,
}

impl Coloring {
    pub fn color(&self, a: usize, b: usize) -> Color {
        self.colors[&(a.min(b), a.max(b))]
    }

    /// True when every pair inside `set` has colour `c`.
    pub fn is_monochromatic(&self, set: &[usize], c: Color) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &a)| set[i + 1..].iter().all(|&b| self.color(a, b) == c))
    }
}

/// Colours the pair of `slice[a]`, `slice[b]` red when the tournament edge
/// runs from the smaller to the larger `phi` value, blue otherwise.
pub fn tournament_to_coloring(
    k: &TournamentOracle,
    slice: &[usize],
    phi: &[usize],
) -> Result<Coloring> {
    if phi.len() != slice.len() {
        return Err(Error::NotBijective(format!(
            "{} labels for {} vertices",
            phi.len(),
            slice.len()
        )));
    }
    let distinct: HashSet<usize> = phi.iter().copied().collect();
    if distinct.len() != phi.len() {
        return Err(Error::NotBijective("labels repeat".into()));
    }
    let mut colors = HashMap::new();
    for a in 0..slice.len() {
        for b in a + 1..slice.len() {
            let (lo, hi) = if phi[a] < phi[b] { (a, b) } else { (b, a) };
            let c = if k.has_edge(slice[lo], slice[hi])? {
                Color::Red
            } else {
                Color::Blue
            };
            colors.insert((a, b), c);
        }
    }
    Ok(Coloring { colors })
}

/// `t` pool vertices `w_1 … w_t` with `w_a → w_b` for all `a < b`.
///
/// Greedy halving: the first remaining candidate joins the front of the
/// order if at least half of the others are its out-neighbours (and the
/// search continues among those), otherwise it joins the back and the search
/// continues among its in-neighbours. A pool of `2^(t-1)` always suffices.
pub fn find_transitive_subtournament(
    k: &TournamentOracle,
    pool: &[usize],
    t: usize,
) -> Result<Vec<usize>> {
    if t == 0 {
        return Ok(Vec::new());
    }
    let need = 1usize
        .checked_shl((t - 1) as u32)
        .ok_or(Error::PoolTooSmall { have: pool.len(), need: usize::MAX, target: t })?;
    if pool.len() < need {
        return Err(Error::PoolTooSmall { have: pool.len(), need, target: t });
    }
    let mut front = Vec::new();
    let mut back = Vec::new();
    let mut cur: Vec<usize> = pool.to_vec();
    while front.len() + back.len() < t {
        let (&w, rest) = cur
            .split_first()
            .ok_or_else(|| Error::Consistency("halving ran out of candidates".into()))?;
        let mut outs = Vec::new();
        let mut ins = Vec::new();
        for &x in rest {
            if k.has_edge(w, x)? {
                outs.push(x);
            } else {
                ins.push(x);
            }
        }
        if outs.len() >= ins.len() {
            front.push(w);
            cur = outs;
        } else {
            back.push(w);
            cur = ins;
        }
    }
    front.extend(back.into_iter().rev());
    Ok(front)
}

/// Embeds a finite acyclic graph into `k`, keeping the `pins` (G-vertex →
/// K-vertex) and putting every other vertex into `pool`.
///
/// The unpinned vertices, in topological order, go onto a transitive
/// subtournament of the pool. Edges between pinned and pool vertices are
/// the caller's responsibility; a violation is reported as a pin conflict.
pub fn embed_finite_acyclic(
    g: &FiniteOrientedGraph,
    k: &TournamentOracle,
    pool: &[usize],
    pins: &BTreeMap<usize, usize>,
) -> Result<EmbeddingMap> {
    let order = topological_order(g)?;
    let free: Vec<usize> = order.into_iter().filter(|v| !pins.contains_key(v)).collect();
    let pinned: HashSet<usize> = pins.values().copied().collect();
    let pool: Vec<usize> = pool.iter().copied().filter(|x| !pinned.contains(x)).collect();
    let chain = find_transitive_subtournament(k, &pool, free.len())?;

    let mut map = EmbeddingMap::new();
    for (&gv, &kv) in pins {
        map.insert(gv, kv)?;
    }
    for (&gv, &kv) in free.iter().zip(&chain) {
        map.insert(gv, kv)?;
    }
    for (u, v) in g.edges() {
        let (ku, kv) = (map.get(u).unwrap(), map.get(v).unwrap());
        if !k.has_edge(ku, kv)? {
            let pinned = if pins.contains_key(&u) { u } else { v };
            if pins.contains_key(&u) || pins.contains_key(&v) {
                return Err(Error::PinConflict { pinned, from: u, to: v });
            }
            return Err(Error::Consistency(format!("chain edge ({u}, {v}) not in K")));
        }
    }
    Ok(map)
}
