//! Acyclicity, closures, ranks and the unavoidability classifier.

use std::collections::{BTreeSet, BinaryHeap, HashMap, HashSet, VecDeque};
use std::cmp::Reverse;

use crate::base::{Digraph, FiniteOrientedGraph, Sign};
use crate::error::{Error, Result};

/// Default closure budget, in vertex expansions.
pub const DEFAULT_BUDGET: usize = 10_000;

/// Reads `TOURLAB_BUDGET`, falling back to [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> usize {
    std::env::var("TOURLAB_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&b| b >= 1)
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Acyclicity {
    Acyclic,
    /// Vertices of a directed cycle, in order.
    Cycle(Vec<usize>),
}

impl Acyclicity {
    pub fn is_acyclic(&self) -> bool {
        matches!(self, Acyclicity::Acyclic)
    }
}

pub fn is_acyclic(g: &FiniteOrientedGraph) -> Acyclicity {
    match find_cycle(0..g.n(), |v| g.out_slice(v).to_vec()) {
        Some(c) => Acyclicity::Cycle(c),
        None => Acyclicity::Acyclic,
    }
}

/// Finds a directed cycle among `vertices`, following only edges that stay
/// inside the set.
pub fn find_cycle<I, F>(vertices: I, out: F) -> Option<Vec<usize>>
where
    I: IntoIterator<Item = usize>,
    F: Fn(usize) -> Vec<usize>,
{
    let verts: Vec<usize> = vertices.into_iter().collect();
    let inside: HashSet<usize> = verts.iter().copied().collect();
    // 1 = on stack, 2 = finished
    let mut state: HashMap<usize, u8> = HashMap::new();
    for &root in &verts {
        if state.contains_key(&root) {
            continue;
        }
        let mut stack: Vec<(usize, Vec<usize>, usize)> = vec![(root, out(root), 0)];
        state.insert(root, 1);
        while let Some((v, succ, idx)) = stack.last_mut() {
            if *idx == succ.len() {
                state.insert(*v, 2);
                stack.pop();
                continue;
            }
            let w = succ[*idx];
            *idx += 1;
            if !inside.contains(&w) {
                continue;
            }
            match state.get(&w) {
                Some(1) => {
                    let start = stack.iter().position(|f| f.0 == w).unwrap();
                    return Some(stack[start..].iter().map(|f| f.0).collect());
                }
                Some(_) => {}
                None => {
                    state.insert(w, 1);
                    let s = out(w);
                    stack.push((w, s, 0));
                }
            }
        }
    }
    None
}

/// Topological order, smallest available index first.
pub fn topological_order(g: &FiniteOrientedGraph) -> Result<Vec<usize>> {
    let mut indeg: Vec<usize> = (0..g.n()).map(|v| g.in_slice(v).len()).collect();
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..g.n()).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(g.n());
    while let Some(Reverse(v)) = ready.pop() {
        order.push(v);
        for &w in g.out_slice(v) {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.push(Reverse(w));
            }
        }
    }
    if order.len() < g.n() {
        let cycle = match is_acyclic(g) {
            Acyclicity::Cycle(c) => c,
            Acyclicity::Acyclic => unreachable!("Kahn stalled on an acyclic graph"),
        };
        return Err(Error::Cyclic(cycle));
    }
    Ok(order)
}

pub fn transitive_closure(g: &FiniteOrientedGraph) -> Result<FiniteOrientedGraph> {
    topological_order(g)?;
    let mut edges = Vec::new();
    for v in 0..g.n() {
        let reach = bfs(v, |x| g.out_slice(x).to_vec(), usize::MAX).expect("unbounded");
        edges.extend(reach.into_iter().filter(|&w| w != v).map(|w| (v, w)));
    }
    FiniteOrientedGraph::new(g.n(), edges)
}

/// `Γ^±` of a vertex or vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureResult {
    pub vertex: usize,
    pub members: BTreeSet<usize>,
    pub budget_spent: usize,
}

/// Reflexive closure of `v` in direction `dir`, spending at most `budget`
/// vertex expansions.
pub fn gamma(g: &dyn Digraph, v: usize, dir: Sign, budget: usize) -> Result<ClosureResult> {
    gamma_set(g, &[v], dir, budget)
}

/// Union of the closures of `sources`.
pub fn gamma_set(g: &dyn Digraph, sources: &[usize], dir: Sign, budget: usize) -> Result<ClosureResult> {
    let vertex = sources.first().copied().unwrap_or(0);
    let mut members: BTreeSet<usize> = sources.iter().copied().collect();
    let mut queue: VecDeque<usize> = members.iter().copied().collect();
    let mut spent = 0;
    while let Some(x) = queue.pop_front() {
        if spent == budget {
            return Err(Error::BudgetExhausted { vertex, budget });
        }
        spent += 1;
        for w in g.neighbors(x, dir) {
            if members.insert(w) {
                queue.push_back(w);
            }
        }
    }
    Ok(ClosureResult {
        vertex,
        members,
        budget_spent: spent,
    })
}

fn bfs<F: Fn(usize) -> Vec<usize>>(v: usize, next: F, budget: usize) -> Option<BTreeSet<usize>> {
    let mut seen = BTreeSet::from([v]);
    let mut queue = VecDeque::from([v]);
    let mut spent = 0;
    while let Some(x) = queue.pop_front() {
        if spent == budget {
            return None;
        }
        spent += 1;
        for w in next(x) {
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    Some(seen)
}

/// Finite-rank function: 0 on sources, else one more than the largest rank
/// of an in-neighbour.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankFunction {
    pub h: Vec<usize>,
}

impl RankFunction {
    /// Level sets `V_α`, in increasing `α`.
    pub fn levels(&self) -> Vec<Vec<usize>> {
        let top = self.h.iter().copied().max().map_or(0, |m| m + 1);
        let mut levels = vec![Vec::new(); top];
        for (v, &a) in self.h.iter().enumerate() {
            levels[a].push(v);
        }
        levels
    }
}

pub fn rank(g: &FiniteOrientedGraph) -> Result<RankFunction> {
    let order = topological_order(g)?;
    let mut h = vec![0; g.n()];
    for v in order {
        h[v] = g.in_slice(v).iter().map(|&w| h[w] + 1).max().unwrap_or(0);
    }
    Ok(RankFunction { h })
}

/// Evidence behind an `Avoidable` verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A directed cycle.
    Cycle(Vec<usize>),
    /// A directed path from `start` longer than the budget, in a closure the
    /// generator certifies to be infinite.
    EscapingPath { start: usize, sign: Sign, path: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Unavoidable,
    Avoidable(Witness),
    Inconclusive(String),
}

/// Decides unavoidability where it can, and says so when it cannot.
///
/// Finite graphs are unavoidable exactly when acyclic. For presented graphs,
/// `Unavoidable` means every vertex below `budget` has finite closures in
/// both directions (each within `budget` expansions) and the explored
/// region is acyclic.
pub fn classify_unavoidability(g: &dyn Digraph, budget: usize) -> Classification {
    if let Some(n) = g.order() {
        return match find_cycle(0..n, |v| g.out_neighbors(v)) {
            Some(c) => Classification::Avoidable(Witness::Cycle(c)),
            None => Classification::Unavoidable,
        };
    }
    let mut explored: BTreeSet<usize> = BTreeSet::new();
    let mut stuck: Option<(usize, Sign)> = None;
    'outer: for v in 0..budget {
        for sign in [Sign::Plus, Sign::Minus] {
            match gamma(g, v, sign, budget) {
                Ok(c) => explored.extend(c.members),
                Err(_) => {
                    stuck = Some((v, sign));
                    break 'outer;
                }
            }
        }
    }
    if let Some((v, sign)) = stuck {
        // whatever was reached is still worth scanning for a cycle
        if let Some(path) = deep_path(g, v, sign, budget) {
            explored.extend(path.iter().copied());
        }
    }
    if let Some(c) = find_cycle(explored.iter().copied(), |v| g.out_neighbors(v)) {
        return Classification::Avoidable(Witness::Cycle(c));
    }
    match stuck {
        None => Classification::Unavoidable,
        Some((v, sign)) if g.escapes(v, sign) => {
            let path = deep_path(g, v, sign, budget).unwrap_or_default();
            Classification::Avoidable(Witness::EscapingPath { start: v, sign, path })
        }
        Some((v, sign)) => Classification::Inconclusive(format!(
            "closure {sign} of vertex {v} did not close within {budget} expansions"
        )),
    }
}

/// A longest shortest-path from `v` found while expanding `budget` vertices.
fn deep_path(g: &dyn Digraph, v: usize, sign: Sign, budget: usize) -> Option<Vec<usize>> {
    let mut parent: HashMap<usize, usize> = HashMap::new();
    let mut queue = VecDeque::from([v]);
    let mut seen = HashSet::from([v]);
    let mut last = v;
    let mut spent = 0;
    while let Some(x) = queue.pop_front() {
        if spent == budget {
            break;
        }
        spent += 1;
        last = x;
        for w in g.neighbors(x, sign) {
            if seen.insert(w) {
                parent.insert(w, x);
                queue.push_back(w);
            }
        }
    }
    let mut path = vec![last];
    while let Some(&p) = parent.get(path.last().unwrap()) {
        path.push(p);
    }
    path.reverse();
    Some(path)
}
