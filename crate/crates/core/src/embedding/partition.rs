use std::collections::{BTreeSet, HashMap};

use crate::analysis::gamma_set;
use crate::base::{Digraph, Sign};
use crate::error::{Error, Result};

/// Cells `C_1, C_2, …` of a ±-partition (`flavor = Plus`) or ∓-partition
/// (`flavor = Minus`). Cell `i` (1-based) has type `flavor` when `i` is odd
/// and the opposite type when `i` is even.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PmPartition {
    pub flavor: Sign,
    pub cells: Vec<Vec<usize>>,
    /// False when only a prefix of an infinite partition was produced.
    pub complete: bool,
}

impl PmPartition {
    /// Type of the 1-based cell `i`.
    pub fn cell_type(&self, i: usize) -> Sign {
        cell_type(self.flavor, i)
    }

    pub fn cell(&self, i: usize) -> &[usize] {
        &self.cells[i - 1]
    }

    /// 1-based cell index of every vertex.
    pub fn index(&self) -> HashMap<usize, usize> {
        let mut at = HashMap::new();
        for (i, c) in self.cells.iter().enumerate() {
            for &v in c {
                at.insert(v, i + 1);
            }
        }
        at
    }
}

pub(crate) fn cell_type(flavor: Sign, i: usize) -> Sign {
    if i % 2 == 1 {
        flavor
    } else {
        flavor.opposite()
    }
}

/// Incremental cell construction: cell `i` is the closure of cell `i-1` in
/// the direction of its type, minus the two previous cells.
pub struct PartitionBuilder<'g> {
    g: &'g dyn Digraph,
    flavor: Sign,
    budget: usize,
    cells: Vec<Vec<usize>>,
    placed: HashMap<usize, usize>,
    exhausted: bool,
}

impl<'g> PartitionBuilder<'g> {
    /// Starts with `C_1 = {v}`; `v` must have in-degree 0 for a ±-partition
    /// and out-degree 0 for a ∓-partition.
    pub fn new(g: &'g dyn Digraph, v: usize, flavor: Sign, budget: usize) -> Result<Self> {
        let blocking = g.neighbors(v, flavor.opposite());
        if !blocking.is_empty() {
            return Err(Error::NotExtremal {
                vertex: v,
                side: if flavor == Sign::Plus { "in" } else { "out" },
                degree: blocking.len(),
            });
        }
        Ok(Self {
            g,
            flavor,
            budget,
            cells: vec![vec![v]],
            placed: HashMap::from([(v, 1)]),
            exhausted: false,
        })
    }

    pub fn flavor(&self) -> Sign {
        self.flavor
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    /// 1-based cell of a placed vertex.
    pub fn cell_of(&self, v: usize) -> Option<usize> {
        self.placed.get(&v).copied()
    }

    /// Builds cells until there are `i` of them. Returns false if the
    /// partition ended (an empty cell) first.
    pub fn ensure(&mut self, i: usize) -> Result<bool> {
        while self.cells.len() < i {
            if !self.push_next()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Computes the next cell; false once the partition has ended.
    pub fn push_next(&mut self) -> Result<bool> {
        if self.exhausted {
            return Ok(false);
        }
        let i = self.cells.len() + 1;
        let prev = &self.cells[i - 2];
        let dir = cell_type(self.flavor, i - 1);
        let closure = gamma_set(self.g, prev, dir, self.budget)?;
        let mut cell = Vec::new();
        for v in closure.members {
            match self.placed.get(&v) {
                Some(&c) if c + 2 >= i => {}
                Some(&c) => {
                    return Err(Error::Consistency(format!(
                        "closure of cell {} reached vertex {v} of cell {c}",
                        i - 1
                    )))
                }
                None => cell.push(v),
            }
        }
        if cell.is_empty() {
            self.exhausted = true;
            return Ok(false);
        }
        for &v in &cell {
            self.placed.insert(v, i);
        }
        self.cells.push(cell);
        Ok(true)
    }

    pub fn finish(self, complete: bool) -> PmPartition {
        PmPartition {
            flavor: self.flavor,
            cells: self.cells,
            complete,
        }
    }
}

/// The full partition of the component of `v`. Loops forever on infinite
/// components unless a closure exhausts `budget`; use
/// [`pm_partition_prefix`] for those.
pub fn pm_partition(g: &dyn Digraph, v: usize, flavor: Sign, budget: usize) -> Result<PmPartition> {
    let mut b = PartitionBuilder::new(g, v, flavor, budget)?;
    while b.push_next()? {}
    Ok(b.finish(true))
}

/// At most `max_cells` cells; `complete` reports whether the partition
/// ended within them.
pub fn pm_partition_prefix(
    g: &dyn Digraph,
    v: usize,
    flavor: Sign,
    budget: usize,
    max_cells: usize,
) -> Result<PmPartition> {
    let mut b = PartitionBuilder::new(g, v, flavor, budget)?;
    let complete = !b.ensure(max_cells + 1)?;
    if !complete {
        b.cells.truncate(max_cells);
    }
    Ok(b.finish(complete))
}

/// Checks A1–A4 on a produced partition.
///
/// For a prefix, edges leaving the last cell cannot be judged and are
/// skipped; everything else is checked as for a complete partition.
pub fn check_axioms(g: &dyn Digraph, p: &PmPartition) -> std::result::Result<(), String> {
    let at = p.index();
    let last = p.cells.len();
    for (idx, cell) in p.cells.iter().enumerate() {
        let i = idx + 1;
        // A1
        if cell.is_empty() {
            return Err(format!("A1: cell {i} is empty"));
        }
        let distinct: BTreeSet<usize> = cell.iter().copied().collect();
        if distinct.len() != cell.len() {
            return Err(format!("A1: cell {i} repeats a vertex"));
        }
        let t = p.cell_type(i);
        for &x in cell {
            for (y, y_is_out) in g
                .out_neighbors(x)
                .into_iter()
                .map(|y| (y, true))
                .chain(g.in_neighbors(x).into_iter().map(|y| (y, false)))
            {
                let j = match at.get(&y) {
                    Some(&j) => j,
                    None if !p.complete && i == last => continue,
                    None => return Err(format!("A2: edge at {x} leaves the partition via {y}")),
                };
                // A2
                if j + 1 < i || i + 1 < j {
                    return Err(format!("A2: edge {x}-{y} joins cells {i} and {j}"));
                }
                // A3
                if j != i {
                    let wrong = match t {
                        Sign::Plus => !y_is_out,
                        Sign::Minus => y_is_out,
                    };
                    if wrong {
                        return Err(format!("A3: cell {i} (type {t}) has edge {x}-{y} of the wrong direction"));
                    }
                }
            }
        }
        // A4
        let extremal = cell.iter().any(|&x| g.neighbors(x, t.opposite()).is_empty());
        if !extremal {
            return Err(format!("A4: cell {i} (type {t}) has no extremal vertex"));
        }
    }
    if p.complete {
        let covered: usize = p.cells.iter().map(Vec::len).sum();
        if covered != at.len() {
            return Err("cells overlap".into());
        }
    }
    Ok(())
}
