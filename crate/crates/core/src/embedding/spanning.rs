use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use super::oracle::{InfinitenessOracle, StarSigns};
use super::partition::{cell_type, PartitionBuilder};
use super::ramsey::embed_finite_acyclic;
use super::EmbeddingMap;
use crate::analysis::budget_from_env;
use crate::base::{Digraph, FiniteOrientedGraph, Sign, TournamentOracle};
use crate::error::{Error, Result};

/// Largest number of free vertices embedded in one step.
pub const CHUNK_CAP: usize = 16;

/// Undirected probe size used to tell finite components from infinite ones.
const PROBE: usize = 256;

/// Fresh vertices tried per opening attempt.
const OPEN_SCAN: usize = 64;

/// State of one infinite component at the end of a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineSummary {
    pub start: usize,
    pub flavor: Sign,
    /// Index `i_j` of the last fully embedded cell (1-based).
    pub frontier: usize,
    /// The partition of this component ended inside the run.
    pub finished: bool,
}

/// Output of [`spanning_embed`] with its verification.
#[derive(Debug, Clone)]
pub struct SpanningRun {
    pub map: EmbeddingMap,
    pub horizon: usize,
    /// How many of `u_0 … u_{horizon-1}` are in the image.
    pub covered: usize,
    pub valid: bool,
    /// Every live frontier cell maps into the star class of its type.
    pub cells_conform: bool,
    pub engines: Vec<EngineSummary>,
    pub finite_components: usize,
    pub signs: StarSigns,
}

impl SpanningRun {
    pub fn is_complete(&self) -> bool {
        self.covered == self.horizon && self.valid && self.cells_conform
    }
}

struct Engine<'g> {
    start: usize,
    builder: PartitionBuilder<'g>,
    prev: usize,
    finished: bool,
}

struct Run<'a, 'g> {
    g: &'g dyn Digraph,
    k: &'a TournamentOracle,
    oracle: &'a dyn InfinitenessOracle,
    budget: usize,
    map: EmbeddingMap,
    signs: StarSigns,
    known: HashSet<usize>,
    fresh: usize,
    engines: Vec<Engine<'g>>,
    finite_components: usize,
}

/// Spanning embedding of an acyclic, locally finite graph with no infinite
/// directed path into `k`, run until `u_0 … u_{horizon-1}` are covered.
///
/// Each uncovered `u_j` is handed round-robin to either a fresh component
/// (finite ones are embedded whole, infinite ones start a ±- or ∓-partition
/// pinned at `u_j`) or to a running component, which embeds its next run of
/// cells with one vertex pinned to `u_j`.
pub fn spanning_embed(
    g: &dyn Digraph,
    k: &TournamentOracle,
    oracle: &dyn InfinitenessOracle,
    horizon: usize,
) -> Result<SpanningRun> {
    spanning_embed_with(g, k, oracle, horizon, budget_from_env())
}

pub fn spanning_embed_with(
    g: &dyn Digraph,
    k: &TournamentOracle,
    oracle: &dyn InfinitenessOracle,
    horizon: usize,
    budget: usize,
) -> Result<SpanningRun> {
    let mut run = Run {
        g,
        k,
        oracle,
        budget,
        map: EmbeddingMap::new(),
        signs: StarSigns::default(),
        known: HashSet::new(),
        fresh: 0,
        engines: Vec::new(),
        finite_components: 0,
    };
    let mut cursor = 0;
    for u in 0..horizon {
        if run.map.covers(u) {
            continue;
        }
        let star = run.signs.sign(k, oracle, u)?;
        let slots = run.engines.len() + 1;
        let mut placed = false;
        for step in 0..slots {
            let slot = (cursor + step) % slots;
            let ok = if slot == 0 {
                run.open(u, star)?
            } else {
                run.advance(slot - 1, u, star)?
            };
            if ok {
                cursor = (slot + 1) % (run.engines.len() + 1);
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(Error::Consistency(format!(
                "no component of G can absorb K-vertex {}",
                u + 1
            )));
        }
    }
    run.finish(horizon)
}

impl<'a, 'g> Run<'a, 'g> {
    fn used(&self, extra: usize) -> HashSet<usize> {
        let mut s: HashSet<usize> = self.map.image().collect();
        s.insert(extra);
        s
    }

    fn pool(
        &mut self,
        constraints: &[(usize, Sign)],
        class: Option<Sign>,
        exclude: usize,
        free: usize,
    ) -> Result<Vec<usize>> {
        if free == 0 {
            return Ok(Vec::new());
        }
        let used = self.used(exclude);
        let (k, oracle, signs) = (self.k, self.oracle, &mut self.signs);
        let mut accept = |w: usize| -> Result<bool> {
            match class {
                Some(c) => Ok(signs.sign(k, oracle, w)? == c),
                None => Ok(true),
            }
        };
        oracle.enumerate(k, constraints, &used, 1 << (free - 1), &mut accept)
    }

    /// Embeds the G-vertices `chunk` with the given pins, pool vertices
    /// drawn from `pool`.
    fn place(&mut self, chunk: &[usize], pool: &[usize], pins: &[(usize, usize)]) -> Result<()> {
        let local: HashMap<usize, usize> = chunk.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edges = Vec::new();
        for (i, &v) in chunk.iter().enumerate() {
            for w in self.g.out_neighbors(v) {
                if let Some(&j) = local.get(&w) {
                    edges.push((i, j));
                }
            }
        }
        let h = FiniteOrientedGraph::new(chunk.len(), edges)?;
        let pins: BTreeMap<usize, usize> = pins.iter().map(|&(v, u)| (local[&v], u)).collect();
        let m = embed_finite_acyclic(&h, self.k, pool, &pins)?;
        for (i, kv) in m.iter() {
            self.map.insert(chunk[i], kv)?;
        }
        Ok(())
    }

    fn probe(&self, v: usize) -> Probe {
        let mut seen = BTreeSet::from([v]);
        let mut queue = VecDeque::from([v]);
        while let Some(x) = queue.pop_front() {
            if seen.len() > PROBE {
                return Probe::Open(seen);
            }
            for w in self.g.out_neighbors(x).into_iter().chain(self.g.in_neighbors(x)) {
                if self.known.contains(&w) {
                    seen.insert(w);
                    return Probe::Touches(seen);
                }
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        Probe::Closed(seen)
    }

    /// Walks against `sign` until reaching a vertex with only `sign`-edges.
    fn extremal_from(&self, mut v: usize, sign: Sign) -> Result<usize> {
        for _ in 0..self.budget {
            match self.g.neighbors(v, sign.opposite()).into_iter().min() {
                None => return Ok(v),
                Some(w) => v = w,
            }
        }
        Err(Error::BudgetExhausted { vertex: v, budget: self.budget })
    }

    /// Starts a new component at `u`. False if no fresh component was found.
    fn open(&mut self, u: usize, star: Sign) -> Result<bool> {
        let bound = self.g.order().unwrap_or(usize::MAX);
        let mut scanned = 0;
        let mut cand = self.fresh;
        while scanned < OPEN_SCAN && cand < bound {
            if self.known.contains(&cand) {
                cand += 1;
                continue;
            }
            scanned += 1;
            match self.probe(cand) {
                Probe::Touches(seen) => self.known.extend(seen),
                Probe::Closed(seen) => {
                    let comp: Vec<usize> = seen.into_iter().collect();
                    if comp.len() > CHUNK_CAP + 1 {
                        return Err(Error::ChunkTooLarge { size: comp.len() - 1, cap: CHUNK_CAP });
                    }
                    let pin = comp
                        .iter()
                        .copied()
                        .find(|&v| self.g.neighbors(v, star.opposite()).is_empty())
                        .ok_or_else(|| {
                            Error::Consistency(format!(
                                "finite component of {} has no vertex with only {star}-edges",
                                comp[0] + 1
                            ))
                        })?;
                    let pool = self.pool(&[(u, star)], None, u, comp.len() - 1)?;
                    self.place(&comp, &pool, &[(pin, u)])?;
                    self.known.extend(comp);
                    self.finite_components += 1;
                    self.bump_fresh();
                    return Ok(true);
                }
                Probe::Open(seen) => {
                    let v1 = self.extremal_from(cand, star)?;
                    let builder = PartitionBuilder::new(self.g, v1, star, self.budget)?;
                    self.map.insert(v1, u)?;
                    self.known.extend(seen);
                    self.known.insert(v1);
                    self.engines.push(Engine { start: v1, builder, prev: 1, finished: false });
                    self.bump_fresh();
                    return Ok(true);
                }
            }
            cand += 1;
        }
        self.bump_fresh();
        Ok(false)
    }

    fn bump_fresh(&mut self) {
        while self.known.contains(&self.fresh) {
            self.fresh += 1;
        }
    }

    /// Embeds the next cells of engine `e` with a vertex pinned to `u`.
    fn advance(&mut self, e: usize, u: usize, star: Sign) -> Result<bool> {
        if self.engines[e].finished {
            return Ok(false);
        }
        let eng = &self.engines[e];
        let flavor = eng.builder.flavor();
        let prev = eng.prev;
        let dprev = cell_type(flavor, prev);
        let mut prev_cons = Vec::new();
        for &v in &eng.builder.cells()[prev - 1] {
            let img = self.map.get(v).ok_or_else(|| {
                Error::Consistency(format!("frontier vertex {} is unmapped", v + 1))
            })?;
            prev_cons.push((img, dprev));
        }
        let mut cons = vec![(u, star)];
        cons.extend(&prev_cons);

        let class = if self.oracle.decide_in_class(self.k, &cons, Sign::Plus)? {
            Sign::Plus
        } else if self.oracle.decide_in_class(self.k, &cons, Sign::Minus)? {
            Sign::Minus
        } else {
            return Err(Error::Oracle(format!(
                "both star classes of the intersection at K-vertex {} are finite",
                u + 1
            )));
        };
        let mut target = prev + 5;
        if cell_type(flavor, target) != class {
            target += 1;
        }
        let pin_cell = if star == dprev { prev + 2 } else { prev + 3 };

        let eng = &mut self.engines[e];
        let reached = eng.builder.ensure(target)?;
        let last = eng.builder.cells().len();
        let cells: Vec<Vec<usize>> = eng.builder.cells()[prev..last.min(target)].to_vec();
        for c in &cells {
            self.known.extend(c.iter().copied());
        }
        let chunk: Vec<usize> = cells.concat();

        if !reached && last < pin_cell {
            // the component ends before a pin cell: place what is left and retire
            self.engines[e].finished = true;
            self.engines[e].prev = last;
            if !chunk.is_empty() {
                if chunk.len() > CHUNK_CAP {
                    return Err(Error::ChunkTooLarge { size: chunk.len(), cap: CHUNK_CAP });
                }
                let pool = self.pool(&prev_cons, None, u, chunk.len())?;
                self.place(&chunk, &pool, &[])?;
            }
            return Ok(false);
        }

        let pin = cells[pin_cell - prev - 1]
            .iter()
            .copied()
            .find(|&v| self.g.neighbors(v, star.opposite()).is_empty())
            .ok_or_else(|| {
                Error::Consistency(format!(
                    "cell {pin_cell} has no vertex with only {star}-edges"
                ))
            })?;
        let free = chunk.len() - 1;
        if free > CHUNK_CAP {
            return Err(Error::ChunkTooLarge { size: free, cap: CHUNK_CAP });
        }
        let pool = self.pool(&cons, Some(class), u, free)?;
        self.place(&chunk, &pool, &[(pin, u)])?;
        let eng = &mut self.engines[e];
        eng.prev = last.min(target);
        eng.finished = !reached;
        Ok(true)
    }

    fn finish(mut self, horizon: usize) -> Result<SpanningRun> {
        let valid = self.map.is_valid(self.g, self.k)?;
        let mut cells_conform = true;
        for eng in self.engines.iter().filter(|e| !e.finished) {
            let t = cell_type(eng.builder.flavor(), eng.prev);
            for &v in &eng.builder.cells()[eng.prev - 1] {
                let Some(kv) = self.map.get(v) else {
                    cells_conform = false;
                    continue;
                };
                if self.signs.sign(self.k, self.oracle, kv)? != t {
                    cells_conform = false;
                }
            }
        }
        let engines = self
            .engines
            .iter()
            .map(|e| EngineSummary {
                start: e.start,
                flavor: e.builder.flavor(),
                frontier: e.prev,
                finished: e.finished,
            })
            .collect();
        Ok(SpanningRun {
            covered: self.map.coverage(horizon),
            horizon,
            valid,
            cells_conform,
            engines,
            finite_components: self.finite_components,
            map: self.map,
            signs: self.signs,
        })
    }
}

enum Probe {
    Touches(BTreeSet<usize>),
    Closed(BTreeSet<usize>),
    Open(BTreeSet<usize>),
}
