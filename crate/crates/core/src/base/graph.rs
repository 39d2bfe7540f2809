use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// `+` (out) or `−` (in).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn opposite(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Read access shared by finite and presented graphs.
pub trait Digraph {
    fn out_neighbors(&self, v: usize) -> Vec<usize>;
    fn in_neighbors(&self, v: usize) -> Vec<usize>;

    /// Vertex count for finite graphs, `None` for infinite ones.
    fn order(&self) -> Option<usize>;

    /// Generator certificate that `Γ^sign(v)` is infinite.
    fn escapes(&self, _v: usize, _sign: Sign) -> bool {
        false
    }

    fn neighbors(&self, v: usize, sign: Sign) -> Vec<usize> {
        match sign {
            Sign::Plus => self.out_neighbors(v),
            Sign::Minus => self.in_neighbors(v),
        }
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out_neighbors(u).contains(&v)
    }
}

/// A finite oriented graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteOrientedGraph {
    n: usize,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
}

impl FiniteOrientedGraph {
    /// Builds the graph, rejecting loops, out-of-range endpoints and
    /// 2-cycles. Repeated edges are merged.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let set: BTreeSet<(usize, usize)> = edges.into_iter().collect();
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for &(u, v) in &set {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge ({u}, {v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at {u}")));
            }
            if set.contains(&(v, u)) {
                return Err(Error::InvalidGraph(format!("both ({u}, {v}) and ({v}, {u}) present")));
            }
            out[u].push(v);
            inn[v].push(u);
        }
        Ok(Self { n, out, inn })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            out: vec![Vec::new(); n],
            inn: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    pub fn out_slice(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_slice(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    /// Subgraph induced on `vertices`, relabelled `0..k` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> FiniteOrientedGraph {
        let pos: std::collections::HashMap<usize, usize> =
            vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges = vertices.iter().flat_map(|&u| {
            let pos = &pos;
            self.out[u]
                .iter()
                .filter_map(move |v| pos.get(v).map(|&pv| (pos[&u], pv)))
        });
        FiniteOrientedGraph::new(vertices.len(), edges.collect::<Vec<_>>())
            .expect("induced subgraph of a valid graph is valid")
    }

    /// Parses `n m` followed by `m` lines `u v` (1-based).
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing `n m` header".into()))?;
        let (n, m) = parse_pair(header)?;
        let mut edges = Vec::with_capacity(m);
        for line in lines {
            let (u, v) = parse_pair(line)?;
            if u == 0 || v == 0 {
                return Err(Error::Parse(format!("`{line}`: vertices are 1-based")));
            }
            edges.push((u - 1, v - 1));
        }
        if edges.len() != m {
            return Err(Error::Parse(format!("header promises {m} edges, found {}", edges.len())));
        }
        Self::new(n, edges)
    }

    /// Inverse of [`FiniteOrientedGraph::parse`].
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edge_count());
        for (u, v) in self.edges() {
            s.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        s
    }
}

fn parse_pair(line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(Error::Parse(format!("expected two naturals, got `{line}`"))),
    }
}

impl Digraph for FiniteOrientedGraph {
    fn out_neighbors(&self, v: usize) -> Vec<usize> {
        self.out[v].clone()
    }
    fn in_neighbors(&self, v: usize) -> Vec<usize> {
        self.inn[v].clone()
    }
    fn order(&self) -> Option<usize> {
        Some(self.n)
    }
    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }
}

/// Finite neighbour lists of one vertex of a presented graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Adjacency {
    pub out: Vec<usize>,
    pub inn: Vec<usize>,
}

/// Properties the generator of a presented graph vouches for.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Claims {
    pub acyclic: bool,
    pub no_infinite_path: bool,
}

type AdjFn = dyn Fn(usize) -> Adjacency + Send + Sync;
type EscapeFn = dyn Fn(usize, Sign) -> bool + Send + Sync;

/// A locally finite oriented graph on `ℕ` given by a neighbour generator.
#[derive(Clone)]
pub struct PresentedGraph {
    name: String,
    adjacency: Arc<AdjFn>,
    claims: Claims,
    escape: Option<Arc<EscapeFn>>,
}

impl fmt::Debug for PresentedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PresentedGraph")
            .field("name", &self.name)
            .field("claims", &self.claims)
            .field("certified_escape", &self.escape.is_some())
            .finish()
    }
}

impl PresentedGraph {
    pub fn new<F>(name: impl Into<String>, claims: Claims, adjacency: F) -> Self
    where
        F: Fn(usize) -> Adjacency + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            adjacency: Arc::new(adjacency),
            claims,
            escape: None,
        }
    }

    /// Attaches a certificate that certain closures never close.
    pub fn with_escape_certificate<F>(mut self, escape: F) -> Self
    where
        F: Fn(usize, Sign) -> bool + Send + Sync + 'static,
    {
        self.escape = Some(Arc::new(escape));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn claims(&self) -> Claims {
        self.claims
    }

    pub fn adjacency(&self, v: usize) -> Adjacency {
        (self.adjacency)(v)
    }

    /// Checks that the neighbour lists of vertices `0..n` agree with each
    /// other and contain no loops or 2-cycles.
    pub fn check_consistency(&self, n: usize) -> Result<()> {
        for v in 0..n {
            let a = self.adjacency(v);
            for &w in &a.out {
                if w == v || a.inn.contains(&w) {
                    return Err(Error::InvalidGraph(format!("bad pair ({v}, {w})")));
                }
                if !self.adjacency(w).inn.contains(&v) {
                    return Err(Error::InvalidGraph(format!("{w} does not list {v} as in-neighbour")));
                }
            }
            for &w in &a.inn {
                if w == v || !self.adjacency(w).out.contains(&v) {
                    return Err(Error::InvalidGraph(format!("{w} does not list {v} as out-neighbour")));
                }
            }
        }
        Ok(())
    }

    /// Finite subgraph induced on `0..n`.
    pub fn prefix(&self, n: usize) -> FiniteOrientedGraph {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| {
                self.adjacency(u)
                    .out
                    .into_iter()
                    .filter(move |&v| v < n)
                    .map(move |v| (u, v))
            })
            .collect();
        FiniteOrientedGraph::new(n, edges).expect("generator produced an invalid prefix")
    }

    /// `0 → 1 ← 2 → 3 ← 4 …`
    pub fn anti_directed_path() -> Self {
        let claims = Claims { acyclic: true, no_infinite_path: true };
        Self::new("anti-path", claims, |v| {
            let mut a = Adjacency::default();
            // even vertices are sources, odd ones sinks
            let side = if v % 2 == 0 { &mut a.out } else { &mut a.inn };
            if v > 0 {
                side.push(v - 1);
            }
            side.push(v + 1);
            a
        })
    }

    /// `0 → 1 → 2 → …`, without any certificate.
    pub fn forward_path() -> Self {
        let claims = Claims { acyclic: true, no_infinite_path: false };
        Self::new("forward-path", claims, |v| Adjacency {
            out: vec![v + 1],
            inn: if v > 0 { vec![v - 1] } else { vec![] },
        })
    }

    /// The forward path, with the generator certifying that every
    /// out-closure is infinite.
    pub fn certified_forward_path() -> Self {
        let mut g = Self::forward_path().with_escape_certificate(|_, sign| sign == Sign::Plus);
        g.name = "certified-forward-path".into();
        g
    }

    /// Disjoint out-stars `3k → 3k+1`, `3k → 3k+2`.
    pub fn out_stars() -> Self {
        let claims = Claims { acyclic: true, no_infinite_path: true };
        Self::new("out-stars", claims, |v| {
            let centre = v - v % 3;
            if v == centre {
                Adjacency { out: vec![v + 1, v + 2], inn: vec![] }
            } else {
                Adjacency { out: vec![], inn: vec![centre] }
            }
        })
    }

    /// Disjoint 4-vertex trees whose vertex numbers interleave: in each run
    /// of 8 vertices the even offsets form one tree and the odd offsets
    /// another. The tree shapes alternate from run to run.
    pub fn interleaved_forest() -> Self {
        let claims = Claims { acyclic: true, no_infinite_path: true };
        Self::new("forest", claims, |v| {
            let base = v - v % 8;
            let off = v % 8;
            let member = |k: usize| base + (off % 2) + 2 * k;
            let k = off / 2;
            let run = v / 8;
            let mut edges: Vec<(usize, usize)> = Vec::new();
            match (off % 2, run % 2) {
                // anti-directed path t0 → t1 ← t2 → t3
                (0, 0) => edges.extend([(0, 1), (2, 1), (2, 3)]),
                // in-star into t0
                (1, 0) => edges.extend([(1, 0), (2, 0), (3, 0)]),
                // directed path t0 → t1 → t2 → t3
                (0, _) => edges.extend([(0, 1), (1, 2), (2, 3)]),
                // out-star from t3 plus nothing else
                _ => edges.extend([(3, 0), (3, 1), (3, 2)]),
            }
            let mut a = Adjacency::default();
            for (x, y) in edges {
                if x == k {
                    a.out.push(member(y));
                }
                if y == k {
                    a.inn.push(member(x));
                }
            }
            a
        })
    }

    /// A random acyclic graph of bounded path length: every vertex gets one of
    /// four levels, and vertices at distance at most 12 are joined (with
    /// probability 1/4) from the lower level to the higher one.
    pub fn random_layered(seed: u64) -> Self {
        const WIDTH: usize = 12;
        let claims = Claims { acyclic: true, no_infinite_path: true };
        let level = move |v: usize| mix(seed, v as u64, u64::MAX) % 4;
        Self::new(format!("layered:{seed}"), claims, move |v| {
            let mut a = Adjacency::default();
            let lo = v.saturating_sub(WIDTH);
            for w in lo..=v + WIDTH {
                if w == v {
                    continue;
                }
                let (x, y) = (v.min(w) as u64, v.max(w) as u64);
                if mix(seed, x, y) % 4 != 0 || level(v) == level(w) {
                    continue;
                }
                if level(v) < level(w) {
                    a.out.push(w);
                } else {
                    a.inn.push(w);
                }
            }
            a
        })
    }
}

/// Stateless 64-bit mixer used to derive random graph structure.
fn mix(seed: u64, a: u64, b: u64) -> u64 {
    let mut z = seed ^ a.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ b.rotate_left(29);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl Digraph for PresentedGraph {
    fn out_neighbors(&self, v: usize) -> Vec<usize> {
        self.adjacency(v).out
    }
    fn in_neighbors(&self, v: usize) -> Vec<usize> {
        self.adjacency(v).inn
    }
    fn order(&self) -> Option<usize> {
        None
    }
    fn escapes(&self, v: usize, sign: Sign) -> bool {
        self.escape.as_ref().is_some_and(|f| f(v, sign))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_two_cycles() {
        assert!(FiniteOrientedGraph::new(2, [(0, 0)]).is_err());
        assert!(FiniteOrientedGraph::new(2, [(0, 1), (1, 0)]).is_err());
        assert!(FiniteOrientedGraph::new(2, [(0, 2)]).is_err());
        assert_eq!(FiniteOrientedGraph::new(2, [(0, 1), (0, 1)]).unwrap().edge_count(), 1);
    }

    #[test]
    fn text_round_trip() {
        let g = FiniteOrientedGraph::parse("3 3\n1 2\n2 3\n3 1\n").unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 0)]);
        assert_eq!(FiniteOrientedGraph::parse(&g.to_text()).unwrap(), g);
        assert!(FiniteOrientedGraph::parse("2 1\n0 1\n").is_err());
        assert!(FiniteOrientedGraph::parse("2 2\n1 2\n").is_err());
    }

    #[test]
    fn generators_are_consistent() {
        for g in [
            PresentedGraph::anti_directed_path(),
            PresentedGraph::forward_path(),
            PresentedGraph::out_stars(),
            PresentedGraph::interleaved_forest(),
            PresentedGraph::random_layered(3),
        ] {
            g.check_consistency(200).unwrap();
        }
    }

    #[test]
    fn anti_path_shape() {
        let g = PresentedGraph::anti_directed_path().prefix(5);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (2, 1), (2, 3), (4, 3)]);
    }
}
