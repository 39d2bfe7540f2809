use std::collections::{BTreeMap, HashMap};

use crate::base::{Digraph, TournamentOracle};
use crate::error::{Error, Result};

/// A partial injective map from G-vertices to K-vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EmbeddingMap {
    forward: BTreeMap<usize, usize>,
    inverse: HashMap<usize, usize>,
}

impl EmbeddingMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Maps `g` to `k`, refusing to break injectivity or remap a vertex.
    pub fn insert(&mut self, g: usize, k: usize) -> Result<()> {
        if let Some(&old) = self.forward.get(&g) {
            return Err(Error::Consistency(format!("G-vertex {g} already mapped to {old}")));
        }
        if let Some(&other) = self.inverse.get(&k) {
            return Err(Error::Consistency(format!(
                "K-vertex {k} already the image of {other}"
            )));
        }
        self.forward.insert(g, k);
        self.inverse.insert(k, g);
        Ok(())
    }

    pub fn get(&self, g: usize) -> Option<usize> {
        self.forward.get(&g).copied()
    }

    pub fn preimage(&self, k: usize) -> Option<usize> {
        self.inverse.get(&k).copied()
    }

    pub fn covers(&self, k: usize) -> bool {
        self.inverse.contains_key(&k)
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    /// Pairs `(g, k)` in increasing `g`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.forward.iter().map(|(&g, &k)| (g, k))
    }

    pub fn image(&self) -> impl Iterator<Item = usize> + '_ {
        self.forward.values().copied()
    }

    /// Number of `u_0 … u_{h-1}` in the image.
    pub fn coverage(&self, h: usize) -> usize {
        (0..h).filter(|&k| self.covers(k)).count()
    }

    /// First G-edge between mapped vertices whose image is not a K-edge.
    pub fn first_invalid_edge(
        &self,
        g: &dyn Digraph,
        k: &TournamentOracle,
    ) -> Result<Option<(usize, usize)>> {
        for (&u, &ku) in &self.forward {
            for v in g.out_neighbors(u) {
                if let Some(kv) = self.get(v) {
                    if !k.has_edge(ku, kv)? {
                        return Ok(Some((u, v)));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn is_valid(&self, g: &dyn Digraph, k: &TournamentOracle) -> Result<bool> {
        Ok(self.first_invalid_edge(g, k)?.is_none())
    }
}
