//! Unavoidable subgraphs of countably infinite tournaments, run at desk
//! scale.
//!
//! Tournaments are pure edge oracles on `ℕ`; graphs are either finite edge
//! lists or locally finite generators. On top of that sit the structural
//! analysis ([`analysis`]), the embedding engines ([`embedding`]) and the
//! forward/inversion density toolkit ([`density`]).

pub mod analysis;
pub mod base;
pub mod cli;
pub mod density;
pub mod embedding;
pub mod error;

pub use error::{Error, Result};
