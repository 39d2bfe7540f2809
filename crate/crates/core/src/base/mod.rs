//! Domain types: ordinals, injections, tournaments and oriented graphs.

mod graph;
mod injection;
mod ordinal;
mod tournament;

pub use graph::{Adjacency, Claims, Digraph, FiniteOrientedGraph, PresentedGraph, Sign};
pub use injection::{check_injective, InjectionKind, InjectionSpec};
pub use ordinal::{ordinal_compare, OrdinalValue};
pub use tournament::{
    factorial_block_of, make_ordinal_injection_tournament, Direction, Family, TournamentOracle,
};
