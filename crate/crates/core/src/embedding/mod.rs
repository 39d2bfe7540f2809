//! Embedding algorithms: greedy embedding into transitive tournaments,
//! ±-partitions, the Ramsey reduction and the spanning embedding.

mod greedy;
mod map;
pub mod oracle;
mod partition;
mod ramsey;
mod spanning;

pub use greedy::{greedy_embed_transitive, TransitiveTarget};
pub use map::EmbeddingMap;
pub use oracle::{
    auto_oracle, classify_vertices, AlwaysInfinite, FiniteInDegree, FiniteOutDegree,
    InfinitenessOracle, StarSigns,
};
pub use partition::{check_axioms, pm_partition, pm_partition_prefix, PartitionBuilder, PmPartition};
pub use ramsey::{
    embed_finite_acyclic, find_transitive_subtournament, tournament_to_coloring, Color, Coloring,
};
pub use spanning::{spanning_embed, spanning_embed_with, EngineSummary, SpanningRun, CHUNK_CAP};
