//! Forward and inversion densities, rank decompositions and block schemes.
//!
//! Every density is an exact ratio of integer counts; window minima are
//! reported, limits never are.

mod inversions;
mod optimize;
mod profile;
mod rank;
mod scheme;

pub use inversions::{compress, inversion_count, inversion_density_profile, prefix_inversion_counts, Fenwick};
pub use optimize::{
    evaluate_robust, evaluate_scheme, optimize_scheme, optimize_scheme_with, window_minimum, DensityBoundsReport,
    OptimizeOptions, RATIO_GRID,
};
pub use profile::{
    binom2, density_profile, density_profile_by_scan, forward_counts, forward_pair_count,
    scan_counts, DensityProfile, DensitySample, CSV_HEADER,
};
pub use rank::{dominance_check, rank_decompose, RankDecomposition};
pub use scheme::{
    catalogue, factorial_scheme, make_block_scheme, BlockScheme, PatternKind, PatternTemplate,
    SchemeParams, MIN_RATIO,
};
