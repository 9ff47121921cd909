//! Building the hierarchy of words and reading the limit word.

mod hierarchy;
pub mod ordering;
pub mod params;
pub mod permuted;
pub mod seed;

pub use hierarchy::{AlignedBlock, BuildOptions, Construction, Generation, Representation, WordRef};
pub use ordering::{EgsTable, LevelOrdering};
pub use params::{
    degeneracy_warnings, validate_params, ConstructionParams, OrderingPolicy, ValidatedParams,
    Variant,
};
pub use permuted::PermutedSet;
pub use seed::{admissible_count, is_admissible, seed_words};
