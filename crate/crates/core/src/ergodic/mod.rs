//! Statistics of the unique invariant measure, read off prefixes of the
//! limit word.

mod atoms;
mod chains;
mod decompose;
mod measure;
mod returns;
mod search;

pub use atoms::{atom_size_profile, empirical_block_entropy, AtomRow, EntropyRow, MIN_OCCURRENCES};
pub use chains::{
    chain_structure, chains, permuted_block_fraction, xhat_member, Chain, ChainCensus,
    ChainPosition, XhatCriteria,
};
pub use decompose::{decompose, Decomposer, Decomposition};
pub use measure::{
    exact_aligned_measure, exact_chain_measure, measure_estimate, CylinderRow, CylinderStats,
    PrefixSample,
};
pub use returns::{first_return, return_time, return_time_in, Residue, ReturnTimeRecord, ReturnTimeRow};
pub use search::{find_all, find_first, MultiPattern};
