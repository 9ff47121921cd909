//! Minimal subshifts of intermediate entropy dimension, built by permuting
//! blocks of words level by level.
//!
//! The [`construction`] module builds the hierarchy and gives random access
//! to its words and to the limit word. The remaining modules measure it:
//! factor complexity and entropy dimension ([`complexity`]), frequencies and
//! return times ([`ergodic`]), and the entropy-generating sequence together
//! with mixing and rigidity scans ([`egs`]). [`run`] drives all of them from
//! a config and writes the result files.

pub mod alpha;
pub mod complexity;
pub mod construction;
pub mod egs;
pub mod ergodic;
pub mod error;
pub mod fit;
pub mod perm;
pub mod run;
pub(crate) mod serde_big;
pub mod symbol;
pub mod table;

pub use alpha::Alpha;
pub use construction::{Construction, ConstructionParams, OrderingPolicy, Variant, WordRef};
pub use error::{Error, Result};
pub use symbol::{Symbol, Word};
