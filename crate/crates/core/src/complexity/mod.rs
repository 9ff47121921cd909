//! Factor complexity of the subshift: exact counts, the counting bounds,
//! and entropy-dimension estimates.

mod automaton;
mod bounds;
mod brute;
mod dimension;
mod growth;
mod profile;
mod windows;

pub use automaton::{FactorIndex, MAX_INDEX_SYMBOLS};
pub use bounds::{
    check_complexity_bounds, evaluate_complexity_bounds, factorial_check, falling_check, BoundCheck, BoundReport,
    StirlingCheck, StirlingThresholds,
};
pub use brute::{count_factors_bruteforce, count_factors_cyclic, MAX_BRUTE_WORK};
pub use dimension::{
    critical_value_scan, estimate_entropy_dimension, BetaDiagnostic, DimensionEstimate,
    DimensionMethod, Trend,
};
pub use growth::{check_growth_lemma, GrowthRow, LemmaStatus};
pub use profile::{
    language_profile, language_profile_with, Certificate, ComplexityProfile, ProfileOptions,
};
pub use windows::{
    adjacent_pairs, enumerate_window_tuples, language_family, AdjacentPair, TupleScope,
    WindowTupleSet,
};
