//! Entropy-generating sets, and empirical mixing and rigidity diagnostics.

mod dsets;
mod sequence;
mod spectral;

pub use dsets::{build_dj, dj_from_lower, level_ordering, q_set, DjSet};
pub use sequence::{build_egs, closed_form, EgsSequence, MAX_EGS_SIZE};
pub use spectral::{
    rigidity_deficiency, spectral_scan, AutocorrRow, BlockLagSummary, RigidityReport,
    RigidityRow, RigidityTarget, SpectralDiagnostics, SpectralOptions, ThetaRow,
};
