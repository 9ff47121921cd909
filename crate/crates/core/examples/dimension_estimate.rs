//! Entropy dimension from a complexity profile, by each estimator.

use subshift::complexity::{estimate_entropy_dimension, ComplexityProfile, DimensionMethod};

fn main() -> subshift::Result<()> {
    let profile = ComplexityProfile::synthetic(4096, |n| n.powf(0.5) + n.ln());
    for method in [
        DimensionMethod::LogLogRegression,
        DimensionMethod::CriticalValueScan,
        DimensionMethod::LogDerivativeRegression,
    ] {
        let e = estimate_entropy_dimension(&profile, method)?;
        println!("{method:?}: lower {:.3}, upper {:.3}", e.lower, e.upper);
    }
    Ok(())
}
