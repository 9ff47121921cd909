//! Autocorrelation, block-lag zeros, the eigenvalue scan and rigidity.

use subshift::egs::{rigidity_deficiency, spectral_scan, RigidityTarget, SpectralOptions};
use subshift::ergodic::PrefixSample;
use subshift::{Alpha, Construction, ConstructionParams, Variant, WordRef};

fn main() -> subshift::Result<()> {
    let plain = Construction::build(&ConstructionParams::new(Variant::Plain, Alpha::HALF, 25, 25).with_max_level(4))?;
    let sample = PrefixSample::new(&plain, 500_000)?;
    let u1 = plain.word(&WordRef::new(1, 1u32))?;
    let d = spectral_scan(&sample, &[u1], &SpectralOptions::new(1, 50, 200, 64))?;
    for b in &d.block_lags {
        println!("block lags of l_{}: {} of {} empty", b.level, b.empty_lags, b.lags_scanned);
    }
    for p in &d.peaks {
        println!("peak at theta = {:.4}: {:.5}", p.theta, p.magnitude);
    }

    let desk = Construction::build(&ConstructionParams::desk().with_max_level(4))?;
    let sample = PrefixSample::new(&desk, 1_000_000)?;
    let u1 = desk.word(&WordRef::new(1, 1u32))?;
    let r = rigidity_deficiency(&sample, &RigidityTarget::Cylinder(u1), &[1, 2, 3])?;
    for row in &r.rows {
        println!("lag l_{} = {}: deficiency {:.5}", row.level, row.lag, row.deficiency);
    }
    Ok(())
}
