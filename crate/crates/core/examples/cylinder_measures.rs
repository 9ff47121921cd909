//! Empirical cylinder frequencies against the exact aligned measure.

use subshift::ergodic::{exact_aligned_measure, exact_chain_measure, PrefixSample};
use subshift::symbol::parse_word;
use subshift::{Construction, ConstructionParams, WordRef};

fn main() -> subshift::Result<()> {
    let c = Construction::build(&ConstructionParams::desk().with_max_level(4))?;
    let sample = PrefixSample::new(&c, 1_000_000)?;
    let u1 = c.word(&WordRef::new(1, 1u32))?;
    let s = sample.estimate(&u1)?;
    println!(
        "u_1: {} hits, frequency {:.6}, all aligned: {}",
        s.occurrence_count,
        s.frequency_f64(),
        s.aligned_only
    );
    println!("exact measure of [u_1]: {}", exact_aligned_measure(&c, &WordRef::new(1, 1u32))?);
    println!("chain u_5..u_8: {}", exact_chain_measure(&c, 1, 5, 4)?);
    for w in ["0", "1", "001", "0000"] {
        let s = sample.estimate(&parse_word(w)?)?;
        println!("[{w}]: {}", s.frequency);
    }
    Ok(())
}
