//! The entropy-generating sets S_j and their sizes.

use subshift::egs::build_egs;
use subshift::{Construction, ConstructionParams};

fn main() -> subshift::Result<()> {
    let c = Construction::build(&ConstructionParams::desk())?;
    let s = build_egs(&c, 3)?;
    for (j, set) in s.sets.iter().enumerate() {
        let head: Vec<u64> = set.iter().take(8).copied().collect();
        println!(
            "|S_{}| = {} (closed form {:?}), starts {head:?}",
            j + 1,
            s.cardinalities[j],
            s.closed_forms[j]
        );
    }
    Ok(())
}
