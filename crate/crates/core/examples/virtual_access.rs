//! Read words of a level too large to list, one symbol or block at a time.

use num_bigint::BigUint;
use subshift::perm::factorial;
use subshift::symbol::word_to_string;
use subshift::{Construction, ConstructionParams, WordRef};

fn main() -> subshift::Result<()> {
    let c = Construction::build(&ConstructionParams::desk().with_max_level(4))?;
    // Level 4 has 1904! words; pick one deep inside the ordering.
    let index = factorial(1904) / 7u32;
    let word = WordRef::new(4, index.clone());
    let blocks = c.blocks_at(&word, &[1, 2, 4, 9, 3_625_216])?;
    println!("level-4 word N_4/7: level-3 blocks at slots 1, 2, 4, 9, 1904^2 are {blocks:?}");
    let symbols: String = (0..40u32)
        .map(|p| c.word_symbol(&word, &BigUint::from(p)).map(|s| s.as_char()))
        .collect::<subshift::Result<_>>()?;
    println!("its first 40 symbols: {symbols}");
    let prefix = c.limit_prefix(75)?;
    println!("limit word prefix: {}", word_to_string(&prefix));
    Ok(())
}
