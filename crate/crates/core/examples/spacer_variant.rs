//! The spacer variant: lengths, spacer positions and block decomposition.

use subshift::ergodic::Decomposer;
use subshift::symbol::word_to_string;
use subshift::{Alpha, Construction, ConstructionParams, Variant};

fn main() -> subshift::Result<()> {
    let p = ConstructionParams::new(Variant::Spacer, Alpha::HALF, 25, 25);
    let c = Construction::build(&p)?;
    for g in c.generations() {
        println!("level {}: length {}, |P| = {}", g.level, g.word_length, g.permuted_set.len());
    }
    let spacers = c.spacer_positions(2_000)?;
    println!("spacers below 2000: {spacers:?}");
    let text = c.limit_prefix(2_000)?;
    let window = &text[700..1_400];
    let d = Decomposer::new(&c, 1)?.decompose(window)?;
    println!("window [700, 1400): phase {}, blocks {:?}, spacers {:?}", d.phase, d.blocks, d.spacers);
    println!("first symbols: {}", word_to_string(&text[..60]));
    Ok(())
}
