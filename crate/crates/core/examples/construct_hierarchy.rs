//! Build the 25-by-25 marker hierarchy and print the level table.

use subshift::symbol::word_to_string;
use subshift::{Construction, ConstructionParams};

fn main() -> subshift::Result<()> {
    let c = Construction::build(&ConstructionParams::desk())?;
    for g in c.generations() {
        println!(
            "level {}: {} words of length {}, |P| = {}, materialized: {}",
            g.level,
            g.word_count,
            g.word_length,
            g.permuted_set.len(),
            g.is_materialized()
        );
    }
    let words = c.generation(1)?.words().unwrap();
    println!("first seeds: {}, {}", word_to_string(&words[0]), word_to_string(&words[1]));
    for w in c.warnings() {
        println!("warning: {w}");
    }
    Ok(())
}
