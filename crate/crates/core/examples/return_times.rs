//! First return times R_n(t) along a chain and across a permuted slot.

use subshift::ergodic::return_time_in;
use subshift::{Construction, ConstructionParams};

fn main() -> subshift::Result<()> {
    let c = Construction::build(&ConstructionParams::desk().with_max_level(4))?;
    let text = c.limit_prefix(1_000_000)?;
    // Slot 17 opens the chain 17..=24; slot 25 is permuted.
    for t in [16 * 25, 24 * 25] {
        for n in [25, 26, 100, 200] {
            let r = return_time_in(&c, &text, t, n, 500_000)?;
            println!("t = {t}, n = {n}: R = {}", r.return_time);
        }
    }
    Ok(())
}
