//! Exact factor counts of the desk instance and the counting bounds at l_1 k.

use subshift::complexity::{evaluate_complexity_bounds, language_profile, StirlingThresholds};
use subshift::{Construction, ConstructionParams};

fn main() -> subshift::Result<()> {
    let c = Construction::build(&ConstructionParams::desk().with_max_level(4))?;
    let profile = language_profile(&c, 300)?;
    for n in [1, 2, 5, 10, 25, 50, 100, 300] {
        println!("p({n}) = {}", profile.count(n).unwrap());
    }
    let report = evaluate_complexity_bounds(&profile, &c, StirlingThresholds::default())?;
    for b in report.bounds.iter().filter(|b| b.level == 1) {
        let mark = if b.holds { "ok" } else { "VIOLATED" };
        println!("k = {:2}: {} <= {} <= {}  {mark}", b.k, b.lower, b.count, b.upper);
    }
    Ok(())
}
