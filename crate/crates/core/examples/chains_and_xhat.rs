//! Chain censuses, chain coordinates of an offset, and the good-set test.

use subshift::ergodic::{chain_structure, chains, xhat_member, XhatCriteria};
use subshift::{Construction, ConstructionParams};

fn main() -> subshift::Result<()> {
    let c = Construction::build(&ConstructionParams::desk().with_max_level(4))?;
    for level in 1..=2 {
        let census = chains(c.generation(level)?)?;
        println!("level {level}: chains {:?}, trailing {}", census.lengths(), census.trailing.len);
    }
    let criteria = XhatCriteria::new(XhatCriteria::DEFAULT_ETA, 1, 1)?;
    for t in [25, 100, 225, 300, 20_000] {
        let pos = chain_structure(&c, t, 1..=2)?;
        let coords: Vec<String> = pos
            .iter()
            .map(|p| format!("L{} slot {} (p={}, q={})", p.level, p.slot, p.p, p.q))
            .collect();
        println!("t = {t}: {} / good: {}", coords.join(", "), xhat_member(&c, t, &criteria)?);
    }
    Ok(())
}
