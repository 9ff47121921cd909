use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

use super::permuted::PermutedSet;

/// A relabeling of one level's words: the permuted slots of the next level
/// receive the listed canonical words, every other position takes the
/// remaining canonical words in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EgsTable {
    /// `placed[r]` is the canonical index at the `r`-th permuted slot.
    placed: Vec<BigUint>,
    sorted: Vec<BigUint>,
}

impl EgsTable {
    pub fn new(placed: Vec<BigUint>) -> Self {
        let mut sorted = placed.clone();
        sorted.sort();
        EgsTable { placed, sorted }
    }

    pub fn placed(&self) -> &[BigUint] {
        &self.placed
    }

    /// Canonical index of the word at 1-based position `pos`.
    pub fn canonical(&self, slots: &PermutedSet, pos: &BigUint) -> Result<BigUint> {
        if pos.is_one() {
            return Ok(BigUint::one());
        }
        if let Some(rank) = slots.rank_of(pos) {
            return usize::try_from(&rank)
                .ok()
                .and_then(|r| self.placed.get(r))
                .cloned()
                .ok_or_else(|| Error::InfeasiblePlacement {
                    level: 0,
                    detail: format!("no word placed at slot {pos}"),
                });
        }
        // Rank among unpermuted positions, then skip over placed words.
        let mut c = pos - slots.count_le(pos);
        for x in &self.sorted {
            if x <= &c {
                c += 1u32;
            } else {
                break;
            }
        }
        Ok(c)
    }
}

/// How positions of a level map to canonical (lexicographic-rank) indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LevelOrdering {
    Canonical,
    Egs(EgsTable),
    /// Requested but too large to tabulate; only index 1 is resolvable.
    Unavailable,
}
