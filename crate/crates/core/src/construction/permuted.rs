//! The set `P_j` of block slots that are permuted when the words of one
//! level are assembled into the next.
//!
//! Plain and marker levels use `{2} ∪ {i^e : 2 ≤ i ≤ m}` with `e = ⌊1/α⌋`
//! and `m = ⌊N^α⌋`; spacer levels drop the extra slot `2`. The set is never
//! listed explicitly, so it works for counts far beyond machine width.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::alpha::{exact_root, integer_root, Alpha};
use crate::error::{Error, Result};

use super::params::Variant;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutedSet {
    exponent: u32,
    bound: BigUint,
    /// Whether slot 2 is added explicitly (and fits below the word count).
    include_two: bool,
}

impl PermutedSet {
    /// `P_j` for a level holding `word_count` words.
    pub fn for_level(alpha: Alpha, variant: Variant, word_count: &BigUint) -> Self {
        let bound = alpha.floor_pow(word_count);
        Self::new(
            alpha.reciprocal_floor(),
            bound,
            !variant.has_spacers(),
            word_count,
        )
    }

    /// `{2} ∪ {i^exponent : 2 ≤ i ≤ bound}` (or without the `2` when
    /// `include_two` is false), restricted to `[1, limit]`.
    pub fn new(exponent: u32, bound: BigUint, include_two: bool, limit: &BigUint) -> Self {
        PermutedSet {
            exponent,
            bound,
            include_two: include_two && limit >= &BigUint::from(2u32),
        }
    }

    /// Slot 2 is listed separately unless it is already a power `i^1`.
    fn extra_two(&self) -> bool {
        self.include_two && !(self.exponent == 1 && self.bound >= BigUint::from(2u32))
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// Largest base `i` of an `i^e` slot.
    pub fn bound(&self) -> &BigUint {
        &self.bound
    }

    pub fn includes_extra_two(&self) -> bool {
        self.extra_two()
    }

    fn power_count(&self) -> BigUint {
        if self.bound >= BigUint::from(2u32) {
            &self.bound - 1u32
        } else {
            BigUint::zero()
        }
    }

    pub fn len(&self) -> BigUint {
        self.power_count() + u32::from(self.extra_two())
    }

    pub fn len_u64(&self) -> Option<u64> {
        self.len().to_u64()
    }

    pub fn is_empty(&self) -> bool {
        self.len().is_zero()
    }

    /// The `rank`-th smallest slot (0-based).
    pub fn nth(&self, rank: &BigUint) -> BigUint {
        let base = if self.extra_two() {
            if rank.is_zero() {
                return BigUint::from(2u32);
            }
            rank + 1u32
        } else {
            rank + 2u32
        };
        num_traits::Pow::pow(&base, self.exponent)
    }

    pub fn nth_u64(&self, rank: u64) -> u64 {
        self.nth(&BigUint::from(rank))
            .to_u64()
            .expect("slot index fits u64")
    }

    /// Position of `slot` in sorted order, if it belongs to the set.
    pub fn rank_of(&self, slot: &BigUint) -> Option<BigUint> {
        let two = BigUint::from(2u32);
        if self.extra_two() && slot == &two {
            return Some(BigUint::zero());
        }
        let root = exact_root(slot, self.exponent)?;
        if root < two || root > self.bound {
            return None;
        }
        Some(root - 2u32 + u32::from(self.extra_two()))
    }

    pub fn rank_of_u64(&self, slot: u64) -> Option<u64> {
        self.rank_of(&BigUint::from(slot)).map(|r| r.to_u64().unwrap())
    }

    pub fn contains(&self, slot: &BigUint) -> bool {
        self.rank_of(slot).is_some()
    }

    pub fn contains_u64(&self, slot: u64) -> bool {
        self.contains(&BigUint::from(slot))
    }

    /// Number of slots `<= x`.
    pub fn count_le(&self, x: &BigUint) -> BigUint {
        let two = BigUint::from(2u32);
        if x < &two {
            return BigUint::zero();
        }
        let root = integer_root(x, self.exponent).min(self.bound.clone());
        let powers = if root >= two { root - 1u32 } else { BigUint::zero() };
        powers + u32::from(self.extra_two())
    }

    /// All slots in increasing order, for sets small enough to list.
    pub fn to_vec(&self) -> Result<Vec<u64>> {
        let len = self.len_u64().filter(|&n| n <= 1 << 24).ok_or_else(|| {
            Error::MaterializationTooLarge {
                level: 0,
                detail: format!("permuted set of size {} cannot be listed", self.len()),
            }
        })?;
        Ok((0..len).map(|r| self.nth_u64(r)).collect())
    }

    /// The subset used for entropy-generating representatives: the same
    /// shape with the base bound halved.
    pub fn halved(&self) -> PermutedSet {
        PermutedSet {
            exponent: self.exponent,
            bound: &self.bound / 2u32,
            include_two: self.include_two,
        }
    }
}
