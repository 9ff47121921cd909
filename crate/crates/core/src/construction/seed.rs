//! Level-1 words. Marker seeds are `001` followed by a tail with no `00`;
//! plain seeds are arbitrary binary words.

use std::collections::BTreeSet;

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::symbol::{Symbol, Word};

use super::params::{ConstructionParams, Variant};

const MARKER: [Symbol; 3] = [Symbol::Zero, Symbol::Zero, Symbol::One];

/// Binary strings of length `n` with no `00` factor, for `n = 0..=max`.
/// (These are Fibonacci numbers: 1, 2, 3, 5, 8, ...)
fn no_double_zero_counts(max: u64) -> Vec<BigUint> {
    // ending_in_one[n], ending_in_zero[n] for strings that may follow a '1'
    let mut total = Vec::with_capacity(max as usize + 1);
    let (mut ends_one, mut ends_zero) = (BigUint::one(), BigUint::zero());
    total.push(BigUint::one());
    for _ in 1..=max {
        let next_one = &ends_one + &ends_zero;
        let next_zero = ends_one.clone();
        ends_one = next_one;
        ends_zero = next_zero;
        total.push(&ends_one + &ends_zero);
    }
    total
}

/// Number of admissible seed words of length `l`.
pub fn admissible_count(variant: Variant, l: u64) -> BigUint {
    if variant.uses_marker() {
        if l < 3 {
            return BigUint::zero();
        }
        no_double_zero_counts(l - 3).pop().unwrap()
    } else {
        BigUint::one() << l
    }
}

/// The admissible word of length `l` with lexicographic rank `rank`.
fn unrank_admissible(variant: Variant, l: u64, rank: &BigUint) -> Word {
    if !variant.uses_marker() {
        return (0..l)
            .rev()
            .map(|bit| {
                if rank.bit(bit) {
                    Symbol::One
                } else {
                    Symbol::Zero
                }
            })
            .collect();
    }
    let tail_len = l - 3;
    // counts[n] = admissible tails of length n after a '1'; a tail that
    // follows a '0' must start with '1', so it has counts[n-1] completions.
    let counts = no_double_zero_counts(tail_len);
    let mut word: Word = MARKER.to_vec();
    let mut rank = rank.clone();
    let mut prev_zero = false;
    for pos in 0..tail_len {
        let remaining = (tail_len - pos - 1) as usize;
        if prev_zero {
            word.push(Symbol::One);
            prev_zero = false;
            continue;
        }
        // Completions after writing '0' here: the next symbol is forced to '1'.
        let with_zero = if remaining == 0 {
            BigUint::one()
        } else {
            counts[remaining - 1].clone()
        };
        if rank < with_zero {
            word.push(Symbol::Zero);
            prev_zero = true;
        } else {
            rank -= with_zero;
            word.push(Symbol::One);
        }
    }
    word
}

/// True when `word` is an admissible seed for `variant`.
pub fn is_admissible(variant: Variant, word: &[Symbol]) -> bool {
    if word.iter().any(|s| *s == Symbol::Spacer) {
        return false;
    }
    if !variant.uses_marker() {
        return true;
    }
    word.len() >= 3
        && word[..3] == MARKER
        && !word[1..]
            .windows(2)
            .any(|w| w == [Symbol::Zero, Symbol::Zero])
}

/// The `N_1` seed words, sorted lexicographically. Without an rng seed these
/// are the smallest admissible words; with one, a uniform sample.
pub fn seed_words(params: &ConstructionParams) -> Result<Vec<Word>> {
    let available = admissible_count(params.variant, params.l1);
    let required = BigUint::from(params.n1);
    if available < required {
        return Err(Error::InfeasibleSeed {
            required,
            available,
            length: params.l1,
        });
    }
    let ranks: Vec<BigUint> = match params.rng_seed {
        None => (0..params.n1).map(BigUint::from).collect(),
        Some(seed) => sample_distinct(&available, params.n1, seed).into_iter().collect(),
    };
    // Ranks are monotone in lexicographic order, so sorting ranks sorts words.
    Ok(ranks
        .iter()
        .map(|r| unrank_admissible(params.variant, params.l1, r))
        .collect())
}

/// Floyd's algorithm: `k` distinct values uniformly from `[0, n)`.
fn sample_distinct(n: &BigUint, k: u64, seed: u64) -> BTreeSet<BigUint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen = BTreeSet::new();
    let start = n - BigUint::from(k);
    let mut i = start;
    while &i < n {
        let t = rng.gen_biguint_below(&(&i + 1u32));
        if chosen.contains(&t) {
            chosen.insert(i.clone());
        } else {
            chosen.insert(t);
        }
        i += 1u32;
    }
    debug_assert_eq!(chosen.len() as u64, k);
    chosen
}
