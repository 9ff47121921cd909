//! Factorials, k-permutation counts and lexicographic permutation
//! ranking/unranking (Lehmer codes), including a lazy form that only
//! materializes the non-identity tail of a permutation.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Longest permutation tail we are willing to unrank explicitly.
pub const MAX_TAIL: usize = 1 << 20;

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `P(n, k) = n! / (n-k)!`, zero when `k > n`.
pub fn k_permutations(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    ((n - k + 1)..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Lexicographic rank (0-based) of a permutation of `0..m`.
pub fn rank_lex(perm: &[usize]) -> BigUint {
    let m = perm.len();
    let mut used = vec![false; m];
    let mut rank = BigUint::zero();
    for (i, &p) in perm.iter().enumerate() {
        let smaller = used[..p].iter().filter(|u| !**u).count();
        rank = rank * (m - i) + smaller;
        used[p] = true;
    }
    rank
}

/// Permutation of `0..m` with lexicographic rank `rank`.
pub fn unrank_lex(rank: &BigUint, m: usize) -> Vec<usize> {
    // Factoradic digits, least significant first.
    let mut digits = Vec::with_capacity(m);
    let mut r = rank.clone();
    for radix in 1..=m {
        let d = (&r % radix).to_usize().unwrap_or(0);
        digits.push(d);
        r /= radix;
    }
    debug_assert!(r.is_zero(), "rank out of range for m = {m}");
    let mut pool: Vec<usize> = (0..m).collect();
    digits
        .iter()
        .rev()
        .map(|&d| pool.remove(d))
        .collect()
}

/// Advances to the next permutation in lexicographic order.
pub fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// A permutation of `0..m` (with `m` possibly astronomically large) that is
/// the identity on its first `m - tail.len()` positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LazyPermutation {
    m: BigUint,
    offset: BigUint,
    tail: Vec<usize>,
}

impl LazyPermutation {
    pub fn identity(m: BigUint) -> Self {
        LazyPermutation {
            offset: m.clone(),
            m,
            tail: Vec::new(),
        }
    }

    /// Unranks `rank` among the `m!` permutations of `0..m`.
    pub fn from_rank(rank: &BigUint, m: &BigUint) -> Result<Self> {
        if rank.is_zero() {
            return Ok(Self::identity(m.clone()));
        }
        // Smallest k with k! > rank; the first m - k entries are fixed.
        let mut k = 1usize;
        let mut fact = BigUint::one();
        while &fact <= rank {
            k += 1;
            fact *= k;
            if k > MAX_TAIL {
                return Err(Error::MaterializationTooLarge {
                    level: 0,
                    detail: format!("permutation tail longer than {MAX_TAIL}"),
                });
            }
        }
        let kb = BigUint::from(k);
        if &kb > m {
            return Err(Error::IndexOutOfRange {
                level: 0,
                index: rank + 1u32,
                count: fact,
            });
        }
        Ok(LazyPermutation {
            offset: m - &kb,
            m: m.clone(),
            tail: unrank_lex(rank, k),
        })
    }

    pub fn len(&self) -> &BigUint {
        &self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.tail.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Image of position `t` (0-based).
    pub fn image(&self, t: &BigUint) -> BigUint {
        if t < &self.offset {
            return t.clone();
        }
        let i = (t - &self.offset).to_usize().expect("tail index fits usize");
        &self.offset + self.tail[i]
    }

    pub fn image_u64(&self, t: u64) -> u64 {
        self.image(&BigUint::from(t))
            .to_u64()
            .expect("image of a u64 position fits u64")
    }
}
