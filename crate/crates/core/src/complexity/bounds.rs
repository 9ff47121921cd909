//! The finite-level counting bounds
//! `P(m, r(k)) <= |B_{k·l_j}| <= l_{j+1} · P(m, r(k+1))`, where `m = |P_j|`
//! and `r(k) = ⌊k^{1/e}⌋` counts the permuted slots in `k` blocks, together
//! with the Stirling-type sandwiches they rest on.

use num_bigint::BigUint;
use serde::Serialize;

use crate::alpha::{integer_root, ln_big};
use crate::construction::Construction;
use crate::error::{Error, Result};
use crate::perm::{factorial, k_permutations};

use super::profile::ComplexityProfile;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub level: usize,
    pub k: u64,
    pub l: u64,
    #[serde(serialize_with = "crate::serde_big::decimal")]
    pub lower: BigUint,
    #[serde(serialize_with = "crate::serde_big::decimal")]
    pub count: BigUint,
    #[serde(serialize_with = "crate::serde_big::decimal")]
    pub upper: BigUint,
    pub holds: bool,
}

/// One instance of `n ln n - n < ln n! < n ln n` (`inequality = 1`) or
/// `k ln n - k < ln P(n, k) <= k ln n` (`inequality = 2`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StirlingCheck {
    pub inequality: u8,
    pub n: u64,
    pub k: u64,
    pub left: f64,
    pub middle: f64,
    pub right: f64,
    pub holds: bool,
    /// Whether `n` is past the threshold where the inequality is claimed.
    pub asserted: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StirlingThresholds {
    pub factorial_min_n: u64,
    pub falling_min_n: u64,
}

impl Default for StirlingThresholds {
    fn default() -> Self {
        StirlingThresholds {
            factorial_min_n: 10,
            falling_min_n: 16,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub bounds: Vec<BoundCheck>,
    pub stirling: Vec<StirlingCheck>,
}

impl BoundReport {
    pub fn all_hold(&self) -> bool {
        self.bounds.iter().all(|b| b.holds) && self.stirling.iter().all(|s| s.holds || !s.asserted)
    }
}

pub fn factorial_check(n: u64, thresholds: StirlingThresholds) -> StirlingCheck {
    let ln_n = (n as f64).ln();
    let nf = n as f64;
    let middle = ln_big(&factorial(n));
    let (left, right) = (nf * ln_n - nf, nf * ln_n);
    StirlingCheck {
        inequality: 1,
        n,
        k: n,
        left,
        middle,
        right,
        holds: left < middle && middle < right,
        asserted: n >= thresholds.factorial_min_n,
    }
}

pub fn falling_check(n: u64, k: u64, thresholds: StirlingThresholds) -> StirlingCheck {
    let ln_n = (n as f64).ln();
    let kf = k as f64;
    let middle = ln_big(&k_permutations(n, k));
    let (left, right) = (kf * ln_n - kf, kf * ln_n);
    // ln P(n, k) <= k ln n is exact integer arithmetic: P(n, k) <= n^k.
    let upper_ok = k_permutations(n, k) <= num_traits::Pow::pow(BigUint::from(n), k as u32);
    StirlingCheck {
        inequality: 2,
        n,
        k,
        left,
        middle,
        right,
        holds: left < middle && upper_ok,
        asserted: n >= thresholds.falling_min_n,
    }
}

/// Evaluates every `l = k·l_j` (`1 <= k < N_j`) covered by the profile,
/// without failing on violations.
pub fn evaluate_complexity_bounds(
    profile: &ComplexityProfile,
    c: &Construction,
    thresholds: StirlingThresholds,
) -> Result<BoundReport> {
    let mut bounds = Vec::new();
    let mut pairs = std::collections::BTreeSet::new();
    let mut factorials = std::collections::BTreeSet::new();
    for level in 1..c.max_level() {
        let g = c.generation(level)?;
        let (Some(l), Some(n)) = (g.word_length_u64(), g.word_count_u64()) else {
            break;
        };
        let next_len = c.generation(level + 1)?.word_length.clone();
        let Some(m) = g.permuted_set.len_u64() else {
            break;
        };
        factorials.insert(m);
        // Permuted slots among k consecutive blocks.
        let e = g.permuted_set.exponent();
        let slots_upto = |k: u64| u64::try_from(integer_root(&BigUint::from(k), e)).unwrap();
        for k in 1..n {
            let Some(total) = k.checked_mul(l) else { break };
            let Some(count) = profile.count(total as usize) else {
                break;
            };
            let (r0, r1) = (slots_upto(k), slots_upto(k + 1));
            pairs.insert((m, r0));
            pairs.insert((m, r1));
            let lower = k_permutations(m, r0);
            let upper = &next_len * k_permutations(m, r1);
            bounds.push(BoundCheck {
                level,
                k,
                l: total,
                holds: &lower <= count && count <= &upper,
                lower,
                count: count.clone(),
                upper,
            });
        }
    }
    let mut stirling: Vec<StirlingCheck> = factorials
        .into_iter()
        .filter(|&n| n >= 1)
        .map(|n| factorial_check(n, thresholds))
        .collect();
    stirling.extend(
        pairs
            .into_iter()
            .filter(|&(n, k)| n >= 1 && k >= 1)
            .map(|(n, k)| falling_check(n, k, thresholds)),
    );
    Ok(BoundReport { bounds, stirling })
}

/// Like [`evaluate_complexity_bounds`], but fails on the first violated
/// bound or asserted Stirling inequality.
pub fn check_complexity_bounds(
    profile: &ComplexityProfile,
    c: &Construction,
    thresholds: StirlingThresholds,
) -> Result<BoundReport> {
    let report = evaluate_complexity_bounds(profile, c, thresholds)?;
    if let Some(b) = report.bounds.iter().find(|b| !b.holds) {
        return Err(Error::BoundViolated {
            l: b.l,
            level: b.level,
            k: b.k,
            lower: b.lower.clone(),
            count: b.count.clone(),
            upper: b.upper.clone(),
        });
    }
    if let Some(s) = report.stirling.iter().find(|s| s.asserted && !s.holds) {
        return Err(Error::LemmaBoundViolated {
            level: 0,
            detail: format!(
                "inequality {} fails at n = {}, k = {}: {} < {} < {}",
                s.inequality, s.n, s.k, s.left, s.middle, s.right
            ),
        });
    }
    Ok(report)
}
