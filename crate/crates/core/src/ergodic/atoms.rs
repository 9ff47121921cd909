//! Empirical sizes of cylinder atoms and block entropies.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::symbol::Symbol;

use super::search::MultiPattern;

/// Occurrences below this make an atom estimate low-confidence.
pub const MIN_OCCURRENCES: u64 = 20;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AtomRow {
    pub offset: u64,
    pub n: u64,
    pub beta: f64,
    pub occurrences: u64,
    /// `-ln μ̂(P_n(x))`.
    pub neg_log_measure: f64,
    /// `-ln μ̂(P_n(x)) / n^β`.
    pub value: f64,
    pub low_confidence: bool,
}

/// `-ln μ̂(P_n(σ^t w)) / n^β` for each offset, `n` and `β`, where `μ̂` is
/// the frequency in `text`.
pub fn atom_size_profile(
    text: &[Symbol],
    offsets: &[u64],
    n_grid: &[u64],
    beta_grid: &[f64],
) -> Result<Vec<AtomRow>> {
    let mut rows = Vec::new();
    for &n in n_grid {
        let nu = n as usize;
        if n == 0 || nu > text.len() {
            return Err(Error::InvalidParams(format!(
                "block length {n} outside 1..={}",
                text.len()
            )));
        }
        let patterns = offsets
            .iter()
            .map(|&t| {
                let t = t as usize;
                text.get(t..t + nu).map(<[Symbol]>::to_vec).ok_or_else(|| {
                    Error::InvalidParams(format!("offset {t} + {n} exceeds the prefix"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut counts = vec![0u64; patterns.len()];
        for (_, i) in MultiPattern::new(&patterns).scan(text) {
            counts[i] += 1;
        }
        let windows = (text.len() - nu + 1) as f64;
        for (i, &t) in offsets.iter().enumerate() {
            let occ = counts[i];
            let neg = -(occ as f64 / windows).ln();
            for &beta in beta_grid {
                rows.push(AtomRow {
                    offset: t,
                    n,
                    beta,
                    occurrences: occ,
                    neg_log_measure: neg,
                    value: if beta == 0.0 { neg } else { neg / (n as f64).powf(beta) },
                    low_confidence: occ < MIN_OCCURRENCES,
                });
            }
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyRow {
    pub n: u64,
    pub distinct: u64,
    /// Shannon entropy in nats of the empirical `n`-block distribution.
    pub entropy: f64,
}

fn entropy_of(counts: impl Iterator<Item = u64>, total: f64) -> (u64, f64) {
    let mut distinct = 0;
    let mut h = 0.0;
    for k in counts {
        distinct += 1;
        let p = k as f64 / total;
        h -= p * p.ln();
    }
    (distinct, h)
}

/// `H_n` for `n = 1..=n_max` over the windows of `text`.
pub fn empirical_block_entropy(text: &[Symbol], n_max: u64) -> Result<Vec<EntropyRow>> {
    if n_max as usize > text.len() {
        return Err(Error::InsufficientData(format!(
            "block length {n_max} exceeds the {}-symbol prefix",
            text.len()
        )));
    }
    (1..=n_max)
        .map(|n| {
            let nu = n as usize;
            let total = (text.len() - nu + 1) as f64;
            let (distinct, entropy) = if nu <= 64 {
                // Two bits per symbol.
                let mask = if nu == 64 { u128::MAX } else { (1u128 << (2 * nu)) - 1 };
                let mut counts: HashMap<u128, u64> = HashMap::new();
                let mut key = 0u128;
                for (i, &s) in text.iter().enumerate() {
                    key = ((key << 2) | s.index() as u128) & mask;
                    if i + 1 >= nu {
                        *counts.entry(key).or_default() += 1;
                    }
                }
                entropy_of(counts.into_values(), total)
            } else {
                let mut counts: HashMap<&[Symbol], u64> = HashMap::new();
                for w in text.windows(nu) {
                    *counts.entry(w).or_default() += 1;
                }
                entropy_of(counts.into_values(), total)
            };
            Ok(EntropyRow {
                n,
                distinct,
                entropy,
            })
        })
        .collect()
}
