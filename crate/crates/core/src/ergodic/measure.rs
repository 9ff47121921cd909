//! Cylinder frequencies in prefixes of the limit word.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::One;
use serde::Serialize;

use crate::construction::{Construction, Variant, WordRef};
use crate::error::{Error, Result};
use crate::symbol::{word_to_string, Symbol, Word};

use super::search::find_all;

/// Occurrences of one word in `w[0, L)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CylinderStats {
    pub word: Word,
    pub prefix_length: u64,
    pub occurrence_count: u64,
    /// `occurrence_count / (L - |u| + 1)`.
    pub frequency: Ratio<u64>,
    /// Level `j` when `u` is a word of `C_j`.
    pub level: Option<usize>,
    /// Every occurrence starts an aligned level-`j` block.
    pub aligned_only: bool,
    /// `|u| > L / 100`; too few windows for a meaningful estimate.
    pub low_confidence: bool,
}

impl CylinderStats {
    pub fn frequency_f64(&self) -> f64 {
        *self.frequency.numer() as f64 / *self.frequency.denom() as f64
    }

    pub fn row(&self) -> CylinderRow {
        CylinderRow {
            word: word_to_string(&self.word),
            prefix_length: self.prefix_length,
            occurrences: self.occurrence_count,
            frequency: self.frequency.to_string(),
            frequency_f64: self.frequency_f64(),
            level: self.level,
            aligned_only: self.aligned_only,
            low_confidence: self.low_confidence,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CylinderRow {
    pub word: String,
    pub prefix_length: u64,
    pub occurrences: u64,
    pub frequency: String,
    pub frequency_f64: f64,
    pub level: Option<usize>,
    pub aligned_only: bool,
    pub low_confidence: bool,
}

/// A prefix of the limit word kept in memory for repeated scans.
pub struct PrefixSample<'a> {
    c: &'a Construction,
    prefix: Word,
}

impl<'a> PrefixSample<'a> {
    pub fn new(c: &'a Construction, len: u64) -> Result<Self> {
        Ok(PrefixSample {
            c,
            prefix: c.limit_prefix(len)?,
        })
    }

    pub fn construction(&self) -> &Construction {
        self.c
    }

    pub fn prefix(&self) -> &[Symbol] {
        &self.prefix
    }

    pub fn len(&self) -> u64 {
        self.prefix.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.prefix.is_empty()
    }

    /// The level whose materialized words include `u`.
    fn level_of(&self, u: &[Symbol]) -> Option<usize> {
        self.c.generations().iter().find_map(|g| {
            let words = g.words()?;
            (words[0].len() == u.len() && words.iter().any(|w| w == u)).then_some(g.level)
        })
    }

    pub fn estimate(&self, u: &[Symbol]) -> Result<CylinderStats> {
        let len = self.len();
        let hits = find_all(&self.prefix, u);
        let windows = (len + 1).saturating_sub(u.len() as u64).max(1);
        let level = self.level_of(u);
        let aligned_only = match level {
            Some(j) => {
                let starts: HashSet<u64> = self
                    .c
                    .aligned_blocks(j, len)?
                    .into_iter()
                    .map(|b| b.start)
                    .collect();
                hits.iter().all(|&h| starts.contains(&(h as u64)))
            }
            None => false,
        };
        Ok(CylinderStats {
            word: u.to_vec(),
            prefix_length: len,
            occurrence_count: hits.len() as u64,
            frequency: Ratio::new(hits.len() as u64, windows),
            level,
            aligned_only,
            low_confidence: (u.len() as u64) * 100 > len,
        })
    }
}

/// Frequency of `u` in `w[0, len)`.
pub fn measure_estimate(c: &Construction, u: &[Symbol], len: u64) -> Result<CylinderStats> {
    PrefixSample::new(c, len)?.estimate(u)
}

fn aligned_measure(c: &Construction, level: usize) -> Result<Ratio<BigUint>> {
    if c.variant() != Variant::Marker {
        return Err(Error::VariantUnsupported { required: "marker" });
    }
    let next = c.generation(level + 1)?;
    Ok(Ratio::new(BigUint::one(), next.word_length.clone()))
}

/// `μ` of the cylinder of one word of `C_j`: each level-`j+1` block holds
/// it exactly once, at an aligned position.
pub fn exact_aligned_measure(c: &Construction, word: &WordRef) -> Result<Ratio<BigUint>> {
    let g = c.generation(word.level)?;
    if word.index < BigUint::one() || word.index > g.word_count {
        return Err(Error::IndexOutOfRange {
            level: word.level,
            index: word.index.clone(),
            count: g.word_count.clone(),
        });
    }
    aligned_measure(c, word.level)
}

/// `μ` of the concatenation of the blocks at consecutive unpermuted slots
/// `first..first + len` of a level-`j+1` word.
pub fn exact_chain_measure(c: &Construction, level: usize, first: u64, len: u64) -> Result<Ratio<BigUint>> {
    let g = c.generation(level)?;
    let end = first + len;
    if first == 0 || len == 0 || BigUint::from(end - 1) > g.word_count {
        return Err(Error::NotUnpermutedChain(format!(
            "slots {first}..{end} out of range"
        )));
    }
    if let Some(s) = (first..end).find(|&s| g.permuted_set.contains_u64(s)) {
        return Err(Error::NotUnpermutedChain(format!("slot {s} is permuted")));
    }
    aligned_measure(c, level)
}
