//! Runs of unpermuted blocks and the finite-level proxy for the good set.

use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::construction::{Construction, Generation};
use crate::error::{Error, Result};

/// Consecutive unpermuted slots `start..start + len` of a level-`j+1` word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Chain {
    pub start: u64,
    pub len: u64,
}

/// The chains of one level, split by the permuted slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainCensus {
    pub level: usize,
    pub word_count: u64,
    pub permuted_slots: Vec<u64>,
    /// Runs ending just before each permuted slot, in slot order.
    pub chains: Vec<Chain>,
    /// The run after the last permuted slot (possibly empty).
    pub trailing: Chain,
}

impl ChainCensus {
    pub fn lengths(&self) -> Vec<u64> {
        self.chains.iter().map(|c| c.len).collect()
    }

    /// Interior chains plus the trailing run.
    pub fn unpermuted_total(&self) -> u64 {
        self.chains.iter().map(|c| c.len).sum::<u64>() + self.trailing.len
    }

    /// The chain holding `slot`, or `None` for a permuted slot.
    pub fn chain_of(&self, slot: u64) -> Option<Chain> {
        self.chains
            .iter()
            .chain(std::iter::once(&self.trailing))
            .find(|c| c.start <= slot && slot < c.start + c.len)
            .copied()
    }
}

fn word_count(g: &Generation) -> Result<u64> {
    g.word_count_u64().ok_or_else(|| Error::SetTooLarge(format!(
        "level {} has {} words",
        g.level, g.word_count
    )))
}

/// Chain decomposition of `1..=N_j` by `P_j`.
pub fn chains(g: &Generation) -> Result<ChainCensus> {
    let n = word_count(g)?;
    let permuted_slots = g.permuted_set.to_vec()?;
    let mut chains = Vec::with_capacity(permuted_slots.len());
    let mut next = 1;
    for &s in &permuted_slots {
        chains.push(Chain {
            start: next,
            len: s - next,
        });
        next = s + 1;
    }
    Ok(ChainCensus {
        level: g.level,
        word_count: n,
        permuted_slots,
        chains,
        trailing: Chain {
            start: next,
            len: n + 1 - next,
        },
    })
}

/// Where one offset sits among the level-`j` chains.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainPosition {
    pub level: usize,
    pub block_start: u64,
    pub slot: u64,
    pub permuted: bool,
    /// Length of the containing chain (0 for a permuted block).
    pub p: u64,
    /// 1-based position of the block in its chain (0 for a permuted block).
    pub q: u64,
}

/// Chain positions of `w_t` at levels `levels`.
pub fn chain_structure(
    c: &Construction,
    t: u64,
    levels: std::ops::RangeInclusive<usize>,
) -> Result<Vec<ChainPosition>> {
    levels
        .map(|j| {
            let census = chains(c.generation(j)?)?;
            let block = c.block_containing(j, t)?.ok_or_else(|| Error::NotInLanguage {
                level: j,
                detail: format!("offset {t} is a spacer"),
            })?;
            let slot = block.slot.to_u64().expect("slot below N_j");
            let (permuted, p, q) = match census.chain_of(slot) {
                Some(ch) => (false, ch.len, slot - ch.start + 1),
                None => (true, 0, 0),
            };
            Ok(ChainPosition {
                level: j,
                block_start: block.start,
                slot,
                permuted,
                p,
                q,
            })
        })
        .collect()
}

/// Membership test for the finite-level good set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XhatCriteria {
    pub eta: f64,
    pub first_level: usize,
    pub last_level: usize,
}

impl XhatCriteria {
    pub const DEFAULT_ETA: f64 = 0.375;

    pub fn new(eta: f64, first_level: usize, last_level: usize) -> Result<Self> {
        if !(eta > 0.25 && eta < 0.5) {
            return Err(Error::InvalidParams(format!("eta = {eta} is outside (1/4, 1/2)")));
        }
        if first_level == 0 || first_level > last_level {
            return Err(Error::InvalidParams(format!(
                "level range {first_level}..={last_level} is empty"
            )));
        }
        Ok(XhatCriteria {
            eta,
            first_level,
            last_level,
        })
    }
}

/// True when at every level in range the block holding `w_t` is unpermuted,
/// `p > N_j^η` and `q < p - N_j^{1/4}`.
pub fn xhat_member(c: &Construction, t: u64, criteria: &XhatCriteria) -> Result<bool> {
    let positions = chain_structure(c, t, criteria.first_level..=criteria.last_level)?;
    for pos in positions {
        let n = c.generation(pos.level)?.word_count_u64().unwrap() as f64;
        let (p, q) = (pos.p as f64, pos.q as f64);
        if pos.permuted || p <= n.powf(criteria.eta) || q >= p - n.powf(0.25) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Share of aligned level-`j` blocks in `w[0, len)` sitting at permuted
/// slots, counted over complete level-`j+1` blocks only.
pub fn permuted_block_fraction(c: &Construction, level: usize, len: u64) -> Result<Ratio<u64>> {
    let g = c.generation(level)?;
    let n = word_count(g)?;
    let blocks = c.aligned_blocks(level, len)?;
    let l = g.word_length_u64().unwrap();
    let complete = blocks
        .iter()
        .rposition(|b| b.slot.to_u64() == Some(n) && b.start + l <= len)
        .map_or(0, |i| i + 1);
    if complete == 0 {
        return Err(Error::InsufficientData(format!(
            "no complete level-{} block in {len} symbols",
            level + 1
        )));
    }
    let permuted = blocks[..complete]
        .iter()
        .filter(|b| g.permuted_set.contains(&b.slot))
        .count();
    Ok(Ratio::new(permuted as u64, complete as u64))
}
