//! First-return times of shifted copies of the limit word.

use serde::Serialize;

use crate::construction::Construction;
use crate::error::{Error, Result};
use crate::symbol::Symbol;

use super::search::find_first;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Residue {
    pub level: usize,
    pub word_length: u64,
    pub residue: u64,
}

/// `R_n` for the point `σ^t w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReturnTimeRecord {
    pub offset: u64,
    pub n: u64,
    pub return_time: u64,
    /// `R_n mod l_j` for every built level with a machine-sized length.
    pub residues: Vec<Residue>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReturnTimeRow {
    pub offset: u64,
    pub n: u64,
    pub return_time: u64,
    pub residues: String,
}

impl ReturnTimeRecord {
    pub fn residue(&self, level: usize) -> Option<u64> {
        self.residues
            .iter()
            .find(|r| r.level == level)
            .map(|r| r.residue)
    }

    pub fn row(&self) -> ReturnTimeRow {
        let residues = self
            .residues
            .iter()
            .map(|r| format!("{}:{}", r.level, r.residue))
            .collect::<Vec<_>>()
            .join(" ");
        ReturnTimeRow {
            offset: self.offset,
            n: self.n,
            return_time: self.return_time,
            residues,
        }
    }
}

/// First `k` in `1..=budget` with `text[t+k, t+k+n) = text[t, t+n)`.
/// A short `text` lowers the budget to what it can show.
pub fn first_return(text: &[Symbol], t: usize, n: usize, budget: u64) -> Result<u64> {
    let end = (t as u64 + budget + n as u64).min(text.len() as u64) as usize;
    let pattern = &text[t..t + n];
    match find_first(&text[..end], pattern, t + 1) {
        Some(p) => Ok((p - t) as u64),
        None => Err(Error::BudgetExceeded {
            budget: (end - n - t) as u64,
        }),
    }
}

fn residues(c: &Construction, r: u64) -> Vec<Residue> {
    c.generations()
        .iter()
        .filter_map(|g| {
            let l = g.word_length_u64()?;
            Some(Residue {
                level: g.level,
                word_length: l,
                residue: r % l,
            })
        })
        .collect()
}

/// Scans forward from `t` for the first return of the length-`n` prefix of
/// `σ^t w`, looking at most `budget` steps ahead.
pub fn return_time(c: &Construction, t: u64, n: u64, budget: u64) -> Result<ReturnTimeRecord> {
    let text = c.limit_prefix(t + budget + n)?;
    record(c, &text, t, n, budget)
}

/// [`return_time`] against a prefix already in memory.
pub fn return_time_in(
    c: &Construction,
    text: &[Symbol],
    t: u64,
    n: u64,
    budget: u64,
) -> Result<ReturnTimeRecord> {
    if t + n > text.len() as u64 {
        return Err(Error::InvalidParams(format!(
            "window [{t}, {}) exceeds the {}-symbol prefix",
            t + n,
            text.len()
        )));
    }
    record(c, text, t, n, budget)
}

fn record(c: &Construction, text: &[Symbol], t: u64, n: u64, budget: u64) -> Result<ReturnTimeRecord> {
    if n == 0 {
        return Err(Error::InvalidParams("n must be positive".into()));
    }
    let r = first_return(text, t as usize, n as usize, budget)?;
    Ok(ReturnTimeRecord {
        offset: t,
        n,
        return_time: r,
        residues: residues(c, r),
    })
}
