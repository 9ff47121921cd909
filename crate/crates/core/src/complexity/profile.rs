//! `n ↦ |B_n(X)|` for the limit subshift.

use num_bigint::BigUint;
use serde::Serialize;

use crate::alpha::ln_big;
use crate::construction::Construction;
use crate::error::{Error, Result};

use super::automaton::FactorIndex;
use super::brute::count_factors_cyclic;
use super::windows::language_family;

/// How the counts of a profile were certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    /// Recomputed from the family one level up; `stabilized_up_to` is the
    /// longest agreeing prefix.
    Recomputed { level: usize },
    /// The level above was too large to index; the counts are exact by
    /// construction of the adjacent-pair family.
    Structural,
    /// Counts supplied from outside (a file or a synthetic law).
    External,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexityProfile {
    /// `counts[n-1] = |B_n|`.
    pub counts: Vec<BigUint>,
    /// Level whose family produced the counts (0 for external profiles).
    pub source_level: usize,
    pub stabilized_up_to: u64,
    pub certificate: Certificate,
}

impl ComplexityProfile {
    pub fn external(counts: Vec<BigUint>) -> Self {
        let n = counts.len() as u64;
        ComplexityProfile {
            counts,
            source_level: 0,
            stabilized_up_to: n,
            certificate: Certificate::External,
        }
    }

    pub fn from_u64(counts: &[u64]) -> Self {
        Self::external(counts.iter().map(|&c| BigUint::from(c)).collect())
    }

    /// `|B_n| = ⌈exp(f(n))⌉` for `n = 1..=n_max`, for calibrating estimators.
    pub fn synthetic(n_max: u64, log_count: impl Fn(f64) -> f64) -> Self {
        Self::external((1..=n_max).map(|n| ceil_exp(log_count(n as f64))).collect())
    }

    pub fn n_max(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, n: usize) -> Option<&BigUint> {
        n.checked_sub(1).and_then(|i| self.counts.get(i))
    }

    pub fn log_count(&self, n: usize) -> Option<f64> {
        self.count(n).map(ln_big)
    }

    pub fn is_stabilized(&self, n: usize) -> bool {
        n as u64 <= self.stabilized_up_to
    }

    pub fn warnings(&self) -> Vec<String> {
        if self.stabilized_up_to < self.counts.len() as u64 {
            vec![format!(
                "NotStabilized: counts agree with the level above only up to n = {}",
                self.stabilized_up_to
            )]
        } else {
            Vec::new()
        }
    }

    /// Columns `n,count,log_count,source_level,stabilized`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        w.write_record(["n", "count", "log_count", "source_level", "stabilized"])?;
        for (i, c) in self.counts.iter().enumerate() {
            let n = i + 1;
            w.write_record([
                n.to_string(),
                c.to_string(),
                ln_big(c).to_string(),
                self.source_level.to_string(),
                u8::from(self.is_stabilized(n)).to_string(),
            ])?;
        }
        Ok(String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.to_string()))?).unwrap())
    }

    /// Reads a profile CSV. Only `n` and `count` are required; rows must
    /// list `n = 1, 2, …` in order.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let headers = r.headers()?.clone();
        let col = |name: &str| {
            headers
                .iter()
                .position(|h| h.trim() == name)
                .ok_or_else(|| Error::Parse(format!("profile CSV lacks a {name:?} column")))
        };
        let (n_col, c_col) = (col("n")?, col("count")?);
        let mut counts = Vec::new();
        for (i, row) in r.records().enumerate() {
            let row = row?;
            let n: usize = row[n_col]
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad n {:?}", &row[n_col])))?;
            if n != i + 1 {
                return Err(Error::Parse(format!("expected n = {}, found {n}", i + 1)));
            }
            let c: BigUint = row[c_col]
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad count {:?}", &row[c_col])))?;
            counts.push(c);
        }
        Ok(Self::external(counts))
    }
}

/// `⌈e^x⌉`, to double precision.
fn ceil_exp(x: f64) -> BigUint {
    let x = x.max(0.0);
    if x < 40.0 {
        return BigUint::from(x.exp().ceil() as u64);
    }
    // e^x = 2^(x / ln 2) = 2^k · 2^f with 0 <= f < 1
    let bits = x / std::f64::consts::LN_2;
    let k = bits.floor() as u64;
    let mantissa = (2f64.powf(bits - k as f64) * (1u64 << 52) as f64).ceil() as u64;
    BigUint::from(mantissa) << (k - 52)
}

/// Tuning for [`language_profile_with`].
#[derive(Debug, Clone, Copy)]
pub struct ProfileOptions {
    /// Largest family (in symbols) indexed at either level.
    pub max_symbols: u64,
    /// Recompute one level up to certify the counts.
    pub recompute: bool,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        ProfileOptions {
            max_symbols: 1 << 25,
            recompute: true,
        }
    }
}

pub fn language_profile(c: &Construction, n_max: usize) -> Result<ComplexityProfile> {
    language_profile_with(c, n_max, ProfileOptions::default())
}

fn counts_at(c: &Construction, level: usize, n_max: usize, max_symbols: u64) -> Result<Vec<u64>> {
    let family = language_family(c, level, n_max, max_symbols)?;
    Ok(FactorIndex::build(&family)?.count_factors(n_max))
}

/// Counts from the family at the smallest level `j` with `l_j >= n_max`,
/// checked against level `j + 1`.
pub fn language_profile_with(
    c: &Construction,
    n_max: usize,
    options: ProfileOptions,
) -> Result<ComplexityProfile> {
    let covering = c
        .generations()
        .iter()
        .find(|g| g.word_length >= BigUint::from(n_max))
        .map(|g| g.level);
    let Some(level) = covering else {
        if c.is_stationary() {
            // The limit word is periodic: count factors of its period.
            let top = c.max_level();
            let word = c.limit_prefix(c.length(top)?)?;
            let counts = count_factors_cyclic(&word, n_max)?;
            return Ok(ComplexityProfile {
                counts: counts.into_iter().map(BigUint::from).collect(),
                source_level: top,
                stabilized_up_to: n_max as u64,
                certificate: Certificate::Recomputed { level: top + 1 },
            });
        }
        return Err(Error::PrefixBeyondMaxLevel {
            requested: n_max as u64,
            available: c.generations().last().unwrap().word_length.clone(),
        });
    };
    let max = options.max_symbols;
    let (base, check) = if options.recompute {
        let mut above = c.clone();
        let above_ok = if above.max_level() == level {
            above.extend().map(|_| ())
        } else {
            Ok(())
        };
        rayon::join(
            || counts_at(c, level, n_max, max),
            || above_ok.and_then(|_| counts_at(&above, level + 1, n_max, max)),
        )
    } else {
        (counts_at(c, level, n_max, max), Err(Error::BudgetExceeded { budget: max }))
    };
    let base = base?;
    let (stabilized_up_to, certificate) = match check {
        Ok(upper) => {
            let agree = base.iter().zip(&upper).take_while(|(a, b)| a == b).count();
            (agree as u64, Certificate::Recomputed { level: level + 1 })
        }
        Err(Error::InputTooLarge(_))
        | Err(Error::IndexTooLarge(_))
        | Err(Error::TupleBudgetExceeded(_))
        | Err(Error::MaterializationTooLarge { .. })
        | Err(Error::BudgetExceeded { .. }) => (n_max as u64, Certificate::Structural),
        Err(e) => return Err(e),
    };
    Ok(ComplexityProfile {
        counts: base.into_iter().map(BigUint::from).collect(),
        source_level: level,
        stabilized_up_to,
        certificate,
    })
}
