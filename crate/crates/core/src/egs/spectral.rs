//! Correlation and eigenvalue scans of cylinder indicators.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::ergodic::{find_all, PrefixSample};
use crate::error::{Error, Result};
use crate::symbol::{word_to_string, Symbol};

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralOptions {
    /// Lags for the autocorrelation table.
    pub lags: Vec<u64>,
    /// Block lags `k · l_level` for `k = 1..=block_lag_count`.
    pub level: usize,
    pub block_lag_count: u64,
    pub thetas: Vec<f64>,
    /// Rows kept in the peak table.
    pub peaks: usize,
}

impl SpectralOptions {
    /// Lags `0..=max_lag`, `θ = i / grid` for `i = 0..grid`.
    pub fn new(level: usize, max_lag: u64, block_lag_count: u64, grid: usize) -> Self {
        SpectralOptions {
            lags: (0..=max_lag).collect(),
            level,
            block_lag_count,
            thetas: (0..grid).map(|i| i as f64 / grid as f64).collect(),
            peaks: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AutocorrRow {
    pub cylinder: String,
    pub lag: u64,
    /// Offsets `t` with both `t` and `t + lag` in the cylinder.
    pub co_occurrence: u64,
    /// Offsets where both indicators are defined.
    pub windows: u64,
    pub autocorr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockLagSummary {
    pub cylinder: String,
    pub level: usize,
    pub lag_unit: u64,
    pub lags_scanned: u64,
    pub empty_lags: u64,
    pub empty_density: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThetaRow {
    pub cylinder: String,
    pub theta: f64,
    pub magnitude: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDiagnostics {
    pub prefix_length: u64,
    pub autocorr: Vec<AutocorrRow>,
    pub block_lags: Vec<BlockLagSummary>,
    pub eigen_scan: Vec<ThetaRow>,
    pub peaks: Vec<ThetaRow>,
    /// `L < 100 · (largest lag)`.
    pub low_confidence: bool,
}

/// Occurrence indicator of `u` over the window starts of `text`.
fn indicator(text: &[Symbol], u: &[Symbol]) -> Vec<bool> {
    let windows = (text.len() + 1).saturating_sub(u.len());
    let mut ind = vec![false; windows];
    for h in find_all(text, u) {
        ind[h] = true;
    }
    ind
}

fn co_occurrence(ind: &[bool], lag: usize) -> (u64, u64) {
    if lag >= ind.len() {
        return (0, 0);
    }
    let n = ind.len() - lag;
    let both = (0..n).filter(|&t| ind[t] && ind[t + lag]).count();
    (both as u64, n as u64)
}

pub fn spectral_scan(
    sample: &PrefixSample,
    cylinders: &[Vec<Symbol>],
    opts: &SpectralOptions,
) -> Result<SpectralDiagnostics> {
    let c = sample.construction();
    let text = sample.prefix();
    let unit = c.length(opts.level)?;
    let max_lag = opts
        .lags
        .iter()
        .copied()
        .chain(std::iter::once(unit * opts.block_lag_count))
        .max()
        .unwrap_or(0);
    let mut out = SpectralDiagnostics {
        prefix_length: sample.len(),
        autocorr: Vec::new(),
        block_lags: Vec::new(),
        eigen_scan: Vec::new(),
        peaks: Vec::new(),
        low_confidence: sample.len() < 100 * max_lag,
    };
    for u in cylinders {
        if u.is_empty() {
            return Err(Error::InvalidParams("empty cylinder word".into()));
        }
        let name = word_to_string(u);
        let ind = indicator(text, u);
        out.autocorr.par_extend(opts.lags.par_iter().map(|&lag| {
            let (both, windows) = co_occurrence(&ind, lag as usize);
            AutocorrRow {
                cylinder: name.clone(),
                lag,
                co_occurrence: both,
                windows,
                autocorr: if windows == 0 { 0.0 } else { both as f64 / windows as f64 },
            }
        }));

        let scanned: Vec<u64> = (1..=opts.block_lag_count)
            .filter(|k| ((k * unit) as usize) < ind.len())
            .collect();
        let empty = scanned
            .par_iter()
            .filter(|&&k| co_occurrence(&ind, (k * unit) as usize).0 == 0)
            .count() as u64;
        out.block_lags.push(BlockLagSummary {
            cylinder: name.clone(),
            level: opts.level,
            lag_unit: unit,
            lags_scanned: scanned.len() as u64,
            empty_lags: empty,
            empty_density: if scanned.is_empty() {
                0.0
            } else {
                empty as f64 / scanned.len() as f64
            },
        });

        let hits: Vec<f64> = (0..ind.len()).filter(|&t| ind[t]).map(|t| t as f64).collect();
        let norm = ind.len().max(1) as f64;
        let rows: Vec<ThetaRow> = opts
            .thetas
            .par_iter()
            .map(|&theta| {
                let (mut re, mut im) = (0.0, 0.0);
                for &t in &hits {
                    // Reduce the phase first so large t keep their precision.
                    let phase = (theta * t).rem_euclid(1.0) * std::f64::consts::TAU;
                    re += phase.cos();
                    im += phase.sin();
                }
                ThetaRow {
                    cylinder: name.clone(),
                    theta,
                    magnitude: re.hypot(im) / norm,
                }
            })
            .collect();
        let mut peaks = rows.clone();
        peaks.sort_by(|a, b| b.magnitude.total_cmp(&a.magnitude));
        peaks.truncate(opts.peaks);
        out.peaks.extend(peaks);
        out.eigen_scan.extend(rows);
    }
    Ok(out)
}

/// The set whose indicator is compared with its shift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RigidityTarget {
    Cylinder(Vec<Symbol>),
    /// The whole space; its indicator is identically one.
    Everything,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RigidityRow {
    pub level: usize,
    pub lag: u64,
    pub deficiency_num: u64,
    pub deficiency_den: u64,
    pub deficiency: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RigidityReport {
    pub target: RigidityTarget,
    /// `μ̂(A)` over the same prefix.
    pub measure: Ratio<u64>,
    pub rows: Vec<RigidityRow>,
    /// Levels where the deficiency rose above the previous level's.
    pub increases: Vec<usize>,
    pub low_confidence: bool,
}

/// Empirical `μ(σ^{l_n} A △ A)`: the share of offsets `t` where the
/// indicators of `A` at `t` and `t + l_n` differ.
pub fn rigidity_deficiency(
    sample: &PrefixSample,
    target: &RigidityTarget,
    levels: &[usize],
) -> Result<RigidityReport> {
    let c = sample.construction();
    let text = sample.prefix();
    let ind = match target {
        RigidityTarget::Cylinder(u) => indicator(text, u),
        RigidityTarget::Everything => vec![true; text.len()],
    };
    let hits = ind.iter().filter(|&&b| b).count() as u64;
    let measure = Ratio::new(hits, ind.len().max(1) as u64);
    let mut rows = Vec::with_capacity(levels.len());
    let mut max_lag = 0;
    for &level in levels {
        let lag = c.length(level)?;
        max_lag = max_lag.max(lag);
        if lag as usize >= ind.len() {
            return Err(Error::InsufficientData(format!(
                "lag {lag} needs more than {} symbols",
                sample.len()
            )));
        }
        let n = ind.len() - lag as usize;
        let differ = (0..n)
            .into_par_iter()
            .filter(|&t| ind[t] != ind[t + lag as usize])
            .count() as u64;
        rows.push(RigidityRow {
            level,
            lag,
            deficiency_num: differ,
            deficiency_den: n as u64,
            deficiency: differ as f64 / n as f64,
        });
    }
    let increases = rows
        .windows(2)
        .filter(|p| p[1].deficiency > p[0].deficiency)
        .map(|p| p[1].level)
        .collect();
    Ok(RigidityReport {
        target: target.clone(),
        measure,
        rows,
        increases,
        low_confidence: sample.len() < 100 * max_lag,
    })
}
