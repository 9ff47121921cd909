//! Estimating the critical exponent `β` at which `log |B_n| / n^β` stops
//! growing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fit::linear_fit;

use super::profile::ComplexityProfile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DimensionMethod {
    /// Slope of `log log |B_n|` against `log n`.
    LogLogRegression,
    /// Classify the trend of `log |B_n| / n^β` over a grid of `β`.
    CriticalValueScan,
    /// Slope of `log (d log |B_n| / d log n)` against `log n`. Polynomial
    /// factors in `|B_n|` contribute a constant derivative, so they do not
    /// bias this slope upward the way they bias the log-log slope.
    LogDerivativeRegression,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Trend {
    Growing,
    Flat,
    Vanishing,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetaDiagnostic {
    pub beta: f64,
    /// Slope of `log(log |B_n| / n^β)` against `log n` on the tail.
    pub slope: f64,
    pub trend: Trend,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimensionEstimate {
    pub upper: f64,
    pub lower: f64,
    pub method: DimensionMethod,
    pub beta_grid: Vec<f64>,
    pub residual: f64,
    #[serde(skip)]
    pub point: f64,
    #[serde(skip)]
    pub diagnostics: Vec<BetaDiagnostic>,
}

/// Minimum number of profile entries.
pub const MIN_ENTRIES: usize = 16;
/// Trend slopes within this band count as flat.
pub const FLAT_BAND: f64 = 0.02;

fn default_grid() -> Vec<f64> {
    (0..=100).map(|i| i as f64 / 100.0).collect()
}

/// `(ln n, ln |B_n|)` for `n` in the upper part of the profile with `|B_n| >= 2`.
fn tail(profile: &ComplexityProfile, from_fraction: f64) -> Vec<(f64, f64)> {
    let n_max = profile.n_max();
    let start = ((n_max as f64 * from_fraction).ceil() as usize).max(1);
    (start..=n_max)
        .filter_map(|n| {
            let lc = profile.log_count(n)?;
            (lc >= std::f64::consts::LN_2).then(|| ((n as f64).ln(), lc))
        })
        .collect()
}

/// Fits on the whole tail, and on four consecutive chunks of it to bracket
/// the slope.
fn bracketed(points: &[(f64, f64)]) -> Result<(f64, f64, f64, f64)> {
    let (xs, ys): (Vec<f64>, Vec<f64>) = points.iter().copied().unzip();
    let fit = linear_fit(&xs, &ys)
        .ok_or_else(|| Error::InsufficientData("degenerate regression".into()))?;
    let chunk = (points.len() / 4).max(2);
    let local: Vec<f64> = points
        .chunks(chunk)
        .filter(|c| c.len() >= 2)
        .filter_map(|c| {
            let (x, y): (Vec<f64>, Vec<f64>) = c.iter().copied().unzip();
            linear_fit(&x, &y).map(|f| f.slope)
        })
        .collect();
    let hi = local.iter().copied().fold(fit.slope, f64::max);
    let lo = local.iter().copied().fold(fit.slope, f64::min);
    Ok((fit.slope, lo, hi, fit.residual))
}

pub fn estimate_entropy_dimension(
    profile: &ComplexityProfile,
    method: DimensionMethod,
) -> Result<DimensionEstimate> {
    if profile.n_max() < MIN_ENTRIES {
        return Err(Error::InsufficientData(format!(
            "{} profile entries, at least {MIN_ENTRIES} needed",
            profile.n_max()
        )));
    }
    let clamp = |x: f64| x.clamp(0.0, 1.0);
    match method {
        DimensionMethod::LogLogRegression => {
            let pts: Vec<(f64, f64)> = tail(profile, 0.5)
                .into_iter()
                .map(|(x, y)| (x, y.ln()))
                .collect();
            check_points(&pts)?;
            let (slope, lo, hi, residual) = bracketed(&pts)?;
            Ok(DimensionEstimate {
                upper: clamp(hi),
                lower: clamp(lo),
                method,
                beta_grid: Vec::new(),
                residual,
                point: clamp(slope),
                diagnostics: Vec::new(),
            })
        }
        DimensionMethod::LogDerivativeRegression => {
            let raw = tail(profile, 0.125);
            // Geometric subsample so that each difference spans a fixed ratio.
            let mut picked: Vec<(f64, f64)> = Vec::new();
            for p in raw {
                if picked.last().is_none_or(|q| p.0 - q.0 >= std::f64::consts::LN_2 / 8.0) {
                    picked.push(p);
                }
            }
            let pts: Vec<(f64, f64)> = picked
                .windows(2)
                .filter_map(|w| {
                    let d = (w[1].1 - w[0].1) / (w[1].0 - w[0].0);
                    (d > 0.0).then(|| ((w[0].0 + w[1].0) / 2.0, d.ln()))
                })
                .collect();
            check_points(&pts)?;
            let (slope, lo, hi, residual) = bracketed(&pts)?;
            Ok(DimensionEstimate {
                upper: clamp(hi),
                lower: clamp(lo),
                method,
                beta_grid: Vec::new(),
                residual,
                point: clamp(slope),
                diagnostics: Vec::new(),
            })
        }
        DimensionMethod::CriticalValueScan => critical_value_scan(profile, default_grid()),
    }
}

fn check_points(pts: &[(f64, f64)]) -> Result<()> {
    if pts.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "{} usable points in the profile tail",
            pts.len()
        )));
    }
    Ok(())
}

/// For each `β`, the trend of `log |B_n| / n^β` along the tail; the
/// estimate brackets the switch from growing to vanishing.
pub fn critical_value_scan(profile: &ComplexityProfile, grid: Vec<f64>) -> Result<DimensionEstimate> {
    let pts: Vec<(f64, f64)> = tail(profile, 0.5)
        .into_iter()
        .map(|(x, y)| (x, y.ln()))
        .collect();
    check_points(&pts)?;
    let (xs, ys): (Vec<f64>, Vec<f64>) = pts.iter().copied().unzip();
    let base = linear_fit(&xs, &ys)
        .ok_or_else(|| Error::InsufficientData("degenerate regression".into()))?;
    let diagnostics: Vec<BetaDiagnostic> = grid
        .iter()
        .map(|&beta| {
            let slope = base.slope - beta;
            let trend = if slope > FLAT_BAND {
                Trend::Growing
            } else if slope < -FLAT_BAND {
                Trend::Vanishing
            } else {
                Trend::Flat
            };
            BetaDiagnostic { beta, slope, trend }
        })
        .collect();
    let upper = diagnostics
        .iter()
        .find(|d| d.trend == Trend::Vanishing)
        .map(|d| d.beta)
        .unwrap_or(1.0);
    let lower = diagnostics
        .iter()
        .rev()
        .find(|d| d.trend == Trend::Growing)
        .map(|d| d.beta)
        .unwrap_or(0.0)
        .min(upper);
    Ok(DimensionEstimate {
        upper,
        lower,
        method: DimensionMethod::CriticalValueScan,
        beta_grid: grid,
        residual: base.residual,
        point: (upper + lower) / 2.0,
        diagnostics,
    })
}
