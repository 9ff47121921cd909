//! Config-driven runs: build, analyze, and write CSV/JSON artifacts with a
//! digest manifest.

mod config;
mod manifest;
mod selftest;

use serde::Serialize;

use crate::complexity::{
    estimate_entropy_dimension, language_profile, ComplexityProfile, DimensionEstimate,
    DimensionMethod,
};
use crate::construction::Construction;
use crate::egs::{build_egs, rigidity_deficiency, spectral_scan, RigidityTarget, SpectralOptions};
use crate::ergodic::{
    chain_structure, chains, return_time_in, xhat_member, PrefixSample, XhatCriteria,
};
use crate::error::{Error, Result};
use crate::symbol::{format_word_file, parse_word, Word};
use crate::table::to_csv;

pub use config::{Command, RunConfig};
pub use manifest::{FileEntry, GenerationManifest, LevelManifest, Outputs, RunManifest, MANIFEST_FILE};
pub use selftest::{run_selftest, selftest_on, CheckResult, SelftestReport};

/// What a finished run reports back.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub manifest: RunManifest,
    pub exit_code: i32,
}

struct Run<'a> {
    config: &'a RunConfig,
    out: Outputs,
    warnings: Vec<String>,
}

/// Runs `config.command`, writing every artifact plus `manifest.json` into
/// `config.out_dir`. On failure the manifest is still written, marked
/// incomplete, and the error is returned.
pub fn run(config: &RunConfig) -> Result<RunOutcome> {
    let mut r = Run {
        config,
        out: Outputs::new(&config.out_dir)?,
        warnings: Vec::new(),
    };
    let result = r.dispatch();
    let exit_code = match &result {
        Ok(()) if r.warnings.is_empty() => 0,
        Ok(()) => 1,
        Err(e) => e.exit_code(),
    };
    let manifest = RunManifest {
        config: config.clone(),
        files: r.out.files.clone(),
        warnings: r.warnings.clone(),
        complete: result.is_ok(),
        error: result.as_ref().err().map(ToString::to_string),
        exit_code,
    };
    r.out.finish(&manifest)?;
    result.map(|()| RunOutcome {
        manifest,
        exit_code,
    })
}

fn words(list: &[String]) -> Result<Vec<Word>> {
    list.iter().map(|s| parse_word(s)).collect()
}

#[derive(Serialize)]
struct DimensionRow {
    method: DimensionMethod,
    upper: f64,
    lower: f64,
    residual: f64,
}

#[derive(Serialize)]
struct ReturnRow {
    offset: u64,
    n: u64,
    return_time: Option<u64>,
    budget_exceeded: bool,
    residues: String,
}

#[derive(Serialize)]
struct ChainRow {
    level: usize,
    chain: usize,
    start: u64,
    len: u64,
    trailing: bool,
}

#[derive(Serialize)]
struct PositionRow {
    offset: u64,
    level: usize,
    slot: u64,
    permuted: bool,
    p: u64,
    q: u64,
    xhat_member: bool,
}

#[derive(Serialize)]
struct EgsRow {
    j: usize,
    size: u64,
    closed_form: Option<u64>,
    sample: String,
}

impl Run<'_> {
    fn build(&self) -> Result<Construction> {
        Construction::build(&self.config.params)
    }

    fn build_covering(&self, len: u64) -> Result<Construction> {
        let mut c = self.build()?;
        c.extend_to_cover(len)?;
        Ok(c)
    }

    fn table<T: Serialize>(&mut self, stem: &str, rows: &[T]) -> Result<()> {
        self.out.write(&format!("{stem}.csv"), &to_csv(rows)?)?;
        if self.config.json {
            self.out.write_json(&format!("{stem}.json"), &rows)?;
        }
        Ok(())
    }

    fn dispatch(&mut self) -> Result<()> {
        let command = self.config.command.clone();
        match command {
            Command::Construct { write_words } => {
                let c = self.build()?;
                self.warnings.extend(c.warnings().iter().cloned());
                self.out.write_json("generations.json", &GenerationManifest::of(&c))?;
                if write_words {
                    for g in c.generations() {
                        if let Some(w) = g.words() {
                            self.out
                                .write(&format!("words_level{}.txt", g.level), &format_word_file(w))?;
                        }
                    }
                }
            }
            Command::Profile { n_max } => {
                let c = self.build()?;
                let p = language_profile(&c, n_max)?;
                self.warnings.extend(p.warnings());
                self.out.write("profile.csv", &p.to_csv()?)?;
            }
            Command::Dimension {
                profile,
                n_max,
                method,
            } => {
                let p = match profile {
                    Some(path) => ComplexityProfile::from_csv(&std::fs::read_to_string(path)?)?,
                    None => {
                        let p = language_profile(&self.build()?, n_max)?;
                        self.warnings.extend(p.warnings());
                        p
                    }
                };
                let methods = match method {
                    Some(m) => vec![m],
                    None => vec![
                        DimensionMethod::LogLogRegression,
                        DimensionMethod::CriticalValueScan,
                        DimensionMethod::LogDerivativeRegression,
                    ],
                };
                let estimates: Vec<DimensionEstimate> = methods
                    .into_iter()
                    .map(|m| estimate_entropy_dimension(&p, m))
                    .collect::<Result<_>>()?;
                let rows: Vec<DimensionRow> = estimates
                    .iter()
                    .map(|e| DimensionRow {
                        method: e.method,
                        upper: e.upper,
                        lower: e.lower,
                        residual: e.residual,
                    })
                    .collect();
                self.out.write("dimension.csv", &to_csv(&rows)?)?;
                self.out.write_json("dimension.json", &estimates)?;
            }
            Command::Measure { words: list, length } => {
                let c = self.build_covering(length)?;
                let sample = PrefixSample::new(&c, length)?;
                let rows = words(&list)?
                    .iter()
                    .map(|u| sample.estimate(u).map(|s| s.row()))
                    .collect::<Result<Vec<_>>>()?;
                for r in rows.iter().filter(|r| r.low_confidence) {
                    self.warnings
                        .push(format!("measure of {} is low-confidence", r.word));
                }
                self.table("measure", &rows)?;
            }
            Command::ReturnTime {
                offsets,
                ns,
                budget,
            } => {
                let far = offsets.iter().max().copied().unwrap_or(0)
                    + budget
                    + ns.iter().max().copied().unwrap_or(0);
                let c = self.build_covering(far)?;
                let text = c.limit_prefix(far)?;
                let mut rows = Vec::new();
                for &t in &offsets {
                    for &n in &ns {
                        rows.push(match return_time_in(&c, &text, t, n, budget) {
                            Ok(r) => {
                                let row = r.row();
                                ReturnRow {
                                    offset: t,
                                    n,
                                    return_time: Some(row.return_time),
                                    budget_exceeded: false,
                                    residues: row.residues,
                                }
                            }
                            Err(Error::BudgetExceeded { budget }) => {
                                self.warnings.push(format!(
                                    "R_{n} at offset {t} exceeds the budget {budget}"
                                ));
                                ReturnRow {
                                    offset: t,
                                    n,
                                    return_time: None,
                                    budget_exceeded: true,
                                    residues: String::new(),
                                }
                            }
                            Err(e) => return Err(e),
                        });
                    }
                }
                self.table("return_times", &rows)?;
            }
            Command::Chains {
                levels,
                offsets,
                eta,
            } => {
                let first = *levels.iter().min().ok_or_else(|| {
                    Error::InvalidParams("chains needs at least one level".into())
                })?;
                let last = *levels.iter().max().unwrap();
                let far = offsets.iter().max().map_or(0, |t| t + 1);
                let c = self.build_covering(far)?;
                let mut rows = Vec::new();
                for &j in &levels {
                    let census = chains(c.generation(j)?)?;
                    for (i, ch) in census.chains.iter().enumerate() {
                        rows.push(ChainRow {
                            level: j,
                            chain: i + 1,
                            start: ch.start,
                            len: ch.len,
                            trailing: false,
                        });
                    }
                    rows.push(ChainRow {
                        level: j,
                        chain: census.chains.len() + 1,
                        start: census.trailing.start,
                        len: census.trailing.len,
                        trailing: true,
                    });
                }
                self.table("chains", &rows)?;
                if !offsets.is_empty() {
                    let criteria = XhatCriteria::new(eta, first, last)?;
                    let mut rows = Vec::new();
                    for &t in &offsets {
                        let member = xhat_member(&c, t, &criteria)?;
                        for p in chain_structure(&c, t, first..=last)? {
                            rows.push(PositionRow {
                                offset: t,
                                level: p.level,
                                slot: p.slot,
                                permuted: p.permuted,
                                p: p.p,
                                q: p.q,
                                xhat_member: member,
                            });
                        }
                    }
                    self.table("chain_positions", &rows)?;
                }
            }
            Command::Egs { levels } => {
                let c = self.build()?;
                let s = build_egs(&c, levels)?;
                let rows: Vec<EgsRow> = s
                    .sets
                    .iter()
                    .enumerate()
                    .map(|(i, set)| EgsRow {
                        j: i + 1,
                        size: s.cardinalities[i],
                        closed_form: s.closed_forms[i],
                        sample: set
                            .iter()
                            .take(16)
                            .map(u64::to_string)
                            .collect::<Vec<_>>()
                            .join(" "),
                    })
                    .collect();
                for r in rows.iter().filter(|r| r.closed_form.is_some_and(|f| f != r.size)) {
                    self.warnings
                        .push(format!("|S_{}| = {} differs from the closed form", r.j, r.size));
                }
                self.table("egs", &rows)?;
                self.out.write_json(
                    "egs.json",
                    &serde_json::json!({
                        "cardinalities": s.cardinalities,
                        "closed_forms": s.closed_forms,
                        "upper_dimension_estimate": s.upper_dimension_estimate,
                    }),
                )?;
            }
            Command::Spectral {
                words: list,
                level,
                max_lag,
                block_lags,
                grid,
                length,
            } => {
                let c = self.build_covering(length)?;
                let sample = PrefixSample::new(&c, length)?;
                let opts = SpectralOptions::new(level, max_lag, block_lags, grid);
                let d = spectral_scan(&sample, &words(&list)?, &opts)?;
                if d.low_confidence {
                    self.warnings
                        .push("prefix shorter than 100 times the largest lag".into());
                }
                self.table("spectral_autocorr", &d.autocorr)?;
                self.table("spectral_block_lags", &d.block_lags)?;
                self.table("spectral_theta", &d.eigen_scan)?;
                self.table("spectral_peaks", &d.peaks)?;
            }
            Command::Rigidity {
                word,
                levels,
                length,
            } => {
                let c = self.build_covering(length)?;
                let sample = PrefixSample::new(&c, length)?;
                let target = match word {
                    Some(w) => RigidityTarget::Cylinder(parse_word(&w)?),
                    None => RigidityTarget::Everything,
                };
                let r = rigidity_deficiency(&sample, &target, &levels)?;
                if r.low_confidence {
                    self.warnings
                        .push("prefix shorter than 100 times the largest lag".into());
                }
                for level in &r.increases {
                    self.warnings
                        .push(format!("rigidity deficiency increased at level {level}"));
                }
                self.table("rigidity", &r.rows)?;
            }
            Command::Selftest { quick } => {
                let report = run_selftest(quick);
                self.table("selftest", &report.checks)?;
                if let Some(f) = report.first_failure() {
                    return Err(Error::SelftestFailed {
                        check: f.name.clone(),
                        detail: f.detail.clone(),
                    });
                }
            }
        }
        Ok(())
    }
}
