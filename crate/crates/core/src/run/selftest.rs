//! End-to-end checks of the smallest marker instance against values worked
//! out by hand.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_rational::Ratio;
use serde::Serialize;

use crate::complexity::{
    estimate_entropy_dimension, language_profile, ComplexityProfile, DimensionMethod,
};
use crate::construction::{Construction, ConstructionParams};
use crate::ergodic::{chains, decompose, find_all, measure_estimate, return_time};
use crate::symbol::word_to_string;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelftestReport {
    pub checks: Vec<CheckResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }
}

type Check = fn(&Construction) -> Result<(), String>;

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn recurrence(c: &Construction) -> Result<(), String> {
    let lengths: Vec<u64> = (1..=3).map(|j| c.length(j).map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
    let counts: Vec<u64> = (1..=3).map(|j| c.count(j).map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
    expect("lengths", lengths, vec![6, 24, 48])?;
    expect("counts", counts, vec![4, 2, 1])
}

/// Every occurrence of every seed word starts a block.
fn alignment(c: &Construction) -> Result<(), String> {
    let prefix = c.limit_prefix(480).map_err(|e| e.to_string())?;
    let words = c.generation(1).map_err(|e| e.to_string())?.words().unwrap();
    for (i, u) in words.iter().enumerate() {
        if let Some(h) = find_all(&prefix, u).into_iter().find(|h| h % 6 != 0) {
            return Err(format!("word {} occurs at offset {h}", i + 1));
        }
    }
    Ok(())
}

fn decomposition(c: &Construction) -> Result<(), String> {
    let prefix = c.limit_prefix(48).map_err(|e| e.to_string())?;
    let d = decompose(&prefix[3..27], c, 1).map_err(|e| e.to_string())?;
    expect("phase", d.phase, 3)?;
    expect("blocks", d.blocks.clone(), vec![2, 3, 4])?;
    expect(
        "reconstruction",
        d.reconstruct(c).map_err(|e| e.to_string())?,
        prefix[3..27].to_vec(),
    )
}

fn measure(c: &Construction) -> Result<(), String> {
    let u1 = c.generation(1).map_err(|e| e.to_string())?.words().unwrap()[0].clone();
    let s = measure_estimate(c, &u1, 480).map_err(|e| e.to_string())?;
    expect("frequency of u1", s.frequency, Ratio::new(20, 475))?;
    expect("aligned", s.aligned_only, true)
}

fn returns(c: &Construction) -> Result<(), String> {
    let r = return_time(c, 0, 6, 100).map_err(|e| e.to_string())?;
    expect("R_6 at 0", r.return_time, 24)
}

/// Distinct windows of the 480-symbol prefix, counted by hashing.
fn profile(c: &Construction) -> Result<(), String> {
    let text = word_to_string(&c.limit_prefix(480).map_err(|e| e.to_string())?);
    let p = language_profile(c, 40).map_err(|e| e.to_string())?;
    for n in 1..=40 {
        let distinct = (0..=text.len() - n).map(|i| &text[i..i + n]).collect::<HashSet<_>>().len();
        expect(&format!("count at n = {n}"), p.count(n).cloned(), Some(BigUint::from(distinct)))?;
    }
    Ok(())
}

fn chain_census(c: &Construction) -> Result<(), String> {
    let census = chains(c.generation(1).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    expect("chains", census.lengths(), vec![1, 1])?;
    expect("trailing run", census.trailing.len, 0)
}

fn seeds(c: &Construction) -> Result<(), String> {
    let words: Vec<String> = c
        .generation(1)
        .map_err(|e| e.to_string())?
        .words()
        .unwrap()
        .iter()
        .map(|w| word_to_string(w))
        .collect();
    expect("seed words", words, ["001010", "001011", "001101", "001110"].map(String::from).to_vec())
}

const QUICK: &[(&str, Check)] = &[
    ("recurrence", recurrence),
    ("alignment", alignment),
    ("decomposition", decomposition),
    ("measure", measure),
    ("return-time", returns),
    ("chains", chain_census),
    ("seeds", seeds),
];

const FULL: &[(&str, Check)] = &[("profile", profile)];

/// Runs the hand-checked suite against `c`, which should be the smallest
/// marker instance (or a deliberately damaged copy of it).
pub fn selftest_on(c: &Construction, quick: bool) -> SelftestReport {
    let extra: &[(&str, Check)] = if quick { &[] } else { FULL };
    let checks = QUICK
        .iter()
        .chain(extra)
        .map(|(name, f)| {
            let r = f(c);
            CheckResult {
                name: name.to_string(),
                passed: r.is_ok(),
                detail: r.err().unwrap_or_default(),
            }
        })
        .collect();
    SelftestReport { checks }
}

fn desk_checks() -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut push = |name: &str, r: Result<(), String>| {
        out.push(CheckResult {
            name: name.into(),
            passed: r.is_ok(),
            detail: r.err().unwrap_or_default(),
        })
    };
    push(
        "desk-recurrence",
        Construction::build(&ConstructionParams::desk())
            .map_err(|e| e.to_string())
            .and_then(|c| {
                expect("l_3", c.length(3).ok(), Some(75_000))?;
                expect("N_3", c.count(3).ok(), Some(3_628_800))
            }),
    );
    let synthetic = ComplexityProfile::synthetic(4096, |n| n.powf(0.5));
    push(
        "dimension-calibration",
        estimate_entropy_dimension(&synthetic, DimensionMethod::LogLogRegression)
            .map_err(|e| e.to_string())
            .and_then(|e| {
                if (e.point - 0.5).abs() <= 0.05 {
                    Ok(())
                } else {
                    Err(format!("estimate {} for exponent 0.5", e.point))
                }
            }),
    );
    out
}

/// The full suite (or its quick subset) on freshly built instances.
pub fn run_selftest(quick: bool) -> SelftestReport {
    let mut report = match Construction::build(&ConstructionParams::tiny()) {
        Ok(c) => selftest_on(&c, quick),
        Err(e) => SelftestReport {
            checks: vec![CheckResult {
                name: "build".into(),
                passed: false,
                detail: e.to_string(),
            }],
        },
    };
    if !quick {
        report.checks.extend(desk_checks());
    }
    report
}
