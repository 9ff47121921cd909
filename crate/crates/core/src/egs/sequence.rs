//! The entropy-generating sequence: `S_1 = {0, …, l_1 − 1}` and `S_j` the
//! union of copies of `S_{j-1}` translated to the blocks at the `Q_{j-1}`
//! slots.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::construction::Construction;
use crate::error::{Error, Result};
use crate::fit::linear_fit;

use super::dsets::q_set;

/// Largest `|S_J|` we are prepared to list.
pub const MAX_EGS_SIZE: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq)]
pub struct EgsSequence {
    /// `sets[j-1]` is `S_j`, increasing.
    pub sets: Vec<Vec<u64>>,
    /// `|S_j|` as computed.
    pub cardinalities: Vec<u64>,
    /// `(l_1 / 2^{j-1}) · Π ⌊√N_i⌋` where it is an exact count, else `None`.
    pub closed_forms: Vec<Option<u64>>,
    /// Slope of `log n` against `log s_n` over the upper half of `S_J`.
    pub upper_dimension_estimate: Option<f64>,
}

impl EgsSequence {
    /// The flattened increasing sequence `s_1 < s_2 < …` (that is, `S_J`).
    pub fn flattened(&self) -> &[u64] {
        self.sets.last().map(Vec::as_slice).unwrap_or(&[])
    }
}

/// Builds `S_1, …, S_levels`.
pub fn build_egs(construction: &Construction, levels: usize) -> Result<EgsSequence> {
    if levels == 0 {
        return Err(Error::LevelTooSmall {
            level: 0,
            detail: "at least one level is needed".into(),
        });
    }
    construction.generation(levels)?;
    let params = construction.params();
    let spacers = construction.variant().has_spacers();
    let mut sets = vec![(0..params.l1).collect::<Vec<u64>>()];
    for j in 2..=levels {
        let lower = construction.generation(j - 1)?;
        let q = q_set(lower)?;
        let l = construction.length(j - 1)?;
        let prev = sets.last().unwrap();
        let size = q.len_u64().unwrap_or(u64::MAX).saturating_mul(prev.len() as u64);
        if size > MAX_EGS_SIZE {
            return Err(Error::SetTooLarge(format!("|S_{j}| = {size}")));
        }
        let mut next = Vec::with_capacity(size as usize);
        for k in q.to_vec()? {
            // Spacers sit in front of each permuted slot.
            let shift = (k - 1) * l
                + if spacers {
                    lower.permuted_set.count_le(&BigUint::from(k)).to_u64().unwrap()
                } else {
                    0
                };
            next.extend(prev.iter().map(|s| s + shift));
        }
        sets.push(next);
    }
    let cardinalities = sets.iter().map(|s| s.len() as u64).collect();
    let closed_forms = (1..=levels).map(|j| closed_form(construction, j)).collect();
    let upper_dimension_estimate = dimension_estimate(sets.last().unwrap());
    Ok(EgsSequence {
        sets,
        cardinalities,
        closed_forms,
        upper_dimension_estimate,
    })
}

/// `(l_1 / 2^{j-1}) · Π_{i<j} ⌊√N_i⌋`, defined when every `⌊√N_i⌋` is even
/// and the parameters use `α = 1/2` with the extra slot 2.
pub fn closed_form(construction: &Construction, level: usize) -> Option<u64> {
    let params = construction.params();
    if params.alpha != crate::Alpha::HALF || params.variant.has_spacers() {
        return None;
    }
    let mut value = BigUint::from(params.l1);
    for i in 1..level {
        let root = construction.generation(i).ok()?.permuted_set.bound().clone();
        if root.bit(0) {
            return None;
        }
        value *= root / 2u32;
    }
    value.to_u64()
}

fn dimension_estimate(s: &[u64]) -> Option<f64> {
    let (xs, ys): (Vec<f64>, Vec<f64>) = s
        .iter()
        .enumerate()
        .skip(s.len() / 2)
        .filter(|(_, &v)| v > 0)
        .map(|(i, &v)| ((v as f64).ln(), ((i + 1) as f64).ln()))
        .unzip();
    linear_fit(&xs, &ys).map(|f| f.slope)
}
