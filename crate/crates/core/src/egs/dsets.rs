//! Representatives whose blocks at the half-size slot set `Q` are pairwise
//! different arrangements, and the ordering that places them at the
//! permuted slots of the next level.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::construction::{Construction, EgsTable, Generation, PermutedSet};
use crate::error::{Error, Result};
use crate::perm::{k_permutations, rank_lex};

/// `D_j`: one word of `C_j` for each injective filling of the `Q_{j-1}`
/// slots, the lexicographically smallest such word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DjSet {
    pub level: usize,
    /// Canonical indices, increasing.
    pub representatives: Vec<BigUint>,
    pub q_set: PermutedSet,
    /// `|P_{j-1}|`, the number of values each `Q` slot can take.
    pub permuted_values: u64,
}

/// `Q_{j-1}` for the level below: the permuted slots with the base bound halved.
pub fn q_set(lower: &Generation) -> Result<PermutedSet> {
    let p = &lower.permuted_set;
    if p.bound() < &BigUint::from(2u32) {
        return Err(Error::LevelTooSmall {
            level: lower.level + 1,
            detail: format!("floor(N^alpha) = {} < 2 for N = {}", p.bound(), lower.word_count),
        });
    }
    let q = p.halved();
    if q.is_empty() {
        return Err(Error::LevelTooSmall {
            level: lower.level + 1,
            detail: "Q is empty".into(),
        });
    }
    Ok(q)
}

/// Representatives of `D_{lower.level + 1}` given the level below.
pub fn dj_from_lower(lower: &Generation, budget: u64) -> Result<DjSet> {
    let q = q_set(lower)?;
    let m = lower.permuted_set.len_u64().ok_or_else(|| {
        Error::SetTooLarge(format!("|P_{}| = {}", lower.level, lower.permuted_set.len()))
    })?;
    let k = q.len_u64().unwrap();
    let total = k_permutations(m, k);
    if total > BigUint::from(budget) {
        return Err(Error::SetTooLarge(format!("|D_{}| = {total}", lower.level + 1)));
    }
    // Q ⊂ P and both are sorted, so the Q slots are ranks of P.
    let q_ranks: Vec<usize> = q
        .to_vec()?
        .iter()
        .map(|&s| lower.permuted_set.rank_of_u64(s).unwrap() as usize)
        .collect();
    let m = m as usize;
    let mut reps = Vec::with_capacity(total.to_usize().unwrap());
    let mut choice: Vec<usize> = Vec::with_capacity(q_ranks.len());
    let mut used = vec![false; m];
    fill(&q_ranks, m, &mut choice, &mut used, &mut reps);
    reps.sort();
    Ok(DjSet {
        level: lower.level + 1,
        representatives: reps,
        q_set: q,
        permuted_values: m as u64,
    })
}

fn fill(
    q_ranks: &[usize],
    m: usize,
    choice: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<BigUint>,
) {
    if choice.len() == q_ranks.len() {
        let mut perm = vec![usize::MAX; m];
        for (&r, &v) in q_ranks.iter().zip(choice.iter()) {
            perm[r] = v;
        }
        let mut free = (0..m).filter(|v| !used[*v]);
        for slot in perm.iter_mut().filter(|s| **s == usize::MAX) {
            *slot = free.next().unwrap();
        }
        out.push(rank_lex(&perm) + 1u32);
        return;
    }
    for v in 0..m {
        if !used[v] {
            used[v] = true;
            choice.push(v);
            fill(q_ranks, m, choice, used, out);
            choice.pop();
            used[v] = false;
        }
    }
}

/// `D_j` of a built hierarchy, `j >= 2`.
pub fn build_dj(construction: &Construction, level: usize) -> Result<DjSet> {
    if level < 2 {
        return Err(Error::LevelTooSmall {
            level,
            detail: "D_j needs a level below".into(),
        });
    }
    let lower = construction.generation(level - 1)?;
    construction.generation(level)?;
    dj_from_lower(lower, 1 << 24)
}

/// The ordering of level `level`: the words at the slots `slots` (that is,
/// `P_level`) are the smallest members of `D_level` other than word 1.
pub fn level_ordering(
    lower: &Generation,
    slots: &PermutedSet,
    level: usize,
    budget: u64,
) -> Result<EgsTable> {
    let need = slots
        .len_u64()
        .filter(|&n| n <= budget)
        .ok_or_else(|| Error::SetTooLarge(format!("|P_{level}| = {}", slots.len())))?;
    let d = dj_from_lower(lower, budget)?;
    let placed: Vec<BigUint> = d
        .representatives
        .into_iter()
        .filter(|r| !r.is_one())
        .take(need as usize)
        .collect();
    if (placed.len() as u64) < need {
        return Err(Error::InfeasiblePlacement {
            level,
            detail: format!(
                "{need} permuted slots but only {} representatives besides word 1",
                placed.len()
            ),
        });
    }
    Ok(EgsTable::new(placed))
}
