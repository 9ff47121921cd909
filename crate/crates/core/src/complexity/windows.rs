//! Which blocks of a level can sit next to each other in the limit
//! subshift, and the word families that realize every short factor.

use std::collections::BTreeSet;

use crate::construction::{Construction, PermutedSet, WordRef};
use crate::error::{Error, Result};
use crate::symbol::{Symbol, Word};

/// Two level-`j` blocks that occur consecutively, by position index, with
/// whether a spacer separates them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdjacentPair {
    pub left: u64,
    pub right: u64,
    pub spacer: bool,
}

fn slot_values(slots: &PermutedSet, values: &[u64], s: u64) -> Vec<u64> {
    if slots.contains_u64(s) {
        values.to_vec()
    } else {
        vec![s]
    }
}

/// Every pair of level-`level` blocks adjacent somewhere in the subshift.
///
/// Inside a level-`level+1` word, slot `s` is followed by slot `s + 1`,
/// with permuted slots taking any permuted value; across two level-`level+1`
/// blocks, the last slot is followed by block 1.
pub fn adjacent_pairs(c: &Construction, level: usize, budget: u64) -> Result<Vec<AdjacentPair>> {
    let g = c.generation(level)?;
    let n = c.count(level)?;
    let slots = &g.permuted_set;
    let values = if slots.len_u64().is_some_and(|m| m <= budget) {
        slots.to_vec()?
    } else {
        return Err(Error::TupleBudgetExceeded(format!("|P_{level}| = {}", slots.len())));
    };
    let spacers = c.variant().has_spacers();
    let mut out = BTreeSet::new();
    let push = |p: AdjacentPair, out: &mut BTreeSet<AdjacentPair>| -> Result<()> {
        out.insert(p);
        if out.len() as u64 > budget {
            return Err(Error::TupleBudgetExceeded(format!(
                "more than {budget} adjacent pairs at level {level}"
            )));
        }
        Ok(())
    };
    for s in 1..n {
        let spacer = spacers && slots.contains_u64(s + 1);
        for &a in &slot_values(slots, &values, s) {
            for &b in &slot_values(slots, &values, s + 1) {
                if a != b {
                    push(AdjacentPair { left: a, right: b, spacer }, &mut out)?;
                }
            }
        }
    }
    // Higher levels put a spacer before some level-`level+1` blocks.
    let next_slots = c.params().permuted_set(&crate::perm::factorial(
        slots.len_u64().unwrap(),
    ));
    let junction_spacer = spacers && !next_slots.is_empty();
    for &a in &slot_values(slots, &values, n) {
        push(AdjacentPair { left: a, right: 1, spacer: false }, &mut out)?;
        if junction_spacer {
            push(AdjacentPair { left: a, right: 1, spacer: true }, &mut out)?;
        }
    }
    Ok(out.into_iter().collect())
}

/// Words of one level, fetched once each.
struct WordCache<'a> {
    c: &'a Construction,
    level: usize,
    words: Vec<Option<Word>>,
}

impl<'a> WordCache<'a> {
    fn new(c: &'a Construction, level: usize, count: u64) -> Self {
        WordCache {
            c,
            level,
            words: vec![None; count as usize],
        }
    }

    fn get(&mut self, index: u64) -> Result<&Word> {
        let slot = &mut self.words[index as usize - 1];
        if slot.is_none() {
            *slot = Some(self.c.word(&WordRef::new(self.level, index))?);
        }
        Ok(slot.as_ref().unwrap())
    }
}

/// A family whose length-`n` factors, for every `n <= reach`, are exactly
/// the length-`n` factors of the subshift: all level-`level` words plus the
/// junction strings of all adjacent pairs, cut to `reach - 1` symbols on
/// each side. Requires `reach <= l_level + 1`.
pub fn language_family(
    c: &Construction,
    level: usize,
    reach: usize,
    max_symbols: u64,
) -> Result<Vec<Word>> {
    let l = c.length(level)?;
    if reach as u64 > l + 1 {
        return Err(Error::InvalidParams(format!(
            "reach {reach} exceeds l_{level} + 1 = {}",
            l + 1
        )));
    }
    let n = c.count(level)?;
    if n.saturating_mul(l) > max_symbols {
        return Err(Error::InputTooLarge(format!(
            "level {level} holds {} symbols",
            c.generation(level)?.word_length.clone() * n
        )));
    }
    let pairs = adjacent_pairs(c, level, max_symbols)?;
    let side = reach.saturating_sub(1).min(l as usize);
    let total = n
        .saturating_mul(l)
        .saturating_add((pairs.len() as u64).saturating_mul(2 * side as u64 + 1));
    if total > max_symbols {
        return Err(Error::InputTooLarge(format!(
            "language family at level {level} needs {total} symbols"
        )));
    }
    let mut cache = WordCache::new(c, level, n);
    let mut family = Vec::with_capacity(n as usize + pairs.len());
    for i in 1..=n {
        family.push(cache.get(i)?.clone());
    }
    if side > 0 {
        for p in &pairs {
            let mut s: Word = {
                let left = cache.get(p.left)?;
                left[left.len() - side..].to_vec()
            };
            if p.spacer {
                s.push(Symbol::Spacer);
            }
            s.extend_from_slice(&cache.get(p.right)?[..side]);
            family.push(s);
        }
    }
    Ok(family)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TupleScope {
    /// Only windows inside a single level-`j+1` word.
    WithinWords,
    /// Also windows across two consecutive level-`j+1` blocks.
    Full,
}

/// The `k`-tuples of level-`j` indices occurring consecutively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowTupleSet {
    pub level: usize,
    pub k: usize,
    pub tuples: BTreeSet<Vec<u64>>,
}

/// Enumerates [`WindowTupleSet`]. `slot_cap` bounds the permuted slots in
/// one window, `budget` the number of tuples.
pub fn enumerate_window_tuples(
    c: &Construction,
    level: usize,
    k: usize,
    scope: TupleScope,
    slot_cap: usize,
    budget: u64,
) -> Result<WindowTupleSet> {
    let g = c.generation(level)?;
    let n = c.count(level)?;
    if k == 0 || k as u64 > n {
        return Err(Error::InvalidParams(format!("k = {k} must lie in [1, {n}]")));
    }
    let slots = &g.permuted_set;
    let values = slots.to_vec()?;
    let mut tuples = BTreeSet::new();
    let over = |len: usize| len as u64 > budget;
    for b in 1..=n - k as u64 + 1 {
        let window: Vec<u64> = (b..b + k as u64).collect();
        let permuted: Vec<usize> = (0..k).filter(|&i| slots.contains_u64(window[i])).collect();
        if permuted.len() > slot_cap {
            return Err(Error::TupleBudgetExceeded(format!(
                "{} permuted slots in a window of {k}",
                permuted.len()
            )));
        }
        let mut tuple = window.clone();
        let mut used = vec![false; values.len()];
        assign(&permuted, &values, &mut tuple, &mut used, 0, &mut |t| {
            tuples.insert(t.to_vec());
            !over(tuples.len())
        });
        if over(tuples.len()) {
            return Err(Error::TupleBudgetExceeded(format!("more than {budget} tuples")));
        }
    }
    if scope == TupleScope::Full && k > 1 {
        let pairs = adjacent_pairs(c, level + 1, budget)?;
        for p in pairs {
            for a in 1..k {
                let left_slots: Vec<u64> = (n - a as u64 + 1..=n).collect();
                let right_slots: Vec<u64> = (1..=(k - a) as u64).collect();
                let mut t = c.blocks_at(&WordRef::new(level + 1, p.left), &left_slots)?;
                t.extend(c.blocks_at(&WordRef::new(level + 1, p.right), &right_slots)?);
                tuples.insert(t);
            }
            if over(tuples.len()) {
                return Err(Error::TupleBudgetExceeded(format!("more than {budget} tuples")));
            }
        }
    }
    Ok(WindowTupleSet { level, k, tuples })
}

fn assign(
    positions: &[usize],
    values: &[u64],
    tuple: &mut Vec<u64>,
    used: &mut [bool],
    depth: usize,
    emit: &mut dyn FnMut(&[u64]) -> bool,
) -> bool {
    if depth == positions.len() {
        return emit(tuple);
    }
    for (i, &v) in values.iter().enumerate() {
        if !used[i] {
            used[i] = true;
            tuple[positions[depth]] = v;
            let go_on = assign(positions, values, tuple, used, depth + 1, emit);
            used[i] = false;
            if !go_on {
                return false;
            }
        }
    }
    true
}
