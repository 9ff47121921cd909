//! The word hierarchy `C_1 ⊂ C_2 ⊂ …` and random access into it.
//!
//! Level `j+1` words are the concatenation of all level-`j` words in
//! position order, with the blocks at the permuted slots `P_j` rearranged.
//! Word `i` of a level is the rearrangement of lexicographic rank `i - 1`
//! (after the optional relabeling of [`LevelOrdering`]), so any symbol of
//! any word can be found by descending one level at a time.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::perm::{factorial, next_permutation, LazyPermutation};
use crate::symbol::{Symbol, Word};

use super::ordering::LevelOrdering;
use super::params::{
    validate_params, ConstructionParams, OrderingPolicy, Variant, MAX_FACTORIAL_ARG,
};
use super::permuted::PermutedSet;
use super::seed::{is_admissible, seed_words};

/// Longest word or prefix assembled in memory.
pub const MAX_WORD_SYMBOLS: u64 = 1 << 28;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Representation {
    Materialized(Vec<Word>),
    Virtual,
}

/// One level `C_j` of the hierarchy.
#[derive(Debug, Clone)]
pub struct Generation {
    pub level: usize,
    /// `l_j`, symbols per word (spacers included).
    pub word_length: BigUint,
    /// `N_j`.
    pub word_count: BigUint,
    /// `P_j`: the slots of a level-`j+1` word whose blocks are permuted.
    pub permuted_set: PermutedSet,
    /// Spacer symbols inside each word of this level.
    pub spacer_count: BigUint,
    pub representation: Representation,
    pub ordering: LevelOrdering,
}

impl Generation {
    pub fn is_materialized(&self) -> bool {
        matches!(self.representation, Representation::Materialized(_))
    }

    pub fn words(&self) -> Option<&[Word]> {
        match &self.representation {
            Representation::Materialized(w) => Some(w),
            Representation::Virtual => None,
        }
    }

    pub fn word_length_u64(&self) -> Option<u64> {
        self.word_length.to_u64()
    }

    pub fn word_count_u64(&self) -> Option<u64> {
        self.word_count.to_u64()
    }
}

/// A word of `C_level`, by 1-based position in that level's ordering.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WordRef {
    pub level: usize,
    pub index: BigUint,
}

impl WordRef {
    pub fn new(level: usize, index: impl Into<BigUint>) -> Self {
        WordRef {
            level,
            index: index.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    /// Levels whose total symbol count `N_j · l_j` exceeds this stay virtual.
    pub max_materialized_symbols: u64,
    /// Upper bound on representatives enumerated for an ordering table.
    pub max_table_entries: u64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_materialized_symbols: 1 << 25,
            max_table_entries: 1 << 21,
        }
    }
}

/// An aligned block of a given level inside a word of some higher level
/// (or inside the limit word).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignedBlock {
    pub start: u64,
    /// 1-based slot inside the enclosing word of the next level.
    pub slot: BigUint,
    /// Position index of the block in its level's ordering.
    pub index: BigUint,
}

enum Visit<'a> {
    Block(&'a AlignedBlock),
    Spacer(u64),
}

/// A built hierarchy, levels `1..=max_level`.
#[derive(Debug, Clone)]
pub struct Construction {
    params: ConstructionParams,
    options: BuildOptions,
    generations: Vec<Generation>,
    warnings: Vec<String>,
}

impl Construction {
    pub fn build(params: &ConstructionParams) -> Result<Self> {
        Self::build_with(params, BuildOptions::default())
    }

    pub fn build_with(params: &ConstructionParams, options: BuildOptions) -> Result<Self> {
        let mut c = Self::seed(params, options)?;
        while c.max_level() < params.max_level {
            c.extend()?;
        }
        Ok(c)
    }

    /// Level 1 only.
    pub fn seed(params: &ConstructionParams, options: BuildOptions) -> Result<Self> {
        Self::seed_from(params, seed_words(params)?, options)
    }

    /// Builds on caller-supplied level-1 words instead of generated seeds.
    /// Words that break the variant's seed rule are accepted with a warning.
    pub fn build_from_seeds(
        params: &ConstructionParams,
        words: Vec<Word>,
        options: BuildOptions,
    ) -> Result<Self> {
        let mut c = Self::seed_from(params, words, options)?;
        while c.max_level() < params.max_level {
            c.extend()?;
        }
        Ok(c)
    }

    fn seed_from(params: &ConstructionParams, words: Vec<Word>, options: BuildOptions) -> Result<Self> {
        let mut validated = validate_params(params)?;
        if words.len() as u64 != params.n1 || words.iter().any(|w| w.len() as u64 != params.l1) {
            return Err(Error::InvalidParams(format!(
                "expected {} seed words of length {}",
                params.n1, params.l1
            )));
        }
        let distinct: std::collections::HashSet<&Word> = words.iter().collect();
        if distinct.len() != words.len() {
            return Err(Error::InvalidParams("seed words are not distinct".into()));
        }
        if let Some(w) = words.iter().find(|w| !is_admissible(params.variant, w)) {
            validated.warnings.push(format!(
                "seed {} is not admissible for the {} variant",
                crate::symbol::word_to_string(w),
                params.variant
            ));
        }
        let word_count = BigUint::from(params.n1);
        let first = Generation {
            level: 1,
            word_length: BigUint::from(params.l1),
            permuted_set: params.permuted_set(&word_count),
            word_count,
            spacer_count: BigUint::zero(),
            representation: Representation::Materialized(words),
            ordering: LevelOrdering::Canonical,
        };
        Ok(Construction {
            params: params.clone(),
            options,
            generations: vec![first],
            warnings: validated.warnings,
        })
    }

    /// Builds the next level from the current top level.
    pub fn extend(&mut self) -> Result<&Generation> {
        let prev = self.generations.last().expect("at least one level");
        let level = prev.level + 1;
        let slots = prev.permuted_set.len();
        let slots_u64 = slots
            .to_u64()
            .filter(|&s| s <= MAX_FACTORIAL_ARG)
            .ok_or_else(|| Error::MaterializationTooLarge {
                level,
                detail: format!("N_{level} = ({slots})! is beyond exact arithmetic"),
            })?;
        if slots_u64 == 0 {
            self.warnings.push(format!(
                "Degenerate: P_{} is empty, level {level} repeats level {}",
                prev.level, prev.level
            ));
        }
        let word_count = factorial(slots_u64);
        let spacer_count = if self.params.variant.has_spacers() {
            slots.clone()
        } else {
            BigUint::zero()
        };
        let word_length = &prev.word_length * &prev.word_count + &spacer_count;
        let permuted_set = self.params.permuted_set(&word_count);

        let ordering = match self.params.ordering {
            OrderingPolicy::LexUnrank => LevelOrdering::Canonical,
            OrderingPolicy::EgsOrdered => {
                match crate::egs::level_ordering(
                    prev,
                    &permuted_set,
                    level,
                    self.options.max_table_entries,
                ) {
                    Ok(table) => LevelOrdering::Egs(table),
                    Err(Error::SetTooLarge(_)) | Err(Error::LevelTooSmall { .. }) => {
                        LevelOrdering::Unavailable
                    }
                    Err(e) => return Err(e),
                }
            }
        };

        let mut next = Generation {
            level,
            word_length,
            word_count,
            permuted_set,
            spacer_count,
            representation: Representation::Virtual,
            ordering,
        };
        let total = &next.word_length * &next.word_count;
        let fits = total <= BigUint::from(self.options.max_materialized_symbols);
        if fits && prev.is_materialized() && next.ordering != LevelOrdering::Unavailable {
            let words = self.materialize(prev, &next)?;
            next.representation = Representation::Materialized(words);
        }
        self.generations.push(next);
        Ok(self.generations.last().unwrap())
    }

    fn materialize(&self, prev: &Generation, next: &Generation) -> Result<Vec<Word>> {
        let lower = prev.words().expect("previous level materialized");
        let count = next.word_count_u64().expect("materializable count");
        let slots = prev.permuted_set.to_vec()?;
        let spacers = self.params.variant.has_spacers();
        let length = next.word_length_u64().unwrap() as usize;
        let build = |perm: &[usize]| -> Word {
            let mut word = Word::with_capacity(length);
            let mut slot_iter = slots.iter().peekable();
            let mut slot_rank = 0usize;
            for b in 1..=lower.len() as u64 {
                let src = if slot_iter.peek() == Some(&&b) {
                    slot_iter.next();
                    if spacers {
                        word.push(Symbol::Spacer);
                    }
                    let v = slots[perm[slot_rank]];
                    slot_rank += 1;
                    v
                } else {
                    b
                };
                word.extend_from_slice(&lower[src as usize - 1]);
            }
            word
        };
        let mut canonical = Vec::with_capacity(count as usize);
        let mut perm: Vec<usize> = (0..slots.len()).collect();
        loop {
            canonical.push(build(&perm));
            if !next_permutation(&mut perm) {
                break;
            }
        }
        match &next.ordering {
            LevelOrdering::Canonical => Ok(canonical),
            LevelOrdering::Egs(table) => (1..=count)
                .map(|p| {
                    let c = table.canonical(&next.permuted_set, &BigUint::from(p))?;
                    Ok(canonical[c.to_usize().unwrap() - 1].clone())
                })
                .collect(),
            LevelOrdering::Unavailable => unreachable!("checked by caller"),
        }
    }

    pub fn params(&self) -> &ConstructionParams {
        &self.params
    }

    pub fn variant(&self) -> Variant {
        self.params.variant
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn max_level(&self) -> usize {
        self.generations.len()
    }

    pub fn generations(&self) -> &[Generation] {
        &self.generations
    }

    pub fn generation(&self, level: usize) -> Result<&Generation> {
        if level == 0 || level > self.generations.len() {
            return Err(Error::LevelNotBuilt {
                level,
                max_level: self.generations.len(),
            });
        }
        Ok(&self.generations[level - 1])
    }

    /// `l_j` as a machine integer, for levels where that makes sense.
    pub fn length(&self, level: usize) -> Result<u64> {
        let g = self.generation(level)?;
        g.word_length_u64().ok_or_else(|| Error::MaterializationTooLarge {
            level,
            detail: format!("l_{level} = {} exceeds u64", g.word_length),
        })
    }

    pub fn count(&self, level: usize) -> Result<u64> {
        let g = self.generation(level)?;
        g.word_count_u64().ok_or_else(|| Error::MaterializationTooLarge {
            level,
            detail: format!("N_{level} = {} exceeds u64", g.word_count),
        })
    }

    /// Highest level whose words are stored explicitly.
    pub fn top_materialized(&self) -> usize {
        self.generations
            .iter()
            .take_while(|g| g.is_materialized())
            .count()
    }

    /// True when the top level holds a single word, so every further level
    /// repeats it and the limit word is periodic.
    pub fn is_stationary(&self) -> bool {
        self.generations.last().unwrap().word_count.is_one()
    }

    /// Canonical (lexicographic-rank) index of a word.
    pub fn canonical_index(&self, word: &WordRef) -> Result<BigUint> {
        let g = self.generation(word.level)?;
        self.check_index(g, &word.index)?;
        match &g.ordering {
            LevelOrdering::Canonical => Ok(word.index.clone()),
            LevelOrdering::Egs(table) => table.canonical(&g.permuted_set, &word.index),
            LevelOrdering::Unavailable if word.index.is_one() => Ok(BigUint::one()),
            LevelOrdering::Unavailable => Err(Error::OrderingNotMaterialized(word.level)),
        }
    }

    fn check_index(&self, g: &Generation, index: &BigUint) -> Result<()> {
        if index.is_zero() || index > &g.word_count {
            return Err(Error::IndexOutOfRange {
                level: g.level,
                index: index.clone(),
                count: g.word_count.clone(),
            });
        }
        Ok(())
    }

    /// The rearrangement of `P_{j-1}` that defines a level-`j` word.
    pub fn word_permutation(&self, word: &WordRef) -> Result<LazyPermutation> {
        let canonical = self.canonical_index(word)?;
        let lower = self.generation(word.level - 1)?;
        LazyPermutation::from_rank(&(canonical - 1u32), &lower.permuted_set.len())
    }

    /// Index of the level-`j-1` block at `slot` of a level-`j` word.
    fn child(&self, lower: &Generation, perm: &LazyPermutation, slot: &BigUint) -> BigUint {
        match lower.permuted_set.rank_of(slot) {
            Some(rank) => lower.permuted_set.nth(&perm.image(&rank)),
            None => slot.clone(),
        }
    }

    /// Indices of the level-`j-1` blocks at the given slots of a level-`j` word.
    pub fn blocks_at(&self, word: &WordRef, slots: &[u64]) -> Result<Vec<u64>> {
        if word.level < 2 {
            return Err(Error::LevelTooSmall {
                level: word.level,
                detail: "seed words have no blocks".into(),
            });
        }
        let lower = self.generation(word.level - 1)?;
        let perm = self.word_permutation(word)?;
        slots
            .iter()
            .map(|&b| {
                let b = BigUint::from(b);
                if b.is_zero() || b > lower.word_count {
                    return Err(Error::PositionOutOfRange {
                        position: b,
                        length: lower.word_count.clone(),
                    });
                }
                Ok(self.child(lower, &perm, &b).to_u64().unwrap())
            })
            .collect()
    }

    /// Block indices (level `j-1`) of a level-`j` word, in slot order.
    pub fn block_indices(&self, word: &WordRef) -> Result<Vec<u64>> {
        if word.level < 2 {
            return Err(Error::LevelTooSmall {
                level: word.level,
                detail: "seed words have no blocks".into(),
            });
        }
        let lower = self.generation(word.level - 1)?;
        let n = self.count(word.level - 1)?;
        let perm = self.word_permutation(word)?;
        Ok((1..=n)
            .map(|b| {
                self.child(lower, &perm, &BigUint::from(b))
                    .to_u64()
                    .unwrap()
            })
            .collect())
    }

    /// Where offset `pos` of a level-`(lower+1)` word falls: the 1-based
    /// block slot, the offset within that block, or `None` for a spacer.
    fn locate(&self, lower: &Generation, pos: &BigUint) -> (BigUint, Option<BigUint>) {
        let l = &lower.word_length;
        if !self.params.variant.has_spacers() {
            return (pos / l + 1u32, Some(pos % l));
        }
        let slots = &lower.permuted_set;
        let begin = |b: &BigUint| -> BigUint {
            let prev = b - 1u32;
            &prev * l + slots.count_le(&prev)
        };
        // Largest b in [1, N] with begin(b) <= pos.
        let (mut lo, mut hi) = (BigUint::one(), lower.word_count.clone());
        while lo < hi {
            let mid: BigUint = (&lo + &hi + 1u32) / 2u32;
            if begin(&mid) <= *pos {
                lo = mid;
            } else {
                hi = mid - 1u32;
            }
        }
        let mut local = pos - begin(&lo);
        if slots.contains(&lo) {
            if local.is_zero() {
                return (lo, None);
            }
            local -= 1u32;
        }
        (lo, Some(local))
    }

    /// Symbol at 0-based `position` of a word, by recursive descent.
    pub fn word_symbol(&self, word: &WordRef, position: &BigUint) -> Result<Symbol> {
        let mut level = word.level;
        let mut index = word.index.clone();
        let mut pos = position.clone();
        loop {
            let g = self.generation(level)?;
            self.check_index(g, &index)?;
            if pos >= g.word_length {
                return Err(Error::PositionOutOfRange {
                    position: pos,
                    length: g.word_length.clone(),
                });
            }
            if let Some(words) = g.words() {
                let i = index.to_usize().unwrap() - 1;
                return Ok(words[i][pos.to_usize().unwrap()]);
            }
            let lower = self.generation(level - 1)?;
            let (slot, local) = self.locate(lower, &pos);
            let Some(local) = local else {
                return Ok(Symbol::Spacer);
            };
            let perm = self.word_permutation(&WordRef {
                level,
                index: index.clone(),
            })?;
            index = self.child(lower, &perm, &slot);
            pos = local;
            level -= 1;
        }
    }

    /// Walks the word `(level, index)` from offset `start`, reporting every
    /// aligned block of level `target` and every spacer that begins before
    /// `end`.
    fn walk(
        &self,
        level: usize,
        index: &BigUint,
        slot: &BigUint,
        start: u64,
        target: usize,
        end: u64,
        visit: &mut dyn FnMut(Visit<'_>),
    ) -> Result<u64> {
        let g = self.generation(level)?;
        let len = g.word_length_u64().unwrap_or(u64::MAX);
        if level == target {
            let block = AlignedBlock {
                start,
                slot: slot.clone(),
                index: index.clone(),
            };
            visit(Visit::Block(&block));
            return Ok(len);
        }
        let lower = self.generation(level - 1)?;
        let lower_len = lower.word_length_u64().unwrap_or(u64::MAX);
        let perm = self.word_permutation(&WordRef {
            level,
            index: index.clone(),
        })?;
        let spacers = self.params.variant.has_spacers();
        let mut pos = start;
        let mut b = BigUint::one();
        while pos < end && b <= lower.word_count {
            if spacers && lower.permuted_set.contains(&b) {
                visit(Visit::Spacer(pos));
                pos += 1;
                if pos >= end {
                    break;
                }
            }
            let child = self.child(lower, &perm, &b);
            self.walk(level - 1, &child, &b, pos, target, end, visit)?;
            pos = pos.saturating_add(lower_len);
            b += 1u32;
        }
        Ok(len)
    }

    /// Smallest built level whose first word covers `len` symbols.
    fn covering_level(&self, len: u64) -> Option<usize> {
        self.generations
            .iter()
            .find(|g| g.word_length >= BigUint::from(len))
            .map(|g| g.level)
    }

    fn period(&self) -> Option<u64> {
        if self.is_stationary() {
            self.generations.last().unwrap().word_length_u64()
        } else {
            None
        }
    }

    /// Splits `[0, len)` of the limit word into top-level copies: for a
    /// non-stationary hierarchy a single covering word, otherwise the
    /// repetitions of the periodic word.
    fn top_words(&self, len: u64, min_level: usize) -> Result<(usize, Vec<u64>)> {
        if let Some(level) = self.covering_level(len) {
            let level = level.max(min_level).min(self.max_level());
            return Ok((level, vec![0]));
        }
        match self.period() {
            Some(p) if p > 0 => {
                let copies = len.div_ceil(p);
                Ok((self.max_level(), (0..copies).map(|r| r * p).collect()))
            }
            _ => Err(Error::PrefixBeyondMaxLevel {
                requested: len,
                available: self.generations.last().unwrap().word_length.clone(),
            }),
        }
    }

    /// Adds levels until the first word covers `len` symbols (or the
    /// hierarchy becomes stationary).
    pub fn extend_to_cover(&mut self, len: u64) -> Result<()> {
        while self.covering_level(len).is_none() && !self.is_stationary() {
            self.extend()?;
        }
        Ok(())
    }

    /// The aligned level-`level` block of the limit word containing offset
    /// `t`, or `None` when `w_t` is a spacer between such blocks.
    pub fn block_containing(&self, level: usize, t: u64) -> Result<Option<AlignedBlock>> {
        self.generation(level)?;
        let min_top = (level + 1).min(self.max_level());
        let (top, starts) = self.top_words(t + 1, min_top)?;
        let base = *starts.iter().rev().find(|&&s| s <= t).unwrap();
        let mut current = top;
        let mut index = BigUint::one();
        let mut slot = BigUint::one();
        let mut pos = BigUint::from(t - base);
        while current > level {
            let lower = self.generation(current - 1)?;
            let (s, local) = self.locate(lower, &pos);
            let Some(local) = local else {
                return Ok(None);
            };
            let perm = self.word_permutation(&WordRef {
                level: current,
                index: index.clone(),
            })?;
            index = self.child(lower, &perm, &s);
            slot = s;
            pos = local;
            current -= 1;
        }
        Ok(Some(AlignedBlock {
            start: t - pos.to_u64().unwrap(),
            slot,
            index,
        }))
    }

    /// `w[0, len)`, the prefix of the limit word.
    pub fn limit_prefix(&self, len: u64) -> Result<Word> {
        if len > MAX_WORD_SYMBOLS {
            return Err(Error::InputTooLarge(format!(
                "prefix of {len} symbols exceeds the {MAX_WORD_SYMBOLS}-symbol cap"
            )));
        }
        let mut out = Word::with_capacity(len as usize);
        if len == 0 {
            return Ok(out);
        }
        let (top, starts) = self.top_words(len, 1)?;
        let target = self.top_materialized().min(top);
        let words = self.generation(target)?.words().unwrap();
        for start in starts {
            self.walk(top, &BigUint::one(), &BigUint::one(), start, target, len, &mut |v| {
                match v {
                    Visit::Spacer(_) => out.push(Symbol::Spacer),
                    Visit::Block(b) => {
                        let w = &words[b.index.to_usize().unwrap() - 1];
                        let take = ((len - b.start) as usize).min(w.len());
                        out.extend_from_slice(&w[..take]);
                    }
                }
            })?;
        }
        out.truncate(len as usize);
        Ok(out)
    }

    /// All symbols of one word (materialized or assembled on demand).
    pub fn word(&self, word: &WordRef) -> Result<Word> {
        let g = self.generation(word.level)?;
        self.check_index(g, &word.index)?;
        if let Some(words) = g.words() {
            return Ok(words[word.index.to_usize().unwrap() - 1].clone());
        }
        let len = g
            .word_length_u64()
            .filter(|&l| l <= MAX_WORD_SYMBOLS)
            .ok_or_else(|| Error::MaterializationTooLarge {
                level: word.level,
                detail: format!("word of length {}", g.word_length),
            })?;
        let target = self.top_materialized();
        let words = self.generation(target)?.words().unwrap();
        let mut out = Word::with_capacity(len as usize);
        self.walk(word.level, &word.index, &BigUint::one(), 0, target, len, &mut |v| {
            match v {
                Visit::Spacer(_) => out.push(Symbol::Spacer),
                Visit::Block(b) => out.extend_from_slice(&words[b.index.to_usize().unwrap() - 1]),
            }
        })?;
        Ok(out)
    }

    /// The aligned level-`level` blocks of the limit word that start before
    /// `len`, with their slots inside the enclosing level-`level+1` word.
    pub fn aligned_blocks(&self, level: usize, len: u64) -> Result<Vec<AlignedBlock>> {
        self.generation(level)?;
        let mut blocks = Vec::new();
        if len == 0 {
            return Ok(blocks);
        }
        let min_top = (level + 1).min(self.max_level());
        let (top, starts) = self.top_words(len, min_top)?;
        for start in starts {
            self.walk(top, &BigUint::one(), &BigUint::one(), start, level, len, &mut |v| {
                if let Visit::Block(b) = v {
                    blocks.push(b.clone());
                }
            })?;
        }
        Ok(blocks)
    }

    /// Offsets of all spacer symbols in `w[0, len)`.
    pub fn spacer_positions(&self, len: u64) -> Result<Vec<u64>> {
        let mut out = Vec::new();
        if len == 0 || !self.params.variant.has_spacers() {
            return Ok(out);
        }
        let (top, starts) = self.top_words(len, 1)?;
        for start in starts {
            self.walk(top, &BigUint::one(), &BigUint::one(), start, 1, len, &mut |v| {
                if let Visit::Spacer(p) = v {
                    out.push(p);
                }
            })?;
        }
        Ok(out)
    }
}
