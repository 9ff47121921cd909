//! Parsing a window of the limit word into aligned blocks of one level.

use std::collections::HashMap;

use crate::construction::Construction;
use crate::error::{Error, Result};
use crate::symbol::{Symbol, Word};

/// A window split into full level-`j` blocks plus partial residues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub level: usize,
    /// Offset of the first full block inside the window.
    pub phase: usize,
    /// Position indices (in the level's ordering) of the full blocks.
    pub blocks: Vec<u64>,
    /// Window offsets where the full blocks start.
    pub block_starts: Vec<usize>,
    /// Window offsets of spacer symbols lying between blocks.
    pub spacers: Vec<usize>,
    /// Length of the partial block before `phase` (a spacer directly
    /// before the first block is not counted here).
    pub prefix_residue: usize,
    /// Length of the partial block after the last full block.
    pub suffix_residue: usize,
    /// Words whose suffix matches the leading residue.
    pub prefix_candidates: Vec<u64>,
    /// Words whose prefix matches the trailing residue.
    pub suffix_candidates: Vec<u64>,
}

impl Decomposition {
    /// Rebuilds the window from the blocks and the first residue candidates.
    pub fn reconstruct(&self, c: &Construction) -> Result<Word> {
        let words = level_words(c, self.level)?;
        let word = |i: u64| &words[i as usize - 1];
        let mut out = Word::new();
        if self.prefix_residue > 0 {
            let w = word(self.prefix_candidates[0]);
            out.extend_from_slice(&w[w.len() - self.prefix_residue..]);
        }
        let mut spacers = self.spacers.iter().peekable();
        let mut push_spacers = |out: &mut Word| {
            while spacers.peek().is_some_and(|&&s| s == out.len()) {
                spacers.next();
                out.push(Symbol::Spacer);
            }
        };
        push_spacers(&mut out);
        for &b in &self.blocks {
            out.extend_from_slice(word(b));
            push_spacers(&mut out);
        }
        if self.suffix_residue > 0 {
            out.extend_from_slice(&word(self.suffix_candidates[0])[..self.suffix_residue]);
        }
        Ok(out)
    }
}

fn level_words(c: &Construction, level: usize) -> Result<&[Word]> {
    c.generation(level)?
        .words()
        .ok_or(Error::OrderingNotMaterialized(level))
}

/// Reusable lookup table for decomposing many windows at one level.
pub struct Decomposer<'a> {
    level: usize,
    words: &'a [Word],
    index: HashMap<&'a [Symbol], u64>,
    /// Common prefix of all words of the level.
    head: &'a [Symbol],
    spacers: bool,
}

impl<'a> Decomposer<'a> {
    pub fn new(c: &'a Construction, level: usize) -> Result<Self> {
        if !c.variant().uses_marker() {
            return Err(Error::VariantUnsupported {
                required: "marker or spacer",
            });
        }
        let words = level_words(c, level)?;
        let index = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.as_slice(), i as u64 + 1))
            .collect();
        let first = &words[0];
        let common = words.iter().fold(first.len(), |n, w| {
            n.min(first.iter().zip(w).take_while(|(a, b)| a == b).count())
        });
        Ok(Decomposer {
            level,
            words,
            index,
            head: &first[..common],
            spacers: c.variant().has_spacers(),
        })
    }

    pub fn word_length(&self) -> usize {
        self.words[0].len()
    }

    /// The unique decomposition of `window`.
    pub fn decompose(&self, window: &[Symbol]) -> Result<Decomposition> {
        let l = self.word_length();
        if window.len() < 2 * l {
            return Err(Error::WindowTooShort {
                length: window.len(),
                required: 2 * l,
            });
        }
        let mut found = Vec::new();
        // A leading spacer can push the first full block to offset `l`.
        let phases = (l + usize::from(self.spacers)).min(window.len() - l + 1);
        for phase in 0..phases {
            if window[phase..].starts_with(self.head) {
                if let Some(d) = self.try_phase(window, phase) {
                    found.push(d);
                }
            }
        }
        match found.len() {
            0 => Err(Error::NotInLanguage {
                level: self.level,
                detail: "no phase parses into blocks of this level".into(),
            }),
            1 => Ok(found.pop().unwrap()),
            _ => Err(Error::AmbiguousPhase {
                level: self.level,
                phases: found.iter().map(|d| d.phase).collect(),
            }),
        }
    }

    fn try_phase(&self, window: &[Symbol], phase: usize) -> Option<Decomposition> {
        let l = self.word_length();
        let mut spacers = Vec::new();
        let mut lead = phase;
        if self.spacers && phase > 0 && window[phase - 1] == Symbol::Spacer {
            spacers.push(phase - 1);
            lead -= 1;
        }
        if lead >= l {
            return None;
        }
        let prefix_candidates = self.candidates(&window[..lead], true);
        if lead > 0 && prefix_candidates.is_empty() {
            return None;
        }
        let mut blocks = Vec::new();
        let mut block_starts = Vec::new();
        let mut pos = phase;
        while pos + l <= window.len() {
            let &b = self.index.get(&window[pos..pos + l])?;
            blocks.push(b);
            block_starts.push(pos);
            pos += l;
            if self.spacers && pos < window.len() && window[pos] == Symbol::Spacer {
                spacers.push(pos);
                pos += 1;
            }
        }
        let tail = &window[pos..];
        let suffix_candidates = self.candidates(tail, false);
        if !tail.is_empty() && suffix_candidates.is_empty() {
            return None;
        }
        Some(Decomposition {
            level: self.level,
            phase,
            blocks,
            block_starts,
            spacers,
            prefix_residue: lead,
            suffix_residue: tail.len(),
            prefix_candidates,
            suffix_candidates,
        })
    }

    fn candidates(&self, part: &[Symbol], suffix: bool) -> Vec<u64> {
        if part.is_empty() {
            return Vec::new();
        }
        (1..=self.words.len() as u64)
            .filter(|&i| {
                let w = &self.words[i as usize - 1];
                if suffix {
                    w.ends_with(part)
                } else {
                    w.starts_with(part)
                }
            })
            .collect()
    }
}

/// One-shot [`Decomposer::decompose`].
pub fn decompose(window: &[Symbol], c: &Construction, level: usize) -> Result<Decomposition> {
    Decomposer::new(c, level)?.decompose(window)
}


