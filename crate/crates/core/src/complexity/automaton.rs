//! Generalized suffix automaton over a family of words, giving the number
//! of distinct factors of every length in one pass.

use crate::error::{Error, Result};
use crate::symbol::{Symbol, ALPHABET};

const NONE: u32 = u32::MAX;
const SIGMA: usize = ALPHABET.len();

/// Largest total input accepted (states are at most twice this).
pub const MAX_INDEX_SYMBOLS: u64 = 1 << 27;

#[derive(Debug, Clone)]
struct State {
    len: u32,
    link: u32,
    next: [u32; SIGMA],
}

#[derive(Debug, Clone)]
pub struct FactorIndex {
    states: Vec<State>,
    longest: usize,
}

impl FactorIndex {
    pub fn build<W: AsRef<[Symbol]>>(family: &[W]) -> Result<Self> {
        let total: u64 = family.iter().map(|w| w.as_ref().len() as u64).sum();
        if total > MAX_INDEX_SYMBOLS {
            return Err(Error::IndexTooLarge(format!("{total} symbols")));
        }
        let mut index = FactorIndex {
            states: Vec::with_capacity(2 * total as usize + 1),
            longest: 0,
        };
        index.states.push(State {
            len: 0,
            link: NONE,
            next: [NONE; SIGMA],
        });
        for word in family {
            let word = word.as_ref();
            index.longest = index.longest.max(word.len());
            let mut last = 0u32;
            for &s in word {
                last = index.extend(last, s.index());
            }
        }
        Ok(index)
    }

    fn push(&mut self, len: u32, link: u32, next: [u32; SIGMA]) -> u32 {
        self.states.push(State { len, link, next });
        (self.states.len() - 1) as u32
    }

    fn extend(&mut self, last: u32, c: usize) -> u32 {
        let st = &self.states;
        let existing = st[last as usize].next[c];
        if existing != NONE {
            // The extension already exists (shared with an earlier word).
            let q = existing;
            if st[q as usize].len == st[last as usize].len + 1 {
                return q;
            }
            return self.split(last, c, q);
        }
        let cur = self.push(self.states[last as usize].len + 1, NONE, [NONE; SIGMA]);
        let mut p = last;
        while p != NONE && self.states[p as usize].next[c] == NONE {
            self.states[p as usize].next[c] = cur;
            p = self.states[p as usize].link;
        }
        if p == NONE {
            self.states[cur as usize].link = 0;
            return cur;
        }
        let q = self.states[p as usize].next[c];
        if self.states[p as usize].len + 1 == self.states[q as usize].len {
            self.states[cur as usize].link = q;
        } else {
            let clone = self.split(p, c, q);
            self.states[cur as usize].link = clone;
        }
        cur
    }

    /// Clones `q` so that the transition `p --c-->` lands on a state of
    /// length `len(p) + 1`; returns the clone.
    fn split(&mut self, p: u32, c: usize, q: u32) -> u32 {
        let len = self.states[p as usize].len + 1;
        let (link, next) = {
            let s = &self.states[q as usize];
            (s.link, s.next)
        };
        let clone = self.push(len, link, next);
        self.states[q as usize].link = clone;
        let mut p = p;
        while p != NONE && self.states[p as usize].next[c] == q {
            self.states[p as usize].next[c] = clone;
            p = self.states[p as usize].link;
        }
        clone
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    /// `counts[n-1]` = number of distinct factors of length `n`.
    pub fn count_factors(&self, n_max: usize) -> Vec<u64> {
        let mut diff = vec![0i64; n_max + 2];
        for s in &self.states[1..] {
            let lo = self.states[s.link as usize].len as usize + 1;
            let hi = s.len as usize;
            if lo <= n_max {
                diff[lo] += 1;
                diff[hi.min(n_max) + 1] -= 1;
            }
        }
        let mut out = Vec::with_capacity(n_max);
        let mut acc = 0i64;
        for d in &diff[1..=n_max] {
            acc += d;
            out.push(acc as u64);
        }
        out
    }

    /// True when `word` is a factor of some member of the family.
    pub fn contains(&self, word: &[Symbol]) -> bool {
        let mut s = 0u32;
        for &c in word {
            s = self.states[s as usize].next[c.index()];
            if s == NONE {
                return false;
            }
        }
        true
    }
}
