//! Exact pattern search over symbol sequences.

use std::collections::HashMap;

use crate::symbol::Symbol;

fn failure(pattern: &[Symbol]) -> Vec<usize> {
    let mut fail = vec![0; pattern.len()];
    let mut k = 0;
    for i in 1..pattern.len() {
        while k > 0 && pattern[i] != pattern[k] {
            k = fail[k - 1];
        }
        if pattern[i] == pattern[k] {
            k += 1;
        }
        fail[i] = k;
    }
    fail
}

/// Start offsets of every (possibly overlapping) occurrence of `pattern`.
pub fn find_all(text: &[Symbol], pattern: &[Symbol]) -> Vec<usize> {
    let mut out = Vec::new();
    find_each(text, pattern, |i| {
        out.push(i);
        true
    });
    out
}

/// First occurrence at or after `from`.
pub fn find_first(text: &[Symbol], pattern: &[Symbol], from: usize) -> Option<usize> {
    let mut hit = None;
    if from <= text.len() {
        find_each(&text[from..], pattern, |i| {
            hit = Some(from + i);
            false
        });
    }
    hit
}

/// Calls `f` on each occurrence until it returns false.
fn find_each(text: &[Symbol], pattern: &[Symbol], mut f: impl FnMut(usize) -> bool) {
    if pattern.is_empty() {
        for i in 0..=text.len() {
            if !f(i) {
                return;
            }
        }
        return;
    }
    let fail = failure(pattern);
    let mut k = 0;
    for (i, &c) in text.iter().enumerate() {
        while k > 0 && c != pattern[k] {
            k = fail[k - 1];
        }
        if c == pattern[k] {
            k += 1;
        }
        if k == pattern.len() {
            if !f(i + 1 - k) {
                return;
            }
            k = fail[k - 1];
        }
    }
}

const BASE: u64 = 0x100000001b3;

/// Equal-length patterns located in one rolling-hash pass.
pub struct MultiPattern<'a> {
    len: usize,
    patterns: &'a [Vec<Symbol>],
    by_hash: HashMap<u64, Vec<usize>>,
}

fn hash(w: &[Symbol]) -> u64 {
    w.iter()
        .fold(0u64, |h, &s| h.wrapping_mul(BASE).wrapping_add(s as u64 + 1))
}

impl<'a> MultiPattern<'a> {
    /// All patterns must share one length.
    pub fn new(patterns: &'a [Vec<Symbol>]) -> Self {
        let len = patterns.first().map_or(0, Vec::len);
        assert!(patterns.iter().all(|p| p.len() == len), "patterns differ in length");
        let mut by_hash: HashMap<u64, Vec<usize>> = HashMap::new();
        for (i, p) in patterns.iter().enumerate() {
            by_hash.entry(hash(p)).or_default().push(i);
        }
        MultiPattern {
            len,
            patterns,
            by_hash,
        }
    }

    /// `(offset, pattern index)` for every occurrence, in offset order.
    pub fn scan(&self, text: &[Symbol]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let n = self.len;
        if n == 0 || text.len() < n {
            return out;
        }
        let top = (0..n - 1).fold(1u64, |p, _| p.wrapping_mul(BASE));
        let mut h = hash(&text[..n]);
        for i in 0..=text.len() - n {
            if i > 0 {
                h = h
                    .wrapping_sub((text[i - 1] as u64 + 1).wrapping_mul(top))
                    .wrapping_mul(BASE)
                    .wrapping_add(text[i + n - 1] as u64 + 1);
            }
            if let Some(cands) = self.by_hash.get(&h) {
                for &c in cands {
                    if self.patterns[c][..] == text[i..i + n] {
                        out.push((i, c));
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::parse_word;
    use proptest::prelude::*;

    fn naive(text: &[Symbol], p: &[Symbol]) -> Vec<usize> {
        if p.len() > text.len() {
            return vec![];
        }
        (0..=text.len() - p.len()).filter(|&i| &text[i..i + p.len()] == p).collect()
    }

    #[test]
    fn overlapping_hits() {
        let t = parse_word("0000").unwrap();
        assert_eq!(find_all(&t, &parse_word("00").unwrap()), vec![0, 1, 2]);
        assert_eq!(find_first(&t, &parse_word("00").unwrap(), 2), Some(2));
        assert_eq!(find_first(&t, &parse_word("1").unwrap(), 0), None);
    }

    proptest! {
        #[test]
        fn search_agrees_with_naive(text in prop::collection::vec(0u8..2, 0..200), pat in prop::collection::vec(0u8..2, 1..6)) {
            let t: Vec<Symbol> = text.iter().map(|&c| crate::symbol::ALPHABET[c as usize]).collect();
            let p: Vec<Symbol> = pat.iter().map(|&c| crate::symbol::ALPHABET[c as usize]).collect();
            prop_assert_eq!(find_all(&t, &p), naive(&t, &p));
            let pats = vec![p.clone()];
            let mp = MultiPattern::new(&pats);
            let hits: Vec<usize> = mp.scan(&t).into_iter().map(|(i, _)| i).collect();
            prop_assert_eq!(hits, naive(&t, &p));
        }
    }
}
