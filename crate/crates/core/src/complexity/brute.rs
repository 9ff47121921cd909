//! Reference factor counts by direct window deduplication.
//!
//! Windows of length `n` get ids from the ids of length `n - 1` and their
//! last symbol, so each length costs one pass over the input.

use crate::error::{Error, Result};
use crate::symbol::{Symbol, ALPHABET};

/// Largest `total symbols × n_max` accepted.
pub const MAX_BRUTE_WORK: u64 = 1 << 31;

struct Segment<'a> {
    symbols: &'a [Symbol],
    /// Windows may start at `0..starts` (for cyclic words, all offsets).
    starts: Option<usize>,
}

fn count_segments(segments: &[Segment<'_>], n_max: usize) -> Result<Vec<u64>> {
    let total: u64 = segments.iter().map(|s| s.symbols.len() as u64).sum();
    if total.saturating_mul(n_max as u64) > MAX_BRUTE_WORK {
        return Err(Error::InputTooLarge(format!(
            "{total} symbols with n_max = {n_max}"
        )));
    }
    // ids[s][i]: class of the window of the current length at offset i.
    let mut ids: Vec<Vec<u32>> = segments
        .iter()
        .map(|s| s.symbols.iter().map(|&c| c as u32).collect())
        .collect();
    let mut classes = ALPHABET.len();
    let mut table: Vec<u32> = Vec::new();
    let mut seen: Vec<bool> = Vec::new();
    let mut counts = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        if n > 1 {
            // (class of the shorter window, last symbol) -> new class
            table.clear();
            table.resize(classes * ALPHABET.len(), u32::MAX);
            let mut next = 0u32;
            for (seg, row) in segments.iter().zip(ids.iter_mut()) {
                let len = seg.symbols.len();
                let live = (len + 1).saturating_sub(n);
                for i in 0..live {
                    let key = row[i] as usize * ALPHABET.len() + seg.symbols[i + n - 1].index();
                    if table[key] == u32::MAX {
                        table[key] = next;
                        next += 1;
                    }
                    row[i] = table[key];
                }
                row.truncate(live);
            }
            classes = next as usize;
        }
        seen.clear();
        seen.resize(classes, false);
        let mut distinct = 0u64;
        for (seg, row) in segments.iter().zip(ids.iter()) {
            let limit = seg.starts.unwrap_or(row.len()).min(row.len());
            for &id in &row[..limit] {
                if !seen[id as usize] {
                    seen[id as usize] = true;
                    distinct += 1;
                }
            }
        }
        counts.push(distinct);
    }
    Ok(counts)
}

/// `counts[n-1]` = number of distinct length-`n` windows lying inside some
/// word of the family.
pub fn count_factors_bruteforce<W: AsRef<[Symbol]>>(family: &[W], n_max: usize) -> Result<Vec<u64>> {
    let segments: Vec<Segment<'_>> = family
        .iter()
        .map(|w| Segment {
            symbols: w.as_ref(),
            starts: None,
        })
        .collect();
    count_segments(&segments, n_max)
}

/// Factor counts of the periodic sequence `word word word …`.
pub fn count_factors_cyclic(word: &[Symbol], n_max: usize) -> Result<Vec<u64>> {
    if word.is_empty() {
        return Ok(vec![0; n_max]);
    }
    let mut extended = Vec::with_capacity(word.len() + n_max);
    while extended.len() < word.len() + n_max {
        extended.extend_from_slice(word);
    }
    let segments = [Segment {
        symbols: &extended,
        starts: Some(word.len()),
    }];
    count_segments(&segments, n_max)
}
