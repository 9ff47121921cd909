use num_bigint::BigUint;
use num_rational::Ratio;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subshift::construction::{Construction, ConstructionParams, Variant, WordRef};
use subshift::ergodic::*;
use subshift::symbol::{parse_word, word_to_string, Symbol};
use subshift::Error;

fn tiny() -> Construction {
    Construction::build(&ConstructionParams::tiny()).unwrap()
}

fn desk() -> Construction {
    Construction::build(&ConstructionParams::desk().with_max_level(4)).unwrap()
}

fn w(s: &str) -> Vec<Symbol> {
    parse_word(s).unwrap()
}

/// First `k > 0` with `text[t+k..t+k+n] == text[t..t+n]`, by direct comparison.
fn naive_return(text: &str, t: usize, n: usize) -> Option<usize> {
    let b = text.as_bytes();
    (1..).take_while(|k| t + k + n <= b.len()).find(|k| b[t + k..t + k + n] == b[t..t + n])
}

#[test]
fn tiny_period_decomposes() {
    let c = tiny();
    let prefix = c.limit_prefix(60).unwrap();
    let d = decompose(&prefix[..24], &c, 1).unwrap();
    assert_eq!((d.phase, d.blocks.clone()), (0, vec![1, 2, 3, 4]));
    assert_eq!((d.prefix_residue, d.suffix_residue), (0, 0));

    let d = decompose(&prefix[3..27], &c, 1).unwrap();
    assert_eq!(d.phase, 3);
    assert_eq!(d.blocks, vec![2, 3, 4]);
    assert_eq!(d.prefix_candidates, vec![1]);
    assert_eq!(d.suffix_residue, 3);
    assert!(d.suffix_candidates.contains(&1));
    assert_eq!(d.reconstruct(&c).unwrap(), prefix[3..27].to_vec());

    // The second period half is u1 u4 u3 u2.
    let d = decompose(&prefix[24..48], &c, 1).unwrap();
    assert_eq!(d.blocks, vec![1, 4, 3, 2]);
}

#[test]
fn decompose_rejects_bad_windows() {
    let c = tiny();
    let ones = vec![Symbol::One; 24];
    assert!(matches!(decompose(&ones, &c, 1), Err(Error::NotInLanguage { .. })));
    assert!(matches!(
        decompose(&ones[..11], &c, 1),
        Err(Error::WindowTooShort { length: 11, required: 12 })
    ));
    let plain = Construction::build(&ConstructionParams::new(
        Variant::Plain,
        subshift::Alpha::HALF,
        4,
        16,
    ))
    .unwrap();
    assert!(matches!(
        decompose(&ones, &plain, 1),
        Err(Error::VariantUnsupported { .. })
    ));
}

#[test]
fn desk_windows_round_trip() {
    let c = desk();
    let l2 = 625usize;
    let len = 1_000_000u64;
    let prefix = c.limit_prefix(len).unwrap();
    let dec = Decomposer::new(&c, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let t = rng.gen_range(0..prefix.len() - 2 * l2);
        let window = &prefix[t..t + 2 * l2];
        let d = dec.decompose(window).unwrap();
        assert_eq!(d.phase, (l2 - t % l2) % l2, "offset {t}");
        assert_eq!(d.reconstruct(&c).unwrap(), window);
        // Aligned blocks agree with the hierarchy's own bookkeeping.
        let b = c.block_containing(2, (t + d.phase) as u64).unwrap().unwrap();
        assert_eq!(b.index, BigUint::from(d.blocks[0]));

        let mut bad = window.to_vec();
        let k = d.phase + 300;
        bad[k] = if bad[k] == Symbol::Zero { Symbol::One } else { Symbol::Zero };
        assert!(dec.decompose(&bad).is_err(), "corrupted window at {t} accepted");
    }
}

#[test]
fn tiny_cylinder_frequencies() {
    let c = tiny();
    let s = measure_estimate(&c, &w("001010"), 480).unwrap();
    assert_eq!(s.occurrence_count, 20);
    assert_eq!(s.frequency, Ratio::new(20, 475));
    assert_eq!(s.level, Some(1));
    assert!(s.aligned_only);

    // u1 u2 u3 u4 each have 13 zeros among 24 symbols.
    let zeros = [w("001010"), w("001011"), w("001101"), w("001110")]
        .iter()
        .map(|x| x.iter().filter(|&&s| s == Symbol::Zero).count() as u64)
        .sum::<u64>();
    assert_eq!(zeros, 13);
    let s = measure_estimate(&c, &w("0"), 48).unwrap();
    assert_eq!(s.frequency, Ratio::new(2 * zeros, 48));
    assert!(!s.aligned_only);

    let s = measure_estimate(&c, &w("0000"), 480).unwrap();
    assert_eq!(s.occurrence_count, 0);
    // A seed ending in 0 before the next marker gives 000, at block ends only.
    let prefix = c.limit_prefix(480).unwrap();
    let hits = find_all(&prefix, &w("000"));
    assert!(!hits.is_empty());
    assert!(hits.iter().all(|&h| h % 6 == 5));
}

#[test]
fn exact_measures() {
    let c = tiny();
    let m = exact_aligned_measure(&c, &WordRef::new(1, 1u32)).unwrap();
    assert_eq!(m, Ratio::new(BigUint::from(1u32), BigUint::from(24u32)));
    let m = exact_chain_measure(&c, 1, 3, 1).unwrap();
    assert_eq!(m, Ratio::new(BigUint::from(1u32), BigUint::from(24u32)));
    assert!(matches!(
        exact_chain_measure(&c, 1, 1, 2),
        Err(Error::NotUnpermutedChain(_))
    ));
    assert!(exact_aligned_measure(&c, &WordRef::new(1, 5u32)).is_err());

    let c = desk();
    let sample = PrefixSample::new(&c, 62_500).unwrap();
    let words = c.generation(1).unwrap().words().unwrap().to_vec();
    for (i, u) in words.iter().enumerate() {
        let exact = exact_aligned_measure(&c, &WordRef::new(1, i as u64 + 1)).unwrap();
        assert_eq!(exact, Ratio::new(BigUint::from(1u32), BigUint::from(625u32)));
        let s = sample.estimate(u).unwrap();
        assert!(s.aligned_only);
        assert_eq!(s.occurrence_count, 100, "word {}", i + 1);
    }
    let spacer = Construction::build(
        &ConstructionParams::new(Variant::Spacer, subshift::Alpha::HALF, 6, 4),
    )
    .unwrap();
    assert!(matches!(
        exact_aligned_measure(&spacer, &WordRef::new(1, 1u32)),
        Err(Error::VariantUnsupported { .. })
    ));
}

#[test]
fn desk_level_two_words_are_aligned() {
    let c = desk();
    let sample = PrefixSample::new(&c, 300_000).unwrap();
    let text = word_to_string(sample.prefix());
    for u in c.generation(2).unwrap().words().unwrap() {
        let s = sample.estimate(u).unwrap();
        assert!(s.aligned_only);
        let needle = word_to_string(u);
        let starts: Vec<usize> = text.match_indices(&needle).map(|(i, _)| i).collect();
        assert!(starts.iter().all(|i| i % 625 == 0));
    }
}

#[test]
fn tiny_return_times() {
    let c = tiny();
    let r = return_time(&c, 0, 6, 100).unwrap();
    assert_eq!(r.return_time, 24);
    assert_eq!(r.residue(1), Some(0));
    let r = return_time(&c, 0, 1, 100).unwrap();
    assert!(r.return_time <= 3);
    assert!(matches!(return_time(&c, 0, 30, 10), Err(Error::BudgetExceeded { budget: 10 })));
}

#[test]
fn desk_chain_returns_after_one_level_two_block() {
    let c = desk();
    let text = c.limit_prefix(5000).unwrap();
    let s = word_to_string(&text);
    // Slot 5 opens the chain 5..=8.
    let t = 4 * 25;
    for n in [26u64, 50, 100] {
        let r = return_time_in(&c, &text, t, n, 4000).unwrap();
        assert_eq!(r.return_time, 625, "n = {n}");
        assert_eq!(Some(r.return_time as usize), naive_return(&s, t as usize, n as usize));
    }
}

#[test]
fn chain_censuses() {
    let c = desk();
    let census = chains(c.generation(1).unwrap()).unwrap();
    assert_eq!(census.lengths(), vec![1, 1, 4, 6, 8]);
    assert_eq!(census.trailing.len, 0);
    assert_eq!(census.unpermuted_total() + 5, 25);

    let census = chains(c.generation(2).unwrap()).unwrap();
    assert_eq!(census.lengths(), vec![1, 1, 4, 6, 8, 10, 12, 14, 16, 18]);
    assert_eq!(census.trailing.len, 20);
    assert_eq!(census.unpermuted_total() + 10, 120);

    let plain = Construction::build(&ConstructionParams::new(
        Variant::Plain,
        subshift::Alpha::HALF,
        4,
        16,
    ))
    .unwrap();
    let census = chains(plain.generation(1).unwrap()).unwrap();
    assert_eq!(census.lengths(), vec![1, 1, 4, 6]);
    assert_eq!(census.unpermuted_total(), 12);

    let census = chains(tiny().generation(1).unwrap()).unwrap();
    assert_eq!(census.lengths(), vec![1, 1]);
    assert_eq!(census.trailing.len, 0);
}

#[test]
fn chain_positions_and_good_set() {
    let c = tiny();
    let pos = chain_structure(&c, 13, 1..=1).unwrap();
    assert_eq!((pos[0].slot, pos[0].permuted, pos[0].p, pos[0].q), (3, false, 1, 1));
    let pos = chain_structure(&c, 7, 1..=1).unwrap();
    assert!(pos[0].permuted);

    let c = desk();
    let crit = XhatCriteria::new(XhatCriteria::DEFAULT_ETA, 1, 1).unwrap();
    // 25^{3/8} ≈ 3.34 and 25^{1/4} ≈ 2.24: chain 10..=15 admits q ≤ 3.
    assert!(xhat_member(&c, 9 * 25, &crit).unwrap());
    assert!(xhat_member(&c, 11 * 25 + 7, &crit).unwrap());
    assert!(!xhat_member(&c, 12 * 25, &crit).unwrap());
    assert!(!xhat_member(&c, 25, &crit).unwrap());
    // Chain 5..=8: slot 5 passes, slot 6 is too deep.
    assert!(xhat_member(&c, 4 * 25, &crit).unwrap());
    assert!(!xhat_member(&c, 5 * 25, &crit).unwrap());
    assert!(XhatCriteria::new(0.25, 1, 1).is_err());
    assert!(XhatCriteria::new(0.5, 1, 1).is_err());
}

#[test]
fn permuted_mass_is_exact() {
    let c = desk();
    assert_eq!(permuted_block_fraction(&c, 1, 100_000).unwrap(), Ratio::new(1, 5));
    assert_eq!(permuted_block_fraction(&c, 1, 700).unwrap(), Ratio::new(1, 5));
    assert!(permuted_block_fraction(&c, 1, 600).is_err());
}

#[test]
fn atom_sizes_and_entropy() {
    let c = tiny();
    let text = c.limit_prefix(485).unwrap();
    let rows = atom_size_profile(&text, &[0], &[6], &[0.0, 0.5]).unwrap();
    assert_eq!(rows[0].occurrences, 20);
    assert!((rows[0].value - 24f64.ln()).abs() < 1e-12);
    assert!((rows[1].value - 24f64.ln() / 6f64.sqrt()).abs() < 1e-12);
    assert!(!rows[0].low_confidence);

    let h = empirical_block_entropy(&text, 3).unwrap();
    let zeros = text.iter().filter(|&&s| s == Symbol::Zero).count() as f64;
    let p0 = zeros / text.len() as f64;
    let h1 = -(p0 * p0.ln() + (1.0 - p0) * (1.0 - p0).ln());
    assert!((h[0].entropy - h1).abs() < 1e-12);
    assert_eq!(h[0].distinct, 2);
    assert!(h.windows(2).all(|p| p[0].entropy <= p[1].entropy + 1e-12));
}

#[test]
fn long_blocks_use_the_slice_path() {
    let c = desk();
    let text = c.limit_prefix(5000).unwrap();
    let h = empirical_block_entropy(&text, 70).unwrap();
    let s = word_to_string(&text);
    let distinct: std::collections::HashSet<&str> = (0..=s.len() - 70).map(|i| &s[i..i + 70]).collect();
    assert_eq!(h[69].distinct, distinct.len() as u64);
    let distinct: std::collections::HashSet<&str> = (0..=s.len() - 64).map(|i| &s[i..i + 64]).collect();
    assert_eq!(h[63].distinct, distinct.len() as u64);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tiny_windows_round_trip(t in 0usize..200, extra in 0usize..30) {
        let c = tiny();
        let prefix = c.limit_prefix(300).unwrap();
        let window = &prefix[t..t + 12 + extra];
        let d = decompose(window, &c, 1).unwrap();
        prop_assert_eq!(d.phase, (6 - t % 6) % 6);
        prop_assert_eq!(d.reconstruct(&c).unwrap(), window.to_vec());
    }

    #[test]
    fn return_times_do_not_decrease(t in 0u64..400) {
        let c = Construction::build(&ConstructionParams::desk()).unwrap();
        let text = c.limit_prefix(75_000).unwrap();
        let mut last = 0;
        for n in 1..=40 {
            let r = return_time_in(&c, &text, t, n, 74_000).unwrap().return_time;
            prop_assert!(r >= last);
            last = r;
        }
    }

    #[test]
    fn spacer_windows_round_trip(t in 0usize..400) {
        let c = Construction::build(
            &ConstructionParams::new(Variant::Spacer, subshift::Alpha::HALF, 6, 4).with_max_level(4),
        ).unwrap();
        let prefix = c.limit_prefix(600).unwrap();
        let window = &prefix[t..t + 14];
        let d = decompose(window, &c, 1).unwrap();
        prop_assert_eq!(d.reconstruct(&c).unwrap(), window.to_vec());
        for &s in &d.spacers {
            prop_assert_eq!(window[s], Symbol::Spacer);
        }
    }
}
