use std::collections::HashSet;

use num_bigint::BigUint;
use proptest::prelude::*;
use subshift::construction::is_admissible;
use subshift::perm::factorial;
use subshift::{Alpha, Construction, ConstructionParams, Symbol, Variant, WordRef};

fn params() -> impl Strategy<Value = ConstructionParams> {
    (
        prop_oneof![Just(Variant::Plain), Just(Variant::Marker), Just(Variant::Spacer)],
        prop_oneof![Just(Alpha::HALF), Just(Alpha::new(1, 3).unwrap())],
        8u64..14,
        prop::sample::select(vec![8u64, 9, 12, 16, 20, 25]),
        prop::option::of(0u64..1000),
    )
        .prop_map(|(v, a, l1, n1, seed)| {
            let mut p = ConstructionParams::new(v, a, l1, n1).with_max_level(2);
            p.rng_seed = seed;
            p
        })
        .prop_filter("buildable", |p| Construction::build(p).is_ok())
}

/// Splits a level-2 word into its level-1 blocks, skipping spacers.
fn split(word: &[Symbol], l1: usize) -> Vec<Vec<Symbol>> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < word.len() {
        if word[i] == Symbol::Spacer {
            i += 1;
            continue;
        }
        out.push(word[i..i + l1].to_vec());
        i += l1;
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn level_two_words_permute_level_one_blocks(p in params()) {
        let c = Construction::build(&p).unwrap();
        let g1 = c.generation(1).unwrap();
        let g2 = c.generation(2).unwrap();
        let seeds = g1.words().unwrap();
        let n1 = seeds.len();
        prop_assert!(seeds.iter().all(|w| is_admissible(p.variant, w)));
        prop_assert_eq!(seeds.iter().collect::<HashSet<_>>().len(), n1);
        let slots = g1.permuted_set.to_vec().unwrap();
        prop_assert_eq!(BigUint::from(g2.word_count_u64().unwrap()), factorial(slots.len() as u64));
        let spacers = if p.variant == Variant::Spacer { slots.len() } else { 0 };
        prop_assert_eq!(c.length(2).unwrap() as usize, p.l1 as usize * n1 + spacers);

        let mut distinct = HashSet::new();
        for (k, w) in g2.words().unwrap().iter().take(200).enumerate() {
            prop_assert_eq!(w.len() as u64, c.length(2).unwrap());
            let blocks = split(w, p.l1 as usize);
            prop_assert_eq!(blocks.len(), n1);
            let mut moved = Vec::new();
            for (s, b) in blocks.iter().enumerate() {
                let slot = s as u64 + 1;
                if slots.contains(&slot) {
                    moved.push(seeds.iter().position(|x| x == b).unwrap() as u64 + 1);
                } else {
                    prop_assert_eq!(b, &seeds[s]);
                }
            }
            moved.sort();
            prop_assert_eq!(&moved, &slots);
            if p.variant == Variant::Spacer {
                let expect: Vec<usize> = slots
                    .iter()
                    .enumerate()
                    .map(|(r, &s)| (s as usize - 1) * p.l1 as usize + r)
                    .collect();
                let got: Vec<usize> = (0..w.len()).filter(|&i| w[i] == Symbol::Spacer).collect();
                prop_assert_eq!(got, expect);
            }
            let virtual_word = c.word(&WordRef::new(2, k as u64 + 1)).unwrap();
            prop_assert_eq!(&virtual_word, w);
            distinct.insert(w.clone());
        }
        prop_assert_eq!(distinct.len(), g2.word_count_u64().unwrap().min(200) as usize);
    }

    #[test]
    fn limit_prefixes_are_consistent(p in params(), a in 1u64..600, b in 1u64..600) {
        let c = Construction::build(&p).unwrap();
        let top = c.length(2).unwrap();
        let (a, b) = (a.min(top), b.min(top));
        let (short, long) = (a.min(b), a.max(b));
        let x = c.limit_prefix(short).unwrap();
        let y = c.limit_prefix(long).unwrap();
        prop_assert_eq!(&y[..short as usize], &x[..]);
        let first = c.word(&WordRef::new(2, 1u32)).unwrap();
        prop_assert_eq!(&first[..long as usize], &y[..]);
    }
}
