use num_bigint::BigUint;
use subshift::construction::{BuildOptions, Construction, ConstructionParams, OrderingPolicy, Variant};
use subshift::egs::{build_dj, build_egs};
use subshift::{Alpha, WordRef};

fn falling(n: u64, k: u64) -> u64 {
    (n - k + 1..=n).product()
}

#[test]
fn dj_counts() {
    // N_1 = 16 gives four permuted values and Q = {2, 4}.
    let p = ConstructionParams::new(Variant::Plain, Alpha::HALF, 8, 16).with_max_level(2);
    let c = Construction::build(&p).unwrap();
    let d = build_dj(&c, 2).unwrap();
    assert_eq!(d.q_set.to_vec().unwrap(), vec![2, 4]);
    assert_eq!(d.representatives.len() as u64, falling(4, 2));

    let c = Construction::build(&ConstructionParams::tiny()).unwrap();
    let d = build_dj(&c, 2).unwrap();
    assert_eq!(d.representatives.len(), 2);
    // N_2 = 2 leaves no room for Q.
    assert!(build_dj(&c, 3).is_err());
}

#[test]
fn dj_restriction_is_injective_at_desk_scale() {
    let c = Construction::build(&ConstructionParams::desk().with_max_level(2)).unwrap();
    let d = build_dj(&c, 2).unwrap();
    assert_eq!(d.representatives.len() as u64, falling(5, 2));
    let q: Vec<u64> = d.q_set.to_vec().unwrap();
    let mut seen = std::collections::HashSet::new();
    for r in &d.representatives {
        let blocks = c.block_indices(&WordRef { level: 2, index: r.clone() }).unwrap();
        let restricted: Vec<u64> = q.iter().map(|&k| blocks[k as usize - 1]).collect();
        assert!(seen.insert(restricted));
    }
}

#[test]
fn egs_ordering_places_representatives() {
    let p = ConstructionParams::desk().with_ordering(OrderingPolicy::EgsOrdered);
    let c = Construction::build(&p).unwrap();
    let lex = Construction::build(&ConstructionParams::desk()).unwrap();
    let d = build_dj(&c, 2).unwrap();
    let words = c.generation(2).unwrap().words().unwrap();
    let lex_words = lex.generation(2).unwrap().words().unwrap();
    assert_eq!(words[0], lex_words[0]);
    for slot in c.generation(2).unwrap().permuted_set.to_vec().unwrap() {
        let canon = c.canonical_index(&WordRef::new(2, slot)).unwrap();
        assert!(d.representatives.contains(&canon));
        assert_eq!(words[slot as usize - 1], lex_words[usize::try_from(&canon).unwrap() - 1]);
    }
    // Same language of words, different order.
    let mut a = words.to_vec();
    let mut b = lex_words.to_vec();
    a.sort();
    b.sort();
    assert_eq!(a, b);
    // Level 3 stays virtual but its symbols agree with the assembled word.
    let lean = Construction::build_with(&p, BuildOptions { max_materialized_symbols: 100, ..Default::default() }).unwrap();
    let r = WordRef::new(3, 17u32);
    let w = c.word(&r).unwrap();
    for pos in (0..w.len()).step_by(997) {
        assert_eq!(lean.word_symbol(&r, &BigUint::from(pos)).unwrap(), w[pos]);
    }
}

#[test]
fn egs_cardinalities() {
    let c = Construction::build(&ConstructionParams::desk()).unwrap();
    let s = build_egs(&c, 3).unwrap();
    assert_eq!(s.cardinalities, vec![25, 50, 250]);
    let p = ConstructionParams::new(Variant::Plain, Alpha::HALF, 16, 64).with_max_level(2);
    let c = Construction::build(&p).unwrap();
    let s = build_egs(&c, 2).unwrap();
    assert_eq!(s.cardinalities, vec![16, 64]);
    assert_eq!(s.closed_forms, vec![Some(16), Some(64)]);
    let desk = build_egs(&Construction::build(&ConstructionParams::desk()).unwrap(), 3).unwrap();
    let d = desk.upper_dimension_estimate.unwrap();
    assert!((0.4..=0.6).contains(&d), "{d}");
}
