use std::collections::BTreeSet;

use num_integer::Integer;
use proptest::prelude::*;
use pvi_core::orbit::{
    act, eligible_classes, enumerate_orbit, lemma1_reduce, orbit_partition, same_orbit,
    Gamma2Matrix, RationalPair,
};

fn word_strategy() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..4, 0..=8)
}

fn vector_strategy() -> impl Strategy<Value = RationalPair> {
    (3i64..=12, 0i64..12, 0i64..12)
        .prop_map(|(n, a, b)| RationalPair::from_ints((a % n, n), (b % n, n)))
        .prop_filter("not a half period", |v| !v.is_half_integer())
}

#[test]
fn generators_preserve_exact_denominator() {
    for n in 2..=12 {
        let classes: BTreeSet<RationalPair> = eligible_classes(n).collect();
        for v in &classes {
            for g in Gamma2Matrix::generators() {
                let w = act(&g, v).unwrap();
                assert!(classes.contains(&w), "N={n}: {v} -> {w}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn action_is_a_group_action(word in word_strategy(), v in vector_strategy()) {
        let gens = Gamma2Matrix::generators();
        let product = word.iter().fold(Gamma2Matrix::IDENTITY, |acc, &k| acc.mul(&gens[k]));
        prop_assert_eq!(product.det(), 1);
        let stepwise = word.iter().rev().fold(v, |acc, &k| act(&gens[k], &acc).unwrap());
        prop_assert_eq!(act(&product, &v).unwrap(), stepwise);
    }

    #[test]
    fn orbit_is_closed_and_contains_images(word in word_strategy(), v in vector_strategy()) {
        let gens = Gamma2Matrix::generators();
        let orbit = enumerate_orbit(&v).unwrap();
        let image = word.iter().fold(v, |acc, &k| act(&gens[k], &acc).unwrap());
        prop_assert!(orbit.contains(&image));
        prop_assert!(same_orbit(&image, &v).unwrap());
    }
}

#[test]
fn merging_rule_for_standard_vectors() {
    for n in 2..=12i64 {
        for m in (1..n).filter(|m| m.gcd(&n) == 1) {
            let v = RationalPair::from_ints((m, n), (0, 1));
            let odd = n.is_odd();
            assert_eq!(same_orbit(&v, &RationalPair::from_ints((0, 1), (m, n))).unwrap(), odd, "{m}/{n}");
            assert_eq!(same_orbit(&v, &RationalPair::from_ints((m, n), (m, n))).unwrap(), odd, "{m}/{n}");
        }
    }
}

#[test]
fn standard_vector_lies_in_orbit() {
    for n in 3..=10 {
        for v in eligible_classes(n) {
            let l = lemma1_reduce(&v).unwrap();
            assert_eq!(l.big_n, n);
            assert!(enumerate_orbit(&v).unwrap().contains(&l.standard), "{v}");
        }
    }
}

#[test]
fn partitions_cover_eligible_classes() {
    let known = [(3, 4), (4, 6), (5, 12), (6, 12)];
    for n in 2..=12 {
        let total: usize = orbit_partition(n).unwrap().iter().sum();
        assert_eq!(total, eligible_classes(n).count(), "N={n}");
        if let Some(&(_, k)) = known.iter().find(|(m, _)| *m == n) {
            assert_eq!(total, k);
        }
    }
}

#[test]
fn orbit_lengths_beyond_six() {
    for n in 3..=12i64 {
        let parts = orbit_partition(n).unwrap();
        if n.is_odd() {
            assert_eq!(parts.len(), 1, "N={n}");
        } else {
            assert!(parts.len() == 3 && parts.iter().all(|&s| s == parts[0]), "N={n}");
        }
        let short = parts.iter().any(|&s| s <= 6);
        assert_eq!(short, n <= 4 || n == 6, "N={n}: {parts:?}");
    }
}
