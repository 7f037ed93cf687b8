//! Cross-module invariants on random tree words.

use proptest::prelude::*;

use num_rational::BigRational;
use penta::cutting::{counts, same_cyclic_word, sequence_for, ArrowCounts};
use penta::flow::cutting_sequence_flow;
use penta::itinerary::itinerary_of;
use penta::render::{billiard_trajectory, core_trajectory};
use penta::report::describe;
use penta::symmetry::classify;
use penta::tree::{mirror_word, tree_vector};
use penta::{Cylinder, GVec2, GoldenNum, TreeWord};

/// Canonical words: first digit 1, 2 or 3, then any digits.
fn canonical_word(max_len: usize) -> impl Strategy<Value = TreeWord> {
    (1u8..4, prop::collection::vec(0u8..4, 0..max_len))
        .prop_map(|(first, rest)| TreeWord::new([vec![first], rest].concat()).unwrap())
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn cylinder() -> impl Strategy<Value = Cylinder> {
    prop_oneof![Just(Cylinder::Short), Just(Cylinder::Long)]
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn itinerary_inverts_the_tree(w in canonical_word(20)) {
        let node = tree_vector(&w);
        let it = itinerary_of(&node.vector).unwrap();
        prop_assert_eq!(it.tree_word(), w);
        prop_assert_eq!(it.reconstruct(), node.vector);
        prop_assert_eq!(it.scale, GoldenNum::one());
    }

    #[test]
    fn scaled_vectors_keep_their_word(w in canonical_word(10), p in 1i64..5, q in 0i64..5) {
        let s = GoldenNum::from_ints(p, q);
        let v = tree_vector(&w).vector.scale(&s);
        let it = itinerary_of(&v).unwrap();
        prop_assert_eq!(it.tree_word(), w);
        prop_assert_eq!(it.scale, s);
    }

    #[test]
    fn short_tallies_are_twice_the_coefficients(w in canonical_word(12)) {
        let c = tree_vector(&w).coeffs;
        let n = counts(&sequence_for(&w, Cylinder::Short));
        prop_assert_eq!(n, ArrowCounts::new(2 * c.a, 2 * c.b, 2 * c.c, 2 * c.d));
    }

    #[test]
    fn mirror_words_reflect_the_vector(w in canonical_word(12)) {
        let m = mirror_word(&w).unwrap();
        let (v, mv) = (tree_vector(&w).vector, tree_vector(&m).vector);
        prop_assert_eq!(mv, v.swapped());
        prop_assert_eq!(classify(&m).1, classify(&w).1);
        prop_assert_eq!(mirror_word(&m).unwrap(), w);
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn flow_matches_substitutions(w in canonical_word(6), which in cylinder()) {
        let flow = cutting_sequence_flow(&w, which).unwrap();
        prop_assert!(same_cyclic_word(&flow, &sequence_for(&w, which).plain()));
    }

    #[test]
    fn describe_is_consistent(w in canonical_word(5), which in cylinder()) {
        let d = describe(&w, which).unwrap();
        prop_assert!(d.oracle_agrees && d.dft_agrees);
        prop_assert_eq!(d.cutting_word.len() as u128, d.period);
        prop_assert_eq!(d.arrow_counts.total(), d.period);
        let core = core_trajectory(&w, which).unwrap();
        prop_assert_eq!(core.bounces as u128, d.billiard_period);
    }

    #[test]
    fn off_core_billiards_close(w in canonical_word(3), which in cylinder(), num in 1i64..21) {
        let offset = BigRational::new(num.into(), 21.into());
        match billiard_trajectory(&w, which, &offset) {
            Ok(t) => {
                let (a, b) = (t.points[0], *t.points.last().unwrap());
                prop_assert!((a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9);
                // The start may lie in either cylinder of the direction.
                let cores: Vec<usize> = Cylinder::BOTH
                    .iter()
                    .map(|&c| core_trajectory(&w, c).unwrap().bounces)
                    .collect();
                prop_assert!(cores.iter().any(|&c| t.bounces % c == 0), "{} vs {:?}", t.bounces, cores);
            }
            Err(penta::Error::ConePoint(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}

#[test]
fn vector_text_round_trips() {
    let v = tree_vector(&"2013".parse().unwrap()).vector;
    let json = serde_json::to_string(&v).unwrap();
    let back: GVec2 = serde_json::from_str(&json).unwrap();
    assert_eq!(back, v);
}
