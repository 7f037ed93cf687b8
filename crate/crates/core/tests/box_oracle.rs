//! Brute-force check of the box enumeration: every vector with nonnegative
//! `Z[φ]` coefficients in the box is run through the inverse (itinerary)
//! algorithm, and it is a tree vector exactly when the expansion ends at
//! `[1, 0]`.

use penta::itinerary::itinerary_with_cap;
use penta::tree::enumerate_in_box;
use penta::{GVec2, GoldenNum};

/// Pairs `(p, q)` with `0 ≤ p + qφ ≤ n`, `p, q ≥ 0`.
fn coords(n: i64) -> Vec<GoldenNum> {
    let mut out = Vec::new();
    for q in 0..=n {
        for p in 0..=n {
            let x = GoldenNum::from_ints(p, q);
            if x > GoldenNum::integer(n) {
                break;
            }
            out.push(x);
        }
    }
    out
}

fn brute_force_count(n: i64) -> usize {
    let xs = coords(n);
    let mut count = 0;
    for x in xs.iter().filter(|x| x.is_positive()) {
        for y in &xs {
            let v = GVec2::new(x.clone(), y.clone());
            if let Ok(it) = itinerary_with_cap(&v, 500) {
                if it.scale == GoldenNum::one() {
                    count += 1;
                }
            }
        }
    }
    count
}

#[test]
fn small_boxes_match_brute_force() {
    for n in [1, 3, 6] {
        assert_eq!(enumerate_in_box(&GoldenNum::integer(n)).len(), brute_force_count(n), "box {n}");
    }
}

/// The full box of side 100 (about ten million candidates).
#[test]
#[ignore = "slow: run with --ignored in release mode"]
fn box_of_side_100_matches_brute_force() {
    let nodes = enumerate_in_box(&GoldenNum::integer(100));
    assert_eq!(nodes.len(), 5450);
    assert_eq!(brute_force_count(100), nodes.len());
}
