//! The inverse problem: from a periodic direction back to its tree word.
//!
//! Starting from `v`, repeatedly find the sector `k` containing the current
//! vector and replace it by `σ_k⁻¹·v`.  For any direction with slope in
//! `Q[√5]` this reaches a horizontal vector `[ℓ, 0]` after finitely many
//! steps, and `v = ℓ · σ_{k₀}···σ_{kₙ}·[1, 0]`.

use serde::Serialize;

use crate::golden::{GVec2, GoldenNum};
use crate::tree::{classify_sector, sigma, sigma_inverse, SectorIndex, TreeWord};
use crate::{Error, Result};

/// Default cap on the number of expansion steps.
pub const DEFAULT_CAP: u64 = 1_000_000;

/// The sector sequence `(k₀, …, kₙ)` of a direction and its scale `ℓ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Itinerary {
    pub sectors: Vec<u8>,
    pub scale: GoldenNum,
}

impl Itinerary {
    /// The tree word of the direction: the sectors read backwards.
    pub fn tree_word(&self) -> TreeWord {
        TreeWord::new(self.sectors.iter().rev().copied().collect()).expect("sectors are digits")
    }

    /// `ℓ · σ_{k₀}···σ_{kₙ}·[1, 0]`, which reproduces the input vector.
    pub fn reconstruct(&self) -> GVec2 {
        let mut v = GVec2::new(self.scale.clone(), GoldenNum::zero());
        for &k in self.sectors.iter().rev() {
            v = sigma(SectorIndex::new(k).expect("sector digit")).apply(&v);
        }
        v
    }
}

/// Runs the expansion with the default step cap.
pub fn itinerary_of(v: &GVec2) -> Result<Itinerary> {
    itinerary_with_cap(v, DEFAULT_CAP)
}

/// Runs the expansion, failing after `cap` steps.
pub fn itinerary_with_cap(v: &GVec2, cap: u64) -> Result<Itinerary> {
    classify_sector(v)?;
    let mut cur = v.clone();
    let mut sectors = Vec::new();
    while !cur.y.is_zero() {
        if sectors.len() as u64 >= cap {
            return Err(Error::StepCap(cap));
        }
        let k = classify_sector(&cur)?;
        cur = sigma_inverse(k).apply(&cur);
        sectors.push(k.get());
    }
    Ok(Itinerary {
        sectors,
        scale: cur.x,
    })
}

/// The long saddle-connection vector `v / ℓ_v`, an element of Λ.
pub fn long_sconn(v: &GVec2) -> Result<GVec2> {
    let it = itinerary_of(v)?;
    Ok(v.scale(&it.scale.inverse()?))
}

/// The short saddle-connection vector `φ̄ · v / ℓ_v`.
pub fn short_sconn(v: &GVec2) -> Result<GVec2> {
    Ok(long_sconn(v)?.scale(&GoldenNum::phi_bar()))
}

/// The holonomies `(short cylinder, long cylinder)` of the direction of `v`.
pub fn cylinder_vectors(v: &GVec2) -> Result<(GVec2, GVec2)> {
    let l = long_sconn(v)?;
    let long = l.scale(&GoldenNum::phi());
    Ok((l, long))
}

/// Rotates a nonzero vector by quarter turns into the positive cone.
/// Returns the rotated vector and the number of counterclockwise quarter
/// turns applied.
pub fn normalize_to_cone(v: &GVec2) -> Result<(GVec2, u8)> {
    if v.is_zero() {
        return Err(Error::Domain("the zero vector has no direction".into()));
    }
    let mut cur = v.clone();
    for turns in 0..4 {
        if cur.x.is_positive() && !cur.y.is_negative() {
            return Ok((cur, turns));
        }
        cur = GVec2::new(-&cur.y, cur.x.clone());
    }
    unreachable!("some quarter turn of a nonzero vector lies in the cone")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{all_words, tree_vector};
    use proptest::prelude::*;

    fn g(p: i64, q: i64) -> GoldenNum {
        GoldenNum::from_ints(p, q)
    }

    #[test]
    fn itinerary_examples() {
        let v = GVec2::from_ints((4, 4), (1, 2));
        let it = itinerary_of(&v).unwrap();
        assert_eq!(it.sectors, vec![0, 2, 1]);
        assert_eq!(it.scale, GoldenNum::one());
        assert_eq!(it.tree_word().to_string(), "120");

        let it = itinerary_of(&GVec2::from_ints((1, 0), (0, 0))).unwrap();
        assert!(it.sectors.is_empty());
        assert_eq!(it.scale, GoldenNum::one());

        let it = itinerary_of(&GVec2::from_ints((0, 3), (3, 0))).unwrap();
        assert_eq!(it.sectors, vec![1]);
        assert_eq!(it.scale, g(3, 0));
    }

    #[test]
    fn saddle_connection_examples() {
        assert_eq!(
            long_sconn(&GVec2::from_ints((0, 3), (3, 0))).unwrap(),
            GVec2::from_ints((0, 1), (1, 0))
        );
        let v120 = GVec2::from_ints((4, 4), (1, 2));
        assert_eq!(long_sconn(&v120).unwrap(), v120);
        let pb = GVec2::new(GoldenNum::phi_bar(), GoldenNum::zero());
        assert_eq!(long_sconn(&pb).unwrap(), GVec2::from_ints((1, 0), (0, 0)));
        assert_eq!(itinerary_of(&pb).unwrap().scale, GoldenNum::phi_bar());

        assert_eq!(
            short_sconn(&GVec2::from_ints((1, 0), (0, 0))).unwrap(),
            GVec2::new(GoldenNum::phi_bar(), GoldenNum::zero())
        );
        assert_eq!(
            short_sconn(&GVec2::from_ints((0, 1), (1, 0))).unwrap(),
            GVec2::new(GoldenNum::one(), GoldenNum::phi_bar())
        );
        let s = short_sconn(&v120).unwrap();
        assert_eq!(s, GVec2::from_ints((0, 4), (1, 1)));
        assert_eq!(s.scale(&GoldenNum::phi()), v120);
    }

    #[test]
    fn cylinder_vector_examples() {
        let (s, l) = cylinder_vectors(&GVec2::from_ints((1, 0), (0, 0))).unwrap();
        assert_eq!(s, GVec2::from_ints((1, 0), (0, 0)));
        assert_eq!(l, GVec2::from_ints((0, 1), (0, 0)));
        let v = GVec2::from_ints((0, 1), (1, 0));
        let (s, l) = cylinder_vectors(&v).unwrap();
        assert_eq!(s, v);
        assert_eq!(l, GVec2::from_ints((1, 1), (0, 1)));
        assert_eq!(l, &long_sconn(&v).unwrap() + &short_sconn(&v).unwrap());
    }

    #[test]
    fn round_trip_to_depth_eight() {
        for word in all_words(8).filter(TreeWord::is_canonical) {
            let node = tree_vector(&word);
            let it = itinerary_of(&node.vector).unwrap();
            assert_eq!(it.tree_word(), word);
            assert_eq!(it.scale, GoldenNum::one());
            assert_eq!(it.reconstruct(), node.vector);
            if let Some(&k) = it.sectors.last() {
                assert_ne!(k, 0);
            }
        }
    }

    #[test]
    fn quarter_turn_normalization() {
        let (v, t) = normalize_to_cone(&GVec2::from_ints((0, 0), (2, 1))).unwrap();
        assert_eq!(v, GVec2::from_ints((2, 1), (0, 0)));
        assert_eq!(t, 3);
        assert!(normalize_to_cone(&GVec2::zero()).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn scale_equivariance(
            digits in proptest::collection::vec(0u8..4, 0..8),
            sp in 1i64..40, sq in -20i64..40, den in 1i64..9,
        ) {
            let word = TreeWord::new(digits).unwrap();
            let s = GoldenNum::from_parts(sp.into(), sq.into(), den.into()).unwrap();
            prop_assume!(s.is_positive());
            let v = tree_vector(&word).vector;
            let base = itinerary_of(&v).unwrap();
            let scaled = itinerary_of(&v.scale(&s)).unwrap();
            prop_assert_eq!(&scaled.sectors, &base.sectors);
            prop_assert_eq!(&scaled.scale, &(&base.scale * &s));
            prop_assert_eq!(scaled.reconstruct(), v.scale(&s));
        }
    }
}
