//! The combined per-direction report and the scan of achievable periods.

use std::collections::BTreeSet;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::cutting::{period_of, same_cyclic_word, sequence_for, ArrowCounts};
use crate::flow::cutting_sequence_flow;
use crate::golden::GVec2;
use crate::itinerary::itinerary_of;
use crate::render::{billiard_trajectory, geometric_length, LengthReport};
use crate::symmetry::{classify, dft_class, BackwardPath, Multiplier, SymmetryClass, SymmetryNode};
use crate::tree::{tree_vector, Coeffs, Cylinder, TreeWord};
use crate::{Error, Result};

/// Everything the library knows about one periodic direction and cylinder.
#[derive(Clone, Debug, Serialize)]
pub struct Description {
    pub word: TreeWord,
    pub which: Cylinder,
    /// The tree vector: the long saddle connection of the direction, which is
    /// also the holonomy of the short cylinder.
    pub vector: GVec2,
    pub coeffs: Coeffs,
    /// Sector sequence recovered from the vector.
    pub itinerary: Vec<u8>,
    /// Edge crossings per period on the double pentagon.
    pub period: u128,
    /// Plain cutting word from the substitutions.
    pub cutting_word: String,
    pub arrow_counts: ArrowCounts,
    pub symmetry_node: SymmetryNode,
    pub symmetry_class: SymmetryClass,
    /// The congruence test agrees with the graph classification.
    pub dft_agrees: bool,
    /// The core curves are parallel to an edge (the horizontal direction).
    pub edge_parallel: bool,
    pub multiplier: Multiplier,
    pub billiard_period: u128,
    pub length: LengthReport,
    /// The straight-line flow reproduces the substitution word.
    pub oracle_agrees: bool,
}

pub fn describe(w: &TreeWord, which: Cylinder) -> Result<Description> {
    let node = tree_vector(w);
    let itinerary = itinerary_of(&node.vector)?;
    if itinerary.tree_word() != *w && w.is_canonical() {
        return Err(Error::Invariant(format!("itinerary of {w} reads back as {}", itinerary.tree_word())));
    }
    let seq = sequence_for(w, which);
    let period = period_of(&node.coeffs, which);
    if seq.len() as u128 != period {
        return Err(Error::Invariant(format!(
            "cutting word of {w} has length {} but the period is {period}",
            seq.len()
        )));
    }
    let (symmetry_node, symmetry_class) = classify(w);
    let multiplier = Multiplier::for_node(&node);
    let flow = cutting_sequence_flow(w, which)?;
    Ok(Description {
        word: w.clone(),
        which,
        vector: node.vector.clone(),
        coeffs: node.coeffs,
        itinerary: itinerary.sectors,
        period,
        cutting_word: seq.plain_string(),
        arrow_counts: crate::cutting::counts(&seq),
        symmetry_node,
        symmetry_class,
        dft_agrees: dft_class(&node.coeffs) == symmetry_class,
        edge_parallel: node.is_root_direction(),
        multiplier,
        billiard_period: multiplier.apply(period)?,
        length: geometric_length(&node, which),
        oracle_agrees: same_cyclic_word(&flow, &seq.plain()),
    })
}

/// A direction achieving a period.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub period: u128,
    pub word: TreeWord,
    pub which: Cylinder,
    /// True when the witness is an off-core trajectory rather than a core
    /// curve (the horizontal direction, whose core curves are shorter).
    pub off_core: bool,
}

/// Result of [`scan_even_periods`].
#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub max_period: u128,
    /// Double-pentagon witnesses for 2, 4, …, `max_period`.
    pub double_pentagon: Vec<Witness>,
    /// Rotationally symmetric billiard witnesses for 10, 20, … ≤ `max_period`.
    pub symmetric: Vec<Witness>,
    /// Periods of billiard trajectories with only a reflection symmetry.
    pub asymmetric_found: BTreeSet<u128>,
    /// Even numbers in `[2, max_period]` not in `asymmetric_found`.
    pub asymmetric_missing: Vec<u128>,
}

fn zeros_after(first: u8, n: usize) -> TreeWord {
    let mut digits = vec![first];
    digits.extend(std::iter::repeat(0).take(n));
    TreeWord::new(digits).expect("digits")
}

/// The double-pentagon witness for an even period: the horizontal
/// direction for 2 and `1·0ⁿ` (period `2(n + 2)`) otherwise.
pub fn even_witness(period: u128) -> Result<Witness> {
    if period < 2 || period % 2 == 1 {
        return Err(Error::Domain(format!("{period} is not a positive even number")));
    }
    let word = if period == 2 {
        TreeWord::root()
    } else {
        zeros_after(1, (period / 2 - 2) as usize)
    };
    Ok(Witness {
        period,
        word,
        which: Cylinder::Short,
        off_core: false,
    })
}

/// The rotationally symmetric witness for billiard period `10k`.
///
/// * `k ≢ 3 (mod 5)`, `k ≥ 2`: `1·0^{k−2}`, short cylinder;
/// * `k ≡ 3 (mod 10)`: `1·0^{(k−3)/2}`, long cylinder;
/// * `k ≡ 8 (mod 10)`: `2·0^{(k−2)/2}`, short cylinder;
/// * `k = 1`: the horizontal direction off its core curve, which bounces
///   twice as often as the core curve's 5.
pub fn symmetric_witness(k: u128) -> Result<Witness> {
    if k == 0 {
        return Err(Error::Domain("k must be positive".into()));
    }
    let (word, which, off_core) = match (k % 5, k % 10) {
        _ if k == 1 => (TreeWord::root(), Cylinder::Short, true),
        (3, 3) => (zeros_after(1, ((k - 3) / 2) as usize), Cylinder::Long, false),
        (3, _) => (zeros_after(2, ((k - 2) / 2) as usize), Cylinder::Short, false),
        _ => (zeros_after(1, (k - 2) as usize), Cylinder::Short, false),
    };
    Ok(Witness {
        period: 10 * k,
        word,
        which,
        off_core,
    })
}

/// Re-derives a witness's period: from [`describe`] for core curves, and by
/// tracing the billiard for the off-core witness.
pub fn verify_symmetric(w: &Witness) -> Result<bool> {
    if w.off_core {
        let t = billiard_trajectory(&w.word, w.which, &BigRational::new(1.into(), 4.into()))?;
        return Ok(t.bounces as u128 == w.period && t.class == Some(SymmetryClass::DihedralFull));
    }
    let d = describe(&w.word, w.which)?;
    Ok(d.billiard_period == w.period && d.symmetry_class == SymmetryClass::DihedralFull)
}

pub fn verify_even(w: &Witness) -> Result<bool> {
    Ok(describe(&w.word, w.which)?.period == w.period)
}

/// Billiard periods `≤ max_period` of all directions with only a reflection
/// symmetry.  Such a trajectory bounces as often as it crosses edges on the
/// double pentagon, and both cylinder periods grow along tree edges, so the
/// search prunes every subtree whose short period exceeds the bound.  The
/// three depth-1 subtrees run in parallel.
pub fn asymmetric_periods(max_period: u128) -> BTreeSet<u128> {
    fn walk(c: Coeffs, path: BackwardPath, max: u128, out: &mut BTreeSet<u128>) {
        if period_of(&c, Cylinder::Short) > max {
            return;
        }
        if path.end().class() == SymmetryClass::BilateralOnly {
            for which in Cylinder::BOTH {
                let p = period_of(&c, which);
                if p <= max {
                    out.insert(p);
                }
            }
        }
        for d in 0..4 {
            walk(c.apply(d), path.push(d), max, out);
        }
    }
    (1u8..4)
        .into_par_iter()
        .map(|d| {
            let mut out = BTreeSet::new();
            walk(Coeffs::ROOT.apply(d), BackwardPath::empty().push(d), max_period, &mut out);
            out
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        })
}

/// Witnesses for every even double-pentagon period and every symmetric
/// billiard period up to `max_period`, and the set of asymmetric billiard
/// periods found by exhaustive search.  Each witness is re-verified.
pub fn scan_even_periods(max_period: u128) -> Result<ScanReport> {
    if max_period < 2 {
        return Err(Error::Domain("max period must be at least 2".into()));
    }
    let double_pentagon = (1..=max_period / 2)
        .map(|k| even_witness(2 * k))
        .collect::<Result<Vec<_>>>()?;
    let symmetric = (1..=max_period / 10)
        .map(symmetric_witness)
        .collect::<Result<Vec<_>>>()?;
    let checks: Vec<Result<bool>> = double_pentagon
        .par_iter()
        .map(verify_even)
        .chain(symmetric.par_iter().map(verify_symmetric))
        .collect();
    for (r, i) in checks.into_iter().zip(0..) {
        if !r? {
            return Err(Error::Invariant(format!("witness {i} does not achieve its period")));
        }
    }
    let asymmetric_found = asymmetric_periods(max_period);
    let asymmetric_missing = (1..=max_period / 2)
        .map(|k| 2 * k)
        .filter(|p| !asymmetric_found.contains(p))
        .collect();
    Ok(ScanReport {
        max_period,
        double_pentagon,
        symmetric,
        asymmetric_found,
        asymmetric_missing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::enumerate_tree;

    fn w(s: &str) -> TreeWord {
        s.parse().unwrap()
    }

    #[test]
    fn worked_example() {
        let d = describe(&w("120"), Cylinder::Short).unwrap();
        assert_eq!(d.vector, GVec2::from_ints((4, 4), (1, 2)));
        assert_eq!(d.itinerary, vec![0, 2, 1]);
        assert_eq!(d.period, 22);
        assert_eq!(d.billiard_period, 110);
        assert_eq!(d.symmetry_class, SymmetryClass::DihedralFull);
        assert!(same_cyclic_word(d.cutting_word.as_bytes(), b"5434321212343212123434"));
        assert!(d.oracle_agrees && d.dft_agrees && !d.edge_parallel);
    }

    #[test]
    fn root_and_asymmetric_examples() {
        let d = describe(&TreeWord::root(), Cylinder::Short).unwrap();
        assert_eq!((d.period, d.billiard_period), (2, 5));
        assert!(d.edge_parallel);
        assert_eq!(d.multiplier, Multiplier::FiveHalves);
        let d = describe(&w("121"), Cylinder::Short).unwrap();
        assert_eq!(d.billiard_period, d.period);
    }

    #[test]
    fn periods_satisfy_the_multiplier_relations() {
        for node in enumerate_tree(3) {
            for which in Cylinder::BOTH {
                let d = describe(&node.word, which).unwrap();
                let expect = match d.symmetry_class {
                    SymmetryClass::BilateralOnly => d.period,
                    _ if d.edge_parallel => 5 * d.period / 2,
                    _ => 5 * d.period,
                };
                assert_eq!(d.billiard_period, expect);
                assert!(d.oracle_agrees);
                assert_eq!(d.length.billiard, d.length.double_pentagon * d.multiplier.as_f64());
            }
        }
    }

    #[test]
    fn description_serializes() {
        let d = describe(&w("12"), Cylinder::Long).unwrap();
        let json = serde_json::to_value(&d).unwrap();
        assert_eq!(json["word"], "12");
        assert_eq!(json["which"], "long");
        assert!(json["vector"]["x"].is_string());
    }

    #[test]
    fn even_witnesses() {
        let words: Vec<String> = (1..=5).map(|k| even_witness(2 * k).unwrap().word.to_string()).collect();
        assert_eq!(words, ["", "1", "10", "100", "1000"]);
        for k in 1..=20 {
            assert!(verify_even(&even_witness(2 * k).unwrap()).unwrap());
        }
        assert!(even_witness(7).is_err());
    }

    #[test]
    fn symmetric_witness_cases() {
        let s = symmetric_witness(7).unwrap();
        assert_eq!((s.word.to_string(), s.which, s.period), ("100000".into(), Cylinder::Short, 70));
        assert_eq!(symmetric_witness(13).unwrap().which, Cylinder::Long);
        assert_eq!(symmetric_witness(18).unwrap().word.to_string(), "200000000");
        for k in 1..=20 {
            assert!(verify_symmetric(&symmetric_witness(k).unwrap()).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn small_scan() {
        let r = scan_even_periods(60).unwrap();
        assert_eq!(r.asymmetric_missing, vec![2, 12, 14, 18]);
        assert_eq!(r.double_pentagon.len(), 30);
        assert_eq!(r.symmetric.len(), 6);
        assert!(scan_even_periods(1).is_err());
    }

    #[test]
    fn asymmetric_scan_matches_brute_force() {
        let mut brute = BTreeSet::new();
        for node in enumerate_tree(10) {
            if classify(&node.word).1 == SymmetryClass::BilateralOnly {
                for which in Cylinder::BOTH {
                    let p = period_of(&node.coeffs, which);
                    if p <= 20 {
                        brute.insert(p);
                    }
                }
            }
        }
        // Depth 10 suffices: each step below the root adds at least 2 to
        // the short period, so deeper nodes have period at least 24.
        assert_eq!(asymmetric_periods(20), brute);
    }
}
