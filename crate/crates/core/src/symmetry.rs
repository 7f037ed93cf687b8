//! Symmetry of billiard trajectories via the Five-Ls gluing algebra.
//!
//! The necklace (five golden Ls) is described by a tuple `f(a,b,c,d)` of
//! residues mod 5.  The parabolic `T` and the rotation `R` act on tuples,
//! and the orbit of `f(1,3,2,4)` has six elements A…F.  Writing the sector
//! maps as `σ₀ = T`, `σ₁ = TRT`, `σ₂ = TRTRT`, `σ₃ = TRTRTRT` turns the
//! orbit into a six-node graph; following a tree word backwards from A ends
//! at F exactly when the billiard trajectory has only a reflection symmetry.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::cutting::period_of;
use crate::tree::{Coeffs, Cylinder, TreeNode, TreeWord};
use crate::{Error, Result};

/// A normalized gluing tuple: `a = 1`, or `a = 0` and `d = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GluingTuple {
    pub a: u8,
    pub b: u8,
    pub c: u8,
    pub d: u8,
}

fn inv_mod5(x: i64) -> i64 {
    // 1·1 = 2·3 = 4·4 = 1 (mod 5)
    [0, 1, 3, 2, 4][x as usize]
}

impl GluingTuple {
    /// Reduces `(a, b, c, d)` mod 5 and scales it to normal form.
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let m = |x: i64| x.rem_euclid(5);
        let (a, b, c, d) = (m(a), m(b), m(c), m(d));
        let k = if a != 0 {
            inv_mod5(a)
        } else if d != 0 {
            inv_mod5(d)
        } else {
            return Err(Error::Domain(
                "a = d = 0 describes a disconnected necklace".into(),
            ));
        };
        let s = |x: i64| (x * k).rem_euclid(5) as u8;
        Ok(GluingTuple {
            a: s(a),
            b: s(b),
            c: s(c),
            d: s(d),
        })
    }

    fn signed(self) -> (i64, i64, i64, i64) {
        (self.a as i64, self.b as i64, self.c as i64, self.d as i64)
    }
}

impl fmt::Display for GluingTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f({},{},{},{})", self.a, self.b, self.c, self.d)
    }
}

/// `T·f(a,b,c,d) = f(a, b−a, c, d−a−c)`.
pub fn act_t(g: GluingTuple) -> GluingTuple {
    let (a, b, c, d) = g.signed();
    GluingTuple::new(a, b - a, c, d - a - c).expect("T preserves connectivity")
}

/// `R·f(a,b,c,d) = f(−d, c, −b, a)`.
pub fn act_r(g: GluingTuple) -> GluingTuple {
    let (a, b, c, d) = g.signed();
    GluingTuple::new(-d, c, -b, a).expect("R preserves connectivity")
}

/// The six surfaces in the orbit of `f(1,3,2,4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SymmetryNode {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl SymmetryNode {
    pub const ALL: [SymmetryNode; 6] = [
        SymmetryNode::A,
        SymmetryNode::B,
        SymmetryNode::C,
        SymmetryNode::D,
        SymmetryNode::E,
        SymmetryNode::F,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// The named tuple: A, C, D, E are read off the five-cycle of `T`
    /// starting at `f(1,3,2,4)`; F is `f(0,2,0,1)`.
    pub fn tuple(self) -> GluingTuple {
        let t = |a, b, c, d| GluingTuple { a, b, c, d };
        match self {
            SymmetryNode::A => t(1, 3, 2, 4),
            SymmetryNode::B => t(1, 2, 2, 1),
            SymmetryNode::C => t(1, 1, 2, 3),
            SymmetryNode::D => t(1, 0, 2, 0),
            SymmetryNode::E => t(1, 4, 2, 2),
            SymmetryNode::F => t(0, 2, 0, 1),
        }
    }

    pub fn from_tuple(g: GluingTuple) -> Option<SymmetryNode> {
        SymmetryNode::ALL.into_iter().find(|n| n.tuple() == g)
    }

    pub fn class(self) -> SymmetryClass {
        if self == SymmetryNode::F {
            SymmetryClass::BilateralOnly
        } else {
            SymmetryClass::DihedralFull
        }
    }
}

impl fmt::Display for SymmetryNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Symmetry type of a periodic billiard trajectory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SymmetryClass {
    /// Invariant under the full dihedral group of the pentagon.
    DihedralFull,
    /// Invariant only under a single reflection.
    BilateralOnly,
}

impl fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// The generators of σᵢ as words in T and R.
pub fn sigma_generators(i: u8) -> &'static str {
    ["T", "TRT", "TRTRT", "TRTRTRT"][i as usize]
}

fn act_word(word: &str, g: GluingTuple) -> GluingTuple {
    // Every generator word is a palindrome, so reading order is immaterial.
    word.chars().rev().fold(g, |g, ch| match ch {
        'T' => act_t(g),
        _ => act_r(g),
    })
}

/// `table[i][n]` is the image of node `n` under σᵢ, derived from the T and
/// R actions.
pub fn sigma_edges() -> [[SymmetryNode; 6]; 4] {
    let mut table = [[SymmetryNode::A; 6]; 4];
    for i in 0..4u8 {
        for n in SymmetryNode::ALL {
            let image = act_word(sigma_generators(i), n.tuple());
            table[i as usize][n.index()] =
                SymmetryNode::from_tuple(image).expect("the orbit is closed");
        }
    }
    table
}

/// `table[i][n]` is the node reached from `n` by following a σᵢ edge
/// backwards.
pub fn inverse_edges() -> [[SymmetryNode; 6]; 4] {
    let fwd = sigma_edges();
    let mut inv = [[SymmetryNode::A; 6]; 4];
    for i in 0..4 {
        for n in SymmetryNode::ALL {
            inv[i][fwd[i][n.index()].index()] = n;
        }
    }
    inv
}

fn inverse_table() -> &'static [[SymmetryNode; 6]; 4] {
    static TABLE: std::sync::OnceLock<[[SymmetryNode; 6]; 4]> = std::sync::OnceLock::new();
    TABLE.get_or_init(inverse_edges)
}

/// Follows the tree word backwards from A: the last digit first, each step
/// along an inverse σ-edge.
pub fn classify(w: &TreeWord) -> (SymmetryNode, SymmetryClass) {
    let inv = inverse_table();
    let node = w
        .digits()
        .iter()
        .rev()
        .fold(SymmetryNode::A, |n, &d| inv[d as usize][n.index()]);
    (node, node.class())
}

/// The map "start at some node and follow a word backwards", kept as a
/// permutation so that extending a word by one digit costs O(1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BackwardPath([u8; 6]);

impl BackwardPath {
    pub fn empty() -> Self {
        BackwardPath([0, 1, 2, 3, 4, 5])
    }

    /// The path for `w·d` given the path for `w`.
    pub fn push(&self, d: u8) -> Self {
        let inv = inverse_table();
        let mut out = [0u8; 6];
        for n in 0..6 {
            out[n] = self.0[inv[d as usize][n].index()];
        }
        BackwardPath(out)
    }

    /// The end node when starting from A.
    pub fn end(&self) -> SymmetryNode {
        SymmetryNode::ALL[self.0[0] as usize]
    }
}

/// The congruence test: only a reflection symmetry iff
/// `(d − b) + 2(c − a) ≡ 0 (mod 5)`.
pub fn dft_class(c: &Coeffs) -> SymmetryClass {
    let m = |x: u128| (x % 5) as i64;
    let r = (m(c.d) - m(c.b) + 2 * (m(c.c) - m(c.a))).rem_euclid(5);
    if r == 0 {
        SymmetryClass::BilateralOnly
    } else {
        SymmetryClass::DihedralFull
    }
}

/// How the billiard period relates to the double-pentagon period.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Multiplier {
    /// Five times: the trajectory has rotational symmetry.
    Five,
    /// The same: only a reflection symmetry.
    One,
    /// Two and a half times: the core curves parallel to an edge.
    FiveHalves,
}

impl Multiplier {
    pub fn for_node(node: &TreeNode) -> Multiplier {
        match classify(&node.word).1 {
            SymmetryClass::BilateralOnly => Multiplier::One,
            SymmetryClass::DihedralFull if node.is_root_direction() => Multiplier::FiveHalves,
            SymmetryClass::DihedralFull => Multiplier::Five,
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Multiplier::Five => 5.0,
            Multiplier::One => 1.0,
            Multiplier::FiveHalves => 2.5,
        }
    }

    /// Applies the multiplier to a period, failing if the result would not
    /// be an integer.
    pub fn apply(self, period: u128) -> Result<u128> {
        match self {
            Multiplier::Five => Ok(5 * period),
            Multiplier::One => Ok(period),
            Multiplier::FiveHalves if period % 2 == 0 => Ok(5 * period / 2),
            Multiplier::FiveHalves => Err(Error::Invariant(format!(
                "2.5 × {period} is not an integer billiard period"
            ))),
        }
    }
}

/// Number of bounces in one period of the billiard trajectory.
pub fn billiard_period(node: &TreeNode, which: Cylinder) -> Result<u128> {
    Multiplier::for_node(node).apply(period_of(&node.coeffs, which))
}

/// Per-node counts of words of exactly `depth` digits (first digit 1, 2 or 3)
/// by the node their backward path from A ends at.
pub fn end_node_counts(depth: usize) -> [BigInt; 6] {
    let inv = inverse_table();
    let mut counts: [BigInt; 6] = Default::default();
    counts[SymmetryNode::A.index()] = 1.into();
    for step in 0..depth {
        // The last step consumes the first digit, which is never 0.
        let digits = if step + 1 == depth { 1..4 } else { 0..4 };
        let mut next: [BigInt; 6] = Default::default();
        for (n, count) in counts.iter().enumerate() {
            for d in digits.clone() {
                next[inv[d][n].index()] += count;
            }
        }
        counts = next;
    }
    counts
}

/// Exact fraction of depth-`depth` words whose trajectories have only a
/// reflection symmetry.
pub fn symmetry_fraction(depth: usize) -> Result<BigRational> {
    if depth == 0 {
        return Err(Error::Domain("symmetry fraction needs depth ≥ 1".into()));
    }
    let counts = end_node_counts(depth);
    let total: BigInt = counts.iter().sum();
    Ok(BigRational::new(counts[SymmetryNode::F.index()].clone(), total))
}

/// The random-walk matrix of backward steps: row X, column Y holds the
/// fraction of the four digits whose inverse edge leads from X to Y.
pub fn backward_transition_matrix() -> [[BigRational; 6]; 6] {
    let inv = inverse_table();
    let mut m: [[BigRational; 6]; 6] = Default::default();
    for x in 0..6 {
        for row in inv.iter() {
            m[x][row[x].index()] += BigRational::new(1.into(), 4.into());
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{all_words, enumerate_tree, mirror_word, tree_vector};
    use SymmetryNode::*;

    fn w(s: &str) -> TreeWord {
        s.parse().unwrap()
    }

    #[test]
    fn action_examples() {
        let a = A.tuple();
        assert_eq!(act_t(a), GluingTuple::new(1, 2, 2, 1).unwrap());
        assert_eq!(act_r(a), GluingTuple::new(1, 2, 2, 1).unwrap());
        for n in SymmetryNode::ALL {
            assert_eq!(act_r(act_r(n.tuple())), n.tuple());
        }
        assert!(GluingTuple::new(0, 1, 2, 5).is_err());
        assert_eq!(GluingTuple::new(-4, 2, -3, 1).unwrap(), B.tuple());
    }

    #[test]
    fn orbit_has_six_elements() {
        let mut seen = vec![A.tuple()];
        let mut i = 0;
        while i < seen.len() {
            for g in [act_t(seen[i]), act_r(seen[i])] {
                if !seen.contains(&g) {
                    seen.push(g);
                }
            }
            i += 1;
        }
        assert_eq!(seen.len(), 6);
        for n in SymmetryNode::ALL {
            assert!(seen.contains(&n.tuple()));
        }
        // T cycles A→B→C→D→E→A and fixes F.
        let cycle = [A, B, C, D, E, A];
        for p in cycle.windows(2) {
            assert_eq!(act_t(p[0].tuple()), p[1].tuple());
        }
        assert_eq!(act_t(F.tuple()), F.tuple());
    }

    #[test]
    fn edge_table_matches_hand_computed_table() {
        // Worked out by hand from the generator words, independently of the code.
        let expected = [
            [B, C, D, E, A, F],
            [B, D, F, A, C, E],
            [B, F, E, C, D, A],
            [B, E, A, D, F, C],
        ];
        assert_eq!(sigma_edges(), expected);
    }

    #[test]
    fn classify_examples() {
        for s in ["101", "12", "1000", "23"] {
            assert_eq!(classify(&w(s)).1, SymmetryClass::DihedralFull, "{s}");
        }
        for s in ["121", "1112", "1223", "2011"] {
            assert_eq!(classify(&w(s)).1, SymmetryClass::BilateralOnly, "{s}");
        }
        for n in [1usize, 6, 11] {
            let s = format!("1{}", "0".repeat(n));
            assert_eq!(classify(&w(&s)).1, SymmetryClass::BilateralOnly, "{s}");
        }
        assert_eq!(classify(&w("")).0, A);
    }

    #[test]
    fn dft_examples() {
        assert_eq!(dft_class(&Coeffs::ROOT), SymmetryClass::DihedralFull);
        assert_eq!(dft_class(&Coeffs::new(4, 4, 1, 2)), SymmetryClass::DihedralFull);
    }

    #[test]
    fn graph_agrees_with_congruence_to_depth_eight() {
        for word in all_words(8).filter(TreeWord::is_canonical) {
            let node = tree_vector(&word);
            assert_eq!(classify(&word).1, dft_class(&node.coeffs), "{word}");
        }
    }

    #[test]
    fn mirror_preserves_class() {
        for node in enumerate_tree(6).skip(1) {
            let m = mirror_word(&node.word).unwrap();
            assert_eq!(classify(&node.word).1, classify(&m).1);
        }
    }

    #[test]
    fn incremental_paths_match_classify() {
        for word in all_words(5) {
            let path = word.digits().iter().fold(BackwardPath::empty(), |p, &d| p.push(d));
            assert_eq!(path.end(), classify(&word).0, "{word}");
        }
    }

    #[test]
    fn billiard_period_examples() {
        let root = TreeNode::root();
        assert_eq!(Multiplier::for_node(&root), Multiplier::FiveHalves);
        assert_eq!(billiard_period(&root, Cylinder::Short).unwrap(), 5);
        assert_eq!(billiard_period(&root, Cylinder::Long).unwrap(), 5);
        assert_eq!(billiard_period(&tree_vector(&w("120")), Cylinder::Short).unwrap(), 110);
        let n = tree_vector(&w("121"));
        assert_eq!(
            billiard_period(&n, Cylinder::Short).unwrap(),
            period_of(&n.coeffs, Cylinder::Short)
        );
        assert!(Multiplier::FiveHalves.apply(3).is_err());
    }

    #[test]
    fn fraction_matches_brute_force() {
        // Independent oracle: classify every word of the given depth.
        for depth in 1..=7usize {
            let words: Vec<_> = enumerate_tree(depth).filter(|n| n.depth() == depth).collect();
            let bilateral = words
                .iter()
                .filter(|n| classify(&n.word).1 == SymmetryClass::BilateralOnly)
                .count();
            let expected = BigRational::new(bilateral.into(), words.len().into());
            assert_eq!(symmetry_fraction(depth).unwrap(), expected, "depth {depth}");
        }
        // The depth-1 word "2" ends at F, so the fraction is 1/3.
        assert_eq!(symmetry_fraction(1).unwrap(), BigRational::new(1.into(), 3.into()));
        assert!(symmetry_fraction(0).is_err());
    }

    #[test]
    fn transition_matrix_matches_printed_matrix() {
        let q = |n: i64| BigRational::new(n.into(), 4.into());
        let rows = [
            [0, 0, 1, 1, 1, 1],
            [4, 0, 0, 0, 0, 0],
            [0, 1, 0, 1, 1, 1],
            [0, 1, 1, 1, 1, 0],
            [0, 1, 1, 1, 0, 1],
            [0, 1, 1, 0, 1, 1],
        ];
        let printed: Vec<Vec<BigRational>> =
            rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        let built: Vec<Vec<BigRational>> =
            backward_transition_matrix().iter().map(|r| r.to_vec()).collect();
        assert_eq!(built, printed);
    }
}
