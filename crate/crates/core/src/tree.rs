//! The quaternary tree of long saddle-connection vectors on the golden L.
//!
//! The positive cone `Σ = {x > 0, y ≥ 0}` splits into four sectors, each the
//! image of the whole cone under one of the matrices
//!
//! ```text
//! σ₀ = [[1, φ], [0, 1]]   σ₁ = [[φ, φ], [1, φ]]
//! σ₂ = [[φ, 1], [φ, φ]]   σ₃ = [[1, 0], [φ, 1]]
//! ```
//!
//! A tree word `d₁…dₙ` lists the matrices in order of application, so its
//! vector is `σ_{dₙ}···σ_{d₁}·[1, 0]`.  Words starting with a digit other
//! than 0, plus the empty root word, are in bijection with the set Λ of long
//! saddle-connection vectors.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::golden::{GMat2, GVec2, GoldenNum};
use crate::{Error, Result};

/// Which of the two cylinders in a periodic direction a trajectory runs in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cylinder {
    Short,
    Long,
}

impl Cylinder {
    pub const BOTH: [Cylinder; 2] = [Cylinder::Short, Cylinder::Long];

    pub fn as_str(self) -> &'static str {
        match self {
            Cylinder::Short => "short",
            Cylinder::Long => "long",
        }
    }
}

impl fmt::Display for Cylinder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Cylinder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "short" => Ok(Cylinder::Short),
            "long" => Ok(Cylinder::Long),
            _ => Err(Error::Parse(format!("cylinder must be short or long, got {s:?}"))),
        }
    }
}

/// One of the four sectors Σ₀…Σ₃ of the positive cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SectorIndex(u8);

impl SectorIndex {
    pub const ALL: [SectorIndex; 4] = [SectorIndex(0), SectorIndex(1), SectorIndex(2), SectorIndex(3)];

    pub fn new(i: u8) -> Result<Self> {
        if i < 4 {
            Ok(SectorIndex(i))
        } else {
            Err(Error::Domain(format!("sector index {i} is not in 0..=3")))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }
}

/// The sector map σᵢ.
pub fn sigma(i: SectorIndex) -> GMat2 {
    match i.0 {
        0 => GMat2::from_ints([[(1, 0), (0, 1)], [(0, 0), (1, 0)]]),
        1 => GMat2::from_ints([[(0, 1), (0, 1)], [(1, 0), (0, 1)]]),
        2 => GMat2::from_ints([[(0, 1), (1, 0)], [(0, 1), (0, 1)]]),
        _ => GMat2::from_ints([[(1, 0), (0, 0)], [(0, 1), (1, 0)]]),
    }
}

/// The inverse σᵢ⁻¹; every σᵢ has determinant 1.
pub fn sigma_inverse(i: SectorIndex) -> GMat2 {
    match i.0 {
        0 => GMat2::from_ints([[(1, 0), (0, -1)], [(0, 0), (1, 0)]]),
        1 => GMat2::from_ints([[(0, 1), (0, -1)], [(-1, 0), (0, 1)]]),
        2 => GMat2::from_ints([[(0, 1), (-1, 0)], [(0, -1), (0, 1)]]),
        _ => GMat2::from_ints([[(1, 0), (0, 0)], [(0, -1), (1, 0)]]),
    }
}

/// The sector containing `v`, using the half-open convention
/// `Σ₀: 0 ≤ y < φ̄x`, `Σ₁: φ̄x ≤ y < x`, `Σ₂: x ≤ y < φx`, `Σ₃: φx ≤ y`.
pub fn classify_sector(v: &GVec2) -> Result<SectorIndex> {
    if !v.x.is_positive() || v.y.is_negative() {
        return Err(Error::Domain(format!("{v} is outside the positive cone")));
    }
    let i = if v.y < &v.x * &GoldenNum::phi_bar() {
        0
    } else if v.y < v.x {
        1
    } else if v.y < &v.x * &GoldenNum::phi() {
        2
    } else {
        3
    };
    Ok(SectorIndex(i))
}

/// A digit string over `{0,1,2,3}` in order of application.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeWord(Vec<u8>);

impl TreeWord {
    pub fn root() -> Self {
        TreeWord(Vec::new())
    }

    pub fn new(digits: Vec<u8>) -> Result<Self> {
        if let Some(d) = digits.iter().find(|&&d| d > 3) {
            return Err(Error::Parse(format!("tree digit {d} is not in 0..=3")));
        }
        Ok(TreeWord(digits))
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True for the root and for words whose first digit is not 0, i.e. the
    /// words in bijection with Λ.
    pub fn is_canonical(&self) -> bool {
        self.0.first().map_or(true, |&d| d != 0)
    }

    pub fn child(&self, d: u8) -> TreeWord {
        debug_assert!(d < 4);
        let mut v = self.0.clone();
        v.push(d);
        TreeWord(v)
    }

    pub fn reversed(&self) -> Vec<u8> {
        self.0.iter().rev().copied().collect()
    }
}

impl fmt::Display for TreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_string())
    }
}

impl FromStr for TreeWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let digits = s
            .chars()
            .map(|c| match c {
                '0'..='3' => Ok(c as u8 - b'0'),
                _ => Err(Error::Parse(format!("tree word {s:?} contains {c:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(TreeWord(digits))
    }
}

impl Serialize for TreeWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TreeWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Coefficients `(a, b, c, d)` of a vector `[a + bφ, c + dφ]` in `Z[φ]²`.
///
/// Tree vectors have nonnegative integer coefficients; they grow at most like
/// `(φ + √φ)ⁿ` with depth, so `u128` covers every word shorter than about 90
/// digits.  Arithmetic is checked and overflow panics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Coeffs {
    pub a: u128,
    pub b: u128,
    pub c: u128,
    pub d: u128,
}

fn sum(xs: &[u128]) -> u128 {
    xs.iter()
        .try_fold(0u128, |acc, &x| acc.checked_add(x))
        .expect("tree coefficient overflow")
}

impl Coeffs {
    pub const ROOT: Coeffs = Coeffs { a: 1, b: 0, c: 0, d: 0 };

    pub fn new(a: u128, b: u128, c: u128, d: u128) -> Self {
        Coeffs { a, b, c, d }
    }

    /// The effect of σᵢ on `[a + bφ, c + dφ]`.
    pub fn apply(self, i: u8) -> Coeffs {
        let Coeffs { a, b, c, d } = self;
        match i {
            0 => Coeffs::new(sum(&[a, d]), sum(&[b, c, d]), c, d),
            1 => Coeffs::new(sum(&[b, d]), sum(&[a, b, c, d]), sum(&[a, d]), sum(&[b, c, d])),
            2 => Coeffs::new(sum(&[b, c]), sum(&[a, b, d]), sum(&[b, d]), sum(&[a, b, c, d])),
            3 => Coeffs::new(a, b, sum(&[b, c]), sum(&[a, b, d])),
            _ => panic!("sector index {i} out of range"),
        }
    }

    pub fn vector(&self) -> GVec2 {
        let g = |p: u128, q: u128| {
            GoldenNum::from_parts(p.into(), q.into(), 1.into()).expect("unit denominator")
        };
        GVec2::new(g(self.a, self.b), g(self.c, self.d))
    }

    /// Reads the coefficients back from a vector, if it lies in `N[φ]²`.
    pub fn from_vector(v: &GVec2) -> Option<Coeffs> {
        use num_traits::ToPrimitive;
        let (a, b) = v.x.integer_coeffs()?;
        let (c, d) = v.y.integer_coeffs()?;
        Some(Coeffs::new(a.to_u128()?, b.to_u128()?, c.to_u128()?, d.to_u128()?))
    }
}

/// A node of the tree: its word, vector and coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TreeNode {
    pub word: TreeWord,
    pub vector: GVec2,
    pub coeffs: Coeffs,
}

impl TreeNode {
    fn from_parts(word: TreeWord, coeffs: Coeffs) -> Self {
        TreeNode {
            word,
            vector: coeffs.vector(),
            coeffs,
        }
    }

    pub fn root() -> Self {
        TreeNode::from_parts(TreeWord::root(), Coeffs::ROOT)
    }

    pub fn depth(&self) -> usize {
        self.word.len()
    }

    /// True for the horizontal root direction `[1, 0]`.
    pub fn is_root_direction(&self) -> bool {
        self.coeffs == Coeffs::ROOT
    }
}

/// The node `σ_{dₙ}···σ_{d₁}·[1, 0]` of a word.
pub fn tree_vector(w: &TreeWord) -> TreeNode {
    let coeffs = w.digits().iter().fold(Coeffs::ROOT, |c, &d| c.apply(d));
    TreeNode::from_parts(w.clone(), coeffs)
}

/// The accumulated matrix `σ_{dₙ}···σ_{d₁}`.
pub fn tree_matrix(w: &TreeWord) -> GMat2 {
    w.digits()
        .iter()
        .fold(GMat2::identity(), |m, &d| &sigma(SectorIndex(d)) * &m)
}

/// Depth-first walk in lexicographic word order below `start`, descending
/// into a child only when `keep` accepts its coefficients.
fn walk<F, V>(start: &TreeWord, coeffs: Coeffs, max_depth: usize, keep: &F, visit: &mut V)
where
    F: Fn(&Coeffs) -> bool,
    V: FnMut(&TreeWord, &Coeffs),
{
    let mut stack = vec![(start.clone(), coeffs)];
    while let Some((word, c)) = stack.pop() {
        visit(&word, &c);
        if word.len() >= max_depth {
            continue;
        }
        let first = if word.is_empty() { 1 } else { 0 };
        for d in (first..4).rev() {
            let child = c.apply(d);
            if keep(&child) {
                stack.push((word.child(d), child));
            }
        }
    }
}

/// Streams every canonical node of depth at most `max_depth`, in
/// lexicographic word order.
pub fn enumerate_tree(max_depth: usize) -> impl Iterator<Item = TreeNode> {
    let mut stack = vec![(TreeWord::root(), Coeffs::ROOT)];
    std::iter::from_fn(move || {
        let (word, c) = stack.pop()?;
        if word.len() < max_depth {
            let first = if word.is_empty() { 1 } else { 0 };
            for d in (first..4).rev() {
                stack.push((word.child(d), c.apply(d)));
            }
        }
        Some(TreeNode::from_parts(word, c))
    })
}

/// Every word (canonical or not) of length at most `max_depth`, including
/// the root, in lexicographic order: `(4^{n+1} − 1)/3` words in total.
pub fn all_words(max_depth: usize) -> impl Iterator<Item = TreeWord> {
    let mut stack = vec![TreeWord::root()];
    std::iter::from_fn(move || {
        let word = stack.pop()?;
        if word.len() < max_depth {
            for d in (0..4).rev() {
                stack.push(word.child(d));
            }
        }
        Some(word)
    })
}

/// Visits every canonical node whose coefficients satisfy `keep`, pruning a
/// subtree as soon as its root fails.  `keep` must be monotone: if it
/// rejects a node it rejects every descendant.  Subtrees under the three
/// depth-1 nodes are searched in parallel; the result is still in
/// lexicographic order.
pub fn pruned_search<F>(keep: F) -> Vec<(TreeWord, Coeffs)>
where
    F: Fn(&Coeffs) -> bool + Sync,
{
    pruned_search_to_depth(usize::MAX, keep)
}

/// [`pruned_search`] restricted to words of at most `max_depth` digits.
pub fn pruned_search_to_depth<F>(max_depth: usize, keep: F) -> Vec<(TreeWord, Coeffs)>
where
    F: Fn(&Coeffs) -> bool + Sync,
{
    let mut out = vec![(TreeWord::root(), Coeffs::ROOT)];
    if !keep(&Coeffs::ROOT) {
        return Vec::new();
    }
    if max_depth == 0 {
        return out;
    }
    let parts: Vec<Vec<(TreeWord, Coeffs)>> = (1u8..4)
        .into_par_iter()
        .map(|d| {
            let c = Coeffs::ROOT.apply(d);
            let mut part = Vec::new();
            if keep(&c) {
                walk(&TreeWord::root().child(d), c, max_depth, &keep, &mut |w, c| {
                    part.push((w.clone(), *c))
                });
            }
            part
        })
        .collect();
    out.extend(parts.into_iter().flatten());
    out
}

/// The nodes of [`enumerate_tree`], computed in parallel over the depth-1
/// subtrees; the order is the same.
pub fn enumerate_tree_parallel(max_depth: usize) -> Vec<TreeNode> {
    pruned_search_to_depth(max_depth, |_| true)
        .into_iter()
        .map(|(w, c)| TreeNode::from_parts(w, c))
        .collect()
}

/// All canonical nodes with `x ≤ n` and `y ≤ n`, in lexicographic order.
pub fn enumerate_in_box(n: &GoldenNum) -> Vec<TreeNode> {
    let inside = |c: &Coeffs| {
        let v = c.vector();
        v.x <= *n && v.y <= *n
    };
    pruned_search(inside)
        .into_iter()
        .map(|(w, c)| TreeNode::from_parts(w, c))
        .collect()
}

/// The mirror word: its vector is the original reflected across `y = x`.
pub fn mirror_word(w: &TreeWord) -> Result<TreeWord> {
    let digits = w.digits();
    let first = match digits.first() {
        Some(1) => 3,
        Some(2) => 2,
        Some(3) => 1,
        _ => {
            return Err(Error::Domain(format!(
                "mirror needs a word starting with 1, 2 or 3, got {w:?}"
            )))
        }
    };
    let rest = digits[1..].iter().map(|&d| 3 - d);
    Ok(TreeWord(std::iter::once(first).chain(rest).collect()))
}
