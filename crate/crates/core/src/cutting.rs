//! Decorated cutting sequences on the double pentagon and the substitutions
//! r₀…r₃ that generate them.
//!
//! The five edge labels of a pentagon are crossed along the path
//! `1 ⇄ 2 ⇄ 3 ⇄ 4 ⇄ 5`, so a trajectory's cutting sequence is a closed walk
//! on that path.  Decorating each letter with its successor gives one of
//! eight *arrows* `aᵇ`.  A direction with tree word `d₁…dₙ` has the cutting
//! sequence `r_{dₙ}(…r_{d₁}(seed))`, where the seed is `1²2¹` for the short
//! cylinder and `3⁴4³` for the long one.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::tree::{Coeffs, Cylinder, TreeNode, TreeWord};
use crate::{Error, Result};

/// An arrow `aᵇ` of the transition diagram, `|a − b| = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow(u8);

/// `(base, exponent)` of the eight arrows, in index order.
const ARROWS: [(u8, u8); 8] = [(1, 2), (2, 1), (2, 3), (3, 2), (3, 4), (4, 3), (4, 5), (5, 4)];

impl Arrow {
    pub const ALL: [Arrow; 8] = [
        Arrow(0),
        Arrow(1),
        Arrow(2),
        Arrow(3),
        Arrow(4),
        Arrow(5),
        Arrow(6),
        Arrow(7),
    ];

    pub fn new(base: u8, exponent: u8) -> Result<Self> {
        ARROWS
            .iter()
            .position(|&a| a == (base, exponent))
            .map(|i| Arrow(i as u8))
            .ok_or_else(|| Error::Inadmissible(format!("{base}^{exponent} is not an arrow")))
    }

    pub fn base(self) -> u8 {
        ARROWS[self.0 as usize].0
    }

    pub fn exponent(self) -> u8 {
        ARROWS[self.0 as usize].1
    }

    /// The arrow `bᵃ` travelling the other way.
    pub fn reversed(self) -> Arrow {
        Arrow(self.0 ^ 1)
    }

    fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.base(), self.exponent())
    }
}

/// The substitution tables, indexed by sector and then by arrow.  Each image
/// is written as its sequence of bases followed by the final exponent.
const SUBS: [[&str; 8]; 4] = [
    // r₀
    ["21", "12", "1234", "4321", "43", "34", "345", "543"],
    // r₁
    ["345", "543", "54321", "12345", "1234", "4321", "432", "234"],
    // r₂
    ["432", "234", "2345", "5432", "54321", "12345", "123", "321"],
    // r₃
    ["123", "321", "32", "23", "2345", "5432", "54", "45"],
];

fn image(i: u8, a: Arrow) -> impl Iterator<Item = Arrow> {
    let s = SUBS[i as usize][a.index()].as_bytes();
    s.windows(2)
        .map(|p| Arrow::new(p[0] - b'0', p[1] - b'0').expect("table entries are arrows"))
}

/// A cyclic, admissible sequence of arrows.
///
/// The arrows are kept in the order produced by the substitutions (the
/// palindrome properties depend on it); equality and hashing compare the
/// least rotation, so two words are equal exactly when they are the same
/// cyclic word.
#[derive(Clone)]
pub struct DecoratedWord {
    arrows: Vec<Arrow>,
}

impl DecoratedWord {
    /// Builds a word, checking that each arrow's exponent is the next
    /// arrow's base (cyclically).
    pub fn from_arrows(arrows: Vec<Arrow>) -> Result<Self> {
        if arrows.is_empty() {
            return Err(Error::Inadmissible("empty word".into()));
        }
        for (i, a) in arrows.iter().enumerate() {
            let next = arrows[(i + 1) % arrows.len()];
            if a.exponent() != next.base() {
                return Err(Error::Inadmissible(format!(
                    "{a} at position {i} is followed by {next}"
                )));
            }
        }
        Ok(DecoratedWord { arrows })
    }

    /// Decorates a plain cyclic word over `{1..5}`.
    pub fn from_plain(letters: &[u8]) -> Result<Self> {
        let n = letters.len();
        let arrows = (0..n)
            .map(|i| Arrow::new(letters[i], letters[(i + 1) % n]))
            .collect::<Result<Vec<_>>>()?;
        DecoratedWord::from_arrows(arrows)
    }

    pub fn seed(which: Cylinder) -> Self {
        let plain: &[u8] = match which {
            Cylinder::Short => &[1, 2],
            Cylinder::Long => &[3, 4],
        };
        DecoratedWord::from_plain(plain).expect("seeds are admissible")
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// The undecorated letters, in stored order.
    pub fn plain(&self) -> Vec<u8> {
        self.arrows.iter().map(|a| a.base()).collect()
    }

    pub fn plain_string(&self) -> String {
        self.arrows.iter().map(|a| char::from(b'0' + a.base())).collect()
    }

    /// The word rotated to start at its lexicographically least position.
    pub fn canonical(&self) -> Vec<Arrow> {
        let k = least_rotation(&self.arrows);
        self.arrows[k..].iter().chain(&self.arrows[..k]).copied().collect()
    }
}

impl PartialEq for DecoratedWord {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.canonical() == other.canonical()
    }
}

impl Eq for DecoratedWord {}

impl std::hash::Hash for DecoratedWord {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.canonical().hash(state);
    }
}

impl fmt::Display for DecoratedWord {
    /// Space-separated arrows, e.g. `1^2 2^1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.arrows.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DecoratedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DecoratedWord({self})")
    }
}

impl FromStr for DecoratedWord {
    type Err = Error;

    /// Accepts either the decorated form `5^4 4^3 …` or a plain word `5434…`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |c: char| Error::Parse(format!("unexpected {c:?} in cutting word {s:?}"));
        if s.contains('^') {
            let arrows = s
                .split_whitespace()
                .map(|tok| {
                    let (b, e) = tok.split_once('^').ok_or_else(|| bad(' '))?;
                    let b = b.parse::<u8>().map_err(|_| bad('^'))?;
                    let e = e.parse::<u8>().map_err(|_| bad('^'))?;
                    Arrow::new(b, e)
                })
                .collect::<Result<Vec<_>>>()?;
            DecoratedWord::from_arrows(arrows)
        } else {
            let letters = s
                .chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| match c {
                    '1'..='5' => Ok(c as u8 - b'0'),
                    _ => Err(bad(c)),
                })
                .collect::<Result<Vec<_>>>()?;
            DecoratedWord::from_plain(&letters)
        }
    }
}

impl Serialize for DecoratedWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Start index of the least rotation (two-pointer minimum-expression scan).
pub fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let (a, b) = (&s[(i + k) % n], &s[(j + k) % n]);
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j).min(n.saturating_sub(1))
}

/// True when `a` and `b` are rotations of each other.
pub fn same_cyclic_word<T: Ord>(a: &[T], b: &[T]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let (ka, kb) = (least_rotation(a), least_rotation(b));
    let n = a.len();
    (0..n).all(|i| a[(ka + i) % n] == b[(kb + i) % n])
}

/// Applies the substitution rᵢ arrow by arrow.
pub fn substitute(i: u8, w: &DecoratedWord) -> DecoratedWord {
    assert!(i < 4, "sector index {i} out of range");
    let arrows = w.arrows.iter().flat_map(|&a| image(i, a)).collect();
    DecoratedWord { arrows }
}

/// The cutting sequence of the chosen cylinder in the direction of `w`:
/// r_{d₁} is applied first, r_{dₙ} last.
pub fn sequence_for(w: &TreeWord, which: Cylinder) -> DecoratedWord {
    w.digits()
        .iter()
        .fold(DecoratedWord::seed(which), |acc, &d| substitute(d, &acc))
}

/// Arrow tallies: `a = #{1²,2¹}`, `d = #{2³,3²}`, `b = #{3⁴,4³}`,
/// `c = #{4⁵,5⁴}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ArrowCounts {
    pub a: u128,
    pub b: u128,
    pub c: u128,
    pub d: u128,
}

impl ArrowCounts {
    pub fn new(a: u128, b: u128, c: u128, d: u128) -> Self {
        ArrowCounts { a, b, c, d }
    }

    pub fn total(&self) -> u128 {
        self.a + self.b + self.c + self.d
    }

    pub fn as_array(&self) -> [u128; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

pub fn counts(w: &DecoratedWord) -> ArrowCounts {
    let t = arrow_tallies(w);
    ArrowCounts::new(t[0] + t[1], t[4] + t[5], t[6] + t[7], t[2] + t[3])
}

/// Per-arrow tallies in index order `1² 2¹ 2³ 3² 3⁴ 4³ 4⁵ 5⁴`.
pub fn arrow_tallies(w: &DecoratedWord) -> [u128; 8] {
    let mut per = [0u128; 8];
    for a in &w.arrows {
        per[a.index()] += 1;
    }
    per
}

/// The effect of rᵢ on the arrow tallies.
pub fn counts_transform(i: u8, c: ArrowCounts) -> ArrowCounts {
    let ArrowCounts { a, b, c, d } = c;
    match i {
        0 => ArrowCounts::new(a + d, b + c + d, c, d),
        1 => ArrowCounts::new(b + d, a + b + c + d, a + d, b + c + d),
        2 => ArrowCounts::new(b + c, a + b + d, b + d, a + b + c + d),
        3 => ArrowCounts::new(a, b, b + c, a + b + d),
        _ => panic!("sector index {i} out of range"),
    }
}

/// Number of edge crossings in one period on the double pentagon:
/// `2(a+b+c+d)` for the short cylinder and `2(a+2b+c+2d)` for the long one.
pub fn combinatorial_period(node: &TreeNode, which: Cylinder) -> u128 {
    period_of(&node.coeffs, which)
}

pub fn period_of(c: &Coeffs, which: Cylinder) -> u128 {
    match which {
        Cylinder::Short => 2 * (c.a + c.b + c.c + c.d),
        Cylinder::Long => 2 * (c.a + 2 * c.b + c.c + 2 * c.d),
    }
}

/// The three palindrome properties of a generated word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PalindromeReport {
    /// Reversing the arrows and swapping base with exponent gives the word back.
    pub reverse_swapped: bool,
    /// The flat digit string `b₁e₁b₂e₂…` is a palindrome.
    pub reverse_flat: bool,
    /// The plain word without its first letter is a palindrome.
    pub plain_tail: bool,
}

impl PalindromeReport {
    pub fn all(&self) -> bool {
        self.reverse_swapped && self.reverse_flat && self.plain_tail
    }
}

fn is_palindrome<T: PartialEq>(s: &[T]) -> bool {
    s.iter().eq(s.iter().rev())
}

pub fn palindrome_checks(w: &DecoratedWord) -> PalindromeReport {
    let reversed: Vec<Arrow> = w.arrows.iter().rev().map(|a| a.reversed()).collect();
    let flat: Vec<u8> = w.arrows.iter().flat_map(|a| [a.base(), a.exponent()]).collect();
    let plain = w.plain();
    PalindromeReport {
        reverse_swapped: reversed == w.arrows,
        reverse_flat: is_palindrome(&flat),
        plain_tail: is_palindrome(&plain[1..]),
    }
}

/// True when every arrow `aᵇ` occurs as often as its partner `bᵃ`.
pub fn arrows_paired(w: &DecoratedWord) -> bool {
    let t = arrow_tallies(w);
    (0..4).all(|k| t[2 * k] == t[2 * k + 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{enumerate_tree, tree_vector};
    use proptest::prelude::*;

    fn dw(s: &str) -> DecoratedWord {
        s.parse().unwrap()
    }

    fn w(s: &str) -> TreeWord {
        s.parse().unwrap()
    }

    #[test]
    fn substitution_examples() {
        let w2 = substitute(1, &dw("1^2 2^1"));
        assert_eq!(w2.to_string(), "3^4 4^5 5^4 4^3");
        let w1 = substitute(2, &w2);
        assert_eq!(w1.to_string(), "5^4 4^3 3^2 2^1 1^2 2^3 3^2 2^1 1^2 2^3 3^4 4^5");
        let w0 = substitute(0, &w1);
        assert_eq!(w0.plain_string(), "5434321212343212123434");
    }

    #[test]
    fn sequence_examples() {
        assert_eq!(sequence_for(&w(""), Cylinder::Short).to_string(), "1^2 2^1");
        let s = sequence_for(&w("120"), Cylinder::Short);
        assert_eq!(s.plain_string(), "5434321212343212123434");
        let s = sequence_for(&w("3"), Cylinder::Short);
        assert_eq!(s.to_string(), "1^2 2^3 3^2 2^1");
        assert_eq!(s.plain_string(), "1232");
    }

    #[test]
    fn count_examples() {
        assert_eq!(counts(&dw("12")), ArrowCounts::new(2, 0, 0, 0));
        assert_eq!(counts(&sequence_for(&w("120"), Cylinder::Short)), ArrowCounts::new(8, 8, 2, 4));
        assert_eq!(counts(&dw("34")), ArrowCounts::new(0, 2, 0, 0));
        let base = ArrowCounts::new(2, 0, 0, 0);
        assert_eq!(counts_transform(0, base), base);
        assert_eq!(counts_transform(1, base), ArrowCounts::new(0, 2, 2, 0));
        let c = ArrowCounts::new(0, 2, 2, 0);
        assert_eq!(counts_transform(2, c), ArrowCounts::new(4, 2, 2, 4));
        assert_eq!(counts(&substitute(2, &substitute(1, &dw("12")))), ArrowCounts::new(4, 2, 2, 4));
    }

    #[test]
    fn period_examples() {
        assert_eq!(combinatorial_period(&TreeNode::root(), Cylinder::Short), 2);
        let n = tree_vector(&w("120"));
        assert_eq!(combinatorial_period(&n, Cylinder::Short), 22);
        assert_eq!(combinatorial_period(&n, Cylinder::Long), 34);
        assert_eq!(sequence_for(&w("120"), Cylinder::Long).len(), 34);
    }

    #[test]
    fn palindrome_examples() {
        assert!(palindrome_checks(&dw("12")).all());
        assert!(palindrome_checks(&dw("543212321234")).all());
    }

    #[test]
    fn parsing_rejects_inadmissible_words() {
        assert!("13".parse::<DecoratedWord>().is_err());
        assert!("1^2 2^3".parse::<DecoratedWord>().is_err());
        assert!("1^3".parse::<DecoratedWord>().is_err());
        assert!("".parse::<DecoratedWord>().is_err());
        assert!("126".parse::<DecoratedWord>().is_err());
        assert_eq!(dw("1^2 2^1"), dw("21"));
    }

    #[test]
    fn rotation_equality() {
        assert_eq!(dw("1232"), dw("2321"));
        assert_ne!(dw("1232"), dw("1212"));
        // Brute-force oracle for the least rotation.
        let words: [&[u8]; 5] = [&[2, 1, 2, 1], &[3, 1, 2], &[1, 1, 1], &[5, 4, 3, 4, 3, 2, 1, 2], &[0]];
        for s in words {
            let best = (0..s.len())
                .map(|k| s[k..].iter().chain(&s[..k]).copied().collect::<Vec<_>>())
                .min()
                .unwrap();
            let k = least_rotation(s);
            let got: Vec<u8> = s[k..].iter().chain(&s[..k]).copied().collect();
            assert_eq!(got, best);
        }
    }

    #[test]
    fn generated_words_to_depth_six() {
        for node in enumerate_tree(6) {
            for which in Cylinder::BOTH {
                let s = sequence_for(&node.word, which);
                assert!(DecoratedWord::from_arrows(s.arrows().to_vec()).is_ok());
                assert!(palindrome_checks(&s).all(), "{} {which}", node.word);
                assert!(arrows_paired(&s));
                let c = counts(&s);
                assert!(c.as_array().iter().all(|x| x % 2 == 0));
                assert_eq!(c.total() as usize, s.len());
                assert_eq!(s.len() as u128, combinatorial_period(&node, which));
                if which == Cylinder::Short {
                    let k = node.coeffs;
                    assert_eq!(c, ArrowCounts::new(2 * k.a, 2 * k.b, 2 * k.c, 2 * k.d));
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn counts_are_a_homomorphism(
            digits in proptest::collection::vec(0u8..4, 0..7),
            long in any::<bool>(),
            i in 0u8..4,
        ) {
            let which = if long { Cylinder::Long } else { Cylinder::Short };
            let s = sequence_for(&TreeWord::new(digits).unwrap(), which);
            prop_assert_eq!(counts(&substitute(i, &s)), counts_transform(i, counts(&s)));
        }
    }
}
