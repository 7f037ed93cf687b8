//! Exact arithmetic in `Q[√5]`, written in the basis `{1, φ}`.
//!
//! A [`GoldenNum`] is stored as `(p + q·φ) / den` with integer `p`, `q`, a
//! positive `den`, and `gcd(p, q, den) = 1`.  Every operation re-establishes
//! this form, so equality and hashing are structural.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// The golden ratio as a float, used only for the real embedding.
pub const PHI_F64: f64 = 1.618_033_988_749_895;

/// An exact element `p + q·φ` of `Q[√5]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GoldenNum {
    p: BigInt,
    q: BigInt,
    den: BigInt,
}

impl GoldenNum {
    fn reduced(mut p: BigInt, mut q: BigInt, mut den: BigInt) -> Self {
        if den.is_negative() {
            p = -p;
            q = -q;
            den = -den;
        }
        if !den.is_one() {
            let g = p.gcd(&q).gcd(&den);
            if !g.is_one() && !g.is_zero() {
                p /= &g;
                q /= &g;
                den /= &g;
            }
        }
        if p.is_zero() && q.is_zero() {
            den = BigInt::one();
        }
        GoldenNum { p, q, den }
    }

    /// Builds `p + q·φ` from rational coefficients.
    pub fn new(p: BigRational, q: BigRational) -> Self {
        let den = p.denom().lcm(q.denom());
        let pn = p.numer() * (&den / p.denom());
        let qn = q.numer() * (&den / q.denom());
        Self::reduced(pn, qn, den)
    }

    /// Builds `p + q·φ` from integer coefficients.
    pub fn from_ints(p: i64, q: i64) -> Self {
        GoldenNum {
            p: p.into(),
            q: q.into(),
            den: BigInt::one(),
        }
    }

    /// Builds `(p + q·φ) / den`.
    pub fn from_parts(p: BigInt, q: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(Self::reduced(p, q, den))
    }

    pub fn integer(n: i64) -> Self {
        Self::from_ints(n, 0)
    }

    pub fn rational(r: BigRational) -> Self {
        Self::new(r, BigRational::zero())
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    /// The golden ratio φ, the positive root of `x² = x + 1`.
    pub fn phi() -> Self {
        Self::from_ints(0, 1)
    }

    /// φ̄ = 1/φ = φ − 1.
    pub fn phi_bar() -> Self {
        Self::from_ints(-1, 1)
    }

    /// Rational coefficient of 1.
    pub fn p(&self) -> BigRational {
        BigRational::new(self.p.clone(), self.den.clone())
    }

    /// Rational coefficient of φ.
    pub fn q(&self) -> BigRational {
        BigRational::new(self.q.clone(), self.den.clone())
    }

    /// The integer coefficients `(p, q)` when this is an element of `Z[φ]`.
    pub fn integer_coeffs(&self) -> Option<(&BigInt, &BigInt)> {
        self.den.is_one().then_some((&self.p, &self.q))
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    /// True for elements of the ring `Z[φ]`.
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// Exact sign of the real embedding, as -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        let sp = sign_of(&self.p);
        let sq = sign_of(&self.q);
        if sq == 0 {
            return sp;
        }
        if sp == 0 || sp == sq {
            return sq;
        }
        // Opposite signs: |p| vs |q|·φ is decided by p² + pq − q², whose sign
        // is that of the term carrying p when p > 0 > q.
        let test = &self.p * &self.p + &self.p * &self.q - &self.q * &self.q;
        sign_of(&test) * sp
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Galois conjugate, sending φ to 1 − φ.
    pub fn conj(&self) -> Self {
        GoldenNum {
            p: &self.p + &self.q,
            q: -&self.q,
            den: self.den.clone(),
        }
    }

    /// Field norm `x · conj(x) = p² + pq − q²`.
    pub fn norm(&self) -> BigRational {
        let n = &self.p * &self.p + &self.p * &self.q - &self.q * &self.q;
        BigRational::new(n, &self.den * &self.den)
    }

    /// Multiplicative inverse.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        let n = &self.p * &self.p + &self.p * &self.q - &self.q * &self.q;
        let c = self.conj();
        Ok(Self::reduced(c.p * &self.den, c.q * &self.den, n))
    }

    /// The real embedding as a 64-bit float.
    ///
    /// When `p` and `q` have opposite signs the value is recovered as
    /// `norm / conj`, which avoids catastrophic cancellation.
    pub fn to_f64(&self) -> f64 {
        let sp = sign_of(&self.p);
        let sq = sign_of(&self.q);
        if sp * sq >= 0 {
            ratio_f64(&self.p, &self.den) + ratio_f64(&self.q, &self.den) * PHI_F64
        } else {
            let c = self.conj();
            let cf = ratio_f64(&c.p, &c.den) + ratio_f64(&c.q, &c.den) * PHI_F64;
            self.norm().to_f64().unwrap_or(f64::NAN) / cf
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }
}

fn sign_of(n: &BigInt) -> i8 {
    if n.is_positive() {
        1
    } else if n.is_negative() {
        -1
    } else {
        0
    }
}

fn ratio_f64(n: &BigInt, d: &BigInt) -> f64 {
    if d.is_one() {
        n.to_f64().unwrap_or(f64::NAN)
    } else {
        BigRational::new(n.clone(), d.clone())
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

impl Default for GoldenNum {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for GoldenNum {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

impl From<BigRational> for GoldenNum {
    fn from(r: BigRational) -> Self {
        Self::rational(r)
    }
}

impl PartialOrd for GoldenNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GoldenNum {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl<'a> Add<&'a GoldenNum> for &'a GoldenNum {
    type Output = GoldenNum;
    fn add(self, rhs: &GoldenNum) -> GoldenNum {
        if self.den == rhs.den {
            GoldenNum::reduced(&self.p + &rhs.p, &self.q + &rhs.q, self.den.clone())
        } else {
            GoldenNum::reduced(
                &self.p * &rhs.den + &rhs.p * &self.den,
                &self.q * &rhs.den + &rhs.q * &self.den,
                &self.den * &rhs.den,
            )
        }
    }
}

impl<'a> Sub<&'a GoldenNum> for &'a GoldenNum {
    type Output = GoldenNum;
    fn sub(self, rhs: &GoldenNum) -> GoldenNum {
        if self.den == rhs.den {
            GoldenNum::reduced(&self.p - &rhs.p, &self.q - &rhs.q, self.den.clone())
        } else {
            GoldenNum::reduced(
                &self.p * &rhs.den - &rhs.p * &self.den,
                &self.q * &rhs.den - &rhs.q * &self.den,
                &self.den * &rhs.den,
            )
        }
    }
}

impl<'a> Mul<&'a GoldenNum> for &'a GoldenNum {
    type Output = GoldenNum;
    fn mul(self, rhs: &GoldenNum) -> GoldenNum {
        // (p + qφ)(r + sφ) = pr + qs + (ps + qr + qs)φ
        let qs = &self.q * &rhs.q;
        let p = &self.p * &rhs.p + &qs;
        let q = &self.p * &rhs.q + &self.q * &rhs.p + qs;
        GoldenNum::reduced(p, q, &self.den * &rhs.den)
    }
}

impl<'a> Div<&'a GoldenNum> for &'a GoldenNum {
    type Output = GoldenNum;
    /// Panics on division by zero; use [`GoldenNum::inverse`] for a checked form.
    fn div(self, rhs: &GoldenNum) -> GoldenNum {
        self * &rhs.inverse().expect("division by zero in Q[sqrt 5]")
    }
}

impl Neg for &GoldenNum {
    type Output = GoldenNum;
    fn neg(self) -> GoldenNum {
        GoldenNum {
            p: -&self.p,
            q: -&self.q,
            den: self.den.clone(),
        }
    }
}

impl Neg for GoldenNum {
    type Output = GoldenNum;
    fn neg(self) -> GoldenNum {
        GoldenNum {
            p: -self.p,
            q: -self.q,
            den: self.den,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<GoldenNum> for GoldenNum {
            type Output = GoldenNum;
            fn $m(self, rhs: GoldenNum) -> GoldenNum { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a GoldenNum> for GoldenNum {
            type Output = GoldenNum;
            fn $m(self, rhs: &GoldenNum) -> GoldenNum { (&self).$m(rhs) }
        }
        impl<'a> $tr<GoldenNum> for &'a GoldenNum {
            type Output = GoldenNum;
            fn $m(self, rhs: GoldenNum) -> GoldenNum { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&GoldenNum> for GoldenNum {
    fn add_assign(&mut self, rhs: &GoldenNum) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&GoldenNum> for GoldenNum {
    fn sub_assign(&mut self, rhs: &GoldenNum) {
        *self = &*self - rhs;
    }
}

impl fmt::Display for GoldenNum {
    /// Canonical text form `p+q*phi`, e.g. `4+4*phi`, `1/2+0*phi`, `-1-2*phi`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.q();
        if q.is_negative() {
            write!(f, "{}-{}*phi", self.p(), -q)
        } else {
            write!(f, "{}+{}*phi", self.p(), q)
        }
    }
}

impl fmt::Debug for GoldenNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for GoldenNum {
    type Err = Error;

    /// Parses `p+q*phi` and the usual shorthands: `3`, `phi`, `-2*phi`,
    /// `1/2-phi`, `3/4*phi+1`.  Whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a golden number: {s:?}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        // Split into signed terms at every '+'/'-' not at the start and not
        // following another operator or an exponent-free slash.
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = t.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'+' | b'-' | b'*' | b'/') {
                terms.push(&t[start..i]);
                start = i;
            }
        }
        terms.push(&t[start..]);
        if terms.len() > 2 {
            return Err(bad());
        }
        let mut p = BigRational::zero();
        let mut q = BigRational::zero();
        let mut seen_p = false;
        let mut seen_q = false;
        for term in terms {
            let term = term.strip_prefix('+').unwrap_or(term);
            if let Some(coeff) = term.strip_suffix("phi") {
                if seen_q {
                    return Err(bad());
                }
                seen_q = true;
                q = match coeff {
                    "" => BigRational::one(),
                    "-" => -BigRational::one(),
                    c => parse_rational(c.strip_suffix('*').ok_or_else(bad)?).ok_or_else(bad)?,
                };
            } else {
                if seen_p {
                    return Err(bad());
                }
                seen_p = true;
                p = parse_rational(term).ok_or_else(bad)?;
            }
        }
        Ok(GoldenNum::new(p, q))
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    if s.is_empty() || s.contains('+') {
        return None;
    }
    let r = BigRational::from_str(s).ok()?;
    Some(r)
}

impl Serialize for GoldenNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GoldenNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A vector with exact `Q[√5]` coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct GVec2 {
    pub x: GoldenNum,
    pub y: GoldenNum,
}

impl GVec2 {
    pub fn new(x: GoldenNum, y: GoldenNum) -> Self {
        GVec2 { x, y }
    }

    pub fn from_ints(x: (i64, i64), y: (i64, i64)) -> Self {
        GVec2::new(GoldenNum::from_ints(x.0, x.1), GoldenNum::from_ints(y.0, y.1))
    }

    pub fn zero() -> Self {
        GVec2::default()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn scale(&self, s: &GoldenNum) -> GVec2 {
        GVec2::new(&self.x * s, &self.y * s)
    }

    /// The 2-D cross product `self.x·other.y − self.y·other.x`.
    pub fn cross(&self, other: &GVec2) -> GoldenNum {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &GVec2) -> GoldenNum {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn swapped(&self) -> GVec2 {
        GVec2::new(self.y.clone(), self.x.clone())
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl Add<&GVec2> for &GVec2 {
    type Output = GVec2;
    fn add(self, rhs: &GVec2) -> GVec2 {
        GVec2::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Sub<&GVec2> for &GVec2 {
    type Output = GVec2;
    fn sub(self, rhs: &GVec2) -> GVec2 {
        GVec2::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Neg for &GVec2 {
    type Output = GVec2;
    fn neg(self) -> GVec2 {
        GVec2::new(-&self.x, -&self.y)
    }
}

impl fmt::Display for GVec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.x, self.y)
    }
}

impl fmt::Debug for GVec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A 2×2 matrix `[[m00, m01], [m10, m11]]` acting on column vectors.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GMat2 {
    pub m00: GoldenNum,
    pub m01: GoldenNum,
    pub m10: GoldenNum,
    pub m11: GoldenNum,
}

impl GMat2 {
    pub fn new(m00: GoldenNum, m01: GoldenNum, m10: GoldenNum, m11: GoldenNum) -> Self {
        GMat2 { m00, m01, m10, m11 }
    }

    /// Builds a matrix from `Z[φ]` entries given as `(p, q)` pairs, row by row.
    pub fn from_ints(rows: [[(i64, i64); 2]; 2]) -> Self {
        let g = |(p, q): (i64, i64)| GoldenNum::from_ints(p, q);
        GMat2::new(g(rows[0][0]), g(rows[0][1]), g(rows[1][0]), g(rows[1][1]))
    }

    pub fn identity() -> Self {
        GMat2::from_ints([[(1, 0), (0, 0)], [(0, 0), (1, 0)]])
    }

    pub fn det(&self) -> GoldenNum {
        &self.m00 * &self.m11 - &self.m01 * &self.m10
    }

    pub fn inverse(&self) -> Result<GMat2> {
        let inv = self
            .det()
            .inverse()
            .map_err(|_| Error::Domain("singular matrix".into()))?;
        Ok(GMat2::new(
            &self.m11 * &inv,
            -(&self.m01 * &inv),
            -(&self.m10 * &inv),
            &self.m00 * &inv,
        ))
    }

    pub fn apply(&self, v: &GVec2) -> GVec2 {
        GVec2::new(
            &self.m00 * &v.x + &self.m01 * &v.y,
            &self.m10 * &v.x + &self.m11 * &v.y,
        )
    }

    pub fn transpose(&self) -> GMat2 {
        GMat2::new(self.m00.clone(), self.m10.clone(), self.m01.clone(), self.m11.clone())
    }
}

impl Mul<&GMat2> for &GMat2 {
    type Output = GMat2;
    fn mul(self, r: &GMat2) -> GMat2 {
        GMat2::new(
            &self.m00 * &r.m00 + &self.m01 * &r.m10,
            &self.m00 * &r.m01 + &self.m01 * &r.m11,
            &self.m10 * &r.m00 + &self.m11 * &r.m10,
            &self.m10 * &r.m01 + &self.m11 * &r.m11,
        )
    }
}

impl fmt::Debug for GMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.m00, self.m01, self.m10, self.m11)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(p: i64, q: i64) -> GoldenNum {
        GoldenNum::from_ints(p, q)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Independent oracle: the real embedding computed from scratch.
    fn embed(p: f64, q: f64) -> f64 {
        p + q * (1.0 + 5f64.sqrt()) / 2.0
    }

    #[test]
    fn add_examples() {
        assert_eq!(g(1, 0) + g(0, 1), g(1, 1));
        let sqrt5 = GoldenNum::phi() + GoldenNum::phi_bar();
        assert_eq!(sqrt5, g(-1, 2));
        assert!((sqrt5.to_f64() - 5f64.sqrt()).abs() < 1e-12);
        assert!((g(2, 3) + g(-2, -3)).is_zero());
    }

    #[test]
    fn mul_examples() {
        let phi = GoldenNum::phi();
        assert_eq!(&phi * &phi, g(1, 1));
        assert_eq!(&phi * &GoldenNum::phi_bar(), GoldenNum::one());
        let x = g(1, 1) * g(1, 1);
        assert_eq!(x, g(2, 3));
        assert!((x.to_f64() - embed(1.0, 1.0).powi(2)).abs() < 1e-12);
    }

    #[test]
    fn sign_examples() {
        assert_eq!(GoldenNum::zero().signum(), 0);
        assert_eq!(g(-1, 1).signum(), 1);
        assert_eq!(g(5, -3).signum(), 1);
        assert_eq!(g(-5, 3).signum(), -1);
        assert_eq!(g(2, -2).signum(), -1);
        assert_eq!(g(0, -4).signum(), -1);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(GoldenNum::phi().inverse().unwrap(), GoldenNum::phi_bar());
        assert_eq!(GoldenNum::one().inverse().unwrap(), GoldenNum::one());
        let x = g(2, 1);
        let inv = x.inverse().unwrap();
        assert_eq!(&x * &inv, GoldenNum::one());
        // (2 + φ)(3 − φ)/5 = (6 − 2φ + 3φ − φ²)/5 = (5 + 0φ)/5
        assert_eq!(inv, GoldenNum::new(rat(3, 5), rat(-1, 5)));
        assert!(GoldenNum::zero().inverse().is_err());
    }

    #[test]
    fn phi_bar_identities() {
        let pb = GoldenNum::phi_bar();
        assert_eq!(&pb * &pb, GoldenNum::one() - &pb);
    }

    #[test]
    fn text_round_trip() {
        assert_eq!(g(4, 4).to_string(), "4+4*phi");
        assert_eq!(GoldenNum::rational(rat(1, 2)).to_string(), "1/2+0*phi");
        assert_eq!(g(-1, -2).to_string(), "-1-2*phi");
        for s in ["4+4*phi", "1/2+0*phi", "-1-2*phi", "-3/7+5/2*phi"] {
            assert_eq!(s.parse::<GoldenNum>().unwrap().to_string(), s);
        }
        assert_eq!("phi".parse::<GoldenNum>().unwrap(), GoldenNum::phi());
        assert_eq!("-phi".parse::<GoldenNum>().unwrap(), g(0, -1));
        assert_eq!("3".parse::<GoldenNum>().unwrap(), g(3, 0));
        assert_eq!("2*phi+1".parse::<GoldenNum>().unwrap(), g(1, 2));
        assert_eq!("1 - phi".parse::<GoldenNum>().unwrap(), g(1, -1));
        for bad in ["", "phi*2", "1+2+phi", "x", "1/0", "2phi"] {
            assert!(bad.parse::<GoldenNum>().is_err(), "{bad}");
        }
    }

    #[test]
    fn ordering_is_numeric() {
        let mut v = vec![g(5, -3), g(0, 1), g(1, 0), g(-1, 0), g(2, -1)];
        v.sort();
        let f: Vec<f64> = v.iter().map(GoldenNum::to_f64).collect();
        assert!(f.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn matrix_inverse_and_det() {
        let m = GMat2::from_ints([[(0, 1), (0, 1)], [(1, 0), (0, 1)]]);
        assert_eq!(m.det(), GoldenNum::one());
        let prod = &m * &m.inverse().unwrap();
        assert_eq!(prod, GMat2::identity());
    }

    fn small_rat() -> impl Strategy<Value = BigRational> {
        (-50i64..50, 1i64..12).prop_map(|(n, d)| rat(n, d))
    }

    fn golden() -> impl Strategy<Value = GoldenNum> {
        (small_rat(), small_rat()).prop_map(|(p, q)| GoldenNum::new(p, q))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn ring_laws(a in golden(), b in golden(), c in golden()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inverse().unwrap(), GoldenNum::one());
            }
        }

        #[test]
        fn text_form_round_trips(a in golden()) {
            prop_assert_eq!(a.to_string().parse::<GoldenNum>().unwrap(), a);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100_000))]

        #[test]
        fn sign_matches_embedding(p in -10_000i64..10_000, q in -10_000i64..10_000) {
            let x = g(p, q);
            let e = embed(p as f64, q as f64);
            if e.abs() > 1e-6 {
                prop_assert_eq!(x.signum() as f64, e.signum());
            }
        }
    }
}
