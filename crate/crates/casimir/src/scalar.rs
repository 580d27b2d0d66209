//! The exact coefficient field `Q(sqrt(3))` and its complexification.
//!
//! Every number appearing in the built-in geometry catalog lives in
//! `Q(sqrt(3))`: rational structure constants, the `sqrt(3)` frame factors of
//! the Stiefel manifold, and the rational evaluations of the Aloff-Wallach
//! eigenvalue formulas. A [`Scalar`] is stored as `rat + root3 * sqrt(3)`
//! with both parts reduced rationals, so equality, ordering and inversion are
//! exact.

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

/// Exact rational numbers with arbitrary precision.
pub type Rat = BigRational;

/// Build a reduced rational from a numerator/denominator pair.
///
/// Panics when `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// An element `rat + root3 * sqrt(3)` of the real quadratic field `Q(sqrt(3))`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    rat: Rat,
    root3: Rat,
}

#[derive(Debug, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero scalar")]
    DivisionByZero,
    #[error("cannot parse {0:?} as a scalar: expected `term (\"+\" term)*` with term `p/q` or `p/q*s3`")]
    Parse(String),
}

impl Scalar {
    pub fn new(rat: Rat, root3: Rat) -> Self {
        Scalar { rat, root3 }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar { rat: Rat::from_integer(BigInt::from(n)), root3: Rat::zero() }
    }

    pub fn from_rat(r: Rat) -> Self {
        Scalar { rat: r, root3: Rat::zero() }
    }

    /// The rational `num/den`.
    pub fn rational(num: i64, den: i64) -> Self {
        Scalar { rat: rat(num, den), root3: Rat::zero() }
    }

    /// The multiple `(num/den) * sqrt(3)`.
    pub fn sqrt3_times(num: i64, den: i64) -> Self {
        Scalar { rat: Rat::zero(), root3: rat(num, den) }
    }

    pub fn sqrt3() -> Self {
        Scalar::sqrt3_times(1, 1)
    }

    pub fn rat_part(&self) -> &Rat {
        &self.rat
    }

    pub fn root3_part(&self) -> &Rat {
        &self.root3
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.root3.is_zero()
    }

    /// True when the `sqrt(3)` component vanishes.
    pub fn is_rational(&self) -> bool {
        self.root3.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rat.is_one() && self.root3.is_zero()
    }

    /// Exact inverse via the field conjugate `rat - root3 * sqrt(3)`.
    pub fn inverse(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        // norm = rat^2 - 3 root3^2 is nonzero for nonzero elements since
        // sqrt(3) is irrational.
        let norm = &self.rat * &self.rat - Rat::from_integer(BigInt::from(3)) * &self.root3 * &self.root3;
        debug_assert!(!norm.is_zero());
        Ok(Scalar { rat: &self.rat / &norm, root3: -(&self.root3 / &norm) })
    }

    pub fn square(&self) -> Scalar {
        self.clone() * self.clone()
    }

    /// Exact sign of the real number `rat + root3 * sqrt(3)`.
    pub fn signum(&self) -> i32 {
        let a = &self.rat;
        let b = &self.root3;
        if b.is_zero() {
            return if a.is_zero() { 0 } else if a.is_positive() { 1 } else { -1 };
        }
        if a.is_zero() {
            return if b.is_positive() { 1 } else { -1 };
        }
        let a_pos = a.is_positive();
        let b_pos = b.is_positive();
        if a_pos && b_pos {
            return 1;
        }
        if !a_pos && !b_pos {
            return -1;
        }
        // Mixed signs: compare a^2 with 3 b^2; the sign of the larger wins.
        let a2 = a * a;
        let b2_3 = Rat::from_integer(BigInt::from(3)) * b * b;
        match a2.cmp(&b2_3) {
            std::cmp::Ordering::Greater => if a_pos { 1 } else { -1 },
            std::cmp::Ordering::Less => if b_pos { 1 } else { -1 },
            std::cmp::Ordering::Equal => 0, // impossible: sqrt(3) irrational
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() { -self.clone() } else { self.clone() }
    }

    pub fn to_f64(&self) -> f64 {
        self.rat.to_f64().unwrap_or(f64::NAN) + self.root3.to_f64().unwrap_or(f64::NAN) * 3.0_f64.sqrt()
    }

    /// Exact square root when the element is the square of a field element of
    /// the form `r` or `r * sqrt(3)`; returns the non-negative root.
    pub fn sqrt_exact(&self) -> Option<Scalar> {
        if self.is_negative() {
            return None;
        }
        if self.root3.is_zero() {
            // Either rat = r^2 or rat = 3 t^2 with root = t sqrt(3).
            if let Some(r) = rational_sqrt(&self.rat) {
                return Some(Scalar::from_rat(r));
            }
            let third = &self.rat / Rat::from_integer(BigInt::from(3));
            if let Some(t) = rational_sqrt(&third) {
                return Some(Scalar::new(Rat::zero(), t));
            }
        }
        None
    }
}

fn rational_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let diff = self.clone() - other.clone();
        match diff.signum() {
            x if x > 0 => std::cmp::Ordering::Greater,
            0 => std::cmp::Ordering::Equal,
            _ => std::cmp::Ordering::Less,
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar { rat: self.rat + rhs.rat, root3: self.root3 + rhs.root3 }
    }
}

impl<'a> Add<&'a Scalar> for Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        Scalar { rat: self.rat + &rhs.rat, root3: self.root3 + &rhs.root3 }
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        self.rat += rhs.rat;
        self.root3 += rhs.root3;
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        Scalar { rat: self.rat - rhs.rat, root3: self.root3 - rhs.root3 }
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        self.rat -= rhs.rat;
        self.root3 -= rhs.root3;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { rat: -self.rat, root3: -self.root3 }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        // (a + b s)(c + d s) = ac + 3bd + (ad + bc) s  with s = sqrt(3)
        let three = Rat::from_integer(BigInt::from(3));
        Scalar {
            rat: &self.rat * &rhs.rat + three * &self.root3 * &rhs.root3,
            root3: &self.rat * &rhs.root3 + &self.root3 * &rhs.rat,
        }
    }
}

impl<'a> Mul<&'a Scalar> for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self * rhs.clone()
    }
}

impl MulAssign for Scalar {
    fn mul_assign(&mut self, rhs: Scalar) {
        *self = self.clone() * rhs;
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        self * rhs.inverse().expect("division by zero scalar")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if !self.rat.is_zero() {
            parts.push(format_rat(&self.rat));
        }
        if !self.root3.is_zero() {
            parts.push(format!("{}*s3", format_rat(&self.root3)));
        }
        write!(f, "{}", parts.join("+"))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ScalarError::Parse(s.to_string()));
        }
        let mut out = Scalar::zero();
        for term in s.split('+') {
            let term = term.trim();
            let (body, is_root3) = match term.strip_suffix("*s3") {
                Some(b) => (b, true),
                None => (term, false),
            };
            let r = parse_rat(body).ok_or_else(|| ScalarError::Parse(s.to_string()))?;
            if is_root3 {
                out.root3 += r;
            } else {
                out.rat += r;
            }
        }
        Ok(out)
    }
}

fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let mut it = body.splitn(2, '/');
    let num: BigInt = it.next()?.trim().parse().ok()?;
    let den: BigInt = match it.next() {
        Some(d) => d.trim().parse().ok()?,
        None => BigInt::one(),
    };
    if den.is_zero() || den.is_negative() {
        return None;
    }
    let r = Rat::new(num, den);
    Some(if neg { -r } else { r })
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Snap a floating point value to a nearby exact scalar.
///
/// Tries small-denominator rationals first, then rational multiples of
/// `sqrt(3)`. Returns `None` when nothing within `tol` is found.
pub fn snap_to_scalar(x: f64, tol: f64) -> Option<Scalar> {
    if let Some(r) = snap_to_rat(x, tol) {
        return Some(Scalar::from_rat(r));
    }
    let s3 = 3.0_f64.sqrt();
    if let Some(r) = snap_to_rat(x / s3, tol / s3) {
        return Some(Scalar::new(Rat::zero(), r));
    }
    None
}

const SNAP_MAX_DEN: i64 = 4096;

fn snap_to_rat(x: f64, tol: f64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    // Continued fraction expansion, truncated at the denominator bound.
    let (mut h0, mut h1): (i128, i128) = (1, x.floor() as i128);
    let (mut k0, mut k1): (i128, i128) = (0, 1);
    let mut frac = x - x.floor();
    for _ in 0..40 {
        let cand = h1 as f64 / k1 as f64;
        if (cand - x).abs() <= tol && k1 <= SNAP_MAX_DEN as i128 {
            return Some(Rat::new(BigInt::from(h1), BigInt::from(k1)));
        }
        if frac.abs() < 1e-15 {
            break;
        }
        let inv = 1.0 / frac;
        let a = inv.floor() as i128;
        frac = inv - inv.floor();
        let h2 = a * h1 + h0;
        let k2 = a * k1 + k0;
        if k2 > SNAP_MAX_DEN as i128 {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
    }
    let cand = h1 as f64 / k1 as f64;
    if (cand - x).abs() <= tol && k1 <= SNAP_MAX_DEN as i128 {
        return Some(Rat::new(BigInt::from(h1), BigInt::from(k1)));
    }
    None
}

/// An element `re + i * im` of `Q(sqrt(3))(i)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ComplexScalar {
    pub re: Scalar,
    pub im: Scalar,
}

impl ComplexScalar {
    pub fn new(re: Scalar, im: Scalar) -> Self {
        ComplexScalar { re, im }
    }

    pub fn zero() -> Self {
        ComplexScalar::default()
    }

    pub fn one() -> Self {
        ComplexScalar { re: Scalar::one(), im: Scalar::zero() }
    }

    pub fn i() -> Self {
        ComplexScalar { re: Scalar::zero(), im: Scalar::one() }
    }

    pub fn from_real(re: Scalar) -> Self {
        ComplexScalar { re, im: Scalar::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        ComplexScalar::from_real(Scalar::from_int(n))
    }

    pub fn conj(&self) -> Self {
        ComplexScalar { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Squared modulus, an exact non-negative scalar.
    pub fn norm_sq(&self) -> Scalar {
        self.re.square() + self.im.square()
    }

    pub fn inverse(&self) -> Result<ComplexScalar, ScalarError> {
        let n = self.norm_sq();
        if n.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let ninv = n.inverse()?;
        Ok(ComplexScalar { re: self.re.clone() * ninv.clone(), im: -(self.im.clone() * ninv) })
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for ComplexScalar {
    type Output = ComplexScalar;
    fn add(self, rhs: ComplexScalar) -> ComplexScalar {
        ComplexScalar { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl AddAssign for ComplexScalar {
    fn add_assign(&mut self, rhs: ComplexScalar) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl Sub for ComplexScalar {
    type Output = ComplexScalar;
    fn sub(self, rhs: ComplexScalar) -> ComplexScalar {
        ComplexScalar { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Neg for ComplexScalar {
    type Output = ComplexScalar;
    fn neg(self) -> ComplexScalar {
        ComplexScalar { re: -self.re, im: -self.im }
    }
}

impl Mul for ComplexScalar {
    type Output = ComplexScalar;
    fn mul(self, rhs: ComplexScalar) -> ComplexScalar {
        ComplexScalar {
            re: self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone(),
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

impl<'a> Mul<&'a ComplexScalar> for ComplexScalar {
    type Output = ComplexScalar;
    fn mul(self, rhs: &'a ComplexScalar) -> ComplexScalar {
        self * rhs.clone()
    }
}

impl fmt::Display for ComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "({})*i", self.im);
        }
        write!(f, "({}) + ({})*i", self.re, self.im)
    }
}

impl fmt::Debug for ComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_arithmetic_is_exact() {
        let a = Scalar::rational(1, 2) + Scalar::sqrt3_times(1, 3);
        let inv = a.inverse().unwrap();
        assert!((a * inv).is_one());
    }

    #[test]
    fn inverse_via_conjugate_matches_definition() {
        let a = Scalar::rational(-7, 5) + Scalar::sqrt3_times(2, 9);
        let b = a.inverse().unwrap();
        assert!((a * b).is_one());
        assert!(Scalar::zero().inverse().is_err());
    }

    #[test]
    fn ordering_handles_mixed_signs() {
        // 2 - sqrt(3) > 0, 5/3 - sqrt(3) < 0
        let x = Scalar::from_int(2) + Scalar::sqrt3_times(-1, 1);
        assert!(x.is_positive());
        let y = Scalar::rational(5, 3) + Scalar::sqrt3_times(-1, 1);
        assert!(y.is_negative());
        assert!(Scalar::sqrt3() > Scalar::rational(173, 100));
        assert!(Scalar::sqrt3() < Scalar::rational(174, 100));
    }

    #[test]
    fn grammar_roundtrip() {
        for s in ["2", "-1/2", "1/2+1/3*s3", "0", "-5/4+-2/7*s3", "1*s3"] {
            let v: Scalar = s.parse().unwrap();
            let printed = v.to_string();
            let v2: Scalar = printed.parse().unwrap();
            assert_eq!(v, v2, "roundtrip failed for {s}");
        }
        let v: Scalar = "1/2+1/3*s3".parse().unwrap();
        assert_eq!(v, Scalar::rational(1, 2) + Scalar::sqrt3_times(1, 3));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("s3*2".parse::<Scalar>().is_err());
    }

    #[test]
    fn snapping_finds_small_rationals_and_sqrt3_multiples() {
        assert_eq!(snap_to_scalar(0.5, 1e-9).unwrap(), Scalar::rational(1, 2));
        assert_eq!(snap_to_scalar(-4.0, 1e-9).unwrap(), Scalar::from_int(-4));
        let x = 1.5 * 3.0_f64.sqrt();
        assert_eq!(snap_to_scalar(x, 1e-9).unwrap(), Scalar::sqrt3_times(3, 2));
        assert!(snap_to_scalar(std::f64::consts::PI, 1e-12).is_none());
    }

    #[test]
    fn sqrt_exact_recognizes_squares() {
        assert_eq!(Scalar::rational(9, 4).sqrt_exact().unwrap(), Scalar::rational(3, 2));
        let q = Scalar::rational(64, 3); // (8/3 sqrt(3))^2
        assert_eq!(q.sqrt_exact().unwrap(), Scalar::sqrt3_times(8, 3));
        assert!(Scalar::from_int(2).sqrt_exact().is_none());
    }

    #[test]
    fn complex_arithmetic() {
        let z = ComplexScalar::new(Scalar::from_int(3), Scalar::from_int(4));
        assert_eq!(z.norm_sq(), Scalar::from_int(25));
        let w = z.inverse().unwrap();
        assert_eq!(z * w, ComplexScalar::one());
        let i = ComplexScalar::i();
        assert_eq!(i.clone() * i, ComplexScalar::from_int(-1));
    }
}
