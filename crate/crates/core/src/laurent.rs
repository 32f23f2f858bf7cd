//! Exact arithmetic in `Z[v, v^-1]` with `v = q^{1/2}`.
//!
//! Everything on the Hecke side has coefficients here. Polynomials are kept
//! dense between their lowest and highest nonzero exponent, which is the
//! common shape for Kazhdan–Lusztig data (short, gap-free runs of exponents).
//! Coefficients are `i64` with checked arithmetic: an overflow panics rather
//! than wrapping.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[inline]
pub(crate) fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("integer coefficient overflow")
}

#[inline]
pub(crate) fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("integer coefficient overflow")
}

/// An element of `Z[v, v^-1]`.
///
/// `coeffs[i]` is the coefficient of `v^(low + i)`. The canonical form has no
/// zero at either end of `coeffs`; the zero polynomial is `coeffs = []`,
/// `low = 0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * v^exp`.
    pub fn monomial(c: i64, exp: i32) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            low: exp,
            coeffs: vec![c],
        }
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `v = q^{1/2}`.
    pub fn v() -> Self {
        Self::monomial(1, 1)
    }

    /// `q = v^2`.
    pub fn q() -> Self {
        Self::monomial(1, 2)
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let terms: Vec<(i32, i64)> = terms.into_iter().collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let low = terms.iter().map(|t| t.0).min().unwrap();
        let high = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![0i64; (high - low + 1) as usize];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - low) as usize];
            *slot = checked_add(*slot, c);
        }
        Self::normalized(low, coeffs)
    }

    fn normalized(mut low: i32, mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|&&c| c == 0).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        if lead > 0 {
            coeffs.drain(..lead);
            low += lead as i32;
        }
        Self { low, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs == [1]
    }

    /// Lowest exponent with a nonzero coefficient, `None` for zero.
    pub fn min_exp(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent with a nonzero coefficient, `None` for zero.
    pub fn max_exp(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    /// Coefficient of `v^exp` (zero when absent).
    pub fn coefficient_of(&self, exp: i32) -> i64 {
        let i = exp as i64 - self.low as i64;
        if i < 0 || i >= self.coeffs.len() as i64 {
            0
        } else {
            self.coeffs[i as usize]
        }
    }

    /// Nonzero `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (self.low + i as i32, c))
    }

    /// The bar involution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let high = self.max_exp().unwrap();
        let coeffs: Vec<i64> = self.coeffs.iter().rev().copied().collect();
        Self { low: -high, coeffs }
    }

    /// Membership in `A^+ = Z[v]`: every exponent is nonnegative.
    pub fn in_a_plus(&self) -> bool {
        self.is_zero() || self.low >= 0
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            low: self.low,
            coeffs: self.coeffs.iter().map(|&x| checked_mul(x, c)).collect(),
        }
    }

    /// `self += c * v^k * other`, the inner loop of every Hecke product.
    pub fn add_scaled_shifted(&mut self, other: &Self, c: i64, k: i32) {
        if other.is_zero() || c == 0 {
            return;
        }
        if self.is_zero() {
            *self = other.shift(k).scale(c);
            return;
        }
        let o_low = other.low + k;
        let o_high = o_low + other.coeffs.len() as i32 - 1;
        let s_high = self.low + self.coeffs.len() as i32 - 1;
        let new_low = self.low.min(o_low);
        let new_high = s_high.max(o_high);
        if new_low < self.low {
            let pad = (self.low - new_low) as usize;
            self.coeffs.splice(0..0, std::iter::repeat_n(0, pad));
            self.low = new_low;
        }
        let len = (new_high - self.low + 1) as usize;
        if self.coeffs.len() < len {
            self.coeffs.resize(len, 0);
        }
        let off = (o_low - self.low) as usize;
        for (i, &x) in other.coeffs.iter().enumerate() {
            let slot = &mut self.coeffs[off + i];
            *slot = checked_add(*slot, checked_mul(c, x));
        }
        let tmp = std::mem::take(&mut self.coeffs);
        *self = Self::normalized(self.low, tmp);
    }

    /// `self += a * b` without allocating the intermediate product.
    pub fn add_product(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        if a.coeffs.len() == 1 {
            self.add_scaled_shifted(b, a.coeffs[0], a.low);
        } else if b.coeffs.len() == 1 {
            self.add_scaled_shifted(a, b.coeffs[0], b.low);
        } else {
            let p = a * b;
            *self += &p;
        }
    }

    /// Substitutes `q -> q^-1` in an ordinary polynomial in `q` given by its
    /// coefficient list, and multiplies by `v^shift`.
    pub fn from_q_poly_inverted(q_coeffs: &[i64], shift: i32) -> Self {
        Self::from_terms(
            q_coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (shift - 2 * i as i32, c)),
        )
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self)
    }
}

/// `3*v^-1 + 2 - v^4`: ascending exponents, zero coefficients omitted.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms().enumerate() {
            let mag = c.unsigned_abs();
            if n == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (e, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "v")?,
                (1, m) => write!(f, "{m}*v")?,
                (e, 1) => write!(f, "v^{e}")?,
                (e, m) => write!(f, "{m}*v^{e}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid Laurent polynomial: {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        // Split into signed terms at '+'/'-' that are not part of an exponent.
        let mut terms = Vec::new();
        let mut cur = String::new();
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && prev.is_some() && prev != Some('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
            prev = Some(ch);
        }
        terms.push(cur);
        let mut out = Vec::new();
        for t in terms {
            let (sign, body) = match t.strip_prefix('-') {
                Some(rest) => (-1i64, rest),
                None => (1i64, t.strip_prefix('+').unwrap_or(&t)),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let (coef, var) = match body.find('v') {
                None => (body, None),
                Some(i) => {
                    let c = body[..i].strip_suffix('*').unwrap_or(&body[..i]);
                    (c, Some(&body[i + 1..]))
                }
            };
            let c: i64 = if coef.is_empty() {
                1
            } else {
                coef.parse().map_err(|_| bad())?
            };
            let e: i32 = match var {
                None => 0,
                Some("") => 1,
                Some(rest) => rest
                    .strip_prefix('^')
                    .ok_or_else(bad)?
                    .parse()
                    .map_err(|_| bad())?,
            };
            out.push((e, sign * c));
        }
        Ok(Self::from_terms(out))
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary but total, so polynomials can key ordered maps.
impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.low
            .cmp(&other.low)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.add_scaled_shifted(rhs, 1, 0);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        self.add_scaled_shifted(rhs, -1, 0);
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = checked_add(coeffs[i + j], checked_mul(a, b));
            }
        }
        LaurentPoly::normalized(self.low + rhs.low, coeffs)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(
            &LaurentPoly::v() + &LaurentPoly::monomial(1, -1),
            p("v^-1 + v")
        );
        let x = p("3*v^-2 + v");
        assert_eq!(&x + &LaurentPoly::zero(), x);
        let s = &p("1 + v") + &p("-1 - v");
        assert!(s.is_zero());
        assert_eq!(s.terms().count(), 0);
        assert_eq!(s, LaurentPoly::zero());
    }

    #[test]
    fn mul_examples() {
        assert!((&LaurentPoly::v() * &LaurentPoly::monomial(1, -1)).is_one());
        let a = p("v + v^-1");
        assert_eq!(&a * &a, p("v^-2 + 2 + v^2"));
        assert!((&a * &LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn bar_and_a_plus() {
        assert_eq!(p("v^2").bar(), p("v^-2"));
        assert_eq!(p("1 + v").bar(), p("1 + v^-1"));
        assert!(p("1 + v^3").in_a_plus());
        assert!(!p("v^-1").in_a_plus());
        assert!(LaurentPoly::zero().in_a_plus());
    }

    #[test]
    fn coefficient_extraction() {
        let x = p("3*v^-1 + 2");
        assert_eq!(x.coefficient_of(-1), 3);
        assert_eq!(x.coefficient_of(5), 0);
        assert_eq!(p("v + v^-1").coefficient_of(1), 1);
    }

    #[test]
    fn text_form() {
        assert_eq!(p("3*v^-1 + 2 + v^4").to_string(), "3*v^-1 + 2 + v^4");
        assert_eq!(p("-v^-1 + 2 - 5*v").to_string(), "-v^-1 + 2 - 5*v");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert!("v^".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_is_fatal() {
        let big = LaurentPoly::constant(i64::MAX);
        let _ = &big + &LaurentPoly::one();
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-6i32..6, -9i64..9), 0..6).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn bar_is_ring_involution(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
            prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
            prop_assert_eq!(a.bar().bar(), a);
        }

        #[test]
        fn a_plus_closed(a in arb_poly(), b in arb_poly()) {
            let (a, b) = (a.shift(6), b.shift(6));
            prop_assert!(a.in_a_plus() && b.in_a_plus());
            prop_assert!((&a + &b).in_a_plus());
            prop_assert!((&a * &b).in_a_plus());
        }

        #[test]
        fn text_round_trip(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
        }
    }
}
