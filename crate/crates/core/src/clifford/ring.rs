//! Scalar rings for multivector coefficients.
//!
//! Two rings are provided: [`ExactRoot2`], the field ℚ(√2) with exact rational
//! coefficients, and plain `f64`. The only irrational introduced by the null
//! constructions is 1/√2, so ℚ(√2) is closed under everything the algebra
//! layer needs.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = Ratio<i128>;

/// Coefficient ring for [`Multivector`](super::Multivector).
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// True for rings whose arithmetic is exact, where only literal zero counts as zero.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn frac_1_sqrt_2() -> Self;
    fn is_zero(&self) -> bool;
    fn to_f64(&self) -> f64;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }
}

impl Ring for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn frac_1_sqrt_2() -> Self {
        std::f64::consts::FRAC_1_SQRT_2
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

/// An element `a + b·√2` of ℚ(√2).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExactRoot2 {
    pub a: Rational,
    pub b: Rational,
}

impl ExactRoot2 {
    pub fn new(a: Rational, b: Rational) -> Self {
        Self { a, b }
    }

    pub fn rational(a: Rational) -> Self {
        Self { a, b: Rational::zero() }
    }

    pub fn sqrt2() -> Self {
        Self { a: Rational::zero(), b: Rational::one() }
    }

    /// Galois conjugate `a - b√2`.
    pub fn conjugate(&self) -> Self {
        Self { a: self.a, b: -self.b }
    }

    /// Field norm `a² - 2b²`.
    pub fn norm(&self) -> Rational {
        self.a * self.a - Rational::from_integer(2) * self.b * self.b
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conjugate();
        Some(Self { a: c.a / n, b: c.b / n })
    }
}

impl Add for ExactRoot2 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl Sub for ExactRoot2 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl Mul for ExactRoot2 {
    type Output = Self;
    // (a + b√2)(c + d√2) = (ac + 2bd) + (ad + bc)√2
    fn mul(self, rhs: Self) -> Self {
        let two = Rational::from_integer(2);
        Self { a: self.a * rhs.a + two * self.b * rhs.b, b: self.a * rhs.b + self.b * rhs.a }
    }
}

impl Neg for ExactRoot2 {
    type Output = Self;
    fn neg(self) -> Self {
        Self { a: -self.a, b: -self.b }
    }
}

impl Ring for ExactRoot2 {
    const EXACT: bool = true;

    fn zero() -> Self {
        Self { a: Rational::zero(), b: Rational::zero() }
    }
    fn one() -> Self {
        Self::rational(Rational::one())
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::rational(Rational::new(num as i128, den as i128))
    }
    fn frac_1_sqrt_2() -> Self {
        Self { a: Rational::zero(), b: Rational::new(1, 2) }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * std::f64::consts::SQRT_2
    }
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for ExactRoot2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => fmt_rational(&self.a, f),
            (true, false) => {
                fmt_rational(&self.b, f)?;
                write!(f, "√2")
            }
            (false, false) => {
                write!(f, "(")?;
                fmt_rational(&self.a, f)?;
                if self.b.is_negative() {
                    write!(f, " - ")?;
                    fmt_rational(&self.b.abs(), f)?;
                } else {
                    write!(f, " + ")?;
                    fmt_rational(&self.b, f)?;
                }
                write!(f, "√2)")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn product_rule_matches_closed_form() {
        let x = ExactRoot2::new(q(1, 2), q(3, 1));
        let y = ExactRoot2::new(q(-2, 1), q(1, 3));
        // ac + 2bd = -1 + 2, ad + bc = 1/6 - 6
        assert_eq!(x * y, ExactRoot2::new(q(1, 1), q(1, 6) - q(6, 1)));
    }

    #[test]
    fn half_sqrt2_squares_to_half() {
        let h = ExactRoot2::frac_1_sqrt_2();
        assert_eq!(h.clone() * h, ExactRoot2::from_ratio(1, 2));
    }

    #[test]
    fn inverse_round_trips() {
        let x = ExactRoot2::new(q(3, 1), q(-1, 2));
        assert_eq!(x.clone() * x.inverse().unwrap(), ExactRoot2::one());
        assert!(ExactRoot2::zero().inverse().is_none());
    }

    #[test]
    fn display_forms() {
        assert_eq!(ExactRoot2::from_ratio(-3, 4).to_string(), "-3/4");
        assert_eq!(ExactRoot2::frac_1_sqrt_2().to_string(), "1/2√2");
        assert_eq!(ExactRoot2::new(q(1, 1), q(-1, 1)).to_string(), "(1 - 1√2)");
    }
}
