//! Forward-mode automatic differentiation.
//!
//! [`Dual`] carries one directional derivative and nests: `Dual<Dual<f64>>`
//! yields a mixed second derivative, `Dual<Dual<Dual<f64>>>` a third. The
//! geometry code is written once, generic over [`Real`], and differentiated
//! by re-running it on seeded duals.
//!
//! [`Jet2`] is a second-order truncated Taylor number in three variables
//! (value, gradient, symmetric Hessian) used for chart jets.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub trait Real:
    Copy
    + Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Mul<f64, Output = Self>
    + Add<f64, Output = Self>
{
    fn cst(x: f64) -> Self;
    /// The underlying `f64` value with all derivative parts dropped.
    fn value(&self) -> f64;
    fn sqrt(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn exp(self) -> Self;
    fn powi(self, n: i32) -> Self;
    /// True when the value and every derivative part are finite.
    fn all_finite(&self) -> bool;

    fn zero() -> Self {
        Self::cst(0.0)
    }
    fn one() -> Self {
        Self::cst(1.0)
    }
}

impl Real for f64 {
    fn cst(x: f64) -> Self {
        x
    }
    fn value(&self) -> f64 {
        *self
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn powi(self, n: i32) -> Self {
        f64::powi(self, n)
    }
    fn all_finite(&self) -> bool {
        self.is_finite()
    }
}

/// `re + eps·ε` with `ε² = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual<T> {
    pub re: T,
    pub eps: T,
}

impl<T: Real> Dual<T> {
    pub fn new(re: T, eps: T) -> Self {
        Self { re, eps }
    }

    pub fn constant(re: T) -> Self {
        Self { re, eps: T::zero() }
    }

    pub fn variable(re: T) -> Self {
        Self { re, eps: T::one() }
    }
}

impl<T: Real> Add for Dual<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.eps + o.eps)
    }
}

impl<T: Real> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.eps - o.eps)
    }
}

impl<T: Real> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(self.re * o.re, self.re * o.eps + self.eps * o.re)
    }
}

impl<T: Real> Div for Dual<T> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let q = self.re / o.re;
        Self::new(q, (self.eps - q * o.eps) / o.re)
    }
}

impl<T: Real> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.eps)
    }
}

impl<T: Real> Mul<f64> for Dual<T> {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        Self::new(self.re * k, self.eps * k)
    }
}

impl<T: Real> Add<f64> for Dual<T> {
    type Output = Self;
    fn add(self, k: f64) -> Self {
        Self::new(self.re + k, self.eps)
    }
}

impl<T: Real> Real for Dual<T> {
    fn cst(x: f64) -> Self {
        Self::constant(T::cst(x))
    }
    fn value(&self) -> f64 {
        self.re.value()
    }
    fn sqrt(self) -> Self {
        let s = self.re.sqrt();
        Self::new(s, self.eps / (s * 2.0))
    }
    fn sin(self) -> Self {
        Self::new(self.re.sin(), self.eps * self.re.cos())
    }
    fn cos(self) -> Self {
        Self::new(self.re.cos(), -(self.eps * self.re.sin()))
    }
    fn exp(self) -> Self {
        let e = self.re.exp();
        Self::new(e, self.eps * e)
    }
    fn powi(self, n: i32) -> Self {
        match n {
            0 => Self::one(),
            _ => Self::new(self.re.powi(n), self.eps * self.re.powi(n - 1) * n as f64),
        }
    }
    fn all_finite(&self) -> bool {
        self.re.all_finite() && self.eps.all_finite()
    }
}

/// Seeds `point + t·dir` as duals: derivatives of anything computed from the
/// result are directional derivatives along `dir`.
pub fn seed<T: Real, const N: usize>(point: &[T; N], dir: &[T; N]) -> [Dual<T>; N] {
    std::array::from_fn(|i| Dual::new(point[i], dir[i]))
}

pub fn lift<T: Real, const N: usize>(point: &[T; N]) -> [Dual<T>; N] {
    std::array::from_fn(|i| Dual::constant(point[i]))
}

pub fn values<T: Real, const N: usize>(v: &[Dual<T>; N]) -> [T; N] {
    std::array::from_fn(|i| v[i].re)
}

pub fn derivs<T: Real, const N: usize>(v: &[Dual<T>; N]) -> [T; N] {
    std::array::from_fn(|i| v[i].eps)
}

/// Packed upper triangle of a symmetric 3×3 matrix.
const fn hidx(i: usize, j: usize) -> usize {
    let (a, b) = if i <= j { (i, j) } else { (j, i) };
    match (a, b) {
        (0, 0) => 0,
        (0, 1) => 1,
        (0, 2) => 2,
        (1, 1) => 3,
        (1, 2) => 4,
        _ => 5,
    }
}

/// Value, gradient and Hessian of a scalar function of three variables.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet2 {
    pub v: f64,
    pub g: [f64; 3],
    h: [f64; 6],
}

impl Jet2 {
    pub fn constant(v: f64) -> Self {
        Self { v, g: [0.0; 3], h: [0.0; 6] }
    }

    /// The `i`-th coordinate function evaluated at `v`.
    pub fn variable(i: usize, v: f64) -> Self {
        let mut g = [0.0; 3];
        g[i] = 1.0;
        Self { v, g, h: [0.0; 6] }
    }

    pub fn hess(&self, i: usize, j: usize) -> f64 {
        self.h[hidx(i, j)]
    }

    pub fn hessian(&self) -> [[f64; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.hess(i, j)))
    }

    /// Chain rule through a scalar function with derivatives `d1`, `d2` at `v`.
    fn chain(&self, f: f64, d1: f64, d2: f64) -> Self {
        let g = self.g.map(|x| d1 * x);
        let mut h = [0.0; 6];
        for i in 0..3 {
            for j in i..3 {
                let k = hidx(i, j);
                h[k] = d1 * self.h[k] + d2 * self.g[i] * self.g[j];
            }
        }
        Self { v: f, g, h }
    }
}

impl Add for Jet2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self {
            v: self.v + o.v,
            g: std::array::from_fn(|i| self.g[i] + o.g[i]),
            h: std::array::from_fn(|i| self.h[i] + o.h[i]),
        }
    }
}

impl Sub for Jet2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for Jet2 {
    type Output = Self;
    fn neg(self) -> Self {
        Self { v: -self.v, g: self.g.map(|x| -x), h: self.h.map(|x| -x) }
    }
}

impl Mul for Jet2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut h = [0.0; 6];
        for i in 0..3 {
            for j in i..3 {
                let k = hidx(i, j);
                h[k] = self.v * o.h[k] + self.h[k] * o.v + self.g[i] * o.g[j] + self.g[j] * o.g[i];
            }
        }
        Self { v: self.v * o.v, g: std::array::from_fn(|i| self.v * o.g[i] + self.g[i] * o.v), h }
    }
}

impl Div for Jet2 {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let v = o.v;
        self * o.chain(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v))
    }
}

impl Mul<f64> for Jet2 {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        Self { v: self.v * k, g: self.g.map(|x| x * k), h: self.h.map(|x| x * k) }
    }
}

impl Add<f64> for Jet2 {
    type Output = Self;
    fn add(self, k: f64) -> Self {
        Self { v: self.v + k, ..self }
    }
}

impl Real for Jet2 {
    fn cst(x: f64) -> Self {
        Self::constant(x)
    }
    fn value(&self) -> f64 {
        self.v
    }
    fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        self.chain(s, 0.5 / s, -0.25 / (s * self.v))
    }
    fn sin(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.chain(s, c, -s)
    }
    fn cos(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.chain(c, -s, -c)
    }
    fn exp(self) -> Self {
        let e = self.v.exp();
        self.chain(e, e, e)
    }
    fn powi(self, n: i32) -> Self {
        match n {
            0 => Self::constant(1.0),
            1 => self,
            _ => {
                let nf = n as f64;
                self.chain(self.v.powi(n), nf * self.v.powi(n - 1), nf * (nf - 1.0) * self.v.powi(n - 2))
            }
        }
    }
    fn all_finite(&self) -> bool {
        self.v.is_finite() && self.g.iter().chain(&self.h).all(|x| x.is_finite())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f<T: Real>(x: T, y: T, z: T) -> T {
        (x * y).sin() + (z * z + 1.0).sqrt() / (x + 3.0) - (y * 0.5).exp() * z.powi(3)
    }

    #[test]
    fn dual_matches_jet2_gradient_and_hessian() {
        let p = [0.3, -0.7, 1.1];
        let j = f(Jet2::variable(0, p[0]), Jet2::variable(1, p[1]), Jet2::variable(2, p[2]));
        for a in 0..3 {
            for b in 0..3 {
                let mut da = [0.0; 3];
                da[a] = 1.0;
                let mut db = [0.0; 3];
                db[b] = 1.0;
                let inner: [Dual<f64>; 3] = seed(&p, &db);
                let outer: [Dual<Dual<f64>>; 3] = seed(&inner, &lift(&da).map(|d| d));
                let r = f(outer[0], outer[1], outer[2]);
                assert!((r.re.eps - j.g[b]).abs() < 1e-13);
                assert!((r.eps.eps - j.hess(a, b)).abs() < 1e-12, "{a}{b}");
            }
        }
    }

    #[test]
    fn dual_sqrt_at_zero_is_not_finite() {
        let d = Dual::variable(0.0f64).sqrt();
        assert!(!d.all_finite());
        assert!(f64::cst(0.0).sqrt().all_finite());
    }

    #[test]
    fn powi_zero_and_negative() {
        let x = Dual::variable(2.0f64);
        assert_eq!(x.powi(0), Dual::constant(1.0));
        let r = x.powi(-2);
        assert!((r.re - 0.25).abs() < 1e-15);
        assert!((r.eps + 0.25).abs() < 1e-15);
    }
}
