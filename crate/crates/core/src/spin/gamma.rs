//! Gamma matrices and spinors for Cℓ(3,1).
//!
//! Cℓ(3,1) under `v·v = -Q(v)` has three generators squaring to `-1` and one
//! squaring to `+1`; that algebra is M₂(ℍ), which has no real 4×4
//! representation. Spinors therefore live in ℂ⁴ and the gamma matrices have
//! entries in {0, ±1, ±i}, so every product of them is exact in `f64`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::ad::Real;
use crate::clifford::{CliffordError, ExactRoot2, Multivector, Ring, Signature};

/// Complex number over a [`Real`] scalar.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cx<S> {
    pub re: S,
    pub im: S,
}

impl<S: Real> Cx<S> {
    pub fn new(re: S, im: S) -> Self {
        Self { re, im }
    }

    pub fn real(re: S) -> Self {
        Self { re, im: S::zero() }
    }

    pub fn zero() -> Self {
        Self::real(S::zero())
    }

    /// Product with an `f64` complex constant.
    pub fn mul_c(self, k: Cx<f64>) -> Self {
        Self::new(self.re * k.re - self.im * k.im, self.re * k.im + self.im * k.re)
    }

    pub fn scale(self, k: S) -> Self {
        Self::new(self.re * k, self.im * k)
    }

    pub fn abs_value(&self) -> f64 {
        self.re.value().hypot(self.im.value())
    }

    pub fn map<T: Real>(self, f: impl Fn(S) -> T) -> Cx<T> {
        Cx::new(f(self.re), f(self.im))
    }
}

impl<S: Real> Add for Cx<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.im + o.im)
    }
}

impl<S: Real> Sub for Cx<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.im - o.im)
    }
}

impl<S: Real> Mul for Cx<S> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
}

impl<S: Real> Neg for Cx<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

/// Element of the spinor module ℂ⁴.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spinor<S = f64>(pub [Cx<S>; 4]);

impl<S: Real> Spinor<S> {
    pub fn zero() -> Self {
        Self([Cx::zero(); 4])
    }

    pub fn from_real(v: [S; 4]) -> Self {
        Self(v.map(Cx::real))
    }

    pub fn from_parts(re: [S; 4], im: [S; 4]) -> Self {
        Self(std::array::from_fn(|i| Cx::new(re[i], im[i])))
    }

    pub fn scale(&self, k: S) -> Self {
        Self(self.0.map(|c| c.scale(k)))
    }

    pub fn scale_f64(&self, k: f64) -> Self {
        Self(self.0.map(|c| Cx::new(c.re * k, c.im * k)))
    }

    pub fn map<T: Real>(&self, f: impl Fn(S) -> T + Copy) -> Spinor<T> {
        Spinor(self.0.map(|c| c.map(f)))
    }

    /// Value part of every component.
    pub fn values(&self) -> Spinor<f64> {
        self.map(|x| x.value())
    }

    /// Largest component modulus.
    /// Largest component modulus; NaN if any component is NaN.
    pub fn max_norm(&self) -> f64 {
        self.0.iter().map(Cx::abs_value).fold(0.0, |m, x| if x.is_nan() || m.is_nan() { f64::NAN } else { m.max(x) })
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.re.all_finite() && c.im.all_finite())
    }
}

impl<S: Real> Add for Spinor<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl<S: Real> Sub for Spinor<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl<S: Real> Neg for Spinor<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|c| -c))
    }
}

impl<S: Real> std::iter::Sum for Spinor<S> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl fmt::Display for Spinor<f64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if c.im == 0.0 {
                write!(f, "{}", c.re)?;
            } else {
                write!(f, "{}{:+}i", c.re, c.im)?;
            }
        }
        write!(f, "]")
    }
}

/// 4×4 complex matrix with `f64` entries.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMatrix(pub [[Cx<f64>; 4]; 4]);

impl CMatrix {
    pub fn zero() -> Self {
        Self([[Cx::zero(); 4]; 4])
    }

    pub fn identity() -> Self {
        Self::diagonal([1.0; 4])
    }

    pub fn diagonal(d: [f64; 4]) -> Self {
        let mut m = Self::zero();
        for (i, x) in d.into_iter().enumerate() {
            m.0[i][i] = Cx::real(x);
        }
        m
    }

    pub fn scale(&self, k: Cx<f64>) -> Self {
        Self(self.0.map(|row| row.map(|c| c * k)))
    }

    pub fn apply<S: Real>(&self, s: &Spinor<S>) -> Spinor<S> {
        Spinor(std::array::from_fn(|i| {
            (0..4).fold(Cx::zero(), |acc, j| {
                let m = self.0[i][j];
                if m.re == 0.0 && m.im == 0.0 {
                    acc
                } else {
                    acc + s.0[j].mul_c(m)
                }
            })
        }))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(Cx::abs_value).fold(0.0, f64::max)
    }
}

impl Mul for CMatrix {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..4).fold(Cx::zero(), |acc, k| acc + self.0[i][k] * o.0[k][j]))
        }))
    }
}

impl Add for CMatrix {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self(std::array::from_fn(|i| std::array::from_fn(|j| self.0[i][j] + o.0[i][j])))
    }
}

impl Sub for CMatrix {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self(std::array::from_fn(|i| std::array::from_fn(|j| self.0[i][j] - o.0[i][j])))
    }
}

/// One failed anticommutation law `γ_iγ_j + γ_jγ_i = -2Q(e_i)δ_ij I`.
#[derive(Clone, Debug, PartialEq)]
pub struct AnticommutatorFailure {
    pub i: usize,
    pub j: usize,
    pub residual: f64,
}

/// Matrices for the generators `e1, e2, e3` (spacelike) and `e4` (timelike)
/// of Cℓ(3,1), stored 0-indexed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GammaSet {
    pub gammas: [CMatrix; 4],
}

impl Default for GammaSet {
    fn default() -> Self {
        Self::dirac()
    }
}

impl GammaSet {
    /// Dirac-type set: `γ4 = diag(1,1,-1,-1)` and `γk = [[0,σk],[-σk,0]]`.
    pub fn dirac() -> Self {
        let o = Cx::zero();
        let one = Cx::real(1.0);
        let i = Cx::new(0.0, 1.0);
        let pauli = [[[o, one], [one, o]], [[o, -i], [i, o]], [[one, o], [o, -one]]];
        let spatial = |s: [[Cx<f64>; 2]; 2]| {
            let mut m = CMatrix::zero();
            for r in 0..2 {
                for c in 0..2 {
                    m.0[r][c + 2] = s[r][c];
                    m.0[r + 2][c] = -s[r][c];
                }
            }
            m
        };
        Self {
            gammas: [
                spatial(pauli[0]),
                spatial(pauli[1]),
                spatial(pauli[2]),
                CMatrix::diagonal([1.0, 1.0, -1.0, -1.0]),
            ],
        }
    }

    /// Copy with the entry `(row, col)` of generator `k` negated.
    pub fn with_flipped_entry(&self, k: usize, row: usize, col: usize) -> Self {
        let mut out = *self;
        out.gammas[k].0[row][col] = -out.gammas[k].0[row][col];
        out
    }

    pub fn gamma(&self, k: usize) -> &CMatrix {
        &self.gammas[k]
    }

    /// All ten anticommutators, returning the ones that are not exact.
    pub fn anticommutator_failures(&self) -> Vec<AnticommutatorFailure> {
        let sig = Signature::minkowski();
        let mut out = Vec::new();
        for i in 0..4 {
            for j in i..4 {
                let (a, b) = (self.gammas[i], self.gammas[j]);
                let lhs = a * b + b * a;
                let expected = if i == j {
                    CMatrix::identity().scale(Cx::real(2.0 * sig.square(i) as f64))
                } else {
                    CMatrix::zero()
                };
                let residual = (lhs - expected).max_abs();
                if residual != 0.0 {
                    out.push(AnticommutatorFailure { i, j, residual });
                }
            }
        }
        out
    }

    /// Matrix of a Cℓ(3,1) blade product `e_{i1}⋯e_{ik}`.
    fn blade_matrix(&self, indices: impl Iterator<Item = usize>) -> CMatrix {
        indices.fold(CMatrix::identity(), |m, i| m * self.gammas[i])
    }

    /// Matrix representing a Cℓ(3,1) multivector; Cℓ(1,2,0) input is embedded first.
    pub fn matrix<R: Ring>(&self, a: &Multivector<R>) -> Result<CMatrix, CliffordError> {
        let a = match a.signature() {
            s if s == Signature::minkowski() => a.clone(),
            s if s == Signature::degenerate_120() => super::embed(a)?,
            got => return Err(CliffordError::WrongSignature { expected: Signature::minkowski(), got }),
        };
        Ok(a.terms().fold(CMatrix::zero(), |m, (b, c)| m + self.blade_matrix(b.indices()).scale(Cx::real(c.to_f64()))))
    }

    /// Left Clifford action `s ↦ a·s`.
    pub fn act<R: Ring, S: Real>(&self, a: &Multivector<R>, s: &Spinor<S>) -> Result<Spinor<S>, CliffordError> {
        Ok(self.matrix(a)?.apply(s))
    }

    /// Exact left action on a spinor with components `re + i·im` in ℚ(√2).
    ///
    /// Blade matrices have entries in {0, ±1, ±i}, so the result is exact.
    pub fn act_exact(&self, a: &Multivector<ExactRoot2>, s: &ExactSpinor) -> Result<ExactSpinor, CliffordError> {
        let a = match a.signature() {
            sig if sig == Signature::degenerate_120() => super::embed(a)?,
            _ => a.clone(),
        };
        let mut out = ExactSpinor::zero();
        for (b, c) in a.terms() {
            let m = self.blade_matrix(b.indices());
            for i in 0..4 {
                for j in 0..4 {
                    let e = m.0[i][j];
                    let (re, im) = (&s.0[j].0, &s.0[j].1);
                    // (e.re + i e.im)(re + i im) with integer e
                    let pr = int(e.re) * re.clone() - int(e.im) * im.clone();
                    let pi = int(e.re) * im.clone() + int(e.im) * re.clone();
                    let slot = &mut out.0[i];
                    slot.0 = slot.0.clone() + c.clone() * pr;
                    slot.1 = slot.1.clone() + c.clone() * pi;
                }
            }
        }
        Ok(out)
    }

    /// Action of the ambient vector with orthonormal-frame components `c`
    /// (coefficients of `e1..e4`).
    pub fn vector_action<S: Real>(&self, c: [S; 4], s: &Spinor<S>) -> Spinor<S> {
        (0..4).map(|k| self.gammas[k].apply(s).scale(c[k])).sum()
    }
}

fn int(x: f64) -> ExactRoot2 {
    debug_assert_eq!(x.fract(), 0.0);
    ExactRoot2::from_int(x as i64)
}

/// Spinor with exact components `(re, im)` in ℚ(√2).
#[derive(Clone, Debug, PartialEq)]
pub struct ExactSpinor(pub [(ExactRoot2, ExactRoot2); 4]);

impl ExactSpinor {
    pub fn zero() -> Self {
        Self(std::array::from_fn(|_| (ExactRoot2::zero(), ExactRoot2::zero())))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|(a, b)| a.is_zero() && b.is_zero())
    }
}
