//! Multivector arithmetic in Clifford algebras Cℓ(r,p,q).
//!
//! Generators are ordered degenerate first, then positive, then negative. The
//! product follows the convention `v·v = -Q(v)`, so a generator with `Q = +1`
//! squares to `-1`, one with `Q = -1` squares to `+1` and a degenerate one
//! squares to zero.

mod ring;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

pub use ring::{ExactRoot2, Rational, Ring};

pub const MAX_GENERATORS: usize = 8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CliffordError {
    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch { left: Signature, right: Signature },
    #[error("signature {0} exceeds {MAX_GENERATORS} generators")]
    TooManyGenerators(Signature),
    #[error("generator index {index} out of range for {signature}")]
    IndexOutOfRange { index: usize, signature: Signature },
    #[error("expected signature {expected}, got {got}")]
    WrongSignature { expected: Signature, got: Signature },
    #[error("representation error: {0}")]
    Representation(String),
}

/// Counts of degenerate, positive and negative generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    pub r: usize,
    pub p: usize,
    pub q: usize,
}

impl Signature {
    pub fn new(r: usize, p: usize, q: usize) -> Result<Self, CliffordError> {
        let sig = Self { r, p, q };
        if sig.dim() > MAX_GENERATORS {
            return Err(CliffordError::TooManyGenerators(sig));
        }
        Ok(sig)
    }

    /// Cℓ(1,2,0): one radical generator `e0`, spacelike `e1`, `e2`.
    pub const fn degenerate_120() -> Self {
        Self { r: 1, p: 2, q: 0 }
    }

    /// Cℓ(3,1): spacelike `e1..e3`, timelike `e4`.
    pub const fn minkowski() -> Self {
        Self { r: 0, p: 3, q: 1 }
    }

    pub const fn dim(&self) -> usize {
        self.r + self.p + self.q
    }

    pub const fn blade_count(&self) -> usize {
        1 << self.dim()
    }

    /// Q(e_i): 0, +1 or -1.
    pub fn quadratic(&self, i: usize) -> i64 {
        if i < self.r {
            0
        } else if i < self.r + self.p {
            1
        } else {
            -1
        }
    }

    /// e_i² = -Q(e_i).
    pub fn square(&self, i: usize) -> i64 {
        -self.quadratic(i)
    }

    pub fn radical_mask(&self) -> u8 {
        ((1u16 << self.r) - 1) as u8
    }

    /// Display label of generator `i`: 0-based when a radical is present
    /// (`e0` is the radical generator), 1-based otherwise.
    pub fn label(&self, i: usize) -> String {
        if self.r == 0 {
            format!("e{}", i + 1)
        } else {
            format!("e{i}")
        }
    }

    fn check_index(&self, index: usize) -> Result<(), CliffordError> {
        if index >= self.dim() {
            return Err(CliffordError::IndexOutOfRange { index, signature: *self });
        }
        Ok(())
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r == 0 {
            write!(f, "Cl({},{})", self.p, self.q)
        } else {
            write!(f, "Cl({},{},{})", self.r, self.p, self.q)
        }
    }
}

/// Basis blade as a bitmask of generator indices in increasing order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Blade(pub u8);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    pub fn from_indices(indices: &[usize]) -> Self {
        Blade(indices.iter().fold(0u8, |m, &i| m | (1 << i)))
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..MAX_GENERATORS).filter(move |i| self.0 & (1 << i) != 0)
    }

    /// Product `self · other` of basis blades: the resulting blade and its
    /// sign, or `None` when a shared degenerate generator annihilates it.
    pub fn product(self, other: Blade, sig: &Signature) -> Option<(Blade, i64)> {
        let (a, b) = (self.0 as u32, other.0 as u32);
        // Each generator of `other` must pass every higher generator of `self`.
        let mut swaps = 0u32;
        let mut rest = b;
        while rest != 0 {
            let j = rest.trailing_zeros();
            swaps += (a >> (j + 1)).count_ones();
            rest &= rest - 1;
        }
        let mut sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
        let mut shared = a & b;
        while shared != 0 {
            let i = shared.trailing_zeros() as usize;
            let sq = sig.square(i);
            if sq == 0 {
                return None;
            }
            sign *= sq;
            shared &= shared - 1;
        }
        Some((Blade((a ^ b) as u8), sign))
    }
}

/// Element of Cℓ(r,p,q) stored as a sparse map blade → coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct Multivector<R: Ring> {
    sig: Signature,
    terms: BTreeMap<Blade, R>,
}

impl<R: Ring> Multivector<R> {
    pub fn zero(sig: Signature) -> Self {
        Self { sig, terms: BTreeMap::new() }
    }

    pub fn scalar(sig: Signature, value: R) -> Self {
        Self::from_terms(sig, [(Blade::SCALAR, value)])
    }

    pub fn one(sig: Signature) -> Self {
        Self::scalar(sig, R::one())
    }

    pub fn generator(sig: Signature, i: usize) -> Result<Self, CliffordError> {
        sig.check_index(i)?;
        Ok(Self::from_terms(sig, [(Blade(1 << i), R::one())]))
    }

    /// Grade-1 element `Σ coeffs[i]·e_i`.
    pub fn vector(sig: Signature, coeffs: &[R]) -> Result<Self, CliffordError> {
        if coeffs.len() != sig.dim() {
            return Err(CliffordError::IndexOutOfRange { index: coeffs.len(), signature: sig });
        }
        Ok(Self::from_terms(sig, coeffs.iter().enumerate().map(|(i, c)| (Blade(1 << i), c.clone()))))
    }

    /// Builds a multivector, summing repeated blades and dropping zeros.
    pub fn from_terms(sig: Signature, terms: impl IntoIterator<Item = (Blade, R)>) -> Self {
        let mut out = Self::zero(sig);
        for (blade, c) in terms {
            out.add_term(blade, c);
        }
        out.prune();
        out
    }

    fn add_term(&mut self, blade: Blade, c: R) {
        debug_assert!((blade.0 as usize) < self.sig.blade_count());
        match self.terms.get_mut(&blade) {
            Some(existing) => *existing = existing.clone() + c,
            None => {
                self.terms.insert(blade, c);
            }
        }
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &R)> {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    pub fn coefficient(&self, blade: Blade) -> R {
        self.terms.get(&blade).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_grade(&self) -> usize {
        self.terms.keys().map(|b| b.grade()).max().unwrap_or(0)
    }

    pub fn scale(&self, k: &R) -> Self {
        Self::from_terms(self.sig, self.terms.iter().map(|(b, c)| (*b, c.clone() * k.clone())))
    }

    pub fn map_ring<T: Ring>(&self, f: impl Fn(&R) -> T) -> Multivector<T> {
        Multivector::from_terms(self.sig, self.terms.iter().map(|(b, c)| (*b, f(c))))
    }

    pub fn to_f64(&self) -> Multivector<f64> {
        self.map_ring(R::to_f64)
    }

    fn same_sig(&self, other: &Self) -> Result<(), CliffordError> {
        if self.sig != other.sig {
            return Err(CliffordError::SignatureMismatch { left: self.sig, right: other.sig });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CliffordError> {
        self.same_sig(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c.clone());
        }
        out.prune();
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CliffordError> {
        self.try_add(&-other)
    }

    pub fn geometric_product(&self, other: &Self) -> Result<Self, CliffordError> {
        self.same_sig(other)?;
        let mut out = Self::zero(self.sig);
        for (ba, ca) in &self.terms {
            for (bb, cb) in &other.terms {
                if let Some((blade, sign)) = ba.product(*bb, &self.sig) {
                    let c = ca.clone() * cb.clone();
                    out.add_term(blade, if sign < 0 { -c } else { c });
                }
            }
        }
        out.prune();
        Ok(out)
    }

    pub fn grade_projection(&self, k: usize) -> Self {
        Self::from_terms(self.sig, self.terms.iter().filter(|(b, _)| b.grade() == k).map(|(b, c)| (*b, c.clone())))
    }

    /// Reverses the factor order of every blade: sign (-1)^{k(k-1)/2} on grade k.
    pub fn reversion(&self) -> Self {
        Self::from_terms(
            self.sig,
            self.terms.iter().map(|(b, c)| {
                let k = b.grade();
                if (k * k.saturating_sub(1) / 2) % 2 == 1 {
                    (*b, -c.clone())
                } else {
                    (*b, c.clone())
                }
            }),
        )
    }

    /// Q(v) for a grade-1 element; `None` if `self` has other grades.
    pub fn quadratic_form(&self) -> Option<R> {
        if self.terms.keys().any(|b| b.grade() != 1) {
            return None;
        }
        let mut acc = R::zero();
        for (b, c) in &self.terms {
            let i = b.0.trailing_zeros() as usize;
            let qc = R::from_int(self.sig.quadratic(i));
            acc = acc + qc * c.clone() * c.clone();
        }
        Some(acc)
    }

    /// Splits `a = Σ_S e_S · a_S` with `e_S` the ordered product of the
    /// radical generators in `S` (on the left) and `a_S ∈ Cℓ(0,p,q)`.
    ///
    /// Since radical generators come first in the canonical order, moving them
    /// to the left never changes a sign.
    pub fn decompose_degenerate(&self) -> BTreeMap<Blade, Multivector<R>> {
        let rad = self.sig.radical_mask();
        let nondeg = Signature { r: 0, p: self.sig.p, q: self.sig.q };
        let mut parts: BTreeMap<Blade, Multivector<R>> = BTreeMap::new();
        for (b, c) in &self.terms {
            let radical = Blade(b.0 & rad);
            let rest = Blade((b.0 & !rad) >> self.sig.r);
            parts.entry(radical).or_insert_with(|| Multivector::zero(nondeg)).add_term(rest, c.clone());
        }
        parts.retain(|_, m| {
            m.prune();
            !m.is_zero()
        });
        parts
    }

    /// Inverse of [`decompose_degenerate`](Self::decompose_degenerate).
    pub fn recompose(sig: Signature, parts: &BTreeMap<Blade, Multivector<R>>) -> Result<Self, CliffordError> {
        let nondeg = Signature { r: 0, p: sig.p, q: sig.q };
        let mut out = Self::zero(sig);
        for (radical, part) in parts {
            if part.sig != nondeg {
                return Err(CliffordError::WrongSignature { expected: nondeg, got: part.sig });
            }
            if radical.0 & !sig.radical_mask() != 0 {
                return Err(CliffordError::IndexOutOfRange {
                    index: radical.indices().max().unwrap_or(0),
                    signature: sig,
                });
            }
            for (b, c) in &part.terms {
                out.add_term(Blade(radical.0 | (b.0 << sig.r)), c.clone());
            }
        }
        out.prune();
        Ok(out)
    }
}

impl<R: Ring> Neg for &Multivector<R> {
    type Output = Multivector<R>;
    fn neg(self) -> Multivector<R> {
        Multivector { sig: self.sig, terms: self.terms.iter().map(|(b, c)| (*b, -c.clone())).collect() }
    }
}

impl<R: Ring> Neg for Multivector<R> {
    type Output = Multivector<R>;
    fn neg(self) -> Multivector<R> {
        -&self
    }
}

// Operator forms panic on signature mismatch, like shape mismatches in array
// libraries; use the `try_*` methods where the signatures are not known.
macro_rules! binop {
    ($tr:ident, $method:ident, $call:ident) => {
        impl<R: Ring> $tr for &Multivector<R> {
            type Output = Multivector<R>;
            fn $method(self, rhs: &Multivector<R>) -> Multivector<R> {
                self.$call(rhs).expect("multivector signature mismatch")
            }
        }
        impl<R: Ring> $tr for Multivector<R> {
            type Output = Multivector<R>;
            fn $method(self, rhs: Multivector<R>) -> Multivector<R> {
                (&self).$call(&rhs).expect("multivector signature mismatch")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, geometric_product);

impl<R: Ring + fmt::Display> fmt::Display for Multivector<R> {
    /// `a + b*e1 + c*e1^e2`, blades in canonical order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by_key(|(b, _)| (b.grade(), b.indices().collect::<Vec<_>>()));
        for (n, (b, c)) in ordered.into_iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if b.0 == 0 {
                write!(f, "{c}")?;
            } else {
                let name: Vec<String> = b.indices().map(|i| self.sig.label(i)).collect();
                write!(f, "{c}*{}", name.join("^"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type E = ExactRoot2;

    fn gen(sig: Signature, i: usize) -> Multivector<E> {
        Multivector::generator(sig, i).unwrap()
    }

    #[test]
    fn spacelike_generator_squares_to_minus_one() {
        let s = Signature::minkowski();
        let e1 = gen(s, 0);
        assert_eq!(&e1 * &e1, Multivector::scalar(s, E::from_int(-1)));
        let e4 = gen(s, 3);
        assert_eq!(&e4 * &e4, Multivector::one(s));
    }

    #[test]
    fn radical_generator_squares_to_zero() {
        let s = Signature::degenerate_120();
        let e0 = gen(s, 0);
        assert!((&e0 * &e0).is_zero());
    }

    #[test]
    fn distinct_generators_anticommute() {
        let s = Signature::minkowski();
        let (e1, e2) = (gen(s, 0), gen(s, 1));
        assert!((&e1 * &e2 + &e2 * &e1).is_zero());
    }

    #[test]
    fn null_combination_squares_to_zero() {
        let s = Signature::minkowski();
        let h = E::frac_1_sqrt_2();
        let n = Multivector::vector(s, &[E::zero(), E::zero(), h.clone(), h]).unwrap();
        assert!((&n * &n).is_zero());
    }

    #[test]
    fn mismatched_signatures_are_rejected() {
        let a = gen(Signature::minkowski(), 0);
        let b = gen(Signature::degenerate_120(), 0);
        assert!(matches!(a.geometric_product(&b), Err(CliffordError::SignatureMismatch { .. })));
        assert!(Signature::new(3, 3, 3).is_err());
    }

    #[test]
    fn grade_projection_examples() {
        let s = Signature::minkowski();
        let e12 = &gen(s, 0) * &gen(s, 1);
        let a = Multivector::scalar(s, E::from_int(3)) + e12.clone();
        assert_eq!(a.grade_projection(2), e12);
        assert_eq!(a.grade_projection(0), Multivector::scalar(s, E::from_int(3)));
        let d = Signature::degenerate_120();
        let e012 = &(&gen(d, 0) * &gen(d, 1)) * &gen(d, 2);
        assert!(e012.grade_projection(1).is_zero());
    }

    #[test]
    fn reversion_examples() {
        let s = Signature::minkowski();
        let (e1, e2, e3) = (gen(s, 0), gen(s, 1), gen(s, 2));
        let e12 = &e1 * &e2;
        assert_eq!(e12.reversion(), &e2 * &e1);
        assert_eq!(e12.reversion(), -&e12);
        assert_eq!(e1.reversion(), e1);
        let e123 = &e12 * &e3;
        assert_eq!(e123.reversion(), -&e123);
    }

    #[test]
    fn decompose_moves_radical_left_without_sign() {
        let s = Signature::degenerate_120();
        let a = &gen(s, 0) * &gen(s, 1) + gen(s, 2);
        let parts = a.decompose_degenerate();
        let nd = Signature::new(0, 2, 0).unwrap();
        assert_eq!(parts.len(), 2);
        // e2 is generator 1 of the non-degenerate factor, e1 is generator 0.
        assert_eq!(parts[&Blade(0)], Multivector::generator(nd, 1).unwrap());
        assert_eq!(parts[&Blade(1)], Multivector::generator(nd, 0).unwrap());
        assert_eq!(Multivector::recompose(s, &parts).unwrap(), a);

        let five = Multivector::scalar(s, E::from_int(5));
        let parts = five.decompose_degenerate();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[&Blade(0)], Multivector::scalar(nd, E::from_int(5)));
    }

    #[test]
    fn text_form() {
        let s = Signature::minkowski();
        let a = Multivector::<f64>::from_terms(s, [(Blade(0), 2.0), (Blade(0b11), -1.5), (Blade(0b1), 0.5)]);
        assert_eq!(a.to_string(), "2 + 0.5*e1 + -1.5*e1^e2");
        let d = Signature::degenerate_120();
        assert_eq!(Multivector::<f64>::generator(d, 0).unwrap().to_string(), "1*e0");
    }

    #[test]
    fn quadratic_form_of_vectors() {
        let s = Signature::degenerate_120();
        let v = Multivector::vector(s, &[E::from_int(7), E::from_int(1), E::from_int(2)]).unwrap();
        assert_eq!(v.quadratic_form(), Some(E::from_int(5)));
        assert_eq!(Multivector::<f64>::one(s).quadratic_form(), None);
    }
}
