//! Reduction of Cℓ(3,1) spin geometry to the degenerate algebra Cℓ(1,2,0).
//!
//! [`embed`] sends `e0 ↦ (e3 + e4)/√2` (the null combination of the last
//! spacelike and the timelike generator of Cℓ(3,1)) and fixes `e1`, `e2`.
//! [`SpinGroupElement`] builds Pin/Spin elements of a degenerate algebra as a
//! product of unit vectors times the exponential of a nilpotent bivector.

mod gamma;

use nalgebra::Matrix3;

pub use gamma::{AnticommutatorFailure, CMatrix, Cx, ExactSpinor, GammaSet, Spinor};

use crate::clifford::{Blade, CliffordError, Multivector, Ring, Signature};

/// Image of the generators `e0, e1, e2` of Cℓ(1,2,0) in Cℓ(3,1).
fn generator_image<R: Ring>(i: usize) -> Multivector<R> {
    let sig = Signature::minkowski();
    match i {
        0 => Multivector::from_terms(sig, [(Blade(0b0100), R::frac_1_sqrt_2()), (Blade(0b1000), R::frac_1_sqrt_2())]),
        k => Multivector::from_terms(sig, [(Blade(1 << (k - 1)), R::one())]),
    }
}

/// Algebra homomorphism Cℓ(1,2,0) → Cℓ(3,1).
pub fn embed<R: Ring>(a: &Multivector<R>) -> Result<Multivector<R>, CliffordError> {
    let expected = Signature::degenerate_120();
    if a.signature() != expected {
        return Err(CliffordError::WrongSignature { expected, got: a.signature() });
    }
    let sig = Signature::minkowski();
    let mut out = Multivector::zero(sig);
    for (blade, c) in a.terms() {
        let image = blade.indices().fold(Multivector::one(sig), |acc, i| &acc * &generator_image::<R>(i));
        out = &out + &image.scale(c);
    }
    Ok(out)
}

/// `embed(v)² + Q(v)` for `v = v0 e0 + v1 e1 + v2 e2`; zero iff the generator
/// relations survive the embedding.
pub fn homomorphism_check<R: Ring>(v: &[R; 3]) -> Multivector<R> {
    let sig = Signature::degenerate_120();
    let v = Multivector::vector(sig, v).expect("three components");
    let q = v.quadratic_form().expect("grade one");
    let image = embed(&v).expect("degenerate signature");
    &(&image * &image) + &Multivector::scalar(Signature::minkowski(), q)
}

/// True iff `GᵀJ + JG = 0`, i.e. `G` is an infinitesimal isometry of `J`.
pub fn so_generator_check(g: &Matrix3<f64>, j: &Matrix3<f64>) -> bool {
    (g.transpose() * j + j * g).iter().all(|x| *x == 0.0)
}

/// The three matrices printed as a basis of so(1,2,0), in the order
/// `E01, E02, E12`.
pub fn printed_generators() -> [(&'static str, Matrix3<f64>); 3] {
    [
        ("E01", Matrix3::new(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0)),
        ("E02", Matrix3::new(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0)),
        ("E12", Matrix3::new(0.0, 0.0, -1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0)),
    ]
}

/// Gram matrix of the degenerate form with the radical in slot `radical`.
pub fn degenerate_gram(radical: usize) -> Matrix3<f64> {
    let mut d = [1.0; 3];
    d[radical] = 0.0;
    Matrix3::from_diagonal(&d.into())
}

/// Element `a_1⋯a_k · exp(Σ c_ik e_k f_i)` of Pin(Q) for a degenerate form,
/// with unit vectors `a_i` in the nondegenerate part, `e_k` nondegenerate and
/// `f_i` radical generators.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinGroupElement<R: Ring> {
    sig: Signature,
    factors: Vec<Multivector<R>>,
    nilpotent: Vec<(usize, usize, R)>,
    product: Multivector<R>,
    inverse: Multivector<R>,
}

impl<R: Ring> SpinGroupElement<R> {
    /// `factors` are full coefficient vectors with zero radical part and
    /// `Q = ±1` (to [`ADJOINT_TOL`] for inexact rings); `nilpotent` lists `(radical i, nondegenerate k, c_ik)`.
    pub fn new(sig: Signature, factors: &[Vec<R>], nilpotent: &[(usize, usize, R)]) -> Result<Self, CliffordError> {
        let mut vectors = Vec::with_capacity(factors.len());
        let mut norm = R::one();
        for coeffs in factors {
            let v = Multivector::vector(sig, coeffs)?;
            if (0..sig.r).any(|i| !coeffs[i].is_zero()) {
                return Err(CliffordError::Representation("factor has a radical component".into()));
            }
            let q = v.quadratic_form().expect("grade one");
            let unit =
                if R::EXACT { q == R::one() || q == -R::one() } else { (q.to_f64().abs() - 1.0).abs() <= ADJOINT_TOL };
            if !unit {
                return Err(CliffordError::Representation(format!("factor is not a unit vector: Q = {}", q.to_f64())));
            }
            // a² = -Q(a), so a⁻¹ = a / (-Q(a))
            norm = norm * R::from_int(if q.to_f64() > 0.0 { -1 } else { 1 });
            vectors.push(v);
        }
        let mut bivector = Multivector::zero(sig);
        for (i, k, c) in nilpotent {
            if *i >= sig.r || *k < sig.r || *k >= sig.dim() {
                return Err(CliffordError::IndexOutOfRange { index: *k.max(i), signature: sig });
            }
            let term = &Multivector::generator(sig, *k)? * &Multivector::generator(sig, *i)?;
            bivector = &bivector + &term.scale(c);
        }
        let versor = vectors.iter().fold(Multivector::one(sig), |acc, v| &acc * v);
        let product = &versor * &nilpotent_exp(&bivector);
        let inverse = &nilpotent_exp(&-&bivector) * &versor.reversion().scale(&norm);
        Ok(Self { sig, factors: vectors, nilpotent: nilpotent.to_vec(), product, inverse })
    }

    pub fn signature(&self) -> Signature {
        self.sig
    }

    pub fn factors(&self) -> &[Multivector<R>] {
        &self.factors
    }

    pub fn nilpotent(&self) -> &[(usize, usize, R)] {
        &self.nilpotent
    }

    /// The expanded product `a_1⋯a_k · exp(B)`.
    pub fn element(&self) -> &Multivector<R> {
        &self.product
    }

    pub fn inverse(&self) -> &Multivector<R> {
        &self.inverse
    }

    pub fn is_even(&self) -> bool {
        self.factors.len().is_multiple_of(2)
    }

    /// Twisted adjoint action `v ↦ (-1)^k u v u⁻¹` on a grade-1 element.
    pub fn adjoint_action(&self, v: &Multivector<R>) -> Result<Multivector<R>, CliffordError> {
        if v.signature() != self.sig {
            return Err(CliffordError::SignatureMismatch { left: self.sig, right: v.signature() });
        }
        let mut image = &(&self.product * v) * &self.inverse;
        if !self.is_even() {
            image = -image;
        }
        let stray: f64 =
            image.terms().filter(|(b, _)| b.grade() != 1).map(|(_, c)| c.to_f64().abs()).fold(0.0, f64::max);
        let has_stray = image.terms().any(|(b, _)| b.grade() != 1);
        if (R::EXACT && has_stray) || stray > ADJOINT_TOL {
            return Err(CliffordError::Representation(format!(
                "adjoint image is not a vector (off-grade magnitude {stray:e})"
            )));
        }
        Ok(image.grade_projection(1))
    }
}

/// Largest off-grade coefficient tolerated in a floating adjoint image.
pub const ADJOINT_TOL: f64 = 1e-10;

/// `exp(B)` for nilpotent `B`; the series is summed until a power vanishes.
fn nilpotent_exp<R: Ring>(b: &Multivector<R>) -> Multivector<R> {
    let sig = b.signature();
    let mut sum = Multivector::one(sig);
    let mut power = Multivector::one(sig);
    let mut factorial: i64 = 1;
    for n in 1..=sig.dim() as i64 + 1 {
        power = &power * b;
        if power.is_zero() {
            break;
        }
        factorial *= n;
        sum = &sum + &power.scale(&R::from_ratio(1, factorial));
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::ExactRoot2;

    type Mv = Multivector<ExactRoot2>;

    fn r(n: i64, d: i64) -> ExactRoot2 {
        ExactRoot2::from_ratio(n, d)
    }

    fn gen120(i: usize) -> Mv {
        Mv::generator(Signature::degenerate_120(), i).unwrap()
    }

    #[test]
    fn embed_sends_radical_to_null_combination() {
        let image = embed(&gen120(0)).unwrap();
        let h = ExactRoot2::frac_1_sqrt_2();
        assert_eq!(image.coefficient(Blade(0b0100)), h);
        assert_eq!(image.coefficient(Blade(0b1000)), h);
        assert!((&image * &image).is_zero());
    }

    #[test]
    fn embed_is_unital_and_kills_e0e1_square() {
        let one = Mv::one(Signature::degenerate_120());
        assert_eq!(embed(&one).unwrap(), Mv::one(Signature::minkowski()));
        let x = embed(&(&gen120(0) * &gen120(1))).unwrap();
        assert!((&x * &x).is_zero());
    }

    #[test]
    fn embed_rejects_other_signatures() {
        let e = Mv::generator(Signature::minkowski(), 0).unwrap();
        assert!(matches!(embed(&e), Err(CliffordError::WrongSignature { .. })));
    }

    #[test]
    fn homomorphism_examples() {
        for v in [[r(1, 1), r(0, 1), r(0, 1)], [r(0, 1), r(1, 1), r(1, 1)], [r(1, 1), r(1, 1), r(0, 1)]] {
            assert!(homomorphism_check(&v).is_zero());
        }
    }

    #[test]
    fn null_shear_moves_e1_along_radical() {
        let sig = Signature::degenerate_120();
        let c = r(3, 7);
        let u = SpinGroupElement::new(sig, &[], &[(0, 1, c.clone())]).unwrap();
        assert_eq!(u.element(), &(&Mv::one(sig) + &(&gen120(1) * &gen120(0)).scale(&c)));
        let image = u.adjoint_action(&gen120(1)).unwrap();
        // (1 + c e1e0) e1 (1 - c e1e0) = e1 + 2c e0
        assert_eq!(image, &gen120(1) + &gen120(0).scale(&(r(2, 1) * c)));
        assert_eq!(image.quadratic_form().unwrap(), r(1, 1));
        assert_eq!(u.adjoint_action(&gen120(0)).unwrap(), gen120(0));
    }

    #[test]
    fn rotation_pair_fixes_radical() {
        let sig = Signature::degenerate_120();
        let z = r(0, 1);
        let u = SpinGroupElement::new(
            sig,
            &[vec![z.clone(), r(1, 1), z.clone()], vec![z.clone(), z.clone(), r(1, 1)]],
            &[],
        )
        .unwrap();
        assert_eq!(u.adjoint_action(&gen120(0)).unwrap(), gen120(0));
        assert!(u.adjoint_action(&Mv::zero(sig)).unwrap().is_zero());
        assert_eq!(&(u.element() * u.inverse()), &Mv::one(sig));
    }

    #[test]
    fn non_unit_factor_is_rejected() {
        let sig = Signature::degenerate_120();
        let bad = SpinGroupElement::new(sig, &[vec![r(0, 1), r(1, 1), r(1, 1)]], &[]);
        assert!(matches!(bad, Err(CliffordError::Representation(_))));
    }

    #[test]
    fn generator_check_orderings() {
        let [e01, e02, e12] = printed_generators().map(|(_, m)| m);
        let radical_last = degenerate_gram(2);
        let radical_first = degenerate_gram(0);
        assert!(so_generator_check(&e01, &radical_last));
        assert!(so_generator_check(&e02, &radical_last));
        assert!(!so_generator_check(&e12, &radical_last));
        assert!(!so_generator_check(&e01, &radical_first));
        assert!(!so_generator_check(&e02, &radical_first));
        assert!(so_generator_check(&Matrix3::zeros(), &radical_first));
        assert!(!so_generator_check(&Matrix3::identity(), &radical_first));
    }
}
