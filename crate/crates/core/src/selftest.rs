//! Algebraic law suites run by the command-line self-test.
//!
//! Everything except the spin-group suite is exact in ℚ(√2); a law passes
//! only with a residual of literally zero.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::clifford::{Blade, ExactRoot2, Multivector, Ring, Signature};
use crate::spin::{embed, homomorphism_check, ExactSpinor, GammaSet, SpinGroupElement, ADJOINT_TOL};

type Mv = Multivector<ExactRoot2>;

/// Outcome of one law over its sample set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawCheck {
    pub law: String,
    pub samples: usize,
    pub failures: usize,
    /// First counterexample, if any.
    pub detail: Option<String>,
}

impl LawCheck {
    fn new(law: impl Into<String>) -> Self {
        Self { law: law.into(), samples: 0, failures: 0, detail: None }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.samples += 1;
        if !ok {
            self.failures += 1;
            if self.detail.is_none() {
                self.detail = Some(detail());
            }
        }
    }

    pub fn pass(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub checks: Vec<LawCheck>,
}

impl SelftestReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(LawCheck::pass)
    }

    pub fn first_failure(&self) -> Option<&LawCheck> {
        self.checks.iter().find(|c| !c.pass())
    }
}

/// Runs every suite with the given representation and seed.
pub fn run(gammas: &GammaSet, seed: u64) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    for sig in [Signature::degenerate_120(), Signature::minkowski()] {
        checks.push(generator_relations(sig));
        checks.push(associativity(sig, &mut rng, 50));
        checks.push(decompose_round_trip(sig, &mut rng, 50));
    }
    checks.push(embed_squares(&mut rng, 1000));
    checks.push(embed_multiplicative(&mut rng, 200));
    checks.push(gamma_anticommutators(gammas));
    checks.push(radical_action_nilpotent(gammas, &mut rng, 100));
    checks.push(spin_adjoint(&mut rng, 100));
    SelftestReport { seed, checks }
}

fn sig_name(sig: Signature) -> String {
    format!("({},{},{})", sig.r, sig.p, sig.q)
}

/// `p/q + r/s·√2` with small random integers; `b` is zero half the time.
pub fn random_scalar(rng: &mut impl Rng) -> ExactRoot2 {
    let a = ExactRoot2::from_ratio(rng.gen_range(-9..=9), rng.gen_range(1..=6));
    if rng.gen_bool(0.5) {
        a
    } else {
        let root2 = ExactRoot2::frac_1_sqrt_2() * ExactRoot2::from_int(2);
        a + ExactRoot2::from_ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4)) * root2
    }
}

/// Random multivector with each blade present with probability one half.
pub fn random_multivector(sig: Signature, rng: &mut impl Rng) -> Mv {
    let mut terms = Vec::new();
    for b in 0..1u8 << sig.dim() {
        if rng.gen_bool(0.5) {
            terms.push((Blade(b), random_scalar(rng)));
        }
    }
    Mv::from_terms(sig, terms)
}

pub fn generator_relations(sig: Signature) -> LawCheck {
    let mut check = LawCheck::new(format!("generator relations {}", sig_name(sig)));
    for i in 0..sig.dim() {
        for j in i..sig.dim() {
            let (a, b) = (Mv::generator(sig, i).unwrap(), Mv::generator(sig, j).unwrap());
            let lhs = &(&a * &b) + &(&b * &a);
            let expected =
                if i == j { Mv::scalar(sig, ExactRoot2::from_int(-2 * sig.quadratic(i))) } else { Mv::zero(sig) };
            let diff = &lhs - &expected;
            check.record(diff.is_zero(), || format!("e{i}e{j} + e{j}e{i} - expected = {diff}"));
        }
    }
    check
}

pub fn associativity(sig: Signature, rng: &mut impl Rng, n: usize) -> LawCheck {
    let mut check = LawCheck::new(format!("associativity {}", sig_name(sig)));
    for _ in 0..n {
        let (a, b, c) = (random_multivector(sig, rng), random_multivector(sig, rng), random_multivector(sig, rng));
        let diff = &(&(&a * &b) * &c) - &(&a * &(&b * &c));
        check.record(diff.is_zero(), || format!("(ab)c - a(bc) = {diff} for a = {a}, b = {b}, c = {c}"));
    }
    check
}

pub fn decompose_round_trip(sig: Signature, rng: &mut impl Rng, n: usize) -> LawCheck {
    let mut check = LawCheck::new(format!("decompose/recompose {}", sig_name(sig)));
    for _ in 0..n {
        let a = random_multivector(sig, rng);
        let back = Mv::recompose(sig, &a.decompose_degenerate());
        check.record(back.as_ref() == Ok(&a), || format!("round trip of {a} gave {back:?}"));
    }
    check
}

pub fn embed_squares(rng: &mut impl Rng, n: usize) -> LawCheck {
    let mut check = LawCheck::new("embed(v)² + Q(v) = 0");
    for _ in 0..n {
        let v: [ExactRoot2; 3] = std::array::from_fn(|_| random_scalar(rng));
        let r = homomorphism_check(&v);
        check.record(r.is_zero(), || format!("v = {v:?} leaves {r}"));
    }
    check
}

pub fn embed_multiplicative(rng: &mut impl Rng, n: usize) -> LawCheck {
    let sig = Signature::degenerate_120();
    let mut check = LawCheck::new("embed(ab) = embed(a)embed(b)");
    for _ in 0..n {
        let (a, b) = (random_multivector(sig, rng), random_multivector(sig, rng));
        let lhs = embed(&(&a * &b)).unwrap();
        let rhs = &embed(&a).unwrap() * &embed(&b).unwrap();
        let diff = &lhs - &rhs;
        check.record(diff.is_zero(), || format!("a = {a}, b = {b}: difference {diff}"));
    }
    check
}

pub fn gamma_anticommutators(gammas: &GammaSet) -> LawCheck {
    let mut check = LawCheck::new("gamma anticommutators");
    let failures = gammas.anticommutator_failures();
    for i in 0..4 {
        for j in i..4 {
            let hit = failures.iter().find(|f| f.i == i && f.j == j);
            check.record(hit.is_none(), || format!("{{γ{}, γ{}}} off by {:e}", i + 1, j + 1, hit.unwrap().residual));
        }
    }
    check
}

pub fn radical_action_nilpotent(gammas: &GammaSet, rng: &mut impl Rng, n: usize) -> LawCheck {
    let mut check = LawCheck::new("e0·(e0·s) = 0");
    let e0 = Mv::generator(Signature::degenerate_120(), 0).unwrap();
    for _ in 0..n {
        let s = ExactSpinor(std::array::from_fn(|_| (random_scalar(rng), random_scalar(rng))));
        let out = gammas.act_exact(&e0, &s).and_then(|t| gammas.act_exact(&e0, &t));
        check.record(out.as_ref().is_ok_and(ExactSpinor::is_zero), || format!("s = {s:?} gives {out:?}"));
    }
    check
}

/// Random Pin elements of Cℓ(1,2,0) and Cℓ(1,1,1): the twisted adjoint
/// action preserves `Q` and fixes the radical generator.
pub fn spin_adjoint(rng: &mut impl Rng, n: usize) -> LawCheck {
    let mut check = LawCheck::new("twisted adjoint preserves Q and fixes the radical");
    let sigs = [Signature::degenerate_120(), Signature::new(1, 1, 1).expect("valid signature")];
    for k in 0..n {
        let sig = sigs[k % 2];
        let factors: Vec<Vec<f64>> = (0..rng.gen_range(0..=4))
            .map(|_| {
                let t: f64 = rng.gen_range(-2.0..2.0);
                if sig.q == 0 {
                    vec![0.0, t.cos(), t.sin()]
                } else if rng.gen_bool(0.5) {
                    // Rapidities stay below one: products of large boosts
                    // lose more than the tolerance to rounding alone.
                    let t = 0.5 * t;
                    vec![0.0, t.cosh(), t.sinh()]
                } else {
                    let t = 0.5 * t;
                    vec![0.0, t.sinh(), t.cosh()]
                }
            })
            .collect();
        let nilpotent: Vec<_> = (1..sig.dim()).map(|j| (0, j, rng.gen_range(-1.0..1.0))).collect();
        let u = match SpinGroupElement::new(sig, &factors, &nilpotent) {
            Ok(u) => u,
            Err(e) => {
                check.record(false, || format!("construction failed: {e}"));
                continue;
            }
        };
        let coeffs: Vec<f64> = (0..sig.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let v = Multivector::vector(sig, &coeffs).unwrap();
        let e0 = Multivector::generator(sig, 0).unwrap();
        let result = u.adjoint_action(&v).and_then(|w| Ok((w, u.adjoint_action(&e0)?)));
        let (dq, drift) = match &result {
            Ok((w, f)) => (
                (w.quadratic_form().unwrap() - v.quadratic_form().unwrap()).abs(),
                (f - &e0).terms().map(|(_, c)| c.abs()).fold(0.0, f64::max),
            ),
            Err(_) => (f64::NAN, f64::NAN),
        };
        check.record(dq <= ADJOINT_TOL && drift <= ADJOINT_TOL, || {
            format!(
                "{} factors {factors:?}, nilpotent {nilpotent:?}: ΔQ = {dq:e}, radical drift {drift:e}",
                sig_name(sig)
            )
        });
    }
    check
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_with_the_dirac_set() {
        let r = run(&GammaSet::dirac(), 7);
        assert!(r.pass(), "{:?}", r.first_failure());
        assert_eq!(r.checks.iter().find(|c| c.law.starts_with("embed(v)")).unwrap().samples, 1000);
    }

    #[test]
    fn flipped_gamma_is_named() {
        let r = run(&GammaSet::dirac().with_flipped_entry(1, 0, 3), 7);
        assert_eq!(r.first_failure().unwrap().law, "gamma anticommutators");
    }

    #[test]
    fn spin_suite_passes_across_seeds() {
        for seed in 0..200 {
            let c = spin_adjoint(&mut ChaCha8Rng::seed_from_u64(seed), 100);
            assert!(c.pass(), "seed {seed}: {:?}", c.detail);
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(run(&GammaSet::dirac(), 3), run(&GammaSet::dirac(), 3));
    }
}
