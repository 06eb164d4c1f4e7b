//! Central finite differences and linear solves as independent references
//! for the forward-mode results.

#![allow(clippy::needless_range_loop)]

mod common;

use common::*;
use llspin::ad::{seed, Dual};
use llspin::geometry::TangentField;
use llspin::geometry::{frame_at, frame_jet, gdot, Chart, FrameJet, SIGNS};
use llspin::spin::{CMatrix, Cx, GammaSet, Spinor};
use llspin::spinor::{
    induced_spinor_derivative, spinor_curvature, CliffordAction, ConnectionKind, ExtensionPolicy, PointGeometry,
    PointSpinor, SpinorField,
};
use nalgebra::{DMatrix, DVector};

const STEP: f64 = 1e-4;

fn shifted(p: &[f64; 3], x: &[f64; 3], t: f64) -> [f64; 3] {
    std::array::from_fn(|i| p[i] + t * x[i])
}

fn central<const D: usize>(f: impl Fn(&[f64; 3]) -> [f64; D], p: &[f64; 3], x: &[f64; 3], h: f64) -> [f64; D] {
    let (a, b) = (f(&shifted(p, x, h)), f(&shifted(p, x, -h)));
    std::array::from_fn(|m| (a[m] - b[m]) / (2.0 * h))
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[test]
fn chart_derivatives_match_finite_differences() {
    let mut rng = rng(20);
    for coords in [CONE, CYLINDER, EXAMPLE] {
        let c = chart(coords, 2);
        for _ in 0..34 {
            let p = random_point(&c, &mut rng);
            let (_, t) = c.tangents(&p).unwrap();
            let jet = c.jet2(&p).unwrap();
            for a in 0..3 {
                let fd = central(|u| c.eval(u).unwrap(), &p, &unit3(a), STEP);
                assert!(max_diff(&t[a], &fd) <= 1e-6);
                for b in 0..3 {
                    // second difference of values
                    let (ea, eb) = (unit3(a), unit3(b));
                    let f = |sa: f64, sb: f64| c.eval(&shifted(&shifted(&p, &ea, sa), &eb, sb)).unwrap();
                    let h = STEP;
                    for m in 0..4 {
                        let fd2 = (f(h, h)[m] - f(h, -h)[m] - f(-h, h)[m] + f(-h, -h)[m]) / (4.0 * h * h);
                        assert!((jet[m].hess(a, b) - fd2).abs() <= 1e-4, "{coords:?} {a}{b}");
                    }
                }
            }
        }
    }
}

fn unit3(a: usize) -> [f64; 3] {
    std::array::from_fn(|i| if i == a { 1.0 } else { 0.0 })
}

#[test]
fn frame_jet_matches_finite_differences() {
    let mut rng = rng(21);
    for coords in [CONE, CYLINDER] {
        let c = chart(coords, 2);
        for _ in 0..10 {
            let p = random_point(&c, &mut rng);
            let x = random_direction(&mut rng);
            let g = PointGeometry::new(&c, &p, false).unwrap();
            for i in 0..4 {
                let fd = central(|u| frame_at(&c, u).unwrap().vector(i), &p, &x, STEP);
                assert!(max_diff(&g.jet.vector_derivative(&x, i), &fd) <= 1e-6);
            }
        }
    }
}

/// `Σ c_k γ_k` for the orthonormal components `c`.
fn clifford_image(g: &GammaSet, c: &[f64; 4]) -> CMatrix {
    (0..4).fold(CMatrix::zero(), |m, k| m + g.gamma(k).scale(Cx::real(c[k])))
}

fn flatten(m: &CMatrix) -> Vec<f64> {
    m.0.iter().flatten().flat_map(|c| [c.re, c.im]).collect()
}

/// Least-squares `Ω = Σ w_b B_b` with `[Ω, V_k] = T_k` for all `k`.
fn solve_commutators(basis: &[CMatrix], vs: &[CMatrix], targets: &[CMatrix]) -> (CMatrix, f64) {
    let rows: usize = vs.len() * 32;
    let mut a = DMatrix::zeros(rows, basis.len());
    let mut b = DVector::zeros(rows);
    for (k, (v, t)) in vs.iter().zip(targets).enumerate() {
        for (j, bj) in basis.iter().enumerate() {
            let comm = *bj * *v - *v * *bj;
            for (r, x) in flatten(&comm).into_iter().enumerate() {
                a[(k * 32 + r, j)] = x;
            }
        }
        for (r, x) in flatten(t).into_iter().enumerate() {
            b[k * 32 + r] = x;
        }
    }
    let w = a.clone().svd(true, true).solve(&b, 1e-12).unwrap();
    let residual = (&a * &w - &b).amax();
    let omega = basis.iter().zip(w.iter()).fold(CMatrix::zero(), |m, (bj, wj)| m + bj.scale(Cx::real(*wj)));
    (omega, residual)
}

fn fd_spinor(field: &SpinorField, p: &[f64; 3], x: &[f64; 3]) -> Spinor {
    let a = field.eval(&shifted(p, x, STEP)).unwrap();
    let b = field.eval(&shifted(p, x, -STEP)).unwrap();
    (a - b).scale(0.5 / STEP)
}

#[test]
fn ambient_spinor_derivative_matches_transport_oracle() {
    let gammas = GammaSet::dirac();
    let action = CliffordAction::new(&gammas);
    let basis: Vec<CMatrix> = (0..4)
        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
        .map(|(i, j)| *gammas.gamma(i) * *gammas.gamma(j))
        .collect();
    let c = chart(CONE, 2);
    let mut rng = rng(22);
    for _ in 0..20 {
        let p = random_point(&c, &mut rng);
        let x = random_direction(&mut rng);
        let field = random_field(&mut rng);
        let frame = frame_at(&c, &p).unwrap();
        let e = frame.orthonormal();
        // [Ω, γ(e_k)] = γ(D_X e_k) with D_X e_k from finite differences.
        let vs: Vec<CMatrix> = (0..4).map(|k| *gammas.gamma(k)).collect();
        let targets: Vec<CMatrix> = (0..4)
            .map(|k| {
                let de = central(|u| frame_at(&c, u).unwrap().orthonormal()[k], &p, &x, STEP);
                clifford_image(&gammas, &std::array::from_fn(|m| SIGNS[m] * gdot(&de, &e[m])))
            })
            .collect();
        let (omega, fit) = solve_commutators(&basis, &vs, &targets);
        assert!(fit <= 1e-6, "commutator system inconsistent: {fit:e}");
        let phi = field.eval(&p).unwrap();
        let oracle = fd_spinor(&field, &p, &x) + omega.apply(&phi);

        let g = PointGeometry::new(&c, &p, false).unwrap();
        let jet = PointSpinor::new(&field, &g, ExtensionPolicy::Constant).unwrap();
        let computed = action.ambient_tangent(&g.jet, &jet.jet, &x);
        assert!((computed - oracle).max_norm() <= 1e-6, "{:e}", (computed - oracle).max_norm());
    }
}

#[test]
fn induced_spinor_derivative_matches_compatibility_oracle() {
    let gammas = GammaSet::dirac();
    let action = CliffordAction::new(&gammas);
    let s0 = *action.s0();
    let basis = vec![s0 * *action.screen(1), s0 * *action.screen(2), *action.screen(1) * *action.screen(2)];
    let c = chart(CONE, 2);
    let mut rng = rng(23);
    for _ in 0..20 {
        let p = random_point(&c, &mut rng);
        let x = random_direction(&mut rng);
        let field = random_field(&mut rng);
        let frame = frame_at(&c, &p).unwrap();
        // [Ω, s_k] = ∇_X s_k for the screen vectors; these fix all three
        // coefficients. The radical is not rotated by lightlike bivectors.
        let image = |v: &[f64; 4]| {
            let [a, b, cc, d] = frame.components(v);
            s0.scale(Cx::real(a))
                + action.screen(1).scale(Cx::real(b))
                + action.screen(2).scale(Cx::real(cc))
                + action.n().scale(Cx::real(d))
        };
        let mut vs = Vec::new();
        let mut targets = Vec::new();
        for k in 1..3 {
            let d = central(|u| frame_at(&c, u).unwrap().vector(k), &p, &x, STEP);
            let h = gdot(&d, &frame.s0);
            let tangent: [f64; 4] = std::array::from_fn(|m| d[m] - h * frame.n[m]);
            vs.push(image(&frame.vector(k)));
            targets.push(image(&tangent));
        }
        let (omega, fit) = solve_commutators(&basis, &vs, &targets);
        assert!(fit <= 1e-6, "commutator system inconsistent: {fit:e}");
        let oracle = fd_spinor(&field, &p, &x) + omega.apply(&field.eval(&p).unwrap());
        let computed = induced_spinor_derivative(&c, &field, &x, &p).unwrap();
        assert!((computed - oracle).max_norm() <= 1e-6, "{:e}", (computed - oracle).max_norm());
    }
}

#[test]
fn induced_curvature_matches_finite_differences() {
    let action = CliffordAction::new(&GammaSet::dirac());
    let c = chart(CONE, 2);
    let mut rng = rng(24);
    for _ in 0..5 {
        let p = random_point(&c, &mut rng);
        let field = random_field(&mut rng);
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            let (ea, eb) = (unit3(a), unit3(b));
            // ∇_a ψ_b with ψ_b = ∇_b φ differentiated numerically.
            let nested = |outer: &[f64; 3], inner: &[f64; 3]| -> Spinor {
                let psi = |u: &[f64; 3]| induced_spinor_derivative(&c, &field, inner, u).unwrap();
                let d = (psi(&shifted(&p, outer, STEP)) - psi(&shifted(&p, outer, -STEP))).scale(0.5 / STEP);
                let jet: FrameJet<f64> = PointGeometry::new(&c, &p, false).unwrap().jet;
                d + action.induced_connection(&jet, outer, &psi(&p))
            };
            let oracle = nested(&ea, &eb) - nested(&eb, &ea);
            let computed = spinor_curvature(
                &c,
                &field,
                TangentField::Coordinate(a),
                TangentField::Coordinate(b),
                &p,
                ConnectionKind::Induced,
            )
            .unwrap();
            assert!((computed - oracle).max_norm() <= 1e-6, "{a}{b}: {:e}", (computed - oracle).max_norm());
        }
    }
}

#[test]
fn second_order_frame_data_matches_finite_differences() {
    // h(s_i, s_j) differentiated along X through a dual-seeded jet.
    let c: Chart = chart(CYLINDER, 2);
    let mut rng = rng(25);
    for _ in 0..10 {
        let p = random_point(&c, &mut rng);
        let x = random_direction(&mut rng);
        let h = |u: &[f64; 3]| {
            let g = PointGeometry::new(&c, u, false).unwrap();
            [g.shape.h[1][1], g.shape.h[1][2], g.shape.h[2][2]]
        };
        let fd = central(h, &p, &x, STEP);
        let jet: FrameJet<Dual<f64>> = frame_jet(&c, &seed(&p, &x)).unwrap();
        let sc = jet.frame.screen;
        let ad = [(0, 0), (0, 1), (1, 1)].map(|(i, j)| jet.second_fundamental_form(&sc[i], &sc[j]).eps);
        assert!(max_diff(&ad, &fd) <= 1e-6, "{ad:?} {fd:?}");
    }
}
