//! Spinor connections and Dirac operators on the frame `s0, s1, s2, N`.
//!
//! Two independent routes are kept apart on purpose. The ambient connection
//! works on the orthonormal frame `s1..s4` with the `γ` matrices directly;
//! the induced connection uses the images of lightlike Clifford elements
//! `e0e1, e0e2, e1e2` under the embedding into Cℓ(3,1).

use std::f64::consts::FRAC_1_SQRT_2;

use super::field::SpinorJet;
use super::SpinorError;
use crate::ad::Real;
use crate::clifford::{Blade, Multivector, Signature};
use crate::geometry::{gdot, Frame, FrameJet, N, S0, SIGNS};
use crate::spin::{CMatrix, Cx, GammaSet, Spinor};

/// Direction of differentiation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Direction<S> {
    /// Tangent vector by parameter coordinates.
    Tangent([S; 3]),
    /// Arbitrary ambient vector; its transversal part needs the extension.
    Ambient([S; 4]),
}

/// Induced connection data along one tangent direction `X`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct ConnectionCoefficients<S = f64> {
    /// `g(∇_X s1, s2)`; equals `-g(∇_X s2, s1)`.
    pub omega_12: S,
    /// `g(∇_X s_i, N)` for `i = 1, 2`.
    pub omega_n: [S; 2],
    /// `h(X, s_i)` for `i = 1, 2`.
    pub h: [S; 2],
}

impl<S: Real> ConnectionCoefficients<S> {
    pub fn new(jet: &FrameJet<S>, x: &[S; 3]) -> Self {
        let f = &jet.frame;
        let d1 = jet.induced_vector_derivative(x, 1);
        let d2 = jet.induced_vector_derivative(x, 2);
        Self {
            omega_12: gdot(&d1, &f.s2),
            omega_n: [gdot(&d1, &f.n), gdot(&d2, &f.n)],
            h: [jet.second_fundamental_form(x, &f.screen[0]), jet.second_fundamental_form(x, &f.screen[1])],
        }
    }

    /// `g(∇_X s2, s1)`, the other half of the antisymmetric pair.
    pub fn omega_21(jet: &FrameJet<S>, x: &[S; 3]) -> S {
        gdot(&jet.induced_vector_derivative(x, 2), &jet.frame.s1)
    }
}

/// Precomputed Clifford images used by the calculus.
#[derive(Clone, Debug)]
pub struct CliffordAction {
    gammas: [CMatrix; 4],
    /// Image of the radical generator, `(γ3 + γ4)/√2`.
    null_s0: CMatrix,
    /// Image of the transversal, `(γ3 - γ4)/√2`.
    null_n: CMatrix,
    e01: CMatrix,
    e02: CMatrix,
    e12: CMatrix,
    pairs: [[CMatrix; 4]; 4],
}

impl CliffordAction {
    pub fn new(gammas: &GammaSet) -> Self {
        let sig = Signature::degenerate_120();
        let image = |idx: &[usize]| {
            gammas
                .matrix(&Multivector::from_terms(sig, [(Blade::from_indices(idx), 1.0)]))
                .expect("lightlike blades embed")
        };
        let g = gammas.gammas;
        let h = Cx::real(FRAC_1_SQRT_2);
        Self {
            gammas: g,
            null_s0: image(&[0]),
            null_n: (g[2] - g[3]).scale(h),
            e01: image(&[0, 1]),
            e02: image(&[0, 2]),
            e12: image(&[1, 2]),
            pairs: std::array::from_fn(|i| std::array::from_fn(|j| g[i] * g[j])),
        }
    }

    /// `γ_k`, `k` in `0..4` for `s1..s4`.
    pub fn gamma(&self, k: usize) -> &CMatrix {
        &self.gammas[k]
    }

    pub fn s0(&self) -> &CMatrix {
        &self.null_s0
    }

    pub fn n(&self) -> &CMatrix {
        &self.null_n
    }

    /// Clifford action of a screen vector `s_i`, `i` in `1..=2`.
    pub fn screen(&self, i: usize) -> &CMatrix {
        &self.gammas[i - 1]
    }

    /// `V·ψ` for an ambient vector, through its components on `s0, s1, s2, N`.
    pub fn vector<S: Real>(&self, frame: &Frame<S>, v: &[S; 4], psi: &Spinor<S>) -> Spinor<S> {
        let [c0, c1, c2, cn] = frame.components(v);
        self.null_s0.apply(psi).scale(c0)
            + self.gammas[0].apply(psi).scale(c1)
            + self.gammas[1].apply(psi).scale(c2)
            + self.null_n.apply(psi).scale(cn)
    }

    /// `s_i·N·ψ`.
    pub fn screen_n<S: Real>(&self, i: usize, psi: &Spinor<S>) -> Spinor<S> {
        self.screen(i).apply(&self.null_n.apply(psi))
    }

    /// Spin connection of the flat ambient along `X`, applied to `ψ`:
    /// `½ Σ_{i<j} ε_i ε_j g(D_X e_i, e_j) γ_i γ_j ψ` over the orthonormal frame.
    pub fn ambient_connection<S: Real>(&self, jet: &FrameJet<S>, x: &[S; 3], psi: &Spinor<S>) -> Spinor<S> {
        let e = jet.frame.orthonormal();
        let d = |i| jet.vector_derivative(x, i);
        let (ds0, dn) = (d(S0), d(N));
        let de: [[S; 4]; 4] = [
            d(1),
            d(2),
            std::array::from_fn(|m| (ds0[m] + dn[m]) * FRAC_1_SQRT_2),
            std::array::from_fn(|m| (ds0[m] - dn[m]) * FRAC_1_SQRT_2),
        ];
        let mut out = Spinor::zero();
        for i in 0..4 {
            for j in i + 1..4 {
                let c = gdot(&de[i], &e[j]) * (0.5 * SIGNS[i] * SIGNS[j]);
                out = out + self.pairs[i][j].apply(psi).scale(c);
            }
        }
        out
    }

    /// Induced spin connection along `X` applied to `ψ`:
    /// `½[-g(∇_X s1, N) s0s1 - g(∇_X s2, N) s0s2 + g(∇_X s1, s2) s1s2] ψ`.
    pub fn induced_connection<S: Real>(&self, jet: &FrameJet<S>, x: &[S; 3], psi: &Spinor<S>) -> Spinor<S> {
        let c = ConnectionCoefficients::new(jet, x);
        let ([a1, a2], w12) = (c.omega_n, c.omega_12);
        (self.e12.apply(psi).scale(w12) - self.e01.apply(psi).scale(a1) - self.e02.apply(psi).scale(a2)).scale_f64(0.5)
    }

    /// `½ Σ_i h(X, s_i) s_i·N·ψ`, the second-fundamental-form term relating
    /// the two connections.
    pub fn gauss_term<S: Real>(&self, jet: &FrameJet<S>, x: &[S; 3], psi: &Spinor<S>) -> Spinor<S> {
        let h = ConnectionCoefficients::new(jet, x).h;
        (self.screen_n(1, psi).scale(h[0]) + self.screen_n(2, psi).scale(h[1])).scale_f64(0.5)
    }

    /// `∇̃_V φ` for the field extended off the hypersurface along `N`.
    pub fn ambient_derivative<S: Real>(
        &self,
        jet: &FrameJet<S>,
        phi: &SpinorJet<S>,
        dir: &Direction<S>,
    ) -> Result<Spinor<S>, SpinorError> {
        match dir {
            Direction::Tangent(x) => Ok(self.ambient_tangent(jet, phi, x)),
            Direction::Ambient(v) => {
                let x = jet.frame.tangent_part_coords(v);
                let b = gdot(v, &jet.frame.s0);
                let dw = phi.dw.ok_or(SpinorError::ExtensionRequired)?;
                // The frame is constant along N in the tube extension, so
                // only the tangent part contributes to the connection.
                Ok(self.ambient_tangent(jet, phi, &x) + dw.scale(b))
            }
        }
    }

    pub fn ambient_tangent<S: Real>(&self, jet: &FrameJet<S>, phi: &SpinorJet<S>, x: &[S; 3]) -> Spinor<S> {
        phi.directional(x) + self.ambient_connection(jet, x, &phi.value)
    }

    /// `∇_X φ` for the induced spin connection.
    pub fn induced_derivative<S: Real>(&self, jet: &FrameJet<S>, phi: &SpinorJet<S>, x: &[S; 3]) -> Spinor<S> {
        phi.directional(x) + self.induced_connection(jet, x, &phi.value)
    }

    /// `D φ = Σ_i s_i·∇_{s_i} φ + s0·∇_{s0} φ`.
    pub fn dirac_induced<S: Real>(&self, jet: &FrameJet<S>, phi: &SpinorJet<S>) -> Spinor<S> {
        let f = &jet.frame;
        let mut out = self.null_s0.apply(&self.induced_derivative(jet, phi, &f.radical));
        for i in 1..=2 {
            out = out + self.screen(i).apply(&self.induced_derivative(jet, phi, &f.screen[i - 1]));
        }
        out
    }

    /// Ambient Dirac operator in the null frame:
    /// `Σ_i s_i·∇̃_{s_i} + s0·∇̃_N + N·∇̃_{s0}`.
    pub fn dirac_ambient_null<S: Real>(&self, jet: &FrameJet<S>, phi: &SpinorJet<S>) -> Result<Spinor<S>, SpinorError> {
        let f = &jet.frame;
        let mut out = self.null_s0.apply(&self.ambient_derivative(jet, phi, &Direction::Ambient(f.n))?)
            + self.null_n.apply(&self.ambient_tangent(jet, phi, &f.radical));
        for i in 1..=2 {
            out = out + self.screen(i).apply(&self.ambient_tangent(jet, phi, &f.screen[i - 1]));
        }
        Ok(out)
    }

    /// Ambient Dirac operator in the orthonormal frame: `Σ_k ε_k e_k·∇̃_{e_k}`.
    pub fn dirac_ambient_orthonormal<S: Real>(
        &self,
        jet: &FrameJet<S>,
        phi: &SpinorJet<S>,
    ) -> Result<Spinor<S>, SpinorError> {
        let e = jet.frame.orthonormal();
        let mut out = Spinor::zero();
        for k in 0..4 {
            let d = self.ambient_derivative(jet, phi, &Direction::Ambient(e[k]))?;
            out = out + self.gammas[k].apply(&d).scale_f64(SIGNS[k]);
        }
        Ok(out)
    }
}
