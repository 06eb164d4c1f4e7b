//! Quasi-orthonormal frames `{s0, s1, s2, N}` along a lightlike chart.
//!
//! The construction is a deterministic function of the parameter point and is
//! generic over [`Real`], so running it on seeded duals differentiates every
//! frame field. All discrete choices (pivots, signs) are made on base values
//! and are therefore shared by every derivative level.

use nalgebra::{Matrix3, SymmetricEigen};

use super::chart::{unit, Chart};
use super::{gdot, lincomb, scale, sub, GeometryError, SIGNS};
use crate::ad::{seed, Dual, Real};

/// Relative threshold below which a Gram eigenvalue counts as zero.
pub const RANK_TOL: f64 = 1e-9;

/// Relative threshold for the first-nonzero sign rule on the radical vector.
const SIGN_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricRank {
    pub rank: usize,
    /// Eigenvalues in increasing order.
    pub eigenvalues: [f64; 3],
}

pub fn metric_rank(gram: &[[f64; 3]; 3]) -> MetricRank {
    let m = Matrix3::from_fn(|i, j| gram[i][j]);
    let mut ev: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    let scale = ev.iter().fold(1.0f64, |a, x| a.max(x.abs()));
    let rank = ev.iter().filter(|x| x.abs() > RANK_TOL * scale).count();
    MetricRank { rank, eigenvalues: [ev[0], ev[1], ev[2]] }
}

pub fn induced_metric<S: Real>(t: &[[S; 4]; 3]) -> [[S; 3]; 3] {
    std::array::from_fn(|a| std::array::from_fn(|b| gdot(&t[a], &t[b])))
}

fn adjugate<S: Real>(g: &[[S; 3]; 3]) -> [[S; 3]; 3] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let (i1, i2, j1, j2) = ((i + 1) % 3, (i + 2) % 3, (j + 1) % 3, (j + 2) % 3);
            g[j1][i1] * g[j2][i2] - g[j1][i2] * g[j2][i1]
        })
    })
}

fn argmax_abs(v: impl Iterator<Item = f64>) -> usize {
    let mut best = (0, f64::NEG_INFINITY);
    for (i, x) in v.enumerate() {
        if x.abs() > best.1 {
            best = (i, x.abs());
        }
    }
    best.0
}

/// Frame of a lightlike chart at one parameter point.
///
/// Pairings: `g(s0,s0) = g(N,N) = 0`, `g(s0,N) = 1`, `g(s_i,s_j) = δ_ij` and
/// `s0`, `N` orthogonal to the screen `s1`, `s2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Frame<S> {
    pub position: [S; 4],
    pub tangents: [[S; 4]; 3],
    pub gram: [[S; 3]; 3],
    /// Parameter coordinates of `s0`; largest entry 1, first nonzero positive.
    pub radical: [S; 3],
    /// Parameter coordinates of `s1`, `s2`.
    pub screen: [[S; 3]; 2],
    pub s0: [S; 4],
    pub s1: [S; 4],
    pub s2: [S; 4],
    pub n: [S; 4],
    /// Index of the largest radical coordinate; the screen is built from the
    /// other two coordinate tangents.
    pub pivot: usize,
    /// Gram–Schmidt norms dividing the screen vectors.
    pub screen_norms: [S; 2],
    /// Ambient axis used to seed `N`, and its pairing with `s0`.
    pub axis: usize,
    pub pairing: S,
}

/// Index of a frame vector in the order `s0, s1, s2, N`.
pub const S0: usize = 0;
pub const N: usize = 3;

impl<S: Real> Frame<S> {
    pub fn map<T: Real>(&self, f: impl Fn(S) -> T + Copy) -> Frame<T> {
        let v4 = |v: &[S; 4]| v.map(f);
        let v3 = |v: &[S; 3]| v.map(f);
        Frame {
            position: v4(&self.position),
            tangents: self.tangents.each_ref().map(v4),
            gram: self.gram.each_ref().map(v3),
            radical: v3(&self.radical),
            screen: self.screen.each_ref().map(v3),
            s0: v4(&self.s0),
            s1: v4(&self.s1),
            s2: v4(&self.s2),
            n: v4(&self.n),
            pivot: self.pivot,
            screen_norms: self.screen_norms.map(f),
            axis: self.axis,
            pairing: f(self.pairing),
        }
    }

    pub fn values(&self) -> Frame<f64> {
        self.map(|x| x.value())
    }

    /// Frame vector `i` in the order `s0, s1, s2, N`.
    pub fn vector(&self, i: usize) -> [S; 4] {
        [self.s0, self.s1, self.s2, self.n][i]
    }

    /// Parameter coordinates of tangent frame vector `i` in the order `s0, s1, s2`.
    pub fn tangent_coords(&self, i: usize) -> [S; 3] {
        match i {
            0 => self.radical,
            k => self.screen[k - 1],
        }
    }

    /// `Σ x^a ∂_a F`.
    pub fn ambient(&self, x: &[S; 3]) -> [S; 4] {
        lincomb(x, &self.tangents)
    }

    /// Orthonormal frame `s1, s2, s3 = (s0+N)/√2, s4 = (s0-N)/√2` with
    /// signs `(+,+,+,-)`.
    pub fn orthonormal(&self) -> [[S; 4]; 4] {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s3 = std::array::from_fn(|m| (self.s0[m] + self.n[m]) * h);
        let s4 = std::array::from_fn(|m| (self.s0[m] - self.n[m]) * h);
        [self.s1, self.s2, s3, s4]
    }

    /// Components of `v` on `s0, s1, s2, N`.
    pub fn components(&self, v: &[S; 4]) -> [S; 4] {
        [gdot(v, &self.n), gdot(v, &self.s1), gdot(v, &self.s2), gdot(v, &self.s0)]
    }

    /// Components of `v` on the orthonormal frame `s1..s4`, i.e. the
    /// coefficients of `γ1..γ4` in the Clifford image of `v`.
    pub fn gamma_components(&self, v: &[S; 4]) -> [S; 4] {
        let e = self.orthonormal();
        std::array::from_fn(|k| gdot(v, &e[k]) * SIGNS[k])
    }

    /// Parameter coordinates of the tangent part of `v` (its component
    /// along `N` dropped).
    pub fn tangent_part_coords(&self, v: &[S; 4]) -> [S; 3] {
        let [a, b, c, _] = self.components(v);
        std::array::from_fn(|i| a * self.radical[i] + b * self.screen[0][i] + c * self.screen[1][i])
    }

    /// The six pairing residuals, in the order
    /// `g(s0,s0), g(N,N), g(s0,N)-1, g(s0,s_i), g(N,s_i), g(s_i,s_j)-δ_ij`,
    /// each reduced to its largest magnitude.
    pub fn pairing_residuals(&self) -> [f64; 6] {
        let v = self.values();
        let g = |a: &[f64; 4], b: &[f64; 4]| gdot(a, b);
        let screen = [v.s1, v.s2];
        let max = |it: &mut dyn Iterator<Item = f64>| it.fold(0.0f64, |m, x| m.max(x.abs()));
        [
            g(&v.s0, &v.s0).abs(),
            g(&v.n, &v.n).abs(),
            (g(&v.s0, &v.n) - 1.0).abs(),
            max(&mut screen.iter().map(|s| g(&v.s0, s))),
            max(&mut screen.iter().map(|s| g(&v.n, s))),
            max(&mut (0..2)
                .flat_map(|i| (0..2).map(move |j| (i, j)))
                .map(|(i, j)| g(&screen[i], &screen[j]) - if i == j { 1.0 } else { 0.0 })),
        ]
    }
}

/// Builds the frame at `u`.
pub fn frame_at<S: Real>(chart: &Chart, u: &[S; 3]) -> Result<Frame<S>, GeometryError> {
    let point = u.map(|x| x.value());
    let (position, t) = chart.tangents(u)?;
    let gram = induced_metric(&t);
    let rank = metric_rank(&gram.map(|r| r.map(|x| x.value())));
    match rank.rank {
        3 => return Err(GeometryError::NotLightlike { point, eigenvalues: rank.eigenvalues }),
        0 | 1 => return Err(GeometryError::DegenerateRank { point, rank: rank.rank }),
        _ => {}
    }

    // adj(G) = c·ηηᵀ for a rank-2 symmetric G; its largest column spans the kernel.
    let adj = adjugate(&gram);
    let col = argmax_abs((0..3).map(|j| adj[j][j].value()));
    let raw: [S; 3] = std::array::from_fn(|i| adj[i][col]);
    let pivot = argmax_abs(raw.iter().map(|x| x.value()));
    let mut radical = raw.map(|x| x / raw[pivot]);
    let first = radical.iter().find(|x| x.value().abs() > SIGN_TOL).map(|x| x.value());
    if first.is_some_and(|x| x < 0.0) {
        radical = radical.map(|x| -x);
    }
    let s0 = lincomb(&radical, &t);

    // Gram–Schmidt on the two coordinate tangents other than the pivot.
    let [p, q] = match pivot {
        0 => [1, 2],
        1 => [0, 2],
        _ => [0, 1],
    };
    let norm = |v: &[S; 4]| -> Result<S, GeometryError> {
        let n2 = gdot(v, v);
        if n2.value() <= 0.0 {
            return Err(GeometryError::DegenerateRank { point, rank: rank.rank });
        }
        Ok(n2.sqrt())
    };
    let n1 = norm(&t[p])?;
    let s1 = scale(&t[p], S::one() / n1);
    let c1: [S; 3] = scale(&unit(p), S::one() / n1);
    let proj = gdot(&t[q], &s1);
    let r2 = sub(&t[q], &scale(&s1, proj));
    let n2 = norm(&r2)?;
    let s2 = scale(&r2, S::one() / n2);
    let c2: [S; 3] = scale(&sub(&unit(q), &scale(&c1, proj)), S::one() / n2);

    // N = V'/c - g(V',V')/(2c²)·s0 with V' the screen-orthogonal part of an
    // ambient axis; unique given s0, s1, s2.
    let axis = argmax_abs((0..4).map(|m| SIGNS[m] * s0[m].value()));
    let v: [S; 4] = std::array::from_fn(|m| if m == axis { S::one() } else { S::zero() });
    let v = sub(&sub(&v, &scale(&s1, gdot(&v, &s1))), &scale(&s2, gdot(&v, &s2)));
    let c = gdot(&v, &s0);
    let n = sub(&scale(&v, S::one() / c), &scale(&s0, gdot(&v, &v) / (c * c * 2.0)));

    Ok(Frame {
        position,
        tangents: t,
        gram,
        radical,
        screen: [c1, c2],
        s0,
        s1,
        s2,
        n,
        pivot,
        screen_norms: [n1, n2],
        axis,
        pairing: c,
    })
}

/// A frame together with its first derivatives along the coordinate
/// directions: `d[a]` holds `∂_a` of every field of `frame`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrameJet<S> {
    pub frame: Frame<S>,
    pub d: [Frame<S>; 3],
}

pub fn frame_jet<S: Real>(chart: &Chart, u: &[S; 3]) -> Result<FrameJet<S>, GeometryError> {
    let mut parts: Vec<Frame<Dual<S>>> = Vec::with_capacity(3);
    for a in 0..3 {
        parts.push(frame_at(chart, &seed(u, &unit(a)))?);
    }
    Ok(FrameJet { frame: parts[0].map(|x| x.re), d: std::array::from_fn(|a| parts[a].map(|x| x.eps)) })
}

impl<S: Real> FrameJet<S> {
    /// `D_X` of frame vector `i` (order `s0, s1, s2, N`) for `X = Σ x^a ∂_a`.
    pub fn vector_derivative(&self, x: &[S; 3], i: usize) -> [S; 4] {
        let parts: [[S; 4]; 3] = std::array::from_fn(|a| self.d[a].vector(i));
        lincomb(x, &parts)
    }

    /// `X` applied to the parameter coordinates of tangent frame vector `i`.
    pub fn coords_derivative(&self, x: &[S; 3], i: usize) -> [S; 3] {
        let parts: [[S; 3]; 3] = std::array::from_fn(|a| self.d[a].tangent_coords(i));
        lincomb(x, &parts)
    }

    /// `∂_a ∂_b F`.
    pub fn hessian(&self, a: usize, b: usize) -> [S; 4] {
        self.d[a].tangents[b]
    }

    /// `h(X, Y) = Σ x^a y^b g(∂_a∂_b F, s0)`.
    pub fn second_fundamental_form(&self, x: &[S; 3], y: &[S; 3]) -> S {
        let mut acc = S::zero();
        for a in 0..3 {
            for b in 0..3 {
                acc = acc + x[a] * y[b] * gdot(&self.hessian(a, b), &self.frame.s0);
            }
        }
        acc
    }

    /// `h(X, s_i)` read off the frame derivative: `g(D_X s_i, s0)`.
    pub fn second_fundamental_form_frame(&self, x: &[S; 3], i: usize) -> S {
        gdot(&self.vector_derivative(x, i), &self.frame.s0)
    }

    /// `τ(X) = g(D_X N, s0)`.
    pub fn transversal_coefficient(&self, x: &[S; 3]) -> S {
        gdot(&self.vector_derivative(x, N), &self.frame.s0)
    }

    /// `A_N(X) = τ(X)·N - D_X N`.
    pub fn shape_operator(&self, x: &[S; 3]) -> [S; 4] {
        let dn = self.vector_derivative(x, N);
        sub(&scale(&self.frame.n, self.transversal_coefficient(x)), &dn)
    }

    /// Induced connection `∇_X s_i = D_X s_i - h(X, s_i)·N`.
    pub fn induced_vector_derivative(&self, x: &[S; 3], i: usize) -> [S; 4] {
        let d = self.vector_derivative(x, i);
        sub(&d, &scale(&self.frame.n, gdot(&d, &self.frame.s0)))
    }
}
