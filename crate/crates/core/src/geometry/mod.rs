//! Parametrized lightlike hypersurfaces of flat ℝ^{3,1}.
//!
//! The ambient metric is `g(a,b) = a0b0 + a1b1 + a2b2 - a3b3`, so the flat
//! ambient derivative is componentwise differentiation and every geometric
//! quantity reduces to derivatives of the chart.

mod chart;
mod frame;
mod shape;

use thiserror::Error;

pub use chart::{unit, Chart, ChartError, ChartSpec, Domain};
pub use frame::{frame_at, frame_jet, induced_metric, metric_rank, Frame, FrameJet, MetricRank, N, RANK_TOL, S0};
pub use shape::{
    classify, induced_connection, mean_curvature, radical_direction, radical_self_pairing, second_fundamental_form,
    shape_data, weingarten, Classification, Radical, ShapeData, TangentField, Weingarten, CLASSIFY_TOL, TANGENCY_TOL,
};

use crate::ad::Real;
use crate::expr::EvalError;

/// Signs of the ambient metric.
pub const SIGNS: [f64; 4] = [1.0, 1.0, 1.0, -1.0];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("induced metric is nondegenerate at {point:?} (eigenvalues {eigenvalues:?})")]
    NotLightlike { point: [f64; 3], eigenvalues: [f64; 3] },
    #[error("induced metric has rank {rank} at {point:?}; expected 2")]
    DegenerateRank { point: [f64; 3], rank: usize },
    #[error("vector expected tangent has transversal part {residual:e}")]
    Tangency { residual: f64 },
}

/// Ambient inner product.
pub fn gdot<S: Real>(a: &[S; 4], b: &[S; 4]) -> S {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] - a[3] * b[3]
}

pub(crate) fn scale<S: Real, const D: usize>(v: &[S; D], k: S) -> [S; D] {
    v.map(|x| x * k)
}

pub(crate) fn sub<S: Real, const D: usize>(a: &[S; D], b: &[S; D]) -> [S; D] {
    std::array::from_fn(|i| a[i] - b[i])
}

/// `Σ c_a v_a`.
pub(crate) fn lincomb<S: Real, const K: usize, const D: usize>(c: &[S; K], v: &[[S; D]; K]) -> [S; D] {
    std::array::from_fn(|m| (0..K).fold(S::zero(), |acc, a| acc + c[a] * v[a][m]))
}
