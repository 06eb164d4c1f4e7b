use serde::Serialize;

use super::chart::Chart;
use super::frame::{frame_at, frame_jet, FrameJet, S0};
use super::{gdot, lincomb, scale, sub, GeometryError};
use crate::ad::Real;
use crate::sweep::sweep;

/// Largest tolerated `|g(V, s0)|` for a vector that must be tangent.
pub const TANGENCY_TOL: f64 = 1e-9;

/// A tangent vector field given by its parameter coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TangentField {
    /// Constant coordinates; `Coordinate(a)` is `∂_a`.
    Constant([f64; 3]),
    Coordinate(usize),
    /// Frame vector `s0`, `s1` or `s2` (index 0, 1, 2).
    Frame(usize),
}

impl TangentField {
    pub fn coords<S: Real>(&self, jet: &FrameJet<S>) -> [S; 3] {
        match *self {
            TangentField::Constant(c) => c.map(S::cst),
            TangentField::Coordinate(a) => std::array::from_fn(|i| S::cst(if i == a { 1.0 } else { 0.0 })),
            TangentField::Frame(i) => jet.frame.tangent_coords(i),
        }
    }

    /// `X` applied to the coordinates of the field.
    pub fn coords_derivative<S: Real>(&self, jet: &FrameJet<S>, x: &[S; 3]) -> [S; 3] {
        match *self {
            TangentField::Frame(i) => jet.coords_derivative(x, i),
            _ => [S::zero(); 3],
        }
    }

    /// Flat ambient derivative `D_X Y`.
    pub fn ambient_derivative<S: Real>(&self, jet: &FrameJet<S>, x: &[S; 3]) -> [S; 4] {
        let y = self.coords(jet);
        let dy = self.coords_derivative(jet, x);
        let mut out = jet.frame.ambient(&dy);
        for a in 0..3 {
            for b in 0..3 {
                let t = scale(&jet.hessian(a, b), x[a] * y[b]);
                out = std::array::from_fn(|m| out[m] + t[m]);
            }
        }
        out
    }
}

/// `h` in the Hessian form, from the second-order jet of the chart.
pub fn second_fundamental_form(
    chart: &Chart,
    point: &[f64; 3],
    x: &[f64; 3],
    y: &[f64; 3],
) -> Result<f64, GeometryError> {
    let frame = frame_at(chart, point)?;
    let jet = chart.jet2(point)?;
    let mut acc = 0.0;
    for a in 0..3 {
        for b in 0..3 {
            let hess: [f64; 4] = std::array::from_fn(|m| jet[m].hess(a, b));
            acc += x[a] * y[b] * gdot(&hess, &frame.s0);
        }
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Weingarten {
    /// `A_N(X)`, ambient components.
    pub shape: [f64; 4],
    /// `τ(X)` with `D_X N = -A_N(X) + τ(X)·N`.
    pub tau: f64,
}

pub fn weingarten(chart: &Chart, point: &[f64; 3], x: &[f64; 3]) -> Result<Weingarten, GeometryError> {
    let jet = frame_jet(chart, point)?;
    let shape = jet.shape_operator(x);
    let residual = gdot(&shape, &jet.frame.s0).abs();
    if residual > TANGENCY_TOL {
        return Err(GeometryError::Tangency { residual });
    }
    Ok(Weingarten { shape, tau: jet.transversal_coefficient(x) })
}

/// `∇_X Y = D_X Y - h(X,Y)·N`, ambient components.
pub fn induced_connection(
    chart: &Chart,
    point: &[f64; 3],
    x: &[f64; 3],
    y: TangentField,
) -> Result<[f64; 4], GeometryError> {
    let jet = frame_jet(chart, point)?;
    let d = y.ambient_derivative(&jet, x);
    let h = jet.second_fundamental_form(x, &y.coords(&jet));
    let out = sub(&d, &scale(&jet.frame.n, h));
    let residual = gdot(&out, &jet.frame.s0).abs();
    if residual > TANGENCY_TOL {
        return Err(GeometryError::Tangency { residual });
    }
    Ok(out)
}

/// Second fundamental form, shape operator and transversal coefficients on
/// the frame `s0, s1, s2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ShapeData {
    pub h: [[f64; 3]; 3],
    /// `A_N(s_a)`, ambient components.
    pub shape_operator: [[f64; 4]; 3],
    pub tau: [f64; 3],
    pub mean_curvature: f64,
}

impl ShapeData {
    pub fn from_jet(jet: &FrameJet<f64>) -> Self {
        let f = &jet.frame;
        let c: [[f64; 3]; 3] = std::array::from_fn(|i| f.tangent_coords(i));
        let h = std::array::from_fn(|i| std::array::from_fn(|j| jet.second_fundamental_form(&c[i], &c[j])));
        Self {
            h,
            shape_operator: c.map(|x| jet.shape_operator(&x)),
            tau: c.map(|x| jet.transversal_coefficient(&x)),
            mean_curvature: 0.5 * (h[1][1] + h[2][2]),
        }
    }

    /// Largest deviation of the screen block from `c·δ_ij`.
    pub fn umbilic_defect(&self) -> f64 {
        self.h[1][2].abs().max(self.h[2][1].abs()).max((self.h[1][1] - self.h[2][2]).abs())
    }

    pub fn max_abs(&self) -> f64 {
        self.h.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()))
    }
}

pub fn shape_data(chart: &Chart, point: &[f64; 3]) -> Result<ShapeData, GeometryError> {
    Ok(ShapeData::from_jet(&frame_jet(chart, point)?))
}

/// `H = ½(h(s1,s1) + h(s2,s2))`.
pub fn mean_curvature(chart: &Chart, point: &[f64; 3]) -> Result<f64, GeometryError> {
    Ok(shape_data(chart, point)?.mean_curvature)
}

/// Radical direction as parameter coordinates and ambient vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Radical {
    pub params: [f64; 3],
    pub ambient: [f64; 4],
}

pub fn radical_direction(chart: &Chart, point: &[f64; 3]) -> Result<Radical, GeometryError> {
    let f = frame_at(chart, point)?;
    Ok(Radical { params: f.radical, ambient: lincomb(&f.radical, &f.tangents) })
}

pub const CLASSIFY_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub totally_geodesic: bool,
    pub totally_umbilical: bool,
    pub minimal: bool,
    pub max_abs_h: f64,
    pub max_umbilic_defect: f64,
    pub max_abs_mean_curvature: f64,
    pub tolerance: f64,
}

impl Classification {
    pub fn from_shapes<'a>(shapes: impl IntoIterator<Item = &'a ShapeData>, tolerance: f64) -> Self {
        let (mut h, mut u, mut m) = (0.0f64, 0.0f64, 0.0f64);
        for s in shapes {
            h = h.max(s.max_abs());
            u = u.max(s.umbilic_defect());
            m = m.max(s.mean_curvature.abs());
        }
        Self {
            totally_geodesic: h <= tolerance,
            totally_umbilical: u <= tolerance,
            minimal: m <= tolerance,
            max_abs_h: h,
            max_umbilic_defect: u,
            max_abs_mean_curvature: m,
            tolerance,
        }
    }
}

/// Classifies the chart over its sample grid.
pub fn classify(chart: &Chart, tolerance: f64, threads: Option<usize>) -> Result<Classification, GeometryError> {
    let shapes: Result<Vec<_>, _> = sweep(&chart.grid(), threads, |_, p| shape_data(chart, p)).into_iter().collect();
    Ok(Classification::from_shapes(&shapes?, tolerance))
}

/// `h(s0, s0)` at a point; nonzero signals a chart that is not lightlike.
pub fn radical_self_pairing(jet: &FrameJet<f64>) -> f64 {
    let r = jet.frame.tangent_coords(S0);
    jet.second_fundamental_form(&r, &r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::chart::Domain;

    fn chart(coords: [&str; 4]) -> Chart {
        let domain = Domain { min: [1.0, -0.5, -0.5], max: [2.0, 0.5, 0.5], grid: [3, 3, 3] };
        Chart::new(coords, ["u1", "u2", "u3"], domain).unwrap()
    }

    const EXAMPLE: [&str; 4] = ["-u1", "u2-u3", "-u2-u3", "-u1"];
    const CONE: [&str; 4] = ["u1", "u2", "u3", "sqrt(u1^2+u2^2+u3^2)"];
    const CYLINDER: [&str; 4] = ["u1", "u2", "u3", "sqrt(u1^2+u2^2)"];

    #[test]
    fn example_is_flat_everywhere() {
        let c = chart(EXAMPLE);
        let s = shape_data(&c, &[1.5, 0.0, 0.2]).unwrap();
        assert_eq!(s.max_abs(), 0.0);
        assert_eq!(s.tau, [0.0; 3]);
        let cls = classify(&c, CLASSIFY_TOL, Some(1)).unwrap();
        assert!(cls.totally_geodesic && cls.totally_umbilical && cls.minimal);
    }

    #[test]
    fn light_cone_is_umbilic_not_minimal() {
        let c = chart(CONE);
        let s = shape_data(&c, &[1.0, 0.0, 0.0]).unwrap();
        assert!((s.h[1][1] - s.h[2][2]).abs() < 1e-12);
        assert!((s.h[1][1] + 1.0).abs() < 1e-12, "{:?}", s.h);
        assert!((s.mean_curvature - s.h[1][1]).abs() < 1e-12);
        assert!(s.tau.iter().all(|t| t.abs() < 1e-12));
        let cls = classify(&c, CLASSIFY_TOL, None).unwrap();
        assert!(!cls.totally_geodesic && cls.totally_umbilical && !cls.minimal);
    }

    #[test]
    fn cylinder_over_cone_is_generic() {
        let cls = classify(&chart(CYLINDER), CLASSIFY_TOL, None).unwrap();
        assert!(!cls.totally_geodesic && !cls.totally_umbilical && !cls.minimal);
    }

    #[test]
    fn hessian_and_frame_routes_agree() {
        for coords in [CONE, CYLINDER] {
            let jet = frame_jet(&chart(coords), &[1.4, 0.3, -0.2]).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    let x = jet.frame.tangent_coords(i);
                    let y = jet.frame.tangent_coords(j);
                    let a = jet.second_fundamental_form(&x, &y);
                    let b = jet.second_fundamental_form_frame(&x, j);
                    assert!((a - b).abs() < 1e-12, "{i}{j}: {a} {b}");
                }
            }
        }
    }

    #[test]
    fn induced_connection_is_tangent() {
        let c = chart(CONE);
        for y in [TangentField::Frame(1), TangentField::Coordinate(2), TangentField::Frame(0)] {
            induced_connection(&c, &[1.2, 0.1, 0.3], &[0.3, -1.0, 0.5], y).unwrap();
        }
        let w = weingarten(&c, &[1.2, 0.1, 0.3], &[0.0; 3]).unwrap();
        assert_eq!(w.shape, [0.0; 4]);
        assert_eq!(w.tau, 0.0);
    }
}
