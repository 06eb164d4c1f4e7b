use serde::Serialize;

use super::calculus::{CliffordAction, Direction};
use super::field::{ExtensionPolicy, SpinorField, SpinorJet};
use super::{SpinorError, TheoremId, TheoremResidual};
use crate::ad::{seed, Dual, Real};
use crate::geometry::{
    frame_jet, gdot, unit, Chart, FrameJet, GeometryError, ShapeData, TangentField, CLASSIFY_TOL, N, S0,
};
use crate::spin::{GammaSet, Spinor};

/// Pass thresholds on the max-norm residual of each identity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    pub gauss: f64,
    pub geodesic: f64,
    pub umbilic: f64,
    pub curvature: f64,
    pub dirac_forms: f64,
    pub dirac: f64,
    pub minimal: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            gauss: 1e-6,
            geodesic: 1e-8,
            umbilic: 1e-6,
            curvature: 1e-5,
            dirac_forms: 1e-9,
            dirac: 1e-6,
            minimal: 1e-6,
        }
    }
}

impl Tolerances {
    /// Every threshold set to `tol`.
    pub fn uniform(tol: f64) -> Self {
        Self { gauss: tol, geodesic: tol, umbilic: tol, curvature: tol, dirac_forms: tol, dirac: tol, minimal: tol }
    }

    pub fn get(&self, id: TheoremId) -> f64 {
        match id {
            TheoremId::Gauss => self.gauss,
            TheoremId::Geodesic => self.geodesic,
            TheoremId::Umbilic => self.umbilic,
            TheoremId::Curvature | TheoremId::CurvatureStatement => self.curvature,
            TheoremId::DiracForms => self.dirac_forms,
            TheoremId::Dirac => self.dirac,
            TheoremId::Minimal => self.minimal,
        }
    }
}

/// Frame data cached at one sample point. The second-order part holds the
/// frame jet re-evaluated on duals seeded along each coordinate, so that
/// derivatives of derived fields are available for curvature.
#[derive(Clone, Debug)]
pub struct PointGeometry {
    pub point: [f64; 3],
    pub jet: FrameJet<f64>,
    pub shape: ShapeData,
    outer: Option<Box<[FrameJet<Dual<f64>>; 3]>>,
}

impl PointGeometry {
    pub fn new(chart: &Chart, point: &[f64; 3], second_order: bool) -> Result<Self, GeometryError> {
        let jet = frame_jet(chart, point)?;
        let outer = if second_order {
            let mut parts = Vec::with_capacity(3);
            for a in 0..3 {
                parts.push(frame_jet(chart, &seed(point, &unit(a)))?);
            }
            Some(Box::new(parts.try_into().expect("three jets")))
        } else {
            None
        };
        Ok(Self { point: *point, shape: ShapeData::from_jet(&jet), jet, outer })
    }

    pub fn has_second_order(&self) -> bool {
        self.outer.is_some()
    }

    fn outer(&self) -> Result<&[FrameJet<Dual<f64>>; 3], SpinorError> {
        self.outer.as_deref().ok_or(SpinorError::MissingSecondOrder)
    }
}

/// A spinor field's jet at a point, with the dual-seeded copies matching
/// [`PointGeometry`]'s second-order data.
#[derive(Clone, Debug)]
pub struct PointSpinor {
    pub jet: SpinorJet<f64>,
    outer: Option<Box<[SpinorJet<Dual<f64>>; 3]>>,
}

impl PointSpinor {
    pub fn new(field: &SpinorField, geom: &PointGeometry, policy: ExtensionPolicy) -> Result<Self, SpinorError> {
        let jet = SpinorJet::new(field, &geom.point, policy)?;
        let outer = if geom.has_second_order() {
            let mut parts = Vec::with_capacity(3);
            for a in 0..3 {
                parts.push(SpinorJet::new(field, &seed(&geom.point, &unit(a)), policy)?);
            }
            Some(Box::new(parts.try_into().expect("three jets")))
        } else {
            None
        };
        Ok(Self { jet, outer })
    }

    fn outer(&self) -> Result<&[SpinorJet<Dual<f64>>; 3], SpinorError> {
        self.outer.as_deref().ok_or(SpinorError::MissingSecondOrder)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConnectionKind {
    Ambient,
    Induced,
}

/// Ambient Dirac operator evaluated in both frames.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DiracForms {
    pub null_frame: Spinor,
    pub orthonormal: Spinor,
}

/// The spinor calculus for a fixed representation and extension policy.
#[derive(Clone, Debug)]
pub struct Calculus {
    pub action: CliffordAction,
    pub policy: ExtensionPolicy,
    pub tolerances: Tolerances,
}

impl Default for Calculus {
    fn default() -> Self {
        Self::new(&GammaSet::dirac(), ExtensionPolicy::default(), Tolerances::default())
    }
}

impl Calculus {
    pub fn new(gammas: &GammaSet, policy: ExtensionPolicy, tolerances: Tolerances) -> Self {
        Self { action: CliffordAction::new(gammas), policy, tolerances }
    }

    fn residual(
        &self,
        id: TheoremId,
        geom: &PointGeometry,
        label: impl Into<String>,
        lhs: Spinor,
        rhs: Spinor,
    ) -> TheoremResidual {
        TheoremResidual::new(id, geom.point, label, lhs, rhs, self.tolerances.get(id))
    }

    fn derivative<S: Real>(
        &self,
        kind: ConnectionKind,
        jet: &FrameJet<S>,
        phi: &SpinorJet<S>,
        x: &[S; 3],
    ) -> Spinor<S> {
        match kind {
            ConnectionKind::Ambient => self.action.ambient_tangent(jet, phi, x),
            ConnectionKind::Induced => self.action.induced_derivative(jet, phi, x),
        }
    }

    fn connection(&self, kind: ConnectionKind, jet: &FrameJet<f64>, x: &[f64; 3], psi: &Spinor) -> Spinor {
        match kind {
            ConnectionKind::Ambient => self.action.ambient_connection(jet, x, psi),
            ConnectionKind::Induced => self.action.induced_connection(jet, x, psi),
        }
    }

    /// `∇̃_X φ` against `∇_X φ + ½ Σ h(X,s_i) s_i·N·φ`.
    pub fn gauss(&self, geom: &PointGeometry, phi: &PointSpinor, x: &[f64; 3], label: &str) -> TheoremResidual {
        let lhs = self.action.ambient_tangent(&geom.jet, &phi.jet, x);
        let rhs = self.action.induced_derivative(&geom.jet, &phi.jet, x)
            + self.action.gauss_term(&geom.jet, x, &phi.jet.value);
        self.residual(TheoremId::Gauss, geom, label, lhs, rhs)
    }

    /// `∇̃_X φ` against `∇_X φ`; meaningful where `h` vanishes.
    pub fn geodesic(&self, geom: &PointGeometry, phi: &PointSpinor, x: &[f64; 3], label: &str) -> TheoremResidual {
        let lhs = self.action.ambient_tangent(&geom.jet, &phi.jet, x);
        let rhs = self.action.induced_derivative(&geom.jet, &phi.jet, x);
        self.residual(TheoremId::Geodesic, geom, label, lhs, rhs)
    }

    /// Along each frame vector: `∇̃_{s0} φ = ∇_{s0} φ` and
    /// `∇̃_{s_i} φ = ∇_{s_i} φ + ½ c s_i·N·φ` with `h = c·g` on the screen.
    pub fn umbilic(&self, geom: &PointGeometry, phi: &PointSpinor) -> Result<Vec<TheoremResidual>, SpinorError> {
        let defect = geom.shape.umbilic_defect();
        if !(defect <= CLASSIFY_TOL) {
            return Err(SpinorError::NotUmbilical { defect });
        }
        let c = geom.shape.h[1][1];
        let (jet, psi) = (&geom.jet, &phi.jet);
        Ok((0..3)
            .map(|k| {
                let x = jet.frame.tangent_coords(k);
                let lhs = self.action.ambient_tangent(jet, psi, &x);
                let mut rhs = self.action.induced_derivative(jet, psi, &x);
                if k > 0 {
                    rhs = rhs + self.action.screen_n(k, &psi.value).scale(0.5 * c);
                }
                self.residual(TheoremId::Umbilic, geom, format!("s{k}"), lhs, rhs)
            })
            .collect())
    }

    /// `R(X,Y)φ = ∇_X∇_Y φ - ∇_Y∇_X φ - ∇_{[X,Y]} φ` for either connection.
    pub fn curvature(
        &self,
        geom: &PointGeometry,
        phi: &PointSpinor,
        x: TangentField,
        y: TangentField,
        kind: ConnectionKind,
    ) -> Result<Spinor, SpinorError> {
        let (outer, phi_outer) = (geom.outer()?, phi.outer()?);
        let jet = &geom.jet;
        let xc = x.coords(jet);
        let yc = y.coords(jet);

        // ∇_A (∇_B φ) with ∇_B φ differentiated through the dual-seeded jets.
        let second = |ac: &[f64; 3], b: TangentField| -> Spinor {
            let mut field = Spinor::zero();
            let mut along = Spinor::zero();
            for i in 0..3 {
                let d = self.derivative(kind, &outer[i], &phi_outer[i], &b.coords(&outer[i]));
                field = d.map(|v| v.re);
                along = along + d.map(|v| v.eps).scale(ac[i]);
            }
            along + self.connection(kind, jet, ac, &field)
        };

        let bracket = lie_bracket(outer, &xc, &yc, x, y);
        let last = self.derivative(kind, jet, &phi.jet, &bracket);
        Ok(second(&xc, y) - second(&yc, x) - last)
    }

    /// The curvature relation in its derived form, plus the alternative
    /// closed form as an informational record.
    pub fn curvature_relation(
        &self,
        geom: &PointGeometry,
        phi: &PointSpinor,
        x: TangentField,
        y: TangentField,
        label: &str,
    ) -> Result<[TheoremResidual; 2], SpinorError> {
        let outer = geom.outer()?;
        let jet = &geom.jet;
        let f = &jet.frame;
        let psi = &phi.jet.value;
        let act = &self.action;
        let xc = x.coords(jet);
        let yc = y.coords(jet);

        let ambient = self.curvature(geom, phi, x, y, ConnectionKind::Ambient)?;
        let induced = self.curvature(geom, phi, x, y, ConnectionKind::Induced)?;
        let bracket = lie_bracket(outer, &xc, &yc, x, y);

        // X(h(Y, s_i)) through the seeded jets.
        let dh = |a: &[f64; 3], b: TangentField, i: usize| -> f64 {
            (0..3)
                .map(|k| {
                    let o = &outer[k];
                    a[k] * o.second_fundamental_form(&b.coords(o), &o.frame.screen[i - 1]).eps
                })
                .sum()
        };
        let h = |a: &[f64; 3], i: usize| jet.second_fundamental_form(a, &f.screen[i - 1]);

        let mut proof = induced;
        for i in 1..=2 {
            let c = dh(&xc, y, i) - dh(&yc, x, i) - h(&bracket, i);
            proof = proof + act.screen_n(i, psi).scale(0.5 * c);
            let nx = jet.induced_vector_derivative(&xc, i);
            let ny = jet.induced_vector_derivative(&yc, i);
            let npsi = act.n().apply(psi);
            proof = proof + act.vector(f, &nx, &npsi).scale(0.5 * h(&yc, i));
            proof = proof - act.vector(f, &ny, &npsi).scale(0.5 * h(&xc, i));
            let dnx = act.vector(f, &jet.vector_derivative(&xc, N), psi);
            let dny = act.vector(f, &jet.vector_derivative(&yc, N), psi);
            proof = proof + act.screen(i).apply(&dnx).scale(0.5 * h(&yc, i));
            proof = proof - act.screen(i).apply(&dny).scale(0.5 * h(&xc, i));
        }

        let statement = self.curvature_statement(geom, phi, x, y, induced)?;
        Ok([
            self.residual(TheoremId::Curvature, geom, label, ambient, proof),
            self.residual(TheoremId::CurvatureStatement, geom, label, ambient, statement),
        ])
    }

    /// `R(X,Y)φ - g(R(X,Y)s0, N) s0·N·φ
    ///  + [g(∇_X s0, A_N Y) - g(∇_Y s0, A_N X)] s0·N·φ
    ///  + [g(∇_X s0, N) ∇_Y s0 - g(∇_Y s0, N) ∇_X s0]·N·φ
    ///  + [g(∇_X s0, N) D_Y N - g(∇_Y s0, N) D_X N]·s0·φ`.
    fn curvature_statement(
        &self,
        geom: &PointGeometry,
        phi: &PointSpinor,
        x: TangentField,
        y: TangentField,
        induced: Spinor,
    ) -> Result<Spinor, SpinorError> {
        let outer = geom.outer()?;
        let jet = &geom.jet;
        let f = &jet.frame;
        let act = &self.action;
        let psi = &phi.jet.value;
        let xc = x.coords(jet);
        let yc = y.coords(jet);

        // ∇_A ∇_B s0 as an ambient vector.
        let second = |ac: &[f64; 3], b: TangentField| -> [f64; 4] {
            let mut d = [0.0; 4];
            for k in 0..3 {
                let o = &outer[k];
                let v = o.induced_vector_derivative(&b.coords(o), S0);
                for m in 0..4 {
                    d[m] += ac[k] * v[m].eps;
                }
            }
            let t = gdot(&d, &f.s0);
            std::array::from_fn(|m| d[m] - t * f.n[m])
        };
        let bracket = lie_bracket(outer, &xc, &yc, x, y);
        let (a, b, c) = (second(&xc, y), second(&yc, x), jet.induced_vector_derivative(&bracket, S0));
        let r_s0: [f64; 4] = std::array::from_fn(|m| a[m] - b[m] - c[m]);

        let nx = jet.induced_vector_derivative(&xc, S0);
        let ny = jet.induced_vector_derivative(&yc, S0);
        let (px, py) = (gdot(&nx, &f.n), gdot(&ny, &f.n));
        let s0n_psi = act.s0().apply(&act.n().apply(psi));
        let coef = -gdot(&r_s0, &f.n) + gdot(&nx, &jet.shape_operator(&yc)) - gdot(&ny, &jet.shape_operator(&xc));
        let v1: [f64; 4] = std::array::from_fn(|m| px * ny[m] - py * nx[m]);
        let dnx = jet.vector_derivative(&xc, N);
        let dny = jet.vector_derivative(&yc, N);
        let v2: [f64; 4] = std::array::from_fn(|m| px * dny[m] - py * dnx[m]);
        Ok(induced
            + s0n_psi.scale(coef)
            + act.vector(f, &v1, &act.n().apply(psi))
            + act.vector(f, &v2, &act.s0().apply(psi)))
    }

    pub fn dirac_forms(&self, geom: &PointGeometry, phi: &PointSpinor) -> Result<DiracForms, SpinorError> {
        Ok(DiracForms {
            null_frame: self.action.dirac_ambient_null(&geom.jet, &phi.jet)?,
            orthonormal: self.action.dirac_ambient_orthonormal(&geom.jet, &phi.jet)?,
        })
    }

    /// Dirac relations at a point: the two ambient forms against each other,
    /// the induced operator against its ambient expression and, when
    /// `minimal`, the same without the mean-curvature term.
    pub fn dirac(
        &self,
        geom: &PointGeometry,
        phi: &PointSpinor,
        minimal: bool,
        label: &str,
    ) -> Result<Vec<TheoremResidual>, SpinorError> {
        let act = &self.action;
        let (jet, psi) = (&geom.jet, &phi.jet);
        let f = &jet.frame;
        let forms = self.dirac_forms(geom, phi)?;
        let lhs = act.dirac_induced(jet, psi);

        let along_n = act.ambient_derivative(jet, psi, &Direction::Ambient(f.n))?;
        let along_s0 = act.ambient_tangent(jet, psi, &f.radical);
        let mut base =
            forms.null_frame - act.s0().apply(&along_n) + act.s0().apply(&along_s0) - act.n().apply(&along_s0);
        for k in 1..=2 {
            let h = geom.shape.h[k][0];
            base = base - act.s0().apply(&act.screen_n(k, &psi.value)).scale(h);
        }
        let mean = act.n().apply(&psi.value).scale(geom.shape.mean_curvature);

        let mut out = vec![
            self.residual(TheoremId::DiracForms, geom, label, forms.null_frame, forms.orthonormal),
            self.residual(TheoremId::Dirac, geom, label, lhs, base + mean),
        ];
        if minimal {
            out.push(self.residual(TheoremId::Minimal, geom, label, lhs, base));
        }
        Ok(out)
    }
}

/// Parameter coordinates of `[X, Y]` at the point.
fn lie_bracket(
    outer: &[FrameJet<Dual<f64>>; 3],
    xc: &[f64; 3],
    yc: &[f64; 3],
    x: TangentField,
    y: TangentField,
) -> [f64; 3] {
    let mut out = [0.0; 3];
    for a in 0..3 {
        let dy = y.coords(&outer[a]);
        let dx = x.coords(&outer[a]);
        for b in 0..3 {
            out[b] += xc[a] * dy[b].eps - yc[a] * dx[b].eps;
        }
    }
    out
}

fn prepare(
    chart: &Chart,
    field: &SpinorField,
    point: &[f64; 3],
    second_order: bool,
    policy: ExtensionPolicy,
) -> Result<(PointGeometry, PointSpinor), SpinorError> {
    let geom = PointGeometry::new(chart, point, second_order)?;
    let phi = PointSpinor::new(field, &geom, policy)?;
    Ok((geom, phi))
}

/// `∇̃_V φ` at a point with the Dirac representation.
pub fn ambient_spinor_derivative(
    chart: &Chart,
    field: &SpinorField,
    dir: &Direction<f64>,
    point: &[f64; 3],
    policy: ExtensionPolicy,
) -> Result<Spinor, SpinorError> {
    let (geom, phi) = prepare(chart, field, point, false, policy)?;
    CliffordAction::new(&GammaSet::dirac()).ambient_derivative(&geom.jet, &phi.jet, dir)
}

/// `∇_X φ` at a point with the Dirac representation.
pub fn induced_spinor_derivative(
    chart: &Chart,
    field: &SpinorField,
    x: &[f64; 3],
    point: &[f64; 3],
) -> Result<Spinor, SpinorError> {
    let (geom, phi) = prepare(chart, field, point, false, ExtensionPolicy::Constant)?;
    Ok(CliffordAction::new(&GammaSet::dirac()).induced_derivative(&geom.jet, &phi.jet, x))
}

pub fn spinor_curvature(
    chart: &Chart,
    field: &SpinorField,
    x: TangentField,
    y: TangentField,
    point: &[f64; 3],
    kind: ConnectionKind,
) -> Result<Spinor, SpinorError> {
    let (geom, phi) = prepare(chart, field, point, true, ExtensionPolicy::Constant)?;
    Calculus::default().curvature(&geom, &phi, x, y, kind)
}

pub fn dirac_induced(chart: &Chart, field: &SpinorField, point: &[f64; 3]) -> Result<Spinor, SpinorError> {
    let (geom, phi) = prepare(chart, field, point, false, ExtensionPolicy::Constant)?;
    Ok(CliffordAction::new(&GammaSet::dirac()).dirac_induced(&geom.jet, &phi.jet))
}

pub fn dirac_ambient(
    chart: &Chart,
    field: &SpinorField,
    point: &[f64; 3],
    policy: ExtensionPolicy,
) -> Result<DiracForms, SpinorError> {
    let (geom, phi) = prepare(chart, field, point, false, policy)?;
    Calculus::new(&GammaSet::dirac(), policy, Tolerances::default()).dirac_forms(&geom, &phi)
}

pub fn gauss_spinorial_check(
    chart: &Chart,
    field: &SpinorField,
    x: &[f64; 3],
    point: &[f64; 3],
) -> Result<TheoremResidual, SpinorError> {
    let (geom, phi) = prepare(chart, field, point, false, ExtensionPolicy::Constant)?;
    Ok(Calculus::default().gauss(&geom, &phi, x, "x"))
}

pub fn umbilic_check(
    chart: &Chart,
    field: &SpinorField,
    point: &[f64; 3],
) -> Result<Vec<TheoremResidual>, SpinorError> {
    let (geom, phi) = prepare(chart, field, point, false, ExtensionPolicy::Constant)?;
    Calculus::default().umbilic(&geom, &phi)
}

/// Derived-form residual first, informational closed form second.
pub fn curvature_relation_check(
    chart: &Chart,
    field: &SpinorField,
    x: TangentField,
    y: TangentField,
    point: &[f64; 3],
) -> Result<[TheoremResidual; 2], SpinorError> {
    let (geom, phi) = prepare(chart, field, point, true, ExtensionPolicy::Constant)?;
    Calculus::default().curvature_relation(&geom, &phi, x, y, "xy")
}

/// The Dirac residuals at a point; the minimal variant is included when the
/// mean curvature vanishes there.
pub fn dirac_decomposition_check(
    chart: &Chart,
    field: &SpinorField,
    point: &[f64; 3],
    policy: ExtensionPolicy,
) -> Result<Vec<TheoremResidual>, SpinorError> {
    let (geom, phi) = prepare(chart, field, point, false, policy)?;
    let minimal = geom.shape.mean_curvature.abs() <= CLASSIFY_TOL;
    Calculus::new(&GammaSet::dirac(), policy, Tolerances::default()).dirac(&geom, &phi, minimal, "phi")
}
