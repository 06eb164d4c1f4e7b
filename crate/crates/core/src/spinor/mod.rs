//! Spinor fields on a lightlike hypersurface: the ambient and induced spin
//! connections, their curvatures, Dirac operators and the identities
//! relating them.

mod calculus;
mod checks;
mod field;

use serde::Serialize;
use thiserror::Error;

pub use calculus::{CliffordAction, ConnectionCoefficients, Direction};
pub use checks::{
    ambient_spinor_derivative, curvature_relation_check, dirac_ambient, dirac_decomposition_check, dirac_induced,
    gauss_spinorial_check, induced_spinor_derivative, spinor_curvature, umbilic_check, Calculus, ConnectionKind,
    DiracForms, PointGeometry, PointSpinor, Tolerances,
};
pub use field::{
    ExtensionPolicy, ExtensionSpec, SpinorField, SpinorJet, SpinorSpec, QUADRATIC_TERMS, TRANSVERSAL_PARAM,
};

use crate::expr::{EvalError, ParseError};
use crate::geometry::GeometryError;
use crate::spin::Spinor;

#[derive(Debug, Error)]
pub enum SpinorError {
    #[error("invalid spinor JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("spinor component {index}: {source}")]
    Parse {
        index: usize,
        #[source]
        source: ParseError,
    },
    #[error("invalid spinor: {0}")]
    Shape(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("a transversal derivative is needed but the field declares no extension")]
    ExtensionRequired,
    #[error("hypersurface is not totally umbilical here (defect {defect:e})")]
    NotUmbilical { defect: f64 },
    #[error("second-order frame data was not prepared for this point")]
    MissingSecondOrder,
}

/// Identity being checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    /// Ambient derivative = induced derivative + second-fundamental-form term.
    Gauss,
    /// The two connections agree on a totally geodesic hypersurface.
    Geodesic,
    /// Closed form of the Gauss term on a totally umbilical hypersurface.
    Umbilic,
    /// Ambient spinor curvature against induced curvature plus correction.
    Curvature,
    /// Alternative closed form of the curvature relation; reported only.
    CurvatureStatement,
    /// Null-frame and orthonormal-frame ambient Dirac operators agree.
    DiracForms,
    /// Induced Dirac operator from the ambient one.
    Dirac,
    /// The Dirac relation without the mean-curvature term.
    Minimal,
}

impl TheoremId {
    pub const ALL: [TheoremId; 8] = [
        TheoremId::Gauss,
        TheoremId::Geodesic,
        TheoremId::Umbilic,
        TheoremId::Curvature,
        TheoremId::CurvatureStatement,
        TheoremId::DiracForms,
        TheoremId::Dirac,
        TheoremId::Minimal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Gauss => "gauss",
            TheoremId::Geodesic => "geodesic",
            TheoremId::Umbilic => "umbilic",
            TheoremId::Curvature => "curvature",
            TheoremId::CurvatureStatement => "curvature_statement",
            TheoremId::DiracForms => "dirac_forms",
            TheoremId::Dirac => "dirac",
            TheoremId::Minimal => "minimal",
        }
    }

    /// Reported residuals that never decide pass or fail.
    pub fn informational(self) -> bool {
        self == TheoremId::CurvatureStatement
    }
}

/// One evaluated identity: both sides, their max-norm difference and the
/// tolerance it was judged against.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremResidual {
    pub theorem: TheoremId,
    pub point: [f64; 3],
    /// Which direction, pair or field the residual belongs to.
    pub label: String,
    pub lhs: Spinor,
    pub rhs: Spinor,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub informational: bool,
}

impl TheoremResidual {
    pub fn new(
        theorem: TheoremId,
        point: [f64; 3],
        label: impl Into<String>,
        lhs: Spinor,
        rhs: Spinor,
        tolerance: f64,
    ) -> Self {
        let residual = (lhs - rhs).max_norm();
        Self {
            theorem,
            point,
            label: label.into(),
            lhs,
            rhs,
            residual,
            tolerance,
            // NaN residuals fail.
            pass: residual <= tolerance,
            informational: theorem.informational(),
        }
    }
}
