use std::collections::BTreeMap;
use std::time::{SystemTime, UNIX_EPOCH};

use llspin::geometry::{ChartSpec, Classification};
use llspin::spinor::{PointGeometry, TheoremId, TheoremResidual, Tolerances};
use serde::Serialize;

use crate::job::JobSpec;

pub const SCHEMA: u32 = 1;

/// Machine-readable result of `check` or `verify`. Apart from `timestamp`
/// the content is a pure function of the inputs.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool_version: &'static str,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub command: &'static str,
    pub job: Option<JobSpec>,
    pub chart: ChartSpec,
    pub lightlike: bool,
    pub points: Vec<PointRecord>,
    pub classification: Option<Classification>,
    pub tolerances: Option<Tolerances>,
    /// How spinor fields were continued off the hypersurface.
    pub extension: Option<String>,
    pub skipped: Vec<Skipped>,
    pub errors: Vec<PointError>,
    pub residuals: Vec<TheoremResidual>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: &'static str, chart: ChartSpec, points: Vec<PointRecord>) -> Self {
        let lightlike = points.iter().all(|p| p.rank == 2);
        Self {
            schema: SCHEMA,
            tool_version: env!("CARGO_PKG_VERSION"),
            timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
            command,
            job: None,
            chart,
            lightlike,
            points,
            classification: None,
            tolerances: None,
            extension: None,
            skipped: Vec::new(),
            errors: Vec::new(),
            residuals: Vec::new(),
            summary: Summary::default(),
        }
    }

    /// Recomputes the summary; call after residuals and errors are final.
    pub fn summarize(&mut self) {
        self.summary = Summary::of(self.lightlike, &self.residuals, self.errors.len());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Induced-metric rank and, where lightlike, the frame built there.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointRecord {
    pub point: [f64; 3],
    pub rank: usize,
    pub eigenvalues: [f64; 3],
    pub frame: Option<FrameRecord>,
}

/// Frame normalization applied at a point, with the shape data it yields.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrameRecord {
    /// Ambient radical vector `s0`.
    pub radical: [f64; 4],
    /// Parameter coordinates of `s0`, scaled so the largest entry is 1.
    pub radical_params: [f64; 3],
    /// Norms divided out of the Gram–Schmidt screen vectors.
    pub screen_norms: [f64; 2],
    /// Raw pairing of `s0` with the seed axis before `N` was rescaled.
    pub pairing: f64,
    pub seed_axis: usize,
    /// Second fundamental form on `s0, s1, s2`.
    pub second_fundamental_form: [[f64; 3]; 3],
    pub mean_curvature: f64,
}

impl FrameRecord {
    pub fn from_geometry(g: &PointGeometry) -> Self {
        let f = &g.jet.frame;
        Self {
            radical: f.s0,
            radical_params: f.radical,
            screen_norms: f.screen_norms,
            pairing: f.pairing,
            seed_axis: f.axis,
            second_fundamental_form: g.shape.h,
            mean_curvature: g.shape.mean_curvature,
        }
    }
}

/// A selected identity that does not apply to this chart.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Skipped {
    pub theorem: TheoremId,
    pub reason: String,
}

/// A check that could not be evaluated; counts as a failure.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointError {
    pub point: [f64; 3],
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Summary {
    pub pass: bool,
    /// Residuals that decide the outcome.
    pub checked: usize,
    pub failed: usize,
    pub errors: usize,
    /// Reported but never judged.
    pub informational: usize,
    pub max_residual: BTreeMap<&'static str, f64>,
}

impl Summary {
    pub fn of(lightlike: bool, residuals: &[TheoremResidual], errors: usize) -> Self {
        let mut s = Summary { errors, ..Summary::default() };
        for r in residuals {
            let slot = s.max_residual.entry(r.theorem.name()).or_insert(0.0);
            // NaN must surface rather than vanish under max.
            *slot = if r.residual.is_nan() { f64::NAN } else { slot.max(r.residual) };
            if r.informational {
                s.informational += 1;
            } else {
                s.checked += 1;
                s.failed += usize::from(!r.pass);
            }
        }
        s.pass = lightlike && s.failed == 0 && errors == 0;
        s
    }
}
