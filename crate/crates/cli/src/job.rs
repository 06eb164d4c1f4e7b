use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::ValueEnum;
use llspin::spinor::{ExtensionPolicy, SpinorField, TheoremId, Tolerances, QUADRATIC_TERMS};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::CliError;

/// Environment variable capping the number of sweep threads.
pub const THREADS_ENV: &str = "LLSPIN_GRID_THREADS";

/// User-facing identity groups. Each expands to the residual kinds it
/// produces; whether a group applies also depends on the classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum TheoremSelector {
    Gauss,
    Curvature,
    Umbilic,
    Dirac,
    Minimal,
}

impl TheoremSelector {
    pub const ALL: [TheoremSelector; 5] = [
        TheoremSelector::Gauss,
        TheoremSelector::Curvature,
        TheoremSelector::Umbilic,
        TheoremSelector::Dirac,
        TheoremSelector::Minimal,
    ];

    pub fn covers(self) -> &'static [TheoremId] {
        match self {
            TheoremSelector::Gauss => &[TheoremId::Gauss, TheoremId::Geodesic],
            TheoremSelector::Curvature => &[TheoremId::Curvature, TheoremId::CurvatureStatement],
            TheoremSelector::Umbilic => &[TheoremId::Umbilic],
            TheoremSelector::Dirac => &[TheoremId::DiracForms, TheoremId::Dirac],
            TheoremSelector::Minimal => &[TheoremId::Minimal],
        }
    }
}

/// Everything that determines a verification run. Two runs with equal
/// specs produce identical reports apart from the timestamp.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JobSpec {
    pub chart: PathBuf,
    pub spinor: Option<PathBuf>,
    pub theorems: BTreeSet<TheoremSelector>,
    /// Overrides every default tolerance when set.
    pub tolerance: Option<f64>,
    pub seed: u64,
    /// Random fields per point when no spinor file is given.
    pub samples: usize,
    /// Also check curvature on frame-vector pairs, not only coordinate pairs.
    pub frame_pairs: bool,
    pub extension: ExtensionPolicy,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub threads: Option<usize>,
}

impl JobSpec {
    pub fn new(chart: impl Into<PathBuf>) -> Self {
        Self {
            chart: chart.into(),
            spinor: None,
            theorems: TheoremSelector::ALL.into_iter().collect(),
            tolerance: None,
            seed: 0,
            samples: 20,
            frame_pairs: false,
            extension: ExtensionPolicy::Constant,
            out: None,
            threads: threads_from_env(),
        }
    }

    pub fn selects(&self, t: TheoremSelector) -> bool {
        self.theorems.contains(&t)
    }

    pub fn tolerances(&self) -> Result<Tolerances, CliError> {
        match self.tolerance {
            None => Ok(Tolerances::default()),
            Some(t) if t.is_finite() && t > 0.0 => Ok(Tolerances::uniform(t)),
            Some(t) => Err(CliError::Tolerance(t)),
        }
    }
}

/// Positive thread count from the environment; anything else means "let
/// the pool decide".
pub fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok().filter(|&n| n > 0)
}

/// Random inputs drawn once, in a fixed order, before any parallel work.
#[derive(Clone, Debug)]
pub struct Samples {
    pub fields: Vec<SpinorField>,
    /// `directions[point][field]`: tangent direction for the Gauss check.
    pub directions: Vec<Vec<[f64; 3]>>,
}

impl Samples {
    /// Draws `count` random quadratic fields unless `fixed` is given, then
    /// one direction per point and field.
    pub fn draw(seed: u64, count: usize, fixed: Option<SpinorField>, points: usize, params: &[String; 3]) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fields = match fixed {
            Some(f) => vec![f],
            None => (0..count).map(|_| random_field(&mut rng, params)).collect(),
        };
        let directions = (0..points)
            .map(|_| (0..fields.len()).map(|_| std::array::from_fn(|_| rng.gen_range(-1.0..=1.0))).collect())
            .collect();
        Self { fields, directions }
    }
}

/// Degree-two polynomial field with coefficients uniform in `[-1, 1]`.
pub fn random_field(rng: &mut impl Rng, params: &[String; 3]) -> SpinorField {
    let mut draw = || -> [[f64; QUADRATIC_TERMS]; 4] {
        std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-1.0..=1.0)))
    };
    let re = draw();
    let im = draw();
    SpinorField::quadratic(&re, &im, params)
}
