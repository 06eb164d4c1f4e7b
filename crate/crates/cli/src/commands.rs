use std::path::Path;

use llspin::geometry::{induced_metric, metric_rank, Chart, Classification, TangentField, CLASSIFY_TOL};
use llspin::selftest::{self, SelftestReport};
use llspin::spin::GammaSet;
use llspin::spinor::{Calculus, ExtensionPolicy, PointGeometry, PointSpinor, SpinorField, TheoremId, TheoremResidual};
use llspin::sweep::sweep;

use crate::error::{CliError, ExitCode};
use crate::job::{JobSpec, Samples, TheoremSelector};
use crate::report::{FrameRecord, PointError, PointRecord, Report, Skipped};

/// Outcome of a command that produces a report.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub exit: ExitCode,
    pub report: Report,
}

/// Runs the exact algebraic suites against `gammas`.
pub fn selftest(gammas: &GammaSet, seed: u64) -> (ExitCode, SelftestReport) {
    let report = selftest::run(gammas, seed);
    let exit = if report.pass() { ExitCode::Success } else { ExitCode::Failure };
    (exit, report)
}

/// Human-readable selftest listing, one line per law.
pub fn render_selftest(report: &SelftestReport) -> String {
    let mut out = String::new();
    for c in &report.checks {
        let status = if c.pass() { "PASS" } else { "FAIL" };
        out.push_str(&format!("{status} {} ({} samples, {} failures)\n", c.law, c.samples, c.failures));
    }
    match report.first_failure() {
        None => out.push_str("selftest passed\n"),
        Some(c) => out.push_str(&format!(
            "selftest failed; first failing law: {}: {}\n",
            c.law,
            c.detail.as_deref().unwrap_or("no detail")
        )),
    }
    out
}

pub fn load_chart(path: &Path) -> Result<Chart, CliError> {
    let text = read(path)?;
    Chart::from_json(&text).map_err(|source| CliError::Chart { path: path.to_owned(), source })
}

pub fn load_spinor(path: &Path, params: &[String; 3]) -> Result<SpinorField, CliError> {
    let text = read(path)?;
    SpinorField::from_json(&text, params).map_err(|source| CliError::Spinor { path: path.to_owned(), source })
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_owned(), source })
}

/// Rank of the induced metric at every grid point, with the frame wherever
/// the rank is two.
pub fn inspect(chart: &Chart, threads: Option<usize>) -> Result<(Vec<PointRecord>, Vec<PointGeometry>), CliError> {
    let results = sweep(&chart.grid(), threads, |_, p| -> Result<_, CliError> {
        let (_, tangents) = chart.tangents(p).map_err(llspin::geometry::GeometryError::from)?;
        let rank = metric_rank(&induced_metric(&tangents));
        let geom = if rank.rank == 2 { Some(PointGeometry::new(chart, p, false)?) } else { None };
        let record = PointRecord {
            point: *p,
            rank: rank.rank,
            eigenvalues: rank.eigenvalues,
            frame: geom.as_ref().map(FrameRecord::from_geometry),
        };
        Ok((record, geom))
    });
    let mut records = Vec::with_capacity(results.len());
    let mut geoms = Vec::with_capacity(results.len());
    for r in results {
        let (record, geom) = r?;
        records.push(record);
        geoms.extend(geom);
    }
    Ok((records, geoms))
}

fn lightlike_exit(points: &[PointRecord]) -> ExitCode {
    if points.iter().any(|p| p.rank == 3) {
        ExitCode::NotLightlike
    } else if points.iter().any(|p| p.rank < 2) {
        ExitCode::RankCollapse
    } else {
        ExitCode::Success
    }
}

/// Induced-metric rank per grid point; succeeds iff lightlike everywhere.
pub fn check(chart_path: &Path, threads: Option<usize>) -> Result<Outcome, CliError> {
    let chart = load_chart(chart_path)?;
    let (points, _) = inspect(&chart, threads)?;
    let exit = lightlike_exit(&points);
    let mut report = Report::new("check", chart.spec(), points);
    report.summarize();
    Ok(Outcome { exit, report })
}

/// Runs the selected identities at every grid point.
pub fn verify(job: &JobSpec) -> Result<Outcome, CliError> {
    let chart = load_chart(&job.chart)?;
    let fixed = job.spinor.as_deref().map(|p| load_spinor(p, chart.params())).transpose()?;
    let tolerances = job.tolerances()?;
    let (points, geoms) = inspect(&chart, job.threads)?;

    let mut report = Report::new("verify", chart.spec(), points);
    report.job = Some(job.clone());
    report.tolerances = Some(tolerances);
    let exit = lightlike_exit(&report.points);
    if exit != ExitCode::Success {
        report.summarize();
        return Ok(Outcome { exit, report });
    }

    let classification = Classification::from_shapes(geoms.iter().map(|g| &g.shape), CLASSIFY_TOL);
    report.classification = Some(classification);
    report.skipped = skipped(job, &classification);

    let grid = chart.grid();
    let samples = Samples::draw(job.seed, job.samples, fixed, grid.len(), chart.params());
    if job.extension == ExtensionPolicy::Constant && samples.fields.iter().any(|f| !f.has_extension()) {
        report.extension = Some(
            "fields without a declared extension are continued constantly along the transversal (zero transversal derivative)"
                .into(),
        );
    }

    let plan = Plan::new(job, &classification);
    let calc = Calculus::new(&GammaSet::dirac(), job.extension, tolerances);
    let per_point = sweep(&grid, job.threads, |i, p| plan.run(&chart, &calc, &samples, i, p));
    for result in per_point {
        match result {
            Ok(rs) => report.residuals.extend(rs),
            Err(e) => report.errors.push(e),
        }
    }
    report.summarize();
    let exit = if report.summary.pass { ExitCode::Success } else { ExitCode::VerificationFailed };
    Ok(Outcome { exit, report })
}

fn skipped(job: &JobSpec, c: &Classification) -> Vec<Skipped> {
    let mut out = Vec::new();
    if job.selects(TheoremSelector::Gauss) && !c.totally_geodesic {
        out.push(Skipped {
            theorem: TheoremId::Geodesic,
            reason: format!("not totally geodesic (max |h| {:e})", c.max_abs_h),
        });
    }
    if job.selects(TheoremSelector::Umbilic) && !c.totally_umbilical {
        out.push(Skipped {
            theorem: TheoremId::Umbilic,
            reason: format!("not totally umbilical (max defect {:e})", c.max_umbilic_defect),
        });
    }
    if job.selects(TheoremSelector::Minimal) && !c.minimal {
        out.push(Skipped {
            theorem: TheoremId::Minimal,
            reason: format!("not minimal (max |H| {:e})", c.max_abs_mean_curvature),
        });
    }
    out
}

/// Which checks run at each point, fixed once from the job and the
/// classification.
struct Plan {
    gauss: bool,
    geodesic: bool,
    umbilic: bool,
    curvature_pairs: Vec<(TangentField, TangentField, String)>,
    dirac: bool,
    minimal: bool,
}

impl Plan {
    fn new(job: &JobSpec, c: &Classification) -> Self {
        let gauss = job.selects(TheoremSelector::Gauss);
        let mut curvature_pairs = Vec::new();
        if job.selects(TheoremSelector::Curvature) {
            for (a, b) in [(0, 1), (0, 2), (1, 2)] {
                curvature_pairs.push((
                    TangentField::Coordinate(a),
                    TangentField::Coordinate(b),
                    format!("du{} du{}", a + 1, b + 1),
                ));
            }
            if job.frame_pairs {
                for (a, b) in [(0, 1), (0, 2), (1, 2)] {
                    curvature_pairs.push((TangentField::Frame(a), TangentField::Frame(b), format!("s{a} s{b}")));
                }
            }
        }
        Self {
            gauss,
            geodesic: gauss && c.totally_geodesic,
            umbilic: job.selects(TheoremSelector::Umbilic) && c.totally_umbilical,
            curvature_pairs,
            dirac: job.selects(TheoremSelector::Dirac),
            minimal: job.selects(TheoremSelector::Minimal) && c.minimal,
        }
    }

    fn run(
        &self,
        chart: &Chart,
        calc: &Calculus,
        samples: &Samples,
        index: usize,
        p: &[f64; 3],
    ) -> Result<Vec<TheoremResidual>, PointError> {
        let fail = |e: &dyn std::fmt::Display| PointError { point: *p, message: e.to_string() };
        let geom = PointGeometry::new(chart, p, !self.curvature_pairs.is_empty()).map_err(|e| fail(&e))?;
        let mut out = Vec::new();
        for (k, field) in samples.fields.iter().enumerate() {
            let phi = PointSpinor::new(field, &geom, calc.policy).map_err(|e| fail(&e))?;
            let tag = |label: &str| format!("phi{k} {label}");
            let x = &samples.directions[index][k];
            if self.gauss {
                out.push(calc.gauss(&geom, &phi, x, &tag("x")));
            }
            if self.geodesic {
                out.push(calc.geodesic(&geom, &phi, x, &tag("x")));
            }
            if self.umbilic {
                let rs = calc.umbilic(&geom, &phi).map_err(|e| fail(&e))?;
                out.extend(rs.into_iter().map(|mut r| {
                    r.label = tag(&r.label);
                    r
                }));
            }
            for (x, y, label) in &self.curvature_pairs {
                out.extend(calc.curvature_relation(&geom, &phi, *x, *y, &tag(label)).map_err(|e| fail(&e))?);
            }
            if self.dirac || self.minimal {
                let rs = calc.dirac(&geom, &phi, self.minimal, &tag("D")).map_err(|e| fail(&e))?;
                out.extend(rs.into_iter().filter(|r| self.dirac || r.theorem == TheoremId::Minimal));
            }
        }
        Ok(out)
    }
}
