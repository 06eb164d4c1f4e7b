//! Acceptance criteria, one line each. Tolerances and time budgets are
//! pinned here, independent of the library defaults.

#![allow(clippy::needless_range_loop)]

use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use llspin::clifford::Signature;
use llspin::geometry::{Chart, Domain};
use llspin::selftest::{self, LawCheck};
use llspin::spin::GammaSet;
use llspin::spinor::{dirac_ambient, ExtensionPolicy};
use llspin_cli::job::random_field;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const EXAMPLE_H: f64 = 1e-12;
const EXAMPLE_RESIDUAL: f64 = 1e-9;
const CONE_UMBILIC_SPREAD: f64 = 1e-8;
const CONE_FIRST_ORDER: f64 = 1e-6;
const CONE_CURVATURE: f64 = 1e-5;
const DIRAC_FORMS: f64 = 1e-9;
const FD_STEP: f64 = 1e-4;
const FD_FIRST: f64 = 1e-6;
const FD_SECOND: f64 = 1e-4;
const SPIN_Q: f64 = 1e-10;

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn from(checks: &[LawCheck]) -> Self {
        match checks.iter().find(|c| !c.pass()) {
            None => Verdict {
                pass: true,
                detail: format!("{} laws, {} samples", checks.len(), checks.iter().map(|c| c.samples).sum::<usize>()),
            },
            Some(c) => Verdict { pass: false, detail: format!("{}: {}", c.law, c.detail.clone().unwrap_or_default()) },
        }
    }

    fn fail(detail: impl Into<String>) -> Self {
        Verdict { pass: false, detail: detail.into() }
    }
}

fn charts() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../charts")
}

fn llspin(args: &[&str]) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_llspin")).args(args).output().expect("binary runs");
    (out.status.code(), out.stdout)
}

fn verify_report(chart: &Path, out: &Path, extra: &[&str]) -> Result<(Option<i32>, Value), String> {
    let mut args = vec!["verify", chart.to_str().unwrap(), "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    let (code, _) = llspin(&args);
    let text = std::fs::read_to_string(out).map_err(|e| format!("no report: {e}"))?;
    Ok((code, serde_json::from_str(&text).map_err(|e| e.to_string())?))
}

fn residuals<'a>(r: &'a Value, theorem: &'a str) -> impl Iterator<Item = f64> + 'a {
    r["residuals"]
        .as_array()
        .unwrap()
        .iter()
        .filter(move |x| x["theorem"] == theorem)
        .map(|x| x["residual"].as_f64().unwrap_or(f64::NAN))
}

fn max_of(it: impl Iterator<Item = f64>) -> (usize, f64) {
    it.fold((0, 0.0f64), |(n, m), r| (n + 1, if r.is_nan() { f64::NAN } else { m.max(r) }))
}

fn exact_clifford() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checks = Vec::new();
    for sig in [Signature::degenerate_120(), Signature::minkowski()] {
        checks.push(selftest::generator_relations(sig));
        checks.push(selftest::associativity(sig, &mut rng, 50));
        checks.push(selftest::decompose_round_trip(sig, &mut rng, 50));
    }
    Verdict::from(&checks)
}

fn embedding() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    Verdict::from(&[selftest::embed_squares(&mut rng, 1000), selftest::embed_multiplicative(&mut rng, 200)])
}

fn gamma_contract() -> Verdict {
    let g = GammaSet::dirac();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let checks = [selftest::gamma_anticommutators(&g), selftest::radical_action_nilpotent(&g, &mut rng, 100)];
    if checks[0].samples != 10 {
        return Verdict::fail(format!("{} anticommutators checked", checks[0].samples));
    }
    Verdict::from(&checks)
}

fn example_golden(dir: &Path) -> Result<Verdict, String> {
    let chart = charts().join("example.json");
    let (code, _) = llspin(&["check", chart.to_str().unwrap()]);
    if code != Some(0) {
        return Ok(Verdict::fail(format!("check exited {code:?}")));
    }
    let (code, r) = verify_report(&chart, &dir.join("example.json"), &["--seed", "42"])?;
    let points = r["points"].as_array().unwrap();
    let mut worst_h = 0.0f64;
    for p in points {
        let f = &p["frame"];
        let s0: Vec<f64> = f["radical"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
        // Proportional to (-1, 0, 0, -1).
        let k = -s0[0];
        if k == 0.0 || k.is_nan() || s0[1] != 0.0 || s0[2] != 0.0 || s0[3] != -k {
            return Ok(Verdict::fail(format!("radical {s0:?}")));
        }
        for row in f["second_fundamental_form"].as_array().unwrap() {
            for h in row.as_array().unwrap() {
                worst_h = worst_h.max(h.as_f64().unwrap().abs());
            }
        }
    }
    let c = &r["classification"];
    let flags = [&c["totally_geodesic"], &c["totally_umbilical"], &c["minimal"]].map(|v| v.as_bool() == Some(true));
    let (n, worst) =
        max_of(r["residuals"].as_array().unwrap().iter().map(|x| x["residual"].as_f64().unwrap_or(f64::NAN)));
    let kinds = r["summary"]["max_residual"].as_object().map_or(0, |m| m.len());
    let pass = code == Some(0)
        && points.len() == 27
        && worst_h <= EXAMPLE_H
        && flags.iter().all(|f| *f)
        && worst <= EXAMPLE_RESIDUAL
        && kinds == 8;
    Ok(Verdict {
        pass,
        detail: format!("exit {code:?}, 27-point grid, max |h| {worst_h:e}, {n} residuals over {kinds} identities ≤ {worst:e}, flags {flags:?}"),
    })
}

fn light_cone(dir: &Path) -> Result<Verdict, String> {
    let chart = charts().join("light_cone.json");
    let (code, _) = llspin(&["check", chart.to_str().unwrap()]);
    if code != Some(0) {
        return Ok(Verdict::fail(format!("check exited {code:?}")));
    }
    let (code, r) = verify_report(&chart, &dir.join("cone.json"), &["--samples", "20"])?;
    let points = r["points"].as_array().unwrap();
    let spread = points
        .iter()
        .map(|p| {
            let h = &p["frame"]["second_fundamental_form"];
            (h[1][1].as_f64().unwrap() - h[2][2].as_f64().unwrap()).abs()
        })
        .fold(0.0f64, f64::max);
    let umbilical = r["classification"]["totally_umbilical"].as_bool() == Some(true);
    let limits = [
        ("gauss", CONE_FIRST_ORDER, points.len() * 20),
        ("umbilic", CONE_FIRST_ORDER, points.len() * 20 * 3),
        ("dirac", CONE_FIRST_ORDER, points.len() * 20),
        ("curvature", CONE_CURVATURE, points.len() * 20 * 3),
    ];
    let mut pass = code == Some(0) && points.len() == 64 && umbilical && spread <= CONE_UMBILIC_SPREAD;
    let mut parts = vec![format!("exit {code:?}, umbilical {umbilical}, |h11-h22| ≤ {spread:e}")];
    for (name, tol, expected) in limits {
        let (n, worst) = max_of(residuals(&r, name));
        pass &= n == expected && worst <= tol;
        parts.push(format!("{name} {n}× ≤ {worst:.1e}"));
    }
    Ok(Verdict { pass, detail: parts.join(", ") })
}

fn test_chart(coords: [&str; 4], min: [f64; 3], max: [f64; 3]) -> Chart {
    Chart::new(coords, ["u1", "u2", "u3"], Domain { min, max, grid: [3; 3] }).unwrap()
}

fn dual_dirac() -> Verdict {
    let charts = [
        test_chart(["-u1", "u2-u3", "-u2-u3", "-u1"], [-1.0; 3], [1.0; 3]),
        test_chart(["u1", "u2", "u3", "sqrt(u1^2+u2^2+u3^2)"], [1.0, -0.5, -0.5], [2.0, 0.5, 0.5]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    for k in 0..50 {
        let c = &charts[k % 2];
        let d = c.domain();
        let p: [f64; 3] = std::array::from_fn(|i| rng.gen_range(d.min[i]..=d.max[i]));
        let field = random_field(&mut rng, c.params());
        match dirac_ambient(c, &field, &p, ExtensionPolicy::Constant) {
            Ok(f) => worst = worst.max((f.null_frame - f.orthonormal).max_norm()),
            Err(e) => return Verdict::fail(e.to_string()),
        }
    }
    Verdict { pass: worst <= DIRAC_FORMS, detail: format!("50 configurations, max difference {worst:e}") }
}

fn oracle_agreement() -> Verdict {
    let charts = [
        test_chart(["u1", "u2", "u3", "sqrt(u1^2+u2^2+u3^2)"], [1.0, -0.5, -0.5], [2.0, 0.5, 0.5]),
        test_chart(["u1", "u2", "u3", "sqrt(u1^2+u2^2)"], [1.0, -0.5, -0.5], [2.0, 0.5, 0.5]),
        test_chart(["u1*cos(u2)", "u1*sin(u2)", "u3*exp(u1)", "u1^2 + sin(u2*u3)"], [1.0, -1.0, -1.0], [2.0, 1.0, 1.0]),
        test_chart(["-u1", "u2-u3", "-u2-u3", "-u1"], [-1.0; 3], [1.0; 3]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut first, mut second) = (0.0f64, 0.0f64);
    for k in 0..100 {
        let c = &charts[k % charts.len()];
        let d = c.domain();
        let p: [f64; 3] = std::array::from_fn(|i| rng.gen_range(d.min[i]..=d.max[i]));
        let at = |da: [f64; 3]| c.eval(&std::array::from_fn(|i| p[i] + da[i])).unwrap();
        let e = |a: usize, s: f64| -> [f64; 3] { std::array::from_fn(|i| if i == a { s } else { 0.0 }) };
        let (_, tangents) = c.tangents(&p).unwrap();
        let jet = c.jet2(&p).unwrap();
        let h = FD_STEP;
        for a in 0..3 {
            let (fp, fm) = (at(e(a, h)), at(e(a, -h)));
            for m in 0..4 {
                first = first.max((tangents[a][m] - (fp[m] - fm[m]) / (2.0 * h)).abs());
            }
            for b in 0..3 {
                let shift = |sa: f64, sb: f64| {
                    let (x, y) = (e(a, sa), e(b, sb));
                    at(std::array::from_fn(|i| x[i] + y[i]))
                };
                let (pp, pm, mp, mm) = (shift(h, h), shift(h, -h), shift(-h, h), shift(-h, -h));
                for m in 0..4 {
                    let fd = (pp[m] - pm[m] - mp[m] + mm[m]) / (4.0 * h * h);
                    second = second.max((jet[m].hess(a, b) - fd).abs());
                }
            }
        }
    }
    Verdict {
        pass: first <= FD_FIRST && second <= FD_SECOND,
        detail: format!("100 points, first {first:.1e}, second {second:.1e}"),
    }
}

fn spin_group() -> Verdict {
    let check = selftest::spin_adjoint(&mut ChaCha8Rng::seed_from_u64(8), 100);
    if llspin::spin::ADJOINT_TOL > SPIN_Q {
        return Verdict::fail("library tolerance looser than the criterion");
    }
    Verdict::from(&[check])
}

fn determinism(dir: &Path) -> Result<Verdict, String> {
    let chart = charts().join("light_cone.json");
    let strip = |mut r: Value| {
        r.as_object_mut().unwrap().remove("timestamp");
        r
    };
    let args = ["--seed", "9", "--samples", "5"];
    let (_, a) = verify_report(&chart, &dir.join("det_a.json"), &args)?;
    let (_, b) = verify_report(&chart, &dir.join("det_b.json"), &args)?;
    let same = strip(a) == strip(b);
    let text = |n: &str| std::fs::read_to_string(dir.join(n)).unwrap();
    let differing: Vec<String> = text("det_a.json")
        .lines()
        .zip(text("det_b.json").lines())
        .filter(|(x, y)| x != y)
        .map(|(x, _)| x.trim().to_owned())
        .collect();
    let only_timestamp = differing.iter().all(|l| l.starts_with("\"timestamp\""));
    Ok(Verdict {
        pass: same && only_timestamp,
        detail: format!("{} differing lines, all timestamp: {only_timestamp}", differing.len()),
    })
}

type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Result<Verdict, String> + 'a>);

fn main() -> ExitCode {
    let dir = tempfile::tempdir().expect("temp dir");
    let criteria: Vec<Criterion> = vec![
        ("exact Clifford suite", Duration::from_secs(1), Box::new(|| Ok(exact_clifford()))),
        ("embedding homomorphism", Duration::from_secs(1), Box::new(|| Ok(embedding()))),
        ("gamma-set contract", Duration::from_secs(1), Box::new(|| Ok(gamma_contract()))),
        ("worked example golden run", Duration::from_secs(5), Box::new(|| example_golden(dir.path()))),
        ("light-cone run", Duration::from_secs(60), Box::new(|| light_cone(dir.path()))),
        ("dual-form Dirac identity", Duration::from_secs(5), Box::new(|| Ok(dual_dirac()))),
        ("oracle agreement", Duration::from_secs(5), Box::new(|| Ok(oracle_agreement()))),
        ("degenerate spin group", Duration::from_secs(1), Box::new(|| Ok(spin_group()))),
        ("determinism", Duration::from_secs(60), Box::new(|| determinism(dir.path()))),
    ];
    let mut failures = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run().unwrap_or_else(Verdict::fail);
        let elapsed = start.elapsed();
        let pass = verdict.pass && elapsed <= *budget;
        failures += usize::from(!pass);
        println!(
            "criterion {}: {} {name} ({:.2?} of {:?}): {}",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            elapsed,
            budget,
            verdict.detail
        );
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
