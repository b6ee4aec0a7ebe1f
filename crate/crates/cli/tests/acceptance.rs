//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;
use std::process::Command;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use trajrecon::cweno::{self, CwenoConfig};
use trajrecon::exec::Execution;
use trajrecon::geometry;
use trajrecon::recon::{reconstruct_axis, CellPoly, ReconOptions, TaylorBasis};
use trajrecon::validate::{self, checks, reference, Reference, StudyOptions, SyntheticCase};
use trajrecon::{reconstruct_track, AxisSeries, TrackSeries};

struct Sub {
    name: String,
    passed: bool,
    detail: String,
}

fn sub(name: &str, passed: bool, detail: String) -> Sub {
    Sub {
        name: name.into(),
        passed,
        detail,
    }
}

fn from_outcomes(outcomes: Vec<checks::CheckOutcome>) -> Vec<Sub> {
    outcomes.into_iter().map(|o| sub(&o.name, o.passed, o.detail)).collect()
}

fn random_track(rng: &mut StdRng, id: &str, len: usize, dim: usize) -> TrackSeries {
    let mut t = rng.gen_range(-5.0..5.0);
    let mut pos: Vec<f64> = (0..dim).map(|_| rng.gen_range(-10.0..10.0)).collect();
    let mut times = Vec::with_capacity(len);
    let mut coords = Vec::with_capacity(len);
    for _ in 0..len {
        times.push(t);
        coords.push(pos.clone());
        t += rng.gen_range(0.05..1.0);
        for p in &mut pos {
            *p += rng.gen_range(-1.0..1.0);
        }
    }
    TrackSeries::new(id, times, coords).unwrap()
}

/// Published convergence table: errors within 5 % and orders.
fn criterion_1() -> Vec<Sub> {
    let rows = validate::run_convergence(
        &SyntheticCase::conv3d(),
        &checks::CONVERGENCE_DEGREES,
        &reference::POINTS,
        &StudyOptions::default(),
    )
    .unwrap();
    from_outcomes(checks::check_convergence(&rows))
}

/// Cubic velocity at least 10x better than linear linking, monotone errors.
fn criterion_2() -> Vec<Sub> {
    let rows = validate::compare_spt(&SyntheticCase::tanhcos2d(), &checks::COMPARE_POINTS, &StudyOptions::default()).unwrap();
    from_outcomes(checks::check_comparison(&rows))
}

/// RK4 on the cubic reconstruction deviates less than RK2 on linear linking.
fn criterion_3() -> Vec<Sub> {
    let case = SyntheticCase::tanhcos2d();
    let track = case.sample(checks::BACKTRACE_POINTS).unwrap();
    let opts = StudyOptions::default();
    let r = Reference::Analytic(&case);
    let lin = validate::backtrace(&track, 1, checks::BACKTRACE_DTAU, r, &opts).unwrap();
    let cub = validate::backtrace(&track, 3, checks::BACKTRACE_DTAU, r, &opts).unwrap();
    vec![from_outcomes(vec![checks::check_backtrace(&lin, &cub)]).remove(0)]
}

/// Degree <= N polynomials are reproduced exactly (value, velocity,
/// acceleration) on non-uniform samples.
fn criterion_4() -> Vec<Sub> {
    const TOL: f64 = 1e-9;
    let mut rng = StdRng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    for n in 1..=5usize {
        for _ in 0..100 {
            let k = n + 2 + rng.gen_range(0..=12);
            let mut times = vec![rng.gen_range(-3.0..3.0)];
            for _ in 1..k {
                let last = *times.last().unwrap();
                times.push(last + rng.gen_range(0.2..1.8));
            }
            let c = 0.5 * (times[0] + times[k - 1]);
            let deg = rng.gen_range(0..=n);
            let a: Vec<f64> = (0..=deg).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let exact = |t: f64, q: usize| -> f64 {
                let x = t - c;
                (q..=deg)
                    .map(|j| {
                        let falling: f64 = (j - q + 1..=j).map(|m| m as f64).product();
                        a[j] * falling * x.powi((j - q) as i32)
                    })
                    .sum()
            };
            let series = AxisSeries::sample(times.clone(), |t| exact(t, 0)).unwrap();
            let p = reconstruct_axis(&series, &ReconOptions::unlimited(n)).unwrap();
            for _ in 0..50 {
                let t = rng.gen_range(times[0]..times[k - 1]);
                for q in 0..3 {
                    let e = exact(t, q);
                    let got = p.derivative(t, q).unwrap();
                    worst = worst.max((got - e).abs() / e.abs().max(1.0));
                    checked += 1;
                }
            }
        }
    }
    vec![sub(
        "polynomial exactness",
        worst <= TOL,
        format!("{checked} evaluations, worst relative error {worst:.2e} (tol {TOL:.0e})"),
    )]
}

/// Weight normalization, smooth-data fidelity and step-data behavior of the
/// limiter.
fn criterion_5() -> Vec<Sub> {
    let cfg = CwenoConfig::default();
    let mut out = Vec::new();

    let mut rng = StdRng::seed_from_u64(5);
    let mut worst_sum: f64 = 0.0;
    let mut in_range = true;
    for _ in 0..1000 {
        let width = 10f64.powf(rng.gen_range(-3.0..1.0));
        let basis = TaylorBasis::new(3, rng.gen_range(-5.0..5.0), width);
        let mut rand_poly = |deg: usize| {
            let scale = 10f64.powf(rng.gen_range(-8.0..8.0));
            let mut c: Vec<f64> = (0..=deg).map(|_| scale * rng.gen_range(-1.0..1.0)).collect();
            c.resize(4, 0.0);
            CellPoly::new(basis, c)
        };
        let (c, l, r) = (rand_poly(3), rand_poly(1), rand_poly(1));
        let b = cweno::blend(&c, &l, &r, (basis.center - 0.5 * width, basis.center + 0.5 * width), &cfg);
        worst_sum = worst_sum.max((b.weights.iter().sum::<f64>() - 1.0).abs());
        in_range &= b.weights.iter().all(|w| (0.0..=1.0).contains(w));
    }
    out.push(sub(
        "weight normalization",
        worst_sum <= 1e-14 && in_range,
        format!("1000 sets, worst |sum - 1| = {worst_sum:.1e}, all in [0, 1]: {in_range}"),
    ));

    let case = SyntheticCase::conv3d();
    let track = case.sample(101).unwrap();
    let mut worst_smooth: f64 = 0.0;
    for axis in track.split_axes() {
        let unl = reconstruct_axis(&axis, &ReconOptions::unlimited(3)).unwrap();
        let lim = reconstruct_axis(&axis, &ReconOptions::default().with_degree(3)).unwrap();
        let scale = axis.values().iter().fold(0f64, |m, v| m.max(v.abs()));
        for k in 0..=2000 {
            let t = -1.0 + 2.0 * k as f64 / 2000.0;
            worst_smooth = worst_smooth.max((lim.value(t).unwrap() - unl.value(t).unwrap()).abs() / scale);
        }
    }
    out.push(sub(
        "smooth data blend",
        worst_smooth <= 1e-8,
        format!("max |limited - unlimited| / max|s| = {worst_smooth:.2e} (tol 1e-8)"),
    ));

    let times: Vec<f64> = (0..41).map(|k| k as f64 / 40.0).collect();
    let step = AxisSeries::sample(times.clone(), |t| if t < 0.51 { 0.0 } else { 1.0 }).unwrap();
    let unl = reconstruct_axis(&step, &ReconOptions::unlimited(3)).unwrap();
    let jump = step.values().windows(2).position(|w| w[0] != w[1]).unwrap();
    let b = cweno::limit_cell(&unl, step.values(), jump, &cfg);
    let mesh = unl.mesh();
    let degree = unl.cell(jump).degree();
    let candidates = [cweno::Side::Left, cweno::Side::Right]
        .map(|s| cweno::one_sided_p1(mesh, step.values(), jump, s, degree).unwrap());
    let (a, bnd) = mesh.cell_bounds(jump);
    let smooth = candidates
        .iter()
        .min_by(|x, y| {
            cweno::oscillation_indicator(x, (a, bnd)).total_cmp(&cweno::oscillation_indicator(y, (a, bnd)))
        })
        .unwrap();
    let dev = (0..=20)
        .map(|k| {
            let t = a + (bnd - a) * k as f64 / 20.0;
            (b.poly.value(t) - smooth.value(t)).abs()
        })
        .fold(0f64, f64::max);
    out.push(sub(
        "step data blend",
        dev <= 0.01,
        format!("max deviation from the smooth one-sided line in the jump cell {dev:.2e} of a unit jump (tol 1e-2)"),
    ));
    out
}

/// Arc length: trapezoidal reduction, circle convergence, chord inequality.
fn criterion_6() -> Vec<Sub> {
    let mut out = Vec::new();
    let mut rng = StdRng::seed_from_u64(6);
    let opts = ReconOptions::unlimited(3);

    let mut worst: f64 = 0.0;
    for k in 0..200 {
        let len = rng.gen_range(2..40);
        let dim = rng.gen_range(1..=3);
        let track = random_track(&mut rng, &k.to_string(), len, dim);
        let rec = reconstruct_track(&track, &opts).unwrap();
        let l = geometry::trajectory_length(&rec.axes, 1, Execution::default()).unwrap();
        let poly: f64 = track
            .coords()
            .windows(2)
            .map(|w| w[0].iter().zip(&w[1]).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt())
            .sum();
        worst = worst.max((l - poly).abs() / poly.max(1.0));
    }
    out.push(sub(
        "linear geometry equals polyline",
        worst <= 1e-12,
        format!("200 tracks, worst relative difference {worst:.1e} (tol 1e-12)"),
    ));

    let errs: Vec<(usize, f64)> = [9usize, 17, 33, 65, 129, 257]
        .iter()
        .map(|&n| {
            let times = validate::linspace(0.0, FRAC_PI_2, n);
            let coords = times.iter().map(|&t| vec![t.cos(), t.sin()]).collect();
            let track = TrackSeries::new("arc", times, coords).unwrap();
            let rec = reconstruct_track(&track, &opts).unwrap();
            let l = geometry::trajectory_length(&rec.axes, 3, Execution::default()).unwrap();
            (n, (l - FRAC_PI_2).abs())
        })
        .collect();
    let order = (errs[4].1 / errs[5].1).log2();
    let mut detail = String::from("errors");
    for (n, e) in &errs {
        let _ = write!(detail, " {n}:{e:.2e}");
    }
    let _ = write!(detail, ", finest order {order:.2} (min 3.5)");
    out.push(sub("quarter circle convergence", order >= 3.5, detail));

    let mut violations = 0;
    let mut limited_violations = 0;
    for k in 0..1000 {
        let len = rng.gen_range(2..30);
        let dim = rng.gen_range(1..=3);
        let track = random_track(&mut rng, &k.to_string(), len, dim);
        let first = &track.coords()[0];
        let last = &track.coords()[track.len() - 1];
        let chord = first.iter().zip(last).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        let rec = reconstruct_track(&track, &opts).unwrap();
        let l = geometry::trajectory_length(&rec.axes, 3, Execution::default()).unwrap();
        if l < chord * (1.0 - 1e-12) {
            violations += 1;
        }
        let lim = reconstruct_track(&track, &ReconOptions::default()).unwrap();
        let ll = geometry::trajectory_length(&lim.axes, 3, Execution::default()).unwrap();
        if ll < chord * (1.0 - 1e-12) {
            limited_violations += 1;
        }
    }
    out.push(sub(
        "chord inequality",
        violations == 0,
        format!("1000 random tracks, {violations} violations (limited reconstruction: {limited_violations})"),
    ));
    out
}

/// The command line tool with degree 1 and no limiter is linear
/// interpolation of the samples.
fn criterion_7() -> Vec<Sub> {
    let mut rng = StdRng::seed_from_u64(7);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tracks.csv");
    let mut csv = String::from("track,t,x,y,z\n");
    let mut tracks = Vec::new();
    for k in 0..100 {
        let len = rng.gen_range(2..30);
        let t = random_track(&mut rng, &format!("p{k}"), len, 3);
        for (time, c) in t.times().iter().zip(t.coords()) {
            let _ = writeln!(csv, "{},{:.17e},{:.17e},{:.17e},{:.17e}", t.track_id(), time, c[0], c[1], c[2]);
        }
        tracks.push(t);
    }
    std::fs::write(&path, csv).unwrap();
    let output = Command::new(env!("CARGO_BIN_EXE_trajrecon"))
        .args(["kinematics", "--degree", "1", "--limiter", "none", "--input"])
        .arg(&path)
        .output()
        .unwrap();
    if !output.status.success() {
        return vec![sub("linear linking equivalence", false, String::from_utf8_lossy(&output.stderr).into())];
    }
    let text = String::from_utf8(output.stdout).unwrap();
    let mut worst: f64 = 0.0;
    let mut rows = 0;
    let mut current = 0;
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        while tracks[current].track_id() != f[0] {
            current += 1;
        }
        let tr = &tracks[current];
        let t: f64 = f[1].parse().unwrap();
        let times = tr.times();
        let mut k = 0;
        while k + 2 < times.len() && times[k + 1] < t {
            k += 1;
        }
        let w = (t - times[k]) / (times[k + 1] - times[k]);
        for axis in 0..3 {
            let (a, b) = (tr.coords()[k][axis], tr.coords()[k + 1][axis]);
            let expect = a + w * (b - a);
            let got: f64 = f[2 + axis].parse().unwrap();
            worst = worst.max((got - expect).abs() / expect.abs().max(1.0));
        }
        rows += 1;
    }
    let expected_rows: usize = tracks.iter().map(|t| 2 * (t.len() - 1)).sum();
    vec![sub(
        "linear linking equivalence",
        worst <= 1e-12 && rows == expected_rows,
        format!("100 tracks, {rows} samples (expected {expected_rows}), worst relative difference {worst:.1e} (tol 1e-12)"),
    )]
}

type Criterion = (&'static str, fn() -> Vec<Sub>);

fn main() {
    let criteria: [Criterion; 7] = [
        ("convergence table", criterion_1),
        ("linear vs cubic comparison", criterion_2),
        ("backtrace ordering", criterion_3),
        ("polynomial exactness", criterion_4),
        ("limiter properties", criterion_5),
        ("arc length", criterion_6),
        ("linear linking oracle", criterion_7),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let subs = run();
        let passed = subs.iter().all(|s| s.passed);
        if !passed {
            failed += 1;
        }
        let parts: Vec<String> = subs
            .iter()
            .map(|s| format!("[{}] {}: {}", if s.passed { "ok" } else { "FAIL" }, s.name, s.detail))
            .collect();
        println!(
            "criterion {} {}: {} | {}",
            k + 1,
            name,
            if passed { "PASS" } else { "FAIL" },
            parts.join(" | ")
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
