use std::io::Write;
use std::path::Path;

use serde::Serialize;
use trajrecon::cweno::CwenoConfig;
use trajrecon::exec::{self, Execution};
use trajrecon::recon::{CellPoly, StencilRule};
use trajrecon::validate::{self, checks, reference, Reference, StudyOptions, SyntheticCase, NORM_NAMES};
use trajrecon::{geometry, kinematics, parse_tracks, Limiter, ReconOptions, TrackFormat, TrackSeries, TrackSet};

use crate::args::{BacktraceArgs, Common, FileArgs, FormatArg, LimiterArg, StencilArg, StudyArgs};
use crate::error::CliError;
use crate::output::{axis_columns, field, num, open, row, AXES};

type Result<T> = std::result::Result<T, CliError>;

fn execution(common: &Common) -> Execution {
    if common.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

fn cweno_config(common: &Common) -> Result<CwenoConfig> {
    let mut cfg = CwenoConfig::default();
    if let Some(eps) = common.cweno_eps {
        cfg.epsilon = eps;
    }
    if let Some(r) = common.cweno_r {
        cfg.exponent = r;
    }
    if let Some(l) = common.cweno_lambda0 {
        cfg.lambda_central = l;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn limiter(arg: LimiterArg) -> Limiter {
    match arg {
        LimiterArg::None => Limiter::None,
        LimiterArg::Cweno => Limiter::Cweno,
    }
}

fn stencil(arg: StencilArg) -> StencilRule {
    match arg {
        StencilArg::Wide => StencilRule::Wide,
        StencilArg::Compact => StencilRule::Compact,
    }
}

fn format(arg: FormatArg) -> TrackFormat {
    match arg {
        FormatArg::GenericCsv => TrackFormat::GenericCsv,
        FormatArg::TrackmateCsv => TrackFormat::TrackmateCsv,
    }
}

fn recon_options(degree: usize, limiter_arg: LimiterArg, common: &Common) -> Result<ReconOptions> {
    let opts = ReconOptions {
        degree,
        limiter: limiter(limiter_arg),
        stencil: stencil(common.stencil),
        cweno: cweno_config(common)?,
        execution: execution(common),
    };
    opts.validate()?;
    Ok(opts)
}

fn study_options(limiter_arg: LimiterArg, common: &Common) -> Result<StudyOptions> {
    cweno_config(common)?;
    Ok(StudyOptions {
        stencil: stencil(common.stencil),
        limiter: limiter(limiter_arg),
        execution: execution(common),
    })
}

fn load(input: &Path, fmt: FormatArg) -> Result<TrackSet> {
    let set = parse_tracks(input, format(fmt))?;
    if set.is_empty() {
        log::warn!("{}: no track with at least 2 samples", input.display());
    }
    Ok(set)
}

/// Runs `f` on every track (in parallel when enabled) and returns the
/// results in input order.
fn per_track<T, F>(set: &TrackSet, execution: Execution, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&TrackSeries) -> trajrecon::Result<T> + Sync,
{
    let tracks: Vec<&TrackSeries> = set.iter().collect();
    exec::map_indexed(execution, tracks.len(), |i| f(tracks[i]))
        .into_iter()
        .zip(&tracks)
        .map(|(r, t)| {
            r.map_err(|source| CliError::Track {
                track: t.track_id().to_string(),
                source,
            })
        })
        .collect()
}

fn geom_degree(requested: Option<usize>, degree: usize) -> Result<usize> {
    match requested {
        Some(g) => Ok(geometry::capped_degree(g)?),
        None => Ok(geometry::default_degree(degree)),
    }
}

#[derive(Serialize)]
struct AxisJson<'a> {
    axis: &'static str,
    cells: &'a [CellPoly],
}

#[derive(Serialize)]
struct TrackJson<'a> {
    track: &'a str,
    requested_degree: usize,
    degree: usize,
    limiter: Limiter,
    axes: Vec<AxisJson<'a>>,
}

#[derive(Serialize)]
struct ReconstructionJson<'a> {
    tracks: Vec<TrackJson<'a>>,
}

pub fn reconstruct(args: &FileArgs) -> Result<()> {
    let opts = recon_options(args.degree, args.limiter, &args.common)?;
    let set = load(&args.input, args.format)?;
    let recs = per_track(&set, opts.execution, |t| trajrecon::reconstruct_track(t, &opts))?;
    let doc = ReconstructionJson {
        tracks: recs
            .iter()
            .map(|r| TrackJson {
                track: &r.track_id,
                requested_degree: r.requested_degree,
                degree: r.degree,
                limiter: r.limiter,
                axes: r
                    .axes
                    .iter()
                    .enumerate()
                    .map(|(a, p)| AxisJson {
                        axis: AXES[a],
                        cells: p.cells(),
                    })
                    .collect(),
            })
            .collect(),
    };
    let mut out = open(args.common.output.as_deref())?;
    serde_json::to_writer_pretty(&mut out, &doc)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

pub fn kinematics(args: &FileArgs) -> Result<()> {
    let opts = recon_options(args.degree, args.limiter, &args.common)?;
    let set = load(&args.input, args.format)?;
    let dim = set.dim();
    let blocks = per_track(&set, opts.execution, |t| {
        let rec = trajrecon::reconstruct_track(t, &opts)?;
        Ok(kinematics::sample_dense(&rec.axes, Execution::Sequential))
    })?;
    let mut out = open(args.common.output.as_deref())?;
    let mut header = vec!["track".to_string(), "t".to_string()];
    header.extend(axis_columns("", dim));
    header.extend(axis_columns("v", dim));
    header.extend(axis_columns("a", dim));
    header.push("speed".into());
    row(&mut out, &header)?;
    for (track, samples) in set.iter().zip(blocks) {
        let id = field(track.track_id());
        for s in samples {
            let mut r = vec![id.clone(), num(s.t)];
            r.extend(s.position.iter().map(|&x| num(x)));
            r.extend(s.velocity.iter().map(|&x| num(x)));
            r.extend(s.acceleration.iter().map(|&x| num(x)));
            r.push(num(s.speed()));
            row(&mut out, &r)?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn length(args: &FileArgs) -> Result<()> {
    let opts = recon_options(args.degree, args.limiter, &args.common)?;
    let set = load(&args.input, args.format)?;
    let lengths = per_track(&set, opts.execution, |t| {
        let rec = trajrecon::reconstruct_track(t, &opts)?;
        let g = geom_degree(args.geom_degree, rec.degree).map_err(|e| match e {
            CliError::Core(e) => e,
            other => trajrecon::Error::InvalidConfig(other.to_string()),
        })?;
        Ok((g, geometry::trajectory_length(&rec.axes, g, Execution::Sequential)?))
    })?;
    let mut out = open(args.common.output.as_deref())?;
    row(&mut out, &["track".into(), "geom_degree".into(), "length".into()])?;
    for (track, (g, l)) in set.iter().zip(lengths) {
        row(&mut out, &[field(track.track_id()), g.to_string(), num(l)])?;
    }
    out.flush()?;
    Ok(())
}

pub fn summary(args: &FileArgs) -> Result<()> {
    let opts = recon_options(args.degree, args.limiter, &args.common)?;
    if let Some(g) = args.geom_degree {
        geometry::capped_degree(g)?;
    }
    let set = load(&args.input, args.format)?;
    let dim = set.dim();
    let summaries = per_track(&set, opts.execution, |t| {
        let rec = trajrecon::reconstruct_track(t, &opts)?;
        let g = args.geom_degree.unwrap_or_else(|| geometry::default_degree(rec.degree));
        kinematics::summarize(&rec.axes, &t.split_axes(), g, Execution::Sequential)
    })?;
    let mut out = open(args.common.output.as_deref())?;
    let mut header = vec!["track".to_string(), "vL".to_string()];
    header.extend(axis_columns("vD_", dim));
    header.extend(axis_columns("vM_", dim));
    header.extend(["L".to_string(), "duration".to_string()]);
    row(&mut out, &header)?;
    for (track, s) in set.iter().zip(summaries) {
        let mut r = vec![field(track.track_id()), num(s.v_l)];
        r.extend(s.v_d.iter().map(|&x| num(x)));
        r.extend(s.v_m.iter().map(|&x| num(x)));
        r.extend([num(s.length), num(s.duration)]);
        row(&mut out, &r)?;
    }
    out.flush()?;
    Ok(())
}

fn report(outcomes: &[checks::CheckOutcome]) -> Result<()> {
    let mut failed = Vec::new();
    for o in outcomes {
        eprintln!("{} {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail);
        if !o.passed {
            failed.push(o.name.clone());
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::CheckFailed(failed))
    }
}

fn case(name: Option<&str>, default: &str) -> Result<SyntheticCase> {
    Ok(SyntheticCase::by_name(name.unwrap_or(default))?)
}

fn check_meshes(meshes: &[usize]) -> Result<()> {
    if meshes.is_empty() || meshes.iter().any(|&m| m < 2) {
        return Err(CliError::Usage("every mesh needs at least 2 samples".into()));
    }
    Ok(())
}

pub fn convergence(args: &StudyArgs) -> Result<()> {
    let opts = study_options(args.limiter, &args.common)?;
    let case = case(args.case.as_deref(), "conv3d")?;
    let meshes = args.meshes.clone().unwrap_or_else(|| reference::POINTS.to_vec());
    let degrees = args.degrees.clone().unwrap_or_else(|| checks::CONVERGENCE_DEGREES.to_vec());
    check_meshes(&meshes)?;
    for &n in &degrees {
        opts.recon(n).validate()?;
    }
    let rows = validate::run_convergence(&case, &degrees, &meshes, &opts)?;
    let mut out = open(args.common.output.as_deref())?;
    row(
        &mut out,
        &["case", "N", "dt", "axis", "norm", "error", "order"].map(String::from),
    )?;
    for r in &rows {
        for (a, e) in r.errors.iter().enumerate() {
            for (k, v) in e.as_array().iter().enumerate() {
                let order = r.orders.as_ref().map_or(String::new(), |o| num(o[a][k]));
                row(
                    &mut out,
                    &[
                        case.name.clone(),
                        r.degree.to_string(),
                        num(r.dt),
                        AXES[a].into(),
                        NORM_NAMES[k].into(),
                        num(*v),
                        order,
                    ],
                )?;
            }
        }
    }
    out.flush()?;
    if args.check {
        if case.name != "conv3d" {
            return Err(CliError::Usage("reference values exist only for conv3d".into()));
        }
        report(&checks::check_convergence(&rows))?;
    }
    Ok(())
}

pub fn compare(args: &StudyArgs) -> Result<()> {
    let opts = study_options(args.limiter, &args.common)?;
    let case = case(args.case.as_deref(), "tanhcos2d")?;
    let meshes = args.meshes.clone().unwrap_or_else(|| checks::COMPARE_POINTS.to_vec());
    check_meshes(&meshes)?;
    let rows = validate::compare_spt(&case, &meshes, &opts)?;
    let mut out = open(args.common.output.as_deref())?;
    let mut header: Vec<String> = ["case", "method", "points", "dt", "axis"].map(String::from).to_vec();
    for q in ["pos", "vel"] {
        header.extend(NORM_NAMES.iter().map(|n| format!("{q}_{n}")));
    }
    row(&mut out, &header)?;
    for r in &rows {
        let mut f = vec![
            case.name.clone(),
            r.method.label().into(),
            r.points.to_string(),
            num(r.dt),
            AXES[r.axis].into(),
        ];
        f.extend(r.position.as_array().iter().map(|&x| num(x)));
        f.extend(r.velocity.as_array().iter().map(|&x| num(x)));
        row(&mut out, &f)?;
    }
    out.flush()?;
    if args.check {
        report(&checks::check_comparison(&rows))?;
    }
    Ok(())
}

pub fn backtrace(args: &BacktraceArgs) -> Result<()> {
    if !(args.dtau > 0.0 && args.dtau.is_finite()) {
        return Err(CliError::Usage(format!("--dtau must be positive, got {}", args.dtau)));
    }
    let opts = study_options(args.limiter, &args.common)?;
    opts.recon(args.degree).validate()?;
    let synthetic = match &args.input {
        Some(_) => None,
        None => Some(case(args.case.as_deref(), "tanhcos2d")?),
    };
    let set = match (&args.input, &synthetic) {
        (Some(path), _) => load(path, args.format)?,
        (None, Some(case)) => {
            let points = args.meshes.as_ref().and_then(|m| m.first().copied()).unwrap_or(checks::BACKTRACE_POINTS);
            check_meshes(&[points])?;
            TrackSet::from_tracks(&case.name, vec![case.sample(points)?])?
        }
        (None, None) => unreachable!(),
    };
    let reference = match &synthetic {
        Some(case) => Reference::Analytic(case),
        None => Reference::Reconstruction,
    };
    let runs = per_track(&set, opts.execution, |t| {
        let linear = validate::backtrace(t, 1, args.dtau, reference, &opts)?;
        let high = validate::backtrace(t, args.degree, args.dtau, reference, &opts)?;
        Ok((linear, high))
    })?;
    let mut out = open(args.common.output.as_deref())?;
    row(
        &mut out,
        &["track", "method", "axis", "endpoint_err", "L1", "L2", "Linf"].map(String::from),
    )?;
    let mut outcomes = Vec::new();
    for (linear, high) in &runs {
        for r in [linear, high] {
            let method = format!("{}+P{}", r.scheme.label(), r.degree);
            for (a, n) in r.norms.iter().enumerate() {
                row(
                    &mut out,
                    &[
                        field(&r.track_id),
                        method.clone(),
                        AXES[a].into(),
                        num(r.endpoint_error),
                        num(n.l1),
                        num(n.l2),
                        num(n.linf),
                    ],
                )?;
            }
        }
        outcomes.push(checks::check_backtrace(linear, high));
    }
    out.flush()?;
    if args.check {
        report(&outcomes)?;
    }
    Ok(())
}
