use serde::Serialize;

use crate::error::{Error, Result};
use crate::recon::{reconstruct_track, Limiter, PiecewisePoly, ReconOptions};
use crate::trajdata::TrackSeries;

use super::cases::SyntheticCase;
use super::convergence::StudyOptions;
use super::norms::ErrorNorms;
use super::rk::{integrate, RkScheme};

/// Trajectory a backtraced path is scored against.
#[derive(Debug, Clone, Copy)]
pub enum Reference<'a> {
    /// Unlimited cubic reconstruction of the track itself.
    Reconstruction,
    Analytic(&'a SyntheticCase),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BacktraceResult {
    pub track_id: String,
    pub degree: usize,
    pub scheme: RkScheme,
    /// Backward pseudo-times; the matching physical time is `t_last - tau`.
    pub taus: Vec<f64>,
    pub path: Vec<Vec<f64>>,
    pub endpoint: Vec<f64>,
    /// Distance from the endpoint to the first sample.
    pub endpoint_error: f64,
    /// Per-axis deviation of the path from the reference at the RK times.
    pub norms: Vec<ErrorNorms>,
}

/// Degree of the reference reconstruction for recorded tracks.
pub const REFERENCE_DEGREE: usize = 3;

/// Integrates the velocity of `axes` backward from the last sample of
/// `track` over the whole track duration and scores the path.
pub fn backtrace_polys(
    track: &TrackSeries,
    axes: &[PiecewisePoly],
    dtau: f64,
    scheme: RkScheme,
    reference: &dyn Fn(f64) -> Vec<f64>,
) -> Result<BacktraceResult> {
    if !(dtau > 0.0 && dtau.is_finite()) {
        return Err(Error::InvalidConfig(format!("dtau must be positive, got {dtau}")));
    }
    let times = track.times();
    let t_last = times[times.len() - 1];
    let x0 = track.coords()[track.len() - 1].clone();
    let field = |_: &[f64], tau: f64| -> Vec<f64> { axes.iter().map(|p| p.derivative_clamped(t_last - tau, 1)).collect() };
    let (taus, path) = integrate(&x0, track.duration(), dtau, field, scheme);
    let refs: Vec<Vec<f64>> = taus.iter().map(|tau| reference(t_last - tau)).collect();
    let norms = (0..track.dim())
        .map(|a| {
            let errors: Vec<f64> = path.iter().zip(&refs).map(|(x, r)| x[a] - r[a]).collect();
            ErrorNorms::from_samples(&taus, &errors)
        })
        .collect();
    let endpoint = path.last().unwrap().clone();
    let first = &track.coords()[0];
    let endpoint_error = endpoint
        .iter()
        .zip(first)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    Ok(BacktraceResult {
        track_id: track.track_id().to_string(),
        degree: axes.iter().map(PiecewisePoly::degree).max().unwrap_or(1),
        scheme,
        taus,
        path,
        endpoint,
        endpoint_error,
        norms,
    })
}

/// Backtrace with a degree-`degree` reconstruction and the matching scheme.
/// Degree 1 is linear linking and is never limited.
pub fn backtrace(
    track: &TrackSeries,
    degree: usize,
    dtau: f64,
    reference: Reference<'_>,
    opts: &StudyOptions,
) -> Result<BacktraceResult> {
    let mut recon = opts.recon(degree);
    if degree == 1 {
        recon.limiter = Limiter::None;
    }
    let rec = reconstruct_track(track, &recon)?;
    let scheme = RkScheme::for_degree(rec.degree);
    match reference {
        Reference::Analytic(case) => backtrace_polys(track, &rec.axes, dtau, scheme, &|t| case.position(t)),
        Reference::Reconstruction => {
            let reference = reconstruct_track(
                track,
                &ReconOptions {
                    limiter: Limiter::None,
                    ..opts.recon(REFERENCE_DEGREE)
                },
            )?;
            let eval = |t: f64| -> Vec<f64> { reference.axes.iter().map(|p| p.derivative_clamped(t, 0)).collect() };
            backtrace_polys(track, &rec.axes, dtau, scheme, &eval)
        }
    }
}
