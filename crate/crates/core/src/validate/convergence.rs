use serde::Serialize;

use crate::error::Result;
use crate::exec::{self, Execution};
use crate::recon::{reconstruct_track, Limiter, ReconOptions, StencilRule};

use super::cases::SyntheticCase;
use super::norms::{error_norms, ErrorNorms};

/// Settings shared by the validation studies.
#[derive(Debug, Clone, PartialEq)]
pub struct StudyOptions {
    pub stencil: StencilRule,
    pub limiter: Limiter,
    pub execution: Execution,
}

impl Default for StudyOptions {
    fn default() -> Self {
        Self {
            stencil: StencilRule::default(),
            limiter: Limiter::None,
            execution: Execution::default(),
        }
    }
}

impl StudyOptions {
    pub fn recon(&self, degree: usize) -> ReconOptions {
        ReconOptions {
            degree,
            limiter: self.limiter,
            stencil: self.stencil,
            execution: self.execution,
            ..ReconOptions::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub degree: usize,
    pub points: usize,
    /// Sample spacing.
    pub dt: f64,
    /// Position errors per axis.
    pub errors: Vec<ErrorNorms>,
    /// Orders against the previous row of the same degree, per axis as
    /// `[L1, L2, Linf]`.
    pub orders: Option<Vec<[f64; 3]>>,
}

/// `log(e_prev / e) / log(dt_prev / dt)`.
pub fn empirical_order(e_prev: f64, e: f64, dt_prev: f64, dt: f64) -> f64 {
    (e_prev / e).ln() / (dt_prev / dt).ln()
}

/// Position errors of the reconstruction of `case` sampled at `points`.
pub fn measure(case: &SyntheticCase, degree: usize, points: usize, opts: &StudyOptions) -> Result<Vec<ErrorNorms>> {
    let track = case.sample(points)?;
    let rec = reconstruct_track(&track, &opts.recon(degree))?;
    let quad = (rec.degree + 1).min(crate::quadrature::MAX_POINTS);
    Ok(rec
        .axes
        .iter()
        .enumerate()
        .map(|(a, p)| {
            let exact = case.position_fn(a);
            error_norms(|t| exact(t), |t| p.derivative_clamped(t, 0), case.domain, quad, p.mesh())
        })
        .collect())
}

/// Runs every `(degree, points)` pair and returns rows ordered by degree,
/// then by the given mesh order.
pub fn run_convergence(
    case: &SyntheticCase,
    degrees: &[usize],
    points: &[usize],
    opts: &StudyOptions,
) -> Result<Vec<ConvergenceRow>> {
    let jobs: Vec<(usize, usize)> = degrees.iter().flat_map(|&n| points.iter().map(move |&p| (n, p))).collect();
    let errors = exec::try_map_indexed(opts.execution, jobs.len(), |j| measure(case, jobs[j].0, jobs[j].1, opts))?;
    let span = case.domain.1 - case.domain.0;
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(jobs.len());
    for ((degree, points), errors) in jobs.into_iter().zip(errors) {
        let dt = span / (points - 1) as f64;
        let orders = rows
            .last()
            .filter(|prev| prev.degree == degree)
            .map(|prev| {
                prev.errors
                    .iter()
                    .zip(&errors)
                    .map(|(a, b)| {
                        let (a, b) = (a.as_array(), b.as_array());
                        std::array::from_fn(|k| empirical_order(a[k], b[k], prev.dt, dt))
                    })
                    .collect()
            });
        rows.push(ConvergenceRow {
            degree,
            points,
            dt,
            errors,
            orders,
        });
    }
    Ok(rows)
}
