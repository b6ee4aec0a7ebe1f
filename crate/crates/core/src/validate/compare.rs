use serde::Serialize;

use crate::error::Result;
use crate::exec;
use crate::recon::{reconstruct_track, Limiter};

use super::cases::SyntheticCase;
use super::convergence::StudyOptions;
use super::norms::{error_norms, ErrorNorms};

/// Linear linking of consecutive samples (degree 1, never limited) against
/// the cubic reconstruction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    #[serde(rename = "P1")]
    Linear,
    #[serde(rename = "P3")]
    Cubic,
}

impl Method {
    pub const ALL: [Method; 2] = [Method::Linear, Method::Cubic];

    pub fn degree(self) -> usize {
        match self {
            Method::Linear => 1,
            Method::Cubic => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Method::Linear => "P1",
            Method::Cubic => "P3",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub method: Method,
    pub points: usize,
    pub dt: f64,
    pub axis: usize,
    pub position: ErrorNorms,
    pub velocity: ErrorNorms,
}

/// Gauss points per cell for the comparison norms, shared by both methods.
pub const COMPARE_QUAD_POINTS: usize = 4;

/// Position and velocity errors of both methods on every mesh and axis.
/// Rows are ordered by method, then mesh, then axis.
pub fn compare_spt(case: &SyntheticCase, points: &[usize], opts: &StudyOptions) -> Result<Vec<ComparisonRow>> {
    let jobs: Vec<(Method, usize)> = Method::ALL
        .iter()
        .flat_map(|&m| points.iter().map(move |&p| (m, p)))
        .collect();
    let span = case.domain.1 - case.domain.0;
    let per_job = exec::try_map_indexed(opts.execution, jobs.len(), |j| {
        let (method, points) = jobs[j];
        let mut recon = opts.recon(method.degree());
        if method == Method::Linear {
            recon.limiter = Limiter::None;
        }
        let track = case.sample(points)?;
        let rec = reconstruct_track(&track, &recon)?;
        Ok::<_, crate::Error>(
            rec.axes
                .iter()
                .enumerate()
                .map(|(axis, p)| {
                    let x = case.position_fn(axis);
                    let v = case.velocity_fn(axis);
                    let mesh = p.mesh();
                    ComparisonRow {
                        method,
                        points,
                        dt: span / (points - 1) as f64,
                        axis,
                        position: error_norms(|t| x(t), |t| p.derivative_clamped(t, 0), case.domain, COMPARE_QUAD_POINTS, mesh),
                        velocity: error_norms(|t| v(t), |t| p.derivative_clamped(t, 1), case.domain, COMPARE_QUAD_POINTS, mesh),
                    }
                })
                .collect::<Vec<_>>(),
        )
    })?;
    Ok(per_job.into_iter().flatten().collect())
}
