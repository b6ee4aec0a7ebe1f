//! Position, velocity and acceleration from reconstructed trajectories, and
//! track-level summary velocities.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::geometry;
use crate::quadrature;
use crate::recon::PiecewisePoly;
use crate::trajdata::AxisSeries;

/// Speeds above this (in length units per time unit, µm/s for the usual
/// microscopy data) mark a sample as fast-moving.
pub const FAST_MOVING_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KinematicSample {
    pub t: f64,
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub acceleration: Vec<f64>,
}

impl KinematicSample {
    /// Euclidean norm of the velocity.
    pub fn speed(&self) -> f64 {
        self.velocity.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn is_fast(&self) -> bool {
        self.speed() > FAST_MOVING_THRESHOLD
    }
}

fn sample_in_cell(axes: &[PiecewisePoly], cell: usize, t: f64) -> KinematicSample {
    let mut s = KinematicSample {
        t,
        position: Vec::with_capacity(axes.len()),
        velocity: Vec::with_capacity(axes.len()),
        acceleration: Vec::with_capacity(axes.len()),
    };
    for p in axes {
        let (x, v, a) = p.cell(cell).kinematics(t);
        s.position.push(x);
        s.velocity.push(v);
        s.acceleration.push(a);
    }
    s
}

/// Kinematics at time `t`. All axes must share one mesh.
pub fn eval_at(axes: &[PiecewisePoly], t: f64) -> Result<KinematicSample> {
    let mesh = axes
        .first()
        .ok_or_else(|| Error::InvalidConfig("no axes to evaluate".into()))?
        .mesh();
    let cell = mesh.locate_cell(t)?;
    Ok(sample_in_cell(axes, cell, t))
}

/// Samples at the `N+1` Gauss points of every cell, in time order.
pub fn sample_dense(axes: &[PiecewisePoly], execution: Execution) -> Vec<KinematicSample> {
    let Some(first) = axes.first() else {
        return Vec::new();
    };
    let mesh = first.mesh();
    let degree = axes.iter().map(PiecewisePoly::degree).max().unwrap_or(1);
    let points = (degree + 1).min(quadrature::MAX_POINTS);
    exec::map_indexed(execution, mesh.num_cells(), |cell| {
        let (a, b) = mesh.cell_bounds(cell);
        quadrature::mapped(points, a, b)
            .map(|(t, _)| sample_in_cell(axes, cell, t))
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VelocitySummary {
    /// Path length over duration.
    pub v_l: f64,
    /// Net displacement over duration, per axis.
    pub v_d: Vec<f64>,
    /// Mean of the per-cell finite-difference velocities, per axis.
    pub v_m: Vec<f64>,
    pub length: f64,
    pub duration: f64,
}

/// Summary velocities of one track. `series` are the sampled axes the
/// reconstruction was built from.
pub fn summarize(
    axes: &[PiecewisePoly],
    series: &[AxisSeries],
    geom_degree: usize,
    execution: Execution,
) -> Result<VelocitySummary> {
    let length = geometry::trajectory_length(axes, geom_degree, execution)?;
    let times = series[0].times();
    let n = times.len();
    if n < 2 {
        return Err(Error::TooShort(n));
    }
    let duration = times[n - 1] - times[0];
    let v_d = series
        .iter()
        .map(|s| (s.values()[n - 1] - s.values()[0]) / duration)
        .collect();
    let v_m = series
        .iter()
        .map(|s| {
            let v = s.values();
            let sum: f64 = (0..n - 1).map(|i| (v[i + 1] - v[i]) / (times[i + 1] - times[i])).sum();
            sum / (n - 1) as f64
        })
        .collect();
    Ok(VelocitySummary {
        v_l: length / duration,
        v_d,
        v_m,
        length,
        duration,
    })
}
