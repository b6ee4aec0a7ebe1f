//! High-order piecewise polynomial reconstruction of sampled trajectories.

mod basis;
mod clsq;
mod stencil;

use serde::{Deserialize, Serialize};

pub use basis::{CellPoly, TaylorBasis};
pub use clsq::{assemble_clsq, cell_basis, solve_clsq, CellOperator, ClsqSystem};
pub use stencil::{build_stencil, Stencil, StencilRule};

use crate::cweno::{self, CwenoConfig};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::mesh::StaggeredMesh;
use crate::trajdata::{AxisSeries, TrackSeries};

/// Largest supported reconstruction degree.
pub const MAX_DEGREE: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Limiter {
    None,
    #[default]
    Cweno,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReconOptions {
    pub degree: usize,
    pub limiter: Limiter,
    pub stencil: StencilRule,
    pub cweno: CwenoConfig,
    pub execution: Execution,
}

impl Default for ReconOptions {
    fn default() -> Self {
        Self {
            degree: 3,
            limiter: Limiter::default(),
            stencil: StencilRule::default(),
            cweno: CwenoConfig::default(),
            execution: Execution::default(),
        }
    }
}

impl ReconOptions {
    pub fn unlimited(degree: usize) -> Self {
        Self {
            degree,
            limiter: Limiter::None,
            ..Self::default()
        }
    }

    pub fn with_degree(mut self, degree: usize) -> Self {
        self.degree = degree;
        self
    }

    pub fn with_limiter(mut self, limiter: Limiter) -> Self {
        self.limiter = limiter;
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree == 0 || self.degree > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(self.degree));
        }
        self.cweno.validate()
    }
}

/// Degree actually used on a track with `num_samples` samples: a degree-N
/// fit needs at least N+1 samples.
pub fn effective_degree(requested: usize, num_samples: usize) -> usize {
    requested.min(num_samples.saturating_sub(1)).max(1)
}

/// Piecewise polynomial over a staggered mesh, one [`CellPoly`] per cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PiecewisePoly {
    #[serde(skip)]
    mesh: StaggeredMesh,
    degree: usize,
    cells: Vec<CellPoly>,
}

impl PiecewisePoly {
    pub fn new(mesh: StaggeredMesh, cells: Vec<CellPoly>) -> Self {
        assert_eq!(mesh.num_cells(), cells.len());
        let degree = cells.iter().map(CellPoly::degree).max().unwrap_or(0);
        Self {
            mesh,
            degree,
            cells,
        }
    }

    pub fn mesh(&self) -> &StaggeredMesh {
        &self.mesh
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn cells(&self) -> &[CellPoly] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &CellPoly {
        &self.cells[i]
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.mesh.start(), self.mesh.end())
    }

    /// `q`-th derivative at `t`. At an interior interface the left cell is
    /// used.
    pub fn derivative(&self, t: f64, q: usize) -> Result<f64> {
        let i = self.mesh.locate_cell(t)?;
        Ok(self.cells[i].derivative(t, q))
    }

    pub fn value(&self, t: f64) -> Result<f64> {
        self.derivative(t, 0)
    }

    /// Position, velocity and acceleration at `t`.
    pub fn eval(&self, t: f64) -> Result<(f64, f64, f64)> {
        let i = self.mesh.locate_cell(t)?;
        Ok(self.cells[i].kinematics(t))
    }

    /// Like [`Self::derivative`] but clamps `t` into the domain first.
    pub fn derivative_clamped(&self, t: f64, q: usize) -> f64 {
        let t = t.clamp(self.mesh.start(), self.mesh.end());
        self.cells[self.mesh.locate_clamped(t)].derivative(t, q)
    }

    /// Map over cells producing a new piecewise polynomial on the same mesh.
    pub fn map_cells(&self, f: impl Fn(&CellPoly) -> CellPoly) -> PiecewisePoly {
        PiecewisePoly::new(self.mesh.clone(), self.cells.iter().map(f).collect())
    }
}

/// Per-cell reconstruction operators for one mesh.
#[derive(Debug, Clone)]
pub struct ReconOperator {
    mesh: StaggeredMesh,
    degree: usize,
    cells: Vec<CellOperator>,
}

impl ReconOperator {
    /// Builds the operator at exactly `degree` (already reduced for the track
    /// length). A cell whose system is singular falls back to lower degrees.
    pub fn new(mesh: &StaggeredMesh, degree: usize, rule: StencilRule, execution: Execution) -> Result<Self> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(degree));
        }
        let k = mesh.num_interfaces();
        let cells = exec::try_map_indexed(execution, mesh.num_cells(), |cell| {
            for n in (1..=degree).rev() {
                match CellOperator::new(mesh, build_stencil(k, cell, n, rule), n) {
                    Ok(op) => {
                        if n < degree {
                            log::warn!("cell {cell}: singular system at degree {degree}, using {n}");
                        }
                        return Ok(op);
                    }
                    Err(_) => continue,
                }
            }
            Err(Error::SingularSystem { cell })
        })?;
        Ok(Self {
            mesh: mesh.clone(),
            degree,
            cells,
        })
    }

    pub fn mesh(&self) -> &StaggeredMesh {
        &self.mesh
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn cell(&self, i: usize) -> &CellOperator {
        &self.cells[i]
    }

    /// Unlimited reconstruction of one axis sampled at the mesh interfaces.
    pub fn apply(&self, values: &[f64], execution: Execution) -> PiecewisePoly {
        assert_eq!(values.len(), self.mesh.num_interfaces());
        let cells = exec::map_indexed(execution, self.cells.len(), |i| self.cells[i].apply(values));
        PiecewisePoly::new(self.mesh.clone(), cells)
    }
}

/// Reconstructs one coordinate axis.
pub fn reconstruct_axis(series: &AxisSeries, opts: &ReconOptions) -> Result<PiecewisePoly> {
    opts.validate()?;
    let mesh = StaggeredMesh::new(series.times())?;
    let degree = effective_degree(opts.degree, series.len());
    let op = ReconOperator::new(&mesh, degree, opts.stencil, opts.execution)?;
    finish_axis(&op, series.values(), opts)
}

fn finish_axis(op: &ReconOperator, values: &[f64], opts: &ReconOptions) -> Result<PiecewisePoly> {
    let poly = op.apply(values, opts.execution);
    match opts.limiter {
        Limiter::None => Ok(poly),
        Limiter::Cweno => Ok(cweno::limit(&poly, values, &opts.cweno, opts.execution)?.poly),
    }
}

/// Reconstruction of every axis of a track.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrackReconstruction {
    pub track_id: String,
    pub requested_degree: usize,
    pub degree: usize,
    pub limiter: Limiter,
    pub axes: Vec<PiecewisePoly>,
}

impl TrackReconstruction {
    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn mesh(&self) -> &StaggeredMesh {
        self.axes[0].mesh()
    }
}

/// Reconstructs all axes of `track`, sharing one operator across them.
pub fn reconstruct_track(track: &TrackSeries, opts: &ReconOptions) -> Result<TrackReconstruction> {
    opts.validate()?;
    let mesh = StaggeredMesh::new(track.times())?;
    let degree = effective_degree(opts.degree, track.len());
    if degree < opts.degree {
        log::warn!(
            "track `{}`: {} samples, degree reduced from {} to {}",
            track.track_id(),
            track.len(),
            opts.degree,
            degree
        );
    }
    let op = ReconOperator::new(&mesh, degree, opts.stencil, opts.execution)?;
    let axes = track
        .split_axes()
        .iter()
        .map(|axis| finish_axis(&op, axis.values(), opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(TrackReconstruction {
        track_id: track.track_id().to_string(),
        requested_degree: opts.degree,
        degree,
        limiter: opts.limiter,
        axes,
    })
}

/// Reconstructs many tracks, in input order, in parallel when enabled.
pub fn reconstruct_tracks<'a, I>(tracks: I, opts: &ReconOptions) -> Vec<Result<TrackReconstruction>>
where
    I: IntoIterator<Item = &'a TrackSeries>,
{
    let tracks: Vec<&TrackSeries> = tracks.into_iter().collect();
    exec::map_indexed(opts.execution, tracks.len(), |i| reconstruct_track(tracks[i], opts))
}
