//! Piecewise polynomial reconstruction of particle trajectories with
//! constrained least squares, central WENO limiting, arc length and
//! kinematics, plus validation studies on synthetic tracks.

// `!(a < b)` is used on purpose so NaN fails range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod cweno;
pub mod dense;
pub mod error;
pub mod exec;
pub mod geometry;
pub mod kinematics;
pub mod mesh;
pub mod quadrature;
pub mod recon;
pub mod trajdata;
pub mod validate;

pub use error::{Error, Result};
pub use exec::Execution;
pub use mesh::{build_mesh, StaggeredMesh};
pub use recon::{
    reconstruct_axis, reconstruct_track, reconstruct_tracks, Limiter, PiecewisePoly, ReconOptions,
    TrackReconstruction,
};
pub use trajdata::{parse_tracks, AxisSeries, TrackFormat, TrackSeries, TrackSet};
