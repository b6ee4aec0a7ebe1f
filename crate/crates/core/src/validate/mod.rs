//! Error norms, synthetic trajectories, convergence and comparison studies,
//! and backward Runge–Kutta consistency checks.

mod backtrace;
pub mod cases;
pub mod checks;
mod compare;
mod convergence;
mod norms;
pub mod reference;
mod rk;

pub use backtrace::{backtrace, backtrace_polys, BacktraceResult, Reference, REFERENCE_DEGREE};
pub use cases::{linspace, CaseKind, SyntheticCase};
pub use compare::{compare_spt, ComparisonRow, Method, COMPARE_QUAD_POINTS};
pub use convergence::{empirical_order, measure, run_convergence, ConvergenceRow, StudyOptions};
pub use norms::{error_norms, ErrorNorms, NORM_NAMES};
pub use rk::{integrate, rk_step, RkScheme};
