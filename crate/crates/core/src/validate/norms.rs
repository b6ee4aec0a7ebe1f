use serde::Serialize;

use crate::mesh::StaggeredMesh;
use crate::quadrature;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct ErrorNorms {
    pub l1: f64,
    pub l2: f64,
    pub linf: f64,
}

impl ErrorNorms {
    pub fn as_array(&self) -> [f64; 3] {
        [self.l1, self.l2, self.linf]
    }

    /// Norms of a sampled error with the composite trapezoidal rule for the
    /// integral norms and the sample maximum for `linf`.
    pub fn from_samples(times: &[f64], errors: &[f64]) -> Self {
        assert_eq!(times.len(), errors.len());
        let mut out = ErrorNorms::default();
        let mut sq = 0.0;
        for k in 0..times.len() {
            out.linf = out.linf.max(errors[k].abs());
            if k > 0 {
                let h = times[k] - times[k - 1];
                let (a, b) = (errors[k - 1].abs(), errors[k].abs());
                out.l1 += 0.5 * h * (a + b);
                sq += 0.5 * h * (a * a + b * b);
            }
        }
        out.l2 = sq.sqrt();
        out
    }
}

pub const NORM_NAMES: [&str; 3] = ["L1", "L2", "Linf"];

/// Error norms of `candidate - reference` over `window`, integrated cell by
/// cell with `points` Gauss nodes on each part of a cell inside the window.
/// `linf` is the maximum over those nodes and the cell interfaces in the
/// window.
pub fn error_norms(
    reference: impl Fn(f64) -> f64,
    candidate: impl Fn(f64) -> f64,
    window: (f64, f64),
    points: usize,
    mesh: &StaggeredMesh,
) -> ErrorNorms {
    let mut l1 = 0.0;
    let mut sq = 0.0;
    let mut linf: f64 = 0.0;
    for i in 0..mesh.num_cells() {
        let (a, b) = mesh.cell_bounds(i);
        let (a, b) = (a.max(window.0), b.min(window.1));
        if a >= b {
            continue;
        }
        for t in [a, b] {
            linf = linf.max((candidate(t) - reference(t)).abs());
        }
        for (t, w) in quadrature::mapped(points, a, b) {
            let e = (candidate(t) - reference(t)).abs();
            l1 += w * e;
            sq += w * e * e;
            linf = linf.max(e);
        }
    }
    ErrorNorms {
        l1,
        l2: sq.sqrt(),
        linf,
    }
}
