//! Central WENO limiting of a reconstructed axis.
//!
//! Each cell blends the optimal degree-N polynomial with two linear
//! candidates (left neighbor chord and own chord) using smoothness-dependent
//! weights, so that the result stays close to the optimal polynomial on
//! smooth data and falls back to a chord across jumps.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::mesh::StaggeredMesh;
use crate::quadrature;
use crate::recon::{cell_basis, CellPoly, PiecewisePoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CwenoConfig {
    /// Linear weight of the central candidate; the two linear candidates
    /// share the remainder equally.
    pub lambda_central: f64,
    pub epsilon: f64,
    pub exponent: i32,
}

impl Default for CwenoConfig {
    fn default() -> Self {
        Self {
            lambda_central: 200.0 / 202.0,
            epsilon: 1e-14,
            exponent: 4,
        }
    }
}

impl CwenoConfig {
    pub fn with_lambda_central(mut self, lambda: f64) -> Result<Self> {
        self.lambda_central = lambda;
        self.validate()?;
        Ok(self)
    }

    pub fn lambda_side(&self) -> f64 {
        0.5 * (1.0 - self.lambda_central)
    }

    /// `[lambda_0, lambda_1, lambda_2]` for (central, left, right).
    pub fn linear_weights(&self) -> [f64; 3] {
        let s = self.lambda_side();
        [self.lambda_central, s, s]
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda_central > 0.0 && self.lambda_central < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "central weight must lie in (0, 1), got {}",
                self.lambda_central
            )));
        }
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::InvalidConfig(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if self.exponent < 1 {
            return Err(Error::InvalidConfig(format!("exponent must be >= 1, got {}", self.exponent)));
        }
        Ok(())
    }
}

/// Linear candidate of `cell`, expressed in the cell's basis at `degree`
/// (higher coefficients zero). `Left` is the chord through samples
/// `cell-1` and `cell`; `Right` is the cell's own chord through `cell` and
/// `cell+1`.
pub fn one_sided_p1(mesh: &StaggeredMesh, values: &[f64], cell: usize, side: Side, degree: usize) -> Result<CellPoly> {
    let times = mesh.interfaces();
    let (a, b) = match side {
        Side::Left if cell == 0 => return Err(Error::MissingNeighbor { cell, side }),
        Side::Left => (cell - 1, cell),
        Side::Right => (cell, cell + 1),
    };
    let slope = (values[b] - values[a]) / (times[b] - times[a]);
    let basis = cell_basis(mesh, cell, degree.max(1));
    let mut coeffs = vec![0.0; basis.degree + 1];
    coeffs[0] = values[a] + slope * (basis.center - times[a]);
    coeffs[1] = slope * basis.width;
    Ok(CellPoly::new(basis, coeffs))
}

/// Central candidate `(p_opt - l1 p_left - l2 p_right) / l0`, chosen so that
/// the linear-weight blend returns `p_opt` exactly.
pub fn central_poly(optimal: &CellPoly, left: &CellPoly, right: &CellPoly, cfg: &CwenoConfig) -> CellPoly {
    let [l0, l1, l2] = cfg.linear_weights();
    CellPoly::combine(&[1.0 / l0, -l1 / l0, -l2 / l0], &[optimal, left, right])
}

/// Smoothness indicator `sum_{a=1..N} int_cell (d^a p / dt^a)^2 dt`.
pub fn oscillation_indicator(poly: &CellPoly, bounds: (f64, f64)) -> f64 {
    let n = poly.degree();
    let points = (n + 1).min(quadrature::MAX_POINTS);
    (1..=n)
        .map(|q| quadrature::integrate(points, bounds.0, bounds.1, |t| poly.derivative(t, q).powi(2)))
        .sum()
}

/// Normalized nonlinear weights from the linear weights and indicators.
pub fn nonlinear_weights(sigmas: [f64; 3], cfg: &CwenoConfig) -> [f64; 3] {
    let lambdas = cfg.linear_weights();
    let smin = sigmas.iter().cloned().fold(f64::INFINITY, f64::min);
    // lambda / (sigma + eps)^r rescaled by (sigma_min + eps)^r to avoid overflow
    let raw: Vec<f64> = sigmas
        .iter()
        .zip(lambdas)
        .map(|(s, l)| l * ((smin + cfg.epsilon) / (s + cfg.epsilon)).powi(cfg.exponent))
        .collect();
    let total: f64 = raw.iter().sum();
    [raw[0] / total, raw[1] / total, raw[2] / total]
}

/// Limited polynomial of one cell and the weights that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Blended {
    pub poly: CellPoly,
    pub weights: [f64; 3],
    pub sigmas: [f64; 3],
}

/// Blends `(central, left, right)` with nonlinear weights.
pub fn blend(central: &CellPoly, left: &CellPoly, right: &CellPoly, bounds: (f64, f64), cfg: &CwenoConfig) -> Blended {
    let sigmas = [
        oscillation_indicator(central, bounds),
        oscillation_indicator(left, bounds),
        oscillation_indicator(right, bounds),
    ];
    let weights = nonlinear_weights(sigmas, cfg);
    Blended {
        poly: CellPoly::combine(&weights, &[central, left, right]),
        weights,
        sigmas,
    }
}

/// Limits one cell of `optimal`. The first cell has no left neighbor and
/// uses its own chord for both linear candidates.
pub fn limit_cell(optimal: &PiecewisePoly, values: &[f64], cell: usize, cfg: &CwenoConfig) -> Blended {
    let mesh = optimal.mesh();
    let p = optimal.cell(cell);
    let degree = p.degree();
    let right = one_sided_p1(mesh, values, cell, Side::Right, degree).expect("right chord always exists");
    let left = one_sided_p1(mesh, values, cell, Side::Left, degree).unwrap_or_else(|_| right.clone());
    let central = central_poly(p, &left, &right, cfg);
    let mut out = blend(&central, &left, &right, mesh.cell_bounds(cell), cfg);
    out.poly.coeffs.truncate(degree + 1);
    out
}

/// Limited reconstruction and per-cell weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Limited {
    pub poly: PiecewisePoly,
    pub weights: Vec<[f64; 3]>,
}

/// Applies the limiter to every cell of `optimal`. `values` are the samples
/// at the mesh interfaces.
pub fn limit(optimal: &PiecewisePoly, values: &[f64], cfg: &CwenoConfig, execution: Execution) -> Result<Limited> {
    cfg.validate()?;
    assert_eq!(values.len(), optimal.mesh().num_interfaces());
    let blended = exec::map_indexed(execution, optimal.num_cells(), |i| limit_cell(optimal, values, i, cfg));
    let weights = blended.iter().map(|b| b.weights).collect();
    let cells = blended.into_iter().map(|b| b.poly).collect();
    Ok(Limited {
        poly: PiecewisePoly::new(optimal.mesh().clone(), cells),
        weights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recon::{reconstruct_axis, ReconOptions, TaylorBasis};
    use crate::trajdata::AxisSeries;

    #[test]
    fn equal_indicators_give_linear_weights() {
        let cfg = CwenoConfig::default();
        let w = nonlinear_weights([0.3, 0.3, 0.3], &cfg);
        for (a, b) in w.iter().zip(cfg.linear_weights()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn weights_survive_extreme_indicators() {
        let w = nonlinear_weights([1e300, 0.0, 1e-300], &CwenoConfig::default());
        assert!(w.iter().all(|x| x.is_finite() && *x >= 0.0));
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert!(w[0] < 1e-100);
    }

    #[test]
    fn linear_weight_blend_recovers_optimal() {
        let basis = TaylorBasis::new(3, 0.5, 1.0);
        let opt = CellPoly::new(basis, vec![0.3, 1.0, -0.4, 0.2]);
        let left = CellPoly::new(basis, vec![0.1, 0.9, 0.0, 0.0]);
        let right = CellPoly::new(basis, vec![0.35, 1.1, 0.0, 0.0]);
        let cfg = CwenoConfig::default();
        let c = central_poly(&opt, &left, &right, &cfg);
        let back = CellPoly::combine(&cfg.linear_weights(), &[&c, &left, &right]);
        for (a, b) in back.coeffs.iter().zip(&opt.coeffs) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn indicator_of_line_is_slope_squared_times_width() {
        let p = CellPoly::new(TaylorBasis::new(1, 1.0, 2.0), vec![0.0, 3.0]);
        // slope = 1.5 over width 2
        assert!((oscillation_indicator(&p, (0.0, 2.0)) - 4.5).abs() < 1e-14);
    }

    #[test]
    fn missing_left_neighbor() {
        let mesh = StaggeredMesh::new(&[0.0, 1.0, 2.0]).unwrap();
        assert!(matches!(
            one_sided_p1(&mesh, &[0.0, 1.0, 2.0], 0, Side::Left, 1),
            Err(Error::MissingNeighbor { cell: 0, side: Side::Left })
        ));
    }

    #[test]
    fn step_is_not_overshot() {
        let times: Vec<f64> = (0..40).map(|k| k as f64 / 39.0).collect();
        let s = AxisSeries::sample(times.clone(), |t| if t < 0.5 { 0.0 } else { 1.0 }).unwrap();
        let p = reconstruct_axis(&s, &ReconOptions::default()).unwrap();
        let mut worst: f64 = 0.0;
        for k in 0..2000 {
            let t = k as f64 / 1999.0;
            let v = p.value(t).unwrap();
            worst = worst.max(-v).max(v - 1.0);
        }
        assert!(worst < 0.05, "overshoot {worst}");
    }
}
