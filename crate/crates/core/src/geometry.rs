//! Arc length of reconstructed trajectories through isoparametric cell maps.
//!
//! Each cell is mapped to `xi in [0, 1]`. The reconstructed positions at the
//! equispaced nodes `xi_m = m / N_g` define a Lagrange interpolant of the
//! curve, whose Jacobian norm is integrated with Gauss–Legendre quadrature.

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::quadrature;
use crate::recon::PiecewisePoly;

/// Highest geometry degree with a tabulated nodal basis.
pub const MAX_GEOMETRY_DEGREE: usize = 3;

// Monomial coefficients (ascending powers of xi) of theta_m.
const THETA_1: [[f64; 4]; 2] = [[1.0, -1.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0]];
const THETA_2: [[f64; 4]; 3] = [
    [1.0, -3.0, 2.0, 0.0],
    [0.0, 4.0, -4.0, 0.0],
    [0.0, -1.0, 2.0, 0.0],
];
const THETA_3: [[f64; 4]; 4] = [
    [1.0, -5.5, 9.0, -4.5],
    [0.0, 9.0, -22.5, 13.5],
    [0.0, -4.5, 18.0, -13.5],
    [0.0, 1.0, -4.5, 4.5],
];

/// Lagrange basis on the nodes `m / N`, `m = 0..=N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodalBasis {
    degree: usize,
}

impl NodalBasis {
    pub fn new(degree: usize) -> Result<Self> {
        if (1..=MAX_GEOMETRY_DEGREE).contains(&degree) {
            Ok(Self { degree })
        } else {
            Err(Error::UnsupportedDegree(degree))
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..=self.degree).map(|m| m as f64 / self.degree as f64).collect()
    }

    fn table(&self) -> &'static [[f64; 4]] {
        match self.degree {
            1 => &THETA_1,
            2 => &THETA_2,
            _ => &THETA_3,
        }
    }

    /// `theta_m(xi)` for every node.
    pub fn values(&self, xi: f64) -> Vec<f64> {
        self.table()
            .iter()
            .map(|c| c[0] + xi * (c[1] + xi * (c[2] + xi * c[3])))
            .collect()
    }

    /// `d theta_m / d xi` for every node.
    pub fn derivatives(&self, xi: f64) -> Vec<f64> {
        self.table()
            .iter()
            .map(|c| c[1] + xi * (2.0 * c[2] + xi * 3.0 * c[3]))
            .collect()
    }
}

/// Derivatives of the nodal basis of degree `degree` at `xi`.
pub fn nodal_basis_derivatives(degree: usize, xi: f64) -> Result<Vec<f64>> {
    Ok(NodalBasis::new(degree)?.derivatives(xi))
}

/// Geometry degree used for a requested value: capped at
/// [`MAX_GEOMETRY_DEGREE`].
pub fn capped_degree(requested: usize) -> Result<usize> {
    if requested == 0 {
        return Err(Error::UnsupportedDegree(0));
    }
    Ok(requested.min(MAX_GEOMETRY_DEGREE))
}

/// Default geometry degree for a reconstruction of degree `degree`.
pub fn default_degree(degree: usize) -> usize {
    degree.clamp(1, MAX_GEOMETRY_DEGREE)
}

/// Nodal positions of one cell: `nodes[m][axis]`.
pub fn cell_nodes(axes: &[PiecewisePoly], cell: usize, basis: &NodalBasis) -> Vec<Vec<f64>> {
    let (a, b) = axes[0].mesh().cell_bounds(cell);
    basis
        .nodes()
        .iter()
        .map(|xi| {
            let t = a + xi * (b - a);
            axes.iter().map(|p| p.cell(cell).value(t)).collect()
        })
        .collect()
}

/// Arc length of one cell with geometry degree `geom_degree` (capped at 3).
pub fn cell_length(axes: &[PiecewisePoly], cell: usize, geom_degree: usize) -> Result<f64> {
    let basis = NodalBasis::new(capped_degree(geom_degree)?)?;
    Ok(cell_length_with(axes, cell, &basis))
}

fn cell_length_with(axes: &[PiecewisePoly], cell: usize, basis: &NodalBasis) -> f64 {
    let nodes = cell_nodes(axes, cell, basis);
    let points = (basis.degree() + 1).max(3);
    quadrature::integrate(points, 0.0, 1.0, |xi| {
        let dtheta = basis.derivatives(xi);
        (0..axes.len())
            .map(|ax| {
                let ds: f64 = dtheta.iter().zip(&nodes).map(|(d, s)| d * s[ax]).sum();
                ds * ds
            })
            .sum::<f64>()
            .sqrt()
    })
}

/// Per-cell arc lengths in cell order.
pub fn cell_lengths(axes: &[PiecewisePoly], geom_degree: usize, execution: Execution) -> Result<Vec<f64>> {
    assert!(!axes.is_empty(), "at least one axis is required");
    let basis = NodalBasis::new(capped_degree(geom_degree)?)?;
    let n = axes[0].num_cells();
    debug_assert!(axes.iter().all(|p| p.num_cells() == n));
    Ok(exec::map_indexed(execution, n, |i| cell_length_with(axes, i, &basis)))
}

/// Total arc length; cell contributions are summed in cell order.
pub fn trajectory_length(axes: &[PiecewisePoly], geom_degree: usize, execution: Execution) -> Result<f64> {
    Ok(cell_lengths(axes, geom_degree, execution)?.iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lagrange(nodes: &[f64], m: usize, x: f64) -> f64 {
        nodes
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != m)
            .map(|(_, &xk)| (x - xk) / (nodes[m] - xk))
            .product()
    }

    #[test]
    fn tables_match_lagrange_polynomials() {
        for n in 1..=3 {
            let b = NodalBasis::new(n).unwrap();
            let nodes = b.nodes();
            for k in 0..=20 {
                let x = k as f64 / 20.0;
                let v = b.values(x);
                for m in 0..=n {
                    assert!((v[m] - lagrange(&nodes, m, x)).abs() < 1e-13);
                }
                let h = 1e-6;
                let d = b.derivatives(x);
                for m in 0..=n {
                    let fd = (lagrange(&nodes, m, x + h) - lagrange(&nodes, m, x - h)) / (2.0 * h);
                    assert!((d[m] - fd).abs() < 1e-7);
                }
            }
        }
    }

    #[test]
    fn kronecker_and_partition_of_unity() {
        for n in 1..=3 {
            let b = NodalBasis::new(n).unwrap();
            for (m, &xi) in b.nodes().iter().enumerate() {
                let v = b.values(xi);
                for (q, &x) in v.iter().enumerate() {
                    assert!((x - if q == m { 1.0 } else { 0.0 }).abs() < 1e-14);
                }
            }
            for k in 0..20 {
                let xi = (k as f64 * 0.37).fract();
                assert!((b.values(xi).iter().sum::<f64>() - 1.0).abs() < 1e-14);
                assert!(b.derivatives(xi).iter().sum::<f64>().abs() < 1e-13);
            }
        }
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(nodal_basis_derivatives(1, 0.3).unwrap(), vec![-1.0, 1.0]);
        assert_eq!(nodal_basis_derivatives(2, 0.0).unwrap(), vec![-3.0, 4.0, -1.0]);
        assert!(matches!(nodal_basis_derivatives(4, 0.0), Err(Error::UnsupportedDegree(4))));
        assert_eq!(capped_degree(7).unwrap(), 3);
    }
}
