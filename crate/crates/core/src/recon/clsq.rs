//! Constrained least squares for a single cell.
//!
//! Minimize `||M s - B||^2` subject to `C s = d`, where the rows of `M` are
//! the Taylor basis at the stencil's sample times and `C` pins the polynomial
//! to the samples at the cell's two interfaces. The KKT system
//!
//! ```text
//! [ 2 M^T M   -C^T ] [ s  ]   [ 2 M^T B ]
//! [   C        0   ] [ mu ] = [    d    ]
//! ```
//!
//! is solved directly by LU with partial pivoting. The basis columns are
//! first equilibrated (`s = D y` with `D` the inverse column norms of `M`):
//! the normalized Taylor columns can differ by many orders of magnitude on
//! wide, non-uniform stencils, and the unscaled block would look singular to
//! the pivot test.

use crate::dense::{Lu, Matrix, Singular};
use crate::mesh::StaggeredMesh;

use super::basis::{CellPoly, TaylorBasis};
use super::stencil::Stencil;

/// Assembled least-squares problem of one cell.
#[derive(Debug, Clone)]
pub struct ClsqSystem {
    pub basis: TaylorBasis,
    pub m: Matrix,
    pub b: Vec<f64>,
    pub c: Matrix,
    pub d: Vec<f64>,
}

impl ClsqSystem {
    pub fn solve(&self) -> Result<CellPoly, Singular> {
        let s = solve_clsq(&self.m, &self.b, &self.c, &self.d)?;
        Ok(CellPoly::new(self.basis, s))
    }
}

/// Basis of `cell` on `mesh` at the given degree.
pub fn cell_basis(mesh: &StaggeredMesh, cell: usize, degree: usize) -> TaylorBasis {
    TaylorBasis::new(degree, mesh.barycenters()[cell], mesh.widths()[cell])
}

/// Least-squares design matrix: one row per stencil sample.
pub fn design_matrix(times: &[f64], stencil: &Stencil, basis: &TaylorBasis) -> Matrix {
    let rows: Vec<Vec<f64>> = stencil.indices().map(|k| basis.values(times[k])).collect();
    Matrix::from_rows(&rows)
}

/// Constraint rows: the basis at the cell's left and right interfaces.
pub fn constraint_matrix(times: &[f64], cell: usize, basis: &TaylorBasis) -> Matrix {
    Matrix::from_rows(&[basis.values(times[cell]), basis.values(times[cell + 1])])
}

/// Builds `(M, B, C, d)` for `cell`. `values[k]` is the sample at interface `k`.
pub fn assemble_clsq(
    mesh: &StaggeredMesh,
    values: &[f64],
    cell: usize,
    stencil: &Stencil,
    degree: usize,
) -> ClsqSystem {
    let times = mesh.interfaces();
    let basis = cell_basis(mesh, cell, degree);
    ClsqSystem {
        basis,
        m: design_matrix(times, stencil, &basis),
        b: stencil.indices().map(|k| values[k]).collect(),
        c: constraint_matrix(times, cell, &basis),
        d: vec![values[cell], values[cell + 1]],
    }
}

fn kkt_matrix(m: &Matrix, c: &Matrix) -> Matrix {
    let n = m.cols();
    let p = c.rows();
    assert_eq!(c.cols(), n);
    let mtm = m.transpose().mul(m);
    Matrix::from_fn(n + p, n + p, |r, col| match (r < n, col < n) {
        (true, true) => 2.0 * mtm[(r, col)],
        (true, false) => -c[(col - n, r)],
        (false, true) => c[(r - n, col)],
        (false, false) => 0.0,
    })
}

/// Column scales `D` and the scaled `M D`, `C D`. The scales are powers of
/// two so that scaling itself is exact.
fn equilibrate(m: &Matrix, c: &Matrix) -> (Vec<f64>, Matrix, Matrix) {
    let scales: Vec<f64> = (0..m.cols())
        .map(|j| {
            let norm = (0..m.rows()).map(|r| m[(r, j)] * m[(r, j)]).sum::<f64>().sqrt();
            if norm > 0.0 && norm.is_finite() {
                (-norm.log2().round()).exp2()
            } else {
                1.0
            }
        })
        .collect();
    let ms = Matrix::from_fn(m.rows(), m.cols(), |r, j| m[(r, j)] * scales[j]);
    let cs = Matrix::from_fn(c.rows(), c.cols(), |r, j| c[(r, j)] * scales[j]);
    (scales, ms, cs)
}

/// Solves the equality-constrained least-squares problem through its KKT
/// system and returns the coefficient vector.
pub fn solve_clsq(m: &Matrix, b: &[f64], c: &Matrix, d: &[f64]) -> Result<Vec<f64>, Singular> {
    let n = m.cols();
    let (scales, ms, cs) = equilibrate(m, c);
    let lu = Lu::factor(kkt_matrix(&ms, &cs))?;
    let mut rhs: Vec<f64> = ms.transpose().mul_vec(b).into_iter().map(|x| 2.0 * x).collect();
    rhs.extend_from_slice(d);
    let sol = lu.solve(&rhs);
    Ok(sol[..n].iter().zip(&scales).map(|(y, s)| y * s).collect())
}

/// Linear map from the stencil samples to the cell's coefficients.
///
/// Since both right-hand sides of the KKT system are linear in the samples,
/// the coefficients are `R * values[stencil]` with `R` depending only on the
/// sample times. `R` is shared by every axis of a track.
#[derive(Debug, Clone)]
pub struct CellOperator {
    pub stencil: Stencil,
    pub basis: TaylorBasis,
    pub matrix: Matrix,
}

impl CellOperator {
    pub fn new(mesh: &StaggeredMesh, stencil: Stencil, degree: usize) -> Result<Self, Singular> {
        let times = mesh.interfaces();
        let cell = stencil.cell;
        let basis = cell_basis(mesh, cell, degree);
        let (scales, m, c) = equilibrate(
            &design_matrix(times, &stencil, &basis),
            &constraint_matrix(times, cell, &basis),
        );
        let n = degree + 1;
        let s = stencil.len();
        let lu = Lu::factor(kkt_matrix(&m, &c))?;
        let rhs = Matrix::from_fn(n + 2, s, |r, col| {
            if r < n {
                2.0 * m[(col, r)]
            } else {
                let k = if r == n { cell } else { cell + 1 };
                if stencil.row_of(k) == Some(col) {
                    1.0
                } else {
                    0.0
                }
            }
        });
        let full = lu.solve_matrix(&rhs);
        let matrix = Matrix::from_fn(n, s, |r, col| full[(r, col)] * scales[r]);
        Ok(Self {
            stencil,
            basis,
            matrix,
        })
    }

    pub fn apply(&self, values: &[f64]) -> CellPoly {
        let local = &values[self.stencil.first..=self.stencil.last];
        CellPoly::new(self.basis, self.matrix.mul_vec(local))
    }
}
