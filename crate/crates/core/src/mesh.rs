//! Staggered time mesh: sample times are cell interfaces, unknowns live at
//! cell barycenters.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StaggeredMesh {
    interfaces: Vec<f64>,
    widths: Vec<f64>,
    barycenters: Vec<f64>,
}

impl StaggeredMesh {
    /// Builds the mesh whose interfaces are exactly `times`.
    pub fn new(times: &[f64]) -> Result<Self> {
        if times.len() < 2 {
            return Err(Error::TooShort(times.len()));
        }
        if let Some(i) = times.iter().position(|t| !t.is_finite()) {
            return Err(Error::NonMonotoneTimes { index: i });
        }
        let mut widths = Vec::with_capacity(times.len() - 1);
        let mut barycenters = Vec::with_capacity(times.len() - 1);
        for (i, w) in times.windows(2).enumerate() {
            let dt = w[1] - w[0];
            if dt <= 0.0 {
                return Err(Error::NonMonotoneTimes { index: i + 1 });
            }
            widths.push(dt);
            barycenters.push(0.5 * (w[0] + w[1]));
        }
        Ok(Self {
            interfaces: times.to_vec(),
            widths,
            barycenters,
        })
    }

    /// Equidistant mesh with `cells` cells on `[a, b]`, endpoints included.
    pub fn uniform(a: f64, b: f64, cells: usize) -> Result<Self> {
        if cells == 0 {
            return Err(Error::TooShort(1));
        }
        let h = (b - a) / cells as f64;
        let mut times: Vec<f64> = (0..=cells).map(|k| a + h * k as f64).collect();
        times[cells] = b;
        Self::new(&times)
    }

    pub fn interfaces(&self) -> &[f64] {
        &self.interfaces
    }

    pub fn widths(&self) -> &[f64] {
        &self.widths
    }

    pub fn barycenters(&self) -> &[f64] {
        &self.barycenters
    }

    pub fn num_cells(&self) -> usize {
        self.widths.len()
    }

    pub fn num_interfaces(&self) -> usize {
        self.interfaces.len()
    }

    pub fn start(&self) -> f64 {
        self.interfaces[0]
    }

    pub fn end(&self) -> f64 {
        self.interfaces[self.interfaces.len() - 1]
    }

    /// `(left interface, right interface)` of cell `i`.
    pub fn cell_bounds(&self, i: usize) -> (f64, f64) {
        (self.interfaces[i], self.interfaces[i + 1])
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.start() && t <= self.end()
    }

    /// Index of the cell containing `t`; an interior interface belongs to the
    /// cell on its left.
    pub fn locate_cell(&self, t: f64) -> Result<usize> {
        if !self.contains(t) {
            return Err(Error::OutOfDomain {
                t,
                start: self.start(),
                end: self.end(),
            });
        }
        Ok(self.locate_clamped(t))
    }

    /// Like [`locate_cell`](Self::locate_cell) but maps times outside the
    /// mesh to the first or last cell.
    pub fn locate_clamped(&self, t: f64) -> usize {
        // first interface >= t, minus one, is the left-tie-break cell
        let k = self.interfaces.partition_point(|&x| x < t);
        k.saturating_sub(1).min(self.num_cells() - 1)
    }
}

/// Free-function form of [`StaggeredMesh::new`].
pub fn build_mesh(times: &[f64]) -> Result<StaggeredMesh> {
    StaggeredMesh::new(times)
}
