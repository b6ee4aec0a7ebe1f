use serde::{Deserialize, Serialize};

/// Normalized Taylor basis of one cell:
/// `phi_l(t) = (t - center)^l / (l! * width^l)`, `l = 0..=degree`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TaylorBasis {
    pub degree: usize,
    pub center: f64,
    pub width: f64,
}

impl TaylorBasis {
    pub fn new(degree: usize, center: f64, width: f64) -> Self {
        debug_assert!(width > 0.0);
        Self {
            degree,
            center,
            width,
        }
    }

    /// Local coordinate `(t - center) / width`.
    #[inline]
    pub fn local(&self, t: f64) -> f64 {
        (t - self.center) / self.width
    }

    /// `[phi_0(t), ..., phi_N(t)]`.
    pub fn values(&self, t: f64) -> Vec<f64> {
        self.derivative_values(t, 0)
    }

    /// `q`-th time derivative of every basis function at `t`.
    pub fn derivative_values(&self, t: f64, q: usize) -> Vec<f64> {
        let xi = self.local(t);
        let scale = self.width.powi(-(q as i32));
        let mut out = vec![0.0; self.degree + 1];
        // d^q phi_l = xi^(l-q) / (l-q)! / width^q for l >= q
        let mut term = scale;
        for (l, v) in out.iter_mut().enumerate().skip(q) {
            if l > q {
                term *= xi / (l - q) as f64;
            }
            *v = term;
        }
        out
    }
}

/// One cell's polynomial in its normalized Taylor basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellPoly {
    pub center: f64,
    pub width: f64,
    pub coeffs: Vec<f64>,
}

impl CellPoly {
    pub fn new(basis: TaylorBasis, coeffs: Vec<f64>) -> Self {
        debug_assert_eq!(coeffs.len(), basis.degree + 1);
        Self {
            center: basis.center,
            width: basis.width,
            coeffs,
        }
    }

    pub fn zero(basis: TaylorBasis) -> Self {
        Self::new(basis, vec![0.0; basis.degree + 1])
    }

    pub fn basis(&self) -> TaylorBasis {
        TaylorBasis::new(self.degree(), self.center, self.width)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Value at `t`; `coeffs[0]` is the value at the barycenter.
    pub fn value(&self, t: f64) -> f64 {
        self.derivative(t, 0)
    }

    /// `q`-th time derivative at `t`.
    pub fn derivative(&self, t: f64, q: usize) -> f64 {
        if q > self.degree() {
            return 0.0;
        }
        let xi = (t - self.center) / self.width;
        // Horner on sum_l c_l xi^(l-q) / (l-q)!
        let n = self.degree();
        let mut acc = self.coeffs[n];
        for l in (q..n).rev() {
            acc = self.coeffs[l] + acc * xi / (l + 1 - q) as f64;
        }
        acc / self.width.powi(q as i32)
    }

    /// Position, velocity and acceleration at `t`.
    pub fn kinematics(&self, t: f64) -> (f64, f64, f64) {
        (self.derivative(t, 0), self.derivative(t, 1), self.derivative(t, 2))
    }

    /// Coefficients of the `q`-th derivative in the same basis (padded with
    /// zeros to the same length).
    pub fn derivative_poly(&self, q: usize) -> CellPoly {
        let scale = self.width.powi(-(q as i32));
        let coeffs = (0..self.coeffs.len())
            .map(|l| self.coeffs.get(l + q).map_or(0.0, |c| c * scale))
            .collect();
        CellPoly {
            center: self.center,
            width: self.width,
            coeffs,
        }
    }

    /// `sum_k weights[k] * polys[k]`, coefficient-wise. All polynomials must
    /// share the basis; shorter coefficient vectors are zero-extended.
    pub fn combine(weights: &[f64], polys: &[&CellPoly]) -> CellPoly {
        assert_eq!(weights.len(), polys.len());
        let len = polys.iter().map(|p| p.coeffs.len()).max().unwrap_or(1);
        let mut coeffs = vec![0.0; len];
        for (w, p) in weights.iter().zip(polys) {
            for (c, v) in coeffs.iter_mut().zip(&p.coeffs) {
                *c += w * v;
            }
        }
        CellPoly {
            center: polys[0].center,
            width: polys[0].width,
            coeffs,
        }
    }

    /// Zero-extends the coefficients to `degree`.
    pub fn embedded(mut self, degree: usize) -> CellPoly {
        if self.coeffs.len() < degree + 1 {
            self.coeffs.resize(degree + 1, 0.0);
        }
        self
    }
}
