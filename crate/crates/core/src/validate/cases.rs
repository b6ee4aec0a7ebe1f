use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::trajdata::TrackSeries;

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseKind {
    /// Smooth 3D curve on `[-1, 1]` used for convergence studies.
    Conv3d,
    /// 2D curve on `[0, 2]` with a steep `tanh` velocity front in x and an
    /// oscillating y.
    TanhCos2d,
    Custom,
}

/// Analytic trajectory with exact velocity, per axis.
#[derive(Clone)]
pub struct SyntheticCase {
    pub name: String,
    pub kind: CaseKind,
    pub domain: (f64, f64),
    position: Vec<ScalarFn>,
    velocity: Vec<ScalarFn>,
}

impl fmt::Debug for SyntheticCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SyntheticCase")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .field("domain", &self.domain)
            .field("dim", &self.dim())
            .finish()
    }
}

impl SyntheticCase {
    pub fn conv3d() -> Self {
        let position: Vec<ScalarFn> = vec![
            Arc::new(|t| (PI * t).sin() * (2.0 * PI * t).cos()),
            Arc::new(|t| 3.0 * (2.0 * PI * t).cos() - 2.0 * (PI * t).sin()),
            Arc::new(|t| -6.0 * (PI * t).sin() + 2.0 * (3.0 * PI * t).cos()),
        ];
        let velocity: Vec<ScalarFn> = vec![
            Arc::new(|t| PI * (PI * t).cos() * (2.0 * PI * t).cos() - 2.0 * PI * (PI * t).sin() * (2.0 * PI * t).sin()),
            Arc::new(|t| -6.0 * PI * (2.0 * PI * t).sin() - 2.0 * PI * (PI * t).cos()),
            Arc::new(|t| -6.0 * PI * (PI * t).cos() - 6.0 * PI * (3.0 * PI * t).sin()),
        ];
        Self {
            name: "conv3d".into(),
            kind: CaseKind::Conv3d,
            domain: (-1.0, 1.0),
            position,
            velocity,
        }
    }

    pub fn tanhcos2d() -> Self {
        // x = 2t - ln(1 + tanh(5(t-1))) / 5, written without cancellation:
        // 1 + tanh(u) = 2 / (1 + exp(-2u))
        let position: Vec<ScalarFn> = vec![
            Arc::new(|t| 2.0 * t - (LN_2 - (-10.0 * (t - 1.0)).exp().ln_1p()) / 5.0),
            Arc::new(|t| (2.0 * PI * t).sin()),
        ];
        let velocity: Vec<ScalarFn> = vec![
            Arc::new(|t| 1.0 + (5.0 * (t - 1.0)).tanh()),
            Arc::new(|t| 2.0 * PI * (2.0 * PI * t).cos()),
        ];
        Self {
            name: "tanhcos2d".into(),
            kind: CaseKind::TanhCos2d,
            domain: (0.0, 2.0),
            position,
            velocity,
        }
    }

    /// User-supplied case; `velocity[k]` must be the derivative of
    /// `position[k]`.
    pub fn custom(name: impl Into<String>, domain: (f64, f64), position: Vec<ScalarFn>, velocity: Vec<ScalarFn>) -> Result<Self> {
        if position.is_empty() || position.len() > 3 || position.len() != velocity.len() {
            return Err(Error::InvalidConfig("a case needs 1 to 3 axes with matching velocities".into()));
        }
        if !(domain.0 < domain.1) {
            return Err(Error::InvalidConfig(format!("empty domain [{}, {}]", domain.0, domain.1)));
        }
        Ok(Self {
            name: name.into(),
            kind: CaseKind::Custom,
            domain,
            position,
            velocity,
        })
    }

    /// Polynomial trajectory; `coeffs[axis]` are monomial coefficients in
    /// ascending order.
    pub fn polynomial(name: impl Into<String>, domain: (f64, f64), coeffs: Vec<Vec<f64>>) -> Result<Self> {
        let mut position: Vec<ScalarFn> = Vec::new();
        let mut velocity: Vec<ScalarFn> = Vec::new();
        for c in coeffs {
            let d: Vec<f64> = c.iter().enumerate().skip(1).map(|(k, a)| k as f64 * a).collect();
            position.push(Arc::new(move |t| horner(&c, t)));
            velocity.push(Arc::new(move |t| horner(&d, t)));
        }
        Self::custom(name, domain, position, velocity)
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "conv3d" => Ok(Self::conv3d()),
            "tanhcos2d" => Ok(Self::tanhcos2d()),
            other => Err(Error::InvalidConfig(format!("unknown synthetic case `{other}`"))),
        }
    }

    pub fn dim(&self) -> usize {
        self.position.len()
    }

    pub fn position_fn(&self, axis: usize) -> &ScalarFn {
        &self.position[axis]
    }

    pub fn velocity_fn(&self, axis: usize) -> &ScalarFn {
        &self.velocity[axis]
    }

    pub fn position(&self, t: f64) -> Vec<f64> {
        self.position.iter().map(|f| f(t)).collect()
    }

    pub fn velocity(&self, t: f64) -> Vec<f64> {
        self.velocity.iter().map(|f| f(t)).collect()
    }

    /// `points` equispaced sample times including both ends.
    pub fn sample_times(&self, points: usize) -> Vec<f64> {
        linspace(self.domain.0, self.domain.1, points)
    }

    /// Track sampled at `points` equispaced times including both ends.
    pub fn sample(&self, points: usize) -> Result<TrackSeries> {
        let times = self.sample_times(points);
        let coords = times.iter().map(|&t| self.position(t)).collect();
        TrackSeries::new(self.name.clone(), times, coords)
    }
}

fn horner(c: &[f64], t: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, a| acc * t + a)
}

/// `n` equispaced values from `a` to `b` inclusive; the last one is exactly `b`.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => {
            let step = (b - a) / (n - 1) as f64;
            let mut v: Vec<f64> = (0..n).map(|k| a + k as f64 * step).collect();
            v[n - 1] = b;
            v
        }
    }
}
