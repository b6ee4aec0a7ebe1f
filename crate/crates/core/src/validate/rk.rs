use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RkScheme {
    /// Explicit midpoint rule.
    Rk2,
    /// Classical four-stage scheme.
    Rk4,
}

impl RkScheme {
    /// Scheme paired with a reconstruction degree: second order for linear
    /// linking, fourth order otherwise.
    pub fn for_degree(degree: usize) -> Self {
        if degree <= 1 {
            RkScheme::Rk2
        } else {
            RkScheme::Rk4
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            RkScheme::Rk2 => "RK2",
            RkScheme::Rk4 => "RK4",
        }
    }
}

fn axpy(x: &[f64], a: f64, k: &[f64]) -> Vec<f64> {
    x.iter().zip(k).map(|(x, k)| x + a * k).collect()
}

/// One step of `dx/dtau = -v(x, tau)` from `tau` to `tau + dtau`.
pub fn rk_step<F>(state: &[f64], tau: f64, dtau: f64, field: F, scheme: RkScheme) -> Vec<f64>
where
    F: Fn(&[f64], f64) -> Vec<f64>,
{
    let rhs = |x: &[f64], t: f64| -> Vec<f64> { field(x, t).into_iter().map(|v| -v).collect() };
    match scheme {
        RkScheme::Rk2 => {
            let k1 = rhs(state, tau);
            let k2 = rhs(&axpy(state, 0.5 * dtau, &k1), tau + 0.5 * dtau);
            axpy(state, dtau, &k2)
        }
        RkScheme::Rk4 => {
            let k1 = rhs(state, tau);
            let k2 = rhs(&axpy(state, 0.5 * dtau, &k1), tau + 0.5 * dtau);
            let k3 = rhs(&axpy(state, 0.5 * dtau, &k2), tau + 0.5 * dtau);
            let k4 = rhs(&axpy(state, dtau, &k3), tau + dtau);
            state
                .iter()
                .enumerate()
                .map(|(i, x)| x + dtau / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
                .collect()
        }
    }
}

/// States at `tau = 0, dtau, 2 dtau, ..., duration`; the last step is
/// shortened when `duration` is not a multiple of `dtau`.
pub fn integrate<F>(x0: &[f64], duration: f64, dtau: f64, field: F, scheme: RkScheme) -> (Vec<f64>, Vec<Vec<f64>>)
where
    F: Fn(&[f64], f64) -> Vec<f64>,
{
    assert!(dtau > 0.0 && duration >= 0.0);
    let mut taus = vec![0.0];
    let mut states = vec![x0.to_vec()];
    let full = (duration / dtau * (1.0 + 1e-12)).floor() as usize;
    let mut tau = 0.0;
    for k in 0..full {
        let x = rk_step(states.last().unwrap(), tau, dtau, &field, scheme);
        tau = (k + 1) as f64 * dtau;
        taus.push(tau);
        states.push(x);
    }
    let rest = duration - tau;
    if rest > 1e-12 * duration.max(dtau) {
        let x = rk_step(states.last().unwrap(), tau, rest, &field, scheme);
        taus.push(duration);
        states.push(x);
    } else if let Some(last) = taus.last_mut() {
        *last = duration;
    }
    (taus, states)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_field() {
        for s in [RkScheme::Rk2, RkScheme::Rk4] {
            assert_eq!(rk_step(&[1.0, 2.0], 0.0, 0.3, |_, _| vec![0.0, 0.0], s), vec![1.0, 2.0]);
        }
    }

    #[test]
    fn constant_field() {
        for s in [RkScheme::Rk2, RkScheme::Rk4] {
            let x = rk_step(&[1.0], 0.0, 0.5, |_, _| vec![2.0], s);
            assert!((x[0] - 0.0).abs() < 1e-15);
        }
    }

    #[test]
    fn rk4_exact_for_cubic_in_time() {
        let field = |_: &[f64], t: f64| vec![t];
        let (taus, xs) = integrate(&[0.0], 1.0, 0.25, field, RkScheme::Rk4);
        assert_eq!(taus.len(), 5);
        assert!((xs[4][0] + 0.5).abs() < 1e-12);
        let field = |_: &[f64], t: f64| vec![t * t * t - t];
        let (_, xs) = integrate(&[0.0], 1.0, 0.25, field, RkScheme::Rk4);
        assert!((xs[4][0] - (-0.25 + 0.5)).abs() < 1e-12);
    }

    #[test]
    fn orders_under_halving() {
        let field = |x: &[f64], t: f64| vec![(3.0 * t).cos() + 0.2 * x[0]];
        let reference = integrate(&[0.5], 2.0, 1e-4, field, RkScheme::Rk4).1.pop().unwrap()[0];
        for (s, min) in [(RkScheme::Rk2, 1.8), (RkScheme::Rk4, 3.5)] {
            let e = |h: f64| (integrate(&[0.5], 2.0, h, field, s).1.pop().unwrap()[0] - reference).abs();
            let ratio = (e(0.1) / e(0.05)).log2();
            assert!(ratio >= min, "{s:?}: {ratio}");
        }
    }

    #[test]
    fn shortened_last_step() {
        let (taus, xs) = integrate(&[0.0], 1.2, 0.5, |_, _| vec![1.0], RkScheme::Rk2);
        assert_eq!(taus, vec![0.0, 0.5, 1.0, 1.2]);
        assert!((xs[3][0] + 1.2).abs() < 1e-15);
    }
}
