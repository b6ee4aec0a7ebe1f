//! Pass/fail gates for the validation studies.

use serde::Serialize;

use super::backtrace::BacktraceResult;
use super::compare::{ComparisonRow, Method};
use super::convergence::ConvergenceRow;
use super::norms::NORM_NAMES;
use super::reference;

/// Relative tolerance on reference errors.
pub const TABLE_REL_TOL: f64 = 0.05;
/// Allowed deviation of an empirical order.
pub const ORDER_TOL: f64 = 0.25;
/// Required ratio of linear to cubic velocity L2 error.
pub const VELOCITY_GAIN: f64 = 10.0;

pub const CONVERGENCE_DEGREES: [usize; 5] = [1, 2, 3, 4, 5];
pub const COMPARE_POINTS: [usize; 3] = [21, 41, 81];
pub const BACKTRACE_POINTS: usize = 41;
pub const BACKTRACE_DTAU: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: impl Into<String>, failures: Vec<String>, checked: usize) -> Self {
        let passed = failures.is_empty() && checked > 0;
        let detail = if checked == 0 {
            "nothing to check".to_string()
        } else if passed {
            format!("{checked} values within tolerance")
        } else {
            let mut d = format!("{} of {checked} values out of tolerance: ", failures.len());
            d.push_str(&failures.iter().take(6).cloned().collect::<Vec<_>>().join("; "));
            if failures.len() > 6 {
                d.push_str("; ...");
            }
            d
        };
        Self {
            name: name.into(),
            passed,
            detail,
        }
    }
}

const AXES: [&str; 3] = ["x", "y", "z"];

/// Reference-table agreement and empirical orders of a `conv3d` study.
///
/// L1 and L2 orders on the two finest meshes must lie within
/// [`ORDER_TOL`] of `N+1`. The published L-infinity orders themselves stray
/// from `N+1` by more than that at high degree, so those are held to the
/// published values instead.
pub fn check_convergence(rows: &[ConvergenceRow]) -> Vec<CheckOutcome> {
    let mut table_fail = Vec::new();
    let mut table_n = 0;
    let mut order_fail = Vec::new();
    let mut order_n = 0;
    let finest = &reference::POINTS[2..];
    for row in rows {
        let n = row.degree;
        if let Some(expected) = reference::errors(n, row.points) {
            for (a, (got, want)) in row.errors.iter().zip(expected).enumerate() {
                for (k, (g, w)) in got.as_array().iter().zip(want).enumerate() {
                    table_n += 1;
                    let rel = (g / w - 1.0).abs();
                    if rel > TABLE_REL_TOL {
                        table_fail.push(format!(
                            "N={n} pts={} {} {}: {g:.3e} vs {w:.2e}",
                            row.points, AXES[a], NORM_NAMES[k]
                        ));
                    }
                }
            }
        }
        if !finest.contains(&row.points) || reference::errors(n, row.points).is_none() {
            continue;
        }
        let (Some(orders), Some(printed)) = (&row.orders, reference::orders(n, row.points)) else {
            continue;
        };
        for (a, o) in orders.iter().enumerate() {
            for k in 0..3 {
                order_n += 1;
                let target = if k < 2 { (n + 1) as f64 } else { printed[a][k] };
                if (o[k] - target).abs() > ORDER_TOL {
                    order_fail.push(format!(
                        "N={n} pts={} {} {}: order {:.2} vs {target:.2}",
                        row.points, AXES[a], NORM_NAMES[k], o[k]
                    ));
                }
            }
        }
    }
    vec![
        CheckOutcome::new("convergence errors", table_fail, table_n),
        CheckOutcome::new("convergence orders", order_fail, order_n),
    ]
}

fn find(rows: &[ComparisonRow], m: Method, points: usize, axis: usize) -> Option<&ComparisonRow> {
    rows.iter().find(|r| r.method == m && r.points == points && r.axis == axis)
}

/// Cubic-over-linear velocity gain and monotone refinement of a comparison.
pub fn check_comparison(rows: &[ComparisonRow]) -> Vec<CheckOutcome> {
    let mut points: Vec<usize> = rows.iter().map(|r| r.points).collect();
    points.sort_unstable();
    points.dedup();
    let dim = rows.iter().map(|r| r.axis + 1).max().unwrap_or(0);

    let mut gain_fail = Vec::new();
    let mut gain_n = 0;
    for &p in &points {
        for a in 0..dim {
            if let (Some(lin), Some(cub)) = (find(rows, Method::Linear, p, a), find(rows, Method::Cubic, p, a)) {
                gain_n += 1;
                let ratio = lin.velocity.l2 / cub.velocity.l2;
                if !(ratio >= VELOCITY_GAIN) {
                    gain_fail.push(format!("pts={p} {}: ratio {ratio:.2}", AXES[a]));
                }
            }
        }
    }

    let mut mono_fail = Vec::new();
    let mut mono_n = 0;
    for m in Method::ALL {
        for a in 0..dim {
            for w in points.windows(2) {
                let (Some(c), Some(f)) = (find(rows, m, w[0], a), find(rows, m, w[1], a)) else {
                    continue;
                };
                for (what, coarse, fine) in [
                    ("position", c.position.as_array(), f.position.as_array()),
                    ("velocity", c.velocity.as_array(), f.velocity.as_array()),
                ] {
                    for k in 0..3 {
                        mono_n += 1;
                        if !(fine[k] < coarse[k]) {
                            mono_fail.push(format!(
                                "{} {} {what} {} pts {}->{}: {:.3e} -> {:.3e}",
                                m.label(),
                                AXES[a],
                                NORM_NAMES[k],
                                w[0],
                                w[1],
                                coarse[k],
                                fine[k]
                            ));
                        }
                    }
                }
            }
        }
    }
    vec![
        CheckOutcome::new("velocity gain", gain_fail, gain_n),
        CheckOutcome::new("monotone refinement", mono_fail, mono_n),
    ]
}

/// The cubic backtrace must deviate strictly less than the linear one in
/// every norm on every axis.
pub fn check_backtrace(linear: &BacktraceResult, cubic: &BacktraceResult) -> CheckOutcome {
    let mut fail = Vec::new();
    let mut n = 0;
    for (a, (l, c)) in linear.norms.iter().zip(&cubic.norms).enumerate() {
        for (k, (lv, cv)) in l.as_array().iter().zip(c.as_array()).enumerate() {
            n += 1;
            if !(cv < *lv) {
                fail.push(format!("{} {}: {cv:.3e} vs {lv:.3e}", AXES[a], NORM_NAMES[k]));
            }
        }
    }
    CheckOutcome::new(format!("backtrace ordering ({})", linear.track_id), fail, n)
}
