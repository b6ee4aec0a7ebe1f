//! Gauss–Legendre rules on [-1, 1], tabulated for 1 to 10 points.

/// Largest tabulated rule.
pub const MAX_POINTS: usize = 10;

#[rustfmt::skip]
#[allow(clippy::excessive_precision)]
static RULES: [&[(f64, f64)]; MAX_POINTS] = [
    &[
        (0.0, 2.0),
    ],
    &[
        (-0.577350269189625764509148780502, 1.0),
        (0.577350269189625764509148780502, 1.0),
    ],
    &[
        (-0.774596669241483377035853079956, 0.555555555555555555555555555556),
        (0.0, 0.888888888888888888888888888889),
        (0.774596669241483377035853079956, 0.555555555555555555555555555556),
    ],
    &[
        (-0.861136311594052575223946488893, 0.347854845137453857373063949222),
        (-0.339981043584856264802665759103, 0.652145154862546142626936050778),
        (0.339981043584856264802665759103, 0.652145154862546142626936050778),
        (0.861136311594052575223946488893, 0.347854845137453857373063949222),
    ],
    &[
        (-0.906179845938663992797626878299, 0.23692688505618908751426404072),
        (-0.5384693101056830910363144207, 0.478628670499366468041291514836),
        (0.0, 0.568888888888888888888888888889),
        (0.5384693101056830910363144207, 0.478628670499366468041291514836),
        (0.906179845938663992797626878299, 0.23692688505618908751426404072),
    ],
    &[
        (-0.932469514203152027812301554494, 0.171324492379170345040296142173),
        (-0.66120938646626451366139959502, 0.360761573048138607569833513838),
        (-0.238619186083196908630501721681, 0.46791393457269104738987034399),
        (0.238619186083196908630501721681, 0.46791393457269104738987034399),
        (0.66120938646626451366139959502, 0.360761573048138607569833513838),
        (0.932469514203152027812301554494, 0.171324492379170345040296142173),
    ],
    &[
        (-0.949107912342758524526189684048, 0.129484966168869693270611432679),
        (-0.741531185599394439863864773281, 0.279705391489276667901467771424),
        (-0.405845151377397166906606412077, 0.381830050505118944950369775489),
        (0.0, 0.417959183673469387755102040816),
        (0.405845151377397166906606412077, 0.381830050505118944950369775489),
        (0.741531185599394439863864773281, 0.279705391489276667901467771424),
        (0.949107912342758524526189684048, 0.129484966168869693270611432679),
    ],
    &[
        (-0.960289856497536231683560868569, 0.10122853629037625915253135431),
        (-0.796666477413626739591553936476, 0.222381034453374470544355994426),
        (-0.525532409916328985817739049189, 0.313706645877887287337962201987),
        (-0.18343464249564980493947614236, 0.362683783378361982965150449277),
        (0.18343464249564980493947614236, 0.362683783378361982965150449277),
        (0.525532409916328985817739049189, 0.313706645877887287337962201987),
        (0.796666477413626739591553936476, 0.222381034453374470544355994426),
        (0.960289856497536231683560868569, 0.10122853629037625915253135431),
    ],
    &[
        (-0.968160239507626089835576202904, 0.0812743883615744119718921581105),
        (-0.83603110732663579429942978807, 0.180648160694857404058472031243),
        (-0.613371432700590397308702039341, 0.260610696402935462318742869419),
        (-0.324253423403808929038538014643, 0.312347077040002840068630406584),
        (0.0, 0.330239355001259763164525069287),
        (0.324253423403808929038538014643, 0.312347077040002840068630406584),
        (0.613371432700590397308702039341, 0.260610696402935462318742869419),
        (0.83603110732663579429942978807, 0.180648160694857404058472031243),
        (0.968160239507626089835576202904, 0.0812743883615744119718921581105),
    ],
    &[
        (-0.973906528517171720077964012084, 0.0666713443086881375935688098933),
        (-0.865063366688984510732096688423, 0.149451349150580593145776339658),
        (-0.679409568299024406234327365115, 0.219086362515982043995534934228),
        (-0.433395394129247190799265943166, 0.269266719309996355091226921569),
        (-0.14887433898163121088482600113, 0.295524224714752870173892994651),
        (0.14887433898163121088482600113, 0.295524224714752870173892994651),
        (0.433395394129247190799265943166, 0.269266719309996355091226921569),
        (0.679409568299024406234327365115, 0.219086362515982043995534934228),
        (0.865063366688984510732096688423, 0.149451349150580593145776339658),
        (0.973906528517171720077964012084, 0.0666713443086881375935688098933),
    ],
];

/// Abscissa/weight pairs of the `n`-point rule on [-1, 1], ordered by abscissa.
///
/// Panics if `n` is 0 or larger than [`MAX_POINTS`].
pub fn rule(n: usize) -> &'static [(f64, f64)] {
    assert!(
        (1..=MAX_POINTS).contains(&n),
        "Gauss-Legendre rule with {n} points is not tabulated"
    );
    RULES[n - 1]
}

/// Nodes and weights of the `n`-point rule mapped onto `[a, b]`.
pub fn mapped(n: usize, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    rule(n).iter().map(move |&(x, w)| (mid + half * x, half * w))
}

/// Integrates `f` over `[a, b]` with the `n`-point rule.
pub fn integrate<F: FnMut(f64) -> f64>(n: usize, a: f64, b: f64, mut f: F) -> f64 {
    mapped(n, a, b).map(|(t, w)| w * f(t)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        for n in 1..=MAX_POINTS {
            let s: f64 = rule(n).iter().map(|p| p.1).sum();
            assert!((s - 2.0).abs() < 1e-14, "n = {n}: {s}");
        }
    }

    #[test]
    fn exact_up_to_degree_2n_minus_1() {
        // monomial moments on [-1, 1]: 2/(k+1) for even k, 0 for odd k
        for n in 1..=MAX_POINTS {
            for k in 0..2 * n {
                let q: f64 = rule(n).iter().map(|&(x, w)| w * x.powi(k as i32)).sum();
                let exact = if k % 2 == 0 { 2.0 / (k as f64 + 1.0) } else { 0.0 };
                assert!((q - exact).abs() < 1e-14, "n = {n}, k = {k}: {q} vs {exact}");
            }
        }
    }

    #[test]
    fn mapped_rule_integrates_exp() {
        let q = integrate(10, 0.0, 1.0, f64::exp);
        assert!((q - (std::f64::consts::E - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn abscissae_are_interior_and_sorted() {
        for n in 1..=MAX_POINTS {
            let r = rule(n);
            assert!(r.windows(2).all(|w| w[0].0 < w[1].0));
            assert!(r.iter().all(|p| p.0 > -1.0 && p.0 < 1.0));
        }
    }
}
