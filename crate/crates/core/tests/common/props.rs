use proptest::prelude::*;
use sspade::{
    canonical_powers, match_parameters, GeneralizedSeries, GridSeries, Level, LevelTemplate, NestedRootApproximant,
    PadeApproximant,
};

use proptest::test_runner::TestRunner;

fn run<S: Strategy>(s: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(ProptestConfig { cases: 100, failure_persistence: None, ..ProptestConfig::default() });
    runner.run(&s, test).map_err(|e| e.to_string())
}

fn coeffs(range: f64, max_order: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-range..range, 1..=max_order).prop_map(|mut v| {
        v.insert(0, 1.0);
        v
    })
}

fn series(range: f64, max_order: usize) -> impl Strategy<Value = GeneralizedSeries> {
    (0.2f64..3.0, -1.0f64..1.0, coeffs(range, max_order))
        .prop_map(|(a, alpha, c)| GeneralizedSeries::new(a, alpha, 0.5, c).unwrap())
}

fn same_order(a: &GeneralizedSeries, b: &GeneralizedSeries) -> (GeneralizedSeries, GeneralizedSeries) {
    let k = a.order().min(b.order());
    (a.truncate(k), b.truncate(k))
}

// |x| on every coefficient: bounds the size of intermediate sums
fn abs(s: &GeneralizedSeries) -> GeneralizedSeries {
    GeneralizedSeries::new(s.amplitude.abs(), s.alpha, s.step, s.coeffs.iter().map(|c| c.abs()).collect()).unwrap()
}

fn full(s: &GeneralizedSeries) -> Vec<f64> {
    s.coeffs.iter().map(|c| s.amplitude * c).collect()
}

fn close(a: &GeneralizedSeries, b: &GeneralizedSeries, scale: &GeneralizedSeries, tol: f64) -> Result<(), TestCaseError> {
    prop_assert!((a.alpha - b.alpha).abs() < 1e-12);
    let (fa, fb, fs) = (full(a), full(b), full(scale));
    let k = fa.len().min(fb.len());
    for i in 0..k {
        let s = fs.get(i).copied().unwrap_or(0.0).abs().max(fa[i].abs()).max(1e-300);
        prop_assert!((fa[i] - fb[i]).abs() <= tol * s, "coefficient {i}: {} vs {} (scale {s})", fa[i], fb[i]);
    }
    Ok(())
}


pub const SUITES: &[(&str, fn() -> Result<(), String>)] = &[
    ("multiply_commutes", multiply_commutes),
    ("multiply_associates", multiply_associates),
    ("divide_then_multiply", divide_then_multiply),
    ("power_round_trip", power_round_trip),
    ("log_derivative_of_product", log_derivative_of_product),
    ("pade_re_expansion", pade_re_expansion),
    ("pade_scale_covariance", pade_scale_covariance),
    ("root_expansions_match_values", root_expansions_match_values),
    ("root_calibration_round_trip", root_calibration_round_trip),
    ("canonical_power_identities", canonical_power_identities),
    ("grid_series_division_round_trip", grid_series_division_round_trip),
];

pub fn multiply_commutes() -> Result<(), String> {
    run((series(2.0, 12), series(2.0, 12),), |(a, b,)| {
        let (a, b) = same_order(&a, &b);
        let scale = abs(&a).multiply(&abs(&b)).unwrap();
        close(&a.multiply(&b).unwrap(), &b.multiply(&a).unwrap(), &scale, 1e-12)?;
        Ok(())
    })
}

pub fn multiply_associates() -> Result<(), String> {
    run((series(2.0, 12), series(2.0, 12), series(2.0, 12),), |(a, b, c,)| {
        let (a, b) = same_order(&a, &b);
        let (a, c) = same_order(&a, &c);
        let b = b.truncate(a.order());
        let scale = abs(&a).multiply(&abs(&b)).unwrap().multiply(&abs(&c)).unwrap();
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        close(&left, &right, &scale, 1e-12)?;
        Ok(())
    })
}

pub fn divide_then_multiply() -> Result<(), String> {
    run((series(2.0, 12), series(1.0, 12),), |(a, b,)| {
        let (a, b) = same_order(&a, &b);
        let q = a.divide(&b).unwrap();
        let back = q.multiply(&b).unwrap();
        let scale = abs(&q).multiply(&abs(&b)).unwrap();
        close(&back, &a, &scale, 1e-12)?;
        Ok(())
    })
}

pub fn power_round_trip() -> Result<(), String> {
    run((series(1.0, 10), 0.1f64..5.0, any::<bool>(),), |(s, p, negative,)| {
        let p = if negative { -p } else { p };
        let back = s.power(p).unwrap().power(1.0 / p).unwrap();
        prop_assert!((back.amplitude - s.amplitude).abs() <= 1e-10 * s.amplitude.abs());
        prop_assert!((back.alpha - s.alpha).abs() <= 1e-10);
        // the scale of the intermediate coefficients bounds the rounding
        let mid = abs(&s.power(p).unwrap());
        let scale = mid.power(1.0 / p).map(|m| full(&m)).unwrap_or_default();
        for i in 1..=s.order() {
            let sc = scale.get(i).copied().unwrap_or(1.0).abs().max(s.coeffs[i].abs()).max(1.0);
            prop_assert!((back.coeffs[i] - s.coeffs[i]).abs() <= 1e-10 * sc, "{i}: {} vs {}", back.coeffs[i], s.coeffs[i]);
        }
        Ok(())
    })
}

pub fn log_derivative_of_product() -> Result<(), String> {
    run((series(2.0, 10), series(2.0, 10),), |(a, b,)| {
        let (a, b) = same_order(&a, &b);
        let lp = a.multiply(&b).unwrap().log_derivative();
        let sum = a.log_derivative().add(&b.log_derivative()).unwrap();
        for i in 0..=a.order() {
            let s = lp.coeff(i).abs().max(1.0) * 2f64.powi(i as i32 + 2);
            prop_assert!((lp.coeff(i) - sum.coeff(i)).abs() <= 1e-12 * s, "{i}");
        }
        Ok(())
    })
}

pub fn pade_re_expansion() -> Result<(), String> {
    run((coeffs(2.0, 8), 0usize..=3, 1usize..=3, any::<bool>(),), |(c, m, n, with_limit,)| {
        let total = m + n + usize::from(!(with_limit && m == n));
        prop_assume!(c.len() > total);
        let s = GeneralizedSeries::new(1.0, 0.0, 1.0, c.clone()).unwrap();
        let limit = (with_limit && m == n).then_some(1.0);
        let matched = if limit.is_some() { m + n - 1 } else { m + n };
        let p = match PadeApproximant::from_series(&s, m, n, limit) {
            Ok(p) => p,
            Err(_) => return Err(TestCaseError::reject("degenerate table")),
        };
        let e = p.expand_small(matched);
        // size of the terms summed in 1/den: grows like |b_1|^k near a small pole
        let mut u = vec![1.0];
        for k in 1..=matched {
            u.push((1..=k.min(n)).map(|j| p.den[j].abs() * u[k - j]).sum::<f64>());
        }
        for i in 0..=matched {
            let scale: f64 = (0..=i.min(m)).map(|j| p.num[j].abs() * u[i - j]).sum::<f64>().max(c[i].abs()).max(1.0);
            prop_assert!((e.coeff(i) - c[i]).abs() <= 1e-12 * scale, "order {i}: {} vs {} (scale {scale})", e.coeff(i), c[i]);
        }
        if let Some(l) = limit {
            prop_assert!((p.evaluate(1e8) - l).abs() <= 1e-4 || !p.find_poles(0.0, 1e8, 2000).is_empty());
        }
        Ok(())
    })
}

pub fn pade_scale_covariance() -> Result<(), String> {
    run((coeffs(2.0, 6), 0usize..=2, 1usize..=2, 0.1f64..2.0,), |(c, m, n, h,)| {
        prop_assume!(c.len() > m + n);
        let on_h = GeneralizedSeries::new(1.0, 0.0, h, c.clone()).unwrap();
        let on_1 = GeneralizedSeries::new(1.0, 0.0, 1.0, c).unwrap();
        let (Ok(a), Ok(b)) = (PadeApproximant::from_series(&on_h, m, n, None), PadeApproximant::from_series(&on_1, m, n, None)) else {
            return Err(TestCaseError::reject("degenerate table"));
        };
        prop_assert_eq!(a.gamma, h);
        for (x, y) in a.num.iter().zip(&b.num).chain(a.den.iter().zip(&b.den)) {
            prop_assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0));
        }
        let x = 0.37f64;
        prop_assert!((a.evaluate(x) - b.evaluate(x.powf(h))).abs() <= 1e-12 * a.evaluate(x).abs().max(1.0));
        Ok(())
    })
}

pub fn root_expansions_match_values() -> Result<(), String> {
    run((0.2f64..3.0, 0.2f64..3.0, prop::sample::select(vec![1.5, 2.0, 2.5, 3.0]), 0.2f64..1.2, -2.0f64..-0.3,), |(a1, a2, e2, n1, n2,)| {
        let r = NestedRootApproximant::new(1.0, 0.0, vec![Level::new(a1, 1.0, n1), Level::new(a2, e2, n2)], None).unwrap();
        // small side: the remainder shrinks with the expansion order
        let s = r.expand_small(12, 0.5).unwrap();
        let x = 1e-3;
        prop_assert!((s.eval(x) - r.evaluate(x).unwrap()).abs() <= 1e-9 * r.evaluate(x).unwrap().abs());
        // large side: the remainder is of the size of the next omitted terms
        let l = r.asymptotic_large(4).unwrap();
        let more = r.asymptotic_large(8).unwrap();
        let err = |x: f64| ((l.eval(x) - r.evaluate(x).unwrap()) / r.evaluate(x).unwrap()).abs();
        let omitted = |x: f64| {
            more.terms[l.terms.len()..].iter().map(|t| (t.0 * x.powf(t.1)).abs()).sum::<f64>()
                / (l.terms[0].0 * x.powf(l.terms[0].1)).abs()
        };
        prop_assert!(err(1e8) <= 2.0 * omitted(1e8) + 1e-12, "{} vs {}", err(1e8), omitted(1e8));
        prop_assert!(err(1e8) <= err(1e6).max(1e-12));
        Ok(())
    })
}

pub fn root_calibration_round_trip() -> Result<(), String> {
    run((0.2f64..3.0, 0.05f64..3.0, prop::sample::select(vec![1.5, 2.0, 2.5, 3.0]), 0.1f64..0.8, -2.0f64..-0.3,), |(a1, a2, e2, frac, n2,)| {
        // inner power below the outer exponent so the outer level dominates
        let n1 = frac * e2;
        let r = NestedRootApproximant::new(1.0, 0.0, vec![Level::new(a1, 1.0, n1), Level::new(a2, e2, n2)], None).unwrap();
        let small = r.expand_small(8, 0.5).unwrap();
        let large = r.asymptotic_large(2).unwrap();
        let t = [LevelTemplate { exponent: 1.0, power: None }, LevelTemplate { exponent: e2, power: Some(n2) }];
        let m = match_parameters(&t, &small, &large).unwrap();
        let rel = |x: f64, y: f64| ((x - y) / y).abs();
        prop_assert!(rel(m.levels[0].amplitude, a1) <= 1e-6, "A1 {} vs {a1}", m.levels[0].amplitude);
        prop_assert!(rel(m.levels[0].power, n1) <= 1e-6, "n1 {} vs {n1}", m.levels[0].power);
        prop_assert!(rel(m.levels[1].amplitude, a2) <= 1e-6, "A2 {} vs {a2}", m.levels[1].amplitude);
        let back = m.expand_small(8, 0.5).unwrap();
        for i in 0..=8 {
            prop_assert!((back.coeffs[i] - small.coeffs[i]).abs() <= 1e-8 * small.coeffs[i].abs().max(1.0));
        }
        let lb = m.asymptotic_large(2).unwrap();
        for (u, v) in lb.terms.iter().zip(&large.terms) {
            prop_assert!(rel(u.0, v.0) <= 1e-6 && (u.1 - v.1).abs() <= 1e-6 * v.1.abs().max(1.0));
        }
        Ok(())
    })
}

pub fn canonical_power_identities() -> Result<(), String> {
    run((2usize..=8, 0.0f64..1.0, -2.0f64..2.0, -1.0f64..3.0, prop::collection::vec(0.1f64..2.0, 8),), |(k, p_frac, alpha, start, gaps,)| {
        let p = 1 + ((k - 1) as f64 * p_frac) as usize % (k - 1);
        let mut betas = vec![start];
        for g in gaps.iter().take(p - 1) {
            let last = *betas.last().unwrap();
            betas.push(last - g);
        }
        let n = canonical_powers(k, p, alpha, &betas).unwrap();
        let eps = 8.0 * f64::EPSILON;
        for j in 1..=k - p {
            prop_assert!((j as f64 * n[j - 1] - (j + 1) as f64).abs() <= eps * (j + 1) as f64);
        }
        for j in k - p + 1..k {
            let rhs = j as f64 + 1.0 + betas[k - j] - betas[k - j - 1];
            prop_assert!((j as f64 * n[j - 1] - rhs).abs() <= eps * rhs.abs().max(j as f64 + 1.0));
        }
        prop_assert!((k as f64 * n[k - 1] - (betas[0] - alpha)).abs() <= eps * (betas[0] - alpha).abs().max(1.0));
        Ok(())
    })
}

pub fn grid_series_division_round_trip() -> Result<(), String> {
    run((prop::collection::vec(-2.0f64..2.0, 1..12), prop::collection::vec(-1.0f64..1.0, 0..11),), |(c, d,)| {
        let a = GridSeries { step: 1.0, coeffs: c };
        let mut dc = d;
        dc.insert(0, 1.0);
        dc.resize(a.coeffs.len(), 0.0);
        let b = GridSeries { step: 1.0, coeffs: dc };
        let back = a.div(&b).unwrap().mul(&b).unwrap();
        for i in 0..a.coeffs.len() {
            prop_assert!((back.coeff(i) - a.coeff(i)).abs() <= 1e-12 * 4f64.powi(i as i32 + 1));
        }
        Ok(())
    })
}
