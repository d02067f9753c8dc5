//! Corrected Padé approximants `f*(x) = f_irr(x) P(x)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pade::{FitConditions, PadeApproximant};
use crate::rootapprox::RootMixture;
use crate::scalar::Real;
use crate::series::{common_step, AsymptoticForm, GeneralizedSeries};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrectedApproximant {
    pub irr: RootMixture,
    pub pade: PadeApproximant,
    pub label: String,
}

/// Tolerance on the leading coefficient of the correcting function.
const LEADING_TOL: f64 = 1e-6;

fn refine(s: &GeneralizedSeries, step: f64) -> GeneralizedSeries {
    let factor = (s.step / step).round() as usize;
    if factor <= 1 {
        return s.clone();
    }
    let b = s.bracket().refine(factor);
    GeneralizedSeries { amplitude: s.amplitude, alpha: s.alpha, step, coeffs: b.coeffs }
}

/// Grid step shared by the small series and every inner exponent of `irr`.
fn shared_step(f_small: &GeneralizedSeries, irr: &RootMixture) -> Result<f64> {
    let mut h = f_small.step;
    for c in &irr.components {
        for l in &c.root.levels {
            h = common_step(h, l.exponent)?.0;
        }
    }
    Ok(h)
}

/// `C = f_small / expand_small(irr)` through `order` steps of the small
/// series; the result has leading term one.
pub fn correcting_series(f_small: &GeneralizedSeries, irr: &RootMixture, order: usize) -> Result<GeneralizedSeries> {
    if order > f_small.order() {
        return Err(Error::InsufficientCoefficients { needed: order, available: f_small.order() });
    }
    let h = shared_step(f_small, irr)?;
    let factor = (f_small.step / h).round() as usize;
    let small = refine(&f_small.truncate(order), h);
    let irr_series = irr.expand_small(order * factor, h)?;
    let mut c = small.divide(&irr_series)?;
    if c.alpha.abs() > 1e-12 || (c.amplitude - 1.0).abs() > LEADING_TOL {
        return Err(Error::InconsistentIrrationalFactor(c.amplitude));
    }
    c.alpha = 0.0;
    c.amplitude = 1.0;
    Ok(c)
}

/// Large-side targets for a two-point fit: the coefficients `q_0, q_1, ...`
/// of `f_large / irr_large` in powers of `x^{-gamma}`, for an `[M/N]` factor.
pub fn large_targets(
    large: &AsymptoticForm,
    irr: &RootMixture,
    gamma: f64,
    m: usize,
    n: usize,
    count: usize,
) -> Result<Vec<f64>> {
    let irr_large = irr.asymptotic_large(large.terms.len().max(count) + 1)?;
    let q = large.to_inverse_series()?.divide(&irr_large.to_inverse_series()?)?;
    // q ~ q_0 y^{(N-M) gamma} with y = 1/x
    let expected = (n as f64 - m as f64) * gamma;
    if (q.alpha - expected).abs() > 1e-9 * expected.abs().max(1.0) {
        return Err(Error::UnmatchableAsymptote(format!(
            "correcting function behaves as x^{} at infinity; [{m}/{n}] requires x^{}",
            -q.alpha, -expected
        )));
    }
    let (hq, _, r) = common_step(q.step, gamma)?;
    if r != 1 {
        return Err(Error::GridMismatch(q.step, gamma));
    }
    let fine = refine(&q, hq);
    let out: Vec<f64> = (0..count).map(|i| q.amplitude * fine.coeffs.get(i).copied().unwrap_or(f64::NAN)).collect();
    if out.iter().any(|v| v.is_nan()) {
        return Err(Error::InsufficientCoefficients { needed: count - 1, available: fine.order() });
    }
    Ok(out)
}

impl CorrectedApproximant {
    pub fn new(irr: RootMixture, pade: PadeApproximant, label: &str) -> Result<Self> {
        if label.is_empty() {
            return Err(Error::InvalidConstruction("label must be non-empty".into()));
        }
        Ok(CorrectedApproximant { irr, pade, label: label.to_string() })
    }

    /// Fit `P_{M/N}` to the correcting function of `f_small`.
    pub fn build(
        f_small: &GeneralizedSeries,
        irr: &RootMixture,
        m: usize,
        n: usize,
        infinity_limit: Option<f64>,
        label: &str,
    ) -> Result<Self> {
        let c = correcting_series(f_small, irr, f_small.order())?;
        let pade = PadeApproximant::from_series(&c, m, n, infinity_limit)?;
        Self::new(irr.clone(), pade, label)
    }

    /// Two-point fit: `small_order + 1` conditions at the origin, the rest
    /// taken from the large-variable asymptote divided by that of `irr`.
    pub fn build_two_point(
        f_small: &GeneralizedSeries,
        large: &AsymptoticForm,
        irr: &RootMixture,
        m: usize,
        n: usize,
        small_order: usize,
        label: &str,
    ) -> Result<Self> {
        let total = m + n + 1;
        if small_order + 1 > total {
            return Err(Error::Parameter(format!("{} small conditions exceed the {total} unknowns", small_order + 1)));
        }
        let c = correcting_series(f_small, irr, f_small.order())?;
        let q = large_targets(large, irr, c.step, m, n, total - small_order - 1)?;
        let raw = c.to_grid().expect("correcting series starts at x^0");
        let pade = PadeApproximant::fit(&raw, m, n, &FitConditions { small_order, large: q })?;
        Self::new(irr.clone(), pade, label)
    }

    pub fn eval<T: Real>(&self, x: T) -> T {
        self.irr.eval(x) * self.pade.eval(x)
    }

    pub fn evaluate(&self, x: f64) -> Result<f64> {
        let irr = self.irr.evaluate(x).map_err(|e| Error::InApproximant {
            label: self.label.clone(),
            source: Box::new(e),
        })?;
        Ok(irr * self.pade.evaluate(x))
    }

    /// Small-variable expansion of the product through `order` steps of
    /// the Padé variable.
    pub fn expand_small(&self, order: usize) -> Result<GeneralizedSeries> {
        let h = self.pade.gamma;
        let p = self
            .pade
            .expand_small(order)
            .to_generalized()
            .ok_or_else(|| Error::NonNormalizable("Padé factor vanishes at the origin".into()))?;
        self.irr.expand_small(order, h)?.multiply(&p)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderDeviation {
    pub order: usize,
    pub deviation: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticsReport {
    /// `|coefficient of (f*/f_small - 1)|` per order of the Padé variable.
    pub small: Vec<OrderDeviation>,
    pub large_exponent: f64,
    pub target_exponent: f64,
    pub exponent_pass: bool,
    pub large_amplitude: f64,
    pub target_amplitude: f64,
    pub amplitude_pass: bool,
}

impl AsymptoticsReport {
    pub fn pass(&self) -> bool {
        self.exponent_pass && self.amplitude_pass && self.small.iter().all(|d| d.pass)
    }
}

/// Check both asymptotic ends. The small side is re-expanded through
/// `matched_order`; the large exponent is the least-squares log-log slope
/// over `[1e4, 1e6]` and the amplitude is read off at `1e6`.
pub fn verify_asymptotics(
    ca: &CorrectedApproximant,
    f_small: &GeneralizedSeries,
    large: &AsymptoticForm,
    matched_order: usize,
    tol: f64,
) -> AsymptoticsReport {
    let small = match ca.expand_small(matched_order).and_then(|s| s.divide(f_small)) {
        Ok(d) => (0..=matched_order.min(d.order()))
            .map(|i| {
                let dev = if i == 0 { (d.amplitude - 1.0).abs() + d.alpha.abs() } else { (d.amplitude * d.coeffs[i]).abs() };
                OrderDeviation { order: i, deviation: dev, pass: dev <= tol }
            })
            .collect(),
        Err(_) => vec![OrderDeviation { order: 0, deviation: f64::NAN, pass: false }],
    };

    let xs: Vec<f64> = (0..20).map(|i| 10f64.powf(4.0 + 2.0 * i as f64 / 19.0)).collect();
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .map(|&x| (x.ln(), ca.evaluate(x).map(|v| v.abs().ln()).unwrap_or(f64::NAN)))
        .collect();
    let nf = pts.len() as f64;
    let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / nf, pts.iter().map(|p| p.1).sum::<f64>() / nf);
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let (b1, beta1) = large.leading();
    let x_end = 1e6;
    let amp = ca.evaluate(x_end).unwrap_or(f64::NAN) / x_end.powf(beta1);
    let exponent_pass = (slope - beta1).abs() <= tol * beta1.abs().max(1.0);
    let amplitude_pass = ((amp - b1) / b1).abs() <= tol;
    AsymptoticsReport {
        small,
        large_exponent: slope,
        target_exponent: beta1,
        exponent_pass,
        large_amplitude: amp,
        target_amplitude: b1,
        amplitude_pass,
    }
}
