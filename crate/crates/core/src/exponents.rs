//! Large-variable exponent of a function known only through its
//! small-variable series: resum `beta(x) = d ln f / d ln x` and take the
//! limit `x -> infinity`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pade::{FitConditions, PadeApproximant};
use crate::rootapprox::RootMixture;
use crate::series::{GeneralizedSeries, GridSeries};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderLimit {
    pub n: usize,
    pub limit: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentMetadata {
    /// Degree of the diagonal Padé factor actually used.
    pub pade_n: usize,
    pub requested_n: usize,
    pub template: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentEstimate {
    pub beta: f64,
    /// Limits of the `[n/n]` resummations for `n = 1..=N`.
    pub diagnostics: Vec<OrderLimit>,
    pub metadata: ExponentMetadata,
    /// Heuristic amplitude `B` in `f ~ B x^beta`, from integrating the
    /// resummed `beta(x)` out to `x = 1e6`. Not a matched quantity.
    pub amplitude_heuristic: Option<f64>,
}

fn beta_series(f_small: &GeneralizedSeries) -> GridSeries {
    f_small.log_derivative()
}

// [n/n] fit through order 2n on raw coefficients
fn diagonal(raw: &GridSeries, n: usize) -> Result<PadeApproximant> {
    PadeApproximant::fit(raw, n, n, &FitConditions { small_order: 2 * n, large: vec![] })
}

/// Estimate the exponent `beta` of `f ~ B x^beta` as `x -> infinity`.
///
/// Without a template the log-derivative series is resummed by a diagonal
/// Padé approximant. With a template `beta_irr`, the Padé factor corrects
/// `beta_irr` and the estimate is `beta_irr(inf) P(inf)`.
pub fn large_variable_exponent(
    f_small: &GeneralizedSeries,
    pade_n: usize,
    irr_template: Option<&RootMixture>,
) -> Result<ExponentEstimate> {
    if pade_n == 0 {
        return Err(Error::Parameter("Padé degree must be at least 1".into()));
    }
    let beta = beta_series(f_small);
    let (raw, irr_limit) = match irr_template {
        None => (beta.clone(), 1.0),
        Some(irr) => {
            let bs = beta
                .to_generalized()
                .ok_or_else(|| Error::TemplateMismatch("log-derivative series vanishes identically".into()))?;
            let lead = irr.asymptotic_large(1)?.leading();
            if lead.1.abs() > 1e-12 {
                return Err(Error::TemplateMismatch(format!(
                    "template grows as x^{} at infinity; an exponent needs a finite limit",
                    lead.1
                )));
            }
            let c = bs.divide(&irr.expand_small(bs.order(), bs.step)?)?;
            if c.alpha.abs() > 1e-12 {
                return Err(Error::TemplateMismatch(format!(
                    "template prefactor misses the log-derivative leading power by {}",
                    c.alpha
                )));
            }
            (c.to_grid().expect("alpha = 0"), lead.0)
        }
    };
    let needed = 2 * pade_n;
    if raw.order() < needed {
        return Err(Error::InsufficientCoefficients { needed, available: raw.order() });
    }

    let mut diagnostics = Vec::new();
    let mut best: Option<(usize, PadeApproximant)> = None;
    let mut last_err = None;
    for n in 1..=pade_n {
        match diagonal(&raw, n) {
            Ok(p) => {
                diagnostics.push(OrderLimit { n, limit: irr_limit * p.limit_at_infinity() });
                best = Some((n, p));
            }
            Err(e) => last_err = Some(e),
        }
    }
    let Some((used, p)) = best else {
        return Err(last_err.unwrap_or(Error::DegenerateTable { m: pade_n, n: pade_n, pivot: 0.0 }));
    };
    let beta_value = irr_limit * p.limit_at_infinity();
    if !beta_value.is_finite() {
        return Err(Error::DegenerateTable { m: used, n: used, pivot: 0.0 });
    }
    let amplitude_heuristic = amplitude(f_small, beta_value, |x| {
        let irr = irr_template.map_or(Ok(1.0), |t| t.evaluate(x)).unwrap_or(f64::NAN);
        irr * p.evaluate(x)
    });
    Ok(ExponentEstimate {
        beta: beta_value,
        diagnostics,
        metadata: ExponentMetadata { pade_n: used, requested_n: pade_n, template: irr_template.is_some() },
        amplitude_heuristic,
    })
}

// ln B = ln f(x0) - beta ln x0 + int_{x0}^{X} (beta*(t) - beta) dt / t
fn amplitude<F: Fn(f64) -> f64>(f_small: &GeneralizedSeries, beta: f64, beta_star: F) -> Option<f64> {
    let (x0, x1) = (1e-3_f64, 1e6_f64);
    let f0 = f_small.eval(x0);
    if !(f0 > 0.0) {
        return None;
    }
    let (u0, u1) = (x0.ln(), x1.ln());
    let n = 2000;
    let h = (u1 - u0) / n as f64;
    let mut sum = 0.0;
    for i in 0..=n {
        let w = if i == 0 || i == n { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
        let v = beta_star((u0 + h * i as f64).exp()) - beta;
        if !v.is_finite() {
            return None;
        }
        sum += w * v;
    }
    let integral = sum * h / 3.0;
    let b = (f0.ln() - beta * u0 + integral).exp();
    b.is_finite().then_some(b)
}
