//! Truncated power series on uniform, possibly fractional, exponent grids.
//!
//! Two representations are used throughout the crate:
//!
//! * [`GridSeries`]: raw coefficients `c_0..c_K` of `sum c_n z^n` with
//!   `z = x^step`. Nothing is normalized; `c_0` may vanish.
//! * [`GeneralizedSeries`]: `A x^alpha (1 + sum_{n>=1} c_n x^{n h})`, the
//!   normalized form every small-variable expansion is stored in.
//!
//! Binary operations truncate to the highest order both operands certify.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance used when deciding whether two grid steps are commensurate.
pub const GRID_TOL: f64 = 1e-12;
const MAX_GRID_DENOMINATOR: i64 = 10_000;

/// Express `h1` and `h2` as integer multiples of a common step.
///
/// Returns `(h, p, q)` with `h1 = p h` and `h2 = q h`.
pub fn common_step(h1: f64, h2: f64) -> Result<(f64, usize, usize)> {
    if !(h1 > 0.0 && h2 > 0.0) {
        return Err(Error::GridMismatch(h1, h2));
    }
    let r = h1 / h2;
    // continued-fraction convergents of r
    let (mut p0, mut q0, mut p1, mut q1) = (0_i64, 1_i64, 1_i64, 0_i64);
    let mut x = r;
    for _ in 0..64 {
        let a = x.floor();
        let ai = a as i64;
        let (p2, q2) = (ai * p1 + p0, ai * q1 + q0);
        if q2 > MAX_GRID_DENOMINATOR || p2 > MAX_GRID_DENOMINATOR {
            break;
        }
        if (r - p2 as f64 / q2 as f64).abs() <= GRID_TOL * r.max(1.0) {
            let h = h1 / p2 as f64;
            return Ok((h, p2 as usize, q2 as usize));
        }
        let frac = x - a;
        if frac <= 0.0 {
            break;
        }
        x = 1.0 / frac;
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    Err(Error::GridMismatch(h1, h2))
}

/// Integer `k` with `value = k * step` (within the grid tolerance), if any.
pub fn grid_index(value: f64, step: f64) -> Option<usize> {
    let k = value / step;
    let kr = k.round();
    if kr >= 0.0 && (k - kr).abs() <= 1e-9 * kr.max(1.0) {
        Some(kr as usize)
    } else {
        None
    }
}

fn same_step(a: f64, b: f64) -> bool {
    (a - b).abs() <= GRID_TOL * a.abs().max(b.abs())
}

/// Raw truncated series `sum_{n=0}^{K} c_n z^n`, `z = x^step`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSeries {
    pub step: f64,
    pub coeffs: Vec<f64>,
}

impl GridSeries {
    pub fn new(step: f64, coeffs: Vec<f64>) -> Result<Self> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::InvalidConstruction(format!("step must be positive, got {step}")));
        }
        if coeffs.is_empty() {
            return Err(Error::InvalidConstruction("empty coefficient list".into()));
        }
        Ok(GridSeries { step, coeffs })
    }

    pub fn constant(step: f64, value: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = value;
        GridSeries { step, coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `z^n`, zero past the truncation order.
    pub fn coeff(&self, n: usize) -> f64 {
        self.coeffs.get(n).copied().unwrap_or(0.0)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order + 1);
        GridSeries { step: self.step, coeffs }
    }

    /// Horner evaluation of the truncated sum at `x`.
    pub fn eval(&self, x: f64) -> f64 {
        let z = x.powf(self.step);
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * z + c)
    }

    /// Re-express on a grid `factor` times finer.
    pub fn refine(&self, factor: usize) -> Self {
        if factor == 1 {
            return self.clone();
        }
        let mut coeffs = vec![0.0; self.order() * factor + 1];
        for (n, c) in self.coeffs.iter().enumerate() {
            coeffs[n * factor] = *c;
        }
        GridSeries { step: self.step / factor as f64, coeffs }
    }

    fn check_step(&self, other: &Self) -> Result<()> {
        if same_step(self.step, other.step) {
            Ok(())
        } else {
            Err(Error::GridMismatch(self.step, other.step))
        }
    }

    pub fn scale(&self, k: f64) -> Self {
        GridSeries { step: self.step, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn add_scalar(&self, k: f64) -> Self {
        let mut out = self.clone();
        out.coeffs[0] += k;
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_step(other)?;
        let k = self.order().min(other.order());
        let coeffs = (0..=k).map(|n| self.coeffs[n] + other.coeffs[n]).collect();
        Ok(GridSeries { step: self.step, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1.0))
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_step(other)?;
        let k = self.order().min(other.order());
        let coeffs = (0..=k)
            .map(|n| (0..=n).map(|j| self.coeffs[j] * other.coeffs[n - j]).sum())
            .collect();
        Ok(GridSeries { step: self.step, coeffs })
    }

    /// Series quotient; the divisor must have a nonzero constant term.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_step(other)?;
        let d0 = other.coeffs[0];
        if d0 == 0.0 || !d0.is_finite() {
            return Err(Error::DivisionSingularity);
        }
        let k = self.order().min(other.order());
        let mut q = vec![0.0; k + 1];
        for n in 0..=k {
            let s: f64 = (0..n).map(|j| q[j] * other.coeffs[n - j]).sum();
            q[n] = (self.coeffs[n] - s) / d0;
        }
        Ok(GridSeries { step: self.step, coeffs: q })
    }

    /// `ln` of a series with positive constant term.
    pub fn ln(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if !(c0 > 0.0) {
            return Err(Error::NonNormalizable(format!("logarithm of series with constant term {c0}")));
        }
        // w l' = w'  on the index variable
        let w: Vec<f64> = self.coeffs.iter().map(|c| c / c0).collect();
        let k = self.order();
        let mut l = vec![0.0; k + 1];
        l[0] = c0.ln();
        for n in 1..=k {
            let s: f64 = (1..n).map(|j| j as f64 * l[j] * w[n - j]).sum();
            l[n] = w[n] - s / n as f64;
        }
        Ok(GridSeries { step: self.step, coeffs: l })
    }

    pub fn exp(&self) -> Self {
        let k = self.order();
        let mut e = vec![0.0; k + 1];
        e[0] = self.coeffs[0].exp();
        for n in 1..=k {
            let s: f64 = (1..=n).map(|j| j as f64 * self.coeffs[j] * e[n - j]).sum();
            e[n] = s / n as f64;
        }
        GridSeries { step: self.step, coeffs: e }
    }

    /// Real power via log-exp composition of the normalized bracket.
    pub fn powf(&self, p: f64) -> Result<Self> {
        if !p.is_finite() {
            return Err(Error::Parameter(format!("non-finite exponent {p}")));
        }
        let c0 = self.coeffs[0];
        if c0 == 0.0 {
            return Err(Error::NonNormalizable("power of series with zero constant term".into()));
        }
        let integral = p == p.trunc();
        if c0 < 0.0 && !integral {
            return Err(Error::NonNormalizable(format!("non-integer power {p} of negative constant term {c0}")));
        }
        let lead = if integral { c0.powi(p as i32) } else { c0.powf(p) };
        let bracket = self.scale(1.0 / c0);
        let mut out = bracket.ln()?.scale(p).exp();
        out.coeffs[0] = 1.0;
        Ok(out.scale(lead))
    }

    /// `z d/dz` applied termwise (multiplies `c_n` by `n`).
    pub fn index_derivative(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(n, c)| n as f64 * c).collect();
        GridSeries { step: self.step, coeffs }
    }

    /// Leading nonzero term as a normalized series, if any coefficient is nonzero.
    pub fn to_generalized(&self) -> Option<GeneralizedSeries> {
        let first = self.coeffs.iter().position(|c| *c != 0.0)?;
        let amp = self.coeffs[first];
        let coeffs = self.coeffs[first..].iter().map(|c| c / amp).collect();
        Some(GeneralizedSeries {
            amplitude: amp,
            alpha: first as f64 * self.step,
            step: self.step,
            coeffs,
        })
    }
}

/// Normalized expansion `A x^alpha (1 + sum_{n=1}^{K} c_n x^{n h})`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSeries")]
pub struct GeneralizedSeries {
    pub amplitude: f64,
    pub alpha: f64,
    pub step: f64,
    /// `coeffs[0] == 1` always.
    pub coeffs: Vec<f64>,
}

#[derive(Deserialize)]
struct RawSeries {
    amplitude: f64,
    alpha: f64,
    step: f64,
    coeffs: Vec<f64>,
}

impl TryFrom<RawSeries> for GeneralizedSeries {
    type Error = Error;
    fn try_from(r: RawSeries) -> Result<Self> {
        GeneralizedSeries::new(r.amplitude, r.alpha, r.step, r.coeffs)
    }
}

impl GeneralizedSeries {
    /// Build a series, folding `coeffs[0]` into the amplitude.
    pub fn new(amplitude: f64, alpha: f64, step: f64, coeffs: Vec<f64>) -> Result<Self> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::InvalidConstruction(format!("step must be positive, got {step}")));
        }
        let Some(&c0) = coeffs.first() else {
            return Err(Error::InvalidConstruction("empty coefficient list".into()));
        };
        if c0 == 0.0 || amplitude == 0.0 {
            return Err(Error::InvalidConstruction("zero leading coefficient".into()));
        }
        if !(amplitude.is_finite() && alpha.is_finite()) || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidConstruction("non-finite parameter".into()));
        }
        Ok(GeneralizedSeries {
            amplitude: amplitude * c0,
            alpha,
            step,
            coeffs: coeffs.iter().map(|c| c / c0).collect(),
        })
    }

    /// The constant function `1` truncated at `order`.
    pub fn one(step: f64, order: usize) -> Self {
        GeneralizedSeries { amplitude: 1.0, alpha: 0.0, step, coeffs: GridSeries::constant(step, 1.0, order).coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The normalized bracket `1 + sum c_n z^n` as a raw series.
    pub fn bracket(&self) -> GridSeries {
        GridSeries { step: self.step, coeffs: self.coeffs.clone() }
    }

    fn from_bracket(amplitude: f64, alpha: f64, bracket: GridSeries) -> Result<Self> {
        GeneralizedSeries::new(amplitude, alpha, bracket.step, bracket.coeffs)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut s = self.clone();
        s.coeffs.truncate(order + 1);
        s
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.amplitude * x.powf(self.alpha) * self.bracket().eval(x)
    }

    /// Largest relative exponent `K h` certified by the truncation.
    pub fn reach(&self) -> f64 {
        self.order() as f64 * self.step
    }

    fn on_common_grid(&self, other: &Self) -> Result<(GridSeries, GridSeries)> {
        let (_, p, q) = common_step(self.step, other.step)?;
        Ok((self.bracket().refine(p), other.bracket().refine(q)))
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.on_common_grid(other)?;
        Self::from_bracket(self.amplitude * other.amplitude, self.alpha + other.alpha, a.mul(&b)?)
    }

    pub fn divide(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.on_common_grid(other)?;
        Self::from_bracket(self.amplitude / other.amplitude, self.alpha - other.alpha, a.div(&b)?)
    }

    pub fn power(&self, p: f64) -> Result<Self> {
        if !p.is_finite() {
            return Err(Error::Parameter(format!("non-finite exponent {p}")));
        }
        let amp = if p == p.trunc() {
            self.amplitude.powi(p as i32)
        } else if self.amplitude > 0.0 {
            self.amplitude.powf(p)
        } else {
            return Err(Error::NonNormalizable(format!(
                "non-integer power {p} of negative amplitude {}",
                self.amplitude
            )));
        };
        Self::from_bracket(amp, self.alpha * p, self.bracket().powf(p)?)
    }

    /// Sum of two series sharing the prefactor exponent.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.alpha - other.alpha).abs() > GRID_TOL * self.alpha.abs().max(1.0) {
            return Err(Error::TemplateMismatch(format!(
                "cannot add series with prefactor exponents {} and {}",
                self.alpha, other.alpha
            )));
        }
        let (a, b) = self.on_common_grid(other)?;
        let sum = a.scale(self.amplitude).add(&b.scale(other.amplitude))?;
        if sum.coeffs[0] == 0.0 {
            return Err(Error::InvalidConstruction("leading terms cancel in sum".into()));
        }
        Self::from_bracket(1.0, self.alpha, sum)
    }

    pub fn scale(&self, k: f64) -> Result<Self> {
        GeneralizedSeries::new(self.amplitude * k, self.alpha, self.step, self.coeffs.clone())
    }

    /// Series of `d ln f / d ln x = alpha + x (d/dx) ln(bracket)`, exact
    /// through the order of `self`.
    pub fn log_derivative(&self) -> GridSeries {
        let b = self.bracket();
        let mut beta = b
            .index_derivative()
            .scale(self.step)
            .div(&b)
            .expect("normalized bracket has unit constant term");
        beta.coeffs[0] += self.alpha;
        beta
    }

    /// Raw grid series when `alpha` is a non-negative multiple of `step`.
    pub fn to_grid(&self) -> Option<GridSeries> {
        let shift = grid_index(self.alpha, self.step)?;
        let mut coeffs = vec![0.0; shift];
        coeffs.extend(self.coeffs.iter().map(|c| c * self.amplitude));
        Some(GridSeries { step: self.step, coeffs })
    }
}

/// Descending large-variable expansion `sum b_n x^{beta_n}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawAsymptotic")]
pub struct AsymptoticForm {
    /// `(amplitude, exponent)` pairs, exponents strictly descending.
    pub terms: Vec<(f64, f64)>,
}

#[derive(Deserialize)]
struct RawAsymptotic {
    terms: Vec<(f64, f64)>,
}

impl TryFrom<RawAsymptotic> for AsymptoticForm {
    type Error = Error;
    fn try_from(r: RawAsymptotic) -> Result<Self> {
        AsymptoticForm::new(r.terms)
    }
}

impl AsymptoticForm {
    pub fn new(terms: Vec<(f64, f64)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidConstruction("asymptotic form needs at least one term".into()));
        }
        if terms.iter().any(|(b, e)| !b.is_finite() || !e.is_finite()) {
            return Err(Error::InvalidConstruction("non-finite asymptotic term".into()));
        }
        if terms.windows(2).any(|w| w[1].1 >= w[0].1) {
            return Err(Error::InvalidConstruction("exponents must be strictly descending".into()));
        }
        Ok(AsymptoticForm { terms })
    }

    pub fn leading(&self) -> (f64, f64) {
        self.terms[0]
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.terms.iter().map(|(b, e)| b * x.powf(*e)).sum()
    }

    /// Re-express as a series in `y = 1/x`: `b_1 y^{-beta_1} (1 + ...)`.
    /// The grid step is the common step of all exponent gaps.
    pub fn to_inverse_series(&self) -> Result<GeneralizedSeries> {
        let (b1, e1) = self.terms[0];
        let gaps: Vec<f64> = self.terms.iter().skip(1).map(|(_, e)| e1 - e).collect();
        let mut step = match gaps.first() {
            Some(g) => *g,
            None => return GeneralizedSeries::new(b1, -e1, 1.0, vec![1.0]),
        };
        for g in &gaps[1..] {
            step = common_step(step, *g)?.0;
        }
        let order = grid_index(*gaps.last().unwrap(), step).ok_or(Error::GridMismatch(step, step))?;
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = 1.0;
        for ((b, _), g) in self.terms.iter().skip(1).zip(&gaps) {
            let k = grid_index(*g, step).ok_or(Error::GridMismatch(*g, step))?;
            coeffs[k] = b / b1;
        }
        GeneralizedSeries::new(b1, -e1, step, coeffs)
    }
}

/// Taylor coefficients of the solution of `df/dt = g(f)`, `f(0) = f0`,
/// through `order`. `rhs` must map a truncated series for `f` to the
/// series of `g(f)` at the same order.
pub fn taylor_from_ode<G>(rhs: G, f0: f64, order: usize) -> Result<GeneralizedSeries>
where
    G: Fn(&GridSeries) -> Result<GridSeries>,
{
    if order < 1 {
        return Err(Error::Parameter("order must be at least 1".into()));
    }
    let mut a = vec![f0];
    for n in 0..order {
        let f = GridSeries { step: 1.0, coeffs: a.clone() };
        let g = rhs(&f).map_err(|_| Error::SingularInitialCondition(f0))?;
        let gn = g.coeff(n);
        if !gn.is_finite() {
            return Err(Error::SingularInitialCondition(f0));
        }
        a.push(gn / (n + 1) as f64);
    }
    GeneralizedSeries::new(1.0, 0.0, 1.0, a).map_err(|_| Error::SingularInitialCondition(f0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol * y.abs().max(1.0))
    }

    #[test]
    fn make_series_normalizes() {
        let s = GeneralizedSeries::new(2.0, 1.0, 1.0, vec![3.0, 1.0]).unwrap();
        assert_eq!(s.amplitude, 6.0);
        assert!(close(&s.coeffs, &[1.0, 1.0 / 3.0], 1e-15));
        let one = GeneralizedSeries::new(1.0, 0.0, 1.0, vec![1.0]).unwrap();
        assert_eq!(one.eval(3.0), 1.0);
    }

    #[test]
    fn make_series_errors() {
        assert!(matches!(GeneralizedSeries::new(1.0, 0.0, 0.0, vec![1.0]), Err(Error::InvalidConstruction(_))));
        assert!(matches!(GeneralizedSeries::new(1.0, 0.0, 1.0, vec![]), Err(Error::InvalidConstruction(_))));
        assert!(matches!(GeneralizedSeries::new(1.0, 0.0, 1.0, vec![0.0, 1.0]), Err(Error::InvalidConstruction(_))));
    }

    #[test]
    fn multiply_examples() {
        let a = GeneralizedSeries::new(1.0, 0.0, 1.0, vec![1.0, 1.0, 0.0]).unwrap();
        let b = GeneralizedSeries::new(1.0, 0.0, 1.0, vec![1.0, -1.0, 0.0]).unwrap();
        assert!(close(&a.multiply(&b).unwrap().coeffs, &[1.0, 0.0, -1.0], 1e-15));
        let a = GeneralizedSeries::new(1.0, 0.0, 1.0, vec![1.0, 1.0, 1.0]).unwrap();
        assert!(close(&a.multiply(&b).unwrap().coeffs, &[1.0, 0.0, 0.0], 1e-15));
    }

    #[test]
    fn multiply_mixed_grids() {
        // (1 + 2 x^{1/2}) (1 + 3x) by hand: 1 + 2x^{1/2} + 3x + 6x^{3/2}
        let a = GeneralizedSeries::new(1.0, 0.0, 0.5, vec![1.0, 2.0, 0.0, 0.0]).unwrap();
        let b = GeneralizedSeries::new(1.0, 0.0, 1.0, vec![1.0, 3.0, 0.0]).unwrap();
        let p = a.multiply(&b).unwrap();
        assert_eq!(p.step, 0.5);
        assert!(close(&p.coeffs, &[1.0, 2.0, 3.0, 6.0], 1e-15));
    }

    #[test]
    fn incommensurate_grids_rejected() {
        let a = GeneralizedSeries::new(1.0, 0.0, 1.0, vec![1.0, 1.0]).unwrap();
        let b = GeneralizedSeries::new(1.0, 0.0, std::f64::consts::SQRT_2, vec![1.0, 1.0]).unwrap();
        assert!(matches!(a.multiply(&b), Err(Error::GridMismatch(..))));
    }

    #[test]
    fn divide_examples() {
        let a = GeneralizedSeries::new(1.0, 0.0, 1.0, vec![1.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(close(&a.divide(&a).unwrap().coeffs, &[1.0, 0.0, 0.0, 0.0], 1e-15));
        let one = GeneralizedSeries::one(1.0, 3);
        assert!(close(&one.divide(&a).unwrap().coeffs, &[1.0, -1.0, 1.0, -1.0], 1e-15));
        let z = GridSeries::new(1.0, vec![0.0, 1.0]).unwrap();
        assert_eq!(GridSeries::constant(1.0, 1.0, 1).div(&z), Err(Error::DivisionSingularity));
    }

    #[test]
    fn power_examples() {
        let s = GeneralizedSeries::new(1.0, 0.0, 1.0, vec![1.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(close(&s.power(2.0).unwrap().coeffs, &[1.0, 2.0, 1.0, 0.0], 1e-14));
        let h = s.power(0.5).unwrap();
        assert!(close(&h.coeffs, &[1.0, 0.5, -0.125, 0.0625], 1e-14));
        let g = GridSeries::new(1.0, vec![-1.0, 1.0]).unwrap();
        assert!(g.powf(0.5).is_err());
        assert!(close(&g.powf(2.0).unwrap().coeffs, &[1.0, -2.0], 1e-15));
    }

    #[test]
    fn power_matches_finite_difference_oracle() {
        // (1 + 0.443153 x)^0.727998: derivatives at 0 via central finite
        // differences of the closed form, divided by n!
        let (a, n) = (0.443153_f64, 0.727998_f64);
        let f = |x: f64| (1.0 + a * x).powf(n);
        let h = 1e-2;
        let d1 = (f(h) - f(-h)) / (2.0 * h);
        let d2 = (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h);
        let d3 = (f(2.0 * h) - 2.0 * f(h) + 2.0 * f(-h) - f(-2.0 * h)) / (2.0 * h * h * h);
        let s = GeneralizedSeries::new(1.0, 0.0, 1.0, vec![1.0, a, 0.0, 0.0]).unwrap().power(n).unwrap();
        assert!((s.coeffs[1] - d1).abs() < 1e-5);
        assert!((s.coeffs[2] - d2 / 2.0).abs() < 1e-5);
        assert!((s.coeffs[3] - d3 / 6.0).abs() < 1e-4);
    }

    #[test]
    fn log_derivative_examples() {
        let s = GeneralizedSeries::new(1.0, 0.0, 1.0, vec![1.0, 2.0, 1.0, 0.0]).unwrap();
        let b = s.log_derivative();
        // 2x/(1+x) = 2x - 2x^2 + 2x^3
        assert!(close(&b.coeffs, &[0.0, 2.0, -2.0, 2.0], 1e-14));
        let c = GeneralizedSeries::one(1.0, 4).log_derivative();
        assert!(c.coeffs.iter().all(|v| *v == 0.0));
        // exp truncation: oracle x f'/f by series multiply/divide
        let e = GeneralizedSeries::new(1.0, 0.0, 1.0, vec![1.0, 1.0, 0.5, 1.0 / 6.0]).unwrap();
        let fprime = GridSeries::new(1.0, vec![1.0, 1.0, 0.5, 0.0]).unwrap();
        let x = GridSeries::new(1.0, vec![0.0, 1.0, 0.0, 0.0]).unwrap();
        let oracle = x.mul(&fprime).unwrap().div(&e.bracket()).unwrap();
        assert!(close(&e.log_derivative().coeffs, &oracle.coeffs, 1e-14));
        assert!(close(&oracle.coeffs, &[0.0, 1.0, 0.0, 0.0], 1e-14));
    }

    #[test]
    fn taylor_from_ode_examples() {
        let s = taylor_from_ode(|f| Ok(f.clone()), 1.0, 6).unwrap();
        let mut fact = 1.0;
        for n in 0..=6 {
            if n > 0 {
                fact *= n as f64;
            }
            assert!((s.coeffs[n] - 1.0 / fact).abs() < 1e-15);
        }
        let rd = taylor_from_ode(|f| Ok(f.powf(-0.5)?.scale(-1.0).add_scalar(0.526)), 0.5, 10).unwrap();
        assert!((rd.amplitude * rd.coeffs[1] - (-0.888214)).abs() < 1e-6);
        assert!(((rd.amplitude * rd.coeffs[10]) / -231.875 - 1.0).abs() < 5e-6);
        let bad = taylor_from_ode(|f| f.powf(-0.5), 0.0, 3);
        assert_eq!(bad, Err(Error::SingularInitialCondition(0.0)));
    }

    #[test]
    fn inverse_series_from_asymptote() {
        let a = AsymptoticForm::new(vec![(1.0, 0.0), (-0.5, -2.0), (-1.125, -4.0)]).unwrap();
        let s = a.to_inverse_series().unwrap();
        assert_eq!(s.step, 2.0);
        assert!(close(&s.coeffs, &[1.0, -0.5, -1.125], 1e-15));
        assert!(AsymptoticForm::new(vec![(1.0, -3.0), (1.0, -2.0)]).is_err());
    }

    #[test]
    fn common_step_reconstruction() {
        assert_eq!(common_step(0.5, 1.0).unwrap().1, 1);
        let (h, p, q) = common_step(1.5, 1.0).unwrap();
        assert!((h - 0.5).abs() < 1e-15 && p == 3 && q == 2);
        assert!(common_step(1.0, std::f64::consts::PI).is_err());
    }
}
