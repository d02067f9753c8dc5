//! Thomas-Fermi equation `f'' = f^{3/2} / sqrt(x)`, `f(0) = 1`, `f(inf) = 0`.

use super::ode::Dp45;
use super::{Equation, ProblemDefinition, ReferenceMetadata, ReferenceSolution};
use crate::corrected::{correcting_series, CorrectedApproximant};
use crate::error::{Error, Result};
use crate::rootapprox::{match_parameters, LevelTemplate, NestedRootApproximant, RootMixture};
use crate::series::{AsymptoticForm, GeneralizedSeries};

/// Initial slope `-f'(0)` of the neutral-atom solution.
pub const B: f64 = 1.588071;

/// Subleading large-x exponent `-3 - (sqrt(73) - 7)/2`, printed as -3.772.
pub fn beta2() -> f64 {
    -3.0 - (73f64.sqrt() - 7.0) / 2.0
}

/// Coefficients of `1 + sum a_n x^{n/2}` through `n = 9`.
pub fn small_coefficients() -> Vec<f64> {
    vec![1.0, 0.0, -B, 4.0 / 3.0, 0.0, -0.635228, 1.0 / 3.0, 0.108084, -0.211743, 0.0899672]
}

pub fn problem() -> ProblemDefinition {
    ProblemDefinition {
        name: "thomas-fermi".into(),
        equation: Equation::ThomasFermi,
        small_series: GeneralizedSeries::new(1.0, 0.0, 0.5, small_coefficients()).expect("valid series"),
        large_asymptote: Some(AsymptoticForm::new(vec![(144.0, -3.0), (1911.02, beta2())]).expect("descending")),
        domain: (0.0, f64::INFINITY),
        boundary: vec![(0.0, 1.0), (f64::INFINITY, 0.0)],
    }
}

fn large(p: &ProblemDefinition) -> Result<&AsymptoticForm> {
    p.large_asymptote
        .as_ref()
        .ok_or_else(|| Error::Parameter("Thomas-Fermi problem needs its large-x asymptote".into()))
}

/// `((1 + A1 x)^{n1} + A2 x^{3/2})^{-2}`
pub fn f2_star(p: &ProblemDefinition) -> Result<NestedRootApproximant> {
    let t = [LevelTemplate { exponent: 1.0, power: None }, LevelTemplate { exponent: 1.5, power: Some(-2.0) }];
    match_parameters(&t, &p.small_series, large(p)?)
}

/// `(((1 + B1 x)^{n1} + B2 x^{3/2})^{n2} + B3 x^2)^{-3/2}` with `n1` taken
/// from `f2*`.
pub fn f3_star(p: &ProblemDefinition, n1: f64) -> Result<NestedRootApproximant> {
    let t = [
        LevelTemplate { exponent: 1.0, power: Some(n1) },
        LevelTemplate { exponent: 1.5, power: None },
        LevelTemplate { exponent: 2.0, power: Some(-1.5) },
    ];
    match_parameters(&t, &p.small_series, large(p)?)
}

/// `(f2* + f3*) / 2`
pub fn irrational_factor(p: &ProblemDefinition) -> Result<RootMixture> {
    let f2 = f2_star(p)?;
    let f3 = f3_star(p, f2.levels[0].power)?;
    RootMixture::average(vec![f2, f3])
}

/// Correcting function through `x^4`.
pub fn c8(p: &ProblemDefinition) -> Result<GeneralizedSeries> {
    correcting_series(&p.small_series, &irrational_factor(p)?, 8)
}

/// `f_k*` for `k` in {4, 6, 8}: plain `[2/2]` and `[3/3]` factors, and the
/// `[4/4]` factor with unit limit at infinity.
pub fn corrected(p: &ProblemDefinition, k: usize) -> Result<CorrectedApproximant> {
    let irr = irrational_factor(p)?;
    let small = p.small_series.truncate(8);
    let (n, limit) = match k {
        4 => (2, None),
        6 => (3, None),
        8 => (4, Some(1.0)),
        _ => return Err(Error::Parameter(format!("Thomas-Fermi corrected approximants exist for k = 4, 6, 8, not {k}"))),
    };
    CorrectedApproximant::build(&small, &irr, n, n, limit, &format!("f{k}*"))
}

const X_OUTER: f64 = 1e7;
const X_INNER: f64 = 1e-10;
// relative amplitude of the subleading tail term at the starting point;
// any value selects a member of the scaling family
const TAIL_RATIO: f64 = -13.27;

fn tail_state(x: f64) -> [f64; 2] {
    let b2 = beta2();
    let lead = 144.0 * x.powi(-3);
    let sub = 144.0 * TAIL_RATIO * x.powf(b2);
    [lead + sub, -3.0 * lead + b2 * sub]
}

// u = ln x: f_uu - f_u = e^{3u/2} f^{3/2}
fn rhs(u: f64, y: &[f64], d: &mut [f64]) {
    d[0] = y[1];
    d[1] = y[1] + (1.5 * u).exp() * y[0].max(0.0).powf(1.5);
}

const RTOL: f64 = 1e-12;

/// Reference solution. A decaying solution is integrated inward in
/// `ln x` from its large-x tail, then rescaled with the symmetry
/// `f(x) -> l^3 f(l x)` so that `f(0) = 1`.
pub fn reference(grid: &[f64]) -> Result<ReferenceSolution> {
    let solver = Dp45::new(RTOL, 1e-300);
    let y0 = tail_state(X_OUTER);
    let (u1, u0) = (X_OUTER.ln(), X_INNER.ln());
    let first = solver.integrate(rhs, u1, &y0, u0, &[], |_, _| false)?;
    // f - x f' removes the linear term and tends to f(0)
    let g0 = first.y_end[0] - first.y_end[1];
    if !(g0 > 0.0 && g0.is_finite()) {
        return Err(Error::Solver(format!("inward integration ended with f(0) estimate {g0}")));
    }
    let lambda = g0.powf(-1.0 / 3.0);

    let positive: Vec<f64> = grid.iter().copied().filter(|x| *x > 0.0).collect();
    if let Some(x) = positive.iter().find(|x| lambda * **x >= X_OUTER || lambda * **x <= X_INNER) {
        return Err(Error::Parameter(format!("x = {x} is outside the reference range")));
    }
    let us: Vec<f64> = positive.iter().rev().map(|x| (lambda * x).ln()).collect();
    let second = solver.integrate(rhs, u1, &y0, u0, &us, |_, _| false)?;
    let mut by_x: Vec<f64> = second.outputs.iter().rev().map(|y| lambda.powi(3) * y[0]).collect();
    let mut values = Vec::with_capacity(grid.len());
    for x in grid {
        values.push(if *x == 0.0 { 1.0 } else { by_x.remove(0) });
    }
    ReferenceSolution::new(
        grid.to_vec(),
        values,
        ReferenceMetadata { method: "inward DP45 in ln x from the x^-3 tail, rescaled to f(0) = 1".into(), rtol: RTOL, parameter: lambda },
    )
}
