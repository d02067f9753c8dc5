//! Vortex profile of the nonlinear Schrödinger equation
//! `f'' + f'/r - f/r^2 + f - f^3 = 0`, `f(0) = 0`, `f(inf) = 1`.

use super::ode::Dp45;
use super::{Equation, ProblemDefinition, ReferenceMetadata, ReferenceSolution};
use crate::corrected::{correcting_series, large_targets, CorrectedApproximant};
use crate::error::{Error, Result};
use crate::pade::{FitConditions, PadeApproximant};
use crate::roots::{bisect_secant, ROOT_TOL};
use crate::rootapprox::{Level, NestedRootApproximant, RootMixture};
use crate::series::{AsymptoticForm, GeneralizedSeries};

/// Slope at the origin used for the series (Ginzburg-Sobyanin value).
pub const C_GS: f64 = 0.58319;

/// `[1, a1, a2, a3, a4]` of `c r (1 + a1 r^2 + ... + a4 r^8)`.
pub fn small_coefficients(c: f64) -> Vec<f64> {
    let c2 = c * c;
    vec![
        1.0,
        -1.0 / 8.0,
        (1.0 + 8.0 * c2) / 192.0,
        -(1.0 + 80.0 * c2) / 9216.0,
        (1.0 + 656.0 * c2 + 1152.0 * c2 * c2) / 737280.0,
    ]
}

/// `1 - 1/(2 r^2) - 9/(8 r^4) - 161/(16 r^6)`
pub fn large_asymptote() -> AsymptoticForm {
    AsymptoticForm::new(vec![(1.0, 0.0), (-0.5, -2.0), (-9.0 / 8.0, -4.0), (-161.0 / 16.0, -6.0)]).expect("descending")
}

pub fn problem(c: f64) -> Result<ProblemDefinition> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::Parameter(format!("slope c must be positive, got {c}")));
    }
    Ok(ProblemDefinition {
        name: "nls-vortex".into(),
        equation: Equation::Nls,
        small_series: GeneralizedSeries::new(c, 1.0, 2.0, small_coefficients(c))?,
        large_asymptote: Some(large_asymptote()),
        domain: (0.0, f64::INFINITY),
        boundary: vec![(0.0, 0.0), (f64::INFINITY, 1.0)],
    })
}

/// `c r / sqrt(1 + A r^2)`
pub fn irrational_factor(c: f64, a: f64) -> Result<NestedRootApproximant> {
    NestedRootApproximant::new(c, 1.0, vec![Level::new(a, 2.0, -0.5)], None)
}

// P_{2/2} in r^2 through r^4 at the origin, plus q0 and q1 at infinity
fn two_point(p: &ProblemDefinition, a: f64) -> Result<(CorrectedApproximant, f64)> {
    let irr = RootMixture::single(irrational_factor(p.small_series.amplitude, a)?);
    let large = p.large_asymptote.as_ref().expect("NLS has a large asymptote");
    let c = correcting_series(&p.small_series, &irr, p.small_series.order())?;
    let q = large_targets(large, &irr, c.step, 2, 2, 3)?;
    let raw = c.to_grid().expect("alpha = 0");
    let pade = PadeApproximant::fit(&raw, 2, 2, &FitConditions { small_order: 2, large: q[..2].to_vec() })?;
    // the next large coefficient is left free; its mismatch calibrates A
    let miss = pade.expand_large(2)?[2] - q[2];
    Ok((CorrectedApproximant::new(irr, pade, "f4*")?, miss))
}

/// Amplitude `A` of the irrational factor, fixed by requiring the
/// corrected approximant to reproduce the `r^-4` term at infinity as well.
pub fn calibrate_a(p: &ProblemDefinition) -> Result<f64> {
    let miss = |a: f64| two_point(p, a).map(|r| r.1).unwrap_or(f64::NAN);
    // scan upward from small A for the first sign change
    let mut lo = 1e-3;
    let mut f_lo = miss(lo);
    while lo < 1.0 {
        let hi = lo * 1.05;
        let f_hi = miss(hi);
        if f_lo.is_finite() && f_hi.is_finite() && f_lo.signum() != f_hi.signum() {
            return bisect_secant(miss, lo, hi, ROOT_TOL);
        }
        lo = hi;
        f_lo = f_hi;
    }
    Err(Error::MatchingFailure("no amplitude A reproduces the r^-4 asymptotic term".into()))
}

/// `f4* = c r (1 + A r^2)^{-1/2} P_{2/2}(r^2)` with calibrated `A`.
pub fn f4_star(p: &ProblemDefinition) -> Result<CorrectedApproximant> {
    Ok(two_point(p, calibrate_a(p)?)?.0)
}

const R0: f64 = 1e-3;
const R_MAX: f64 = 40.0;
const RTOL: f64 = 1e-12;

fn start_state(c: f64) -> [f64; 2] {
    let a = small_coefficients(c);
    let r2 = R0 * R0;
    let mut f = 0.0;
    let mut df = 0.0;
    for (k, ak) in a.iter().enumerate().rev() {
        f = f * r2 + ak;
        df = df * r2 + (2 * k + 1) as f64 * ak;
    }
    [c * R0 * f, c * df]
}

fn rhs(r: f64, y: &[f64], d: &mut [f64]) {
    d[0] = y[1];
    d[1] = -y[1] / r + y[0] / (r * r) - y[0] + y[0].powi(3);
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Shot {
    Over,
    Under,
    Undecided,
}

fn shoot(c: f64, solver: &Dp45) -> Result<Shot> {
    let mut verdict = Shot::Undecided;
    solver.integrate(rhs, R0, &start_state(c), R_MAX, &[], |_, y| {
        if y[0] > 1.0 {
            verdict = Shot::Over;
        } else if y[1] < 0.0 {
            verdict = Shot::Under;
        }
        verdict != Shot::Undecided
    })?;
    Ok(verdict)
}

/// Slope `c` of the vortex solution by bisection on the overshoot /
/// undershoot classification at `r <= 40`.
pub fn shooting_slope(seed: f64) -> Result<(f64, f64)> {
    let solver = Dp45::new(RTOL, 1e-300);
    let (mut lo, mut hi) = (0.9 * seed, 1.1 * seed);
    let (s_lo, s_hi) = (shoot(lo, &solver)?, shoot(hi, &solver)?);
    if s_lo != Shot::Under || s_hi != Shot::Over {
        return Err(Error::Solver(format!("slope bracket [{lo}, {hi}] classified as {s_lo:?}/{s_hi:?}")));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        match shoot(mid, &solver)? {
            Shot::Over => hi = mid,
            Shot::Under => lo = mid,
            Shot::Undecided => {
                lo = mid;
                hi = mid;
            }
        }
    }
    Ok((lo, hi))
}

/// Reference profile. Values at the two ends of the final slope bracket
/// must agree to 1e-9, otherwise the grid reaches beyond what the shooting
/// resolves.
pub fn reference(seed: f64, grid: &[f64]) -> Result<ReferenceSolution> {
    let (lo, hi) = shooting_slope(seed)?;
    let solver = Dp45::new(RTOL, 1e-300);
    let positive: Vec<f64> = grid.iter().copied().filter(|r| *r > 0.0).collect();
    let run = |c: f64| -> Result<Vec<f64>> {
        let end = positive.last().copied().unwrap_or(R0).max(R0);
        let pts: Vec<f64> = positive.iter().copied().filter(|r| *r > R0).collect();
        let tr = solver.integrate(rhs, R0, &start_state(c), end, &pts, |_, _| false)?;
        // points inside the start radius come from the series
        let mut out = Vec::new();
        let mut it = tr.outputs.iter();
        for r in &positive {
            if *r <= R0 {
                out.push(c * r * small_coefficients(c).iter().rev().fold(0.0, |acc, a| acc * r * r + a));
            } else {
                out.push(it.next().expect("output per grid point")[0]);
            }
        }
        Ok(out)
    };
    let (v_lo, v_hi) = (run(lo)?, run(hi)?);
    for ((r, a), b) in positive.iter().zip(&v_lo).zip(&v_hi) {
        if (a - b).abs() > 1e-9 {
            return Err(Error::Solver(format!(
                "shooting bracket [{lo}, {hi}] does not resolve r = {r}: values {a} and {b}"
            )));
        }
    }
    let mut it = v_lo.iter().zip(&v_hi);
    let values = grid
        .iter()
        .map(|r| if *r == 0.0 { 0.0 } else { it.next().map(|(a, b)| 0.5 * (a + b)).unwrap() })
        .collect();
    ReferenceSolution::new(
        grid.to_vec(),
        values,
        ReferenceMetadata { method: "bisection shooting on f'(0), DP45 from the series start".into(), rtol: RTOL, parameter: 0.5 * (lo + hi) },
    )
}
