//! Ruina-Dieterich friction law `f' = b - f^{1-m}`, `f(0) = f0`. For
//! `m > 1` the solution reaches zero at a finite critical time `t_c`.

use super::ode::Dp45;
use super::{Approximant, Equation, ProblemDefinition, ReferenceMetadata, ReferenceSolution};
use crate::corrected::CorrectedApproximant;
use crate::error::{Error, Result};
use crate::roots::{bisect_secant, ROOT_TOL};
use crate::rootapprox::{Level, NestedRootApproximant, RootMixture};
use crate::series::{taylor_from_ode, GeneralizedSeries};

pub const B: f64 = 0.526;
pub const M: f64 = 1.5;
pub const F0: f64 = 0.5;

const ORDER: usize = 10;
const RTOL: f64 = 1e-13;
// below this value the integration continues in s = f^{m-1}
const F_SWITCH: f64 = 0.05;

fn check(b: f64, m: f64, f0: f64) -> Result<()> {
    if !(f0 > 0.0 && f0.is_finite()) {
        return Err(Error::SingularInitialCondition(f0));
    }
    if !(m > 1.0 && m.is_finite() && b.is_finite()) {
        return Err(Error::Parameter(format!("need m > 1 and finite b, got m = {m}, b = {b}")));
    }
    if b * f0.powf(m - 1.0) >= 1.0 {
        return Err(Error::Parameter(format!("f0 = {f0} does not decay for b = {b}, m = {m}")));
    }
    Ok(())
}

/// Taylor series of the solution through `t^10`.
pub fn small_series(b: f64, m: f64, f0: f64) -> Result<GeneralizedSeries> {
    if !(f0 > 0.0 && f0.is_finite()) {
        return Err(Error::SingularInitialCondition(f0));
    }
    taylor_from_ode(|f| Ok(f.powf(1.0 - m)?.scale(-1.0).add_scalar(b)), f0, ORDER)
}

pub fn problem(b: f64, m: f64, f0: f64) -> Result<ProblemDefinition> {
    check(b, m, f0)?;
    let tc = critical_time(b, m, f0)?;
    Ok(ProblemDefinition {
        name: "ruina-dieterich".into(),
        equation: Equation::RuinaDieterich { b, m },
        small_series: small_series(b, m, f0)?,
        large_asymptote: None,
        domain: (0.0, tc),
        boundary: vec![(0.0, f0), (tc, 0.0)],
    })
}

pub fn default_problem() -> ProblemDefinition {
    problem(B, M, F0).expect("default parameters are valid")
}

fn params(p: &ProblemDefinition) -> Result<(f64, f64, f64)> {
    match p.equation {
        Equation::RuinaDieterich { b, m } => Ok((b, m, p.small_series.amplitude * p.small_series.coeffs[0])),
        _ => Err(Error::Parameter(format!("{} is not a Ruina-Dieterich problem", p.name))),
    }
}

fn rhs_t(b: f64, m: f64) -> impl Fn(f64, &[f64], &mut [f64]) {
    move |_, y, d| d[0] = b - y[0].max(f64::MIN_POSITIVE).powf(1.0 - m)
}

// dt/ds with s = f^{m-1}
fn rhs_s(b: f64, m: f64) -> impl Fn(f64, &[f64], &mut [f64]) {
    move |s, _, d| d[0] = -s.max(0.0).powf(1.0 / (m - 1.0)) / ((m - 1.0) * (1.0 - b * s))
}

struct Switch {
    t: f64,
    s: f64,
}

// phase 1 in t with outputs on `grid`; returns the values reached and the switch point
fn phase_one(b: f64, m: f64, f0: f64, grid: &[f64]) -> Result<(Vec<f64>, Switch)> {
    let solver = Dp45::new(RTOL, 1e-300);
    let tr = solver.integrate(rhs_t(b, m), 0.0, &[f0], 1e6, grid, |_, y| y[0] <= F_SWITCH)?;
    if !tr.stopped {
        return Err(Error::Solver("solution did not approach zero".into()));
    }
    let mut out: Vec<f64> = tr.outputs.iter().map(|y| y[0]).collect();
    // the last output may coincide with the stopping step
    while out.len() > 0 && grid[out.len() - 1] > tr.t_end {
        out.pop();
    }
    Ok((out, Switch { t: tr.t_end, s: tr.y_end[0].powf(m - 1.0) }))
}

fn t_of_s(b: f64, m: f64, from: (f64, f64), s: f64) -> Result<f64> {
    if s == from.0 {
        return Ok(from.1);
    }
    let tr = Dp45::new(RTOL, 1e-300).integrate(rhs_s(b, m), from.0, &[from.1], s, &[], |_, _| false)?;
    Ok(tr.y_end[0])
}

/// Critical time where the solution vanishes.
pub fn critical_time(b: f64, m: f64, f0: f64) -> Result<f64> {
    check(b, m, f0)?;
    let (_, sw) = phase_one(b, m, f0, &[])?;
    t_of_s(b, m, (sw.s, sw.t), 0.0)
}

/// `f0 (1 - t / t_c)^{1/m}`
pub fn irrational_factor(f0: f64, m: f64, tc: f64) -> Result<NestedRootApproximant> {
    NestedRootApproximant::new(f0, 0.0, vec![Level::new(-1.0 / tc, 1.0, 1.0 / m)], Some((0.0, tc)))
}

/// `f_k* = f_irr P_{k/2, k/2}(t)` for `k` in {4, 6, 8, 10}.
pub fn corrected(p: &ProblemDefinition, k: usize) -> Result<CorrectedApproximant> {
    if !matches!(k, 4 | 6 | 8 | 10) {
        return Err(Error::Parameter(format!("Ruina-Dieterich corrected approximants exist for k = 4, 6, 8, 10, not {k}")));
    }
    let (_, m, f0) = params(p)?;
    let irr = RootMixture::single(irrational_factor(f0, m, p.domain.1)?);
    CorrectedApproximant::build(&p.small_series, &irr, k / 2, k / 2, None, &format!("f{k}*"))
}

/// Reference solution: adaptive integration in `t` down to `f = 0.05`,
/// then in `s = f^{m-1}` where `dt/ds` stays bounded up to `t_c`.
pub fn reference(b: f64, m: f64, f0: f64, grid: &[f64]) -> Result<ReferenceSolution> {
    check(b, m, f0)?;
    let (mut values, sw) = phase_one(b, m, f0, grid)?;
    let tc = t_of_s(b, m, (sw.s, sw.t), 0.0)?;
    let rest = &grid[values.len()..];
    if let Some(t) = rest.iter().find(|t| **t > tc * (1.0 + 1e-12)) {
        return Err(Error::Parameter(format!("t = {t} lies beyond the critical time {tc}")));
    }
    if !rest.is_empty() {
        // nodes (s, t(s)) on a uniform s grid; each target is bracketed between two
        let nodes = 32;
        let ss: Vec<f64> = (0..=nodes).map(|i| sw.s * (nodes - i) as f64 / nodes as f64).collect();
        let tr = Dp45::new(RTOL, 1e-300).integrate(rhs_s(b, m), sw.s, &[sw.t], 0.0, &ss, |_, _| false)?;
        let ts: Vec<f64> = tr.outputs.iter().map(|y| y[0]).collect();
        for &t in rest {
            if t >= tc {
                values.push(0.0);
                continue;
            }
            let j = ts.iter().position(|tj| *tj >= t).unwrap_or(nodes).max(1);
            let from = (ss[j - 1], ts[j - 1]);
            let s = bisect_secant(|s| t_of_s(b, m, from, s).unwrap_or(f64::NAN) - t, ss[j], ss[j - 1], ROOT_TOL * 1e-2)?;
            values.push(s.max(0.0).powf(1.0 / (m - 1.0)));
        }
    }
    ReferenceSolution::new(
        grid.to_vec(),
        values,
        ReferenceMetadata { method: "DP45 in t, then in s = f^(m-1) up to the critical time".into(), rtol: RTOL, parameter: tc },
    )
}

/// `sup |f(t) - f_ref(t)|` over `points` uniform abscissas on `[0, t_c]`.
pub fn deviation_sup(p: &ProblemDefinition, f: &dyn Approximant, points: usize) -> Result<f64> {
    let (b, m, f0) = params(p)?;
    let tc = p.domain.1;
    let grid: Vec<f64> = (0..points).map(|i| tc * i as f64 / (points - 1) as f64).collect();
    let r = reference(b, m, f0, &grid)?;
    Ok(grid.iter().zip(&r.values).map(|(t, v)| (f.value(*t) - v).abs()).fold(0.0, f64::max))
}
