//! The three case studies: Thomas-Fermi, the NLS vortex and the
//! Ruina-Dieterich friction law.

pub mod baselines;
pub mod nls;
pub mod ode;
pub mod ruina_dieterich;
pub mod tables;
pub mod thomas_fermi;

use serde::Serialize;

use crate::corrected::CorrectedApproximant;
use crate::error::{Error, Result};
use crate::pade::PadeApproximant;
use crate::rootapprox::{NestedRootApproximant, RootMixture};
use crate::scalar::Jet;
use crate::series::{AsymptoticForm, GeneralizedSeries};

/// Governing equation `E[f] = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Equation {
    /// `f'' - f^{3/2} / sqrt(x)`
    ThomasFermi,
    /// `f'' + f'/r - f/r^2 + f - f^3`
    Nls,
    /// `f' - b + f^{1-m}`
    RuinaDieterich { b: f64, m: f64 },
}

impl Equation {
    pub fn residual(&self, f: f64, f1: f64, f2: f64, x: f64) -> f64 {
        match *self {
            Equation::ThomasFermi => f2 - f.powf(1.5) / x.sqrt(),
            Equation::Nls => f2 + f1 / x - f / (x * x) + f - f * f * f,
            Equation::RuinaDieterich { b, m } => f1 - b + f.powf(1.0 - m),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ProblemDefinition {
    pub name: String,
    pub equation: Equation,
    pub small_series: GeneralizedSeries,
    pub large_asymptote: Option<AsymptoticForm>,
    /// `hi` may be infinite.
    pub domain: (f64, f64),
    /// `(location, value)`; an infinite location means the limit.
    pub boundary: Vec<(f64, f64)>,
}

/// Anything that can be evaluated as a value and as a second-order jet.
pub trait Approximant {
    fn value(&self, x: f64) -> f64;
    fn jet(&self, x: Jet) -> Jet;
}

macro_rules! approximant_via_eval {
    ($($t:ty),*) => {$(
        impl Approximant for $t {
            fn value(&self, x: f64) -> f64 {
                self.eval(x)
            }
            fn jet(&self, x: Jet) -> Jet {
                self.eval(x)
            }
        }
    )*};
}

approximant_via_eval!(PadeApproximant, NestedRootApproximant, RootMixture, CorrectedApproximant);

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReferenceMetadata {
    pub method: String,
    pub rtol: f64,
    /// Shooting slope (NLS), scale factor (TF) or critical time (RD).
    pub parameter: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReferenceSolution {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub metadata: ReferenceMetadata,
}

impl ReferenceSolution {
    pub fn new(grid: Vec<f64>, values: Vec<f64>, metadata: ReferenceMetadata) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::InvalidConstruction("grid and values differ in length".into()));
        }
        if grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidConstruction("reference grid must be strictly increasing".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Solver("reference solution produced non-finite values".into()));
        }
        Ok(ReferenceSolution { grid, values, metadata })
    }

    /// Value at a grid point.
    pub fn at(&self, x: f64) -> Option<f64> {
        self.grid
            .iter()
            .position(|g| (g - x).abs() <= 1e-12 * x.abs().max(1.0))
            .map(|i| self.values[i])
    }
}

fn sorted_unique(grid: &[f64]) -> Vec<f64> {
    let mut g = grid.to_vec();
    g.sort_by(f64::total_cmp);
    g.dedup();
    g
}

/// Reference numerical solution of `p` on `grid`.
pub fn reference_solution(p: &ProblemDefinition, grid: &[f64]) -> Result<ReferenceSolution> {
    let g = sorted_unique(grid);
    if let Some(x) = g.iter().find(|x| **x < p.domain.0 || **x > p.domain.1) {
        return Err(Error::Parameter(format!("abscissa {x} lies outside the domain of {}", p.name)));
    }
    match p.equation {
        Equation::ThomasFermi => thomas_fermi::reference(&g),
        Equation::Nls => {
            let c = p.small_series.amplitude;
            nls::reference(c, &g)
        }
        Equation::RuinaDieterich { b, m } => {
            let f0 = p.small_series.amplitude * p.small_series.coeffs[0];
            ruina_dieterich::reference(b, m, f0, &g)
        }
    }
}

/// Pointwise defect `|E[f]|` with analytic derivatives, and its maximum.
pub fn defect(p: &ProblemDefinition, f: &dyn Approximant, grid: &[f64]) -> (Vec<f64>, f64) {
    let pts: Vec<f64> = grid.iter().map(|&x| signed_residual(p, f, x).abs()).collect();
    let max = pts.iter().copied().fold(0.0, f64::max);
    (pts, max)
}

/// `E[f](x)` with its sign.
pub fn signed_residual(p: &ProblemDefinition, f: &dyn Approximant, x: f64) -> f64 {
    let j = f.jet(Jet::variable(x));
    p.equation.residual(j.v, j.d1, j.d2, x)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorRow {
    pub x: f64,
    pub value: f64,
    pub reference: f64,
    /// `None` when the reference vanishes.
    pub percent_error: Option<f64>,
}

pub fn percent_error(value: f64, reference: f64) -> Option<f64> {
    (reference != 0.0).then(|| (value - reference) / reference * 100.0)
}

/// `(f - f_ref) / f_ref * 100` at each point of `points`.
pub fn relative_error_table(f: &dyn Approximant, reference: &ReferenceSolution, points: &[f64]) -> Result<Vec<ErrorRow>> {
    points
        .iter()
        .map(|&x| {
            let r = reference
                .at(x)
                .ok_or_else(|| Error::Parameter(format!("reference does not cover x = {x}")))?;
            let v = f.value(x);
            Ok(ErrorRow { x, value: v, reference: r, percent_error: percent_error(v, r) })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residual_of_trivial_functions() {
        assert_eq!(Equation::ThomasFermi.residual(0.0, 0.0, 0.0, 2.0), 0.0);
        let r = 1.7;
        assert!((Equation::Nls.residual(1.0, 0.0, 0.0, r) + 1.0 / (r * r)).abs() < 1e-15);
    }

    #[test]
    fn identical_reference_gives_zero_error() {
        let p = PadeApproximant::new(1.0, vec![1.0, 2.0], vec![1.0, 3.0]).unwrap();
        let grid = vec![0.5, 1.0, 2.0];
        let values = grid.iter().map(|x| p.evaluate(*x)).collect();
        let meta = ReferenceMetadata { method: "closed form".into(), rtol: 0.0, parameter: 0.0 };
        let r = ReferenceSolution::new(grid.clone(), values, meta).unwrap();
        for row in relative_error_table(&p, &r, &grid).unwrap() {
            assert_eq!(row.percent_error, Some(0.0));
        }
        assert_eq!(percent_error(1.0, 0.0), None);
    }
}
