//! Padé approximants in a fractional variable `z = x^gamma`, with optional
//! matching conditions at infinity (two-point form).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Solve};
use crate::scalar::Real;
use crate::series::{GeneralizedSeries, GridSeries};

/// `P(x) = sum a_m z^m / sum b_n z^n`, `z = x^gamma`, `b_0 = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPade")]
pub struct PadeApproximant {
    pub gamma: f64,
    pub num: Vec<f64>,
    pub den: Vec<f64>,
}

#[derive(Deserialize)]
struct RawPade {
    gamma: f64,
    num: Vec<f64>,
    den: Vec<f64>,
}

impl TryFrom<RawPade> for PadeApproximant {
    type Error = Error;
    fn try_from(r: RawPade) -> Result<Self> {
        PadeApproximant::new(r.gamma, r.num, r.den)
    }
}

/// Which conditions a fit imposes.
///
/// `small_order` is the highest power of `z` matched at the origin. `large`
/// holds target coefficients `q_0, q_1, ...` of `P(z) z^{N-M}` expanded in
/// `1/z`; for a diagonal approximant `q_0` is the limit at infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct FitConditions {
    pub small_order: usize,
    pub large: Vec<f64>,
}

const CONSISTENCY_TOL: f64 = 1e-10;

impl PadeApproximant {
    pub fn new(gamma: f64, num: Vec<f64>, den: Vec<f64>) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::InvalidConstruction(format!("gamma must be positive, got {gamma}")));
        }
        if num.is_empty() || den.is_empty() {
            return Err(Error::InvalidConstruction("empty numerator or denominator".into()));
        }
        if den[0] != 1.0 {
            return Err(Error::InvalidConstruction(format!("den[0] must be 1, got {}", den[0])));
        }
        Ok(PadeApproximant { gamma, num, den })
    }

    /// The identity approximant `P = 1`.
    pub fn one(gamma: f64) -> Self {
        PadeApproximant { gamma, num: vec![1.0], den: vec![1.0] }
    }

    pub fn m(&self) -> usize {
        self.num.len() - 1
    }

    pub fn n(&self) -> usize {
        self.den.len() - 1
    }

    /// Fit `[M/N]` to a normalized correcting series with `alpha = 0`.
    ///
    /// Without `infinity_limit` the series is matched through order `M+N`.
    /// With it (`M = N` required) the highest matching condition is replaced
    /// by `num[N] = limit * den[N]`.
    pub fn from_series(c: &GeneralizedSeries, m: usize, n: usize, infinity_limit: Option<f64>) -> Result<Self> {
        if c.alpha.abs() > 1e-12 {
            return Err(Error::Parameter(format!("correcting series must have alpha = 0, got {}", c.alpha)));
        }
        let raw = c.to_grid().expect("alpha = 0 lies on every grid");
        let cond = match infinity_limit {
            None => FitConditions { small_order: m + n, large: vec![] },
            Some(l) => {
                if m != n {
                    return Err(Error::Parameter(format!("infinity limit requires M = N, got [{m}/{n}]")));
                }
                if m == 0 {
                    return Err(Error::Parameter("[0/0] cannot carry an infinity constraint".into()));
                }
                FitConditions { small_order: m + n - 1, large: vec![l] }
            }
        };
        Self::fit(&raw, m, n, &cond)
    }

    /// General two-point fit on raw coefficients. The number of conditions,
    /// `small_order + 1 + large.len()`, must equal `M + N + 1`.
    pub fn fit(c: &GridSeries, m: usize, n: usize, cond: &FitConditions) -> Result<Self> {
        let unknowns = m + n + 1;
        let equations = cond.small_order + 1 + cond.large.len();
        if equations != unknowns {
            return Err(Error::Parameter(format!(
                "[{m}/{n}] has {unknowns} free coefficients but {equations} conditions were given"
            )));
        }
        if c.order() < cond.small_order {
            return Err(Error::InsufficientCoefficients { needed: cond.small_order, available: c.order() });
        }
        let (a, b) = Self::system(c, m, n, cond);
        match linalg::solve(a.clone(), b.clone()) {
            Solve::Unique(x) => Ok(Self::from_unknowns(c.step, m, n, &x)),
            Solve::Singular { pivot } => Self::reduced_solution(c, m, n, &a, &b)
                .ok_or(Error::DegenerateTable { m, n, pivot }),
        }
    }

    // unknown layout: a_0..a_M, then b_1..b_N
    fn system(c: &GridSeries, m: usize, n: usize, cond: &FitConditions) -> (Vec<Vec<f64>>, Vec<f64>) {
        let size = m + n + 1;
        let mut rows = Vec::with_capacity(size);
        let mut rhs = Vec::with_capacity(size);
        for k in 0..=cond.small_order {
            let mut row = vec![0.0; size];
            if k <= m {
                row[k] = 1.0;
            }
            for j in 1..=k.min(n) {
                row[m + j] = -c.coeff(k - j);
            }
            rows.push(row);
            rhs.push(c.coeff(k));
        }
        let q = &cond.large;
        for k in 0..q.len() {
            let mut row = vec![0.0; size];
            if k <= m {
                row[m - k] = 1.0;
            }
            let mut r = 0.0;
            for (i, qi) in q.iter().enumerate().take(k + 1) {
                // coefficient of b_{N-k+i}
                let idx = n as isize - k as isize + i as isize;
                if idx == 0 {
                    r += qi;
                } else if idx > 0 {
                    row[m + idx as usize] -= qi;
                }
            }
            rows.push(row);
            rhs.push(r);
        }
        (rows, rhs)
    }

    fn from_unknowns(gamma: f64, m: usize, n: usize, x: &[f64]) -> Self {
        let num = x[..=m].to_vec();
        let mut den = vec![1.0];
        den.extend_from_slice(&x[m + 1..m + 1 + n]);
        PadeApproximant { gamma, num, den }
    }

    // Rank-deficient but consistent systems (Padé-table blocks) admit the
    // lower-degree solution padded with zeros.
    fn reduced_solution(
        c: &GridSeries,
        m: usize,
        n: usize,
        a: &[Vec<f64>],
        b: &[f64],
    ) -> Option<Self> {
        let scale = b.iter().chain(c.coeffs.iter()).fold(1.0_f64, |s, v| s.max(v.abs()));
        for d in 1..=m.min(n) {
            let (mr, nr) = (m - d, n - d);
            // plain fit of the smaller block; the full system is checked below
            let reduced = FitConditions { small_order: mr + nr, large: vec![] };
            if c.order() < reduced.small_order {
                continue;
            }
            let (ra, rb) = Self::system(c, mr, nr, &reduced);
            let Solve::Unique(x) = linalg::solve(ra, rb) else { continue };
            let small = Self::from_unknowns(c.step, mr, nr, &x);
            let mut full = vec![0.0; m + n + 1];
            full[..=mr].copy_from_slice(&small.num);
            full[m + 1..m + 1 + nr].copy_from_slice(&small.den[1..]);
            let consistent = a.iter().zip(b).all(|(row, bi)| {
                let lhs: f64 = row.iter().zip(&full).map(|(r, x)| r * x).sum();
                (lhs - bi).abs() <= CONSISTENCY_TOL * scale
            });
            if consistent {
                return Some(Self::from_unknowns(c.step, m, n, &full));
            }
        }
        None
    }

    pub fn eval<T: Real>(&self, x: T) -> T {
        let z = if self.gamma == 1.0 { x } else { x.powf(self.gamma) };
        horner(&self.num, z) / horner(&self.den, z)
    }

    /// Value at `x >= 0`; a vanishing denominator yields a signed infinity.
    pub fn evaluate(&self, x: f64) -> f64 {
        self.eval(x)
    }

    pub fn eval_den(&self, x: f64) -> f64 {
        horner(&self.den, x.powf(self.gamma))
    }

    /// Real zeros of the denominator in `[lo, hi]`, located by sign changes
    /// on a uniform grid in `z` and refined by bisection.
    pub fn find_poles(&self, lo: f64, hi: f64, samples: usize) -> Vec<f64> {
        assert!(lo < hi && samples >= 2, "find_poles needs lo < hi and samples >= 2");
        let (zlo, zhi) = (lo.max(0.0).powf(self.gamma), hi.powf(self.gamma));
        let q = |z: f64| horner(&self.den, z);
        let dz = (zhi - zlo) / (samples - 1) as f64;
        let mut poles = Vec::new();
        let mut z0 = zlo;
        let mut q0 = q(z0);
        if q0 == 0.0 {
            poles.push(z0);
        }
        for i in 1..samples {
            let z1 = zlo + dz * i as f64;
            let q1 = q(z1);
            if q1 == 0.0 {
                poles.push(z1);
            } else if q0 != 0.0 && q0.signum() != q1.signum() {
                let (mut a, mut b, mut qa) = (z0, z1, q0);
                while (b - a) > 1e-12 * b.abs().max(1.0) {
                    let mid = 0.5 * (a + b);
                    let qm = q(mid);
                    if qm == 0.0 {
                        a = mid;
                        b = mid;
                        break;
                    }
                    if qm.signum() == qa.signum() {
                        a = mid;
                        qa = qm;
                    } else {
                        b = mid;
                    }
                }
                poles.push(0.5 * (a + b));
            }
            z0 = z1;
            q0 = q1;
        }
        poles.into_iter().map(|z| z.powf(1.0 / self.gamma)).collect()
    }

    /// Limit as `x -> infinity` using the effective (trailing-zero trimmed)
    /// degrees: finite when equal, zero when the denominator dominates.
    pub fn limit_at_infinity(&self) -> f64 {
        let (num, den) = (trim(&self.num), trim(&self.den));
        let (m, n) = (num.len() - 1, den.len() - 1);
        let ratio = num[m] / den[n];
        match m.cmp(&n) {
            std::cmp::Ordering::Equal => ratio,
            std::cmp::Ordering::Less => 0.0,
            std::cmp::Ordering::Greater => f64::INFINITY.copysign(ratio),
        }
    }

    /// Taylor expansion in `z` through `order`.
    pub fn expand_small(&self, order: usize) -> GridSeries {
        let pad = |v: &[f64]| {
            let mut out = v.to_vec();
            out.resize(order + 1, 0.0);
            out.truncate(order + 1);
            GridSeries { step: self.gamma, coeffs: out }
        };
        pad(&self.num).div(&pad(&self.den)).expect("den[0] = 1")
    }

    /// Coefficients of `P(z) z^{N-M}` in powers of `1/z` through `order`.
    pub fn expand_large(&self, order: usize) -> Result<Vec<f64>> {
        let rev = |v: &[f64]| {
            let mut out: Vec<f64> = v.iter().rev().copied().collect();
            out.resize(order + 1, 0.0);
            out.truncate(order + 1);
            GridSeries { step: self.gamma, coeffs: out }
        };
        Ok(rev(&self.num).div(&rev(&self.den))?.coeffs)
    }
}

fn trim(v: &[f64]) -> &[f64] {
    let last = v.iter().rposition(|c| *c != 0.0).unwrap_or(0);
    &v[..=last]
}

pub(crate) fn horner<T: Real>(coeffs: &[f64], z: T) -> T {
    let mut it = coeffs.iter().rev();
    let first = *it.next().expect("non-empty polynomial");
    it.fold(T::cst(first), |acc, c| acc * z + *c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_with_infinity_constraint() {
        let one = GeneralizedSeries::one(1.0, 4);
        let p = PadeApproximant::from_series(&one, 1, 1, Some(1.0)).unwrap();
        assert_eq!(p.num, p.den);
        for x in [0.0, 0.3, 7.0, 1e6] {
            assert!((p.evaluate(x) - 1.0).abs() < 1e-15);
        }
        let p = PadeApproximant::from_series(&one, 2, 2, Some(1.0)).unwrap();
        assert!((p.evaluate(42.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn geometric_series_is_exact() {
        // 1/(1+x) recovered as [0/1] and, through the degenerate block, [1/2]
        let s = GeneralizedSeries::new(1.0, 0.0, 1.0, vec![1.0, -1.0, 1.0, -1.0, 1.0]).unwrap();
        let p = PadeApproximant::from_series(&s, 0, 1, None).unwrap();
        assert!((p.den[1] - 1.0).abs() < 1e-15);
        let q = PadeApproximant::from_series(&s, 1, 2, None).unwrap();
        assert!((q.evaluate(3.0) - 0.25).abs() < 1e-14);
    }

    #[test]
    fn order_deficit_reported() {
        let s = GeneralizedSeries::new(1.0, 0.0, 1.0, vec![1.0, 0.5, 0.25]).unwrap();
        assert!(matches!(
            PadeApproximant::from_series(&s, 2, 2, None),
            Err(Error::InsufficientCoefficients { needed: 4, available: 2 })
        ));
        assert!(PadeApproximant::from_series(&s, 1, 1, Some(2.0)).is_ok());
    }

    #[test]
    fn explicit_pole_found() {
        let p = PadeApproximant::new(1.0, vec![1.0], vec![1.0, -1.0]).unwrap();
        let poles = p.find_poles(0.0, 2.0, 50);
        assert_eq!(poles.len(), 1);
        assert!((poles[0] - 1.0).abs() < 1e-11);
        assert!(PadeApproximant::one(1.0).find_poles(0.0, 100.0, 100).is_empty());
        assert!(p.evaluate(1.0).is_infinite());
    }

    #[test]
    fn limits() {
        let p = PadeApproximant::new(0.5, vec![1.0, 2.0], vec![1.0, 3.0, 4.0]).unwrap();
        assert_eq!(p.limit_at_infinity(), 0.0);
        let q = PadeApproximant::new(2.0, vec![1.0, 0.0674195, 0.000899209], vec![1.0, 0.184221, 0.00409531]).unwrap();
        assert!((q.limit_at_infinity() - 0.000899209 / 0.00409531).abs() < 1e-15);
        let r = PadeApproximant::new(1.0, vec![1.0, -2.0], vec![1.0]).unwrap();
        assert_eq!(r.limit_at_infinity(), f64::NEG_INFINITY);
    }

    #[test]
    fn large_expansion_conditions_are_met() {
        // fit [2/2] with two small and two large conditions; check both ends
        let c = GridSeries::new(1.0, vec![1.0, -0.3, 0.2, 0.7]).unwrap();
        let cond = FitConditions { small_order: 2, large: vec![0.8, 0.1] };
        let p = PadeApproximant::fit(&c, 2, 2, &cond).unwrap();
        let s = p.expand_small(2);
        for k in 0..=2 {
            assert!((s.coeffs[k] - c.coeffs[k]).abs() < 1e-13);
        }
        let l = p.expand_large(1).unwrap();
        assert!((l[0] - 0.8).abs() < 1e-13 && (l[1] - 0.1).abs() < 1e-13);
    }

    #[test]
    fn condition_count_checked() {
        let c = GridSeries::new(1.0, vec![1.0, 1.0, 1.0]).unwrap();
        let cond = FitConditions { small_order: 2, large: vec![1.0] };
        assert!(matches!(PadeApproximant::fit(&c, 1, 1, &cond), Err(Error::Parameter(_))));
    }
}
