//! Scalar root finding: geometric bracket search, bisection, secant polish.

use crate::error::{Error, Result};

pub const ROOT_TOL: f64 = 1e-12;

/// Find a bracket for `f` on the positive axis by scanning geometrically
/// from `lo` to `hi` (both > 0), returning the first sign change.
pub fn bracket_positive<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, per_decade: usize) -> Option<(f64, f64)> {
    let decades = (hi / lo).log10();
    let steps = (decades * per_decade as f64).ceil().max(1.0) as usize;
    let ratio = (hi / lo).powf(1.0 / steps as f64);
    let mut a = lo;
    let mut fa = f(a);
    for _ in 0..steps {
        let b = a * ratio;
        let fb = f(b);
        if fa.is_finite() && fb.is_finite() && (fa == 0.0 || fa.signum() != fb.signum()) {
            return Some((a, b));
        }
        a = b;
        fa = fb;
    }
    None
}

/// Bisection on `[a, b]` followed by secant polishing; `f(a)` and `f(b)`
/// must differ in sign. Converges to `tol` relative to the bracket scale.
pub fn bisect_secant<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> Result<f64> {
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return Err(Error::MatchingFailure(format!(
            "no sign change on [{a}, {b}] (f = {fa}, {fb})"
        )));
    }
    let scale = a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
    // bisection down to a coarse width, then secant inside the bracket
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
        if (b - a).abs() <= 1e-6 * scale {
            break;
        }
    }
    let (mut x0, mut x1) = (a, b);
    let (mut f0, mut f1) = (f(x0), f(x1));
    for _ in 0..50 {
        if f1 == f0 {
            break;
        }
        let x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        if !x2.is_finite() || x2 < a.min(b) || x2 > a.max(b) {
            break;
        }
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f(x1);
        if (x1 - x0).abs() <= tol * scale || f1 == 0.0 {
            return Ok(x1);
        }
    }
    // secant stalled; finish by bisection
    let (mut lo, mut hi) = (a, b);
    let mut flo = f(lo);
    while (hi - lo).abs() > tol * scale {
        let m = 0.5 * (lo + hi);
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == flo.signum() {
            lo = m;
            flo = fm;
        } else {
            hi = m;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let r = bisect_secant(|x| x * x - 2.0, 0.0, 2.0, ROOT_TOL).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn bracket_scan_geometric() {
        let (a, b) = bracket_positive(|x| x - 3.7e3, 1e-6, 1e6, 4).unwrap();
        assert!(a < 3.7e3 && 3.7e3 <= b);
        assert!(bracket_positive(|x| x + 1.0, 1e-6, 1e6, 4).is_none());
    }
}
