//! Scalar abstraction used to evaluate approximants either as plain `f64`
//! or as second-order jets carrying exact first and second derivatives.

use std::ops::{Add, Div, Mul, Neg, Sub};

pub trait Real:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Mul<f64, Output = Self>
{
    fn cst(v: f64) -> Self;
    fn value(self) -> f64;
    fn powf(self, p: f64) -> Self;
    fn sqrt(self) -> Self {
        self.powf(0.5)
    }
    fn ln(self) -> Self;
}

impl Real for f64 {
    fn cst(v: f64) -> Self {
        v
    }
    fn value(self) -> f64 {
        self
    }
    fn powf(self, p: f64) -> Self {
        if p == p.trunc() && p.abs() < 64.0 {
            self.powi(p as i32)
        } else {
            f64::powf(self, p)
        }
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
}

/// Truncated Taylor jet `(f, f', f'')` with respect to one independent variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet {
    pub fn constant(v: f64) -> Self {
        Jet { v, d1: 0.0, d2: 0.0 }
    }

    /// The independent variable seeded at `x`.
    pub fn variable(x: f64) -> Self {
        Jet { v: x, d1: 1.0, d2: 0.0 }
    }

    // chain rule for g(self) given g, g', g'' at self.v
    fn chain(self, g0: f64, g1: f64, g2: f64) -> Self {
        Jet {
            v: g0,
            d1: g1 * self.d1,
            d2: g2 * self.d1 * self.d1 + g1 * self.d2,
        }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet { v: self.v + o.v, d1: self.d1 + o.d1, d2: self.d2 + o.d2 }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet { v: self.v - o.v, d1: self.d1 - o.d1, d2: self.d2 - o.d2 }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        Jet {
            v: self.v * o.v,
            d1: self.d1 * o.v + self.v * o.d1,
            d2: self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
        }
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, o: Jet) -> Jet {
        let w = self.v / o.v;
        let w1 = (self.d1 - w * o.d1) / o.v;
        let w2 = (self.d2 - 2.0 * w1 * o.d1 - w * o.d2) / o.v;
        Jet { v: w, d1: w1, d2: w2 }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet { v: -self.v, d1: -self.d1, d2: -self.d2 }
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(self, c: f64) -> Jet {
        Jet { v: self.v + c, ..self }
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, c: f64) -> Jet {
        Jet { v: self.v * c, d1: self.d1 * c, d2: self.d2 * c }
    }
}

impl Real for Jet {
    fn cst(v: f64) -> Self {
        Jet::constant(v)
    }
    fn value(self) -> f64 {
        self.v
    }
    fn powf(self, p: f64) -> Self {
        if p == 0.0 {
            return Jet::constant(1.0);
        }
        let g0 = Real::powf(self.v, p);
        let g1 = p * Real::powf(self.v, p - 1.0);
        let g2 = if p == 1.0 { 0.0 } else { p * (p - 1.0) * Real::powf(self.v, p - 2.0) };
        self.chain(g0, g1, g2)
    }
    fn ln(self) -> Self {
        self.chain(self.v.ln(), 1.0 / self.v, -1.0 / (self.v * self.v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jet_matches_closed_form_derivatives() {
        // f(x) = x^1.5 / (1 + x^2)
        let x = 0.7_f64;
        let j = Jet::variable(x);
        let f = j.powf(1.5) / (j * j + 1.0);
        let h = 1e-4;
        let g = |x: f64| x.powf(1.5) / (1.0 + x * x);
        let fd1 = (g(x + h) - g(x - h)) / (2.0 * h);
        let fd2 = (g(x + h) - 2.0 * g(x) + g(x - h)) / (h * h);
        assert!((f.v - g(x)).abs() < 1e-15);
        assert!((f.d1 - fd1).abs() < 1e-7);
        assert!((f.d2 - fd2).abs() < 1e-5);
    }

    #[test]
    fn jet_ln_and_sqrt() {
        let j = Jet::variable(2.0);
        let l = j.ln();
        assert!((l.d1 - 0.5).abs() < 1e-15);
        assert!((l.d2 + 0.25).abs() < 1e-15);
        let s = j.sqrt();
        assert!((s.d1 - 0.5 / 2f64.sqrt()).abs() < 1e-15);
    }
}
