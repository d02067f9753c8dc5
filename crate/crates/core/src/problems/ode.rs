//! Adaptive Dormand-Prince 5(4) integrator for small first-order systems.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct Dp45 {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for Dp45 {
    fn default() -> Self {
        Dp45 { rtol: 1e-12, atol: 1e-14, max_steps: 1_000_000 }
    }
}

/// Result of an integration: states at the requested output points that
/// were reached, and the final state.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub outputs: Vec<Vec<f64>>,
    pub t_end: f64,
    pub y_end: Vec<f64>,
    /// `true` when the stop predicate ended the integration early.
    pub stopped: bool,
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

impl Dp45 {
    pub fn new(rtol: f64, atol: f64) -> Self {
        Dp45 { rtol, atol, ..Default::default() }
    }

    /// Integrate `y' = f(t, y)` from `t0` to `t_final` (either direction),
    /// stepping exactly onto each of `outputs` (monotone towards `t_final`).
    /// `stop` is checked after every accepted step.
    pub fn integrate<F, S>(&self, mut f: F, t0: f64, y0: &[f64], t_final: f64, outputs: &[f64], mut stop: S) -> Result<Trajectory>
    where
        F: FnMut(f64, &[f64], &mut [f64]),
        S: FnMut(f64, &[f64]) -> bool,
    {
        let dim = y0.len();
        let dir = if t_final >= t0 { 1.0 } else { -1.0 };
        let span = (t_final - t0).abs();
        let mut t = t0;
        let mut y = y0.to_vec();
        let mut h = (span * 1e-4).max(1e-12);
        let mut k = vec![vec![0.0; dim]; 7];
        let mut tmp = vec![0.0; dim];
        let mut y5 = vec![0.0; dim];
        let mut out = Vec::with_capacity(outputs.len());
        let mut next_out = 0;
        while next_out < outputs.len() && (outputs[next_out] - t0) * dir <= 0.0 {
            out.push(y.clone());
            next_out += 1;
        }
        f(t, &y, &mut k[0]);
        let mut steps = 0;
        while (t_final - t) * dir > 0.0 {
            steps += 1;
            if steps > self.max_steps {
                return Err(Error::Solver(format!("step limit reached at t = {t}")));
            }
            let target = if next_out < outputs.len() { outputs[next_out] } else { t_final };
            let mut clipped = false;
            let h_free = h;
            if h >= (target - t).abs() {
                h = (target - t).abs();
                clipped = true;
            }
            let hs = h * dir;
            for s in 1..7 {
                for i in 0..dim {
                    let mut acc = y[i];
                    for (j, kj) in k.iter().enumerate().take(s) {
                        acc += hs * A[s][j] * kj[i];
                    }
                    tmp[i] = acc;
                }
                f(t + C[s] * hs, &tmp, &mut k[s]);
            }
            let mut err = 0.0;
            for i in 0..dim {
                let mut s5 = y[i];
                let mut s4 = y[i];
                for s in 0..7 {
                    s5 += hs * B5[s] * k[s][i];
                    s4 += hs * B4[s] * k[s][i];
                }
                y5[i] = s5;
                let sc = self.atol + self.rtol * y[i].abs().max(s5.abs());
                err += ((s5 - s4) / sc).powi(2);
            }
            let err = (err / dim as f64).sqrt();
            if !err.is_finite() {
                h *= 0.25;
                if h < 1e-300 {
                    return Err(Error::Solver(format!("non-finite state near t = {t}")));
                }
                continue;
            }
            if err <= 1.0 {
                t = if clipped { target } else { t + hs };
                y.copy_from_slice(&y5);
                // first-same-as-last
                let last = k[6].clone();
                k[0].copy_from_slice(&last);
                if clipped && next_out < outputs.len() && target == outputs[next_out] {
                    out.push(y.clone());
                    next_out += 1;
                }
                if stop(t, &y) {
                    return Ok(Trajectory { outputs: out, t_end: t, y_end: y, stopped: true });
                }
                if clipped {
                    h = h_free;
                    continue;
                }
            }
            let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            h *= factor;
            if h < 1e-14 * t.abs().max(1e-300) {
                return Err(Error::Solver(format!("step size underflow at t = {t}")));
            }
        }
        Ok(Trajectory { outputs: out, t_end: t, y_end: y, stopped: false })
    }
}
