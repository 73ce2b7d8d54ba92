//! Adaptive explicit Runge-Kutta integration with the Dormand-Prince 8(5,3)
//! embedded pair.
//!
//! Step control follows Hairer's DOP853: the 5th- and 3rd-order error
//! estimates are blended, and the step size is scaled by
//! `0.9 * err^(-1/8)` clamped to `[0.2, 10]`.

use crate::dop853_tableau::{A, B, C, E3, E5};
use crate::error::{Error, Result};

const STAGES: usize = 12;
const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-12,
            max_steps: 5_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeSolution<const N: usize> {
    pub y: [f64; N],
    pub accepted: usize,
    pub rejected: usize,
    pub evaluations: usize,
}

fn axpy_stages<const N: usize>(y: &[f64; N], k: &[[f64; N]], coeffs: &[f64], h: f64) -> [f64; N] {
    let mut out = *y;
    for (stage, &c) in k.iter().zip(coeffs) {
        if c != 0.0 {
            for (o, &ks) in out.iter_mut().zip(stage) {
                *o += h * c * ks;
            }
        }
    }
    out
}

fn rms_norm<const N: usize>(v: &[f64; N], scale: &[f64; N]) -> f64 {
    let sum: f64 = v.iter().zip(scale).map(|(x, s)| (x / s).powi(2)).sum();
    sum.sqrt()
}

fn initial_step<const N: usize, F>(
    f: &mut F,
    t0: f64,
    y0: &[f64; N],
    f0: &[f64; N],
    span: f64,
    opts: &OdeOptions,
) -> f64
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
{
    let scale: [f64; N] = std::array::from_fn(|i| opts.atol + y0[i].abs() * opts.rtol);
    let n = N as f64;
    let d0 = rms_norm(y0, &scale) / n.sqrt();
    let d1 = rms_norm(f0, &scale) / n.sqrt();
    let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    let h0 = h0.min(span);
    let y1: [f64; N] = std::array::from_fn(|i| y0[i] + h0 * f0[i]);
    let f1 = f(t0 + h0, &y1);
    let diff: [f64; N] = std::array::from_fn(|i| f1[i] - f0[i]);
    let d2 = rms_norm(&diff, &scale) / n.sqrt() / h0;
    let h1 = if d1 <= 1e-15 && d2 <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(1.0 / 8.0)
    };
    (100.0 * h0).min(h1).min(span)
}

/// Integrates `dy/dt = f(t, y)` from `t0` to `t1 > t0` and returns the state at `t1`.
pub fn integrate<const N: usize, F>(
    mut f: F,
    t0: f64,
    y0: [f64; N],
    t1: f64,
    opts: &OdeOptions,
) -> Result<OdeSolution<N>>
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
{
    let span = t1 - t0;
    if span <= 0.0 {
        return Ok(OdeSolution {
            y: y0,
            accepted: 0,
            rejected: 0,
            evaluations: 0,
        });
    }
    let mut t = t0;
    let mut y = y0;
    let mut fy = f(t, &y);
    let mut evaluations = 2;
    let mut h = initial_step(&mut f, t0, &y0, &fy, span, opts);
    let mut accepted = 0;
    let mut rejected = 0;
    let mut k = [[0.0; N]; STAGES + 1];
    let mut retrying = false;

    while t < t1 {
        if accepted + rejected >= opts.max_steps {
            return Err(Error::Stiffness { t, step: h });
        }
        let min_step = 10.0 * (f64::EPSILON * t.abs()).max(f64::MIN_POSITIVE);
        if h < min_step {
            return Err(Error::Stiffness { t, step: h });
        }
        let last = t + h >= t1;
        let step = if last { t1 - t } else { h };

        k[0] = fy;
        for s in 1..STAGES {
            let ys = axpy_stages(&y, &k[..s], &A[s][..s], step);
            k[s] = f(t + C[s] * step, &ys);
        }
        let y_new = axpy_stages(&y, &k[..STAGES], &B, step);
        let f_new = f(t + step, &y_new);
        k[STAGES] = f_new;
        evaluations += STAGES;

        let scale: [f64; N] = std::array::from_fn(|i| opts.atol + y[i].abs().max(y_new[i].abs()) * opts.rtol);
        let err5: [f64; N] = std::array::from_fn(|i| k.iter().zip(&E5).map(|(ks, &e)| e * ks[i]).sum());
        let err3: [f64; N] = std::array::from_fn(|i| k.iter().zip(&E3).map(|(ks, &e)| e * ks[i]).sum());
        let e5 = rms_norm(&err5, &scale).powi(2);
        let e3 = rms_norm(&err3, &scale).powi(2);
        let err = if e5 == 0.0 && e3 == 0.0 {
            0.0
        } else {
            step.abs() * e5 / ((e5 + 0.01 * e3) * N as f64).sqrt()
        };

        if err <= 1.0 {
            let mut factor = if err == 0.0 {
                MAX_FACTOR
            } else {
                (SAFETY * err.powf(-1.0 / 8.0)).min(MAX_FACTOR)
            };
            if retrying {
                factor = factor.min(1.0);
            }
            retrying = false;
            t = if last { t1 } else { t + step };
            y = y_new;
            fy = f_new;
            accepted += 1;
            h = step * factor;
        } else {
            rejected += 1;
            retrying = true;
            h = step * (SAFETY * err.powf(-1.0 / 8.0)).max(MIN_FACTOR);
        }
    }
    Ok(OdeSolution {
        y,
        accepted,
        rejected,
        evaluations,
    })
}
