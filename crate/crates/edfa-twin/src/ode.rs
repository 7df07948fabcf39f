//! Adaptive Runge–Kutta integration.
//!
//! Classic 4th-order steps with a halved-step (step-doubling) error
//! estimate: each trial step is taken once at full size and twice at half
//! size; the difference bounds the local truncation error, the accepted
//! value is the Richardson-extrapolated combination, and the step size
//! adapts to hold the error within tolerance.
//!
//! The driver is generic over the right-hand side, so quadratures ride
//! along as extra state components (`dy/dz = g(z)`), sharing the same
//! stages and accuracy as the main variables.

use crate::error::{Error, Result};

/// Integration controls.
#[derive(Debug, Clone, Copy)]
pub struct Rk4Options {
    /// Relative tolerance on each state component per step.
    pub rtol: f64,
    /// Absolute tolerance floor, for components passing through zero.
    pub atol: f64,
    /// First trial step, as a fraction of the interval.
    pub initial_step_fraction: f64,
    /// Smallest allowed step, as a fraction of the interval; shrinking
    /// below this aborts with a step-underflow error.
    pub min_step_fraction: f64,
}

impl Default for Rk4Options {
    fn default() -> Self {
        Rk4Options {
            rtol: 1e-9,
            atol: 1e-12,
            initial_step_fraction: 1.0 / 64.0,
            min_step_fraction: 1e-12,
        }
    }
}

/// One classic RK4 step of size `h` from (`z`, `y`) into `out`.
fn rk4_step<F>(f: &F, z: f64, y: &[f64], h: f64, out: &mut [f64], scratch: &mut Scratch)
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    let n = y.len();
    let Scratch { k1, k2, k3, k4, tmp } = scratch;

    f(z, y, k1);
    for i in 0..n {
        tmp[i] = y[i] + 0.5 * h * k1[i];
    }
    f(z + 0.5 * h, tmp, k2);
    for i in 0..n {
        tmp[i] = y[i] + 0.5 * h * k2[i];
    }
    f(z + 0.5 * h, tmp, k3);
    for i in 0..n {
        tmp[i] = y[i] + h * k3[i];
    }
    f(z + h, tmp, k4);
    for i in 0..n {
        out[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

struct Scratch {
    k1: Vec<f64>,
    k2: Vec<f64>,
    k3: Vec<f64>,
    k4: Vec<f64>,
    tmp: Vec<f64>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            k1: vec![0.0; n],
            k2: vec![0.0; n],
            k3: vec![0.0; n],
            k4: vec![0.0; n],
            tmp: vec![0.0; n],
        }
    }
}

/// Integrates `dy/dz = f(z, y)` from `z0` to `z1` and returns y(z1).
pub fn integrate<F>(f: F, y0: &[f64], z0: f64, z1: f64, opts: Rk4Options) -> Result<Vec<f64>>
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    let span = z1 - z0;
    if span == 0.0 {
        return Ok(y0.to_vec());
    }
    let n = y0.len();
    let mut y = y0.to_vec();
    let mut z = z0;
    let mut h = span * opts.initial_step_fraction;
    let min_step = span.abs() * opts.min_step_fraction;

    let mut scratch = Scratch::new(n);
    let mut full = vec![0.0; n];
    let mut half_mid = vec![0.0; n];
    let mut half = vec![0.0; n];

    while (z1 - z).abs() > span.abs() * 1e-15 {
        // Land exactly on the endpoint.
        if (h > 0.0 && z + h > z1) || (h < 0.0 && z + h < z1) {
            h = z1 - z;
        }

        rk4_step(&f, z, &y, h, &mut full, &mut scratch);
        rk4_step(&f, z, &y, 0.5 * h, &mut half_mid, &mut scratch);
        rk4_step(&f, z + 0.5 * h, &half_mid, 0.5 * h, &mut half, &mut scratch);

        // RK4 local error ~ C·h⁵; the full/half difference is (15/16)·C·h⁵,
        // so the halved-step result errs by roughly (half − full)/15.
        let mut err = 0.0f64;
        for i in 0..n {
            let scale = opts.atol + opts.rtol * y[i].abs().max(half[i].abs());
            let e = (half[i] - full[i]).abs() / (15.0 * scale);
            if !e.is_finite() {
                err = f64::INFINITY;
                break;
            }
            err = err.max(e);
        }

        if err <= 1.0 {
            z += h;
            for i in 0..n {
                // Local extrapolation: cancel the leading error term.
                y[i] = half[i] + (half[i] - full[i]) / 15.0;
            }
        }

        let factor = if err == 0.0 {
            5.0
        } else if err.is_finite() {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        } else {
            0.2
        };
        h *= factor;

        if h.abs() < min_step && (z1 - z).abs() > span.abs() * 1e-15 {
            return Err(Error::IntegratorUnderflow { z, step: h });
        }
    }

    Ok(y)
}
