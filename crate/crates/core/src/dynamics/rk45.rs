//! Dormand-Prince 5(4) with PI step-size control.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepControl {
    pub atol: f64,
    pub rtol: f64,
    /// First trial step; chosen from the time scale when `None`.
    pub dt_initial: Option<f64>,
    pub dt_max: f64,
    /// Relative to `max(1, |t|)`.
    pub dt_min: f64,
    pub max_steps: usize,
}

impl Default for StepControl {
    fn default() -> Self {
        StepControl {
            atol: 1e-10,
            rtol: 1e-8,
            dt_initial: None,
            dt_max: f64::INFINITY,
            dt_min: 1e-14,
            max_steps: 10_000_000,
        }
    }
}

impl StepControl {
    /// Bound used by the energy-balance checks, in units of the state.
    pub fn tolerance(&self) -> f64 {
        self.atol + self.rtol
    }

    pub fn validate(&self) -> Result<()> {
        let check = |name, ok: bool, value| {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidParams {
                    name,
                    constraint: "> 0",
                    value,
                })
            }
        };
        check("atol", self.atol > 0.0, self.atol)?;
        check("rtol", self.rtol > 0.0, self.rtol)?;
        check("dt_max", self.dt_max > 0.0, self.dt_max)?;
        check("dt_min", self.dt_min > 0.0, self.dt_min)?;
        if let Some(dt) = self.dt_initial {
            check("dt_initial", dt > 0.0, dt)?;
        }
        Ok(())
    }
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
// The last row doubles as the fifth-order weights.
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// fifth minus fourth order weights
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

const SAFETY: f64 = 0.9;
const ALPHA: f64 = 0.17;
const BETA: f64 = 0.04;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 5.0;

/// Stage evaluations that fail with a domain error, or return non-finite
/// values, reject the step instead of aborting.
fn stage<const N: usize, F>(rhs: &mut F, t: f64, y: &[f64; N]) -> Result<Option<[f64; N]>>
where
    F: FnMut(f64, &[f64; N]) -> Result<[f64; N]>,
{
    if y.iter().any(|v| !v.is_finite()) {
        return Ok(None);
    }
    match rhs(t, y) {
        Ok(k) if k.iter().all(|v| v.is_finite()) => Ok(Some(k)),
        Ok(_) | Err(Error::DomainError { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Integrates `y' = rhs(t, y)` from `t0` to `t1`.
///
/// `on_step(t, y)` runs after every accepted step and may rewrite `y`,
/// e.g. to reset accumulators. Returns the final state and a step size
/// suggestion for a continuation.
pub fn integrate<const N: usize, F, G>(
    mut rhs: F,
    t0: f64,
    t1: f64,
    y0: [f64; N],
    control: &StepControl,
    dt_guess: f64,
    mut on_step: G,
) -> Result<([f64; N], f64)>
where
    F: FnMut(f64, &[f64; N]) -> Result<[f64; N]>,
    G: FnMut(f64, &mut [f64; N]) -> Result<()>,
{
    let mut t = t0;
    let mut y = y0;
    let mut dt = dt_guess.min(control.dt_max).min(t1 - t0);
    let mut err_prev: f64 = 1e-4;
    let mut rejected = false;
    let mut steps = 0usize;
    while t < t1 {
        let dt_floor = control.dt_min * t.abs().max(1.0);
        let last = t + dt >= t1 || t1 - (t + dt) < dt_floor;
        let h = if last { t1 - t } else { dt };
        if h < dt_floor && !last {
            return Err(Error::StepFailure { t, dt: h });
        }
        steps += 1;
        if steps > control.max_steps {
            return Err(Error::StepFailure { t, dt: h });
        }

        let mut k = [[0.0; N]; 7];
        let mut y_new = y;
        let mut ok = true;
        for s in 0..7 {
            let mut ys = y;
            for (i, v) in ys.iter_mut().enumerate() {
                *v += h * (0..s).map(|j| A[s][j] * k[j][i]).sum::<f64>();
            }
            if s == 6 {
                y_new = ys;
            }
            match stage(&mut rhs, t + C[s] * h, &ys)? {
                Some(ks) => k[s] = ks,
                None => {
                    ok = false;
                    break;
                }
            }
        }

        let err = if ok {
            let mut e: f64 = 0.0;
            for i in 0..N {
                let est = h * (0..7).map(|s| E[s] * k[s][i]).sum::<f64>();
                let scale = control.atol + control.rtol * y[i].abs().max(y_new[i].abs());
                e = e.max((est / scale).abs());
            }
            e
        } else {
            f64::INFINITY
        };

        if err <= 1.0 {
            t = if last { t1 } else { t + h };
            y = y_new;
            on_step(t, &mut y)?;
            let mut factor = if err == 0.0 {
                MAX_FACTOR
            } else {
                SAFETY * err.powf(-ALPHA) * err_prev.powf(BETA)
            };
            factor = factor.clamp(MIN_FACTOR, MAX_FACTOR);
            if rejected {
                factor = factor.min(1.0);
            }
            if !last {
                dt = (h * factor).min(control.dt_max);
            }
            err_prev = err.max(1e-4);
            rejected = false;
        } else {
            let factor = if err.is_finite() {
                (SAFETY * err.powf(-0.2)).max(MIN_FACTOR)
            } else {
                0.25
            };
            dt = h * factor;
            rejected = true;
            if dt < dt_floor {
                return Err(Error::StepFailure { t, dt });
            }
        }
    }
    Ok((y, dt))
}
