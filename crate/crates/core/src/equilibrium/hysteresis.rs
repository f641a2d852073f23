use std::fmt;

use crate::error::{Error, Result};
use crate::potentials::PotentialModel;

use super::stationary::{find_stationary_points, stationary_points_reduced, PhaseEquilibrium};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepDirection {
    Up,
    Down,
}

impl SweepDirection {
    pub fn name(self) -> &'static str {
        match self {
            SweepDirection::Up => "up",
            SweepDirection::Down => "down",
        }
    }
}

impl fmt::Display for SweepDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HysteresisPoint {
    /// Control value: `h / a` for reduced sweeps, `p` for pressure sweeps.
    pub control: f64,
    pub phi: f64,
    pub direction: SweepDirection,
    /// The followed minimum vanished at this step and the state fell into
    /// the other well.
    pub jumped: bool,
}

/// Closed loop `-amplitude -> amplitude -> -amplitude` with `n` points per leg.
/// The turning point is not repeated.
pub fn sweep_path(amplitude: f64, n: usize) -> Result<Vec<(f64, SweepDirection)>> {
    if !(amplitude > 0.0 && amplitude.is_finite()) || n < 2 {
        return Err(Error::InvalidGrid {
            reason: format!("need amplitude > 0 and n >= 2 (got {amplitude}, {n})"),
        });
    }
    let step = 2.0 * amplitude / (n - 1) as f64;
    let leg = |i: usize| {
        if i + 1 == n {
            amplitude
        } else {
            -amplitude + step * i as f64
        }
    };
    let mut out: Vec<_> = (0..n).map(|i| (leg(i), SweepDirection::Up)).collect();
    out.extend((0..n - 1).rev().map(|i| (leg(i), SweepDirection::Down)));
    Ok(out)
}

fn follow<F>(path: &[(f64, SweepDirection)], mut solve: F) -> Result<Vec<HysteresisPoint>>
where
    F: FnMut(f64) -> Result<PhaseEquilibrium>,
{
    let mut out = Vec::with_capacity(path.len());
    let mut prev: Option<(f64, usize)> = None;
    for &(control, direction) in path {
        let eq = solve(control)?;
        let count = eq.minima_count();
        let phi = match prev {
            None => eq.stable().phi,
            Some((phi_prev, _)) => eq
                .nearest_minimum(phi_prev)
                .map(|s| s.phi)
                .unwrap_or(phi_prev),
        };
        let jumped = match prev {
            Some((phi_prev, prev_count)) => {
                prev_count == 2 && count == 1 && phi.signum() != phi_prev.signum()
            }
            None => false,
        };
        out.push(HysteresisPoint {
            control,
            phi,
            direction,
            jumped,
        });
        prev = Some((phi, count));
    }
    Ok(out)
}

/// Quasi-static loop in the reduced field `h / a` at fixed scale `u`.
///
/// The state follows its local minimum until that minimum disappears.
pub fn hysteresis_sweep_reduced(
    model: &PotentialModel,
    u: f64,
    amplitude: f64,
    n: usize,
) -> Result<Vec<HysteresisPoint>> {
    let a = model.params().a;
    let path = sweep_path(amplitude, n)?;
    follow(&path, |k| stationary_points_reduced(model, u, k * a))
}

/// Quasi-static loop in pressure at fixed `theta`, over
/// `p0 - amplitude -> p0 + amplitude -> p0 - amplitude`.
pub fn hysteresis_sweep(
    model: &PotentialModel,
    theta: f64,
    amplitude: f64,
    n: usize,
) -> Result<Vec<HysteresisPoint>> {
    let p0 = model.coexistence_pressure(theta)?;
    if !(amplitude < p0) {
        return Err(Error::InvalidGrid {
            reason: format!("amplitude {amplitude} reaches non-positive pressure (p0 = {p0})"),
        });
    }
    let path: Vec<_> = sweep_path(amplitude, n)?
        .into_iter()
        .map(|(dp, d)| (p0 + dp, d))
        .collect();
    follow(&path, |p| find_stationary_points(model, p, theta))
}
