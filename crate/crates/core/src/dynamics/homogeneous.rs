use crate::error::{Error, Result};
use crate::potentials::PotentialModel;

use super::rk45::{integrate, StepControl};
use super::schedule::PressureSchedule;

/// Below this `|theta * eta_theta|` the thermal mode cannot solve for `theta'`.
pub const HEAT_CAPACITY_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    pub t: f64,
    pub phi: f64,
    pub p: f64,
    pub nu: f64,
    pub f: f64,
    /// `tau * phi_dot^2`.
    pub dissipation: f64,
    /// Energy (isothermal) or entropy (thermal) balance over the step that
    /// ended at this sample. Zero for the initial sample.
    pub balance_residual: f64,
    pub theta: Option<f64>,
    pub eta: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<TrajectorySample>,
    pub tau: f64,
    /// Integrator tolerance the balance residuals are measured against.
    pub tolerance: f64,
}

impl Trajectory {
    pub fn is_thermal(&self) -> bool {
        self.samples.first().is_some_and(|s| s.theta.is_some())
    }

    pub fn last(&self) -> &TrajectorySample {
        self.samples
            .last()
            .expect("trajectory has an initial sample")
    }

    pub fn max_abs_residual(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| s.balance_residual.abs())
            .fold(0.0, f64::max)
    }
}

fn check_inputs(
    model: &PotentialModel,
    phi0: f64,
    theta: f64,
    schedule: &PressureSchedule,
    t_end: f64,
    control: &StepControl,
) -> Result<()> {
    if !model.admits_phi(phi0) {
        return Err(Error::DomainError { phi: phi0 });
    }
    if !(theta > 0.0 && theta.is_finite()) {
        return Err(Error::InvalidParams {
            name: "theta",
            constraint: "> 0",
            value: theta,
        });
    }
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::InvalidParams {
            name: "t_end",
            constraint: "> 0",
            value: t_end,
        });
    }
    schedule.validate()?;
    control.validate()
}

/// Intervals between schedule knots, each with its constant `dp/dt`.
fn segments(schedule: &PressureSchedule, t_end: f64) -> Vec<(f64, f64, f64)> {
    let mut knots = vec![0.0];
    knots.extend(schedule.breakpoints(0.0, t_end));
    knots.push(t_end);
    knots
        .windows(2)
        .map(|w| (w[0], w[1], schedule.rate(0.5 * (w[0] + w[1]))))
        .collect()
}

fn sample(
    model: &PotentialModel,
    t: f64,
    p: f64,
    theta: f64,
    phi: f64,
    residual: f64,
    thermal: bool,
) -> Result<TrajectorySample> {
    let d = model.eval(p, theta, phi)?;
    if !(d.f_p > 0.0) {
        return Err(Error::NonPositiveVolume {
            p,
            theta,
            phi,
            nu: d.f_p,
        });
    }
    let tau = model.params().tau;
    Ok(TrajectorySample {
        t,
        phi,
        p,
        nu: d.f_p,
        f: d.f,
        dissipation: d.f_phi * d.f_phi / tau,
        balance_residual: residual,
        theta: thermal.then_some(theta),
        eta: thermal.then_some(-d.f_theta),
    })
}

/// Isothermal homogeneous relaxation `tau phi' = -f_phi(p(t), theta, phi)`.
///
/// The balance residual of each step is `Δf + ∫ tau phi'^2 - ∫ nu p'`,
/// with both integrals carried by the integrator alongside `phi`.
pub fn relax_homogeneous(
    model: &PotentialModel,
    phi0: f64,
    theta: f64,
    schedule: &PressureSchedule,
    t_end: f64,
    control: &StepControl,
) -> Result<Trajectory> {
    check_inputs(model, phi0, theta, schedule, t_end, control)?;
    let tau = model.params().tau;
    let mut samples = vec![sample(
        model,
        0.0,
        schedule.pressure(0.0),
        theta,
        phi0,
        0.0,
        false,
    )?];
    let mut f_prev = samples[0].f;
    let mut y = [phi0, 0.0, 0.0];
    let mut dt = control.dt_initial.unwrap_or(1e-3 * tau.min(t_end));

    for (t0, t1, rate) in segments(schedule, t_end) {
        let rhs = |t: f64, y: &[f64; 3]| {
            let d = model.eval(schedule.pressure(t), theta, y[0])?;
            let phi_dot = -d.f_phi / tau;
            Ok([phi_dot, tau * phi_dot * phi_dot, d.f_p * rate])
        };
        let on_step = |t: f64, y: &mut [f64; 3]| {
            let s = sample(model, t, schedule.pressure(t), theta, y[0], 0.0, false)?;
            let residual = s.f - f_prev + y[1] - y[2];
            samples.push(TrajectorySample {
                balance_residual: residual,
                ..s
            });
            f_prev = s.f;
            y[1] = 0.0;
            y[2] = 0.0;
            Ok(())
        };
        (y, dt) = integrate(rhs, t0, t1, y, control, dt, on_step)?;
    }
    Ok(Trajectory {
        samples,
        tau,
        tolerance: control.tolerance(),
    })
}

/// Homogeneous relaxation with the energy balance `theta eta' = r + tau phi'^2`
/// closing the temperature.
///
/// The balance residual of each step is `Δeta - ∫ (r + tau phi'^2) / theta`.
pub fn relax_thermal_homogeneous(
    model: &PotentialModel,
    phi0: f64,
    theta0: f64,
    schedule: &PressureSchedule,
    r_supply: f64,
    t_end: f64,
    control: &StepControl,
) -> Result<Trajectory> {
    check_inputs(model, phi0, theta0, schedule, t_end, control)?;
    if !r_supply.is_finite() {
        return Err(Error::InvalidParams {
            name: "r_supply",
            constraint: "finite",
            value: r_supply,
        });
    }
    let tau = model.params().tau;
    let first = sample(model, 0.0, schedule.pressure(0.0), theta0, phi0, 0.0, true)?;
    let mut eta_prev = first.eta.unwrap_or_default();
    let mut samples = vec![first];
    let mut y = [phi0, theta0, 0.0];
    let mut dt = control.dt_initial.unwrap_or(1e-3 * tau.min(t_end));

    for (t0, t1, rate) in segments(schedule, t_end) {
        let rhs = |t: f64, y: &[f64; 3]| {
            let theta = y[1];
            if !(theta > 0.0) {
                return Ok([f64::NAN; 3]);
            }
            let d = model.eval(schedule.pressure(t), theta, y[0])?;
            let eta_theta = -d.f_thetatheta;
            if (theta * eta_theta).abs() < HEAT_CAPACITY_FLOOR {
                return Err(Error::SingularHeatCapacity {
                    t,
                    value: theta * eta_theta,
                });
            }
            let phi_dot = -d.f_phi / tau;
            let supply = (r_supply + tau * phi_dot * phi_dot) / theta;
            // eta_phi = -f_thetaphi, eta_p = -f_ptheta
            let theta_dot = (supply + d.f_thetaphi * phi_dot + d.f_ptheta * rate) / eta_theta;
            Ok([phi_dot, theta_dot, supply])
        };
        let on_step = |t: f64, y: &mut [f64; 3]| {
            let s = sample(model, t, schedule.pressure(t), y[1], y[0], 0.0, true)?;
            let eta = s.eta.unwrap_or_default();
            samples.push(TrajectorySample {
                balance_residual: eta - eta_prev - y[2],
                ..s
            });
            eta_prev = eta;
            y[2] = 0.0;
            Ok(())
        };
        (y, dt) = integrate(rhs, t0, t1, y, control, dt, on_step)?;
    }
    Ok(Trajectory {
        samples,
        tau,
        tolerance: control.tolerance(),
    })
}
