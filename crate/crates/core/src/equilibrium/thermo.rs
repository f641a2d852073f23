//! Equilibrium thermodynamics of the homogeneous phases.
//!
//! At a local minimum `phi_i(p, theta)` the Gibbs free energy is
//! `Phi_i = f(p, theta, phi_i)` and, because `f_phi` vanishes there,
//! `dPhi_i/dp = f_p` and `dPhi_i/dtheta = f_theta` at fixed `phi`.

use crate::error::{Error, Result};
use crate::potentials::{ModelKind, PotentialModel};

use super::stationary::find_stationary_points;

/// Volume, entropy and Gibbs free energy of one equilibrium phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseState {
    pub phi: f64,
    pub nu: f64,
    pub eta: f64,
    pub gibbs: f64,
    pub is_absolute_min: bool,
}

/// Both phases on the coexistence line at one temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coexistence {
    pub theta: f64,
    pub p0: f64,
    pub liquid: PhaseState,
    pub vapour: PhaseState,
}

impl Coexistence {
    pub fn volume_jump(&self) -> f64 {
        self.vapour.nu - self.liquid.nu
    }

    pub fn entropy_jump(&self) -> f64 {
        self.vapour.eta - self.liquid.eta
    }
}

/// Latent heat together with both sides of the Clausius-Clapeyron relation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatentHeat {
    pub theta: f64,
    /// `theta * (eta_vapour - eta_liquid)`.
    pub latent_heat: f64,
    pub volume_jump: f64,
    /// `theta * p0'(theta) * dnu`.
    pub clapeyron: f64,
    /// `|L - theta p0' dnu| / max(|L|, eps)`.
    pub cc_residual: f64,
    pub eta_liquid: f64,
    pub eta_vapour: f64,
}

fn phase_state(
    model: &PotentialModel,
    p: f64,
    theta: f64,
    phi: f64,
    is_absolute_min: bool,
) -> Result<PhaseState> {
    let t = model.thermo_point(p, theta, phi)?;
    Ok(PhaseState {
        phi,
        nu: t.nu(),
        eta: t.eta(),
        gibbs: t.f(),
        is_absolute_min,
    })
}

/// One [`PhaseState`] per local minimum at `(p, theta)`, sorted by `phi`.
pub fn equilibrium_state(model: &PotentialModel, p: f64, theta: f64) -> Result<Vec<PhaseState>> {
    let eq = find_stationary_points(model, p, theta)?;
    eq.minima()
        .map(|s| phase_state(model, p, theta, s.phi, s.is_absolute_min))
        .collect()
}

/// The two phases at `p = p0(theta)`, or `None` at and above the critical
/// temperature where a single minimum remains.
pub fn coexistence(model: &PotentialModel, theta: f64) -> Result<Option<Coexistence>> {
    let p0 = model.coexistence_pressure(theta)?;
    let eq = find_stationary_points(model, p0, theta)?;
    if !eq.is_coexistence() {
        return Ok(None);
    }
    let mut minima = eq.minima();
    let (lo, hi) = (minima.next().unwrap().phi, minima.next().unwrap().phi);
    let a = phase_state(model, p0, theta, lo, true)?;
    let b = phase_state(model, p0, theta, hi, true)?;
    let (liquid, vapour) = if a.nu <= b.nu { (a, b) } else { (b, a) };
    Ok(Some(Coexistence {
        theta,
        p0,
        liquid,
        vapour,
    }))
}

/// Specific-volume jump `nu_vapour - nu_liquid` across the coexistence line;
/// zero when no coexistence exists.
pub fn volume_jump(model: &PotentialModel, theta: f64) -> Result<f64> {
    Ok(coexistence(model, theta)?.map_or(0.0, |c| c.volume_jump()))
}

/// Closed-form volume jump: `(4/3) h_p u^3` for the quartic model and
/// `4 h_p |u|^(1/2)` for the logarithmic one.
pub fn volume_jump_closed_form(model: &PotentialModel, theta: f64) -> Result<f64> {
    let u = model.u_schedule(theta)?;
    let p0 = model.coexistence_pressure(theta)?;
    let h_p = model.h_field(p0, theta)?.h_p;
    Ok(match model.kind() {
        ModelKind::Quartic => 4.0 / 3.0 * h_p * u.powi(3),
        ModelKind::Logarithmic if u < 0.0 => 4.0 * h_p * (-u).sqrt(),
        ModelKind::Logarithmic => 0.0,
    })
}

/// Latent heat from the entropy jump, checked against `theta p0' dnu`.
pub fn latent_heat_and_clapeyron(model: &PotentialModel, theta: f64) -> Result<LatentHeat> {
    let theta_c = model.params().theta_c;
    let Some(c) = coexistence(model, theta)? else {
        return Err(Error::InvalidParams {
            name: "theta",
            constraint: "below the critical temperature",
            value: theta / theta_c,
        });
    };
    let slope = model.coexistence_jet(theta)?.d1;
    let latent_heat = theta * c.entropy_jump();
    let clapeyron = theta * slope * c.volume_jump();
    let diff = (latent_heat - clapeyron).abs();
    let cc_residual = if diff == 0.0 {
        0.0
    } else {
        diff / latent_heat.abs().max(f64::MIN_POSITIVE)
    };
    Ok(LatentHeat {
        theta,
        latent_heat,
        volume_jump: c.volume_jump(),
        clapeyron,
        cc_residual,
        eta_liquid: c.liquid.eta,
        eta_vapour: c.vapour.eta,
    })
}

/// `X^3 + (2 h h_p / a) X^2 + 4 u h_p^2 X - 8 h h_p^3 / a` with `X = f0_p - nu`:
/// the cubic state equation satisfied by every logarithmic equilibrium.
pub fn state_equation_residual(model: &PotentialModel, p: f64, theta: f64, nu: f64) -> Result<f64> {
    if model.kind() != ModelKind::Logarithmic {
        return Err(Error::ModelMismatch {
            operation: "state_equation_residual",
            kind: model.kind().name(),
        });
    }
    let a = model.params().a;
    let u = model.u_schedule(theta)?;
    let hf = model.h_field(p, theta)?;
    let (h, hp) = (hf.h, hf.h_p);
    let x = model.background(p, theta)?.f0_p - nu;
    Ok(x.powi(3) + 2.0 * h * hp / a * x * x + 4.0 * u * hp * hp * x - 8.0 * h * hp.powi(3) / a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::ModelParams;

    fn log_model() -> PotentialModel {
        PotentialModel::logarithmic(ModelParams::default()).unwrap()
    }

    fn quartic_model() -> PotentialModel {
        PotentialModel::quartic(ModelParams::default()).unwrap()
    }

    #[test]
    fn log_entropy_matches_closed_form() {
        let m = log_model();
        let a = m.params().a;
        for &(p, theta) in &[(0.01, 0.6), (0.2, 0.8), (0.5, 1.2)] {
            let u = m.u_jet(theta).unwrap();
            let b = m.background(p, theta).unwrap();
            let hf = m.h_field(p, theta).unwrap();
            for s in equilibrium_state(&m, p, theta).unwrap() {
                let expected =
                    -b.f0_theta + a * u.d1 * (1.0 - s.phi * s.phi).ln() + 2.0 * hf.h_theta * s.phi;
                assert!((s.eta - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn quartic_entropies_at_the_minima() {
        let m = quartic_model();
        for &(p, theta) in &[(0.05, 0.5), (0.3, 0.7), (0.1, 0.9)] {
            let u = m.u_jet(theta).unwrap();
            let hf = m.h_field(p, theta).unwrap();
            let eta0 = -m.background(p, theta).unwrap().f0_theta;
            for sign in [1.0, -1.0] {
                let eta = -m.eval(p, theta, sign * u.value).unwrap().f_theta;
                let expected = eta0
                    + u.d1 * u.value.powi(3)
                    + sign * 2.0 / 3.0 * hf.h_theta * u.value.powi(3)
                    + sign * 2.0 * hf.h * u.value.powi(2) * u.d1;
                assert!((eta - expected).abs() < 1e-12 * (1.0 + expected.abs()));
                // same expression through the volume jump schedule
                let dnu = m.quartic_volume_jump_schedule(theta).unwrap();
                let via_dnu = eta0
                    + (u.value / 4.0 + sign * hf.h / 2.0) * dnu.d1
                    + sign * hf.h_theta / 2.0 * dnu.value;
                assert!((eta - via_dnu).abs() < 1e-10 * (1.0 + eta.abs()));
            }
        }
    }

    #[test]
    fn quartic_entropy_limit_at_critical_point() {
        // Linear volume jump: (dnu)_theta = -dnu_ref / theta_c stays finite.
        let m = PotentialModel::quartic(ModelParams {
            beta_q: 1.0,
            ..Default::default()
        })
        .unwrap();
        let theta = 1.0 - 1e-15;
        let p = 0.7;
        let u = m.u_schedule(theta).unwrap();
        let h = m.h_field(p, theta).unwrap().h;
        let eta0 = -m.background(p, theta).unwrap().f0_theta;
        let dnu_theta = -1.0;
        for sign in [1.0, -1.0] {
            let eta = -m.eval(p, theta, sign * u).unwrap().f_theta;
            assert!((eta - (eta0 + sign * 0.5 * h * dnu_theta)).abs() < 1e-5);
        }
    }

    #[test]
    fn volume_jump_examples() {
        let m = quartic_model();
        for &theta in &[0.2, 0.5, 0.8, 0.95] {
            let c = coexistence(&m, theta).unwrap().unwrap();
            // nu itself is large at low theta; the jump is a difference of two
            let tol = 1e-13 * c.vapour.nu.abs().max(1.0);
            let dnu = c.volume_jump();
            let closed = volume_jump_closed_form(&m, theta).unwrap();
            assert!((dnu - closed).abs() < tol, "theta={theta}");
            let schedule = m.quartic_volume_jump_schedule(theta).unwrap().value;
            assert!((dnu - schedule).abs() < tol);
        }
        assert_eq!(volume_jump(&m, 1.0).unwrap(), 0.0);
        assert_eq!(volume_jump(&m, 1.3).unwrap(), 0.0);

        let m = log_model();
        // u(0.6) = -0.4
        let dnu = volume_jump(&m, 0.6).unwrap();
        assert!((dnu - 4.0 * 0.4f64.sqrt()).abs() < 1e-10);
        assert!((dnu - 2.529_822_128_134_703_5).abs() < 1e-10);
        assert_eq!(volume_jump(&m, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn clausius_clapeyron_both_models() {
        for m in [log_model(), quartic_model()] {
            for i in 0..10 {
                let theta = 0.5 + 0.045 * i as f64;
                let l = latent_heat_and_clapeyron(&m, theta).unwrap();
                assert!(l.latent_heat > 0.0);
                assert!(
                    l.cc_residual < 1e-8,
                    "{} theta={theta}: {}",
                    m.kind(),
                    l.cc_residual
                );
            }
            assert!(latent_heat_and_clapeyron(&m, 1.1).is_err());
        }
    }

    #[test]
    fn log_latent_heat_vanishes_at_critical_point() {
        let m = log_model();
        let mut prev = f64::INFINITY;
        for k in 4..30 {
            let theta = 1.0 - 2f64.powi(-k);
            let l = latent_heat_and_clapeyron(&m, theta).unwrap().latent_heat;
            assert!(l < prev);
            if k > 20 {
                // L ~ |u|^(1/2) ~ (1 - theta)^(1/2)
                assert!((l / prev - 0.5f64.sqrt()).abs() < 1e-3);
            }
            prev = l;
        }
        assert!(prev < 0.01);
    }

    #[test]
    fn state_equation() {
        let m = log_model();
        for &(p, theta) in &[(0.01, 0.6), (0.2, 0.8), (0.5, 1.2), (0.0094, 0.6)] {
            for s in equilibrium_state(&m, p, theta).unwrap() {
                let r = state_equation_residual(&m, p, theta, s.nu).unwrap();
                assert!(r.abs() < 1e-10, "{r}");
            }
            let nu_off = equilibrium_state(&m, p, theta).unwrap()[0].nu + 0.3;
            assert!(state_equation_residual(&m, p, theta, nu_off).unwrap().abs() > 1e-6);
        }
        let theta = 0.7;
        let p0 = m.coexistence_pressure(theta).unwrap();
        let f0p = m.background(p0, theta).unwrap().f0_p;
        assert_eq!(state_equation_residual(&m, p0, theta, f0p).unwrap(), 0.0);
        assert!(matches!(
            state_equation_residual(&quartic_model(), 1.0, 0.5, 1.0),
            Err(Error::ModelMismatch { .. })
        ));
    }
}
