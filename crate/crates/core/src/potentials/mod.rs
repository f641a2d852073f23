//! Ginzburg-Landau free-energy densities `f(p, theta, phi)`.
//!
//! Two variants share the same background `f0`, coexistence line `p0(theta)`
//! and ordering field `h = p - p0(theta)`:
//!
//! * [`ModelKind::Quartic`]: `f = f0 + F(phi; u) + h G(phi; u)` with
//!   `u = (3 dnu(theta) / 4)^(1/3) >= 0`. The minima sit at `phi = ±u`
//!   whatever the pressure.
//! * [`ModelKind::Logarithmic`]: `f = f0 - a (u + 1) ln(1 - phi^2) - a phi^2
//!   - 2 h phi` with a signed `u(theta)` vanishing at the critical
//!   temperature. The order parameter is confined to `(-1, 1)`.
//!
//! Specific volume and entropy follow from `nu = f_p` and `eta = -f_theta`.
//! Note that the two models couple the field with different normalisation
//! (`+h G` against `-2 h phi`), so field magnitudes are not comparable
//! across models.

mod background;
mod params;
pub mod quartic;
mod schedule;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

pub use background::{Background, BackgroundValues, IdealGasBackground};
pub use params::ModelParams;
pub use quartic::{quartic_f, quartic_f_prime, quartic_g, quartic_g_prime};
pub use schedule::{FieldValues, ScalarJet};

use crate::error::{require_positive, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    Quartic,
    Logarithmic,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Quartic => "quartic",
            ModelKind::Logarithmic => "logarithmic",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "quartic" => Ok(ModelKind::Quartic),
            "logarithmic" => Ok(ModelKind::Logarithmic),
            other => Err(format!(
                "unknown model kind `{other}` (expected `quartic` or `logarithmic`)"
            )),
        }
    }
}

/// Value and all first and second partials of `f` at one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Partials {
    pub f: f64,
    pub f_p: f64,
    pub f_theta: f64,
    pub f_phi: f64,
    pub f_pp: f64,
    pub f_ptheta: f64,
    pub f_pphi: f64,
    pub f_thetatheta: f64,
    pub f_thetaphi: f64,
    pub f_phiphi: f64,
}

/// The order-parameter dependent part `f - f0` at fixed `(u, h)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Landscape {
    pub g: f64,
    pub g_phi: f64,
    pub g_phiphi: f64,
}

/// Split of the specific volume into background and order contributions,
/// `1/rho = 1/rho0 + 1/rho1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeSplit {
    pub nu0: f64,
    pub nu1: f64,
    pub nu: f64,
}

/// A state sample with the derived volume, entropy and free energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoPoint {
    p: f64,
    theta: f64,
    phi: f64,
    nu: f64,
    eta: f64,
    f: f64,
}

impl ThermoPoint {
    pub fn p(&self) -> f64 {
        self.p
    }
    pub fn theta(&self) -> f64 {
        self.theta
    }
    pub fn phi(&self) -> f64 {
        self.phi
    }
    pub fn nu(&self) -> f64 {
        self.nu
    }
    pub fn eta(&self) -> f64 {
        self.eta
    }
    pub fn f(&self) -> f64 {
        self.f
    }
}

/// An immutable potential: model kind, parameters and background equation
/// of state.
#[derive(Debug, Clone)]
pub struct PotentialModel {
    kind: ModelKind,
    params: ModelParams,
    background: Arc<dyn Background>,
}

impl PotentialModel {
    pub fn new(kind: ModelKind, params: ModelParams) -> Result<Self> {
        params.validate()?;
        let background = Arc::new(IdealGasBackground::from_params(&params));
        Ok(Self {
            kind,
            params,
            background,
        })
    }

    pub fn quartic(params: ModelParams) -> Result<Self> {
        Self::new(ModelKind::Quartic, params)
    }

    pub fn logarithmic(params: ModelParams) -> Result<Self> {
        Self::new(ModelKind::Logarithmic, params)
    }

    /// Replaces the ideal-gas background, e.g. to add an entropy correction.
    pub fn with_background(mut self, background: Arc<dyn Background>) -> Self {
        self.background = background;
        self
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    /// Whether `phi` lies in the domain of the potential.
    pub fn admits_phi(&self, phi: f64) -> bool {
        match self.kind {
            ModelKind::Quartic => phi.is_finite(),
            ModelKind::Logarithmic => phi.abs() < 1.0,
        }
    }

    /// Order-parameter scale `u(theta)`.
    pub fn u_schedule(&self, theta: f64) -> Result<f64> {
        Ok(self.u_jet(theta)?.value)
    }

    pub fn u_jet(&self, theta: f64) -> Result<ScalarJet> {
        require_positive("theta", theta)?;
        Ok(schedule::u_jet(self.kind, &self.params, theta))
    }

    /// Prescribed volume jump `dnu(theta)` of the quartic model.
    pub fn quartic_volume_jump_schedule(&self, theta: f64) -> Result<ScalarJet> {
        if self.kind != ModelKind::Quartic {
            return Err(Error::ModelMismatch {
                operation: "quartic_volume_jump_schedule",
                kind: self.kind.name(),
            });
        }
        require_positive("theta", theta)?;
        Ok(schedule::quartic_dnu_jet(&self.params, theta))
    }

    /// Coexistence pressure `p0(theta)`.
    pub fn coexistence_pressure(&self, theta: f64) -> Result<f64> {
        Ok(self.coexistence_jet(theta)?.value)
    }

    /// `p0(theta)` with `p0'` and `p0''`.
    pub fn coexistence_jet(&self, theta: f64) -> Result<ScalarJet> {
        require_positive("theta", theta)?;
        Ok(schedule::p0_jet(&self.params, theta))
    }

    pub fn h_field(&self, p: f64, theta: f64) -> Result<FieldValues> {
        require_positive("p", p)?;
        require_positive("theta", theta)?;
        Ok(schedule::h_field(&self.params, p, theta))
    }

    pub fn background(&self, p: f64, theta: f64) -> Result<BackgroundValues> {
        self.background.eval(p, theta)
    }

    fn check_phi(&self, phi: f64) -> Result<()> {
        if self.admits_phi(phi) {
            Ok(())
        } else {
            Err(Error::DomainError { phi })
        }
    }

    /// `f - f0` and its `phi` derivatives for given scale `u` and field `h`.
    pub fn landscape(&self, u: f64, h: f64, phi: f64) -> Result<Landscape> {
        self.check_phi(phi)?;
        match self.kind {
            ModelKind::Quartic => {
                if !(u >= 0.0) {
                    return Err(Error::InvalidParams {
                        name: "u",
                        constraint: ">= 0",
                        value: u,
                    });
                }
                let f = quartic::f_jet(phi, u);
                let g = quartic::g_jet(phi, u);
                Ok(Landscape {
                    g: f.v + h * g.v,
                    g_phi: f.x + h * g.x,
                    g_phiphi: f.xx + h * g.xx,
                })
            }
            ModelKind::Logarithmic => {
                if !(u > -1.0) {
                    return Err(Error::InvalidParams {
                        name: "u",
                        constraint: "> -1",
                        value: u,
                    });
                }
                let a = self.params.a;
                let one_m = (1.0 - phi) * (1.0 + phi);
                Ok(Landscape {
                    g: -a * (u + 1.0) * (-phi * phi).ln_1p() - a * phi * phi - 2.0 * h * phi,
                    g_phi: 2.0 * a * (u + 1.0) * phi / one_m - 2.0 * a * phi - 2.0 * h,
                    g_phiphi: 2.0 * a * (u + 1.0) * (1.0 + phi * phi) / (one_m * one_m) - 2.0 * a,
                })
            }
        }
    }

    /// `f` and all analytic partials at `(p, theta, phi)`.
    pub fn eval(&self, p: f64, theta: f64, phi: f64) -> Result<Partials> {
        self.check_phi(phi)?;
        let b = self.background(p, theta)?;
        let u = self.u_jet(theta)?;
        let h = self.h_field(p, theta)?;
        Ok(match self.kind {
            ModelKind::Quartic => {
                let f = quartic::f_jet(phi, u.value);
                let g = quartic::g_jet(phi, u.value);
                let f_u = f.u + h.h * g.u;
                Partials {
                    f: b.f0 + f.v + h.h * g.v,
                    f_p: b.f0_p + h.h_p * g.v,
                    f_theta: b.f0_theta + f_u * u.d1 + h.h_theta * g.v,
                    f_phi: f.x + h.h * g.x,
                    f_pp: b.f0_pp + h.h_pp * g.v,
                    f_ptheta: b.f0_ptheta + h.h_ptheta * g.v + h.h_p * g.u * u.d1,
                    f_pphi: h.h_p * g.x,
                    f_thetatheta: b.f0_thetatheta
                        + (f.uu + h.h * g.uu) * u.d1 * u.d1
                        + f_u * u.d2
                        + 2.0 * h.h_theta * g.u * u.d1
                        + h.h_thetatheta * g.v,
                    f_thetaphi: (f.xu + h.h * g.xu) * u.d1 + h.h_theta * g.x,
                    f_phiphi: f.xx + h.h * g.xx,
                }
            }
            ModelKind::Logarithmic => {
                let a = self.params.a;
                let one_m = (1.0 - phi) * (1.0 + phi);
                let ln = (-phi * phi).ln_1p();
                Partials {
                    f: b.f0 - a * (u.value + 1.0) * ln - a * phi * phi - 2.0 * h.h * phi,
                    f_p: b.f0_p - 2.0 * h.h_p * phi,
                    f_theta: b.f0_theta - a * u.d1 * ln - 2.0 * h.h_theta * phi,
                    f_phi: 2.0 * a * (u.value + 1.0) * phi / one_m - 2.0 * a * phi - 2.0 * h.h,
                    f_pp: b.f0_pp - 2.0 * h.h_pp * phi,
                    f_ptheta: b.f0_ptheta - 2.0 * h.h_ptheta * phi,
                    f_pphi: -2.0 * h.h_p,
                    f_thetatheta: b.f0_thetatheta - a * u.d2 * ln - 2.0 * h.h_thetatheta * phi,
                    f_thetaphi: 2.0 * a * u.d1 * phi / one_m - 2.0 * h.h_theta,
                    f_phiphi: 2.0 * a * (u.value + 1.0) * (1.0 + phi * phi) / (one_m * one_m)
                        - 2.0 * a,
                }
            }
        })
    }

    /// Background and order contributions to the specific volume.
    pub fn volume_split(&self, p: f64, theta: f64, phi: f64) -> Result<VolumeSplit> {
        self.check_phi(phi)?;
        let b = self.background(p, theta)?;
        let h = self.h_field(p, theta)?;
        let nu1 = match self.kind {
            ModelKind::Quartic => h.h_p * quartic_g(phi, self.u_schedule(theta)?),
            ModelKind::Logarithmic => -2.0 * h.h_p * phi,
        };
        let nu = b.f0_p + nu1;
        if !(nu > 0.0) {
            return Err(Error::NonPositiveVolume { p, theta, phi, nu });
        }
        Ok(VolumeSplit {
            nu0: b.f0_p,
            nu1,
            nu,
        })
    }

    pub fn thermo_point(&self, p: f64, theta: f64, phi: f64) -> Result<ThermoPoint> {
        let d = self.eval(p, theta, phi)?;
        if !(d.f_p > 0.0) {
            return Err(Error::NonPositiveVolume {
                p,
                theta,
                phi,
                nu: d.f_p,
            });
        }
        Ok(ThermoPoint {
            p,
            theta,
            phi,
            nu: d.f_p,
            eta: -d.f_theta,
            f: d.f,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn log_model() -> PotentialModel {
        PotentialModel::logarithmic(ModelParams::default()).unwrap()
    }

    fn quartic_model() -> PotentialModel {
        PotentialModel::quartic(ModelParams::default()).unwrap()
    }

    #[test]
    fn log_gradient_vanishes_at_origin_without_field() {
        let m = log_model();
        for &u in &[-0.8, -0.4, 0.0, 0.5] {
            assert_eq!(m.landscape(u, 0.0, 0.0).unwrap().g_phi, 0.0);
        }
        let theta = 0.7;
        let p0 = m.coexistence_pressure(theta).unwrap();
        assert_eq!(m.eval(p0, theta, 0.0).unwrap().f_phi, 0.0);
    }

    #[test]
    fn log_stationarity_is_the_cubic() {
        let m = PotentialModel::logarithmic(ModelParams {
            a: 1.7,
            ..Default::default()
        })
        .unwrap();
        for &(u, h, phi) in &[(-0.4, 0.3, 0.2), (0.3, -1.0, -0.7), (-0.9, 2.0, 0.95)] {
            let k = h / 1.7;
            let g = m.landscape(u, h, phi).unwrap().g_phi;
            let one_m = 1.0 - phi * phi;
            let cubic = phi.powi(3) + u * phi - k * (1.0 - phi * phi);
            assert!((g - 2.0 * 1.7 * cubic / one_m).abs() < 1e-12);
        }
    }

    #[test]
    fn log_domain_is_enforced() {
        let m = log_model();
        assert!(matches!(
            m.eval(1.0, 0.5, 1.0),
            Err(Error::DomainError { .. })
        ));
        assert!(matches!(
            m.eval(1.0, 0.5, -1.2),
            Err(Error::DomainError { .. })
        ));
        assert!(matches!(
            m.landscape(0.0, 0.0, f64::NAN),
            Err(Error::DomainError { .. })
        ));
    }

    #[test]
    fn log_confinement() {
        let m = log_model();
        let mut prev = f64::NEG_INFINITY;
        for k in 1..15 {
            let phi = 1.0 - 10f64.powi(-k);
            let f = m.eval(0.5, 0.6, phi).unwrap().f;
            assert!(f > prev);
            prev = f;
        }
        assert!(prev > 10.0);
    }

    #[test]
    fn quartic_above_critical_is_pure_quartic() {
        let m = quartic_model();
        for &phi in &[-2.0, -0.3, 0.0, 0.8, 1.5] {
            let d = m.eval(0.7, 1.3, phi).unwrap();
            let b = m.background(0.7, 1.3).unwrap();
            assert!((d.f - (b.f0 + phi.powi(4) / 4.0)).abs() < 1e-15);
            assert!((d.f_phi - phi.powi(3)).abs() < 1e-15);
        }
    }

    #[test]
    fn quartic_gradient_is_continuous_at_kinks() {
        let m = quartic_model();
        let theta = 0.6;
        let u = m.u_schedule(theta).unwrap();
        for &p in &[0.01, 0.5, 2.0] {
            for x in [u, -u] {
                let at = m.eval(p, theta, x).unwrap().f_phi;
                let out = m.eval(p, theta, x + 1e-15 * x.signum()).unwrap().f_phi;
                assert!((at - out).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn field_reversal_symmetry_is_exact() {
        for m in [log_model(), quartic_model()] {
            for &u in &[0.0, 0.3, 0.8] {
                let u = if m.kind() == ModelKind::Logarithmic {
                    -u
                } else {
                    u
                };
                for &h in &[0.0, 0.05, -0.4, 1.3] {
                    for &phi in &[0.0, 0.1, -0.35, 0.7, 0.99] {
                        let a = m.landscape(u, h, phi).unwrap();
                        let b = m.landscape(u, -h, -phi).unwrap();
                        assert_eq!(a.g, b.g);
                        assert_eq!(a.g_phi, -b.g_phi);
                    }
                }
            }
        }
    }

    #[test]
    fn volume_split_examples() {
        let m = quartic_model();
        let theta = 0.5;
        let u = m.u_schedule(theta).unwrap();
        let b = m.background(0.3, theta).unwrap();
        let s = m.volume_split(0.3, theta, 0.0).unwrap();
        assert_eq!(s.nu1, 0.0);
        assert_eq!(s.nu, b.f0_p);
        let s = m.volume_split(0.3, theta, u).unwrap();
        assert!((s.nu1 + 2.0 / 3.0 * u.powi(3)).abs() < 1e-15);
        assert_eq!(s.nu, m.eval(0.3, theta, u).unwrap().f_p);

        let m = log_model();
        let theta = 0.6;
        let u = m.u_schedule(theta).unwrap();
        let phi = -u.abs().sqrt();
        let s = m.volume_split(0.05, theta, phi).unwrap();
        assert!((s.nu1 - 2.0 * u.abs().sqrt()).abs() < 1e-15);
        assert_eq!(s.nu0 + s.nu1, m.eval(0.05, theta, phi).unwrap().f_p);
    }

    #[test]
    fn non_positive_volume_is_reported() {
        let m = log_model();
        // R theta / p = 0.25 < 2 phi
        let err = m.volume_split(2.0, 0.5, 0.9).unwrap_err();
        assert!(matches!(err, Error::NonPositiveVolume { .. }));
        assert!(matches!(
            m.thermo_point(2.0, 0.5, 0.9),
            Err(Error::NonPositiveVolume { .. })
        ));
    }

    #[test]
    fn thermo_point_matches_partials() {
        let m = log_model();
        let t = m.thermo_point(0.2, 0.8, 0.3).unwrap();
        let d = m.eval(0.2, 0.8, 0.3).unwrap();
        assert_eq!(t.nu(), d.f_p);
        assert_eq!(t.eta(), -d.f_theta);
        assert_eq!(t.f(), d.f);
    }

    #[test]
    fn critical_flatness_of_log_model() {
        let m = log_model();
        assert_eq!(m.landscape(0.0, 0.0, 0.0).unwrap().g_phiphi, 0.0);
        let l = m.landscape(-0.3, 0.0, 0.0).unwrap();
        assert!((l.g_phiphi - 2.0 * -0.3).abs() < 1e-15);
    }

    #[test]
    fn quartic_rejects_negative_scale() {
        assert!(quartic_model().landscape(-0.1, 0.0, 0.0).is_err());
        assert!(log_model().landscape(-1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn model_kind_parsing() {
        assert_eq!("quartic".parse::<ModelKind>().unwrap(), ModelKind::Quartic);
        assert_eq!(
            "logarithmic".parse::<ModelKind>().unwrap(),
            ModelKind::Logarithmic
        );
        assert!("cubic".parse::<ModelKind>().is_err());
    }
}
