use std::fmt;

use crate::error::{Error, Result};
use crate::potentials::PotentialModel;

use super::stationary::find_stationary_points;
use super::thermo::coexistence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Liquid,
    Vapour,
    /// At or above the critical temperature.
    Supercritical,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::Liquid => "liquid",
            Branch::Vapour => "vapour",
            Branch::Supercritical => "supercritical",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsothermSample {
    pub p: f64,
    pub nu: f64,
    pub phi: f64,
    pub branch: Branch,
}

/// Flat piece of a subcritical isotherm at the coexistence pressure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plateau {
    pub p0: f64,
    pub nu_liquid: f64,
    pub nu_vapour: f64,
    pub phi_liquid: f64,
    pub phi_vapour: f64,
}

impl Plateau {
    pub fn length(&self) -> f64 {
        self.nu_vapour - self.nu_liquid
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsothermCurve {
    pub theta: f64,
    pub samples: Vec<IsothermSample>,
    pub plateau: Option<Plateau>,
}

/// Stable equilibrium at one pressure. Metastable minima are discarded.
///
/// Returns `None` exactly on the coexistence line, where both phases are
/// stable and the plateau describes the state.
pub fn isotherm_sample(
    model: &PotentialModel,
    theta: f64,
    p: f64,
) -> Result<Option<IsothermSample>> {
    let eq = find_stationary_points(model, p, theta)?;
    if eq.is_coexistence() {
        return Ok(None);
    }
    let phi = eq.stable().phi;
    let nu = model.eval(p, theta, phi)?.f_p;
    if !(nu > 0.0) {
        return Err(Error::NonPositiveVolume { p, theta, phi, nu });
    }
    let subcritical = theta < model.params().theta_c;
    let branch = match (subcritical, eq.h > 0.0) {
        (false, _) => Branch::Supercritical,
        (true, true) => Branch::Liquid,
        (true, false) => Branch::Vapour,
    };
    Ok(Some(IsothermSample { p, nu, phi, branch }))
}

/// The plateau at `p0(theta)`, if coexistence exists and `p0` lies in
/// `[p_min, p_max]`.
pub fn isotherm_plateau(
    model: &PotentialModel,
    theta: f64,
    p_min: f64,
    p_max: f64,
) -> Result<Option<Plateau>> {
    let Some(c) = coexistence(model, theta)? else {
        return Ok(None);
    };
    if c.p0 < p_min || c.p0 > p_max {
        return Ok(None);
    }
    Ok(Some(Plateau {
        p0: c.p0,
        nu_liquid: c.liquid.nu,
        nu_vapour: c.vapour.nu,
        phi_liquid: c.liquid.phi,
        phi_vapour: c.vapour.phi,
    }))
}

/// Evenly spaced pressures from `p_min` to `p_max` inclusive.
pub fn pressure_grid(p_min: f64, p_max: f64, n: usize) -> Result<Vec<f64>> {
    if !(p_min > 0.0 && p_max > p_min && n >= 2) {
        return Err(Error::InvalidGrid {
            reason: format!("need 0 < p_min < p_max and n >= 2 (got {p_min}, {p_max}, {n})"),
        });
    }
    let step = (p_max - p_min) / (n - 1) as f64;
    Ok((0..n)
        .map(|i| {
            if i + 1 == n {
                p_max
            } else {
                p_min + step * i as f64
            }
        })
        .collect())
}

/// Equilibrium isotherm in the `(p, nu)` plane.
pub fn isotherm(
    model: &PotentialModel,
    theta: f64,
    p_min: f64,
    p_max: f64,
    n_samples: usize,
) -> Result<IsothermCurve> {
    let mut samples = Vec::with_capacity(n_samples);
    for p in pressure_grid(p_min, p_max, n_samples)? {
        if let Some(s) = isotherm_sample(model, theta, p)? {
            samples.push(s);
        }
    }
    Ok(IsothermCurve {
        theta,
        samples,
        plateau: isotherm_plateau(model, theta, p_min, p_max)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibrium::thermo::volume_jump_closed_form;
    use crate::potentials::ModelParams;

    #[test]
    fn subcritical_plateau_lengths() {
        for m in [
            PotentialModel::logarithmic(ModelParams::default()).unwrap(),
            PotentialModel::quartic(ModelParams::default()).unwrap(),
        ] {
            let theta = 0.8;
            let p0 = m.coexistence_pressure(theta).unwrap();
            let c = isotherm(&m, theta, 0.5 * p0, 1.5 * p0, 101).unwrap();
            let plateau = c.plateau.expect("plateau below theta_c");
            assert_eq!(plateau.p0, p0);
            let closed = volume_jump_closed_form(&m, theta).unwrap();
            assert!((plateau.length() - closed).abs() < 1e-10);
            for s in &c.samples {
                assert!(s.nu > 0.0);
                let expected = if s.p > p0 {
                    Branch::Liquid
                } else {
                    Branch::Vapour
                };
                assert_eq!(s.branch, expected);
            }
            // nu decreases with p within each branch
            for w in c.samples.windows(2) {
                if w[0].branch == w[1].branch {
                    assert!(w[1].nu < w[0].nu);
                }
            }
        }
    }

    #[test]
    fn supercritical_has_no_plateau() {
        let m = PotentialModel::logarithmic(ModelParams::default()).unwrap();
        let c = isotherm(&m, 1.2, 0.5, 2.0, 50).unwrap();
        assert!(c.plateau.is_none());
        assert!(c.samples.iter().all(|s| s.branch == Branch::Supercritical));
        assert_eq!(c.samples.len(), 50);
    }

    #[test]
    fn quartic_supercritical_volume_is_background() {
        let m = PotentialModel::quartic(ModelParams::default()).unwrap();
        let c = isotherm(&m, 1.1, 0.5, 2.0, 20).unwrap();
        for s in &c.samples {
            assert_eq!(s.phi, 0.0);
            assert_eq!(s.nu, m.background(s.p, 1.1).unwrap().f0_p);
        }
    }

    #[test]
    fn non_positive_volume_carries_pressure() {
        let m = PotentialModel::logarithmic(ModelParams::default()).unwrap();
        let err = isotherm(&m, 0.8, 0.1, 3.0, 30).unwrap_err();
        match err {
            Error::NonPositiveVolume { p, .. } => assert!(p > 0.4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn grid_validation() {
        assert!(pressure_grid(0.0, 1.0, 10).is_err());
        assert!(pressure_grid(1.0, 0.5, 10).is_err());
        assert!(pressure_grid(0.5, 1.0, 1).is_err());
        let g = pressure_grid(0.5, 1.0, 3).unwrap();
        assert_eq!(g, vec![0.5, 0.75, 1.0]);
    }
}
