use std::fmt::Debug;

use crate::error::{require_positive, Result};

use super::ModelParams;

/// Background free energy `f0(p, theta)` with its first and second partials.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BackgroundValues {
    pub f0: f64,
    /// Background specific volume `nu0`.
    pub f0_p: f64,
    pub f0_theta: f64,
    pub f0_pp: f64,
    pub f0_ptheta: f64,
    pub f0_thetatheta: f64,
}

/// Order-parameter independent part of the free energy.
///
/// Implementations must return analytic partials; custom backgrounds should
/// pass [`crate::thermo_validate::admit`] before use.
pub trait Background: Debug + Send + Sync {
    fn eval(&self, p: f64, theta: f64) -> Result<BackgroundValues>;
}

/// `f0 = R theta ln(p / p_ref) - c theta (ln(theta / theta_ref) - 1)`.
///
/// Ideal-gas background volume `R theta / p` and constant heat capacity `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdealGasBackground {
    pub r_gas: f64,
    pub heat_capacity: f64,
    pub p_ref: f64,
    pub theta_ref: f64,
}

impl IdealGasBackground {
    pub fn from_params(params: &ModelParams) -> Self {
        Self {
            r_gas: params.r_gas,
            heat_capacity: params.heat_capacity,
            p_ref: params.p_ref,
            theta_ref: params.theta_ref,
        }
    }
}

impl Background for IdealGasBackground {
    fn eval(&self, p: f64, theta: f64) -> Result<BackgroundValues> {
        require_positive("p", p)?;
        require_positive("theta", theta)?;
        let (r, c) = (self.r_gas, self.heat_capacity);
        let lp = (p / self.p_ref).ln();
        let lt = (theta / self.theta_ref).ln();
        Ok(BackgroundValues {
            f0: r * theta * lp - c * theta * (lt - 1.0),
            f0_p: r * theta / p,
            f0_theta: r * lp - c * lt,
            f0_pp: -r * theta / (p * p),
            f0_ptheta: r / p,
            f0_thetatheta: -c / theta,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn bg() -> IdealGasBackground {
        IdealGasBackground {
            r_gas: 0.7,
            heat_capacity: 2.5,
            p_ref: 1.3,
            theta_ref: 0.9,
        }
    }

    #[test]
    fn reference_point() {
        let b = bg();
        let v = b.eval(1.3, 0.9).unwrap();
        assert!((v.f0 - 2.5 * 0.9).abs() < 1e-15);
        assert!((v.f0_p - 0.7 * 0.9 / 1.3).abs() < 1e-15);
        assert_eq!(v.f0_theta, 0.0);
    }

    #[test]
    fn ideal_gas_identity_and_heat_capacity() {
        let b = bg();
        for i in 1..20 {
            for j in 1..20 {
                let (p, theta) = (0.1 * i as f64, 0.15 * j as f64);
                let v = b.eval(p, theta).unwrap();
                assert!((v.f0_p * p - 0.7 * theta).abs() < 1e-13);
                assert!(v.f0_thetatheta < 0.0);
                assert!((v.f0_thetatheta + 2.5 / theta).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn rejects_non_positive_state() {
        assert!(matches!(
            bg().eval(0.0, 1.0),
            Err(Error::InvalidParams { name: "p", .. })
        ));
        assert!(matches!(
            bg().eval(1.0, -1.0),
            Err(Error::InvalidParams { name: "theta", .. })
        ));
    }
}
