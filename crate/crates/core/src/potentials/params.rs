use crate::error::{require_positive, Error, Result};

/// Parameter set shared by both potentials.
///
/// The library is non-dimensional by default: critical temperature and
/// pressure are 1 and every energy scale is 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    /// Energy scale of the logarithmic potential.
    pub a: f64,
    /// Relaxation time of the order parameter.
    pub tau: f64,
    /// Gradient-energy coefficient.
    pub kappa: f64,
    pub theta_c: f64,
    pub p_c: f64,
    /// Exponents of the logarithmic order-parameter schedule.
    pub q: f64,
    pub beta: f64,
    /// Slope `A` of the coexistence line `p_c exp(A (1 - theta_c / theta))`.
    pub p0_slope: f64,
    /// Background equation of state: gas constant `R`.
    pub r_gas: f64,
    /// Background equation of state: heat capacity `c`.
    pub heat_capacity: f64,
    pub p_ref: f64,
    pub theta_ref: f64,
    /// Quartic model: volume jump amplitude at zero temperature.
    pub dnu_ref: f64,
    /// Quartic model: exponent of the volume jump near the critical point.
    pub beta_q: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            a: 1.0,
            tau: 1.0,
            kappa: 1.0,
            theta_c: 1.0,
            p_c: 1.0,
            q: 1.0,
            beta: 0.5,
            p0_slope: 7.0,
            r_gas: 1.0,
            heat_capacity: 1.0,
            p_ref: 1.0,
            theta_ref: 1.0,
            dnu_ref: 1.0,
            beta_q: 0.5,
        }
    }
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        require_positive("a", self.a)?;
        require_positive("tau", self.tau)?;
        require_positive("theta_c", self.theta_c)?;
        require_positive("p_c", self.p_c)?;
        require_positive("q", self.q)?;
        require_positive("beta", self.beta)?;
        require_positive("A", self.p0_slope)?;
        require_positive("R", self.r_gas)?;
        require_positive("c", self.heat_capacity)?;
        require_positive("p_ref", self.p_ref)?;
        require_positive("theta_ref", self.theta_ref)?;
        require_positive("beta_q", self.beta_q)?;
        require_non_negative("kappa", self.kappa)?;
        require_non_negative("dnu_ref", self.dnu_ref)?;
        Ok(())
    }
}

fn require_non_negative(name: &'static str, value: f64) -> Result<f64> {
    if value >= 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidParams {
            name,
            constraint: ">= 0",
            value,
        })
    }
}
