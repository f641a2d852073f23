use crate::equilibrium::coexistence;
use crate::error::{Error, Result};
use crate::potentials::{ModelKind, PotentialModel};

use super::report::AuditReport;

/// Number of grid points nearest `theta_c` used in the exponent fit.
pub const FIT_POINTS: usize = 10;

/// Allowed distance between the fitted and the predicted exponent.
pub const EXPONENT_TOL: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyPoint {
    pub theta: f64,
    pub eta_liquid: f64,
    pub eta_vapour: f64,
    /// Background entropy `-f0_theta` at `(p0(theta), theta)`.
    pub eta0: f64,
}

impl EntropyPoint {
    pub fn deviation(&self) -> f64 {
        (self.eta_liquid - self.eta0)
            .abs()
            .max((self.eta_vapour - self.eta0).abs())
    }
}

/// Behaviour of the coexistence entropies as `theta -> theta_c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EntropyExpectation {
    Bounded,
    /// `|eta - eta0| ~ (theta_c - theta)^exponent` with `exponent < 0`.
    Diverging {
        exponent: f64,
    },
}

/// Leading power of `|eta - eta0|` near `theta_c`.
///
/// Quartic: `u (Δν)_theta / 4 ~ t^(4 beta_q / 3 - 1)`. Logarithmic with
/// `q`, `beta`: `u_theta ln(1 - phi^2) ~ t^(4 beta - 1)` against the
/// bounded `h_theta phi ~ t^beta`.
pub fn expected_entropy_behaviour(model: &PotentialModel) -> EntropyExpectation {
    let prm = model.params();
    let exponent = match model.kind() {
        ModelKind::Quartic => 4.0 * prm.beta_q / 3.0 - 1.0,
        ModelKind::Logarithmic => 4.0 * prm.beta - 1.0,
    };
    if exponent < 0.0 {
        EntropyExpectation::Diverging { exponent }
    } else {
        EntropyExpectation::Bounded
    }
}

/// `theta_c (1 - 2^-k)` for `k = 1..=k_max`.
pub fn dyadic_grid(theta_c: f64, k_max: u32) -> Vec<f64> {
    (1..=k_max as i32)
        .map(|k| theta_c * (1.0 - 2f64.powi(-k)))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntropyScan {
    pub report: AuditReport,
    pub points: Vec<EntropyPoint>,
    /// Least-squares slope of `log|eta - eta0|` against `log(theta_c - theta)`.
    pub exponent: f64,
    pub expectation: EntropyExpectation,
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// Coexistence entropies along a grid approaching `theta_c` from below,
/// with a power-law fit on the `FIT_POINTS` points closest to `theta_c`.
///
/// A bounded expectation passes when every value is finite and the fitted
/// exponent is at least `-EXPONENT_TOL`; a diverging one when the fit is
/// within `EXPONENT_TOL` of the prediction.
pub fn entropy_regularity_scan(model: &PotentialModel, theta_grid: &[f64]) -> Result<EntropyScan> {
    let theta_c = model.params().theta_c;
    let mut grid: Vec<f64> = theta_grid.to_vec();
    grid.sort_by(f64::total_cmp);
    if grid.len() < FIT_POINTS || grid.iter().any(|&t| !(t > 0.0 && t < theta_c)) {
        return Err(Error::InvalidGrid {
            reason: format!("need at least {FIT_POINTS} temperatures in (0, theta_c)"),
        });
    }
    let expectation = expected_entropy_behaviour(model);
    let mut report = AuditReport::new(
        format!("entropy-regularity/{}", model.kind()),
        format!("{} temperatures up to {}", grid.len(), grid[grid.len() - 1]),
        EXPONENT_TOL,
    );
    let mut points = Vec::with_capacity(grid.len());
    for &theta in &grid {
        let Some(c) = coexistence(model, theta)? else {
            report.skip(format!("theta={theta}: no coexistence"));
            continue;
        };
        let eta0 = -model.background(c.p0, theta)?.f0_theta;
        let pt = EntropyPoint {
            theta,
            eta_liquid: c.liquid.eta,
            eta_vapour: c.vapour.eta,
            eta0,
        };
        if !pt.deviation().is_finite() {
            report.fail(format!("theta={theta}: non-finite entropy"));
        }
        points.push(pt);
    }
    let tail = &points[points.len().saturating_sub(FIT_POINTS)..];
    let xs: Vec<f64> = tail.iter().map(|p| (theta_c - p.theta).ln()).collect();
    let ys: Vec<f64> = tail.iter().map(|p| p.deviation().ln()).collect();
    let exponent = slope(&xs, &ys);

    let miss = match expectation {
        EntropyExpectation::Bounded => (-exponent - EXPONENT_TOL).max(0.0),
        EntropyExpectation::Diverging { exponent: e } => (exponent - e).abs(),
    };
    report.n_checked += tail.len();
    report.max_abs_error = miss;
    report.max_rel_error = miss;
    let bad = match expectation {
        EntropyExpectation::Bounded => exponent < -EXPONENT_TOL,
        EntropyExpectation::Diverging { .. } => miss > EXPONENT_TOL,
    };
    if bad || !exponent.is_finite() {
        report.fail(format!(
            "fitted exponent {exponent}, expected {expectation:?}"
        ));
    }
    Ok(EntropyScan {
        report,
        points,
        exponent,
        expectation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::ModelParams;

    #[test]
    fn logarithmic_is_bounded() {
        let m = PotentialModel::logarithmic(ModelParams::default()).unwrap();
        let s = entropy_regularity_scan(&m, &dyadic_grid(1.0, 20)).unwrap();
        assert_eq!(s.expectation, EntropyExpectation::Bounded);
        assert!(s.report.pass, "{}", s.report);
        // phi ~ t^(1/2) dominates
        assert!((s.exponent - 0.5).abs() < 0.05, "{}", s.exponent);
        assert!(s.points.iter().all(|p| p.eta_liquid.abs() < 10.0));
    }

    #[test]
    fn quartic_square_root_diverges() {
        let m = PotentialModel::quartic(ModelParams::default()).unwrap();
        let s = entropy_regularity_scan(&m, &dyadic_grid(1.0, 20)).unwrap();
        assert!((s.exponent + 1.0 / 3.0).abs() < 0.05, "{}", s.exponent);
        assert!(s.report.pass, "{}", s.report);
    }

    #[test]
    fn quartic_linear_jump_is_bounded() {
        let params = ModelParams {
            beta_q: 1.0,
            ..ModelParams::default()
        };
        let m = PotentialModel::quartic(params).unwrap();
        let s = entropy_regularity_scan(&m, &dyadic_grid(1.0, 20)).unwrap();
        assert_eq!(s.expectation, EntropyExpectation::Bounded);
        assert!(s.report.pass, "{}", s.report);
        assert!(s.exponent > 0.0);
    }

    #[test]
    fn square_root_jump_is_not_bounded() {
        let m = PotentialModel::quartic(ModelParams::default()).unwrap();
        let s = entropy_regularity_scan(&m, &dyadic_grid(1.0, 20)).unwrap();
        assert!(matches!(
            s.expectation,
            EntropyExpectation::Diverging { .. }
        ));
        assert!(s.exponent < -EXPONENT_TOL);
    }

    #[test]
    fn grid_must_be_subcritical() {
        let m = PotentialModel::quartic(ModelParams::default()).unwrap();
        assert!(entropy_regularity_scan(&m, &[0.5, 1.0]).is_err());
        assert!(entropy_regularity_scan(&m, &dyadic_grid(1.0, 5)).is_err());
    }
}
