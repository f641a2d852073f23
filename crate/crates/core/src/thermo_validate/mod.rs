//! Audits of the thermodynamic structure: derivative consistency, Gibbs
//! envelope relations, dissipation balances and entropy regularity near
//! the critical point.

mod derivatives;
mod dissipation;
mod entropy;
mod envelope;
mod report;

pub use derivatives::{check_derivatives, DERIVATIVE_TOL, FD_STEP};
pub use dissipation::{check_dissipation, BALANCE_FACTOR};
pub use entropy::{
    dyadic_grid, entropy_regularity_scan, expected_entropy_behaviour, EntropyExpectation,
    EntropyPoint, EntropyScan, EXPONENT_TOL, FIT_POINTS,
};
pub use envelope::{check_gibbs_envelope, ENVELOPE_TOL, SPINODAL_GUARD};
pub use report::AuditReport;

use crate::dynamics::{
    relax_homogeneous, relax_thermal_homogeneous, PressureSchedule, StepControl,
};
use crate::equilibrium::{find_stationary_points, spinodal};
use crate::error::{Error, Result};
use crate::potentials::{ModelParams, PotentialModel};

/// Seed of the derivative audit run by [`admit`].
pub const ADMISSION_SEED: u64 = 0x5eed;

/// Temperatures of the default envelope grid, in units of `theta_c`.
pub const ENVELOPE_THETAS: [f64; 6] = [0.6, 0.7, 0.8, 0.9, 1.1, 1.3];

/// Pressures of the default envelope grid: multiples of `p0(theta)`.
pub const ENVELOPE_P_FACTORS: [f64; 7] = [0.5, 0.8, 0.95, 1.0, 1.05, 1.2, 1.6];

/// Runs the envelope audit over `ENVELOPE_THETAS` and, per temperature,
/// pressures `ENVELOPE_P_FACTORS * p0(theta)`.
pub fn default_envelope_audit(model: &PotentialModel) -> Result<AuditReport> {
    let theta_c = model.params().theta_c;
    let mut total: Option<AuditReport> = None;
    for s in ENVELOPE_THETAS {
        let theta = s * theta_c;
        let p0 = model.coexistence_pressure(theta)?;
        let ps: Vec<f64> = ENVELOPE_P_FACTORS.iter().map(|f| f * p0).collect();
        let r = check_gibbs_envelope(model, &[theta], &ps)?;
        total = Some(match total {
            None => r,
            Some(acc) => merge(acc, r),
        });
    }
    let mut r = total.expect("non-empty grid");
    r.grid = format!(
        "{} theta x {} p per theta",
        ENVELOPE_THETAS.len(),
        ENVELOPE_P_FACTORS.len()
    );
    Ok(r)
}

fn merge(mut a: AuditReport, b: AuditReport) -> AuditReport {
    a.n_checked += b.n_checked;
    a.n_skipped += b.n_skipped;
    a.max_abs_error = a.max_abs_error.max(b.max_abs_error);
    a.max_rel_error = a.max_rel_error.max(b.max_rel_error);
    a.pass &= b.pass;
    a.offending = a.offending.or(b.offending);
    a.skipped.extend(b.skipped);
    a
}

/// Gatekeeper for new potential variants: the derivative and envelope
/// audits must both pass.
pub fn admit(model: &PotentialModel) -> Result<Vec<AuditReport>> {
    let reports = vec![
        check_derivatives(model, 200, ADMISSION_SEED)?,
        default_envelope_audit(model)?,
    ];
    for r in &reports {
        if !r.pass {
            return Err(Error::AuditFailed {
                check: r.name.clone(),
                detail: r.offending.clone().unwrap_or_default(),
            });
        }
    }
    Ok(reports)
}

/// Every audit on both models with `params`: derivatives (`n_samples`
/// points), envelope, dissipation of canned relaxations, and the entropy
/// scan on the dyadic approach to `theta_c`.
pub fn audit_suite(params: &ModelParams, n_samples: usize, seed: u64) -> Result<Vec<AuditReport>> {
    let mut out = Vec::new();
    let models = [
        PotentialModel::logarithmic(params.clone())?,
        PotentialModel::quartic(params.clone())?,
    ];
    for m in &models {
        out.push(check_derivatives(m, n_samples, seed)?);
        out.push(default_envelope_audit(m)?);
        let theta = 0.8 * params.theta_c;
        let p0 = m.coexistence_pressure(theta)?;
        // off the quartic kinks, which are stationary for every field
        let phi0 = 0.9 * find_stationary_points(m, 0.7 * p0, theta)?.stable().phi;
        let ramp = PressureSchedule::piecewise(vec![(0.0, 0.7 * p0), (10.0, 1.3 * p0)])?;
        let control = StepControl::default();
        let t_end = 15.0 * params.tau;
        let mut iso =
            check_dissipation(&relax_homogeneous(m, phi0, theta, &ramp, t_end, &control)?);
        // Jump just past the liquid spinodal, well below theta_c: the released
        // heat drives the quartic liquid into negative heat capacity otherwise.
        let theta_th = 0.5 * params.theta_c;
        let p0_th = m.coexistence_pressure(theta_th)?;
        let phi_th = 0.9
            * find_stationary_points(m, 0.7 * p0_th, theta_th)?
                .stable()
                .phi;
        let upper =
            spinodal(m, theta_th)?.map_or(1.3 * p0_th, |b| b.upper + 0.05 * (b.upper - p0_th));
        let step = PressureSchedule::constant(upper)?;
        let mut thermal = check_dissipation(&relax_thermal_homogeneous(
            m, phi_th, theta_th, &step, 0.0, t_end, &control,
        )?);
        for r in [&mut iso, &mut thermal] {
            r.name = format!("{}/{}", r.name, m.kind());
        }
        out.push(iso);
        out.push(thermal);
        out.push(entropy_regularity_scan(m, &dyadic_grid(params.theta_c, 20))?.report);
    }
    let linear = ModelParams {
        beta_q: 1.0,
        ..params.clone()
    };
    let mut r = entropy_regularity_scan(
        &PotentialModel::quartic(linear)?,
        &dyadic_grid(params.theta_c, 20),
    )?
    .report;
    r.name.push_str("/beta_q=1");
    out.push(r);
    Ok(out)
}
