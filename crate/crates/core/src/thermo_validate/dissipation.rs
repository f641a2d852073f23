use crate::dynamics::Trajectory;

use super::report::AuditReport;

/// Residuals may reach this multiple of the integrator tolerance.
pub const BALANCE_FACTOR: f64 = 10.0;

/// Non-negative dissipation at every sample, and a per-step energy (or,
/// in thermal mode, entropy) balance within the integrator tolerance.
pub fn check_dissipation(trajectory: &Trajectory) -> AuditReport {
    let mode = if trajectory.is_thermal() {
        "thermal"
    } else {
        "isothermal"
    };
    let tol = BALANCE_FACTOR * trajectory.tolerance;
    let mut report = AuditReport::new(
        format!("dissipation/{mode}"),
        format!("{} samples", trajectory.samples.len()),
        tol,
    );
    for (i, s) in trajectory.samples.iter().enumerate() {
        if !(s.dissipation >= 0.0) {
            report.fail(format!(
                "sample {i} (t={}): dissipation {} < 0",
                s.t, s.dissipation
            ));
        }
        // the tolerance applies to the absolute residual
        let abs = s.balance_residual.abs();
        report.record(abs, abs, || {
            format!(
                "sample {i} (t={}): balance residual {}",
                s.t, s.balance_residual
            )
        });
    }
    report
}
