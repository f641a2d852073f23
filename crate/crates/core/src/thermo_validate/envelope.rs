use crate::equilibrium::{find_stationary_points, PointKind, StationaryPoint};
use crate::error::Result;
use crate::potentials::PotentialModel;

use super::derivatives::FD_STEP;
use super::report::AuditReport;

pub const ENVELOPE_TOL: f64 = 1e-6;

/// Relative half-width of the band around a point that must keep the same
/// minima count. Closer to a spinodal the branch derivatives blow up.
pub const SPINODAL_GUARD: f64 = 1e-3;

fn minima(model: &PotentialModel, p: f64, theta: f64) -> Result<Vec<StationaryPoint>> {
    Ok(find_stationary_points(model, p, theta)?
        .minima()
        .copied()
        .collect())
}

/// Free energy of the minimum nearest `phi` at a perturbed state.
fn tracked(model: &PotentialModel, p: f64, theta: f64, phi: f64) -> Result<f64> {
    let m = minima(model, p, theta)?;
    let best = m
        .iter()
        .min_by(|a, b| (a.phi - phi).abs().total_cmp(&(b.phi - phi).abs()))
        .expect("at least one minimum");
    Ok(best.f_value)
}

/// Why the envelope is not differentiable near `(p, theta)`, if it is not.
fn guard(model: &PotentialModel, p: f64, theta: f64, count: usize) -> Result<Option<String>> {
    let theta_c = model.params().theta_c;
    let dp = SPINODAL_GUARD * (p.abs() + 1.0);
    let dt = SPINODAL_GUARD * (theta.abs() + 1.0);
    if (theta - theta_c).abs() <= dt {
        return Ok(Some("critical temperature inside the stencil".into()));
    }
    for (q, t) in [
        (p - dp, theta),
        (p + dp, theta),
        (p, theta - dt),
        (p, theta + dt),
    ] {
        if q <= 0.0 {
            return Ok(Some("stencil reaches non-positive pressure".into()));
        }
        if minima(model, q, t)?.len() != count {
            return Ok(Some(
                "minima count changes under perturbation (spinodal)".into(),
            ));
        }
    }
    Ok(None)
}

/// Differentiates the branch energies `f(p, theta, phi_i(p, theta))` with
/// re-solved minima and compares against `f_p` and `f_theta` at the
/// unperturbed minimum. Each local minimum is tracked separately.
pub fn check_gibbs_envelope(
    model: &PotentialModel,
    theta_grid: &[f64],
    p_grid: &[f64],
) -> Result<AuditReport> {
    let mut report = AuditReport::new(
        format!("gibbs-envelope/{}", model.kind()),
        format!("{} theta x {} p", theta_grid.len(), p_grid.len()),
        ENVELOPE_TOL,
    );
    for &theta in theta_grid {
        for &p in p_grid {
            let eq = find_stationary_points(model, p, theta)?;
            if eq.points.iter().any(|s| s.kind == PointKind::Inflection) {
                report.skip(format!("p={p} theta={theta}: degenerate stationary point"));
                continue;
            }
            let count = eq.minima_count();
            if let Some(why) = guard(model, p, theta, count)? {
                report.skip(format!("p={p} theta={theta}: {why}"));
                continue;
            }
            for s in eq.minima() {
                let d = model.eval(p, theta, s.phi)?;
                let hp = FD_STEP * (p.abs() + 1.0);
                let ht = FD_STEP * (theta.abs() + 1.0);
                let dphi_p = (tracked(model, p + hp, theta, s.phi)?
                    - tracked(model, p - hp, theta, s.phi)?)
                    / (2.0 * hp);
                let dphi_t = (tracked(model, p, theta + ht, s.phi)?
                    - tracked(model, p, theta - ht, s.phi)?)
                    / (2.0 * ht);
                for (a, fd, what) in [(d.f_p, dphi_p, "nu"), (d.f_theta, dphi_t, "-eta")] {
                    let abs = (a - fd).abs();
                    report.record(abs, abs / (1.0 + a.abs()), || {
                        format!("{what} at p={p} theta={theta} phi={}: {a} vs {fd}", s.phi)
                    });
                }
            }
        }
    }
    Ok(report)
}
