use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::Result;
use crate::potentials::{ModelKind, Partials, PotentialModel};

use super::report::AuditReport;

pub const DERIVATIVE_TOL: f64 = 1e-6;

/// Relative finite-difference step, scaled by `|x| + 1`.
pub const FD_STEP: f64 = 1e-6;

/// Temperatures this close to `theta_c` (relative) are not sampled.
const CRITICAL_EXCLUSION: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Var {
    P,
    Theta,
    Phi,
}

impl Var {
    fn name(self) -> &'static str {
        match self {
            Var::P => "p",
            Var::Theta => "theta",
            Var::Phi => "phi",
        }
    }
}

/// Smooth piece of the model a point lies on. Differences are one-sided
/// when a central stencil would straddle two pieces.
fn piece(model: &PotentialModel, theta: f64, phi: f64) -> Result<(bool, bool)> {
    let below = theta < model.params().theta_c;
    Ok(match model.kind() {
        ModelKind::Quartic => (below, phi.abs() <= model.u_schedule(theta)?),
        ModelKind::Logarithmic => (below, true),
    })
}

fn firsts(d: &Partials) -> [f64; 4] {
    [d.f, d.f_p, d.f_theta, d.f_phi]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Stencil {
    Central,
    Forward,
    Backward,
}

/// Derivative of `[f, f_p, f_theta, f_phi]` along `var`.
fn fd_firsts(
    model: &PotentialModel,
    at: [f64; 3],
    var: Var,
) -> Result<Option<([f64; 4], Stencil)>> {
    let idx = var as usize;
    let x = at[idx];
    let h = FD_STEP * (x.abs() + 1.0);
    let shifted = |dx: f64| {
        let mut q = at;
        q[idx] += dx;
        q
    };
    let key = |q: [f64; 3]| piece(model, q[1], q[2]);
    let eval = |dx: f64| -> Result<[f64; 4]> {
        let q = shifted(dx);
        Ok(firsts(&model.eval(q[0], q[1], q[2])?))
    };
    let base = key(at)?;
    let same = |offsets: &[f64]| -> Result<bool> {
        for &o in offsets {
            let q = shifted(o * h);
            if (var == Var::Phi && !model.admits_phi(q[2])) || key(q)? != base {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let mut out = [0.0; 4];
    let stencil = if same(&[-1.0, 1.0])? {
        let (a, b) = (eval(-h)?, eval(h)?);
        for i in 0..4 {
            out[i] = (b[i] - a[i]) / (2.0 * h);
        }
        Stencil::Central
    } else {
        let dir = if same(&[1.0, 2.0])? {
            1.0
        } else if same(&[-1.0, -2.0])? {
            -1.0
        } else {
            return Ok(None);
        };
        let (y0, y1, y2) = (eval(0.0)?, eval(dir * h)?, eval(2.0 * dir * h)?);
        for i in 0..4 {
            out[i] = dir * (-3.0 * y0[i] + 4.0 * y1[i] - y2[i]) / (2.0 * h);
        }
        if dir > 0.0 {
            Stencil::Forward
        } else {
            Stencil::Backward
        }
    };
    Ok(Some((out, stencil)))
}

/// Analytic entries matching `fd_firsts` along `var`.
fn analytic_column(d: &Partials, var: Var) -> [(f64, &'static str); 4] {
    match var {
        Var::P => [
            (d.f_p, "f_p"),
            (d.f_pp, "f_pp"),
            (d.f_ptheta, "f_ptheta"),
            (d.f_pphi, "f_pphi"),
        ],
        Var::Theta => [
            (d.f_theta, "f_theta"),
            (d.f_ptheta, "f_ptheta"),
            (d.f_thetatheta, "f_thetatheta"),
            (d.f_thetaphi, "f_thetaphi"),
        ],
        Var::Phi => [
            (d.f_phi, "f_phi"),
            (d.f_pphi, "f_pphi"),
            (d.f_thetaphi, "f_thetaphi"),
            (d.f_phiphi, "f_phiphi"),
        ],
    }
}

/// Compares analytic first and second partials with finite differences at
/// a point. Returns the number of one-sided stencils used.
pub(crate) fn audit_point(
    model: &PotentialModel,
    report: &mut AuditReport,
    p: f64,
    theta: f64,
    phi: f64,
) -> Result<usize> {
    let d = model.eval(p, theta, phi)?;
    let mut one_sided = 0;
    for var in [Var::P, Var::Theta, Var::Phi] {
        let Some((fd, stencil)) = fd_firsts(model, [p, theta, phi], var)? else {
            report.skip(format!(
                "p={p} theta={theta} phi={phi}: no smooth stencil in {}",
                var.name()
            ));
            continue;
        };
        if stencil != Stencil::Central {
            one_sided += 1;
        }
        for ((a, name), fd) in analytic_column(&d, var).into_iter().zip(fd) {
            let abs = (a - fd).abs();
            report.record(abs, abs / (1.0 + a.abs()), || {
                format!(
                    "{name} vs d/d{} at p={p} theta={theta} phi={phi}: {a} vs {fd}",
                    var.name()
                )
            });
        }
    }
    // psi + p f_p = f with psi = f - p f_p
    let psi = d.f - p * d.f_p;
    let abs = (psi + p * d.f_p - d.f).abs();
    report.record(abs, abs / (1.0 + d.f.abs()), || {
        format!("psi + p f_p != f at p={p} theta={theta} phi={phi}")
    });
    Ok(one_sided)
}

/// Random admissible point. Every fourth quartic point sits on a kink.
fn sample_point(model: &PotentialModel, rng: &mut StdRng, i: usize) -> Result<(f64, f64, f64)> {
    let prm = model.params();
    let kink = model.kind() == ModelKind::Quartic && i % 4 == 3;
    let theta = loop {
        let s: f64 = if kink {
            rng.gen_range(0.3..1.0)
        } else {
            rng.gen_range(0.3..1.5)
        };
        if (s - 1.0).abs() >= CRITICAL_EXCLUSION {
            break s * prm.theta_c;
        }
    };
    let p = prm.p_c * rng.gen_range(0.05f64..3.0);
    let phi = match model.kind() {
        ModelKind::Logarithmic => rng.gen_range(-0.95..0.95),
        ModelKind::Quartic if kink => {
            let u = model.u_schedule(theta)?;
            if rng.gen_bool(0.5) {
                u
            } else {
                -u
            }
        }
        ModelKind::Quartic => rng.gen_range(-1.5..1.5),
    };
    Ok((p, theta, phi))
}

/// Analytic partials against central differences at `n_samples` random
/// points; quartic points on the kinks `phi = ±u` use one-sided stencils.
pub fn check_derivatives(
    model: &PotentialModel,
    n_samples: usize,
    seed: u64,
) -> Result<AuditReport> {
    let mut report = AuditReport::new(
        format!("derivatives/{}", model.kind()),
        format!("{n_samples} random points, seed {seed}"),
        DERIVATIVE_TOL,
    );
    let mut rng = StdRng::seed_from_u64(seed);
    for i in 0..n_samples {
        let (p, theta, phi) = sample_point(model, &mut rng, i)?;
        audit_point(model, &mut report, p, theta, phi)?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::ModelParams;

    #[test]
    fn both_models_pass() {
        for m in [
            PotentialModel::logarithmic(ModelParams::default()).unwrap(),
            PotentialModel::quartic(ModelParams::default()).unwrap(),
        ] {
            let r = check_derivatives(&m, 200, 7).unwrap();
            assert!(r.pass, "{r}");
            assert_eq!(r.n_skipped, 0);
            assert!(r.max_rel_error < 1e-6);
        }
    }

    #[test]
    fn kinks_use_one_sided_stencils() {
        let m = PotentialModel::quartic(ModelParams::default()).unwrap();
        let theta = 0.7;
        let u = m.u_schedule(theta).unwrap();
        let mut r = AuditReport::new("kink", "", 1e-5);
        for phi in [u, -u] {
            let n = audit_point(&m, &mut r, 0.4, theta, phi).unwrap();
            assert_eq!(n, 2, "theta and phi stencils cross the kink");
        }
        assert!(r.pass, "{r}");
    }

    #[test]
    fn deterministic_for_seed() {
        let m = PotentialModel::logarithmic(ModelParams::default()).unwrap();
        assert_eq!(
            check_derivatives(&m, 20, 3).unwrap(),
            check_derivatives(&m, 20, 3).unwrap()
        );
    }

    #[test]
    fn logarithmic_flat_at_critical_point() {
        let m = PotentialModel::logarithmic(ModelParams::default()).unwrap();
        let p0 = m.coexistence_pressure(1.0).unwrap();
        assert_eq!(m.eval(p0, 1.0, 0.0).unwrap().f_phiphi, 0.0);
    }

    #[test]
    fn detects_a_wrong_partial() {
        // a constant offset in phi is invisible to f_phi but not to f
        #[derive(Debug)]
        struct Skewed;
        impl crate::potentials::Background for Skewed {
            fn eval(&self, p: f64, theta: f64) -> Result<crate::potentials::BackgroundValues> {
                Ok(crate::potentials::BackgroundValues {
                    f0: p * theta,
                    f0_p: theta,
                    f0_theta: p,
                    f0_pp: 0.0,
                    f0_ptheta: 0.5,
                    f0_thetatheta: 0.0,
                })
            }
        }
        let m = PotentialModel::logarithmic(ModelParams::default())
            .unwrap()
            .with_background(std::sync::Arc::new(Skewed));
        let r = check_derivatives(&m, 5, 1).unwrap();
        assert!(!r.pass);
        assert!(r.offending.as_deref().unwrap().contains("f_ptheta"));
    }
}
