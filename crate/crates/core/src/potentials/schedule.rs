//! Temperature and pressure schedules entering the potentials.

use super::{ModelKind, ModelParams};

/// A scalar function of temperature with its first two derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarJet {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

impl ScalarJet {
    const ZERO: ScalarJet = ScalarJet {
        value: 0.0,
        d1: 0.0,
        d2: 0.0,
    };
}

/// Order-parameter scale `u(theta)` for either model.
pub(crate) fn u_jet(kind: ModelKind, params: &ModelParams, theta: f64) -> ScalarJet {
    match kind {
        ModelKind::Logarithmic => log_u_jet(params, theta),
        ModelKind::Quartic => quartic_u_jet(params, theta),
    }
}

/// `sgn(s - 1) |1 - s|^(2 beta)` with `s = (theta / theta_c)^q`.
///
/// Below the critical temperature this is `-(1 - s)^(2 beta)`; the sign-
/// preserving form continues it increasingly above `theta_c`.
fn log_u_jet(params: &ModelParams, theta: f64) -> ScalarJet {
    let (q, e) = (params.q, 2.0 * params.beta);
    let s = (theta / params.theta_c).powf(q);
    let s1 = q * s / theta;
    let s2 = q * (q - 1.0) * s / (theta * theta);
    let w = s - 1.0;
    let aw = w.abs();
    let sg = if w > 0.0 {
        1.0
    } else if w < 0.0 {
        -1.0
    } else {
        0.0
    };
    let value = sg * aw.powf(e);
    if w == 0.0 {
        let d1 = if e > 1.0 {
            0.0
        } else if e == 1.0 {
            s1
        } else {
            f64::INFINITY
        };
        let d2 = if e == 1.0 {
            s2
        } else if e > 2.0 {
            0.0
        } else {
            f64::INFINITY
        };
        return ScalarJet { value, d1, d2 };
    }
    let d1 = e * aw.powf(e - 1.0) * s1;
    let curvature = if e == 1.0 {
        0.0
    } else {
        e * (e - 1.0) * sg * aw.powf(e - 2.0) * s1 * s1
    };
    let d2 = curvature + e * aw.powf(e - 1.0) * s2;
    ScalarJet { value, d1, d2 }
}

/// Volume-jump schedule `dnu_ref (1 - theta/theta_c)^beta_q` of the quartic
/// model, zero at and above the critical temperature.
pub(crate) fn quartic_dnu_jet(params: &ModelParams, theta: f64) -> ScalarJet {
    let t = 1.0 - theta / params.theta_c;
    if t <= 0.0 {
        return ScalarJet::ZERO;
    }
    let (b, tc) = (params.beta_q, params.theta_c);
    let value = params.dnu_ref * t.powf(b);
    ScalarJet {
        value,
        d1: -params.dnu_ref * b * t.powf(b - 1.0) / tc,
        d2: params.dnu_ref * b * (b - 1.0) * t.powf(b - 2.0) / (tc * tc),
    }
}

/// `(3 dnu / 4)^(1/3)`, i.e. `C t^(beta_q / 3)`.
fn quartic_u_jet(params: &ModelParams, theta: f64) -> ScalarJet {
    let t = 1.0 - theta / params.theta_c;
    if t <= 0.0 || params.dnu_ref == 0.0 {
        return ScalarJet::ZERO;
    }
    let tc = params.theta_c;
    let e = params.beta_q / 3.0;
    let value = (0.75 * params.dnu_ref).cbrt() * t.powf(e);
    ScalarJet {
        value,
        d1: -e * value / (t * tc),
        d2: e * (e - 1.0) * value / (t * t * tc * tc),
    }
}

/// Coexistence line `p0 = p_c exp(A (1 - theta_c / theta))`.
pub(crate) fn p0_jet(params: &ModelParams, theta: f64) -> ScalarJet {
    let (pc, a, tc) = (params.p_c, params.p0_slope, params.theta_c);
    let value = pc * (a * (1.0 - tc / theta)).exp();
    let g = a * tc / (theta * theta);
    ScalarJet {
        value,
        d1: value * g,
        d2: value * (g * g - 2.0 * a * tc / theta.powi(3)),
    }
}

/// Ordering field `h = p - p0(theta)` with its partials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldValues {
    pub h: f64,
    pub h_p: f64,
    pub h_theta: f64,
    pub h_pp: f64,
    pub h_ptheta: f64,
    pub h_thetatheta: f64,
}

pub(crate) fn h_field(params: &ModelParams, p: f64, theta: f64) -> FieldValues {
    let p0 = p0_jet(params, theta);
    FieldValues {
        h: p - p0.value,
        h_p: 1.0,
        h_theta: -p0.d1,
        h_pp: 0.0,
        h_ptheta: 0.0,
        h_thetatheta: -p0.d2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd<F: Fn(f64) -> f64>(f: F, x: f64) -> f64 {
        let h = 1e-6 * (x.abs() + 1.0);
        (f(x + h) - f(x - h)) / (2.0 * h)
    }

    #[test]
    fn log_schedule_values() {
        let p = ModelParams::default();
        assert_eq!(log_u_jet(&p, 1.0).value, 0.0);
        let p = ModelParams {
            q: 1.0,
            beta: 0.5,
            theta_c: 2.0,
            ..Default::default()
        };
        assert!((log_u_jet(&p, 1.0).value + 0.5).abs() < 1e-15);
        assert!((log_u_jet(&p, 1.0).d1 - 0.5).abs() < 1e-15);
    }

    #[test]
    fn log_schedule_derivatives_match_differences() {
        for &(q, beta) in &[(1.0, 0.5), (2.0, 0.3), (0.5, 1.2), (3.0, 0.8)] {
            let p = ModelParams {
                q,
                beta,
                ..Default::default()
            };
            for &theta in &[0.2, 0.5, 0.8, 0.95, 1.1, 1.7] {
                let j = log_u_jet(&p, theta);
                let d1 = fd(|t| log_u_jet(&p, t).value, theta);
                let d2 = fd(|t| log_u_jet(&p, t).d1, theta);
                assert!(
                    (j.d1 - d1).abs() < 1e-6 * (1.0 + j.d1.abs()),
                    "{q} {beta} {theta}"
                );
                assert!(
                    (j.d2 - d2).abs() < 1e-5 * (1.0 + j.d2.abs()),
                    "{q} {beta} {theta}"
                );
            }
        }
    }

    #[test]
    fn log_schedule_is_increasing_and_bounded_below() {
        for &(q, beta) in &[(1.0, 0.5), (2.0, 0.3), (0.5, 1.2)] {
            let p = ModelParams {
                q,
                beta,
                ..Default::default()
            };
            let mut prev = -1.0;
            for i in 1..400 {
                let theta = i as f64 * 0.005;
                let u = log_u_jet(&p, theta).value;
                assert!(u > prev, "not increasing at theta = {theta}");
                assert!(u > -1.0);
                if theta != 1.0 {
                    assert_eq!(u > 0.0, theta > 1.0);
                }
                prev = u;
            }
        }
    }

    #[test]
    fn quartic_schedule() {
        let p = ModelParams {
            dnu_ref: 4.0 / 3.0,
            beta_q: 1.0,
            ..Default::default()
        };
        // theta -> 0 limit of (3 dnu / 4)^(1/3)
        assert!((quartic_u_jet(&p, 1e-300).value - 1.0).abs() < 1e-15);
        assert_eq!(quartic_u_jet(&p, 1.0), ScalarJet::ZERO);
        assert_eq!(quartic_u_jet(&p, 1.5), ScalarJet::ZERO);
        let p = ModelParams::default();
        for &theta in &[0.1, 0.5, 0.9, 0.99] {
            let j = quartic_u_jet(&p, theta);
            let dnu = quartic_dnu_jet(&p, theta);
            assert!((4.0 * j.value.powi(3) / 3.0 - dnu.value).abs() < 1e-14);
            assert!(
                (j.d1 - fd(|t| quartic_u_jet(&p, t).value, theta)).abs()
                    < 1e-6 * (1.0 + j.d1.abs())
            );
            assert!(
                (j.d2 - fd(|t| quartic_u_jet(&p, t).d1, theta)).abs() < 1e-5 * (1.0 + j.d2.abs())
            );
            assert!(
                (dnu.d1 - fd(|t| quartic_dnu_jet(&p, t).value, theta)).abs()
                    < 1e-6 * (1.0 + dnu.d1.abs())
            );
        }
    }

    #[test]
    fn coexistence_line() {
        let p = ModelParams::default();
        assert_eq!(p0_jet(&p, 1.0).value, 1.0);
        let v = p0_jet(&p, 0.9).value;
        assert!((v - (7.0f64 * (1.0 - 1.0 / 0.9)).exp()).abs() < 1e-15);
        assert!((v - 0.4594).abs() < 1e-4);
        assert!(p0_jet(&p, 1e-3).value < 1e-300);
        for &theta in &[0.3, 0.7, 1.0, 1.4] {
            let j = p0_jet(&p, theta);
            assert!(j.d1 > 0.0);
            assert!((j.d1 - fd(|t| p0_jet(&p, t).value, theta)).abs() < 1e-7 * (1.0 + j.d1));
            assert!((j.d2 - fd(|t| p0_jet(&p, t).d1, theta)).abs() < 1e-6 * (1.0 + j.d2.abs()));
        }
    }

    #[test]
    fn field_is_affine_in_pressure() {
        let p = ModelParams::default();
        let p0 = p0_jet(&p, 0.8).value;
        assert_eq!(h_field(&p, p0, 0.8).h, 0.0);
        assert!((h_field(&p, p0 + 0.1, 0.8).h - 0.1).abs() < 1e-15);
        for i in 1..30 {
            for j in 1..30 {
                let (pr, th) = (0.07 * i as f64, 0.05 * j as f64);
                let h = h_field(&p, pr, th).h;
                assert_eq!(h.signum(), (pr - p0_jet(&p, th).value).signum());
            }
        }
    }
}
