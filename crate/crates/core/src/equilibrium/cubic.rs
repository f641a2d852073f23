//! Real roots of monic cubics `x^3 + b x^2 + c x + d`.
//!
//! The cubic is shifted to depressed form `t^3 + P t + Q` with `x = t - b/3`.
//! Three real roots use the trigonometric form; a single real root uses
//! Cardano's formula arranged to avoid cancellation. Roots are not polished
//! here; callers refine them against the function they actually care about.

use std::f64::consts::PI;

/// Discriminants within this relative distance of zero count as a double root.
const DISC_TOL: f64 = 1e-12;

/// Real roots in ascending order. Repeated roots appear with multiplicity.
pub fn real_cubic_roots(b: f64, c: f64, d: f64) -> Vec<f64> {
    let shift = b / 3.0;
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;

    let mut roots = if p == 0.0 {
        vec![(-q).cbrt()]
    } else {
        let disc = q * q / 4.0 + p * p * p / 27.0;
        let scale = q * q / 4.0 + (p * p * p / 27.0).abs();
        if disc > DISC_TOL * scale {
            // One real root.
            let s = disc.sqrt();
            let big = -(q.signum()) * (q.abs() / 2.0 + s).cbrt();
            let small = if big != 0.0 { -p / (3.0 * big) } else { 0.0 };
            vec![big + small]
        } else {
            // p < 0 here.
            let m = 2.0 * (-p / 3.0).sqrt();
            let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
            let phase = arg.acos() / 3.0;
            (0..3)
                .map(|k| m * (phase - 2.0 * PI * k as f64 / 3.0).cos())
                .collect()
        }
    };
    for r in roots.iter_mut() {
        *r -= shift;
    }
    roots.sort_by(f64::total_cmp);
    roots
}
