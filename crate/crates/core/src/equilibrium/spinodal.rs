use crate::error::{Error, Result};
use crate::potentials::{ModelKind, PotentialModel};

use super::stationary::stationary_points_reduced;

const BISECTION_TOL: f64 = 1e-12;

/// Field interval on which two local minima coexist.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinodalBounds {
    pub lower: f64,
    pub upper: f64,
}

impl SpinodalBounds {
    pub fn contains(&self, h: f64) -> bool {
        self.lower < h && h < self.upper
    }
}

/// Spinodal field bounds at scale `u`, in units of the field `h`.
///
/// `None` when `u` admits a single minimum for every field.
pub fn spinodal_reduced(model: &PotentialModel, u: f64) -> Result<Option<SpinodalBounds>> {
    match model.kind() {
        ModelKind::Quartic => {
            if !(u >= 0.0) {
                return Err(Error::InvalidParams {
                    name: "u",
                    constraint: ">= 0",
                    value: u,
                });
            }
            Ok((u > 0.0).then_some(SpinodalBounds {
                lower: -u,
                upper: u,
            }))
        }
        ModelKind::Logarithmic => {
            if !(u > -1.0) {
                return Err(Error::InvalidParams {
                    name: "u",
                    constraint: "> -1",
                    value: u,
                });
            }
            if u >= 0.0 {
                return Ok(None);
            }
            let a = model.params().a;
            let k = critical_reduced_field(model, u)?;
            Ok(Some(SpinodalBounds {
                lower: -k * a,
                upper: k * a,
            }))
        }
    }
}

/// Spinodal bounds in pressure at temperature `theta`: the pressures at
/// which the metastable branch ends.
pub fn spinodal(model: &PotentialModel, theta: f64) -> Result<Option<SpinodalBounds>> {
    let u = model.u_schedule(theta)?;
    let Some(b) = spinodal_reduced(model, u)? else {
        return Ok(None);
    };
    // h = p - p0(theta)
    let p0 = model.coexistence_pressure(theta)?;
    Ok(Some(SpinodalBounds {
        lower: p0 + b.lower,
        upper: p0 + b.upper,
    }))
}

/// Largest `k = h/a` with two minima for the logarithmic model, `u < 0`.
fn critical_reduced_field(model: &PotentialModel, u: f64) -> Result<f64> {
    let a = model.params().a;
    let count = |k: f64| stationary_points_reduced(model, u, k * a).map(|e| e.minima_count());
    let (mut lo, mut hi) = (0.0, -u);
    if count(hi)? >= 2 {
        // The root lies below |u| for every u < 0; guard against rounding.
        return Ok(hi);
    }
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if count(mid)? >= 2 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
