use crate::error::{Error, Result};
use crate::potentials::{ModelKind, PotentialModel};

use super::cubic::real_cubic_roots;

/// Below this curvature a stationary point is degenerate and is classified
/// from the sign change of `f_phi` instead.
pub const INFLECTION_TOL: f64 = 1e-9;

/// Roots of the logarithmic cubic are kept only if `|phi| < 1 - DOMAIN_MARGIN`.
const DOMAIN_MARGIN: f64 = 1e-12;

/// Polished roots closer than this are merged.
const MERGE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointKind {
    Minimum,
    Maximum,
    Inflection,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryPoint {
    pub phi: f64,
    pub kind: PointKind,
    /// Free energy at the point. Excludes the background `f0` when the
    /// equilibrium was computed from `(u, h)` directly.
    pub f_value: f64,
    pub is_absolute_min: bool,
}

/// The stationary points of `f(p, theta, .)` at one state, sorted by `phi`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseEquilibrium {
    /// `(p, theta)` when computed from a thermodynamic state.
    pub state: Option<(f64, f64)>,
    pub u: f64,
    pub h: f64,
    pub points: Vec<StationaryPoint>,
}

impl PhaseEquilibrium {
    pub fn minima(&self) -> impl Iterator<Item = &StationaryPoint> + '_ {
        self.points.iter().filter(|s| s.kind == PointKind::Minimum)
    }

    pub fn minima_count(&self) -> usize {
        self.minima().count()
    }

    /// The absolute minimum. On the coexistence line both minima qualify
    /// and the one with larger `phi` (the liquid) is returned.
    pub fn stable(&self) -> &StationaryPoint {
        self.minima()
            .filter(|s| s.is_absolute_min)
            .last()
            .expect("a confined potential always has a minimum")
    }

    /// The other local minimum, if there is one.
    pub fn metastable(&self) -> Option<&StationaryPoint> {
        let stable = self.stable().phi;
        self.minima().find(|s| s.phi != stable)
    }

    /// Two minima of equal depth.
    pub fn is_coexistence(&self) -> bool {
        self.minima_count() == 2 && self.minima().all(|s| s.is_absolute_min)
    }

    /// Local minimum closest to `phi`.
    pub fn nearest_minimum(&self, phi: f64) -> Option<&StationaryPoint> {
        self.minima()
            .min_by(|a, b| (a.phi - phi).abs().total_cmp(&(b.phi - phi).abs()))
    }
}

/// Stationary points of `f` in `phi` at `(p, theta)`.
pub fn find_stationary_points(
    model: &PotentialModel,
    p: f64,
    theta: f64,
) -> Result<PhaseEquilibrium> {
    let u = model.u_schedule(theta)?;
    let h = model.h_field(p, theta)?.h;
    let f0 = model.background(p, theta)?.f0;
    let mut eq = stationary_points_reduced(model, u, h)?;
    for s in eq.points.iter_mut() {
        s.f_value += f0;
    }
    eq.state = Some((p, theta));
    Ok(eq)
}

/// Stationary points for a given order-parameter scale `u` and field `h`.
///
/// For the logarithmic model `u` is signed and the relevant field variable
/// is `h / a`; for the quartic model `u >= 0`.
pub fn stationary_points_reduced(
    model: &PotentialModel,
    u: f64,
    h: f64,
) -> Result<PhaseEquilibrium> {
    if !u.is_finite() || !h.is_finite() {
        return Err(Error::InvalidParams {
            name: "u, h",
            constraint: "finite",
            value: if u.is_finite() { h } else { u },
        });
    }
    let mut points = match model.kind() {
        ModelKind::Quartic => quartic_points(model, u, h)?,
        ModelKind::Logarithmic => logarithmic_points(model, u, h)?,
    };
    mark_absolute_minimum(&mut points, h);
    Ok(PhaseEquilibrium {
        state: None,
        u,
        h,
        points,
    })
}

/// Closed form: on `|phi| <= u` the gradient factors as
/// `(phi^2 - u^2)(phi + h)`, and it has no zero outside.
fn quartic_points(model: &PotentialModel, u: f64, h: f64) -> Result<Vec<StationaryPoint>> {
    let value = |phi: f64| model.landscape(u, h, phi).map(|l| l.g);
    if u == 0.0 {
        return Ok(vec![point(0.0, PointKind::Minimum, value(0.0)?)]);
    }
    let mut out = Vec::with_capacity(3);
    let left = if h < u {
        PointKind::Minimum
    } else {
        PointKind::Inflection
    };
    out.push(point(-u, left, value(-u)?));
    if h.abs() < u {
        out.push(point(-h, PointKind::Maximum, value(-h)?));
    }
    let right = if h > -u {
        PointKind::Minimum
    } else {
        PointKind::Inflection
    };
    out.push(point(u, right, value(u)?));
    Ok(out)
}

/// Roots of `phi^3 + k phi^2 + u phi - k` with `k = h / a` inside the domain,
/// polished by Newton on `f_phi`.
fn logarithmic_points(model: &PotentialModel, u: f64, h: f64) -> Result<Vec<StationaryPoint>> {
    if !(u > -1.0) {
        return Err(Error::InvalidParams {
            name: "u",
            constraint: "> -1",
            value: u,
        });
    }
    let k = h / model.params().a;
    let mut roots: Vec<f64> = real_cubic_roots(k, u, -k)
        .into_iter()
        .filter(|x| x.abs() < 1.0 - DOMAIN_MARGIN)
        .map(|x| polish(model, u, h, x))
        .collect();
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() < MERGE_TOL);

    roots
        .into_iter()
        .map(|phi| {
            let l = model.landscape(u, h, phi)?;
            let kind = classify(model, u, h, phi, l.g_phiphi);
            Ok(point(phi, kind, l.g))
        })
        .collect()
}

fn polish(model: &PotentialModel, u: f64, h: f64, mut phi: f64) -> f64 {
    for _ in 0..6 {
        let Ok(l) = model.landscape(u, h, phi) else {
            break;
        };
        if l.g_phi == 0.0 || l.g_phiphi.abs() < f64::MIN_POSITIVE {
            break;
        }
        let next = phi - l.g_phi / l.g_phiphi;
        match model.landscape(u, h, next) {
            Ok(n) if n.g_phi.abs() < l.g_phi.abs() => phi = next,
            _ => break,
        }
    }
    phi
}

fn classify(model: &PotentialModel, u: f64, h: f64, phi: f64, curvature: f64) -> PointKind {
    if curvature >= INFLECTION_TOL {
        return PointKind::Minimum;
    }
    if curvature <= -INFLECTION_TOL {
        return PointKind::Maximum;
    }
    // Degenerate: look at the sign of the gradient on either side.
    let delta = 1e-4f64.min(0.5 * (1.0 - phi.abs()));
    let slope = |x: f64| {
        model
            .landscape(u, h, x)
            .map(|l| l.g_phi)
            .unwrap_or(f64::NAN)
    };
    let (below, above) = (slope(phi - delta), slope(phi + delta));
    match (below < 0.0, above > 0.0, below > 0.0, above < 0.0) {
        (true, true, _, _) => PointKind::Minimum,
        (_, _, true, true) => PointKind::Maximum,
        _ => PointKind::Inflection,
    }
}

fn point(phi: f64, kind: PointKind, f_value: f64) -> StationaryPoint {
    StationaryPoint {
        phi,
        kind,
        f_value,
        is_absolute_min: false,
    }
}

/// Exactly at `h = 0` the two minima are degenerate and both are reported.
fn mark_absolute_minimum(points: &mut [StationaryPoint], h: f64) {
    let minima: Vec<usize> = (0..points.len())
        .filter(|&i| points[i].kind == PointKind::Minimum)
        .collect();
    if minima.len() == 2 && h == 0.0 {
        for i in minima {
            points[i].is_absolute_min = true;
        }
        return;
    }
    if let Some(&best) = minima
        .iter()
        .min_by(|&&a, &&b| points[a].f_value.total_cmp(&points[b].f_value))
    {
        points[best].is_absolute_min = true;
    }
}
