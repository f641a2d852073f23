use crate::error::{Error, Result};

/// Prescribed homogeneous pressure `p(t)`: constant, or piecewise linear
/// through `(t_i, p_i)` and constant outside the knots.
#[derive(Debug, Clone, PartialEq)]
pub enum PressureSchedule {
    Constant(f64),
    Piecewise(Vec<(f64, f64)>),
}

impl PressureSchedule {
    pub fn constant(p: f64) -> Result<Self> {
        let s = PressureSchedule::Constant(p);
        s.validate()?;
        Ok(s)
    }

    pub fn piecewise(knots: Vec<(f64, f64)>) -> Result<Self> {
        let s = PressureSchedule::Piecewise(knots);
        s.validate()?;
        Ok(s)
    }

    /// Linear ramp from `p_start` at `t_start` to `p_end` at `t_end`.
    pub fn ramp(t_start: f64, p_start: f64, t_end: f64, p_end: f64) -> Result<Self> {
        Self::piecewise(vec![(t_start, p_start), (t_end, p_end)])
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |reason: String| Err(Error::InvalidSchedule { reason });
        match self {
            PressureSchedule::Constant(p) => {
                if !(*p > 0.0 && p.is_finite()) {
                    return bad(format!("pressure must be positive and finite, got {p}"));
                }
            }
            PressureSchedule::Piecewise(knots) => {
                if knots.is_empty() {
                    return bad("no knots".into());
                }
                for (i, &(t, p)) in knots.iter().enumerate() {
                    if !t.is_finite() {
                        return bad(format!("knot {i}: time {t} is not finite"));
                    }
                    if !(p > 0.0 && p.is_finite()) {
                        return bad(format!("knot {i}: pressure must be positive, got {p}"));
                    }
                    if i > 0 && !(t > knots[i - 1].0) {
                        return bad(format!("knot {i}: times must increase strictly"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn pressure(&self, t: f64) -> f64 {
        match self {
            PressureSchedule::Constant(p) => *p,
            PressureSchedule::Piecewise(k) => {
                let i = k.partition_point(|&(ti, _)| ti <= t);
                if i == 0 {
                    k[0].1
                } else if i == k.len() {
                    k[k.len() - 1].1
                } else {
                    let (t0, p0) = k[i - 1];
                    let (t1, p1) = k[i];
                    p0 + (p1 - p0) * (t - t0) / (t1 - t0)
                }
            }
        }
    }

    /// `dp/dt`, taken from the right at knots.
    pub fn rate(&self, t: f64) -> f64 {
        match self {
            PressureSchedule::Constant(_) => 0.0,
            PressureSchedule::Piecewise(k) => {
                let i = k.partition_point(|&(ti, _)| ti <= t);
                if i == 0 || i == k.len() {
                    0.0
                } else {
                    let (t0, p0) = k[i - 1];
                    let (t1, p1) = k[i];
                    (p1 - p0) / (t1 - t0)
                }
            }
        }
    }

    /// Knot times strictly inside `(t0, t1)`.
    pub fn breakpoints(&self, t0: f64, t1: f64) -> Vec<f64> {
        match self {
            PressureSchedule::Constant(_) => Vec::new(),
            PressureSchedule::Piecewise(k) => k
                .iter()
                .map(|x| x.0)
                .filter(|&t| t > t0 && t < t1)
                .collect(),
        }
    }

    pub fn is_constant(&self) -> bool {
        match self {
            PressureSchedule::Constant(_) => true,
            PressureSchedule::Piecewise(k) => k.windows(2).all(|w| w[0].1 == w[1].1),
        }
    }
}
