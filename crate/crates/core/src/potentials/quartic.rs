//! Building blocks of the piecewise-quartic potential.
//!
//! `F(x; u) = x^4/4 - u^2 x^2/2` is the symmetric double well with minima at
//! `x = ±u`. `G(x; u)` is the odd, C¹ tilt: a cubic on `|x| <= u` continued by
//! constants outside, so that `F + h G` keeps its stationary points at `±u`
//! for every real `h`.

/// Double-well `F(x; u)`.
pub fn quartic_f(x: f64, u: f64) -> f64 {
    x.powi(4) / 4.0 - u * u * x * x / 2.0
}

/// `dF/dx`.
pub fn quartic_f_prime(x: f64, u: f64) -> f64 {
    x.powi(3) - u * u * x
}

/// Odd tilt `G(x; u)`.
pub fn quartic_g(x: f64, u: f64) -> f64 {
    if x.abs() <= u {
        x.powi(3) / 3.0 - u * u * x
    } else {
        -2.0 / 3.0 * x.signum() * u.powi(3)
    }
}

/// `dG/dx`; zero outside `[-u, u]`.
pub fn quartic_g_prime(x: f64, u: f64) -> f64 {
    if x.abs() <= u {
        x * x - u * u
    } else {
        0.0
    }
}

/// Value and partial derivatives in `(x, u)` of one of the two pieces.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Jet {
    pub v: f64,
    pub x: f64,
    pub xx: f64,
    pub u: f64,
    pub uu: f64,
    pub xu: f64,
}

pub(crate) fn f_jet(x: f64, u: f64) -> Jet {
    Jet {
        v: quartic_f(x, u),
        x: quartic_f_prime(x, u),
        xx: 3.0 * x * x - u * u,
        u: -u * x * x,
        uu: -x * x,
        xu: -2.0 * u * x,
    }
}

/// Second derivatives are one-sided at `|x| = u`: the inner branch is used.
pub(crate) fn g_jet(x: f64, u: f64) -> Jet {
    if x.abs() <= u {
        Jet {
            v: quartic_g(x, u),
            x: x * x - u * u,
            xx: 2.0 * x,
            u: -2.0 * u * x,
            uu: -2.0 * x,
            xu: -2.0 * u,
        }
    } else {
        let s = x.signum();
        Jet {
            v: -2.0 / 3.0 * s * u.powi(3),
            x: 0.0,
            xx: 0.0,
            u: -2.0 * s * u * u,
            uu: -4.0 * s * u,
            xu: 0.0,
        }
    }
}
