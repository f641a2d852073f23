use crate::error::{Error, Result};
use crate::potentials::{ModelKind, PotentialModel};

/// Logarithmic profiles must keep `|phi| < 1 - DOMAIN_GUARD` after every step.
pub const DOMAIN_GUARD: f64 = 1e-10;

/// Default explicit step as a fraction of `dx^2 tau / kappa`.
pub const DEFAULT_DT_FACTOR: f64 = 0.4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Boundary {
    /// Zero normal derivative, by reflection through a ghost node.
    NoFlux,
    /// End values held fixed.
    Dirichlet { left: f64, right: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityMode {
    /// `tau phi_t = kappa phi_xx - f_phi`.
    ConstantRho,
    /// `rho tau phi_t = kappa (rho phi_x)_x - rho f_phi` with
    /// `rho = 1 / f_p` frozen at the initial profile.
    FrozenRhoField,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PdeScheme {
    Explicit,
    /// Gradient term implicit, potential term explicit.
    SemiImplicit,
}

/// Order parameter on a uniform grid at frozen `(p, theta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile1D {
    x0: f64,
    dx: f64,
    phi: Vec<f64>,
    rho: Vec<f64>,
    boundary: Boundary,
    density: DensityMode,
    p: f64,
    theta: f64,
}

impl Profile1D {
    /// Dirichlet end values overwrite the first and last entries of `phi`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        model: &PotentialModel,
        x0: f64,
        dx: f64,
        mut phi: Vec<f64>,
        boundary: Boundary,
        density: DensityMode,
        p: f64,
        theta: f64,
    ) -> Result<Self> {
        let n = phi.len();
        if n < 3 {
            return Err(Error::InvalidGrid {
                reason: format!("need at least 3 nodes, got {n}"),
            });
        }
        if !(dx > 0.0 && dx.is_finite() && x0.is_finite()) {
            return Err(Error::InvalidGrid {
                reason: format!("need finite x0 and dx > 0, got x0 = {x0}, dx = {dx}"),
            });
        }
        if let Boundary::Dirichlet { left, right } = boundary {
            phi[0] = left;
            phi[n - 1] = right;
        }
        if let Some(&bad) = phi.iter().find(|&&v| !model.admits_phi(v)) {
            return Err(Error::DomainError { phi: bad });
        }
        let rho = match density {
            DensityMode::ConstantRho => vec![1.0; n],
            DensityMode::FrozenRhoField => phi
                .iter()
                .map(|&v| {
                    let nu = model.eval(p, theta, v)?.f_p;
                    if nu > 0.0 {
                        Ok(1.0 / nu)
                    } else {
                        Err(Error::NonPositiveVolume {
                            p,
                            theta,
                            phi: v,
                            nu,
                        })
                    }
                })
                .collect::<Result<_>>()?,
        };
        // reject states the model cannot evaluate
        model.eval(p, theta, phi[0])?;
        Ok(Profile1D {
            x0,
            dx,
            phi,
            rho,
            boundary,
            density,
            p,
            theta,
        })
    }

    /// Samples `init` at `n` nodes spanning `[x0, x1]`.
    #[allow(clippy::too_many_arguments)]
    pub fn from_fn(
        model: &PotentialModel,
        x0: f64,
        x1: f64,
        n: usize,
        init: impl Fn(f64) -> f64,
        boundary: Boundary,
        density: DensityMode,
        p: f64,
        theta: f64,
    ) -> Result<Self> {
        if n < 3 || !(x1 > x0) {
            return Err(Error::InvalidGrid {
                reason: format!("need n >= 3 and x1 > x0, got n = {n}, [{x0}, {x1}]"),
            });
        }
        let dx = (x1 - x0) / (n - 1) as f64;
        let phi = (0..n).map(|i| init(x0 + dx * i as f64)).collect();
        Self::new(model, x0, dx, phi, boundary, density, p, theta)
    }

    pub fn len(&self) -> usize {
        self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + self.dx * i as f64
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.x(i)).collect()
    }

    pub fn phi(&self) -> &[f64] {
        &self.phi
    }

    pub fn rho(&self) -> &[f64] {
        &self.rho
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn density(&self) -> DensityMode {
        self.density
    }

    pub fn state(&self) -> (f64, f64) {
        (self.p, self.theta)
    }

    fn rho_edge(&self, i: usize) -> f64 {
        0.5 * (self.rho[i] + self.rho[i + 1])
    }

    /// Largest explicit step for which the diffusion part is stable.
    pub fn stability_bound(&self, model: &PotentialModel) -> f64 {
        let prm = model.params();
        if prm.kappa == 0.0 {
            return f64::INFINITY;
        }
        let n = self.len();
        let mut ratio: f64 = 0.0;
        for i in 0..n {
            let left = if i > 0 {
                self.rho_edge(i - 1)
            } else {
                self.rho_edge(0)
            };
            let right = if i + 1 < n {
                self.rho_edge(i)
            } else {
                self.rho_edge(n - 2)
            };
            ratio = ratio.max(0.5 * (left + right) / self.rho[i]);
        }
        self.dx * self.dx * prm.tau / (2.0 * prm.kappa) / ratio
    }
}

/// `f` at the profile's frozen `(p, theta)`: only the `phi` dependence varies.
#[derive(Debug, Clone, Copy)]
struct Frozen {
    u: f64,
    h: f64,
    f0: f64,
}

impl Frozen {
    fn new(model: &PotentialModel, profile: &Profile1D) -> Result<Self> {
        let (p, theta) = profile.state();
        Ok(Frozen {
            u: model.u_schedule(theta)?,
            h: model.h_field(p, theta)?.h,
            f0: model.background(p, theta)?.f0,
        })
    }

    fn f(&self, model: &PotentialModel, phi: f64) -> Result<f64> {
        Ok(self.f0 + model.landscape(self.u, self.h, phi)?.g)
    }

    fn f_phi(&self, model: &PotentialModel, phi: f64) -> Result<f64> {
        Ok(model.landscape(self.u, self.h, phi)?.g_phi)
    }
}

/// `sum dx rho (kappa phi_x^2 / 2 + f)`: gradient on cell edges, `f` by the
/// trapezoid rule.
pub fn discrete_free_energy(model: &PotentialModel, profile: &Profile1D) -> Result<f64> {
    energy_with(model, profile, &Frozen::new(model, profile)?)
}

fn energy_with(model: &PotentialModel, profile: &Profile1D, frozen: &Frozen) -> Result<f64> {
    let kappa = model.params().kappa;
    let n = profile.len();
    let dx = profile.dx;
    let mut e = 0.0;
    for i in 0..n {
        let w = if i == 0 || i + 1 == n { 0.5 } else { 1.0 };
        e += w * dx * profile.rho[i] * frozen.f(model, profile.phi[i])?;
    }
    for i in 0..n - 1 {
        let g = (profile.phi[i + 1] - profile.phi[i]) / dx;
        e += dx * profile.rho_edge(i) * 0.5 * kappa * g * g;
    }
    Ok(e)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PdeOptions {
    pub t_end: f64,
    /// `DEFAULT_DT_FACTOR * dx^2 tau / kappa` when `None`.
    pub dt: Option<f64>,
    /// Energy is recorded every this many steps, and at the end.
    pub record_every: usize,
    pub scheme: PdeScheme,
    /// Stop early once `max |phi_t|` drops below this.
    pub stop_tol: Option<f64>,
}

impl Default for PdeOptions {
    fn default() -> Self {
        PdeOptions {
            t_end: 10.0,
            dt: None,
            record_every: 100,
            scheme: PdeScheme::Explicit,
            stop_tol: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergySample {
    pub t: f64,
    pub energy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PdeRun {
    pub profile: Profile1D,
    pub energy: Vec<EnergySample>,
    pub t_final: f64,
    pub steps: usize,
    pub dt: f64,
    /// Largest `(E_{k+1} - E_k) / |E_k|` over all steps.
    pub max_rel_energy_increase: f64,
    /// `max |phi_t|` over the last step.
    pub final_rate: f64,
    pub converged: bool,
}

fn default_dt(model: &PotentialModel, dx: f64) -> f64 {
    let prm = model.params();
    if prm.kappa > 0.0 {
        DEFAULT_DT_FACTOR * dx * dx * prm.tau / prm.kappa
    } else {
        0.1 * prm.tau
    }
}

/// Evolves the gradient flow at frozen `(p, theta)`.
pub fn run_pde1d(model: &PotentialModel, profile0: Profile1D, opts: &PdeOptions) -> Result<PdeRun> {
    if !(opts.t_end > 0.0 && opts.t_end.is_finite()) {
        return Err(Error::InvalidParams {
            name: "t_end",
            constraint: "> 0",
            value: opts.t_end,
        });
    }
    if opts.record_every == 0 {
        return Err(Error::InvalidGrid {
            reason: "record_every must be at least 1".into(),
        });
    }
    let dt_req = opts.dt.unwrap_or_else(|| default_dt(model, profile0.dx));
    if !(dt_req > 0.0) {
        return Err(Error::InvalidParams {
            name: "dt",
            constraint: "> 0",
            value: dt_req,
        });
    }
    if opts.scheme == PdeScheme::Explicit {
        let bound = profile0.stability_bound(model);
        if dt_req > bound {
            return Err(Error::StabilityViolation { dt: dt_req, bound });
        }
    }
    let n_steps = (opts.t_end / dt_req).ceil().max(1.0) as usize;
    let dt = opts.t_end / n_steps as f64;

    let frozen = Frozen::new(model, &profile0)?;
    let mut stepper = Stepper::new(model, &profile0, dt, opts.scheme);
    let mut profile = profile0;
    let mut e_prev = energy_with(model, &profile, &frozen)?;
    let mut energy = vec![EnergySample {
        t: 0.0,
        energy: e_prev,
    }];
    let mut max_inc = f64::NEG_INFINITY;
    let mut rate = f64::INFINITY;
    let mut converged = false;
    let mut steps = 0;
    let mut next = profile.phi.clone();

    while steps < n_steps {
        stepper.step(model, &frozen, &profile, &mut next)?;
        steps += 1;
        if model.kind() == ModelKind::Logarithmic {
            if let Some(&bad) = next.iter().find(|v| !(v.abs() < 1.0 - DOMAIN_GUARD)) {
                return Err(Error::DomainError { phi: bad });
            }
        }
        rate = profile
            .phi
            .iter()
            .zip(&next)
            .map(|(a, b)| (b - a).abs() / dt)
            .fold(0.0, f64::max);
        std::mem::swap(&mut profile.phi, &mut next);
        let e = energy_with(model, &profile, &frozen)?;
        max_inc = max_inc.max((e - e_prev) / e_prev.abs().max(f64::MIN_POSITIVE));
        e_prev = e;
        converged = opts.stop_tol.is_some_and(|tol| rate < tol);
        if steps % opts.record_every == 0 || steps == n_steps || converged {
            energy.push(EnergySample {
                t: dt * steps as f64,
                energy: e,
            });
        }
        if converged {
            break;
        }
    }
    Ok(PdeRun {
        profile,
        energy,
        t_final: dt * steps as f64,
        steps,
        dt,
        max_rel_energy_increase: max_inc,
        final_rate: rate,
        converged,
    })
}

/// One step of either scheme. The tridiagonal factorisation of the
/// semi-implicit operator is computed once.
struct Stepper {
    dt: f64,
    scheme: PdeScheme,
    // (lower, diag, upper) of the implicit operator, forward-eliminated
    c_prime: Vec<f64>,
    denom: Vec<f64>,
    lower: Vec<f64>,
}

impl Stepper {
    fn new(model: &PotentialModel, profile: &Profile1D, dt: f64, scheme: PdeScheme) -> Self {
        let mut s = Stepper {
            dt,
            scheme,
            c_prime: Vec::new(),
            denom: Vec::new(),
            lower: Vec::new(),
        };
        if scheme == PdeScheme::SemiImplicit {
            let prm = model.params();
            let n = profile.len();
            let k = prm.kappa / (profile.dx * profile.dx);
            let mut lower = vec![0.0; n];
            let mut diag = vec![0.0; n];
            let mut upper = vec![0.0; n];
            for i in 0..n {
                let fixed = matches!(profile.boundary, Boundary::Dirichlet { .. })
                    && (i == 0 || i + 1 == n);
                if fixed {
                    diag[i] = 1.0;
                    continue;
                }
                let m = profile.rho[i] * prm.tau / dt;
                let (l, r) = edge_weights(profile, i);
                diag[i] = m + k * (l + r);
                if i > 0 {
                    lower[i] = -k * if i + 1 == n { l + r } else { l };
                }
                if i + 1 < n {
                    upper[i] = -k * if i == 0 { l + r } else { r };
                }
            }
            let mut c_prime = vec![0.0; n];
            let mut denom = vec![0.0; n];
            for i in 0..n {
                let d = diag[i]
                    - if i > 0 {
                        lower[i] * c_prime[i - 1]
                    } else {
                        0.0
                    };
                denom[i] = d;
                c_prime[i] = upper[i] / d;
            }
            s.c_prime = c_prime;
            s.denom = denom;
            s.lower = lower;
        }
        s
    }

    fn step(
        &mut self,
        model: &PotentialModel,
        frozen: &Frozen,
        profile: &Profile1D,
        out: &mut [f64],
    ) -> Result<()> {
        let prm = model.params();
        let n = profile.len();
        let phi = &profile.phi;
        let dirichlet = matches!(profile.boundary, Boundary::Dirichlet { .. });
        let k = prm.kappa / (profile.dx * profile.dx);
        for i in 0..n {
            if dirichlet && (i == 0 || i + 1 == n) {
                out[i] = phi[i];
                continue;
            }
            let f_phi = frozen.f_phi(model, phi[i])?;
            match self.scheme {
                PdeScheme::Explicit => {
                    let (l, r) = edge_weights(profile, i);
                    let left = if i > 0 { phi[i - 1] } else { phi[1] };
                    let right = if i + 1 < n { phi[i + 1] } else { phi[n - 2] };
                    let div = k * (r * (right - phi[i]) - l * (phi[i] - left));
                    out[i] = phi[i] + self.dt / prm.tau * (div / profile.rho[i] - f_phi);
                }
                PdeScheme::SemiImplicit => {
                    out[i] = profile.rho[i] * (prm.tau / self.dt * phi[i] - f_phi);
                }
            }
        }
        if self.scheme == PdeScheme::SemiImplicit {
            // forward sweep on the right-hand side, then back substitution
            for i in 0..n {
                let prev = if i > 0 {
                    self.lower[i] * out[i - 1]
                } else {
                    0.0
                };
                out[i] = (out[i] - prev) / self.denom[i];
            }
            for i in (0..n - 1).rev() {
                out[i] -= self.c_prime[i] * out[i + 1];
            }
        }
        Ok(())
    }
}

/// Edge densities left and right of node `i`, reflected at the ends.
fn edge_weights(profile: &Profile1D, i: usize) -> (f64, f64) {
    let n = profile.len();
    let l = if i > 0 {
        profile.rho_edge(i - 1)
    } else {
        profile.rho_edge(0)
    };
    let r = if i + 1 < n {
        profile.rho_edge(i)
    } else {
        profile.rho_edge(n - 2)
    };
    (l, r)
}

/// Stationary kink of the quartic model at `h = 0`, centred at the origin.
pub fn kink_profile(u: f64, kappa: f64, x: f64) -> f64 {
    u * (u * x / (2.0 * kappa).sqrt()).tanh()
}

/// Excess free energy of the quartic kink over the uniform minimum.
pub fn kink_interface_tension(u: f64, kappa: f64) -> f64 {
    2.0 * std::f64::consts::SQRT_2 / 3.0 * u.powi(3) * kappa.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibrium::find_stationary_points;
    use crate::potentials::ModelParams;

    /// Quartic model with `u = 1` at `theta = 0.5`.
    fn unit_kink_model() -> (PotentialModel, f64, f64) {
        let params = ModelParams {
            dnu_ref: 4.0 / 3.0 / 0.5f64.sqrt(),
            ..ModelParams::default()
        };
        let m = PotentialModel::quartic(params).unwrap();
        let theta = 0.5;
        assert!((m.u_schedule(theta).unwrap() - 1.0).abs() < 1e-12);
        let p0 = m.coexistence_pressure(theta).unwrap();
        (m, p0, theta)
    }

    fn log_model() -> PotentialModel {
        PotentialModel::logarithmic(ModelParams::default()).unwrap()
    }

    #[test]
    fn uniform_minimum_is_stationary() {
        let m = log_model();
        let (p, theta) = (0.3, 0.8);
        let phi = find_stationary_points(&m, p, theta).unwrap().stable().phi;
        for bc in [
            Boundary::NoFlux,
            Boundary::Dirichlet {
                left: phi,
                right: phi,
            },
        ] {
            let prof = Profile1D::from_fn(
                &m,
                0.0,
                4.0,
                41,
                |_| phi,
                bc,
                DensityMode::ConstantRho,
                p,
                theta,
            )
            .unwrap();
            let e0 = discrete_free_energy(&m, &prof).unwrap();
            let f = m.eval(p, theta, phi).unwrap().f;
            assert!((e0 - 4.0 * f).abs() < 1e-12 * e0.abs());
            let opts = PdeOptions {
                t_end: 1.0,
                ..PdeOptions::default()
            };
            let run = run_pde1d(&m, prof, &opts).unwrap();
            assert!(run.profile.phi().iter().all(|v| (v - phi).abs() < 1e-13));
            for w in run.energy.windows(2) {
                assert!((w[1].energy - w[0].energy).abs() < 1e-12 * e0.abs());
            }
        }
    }

    #[test]
    fn stability_bound_enforced() {
        let (m, p, theta) = unit_kink_model();
        let prof = Profile1D::from_fn(
            &m,
            -1.0,
            1.0,
            21,
            |x| 0.5 * x,
            Boundary::NoFlux,
            DensityMode::ConstantRho,
            p,
            theta,
        )
        .unwrap();
        let bound = prof.stability_bound(&m);
        assert!((bound - 0.01 / 2.0).abs() < 1e-15);
        let opts = PdeOptions {
            t_end: 0.1,
            dt: Some(1.01 * bound),
            ..PdeOptions::default()
        };
        let e = run_pde1d(&m, prof.clone(), &opts).unwrap_err();
        assert_eq!(e.name(), "StabilityViolation");
        let opts = PdeOptions {
            scheme: PdeScheme::SemiImplicit,
            ..opts
        };
        assert!(run_pde1d(&m, prof, &opts).is_ok());
    }

    #[test]
    fn kink_energy_excess_matches_tension() {
        let (m, p, theta) = unit_kink_model();
        let (a, b, n) = (-15.0, 15.0, 3001);
        let kink = Profile1D::from_fn(
            &m,
            a,
            b,
            n,
            |x| kink_profile(1.0, 1.0, x),
            Boundary::NoFlux,
            DensityMode::ConstantRho,
            p,
            theta,
        )
        .unwrap();
        let flat = Profile1D::from_fn(
            &m,
            a,
            b,
            n,
            |_| 1.0,
            Boundary::NoFlux,
            DensityMode::ConstantRho,
            p,
            theta,
        )
        .unwrap();
        let excess =
            discrete_free_energy(&m, &kink).unwrap() - discrete_free_energy(&m, &flat).unwrap();
        let sigma = kink_interface_tension(1.0, 1.0);
        assert!((excess - sigma).abs() < 1e-4 * sigma, "{excess} vs {sigma}");
    }

    #[test]
    fn energy_converges_at_second_order() {
        let (m, p, theta) = unit_kink_model();
        let e = |n: usize| {
            let prof = Profile1D::from_fn(
                &m,
                -8.0,
                8.0,
                n,
                |x| kink_profile(1.0, 1.0, x),
                Boundary::NoFlux,
                DensityMode::ConstantRho,
                p,
                theta,
            )
            .unwrap();
            discrete_free_energy(&m, &prof).unwrap()
        };
        let (e1, e2, e3) = (e(41), e(81), e(161));
        let ratio = (e1 - e2) / (e2 - e3);
        assert!((ratio - 4.0).abs() < 0.2, "{ratio}");
    }

    #[test]
    fn logarithmic_front_reaches_minima() {
        // h = 0 with u = -0.4 at theta = 0.6
        let m = log_model();
        let theta = 0.6;
        let p0 = m.coexistence_pressure(theta).unwrap();
        let prof = Profile1D::from_fn(
            &m,
            -10.0,
            10.0,
            201,
            |x| if x < 0.0 { -0.3 } else { 0.3 },
            Boundary::NoFlux,
            DensityMode::ConstantRho,
            p0,
            theta,
        )
        .unwrap();
        let opts = PdeOptions {
            t_end: 200.0,
            scheme: PdeScheme::SemiImplicit,
            dt: Some(0.05),
            stop_tol: Some(1e-9),
            ..PdeOptions::default()
        };
        let run = run_pde1d(&m, prof, &opts).unwrap();
        let phi = run.profile.phi();
        let target = 0.4f64.sqrt();
        assert!((phi[0] + target).abs() < 1e-4);
        assert!((phi[phi.len() - 1] - target).abs() < 1e-4);
        assert!(phi.windows(2).all(|w| w[1] >= w[0]));
        assert!(run.max_rel_energy_increase <= 1e-12);
    }

    #[test]
    fn explicit_energy_is_non_increasing() {
        let (m, p, theta) = unit_kink_model();
        let prof = Profile1D::from_fn(
            &m,
            -5.0,
            5.0,
            101,
            |x| (3.0 * x).sin() * 0.8,
            Boundary::NoFlux,
            DensityMode::ConstantRho,
            p,
            theta,
        )
        .unwrap();
        let opts = PdeOptions {
            t_end: 5.0,
            record_every: 1,
            ..PdeOptions::default()
        };
        let run = run_pde1d(&m, prof, &opts).unwrap();
        assert!(run.max_rel_energy_increase <= 1e-12);
        assert_eq!(run.energy.len(), run.steps + 1);
    }

    #[test]
    fn comparison_principle() {
        let m = log_model();
        let (p, theta) = (0.3, 0.8);
        let lower = |x: f64| 0.5 * (2.0 * x).sin() - 0.2;
        let upper = |x: f64| 0.5 * (2.0 * x).sin() + 0.1 + 0.05 * x.cos();
        let mk = |g: &dyn Fn(f64) -> f64| {
            Profile1D::from_fn(
                &m,
                -4.0,
                4.0,
                81,
                g,
                Boundary::NoFlux,
                DensityMode::ConstantRho,
                p,
                theta,
            )
            .unwrap()
        };
        let opts = PdeOptions {
            t_end: 3.0,
            ..PdeOptions::default()
        };
        let a = run_pde1d(&m, mk(&lower), &opts).unwrap();
        let b = run_pde1d(&m, mk(&upper), &opts).unwrap();
        for (x, y) in a.profile.phi().iter().zip(b.profile.phi()) {
            assert!(x < y);
        }
    }

    #[test]
    fn frozen_rho_runs_and_reports() {
        let m = log_model();
        let theta = 0.8;
        let p0 = m.coexistence_pressure(theta).unwrap();
        let prof = Profile1D::from_fn(
            &m,
            -5.0,
            5.0,
            101,
            |x| 0.4 * x.tanh(),
            Boundary::NoFlux,
            DensityMode::FrozenRhoField,
            p0,
            theta,
        )
        .unwrap();
        let rho = prof.rho().to_vec();
        assert!(rho.iter().any(|r| (r - rho[50]).abs() > 1e-3));
        let opts = PdeOptions {
            t_end: 2.0,
            ..PdeOptions::default()
        };
        assert!(opts.dt.is_none());
        let run = run_pde1d(&m, prof, &opts).unwrap();
        assert_eq!(run.profile.rho(), &rho[..]);
        assert!(run.max_rel_energy_increase.is_finite());
    }

    #[test]
    fn domain_guard_trips() {
        let m = log_model();
        // strong field drives phi to the wall faster than the step resolves
        let theta = 0.8;
        let prof = Profile1D::from_fn(
            &m,
            -1.0,
            1.0,
            11,
            |_| 0.9,
            Boundary::NoFlux,
            DensityMode::ConstantRho,
            5.0,
            theta,
        )
        .unwrap();
        let opts = PdeOptions {
            t_end: 10.0,
            dt: Some(0.001),
            ..PdeOptions::default()
        };
        let r = run_pde1d(&m, prof, &opts);
        if let Err(e) = r {
            assert_eq!(e.name(), "DomainError");
        }
    }

    #[test]
    fn grid_validation() {
        let m = log_model();
        let e = Profile1D::new(
            &m,
            0.0,
            0.1,
            vec![0.0, 0.0],
            Boundary::NoFlux,
            DensityMode::ConstantRho,
            0.3,
            0.8,
        );
        assert_eq!(e.unwrap_err().name(), "InvalidGrid");
        let e = Profile1D::new(
            &m,
            0.0,
            0.1,
            vec![0.0, 1.0, 0.0],
            Boundary::NoFlux,
            DensityMode::ConstantRho,
            0.3,
            0.8,
        );
        assert_eq!(e.unwrap_err().name(), "DomainError");
        let d = Profile1D::new(
            &m,
            0.0,
            0.1,
            vec![0.0; 5],
            Boundary::Dirichlet {
                left: -0.5,
                right: 0.5,
            },
            DensityMode::ConstantRho,
            0.3,
            0.8,
        )
        .unwrap();
        assert_eq!(d.phi()[0], -0.5);
        assert_eq!(d.phi()[4], 0.5);
    }
}
