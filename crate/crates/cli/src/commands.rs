use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use lvphase::dynamics::{
    relax_homogeneous, relax_thermal_homogeneous, run_pde1d, Boundary, DensityMode, PdeOptions,
    PdeScheme, PressureSchedule, Profile1D, StepControl, Trajectory,
};
use lvphase::equilibrium::{
    coexistence, hysteresis_sweep_reduced, isotherm_plateau, isotherm_sample,
    latent_heat_and_clapeyron, pressure_grid, spinodal, spinodal_reduced,
    stationary_points_reduced,
};
use lvphase::thermo_validate::audit_suite;
use lvphase::PotentialModel;
use thiserror::Error;

use crate::config::{Command, RunConfig};
use crate::table::{fmt_f64, TableWriter};

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Model(#[from] lvphase::Error),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("{failed} of {total} audits failed")]
    AuditsFailed { failed: usize, total: usize },
    #[error("{0}")]
    Usage(String),
}

impl RunError {
    pub fn name(&self) -> &'static str {
        match self {
            RunError::Model(e) => e.name(),
            RunError::Io(_) => "IoError",
            RunError::AuditsFailed { .. } => "AuditFailed",
            RunError::Usage(_) => "UsageError",
        }
    }
}

/// Where the main CSV goes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Output {
    Stdout,
    File(PathBuf),
}

impl Output {
    fn open(&self) -> io::Result<Box<dyn Write>> {
        Ok(match self {
            Output::Stdout => Box::new(BufWriter::new(io::stdout().lock())),
            Output::File(p) => Box::new(BufWriter::new(File::create(p)?)),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOptions {
    pub out: Output,
    pub seed: Option<u64>,
    pub quiet: bool,
}

type Sink = TableWriter<Box<dyn Write>>;

/// Writes one table, ending it with `# INCOMPLETE` if `body` fails.
fn emit(
    out: &Output,
    metadata: &str,
    header: &[&str],
    body: impl FnOnce(&mut Sink) -> Result<(), RunError>,
) -> Result<(), RunError> {
    let mut w = TableWriter::new(out.open()?, metadata, header)?;
    match body(&mut w) {
        Ok(()) => {
            w.finish()?.flush()?;
            Ok(())
        }
        Err(e) => {
            w.abort()?;
            Err(e)
        }
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|i| if i + 1 == n { hi } else { lo + step * i as f64 })
        .collect()
}

pub fn run_command(cmd: Command, cfg: &RunConfig, opts: &RunOptions) -> Result<(), RunError> {
    let model = PotentialModel::new(cfg.kind, cfg.params.clone())?;
    let meta = cfg.echo(cmd);
    let out = &opts.out;
    match cmd {
        Command::Isotherm => isotherm_cmd(&model, cfg, out, &meta),
        Command::PhaseDiagram => phase_diagram_cmd(&model, cfg, out, &meta),
        Command::Minima => minima_cmd(&model, cfg, out, &meta),
        Command::Spinodal => spinodal_cmd(&model, cfg, out, &meta),
        Command::Hysteresis => hysteresis_cmd(&model, cfg, out, &meta),
        Command::Relax | Command::Thermal => relax_cmd(&model, cmd, cfg, out, &meta),
        Command::Pde1d => pde1d_cmd(&model, cfg, out, &meta),
        Command::Validate => validate_cmd(cfg, opts, &meta),
    }
}

fn isotherm_cmd(
    model: &PotentialModel,
    cfg: &RunConfig,
    out: &Output,
    meta: &str,
) -> Result<(), RunError> {
    let c = Command::Isotherm;
    let theta = cfg.num(c, "theta");
    let (p_min, p_max) = (cfg.num(c, "p_min"), cfg.num(c, "p_max"));
    let grid = pressure_grid(p_min, p_max, cfg.count(c, "n"))?;
    emit(out, meta, &["p", "nu", "phi", "branch"], |w| {
        let mut plateau = isotherm_plateau(model, theta, p_min, p_max)?;
        for p in grid {
            if let Some(pl) = plateau.filter(|pl| p >= pl.p0) {
                w.row([
                    fmt_f64(pl.p0),
                    fmt_f64(pl.nu_vapour),
                    fmt_f64(pl.phi_vapour),
                    "vapour".into(),
                ])?;
                w.row([
                    fmt_f64(pl.p0),
                    fmt_f64(pl.nu_liquid),
                    fmt_f64(pl.phi_liquid),
                    "liquid".into(),
                ])?;
                plateau = None;
            }
            if let Some(s) = isotherm_sample(model, theta, p)? {
                w.row([
                    fmt_f64(s.p),
                    fmt_f64(s.nu),
                    fmt_f64(s.phi),
                    s.branch.to_string(),
                ])?;
            }
        }
        Ok(())
    })
}

fn phase_diagram_cmd(
    model: &PotentialModel,
    cfg: &RunConfig,
    out: &Output,
    meta: &str,
) -> Result<(), RunError> {
    let c = Command::PhaseDiagram;
    let thetas = linspace(
        cfg.num(c, "theta_min"),
        cfg.num(c, "theta_max"),
        cfg.count(c, "n"),
    );
    let header = [
        "theta",
        "p0",
        "nu_liquid",
        "nu_vapour",
        "delta_nu",
        "latent_heat",
        "cc_residual",
        "p_spinodal_low",
        "p_spinodal_high",
    ];
    emit(out, meta, &header, |w| {
        for theta in thetas {
            let co = coexistence(model, theta)?.ok_or_else(|| {
                RunError::Usage(format!(
                    "no coexistence at theta = {theta}; keep theta_max below theta_c"
                ))
            })?;
            let lh = latent_heat_and_clapeyron(model, theta)?;
            let sp = spinodal(model, theta)?;
            let (lo, hi) = sp.map_or((f64::NAN, f64::NAN), |b| (b.lower, b.upper));
            w.numbers(&[
                theta,
                co.p0,
                co.liquid.nu,
                co.vapour.nu,
                co.volume_jump(),
                lh.latent_heat,
                lh.cc_residual,
                lo,
                hi,
            ])?;
        }
        Ok(())
    })
}

fn minima_cmd(
    model: &PotentialModel,
    cfg: &RunConfig,
    out: &Output,
    meta: &str,
) -> Result<(), RunError> {
    let c = Command::Minima;
    let us = linspace(
        cfg.num(c, "u_min"),
        cfg.num(c, "u_max"),
        cfg.count(c, "n_u"),
    );
    let ks = linspace(
        cfg.num(c, "h_min"),
        cfg.num(c, "h_max"),
        cfg.count(c, "n_h"),
    );
    let a = model.params().a;
    emit(out, meta, &["u", "h_over_a", "n_minima"], |w| {
        for &u in &us {
            for &k in &ks {
                let n = stationary_points_reduced(model, u, k * a)?.minima_count();
                w.row([fmt_f64(u), fmt_f64(k), n.to_string()])?;
            }
        }
        Ok(())
    })
}

fn spinodal_cmd(
    model: &PotentialModel,
    cfg: &RunConfig,
    out: &Output,
    meta: &str,
) -> Result<(), RunError> {
    let c = Command::Spinodal;
    let us = linspace(cfg.num(c, "u_min"), cfg.num(c, "u_max"), cfg.count(c, "n"));
    let a = model.params().a;
    emit(out, meta, &["u", "h_over_a_low", "h_over_a_high"], |w| {
        for u in us {
            if let Some(b) = spinodal_reduced(model, u)? {
                w.numbers(&[u, b.lower / a, b.upper / a])?;
            }
        }
        Ok(())
    })
}

fn hysteresis_cmd(
    model: &PotentialModel,
    cfg: &RunConfig,
    out: &Output,
    meta: &str,
) -> Result<(), RunError> {
    let c = Command::Hysteresis;
    let u = match cfg.opt_num(c, "u") {
        Some(u) => u,
        None => model.u_schedule(cfg.num(c, "theta"))?,
    };
    let points =
        hysteresis_sweep_reduced(model, u, cfg.num(c, "h_amplitude"), cfg.count(c, "n_steps"))?;
    emit(out, meta, &["h_over_a", "phi", "branch"], |w| {
        for pt in points {
            w.row([
                fmt_f64(pt.control),
                fmt_f64(pt.phi),
                pt.direction.to_string(),
            ])?;
        }
        Ok(())
    })
}

fn relax_cmd(
    model: &PotentialModel,
    c: Command,
    cfg: &RunConfig,
    out: &Output,
    meta: &str,
) -> Result<(), RunError> {
    let thermal = c == Command::Thermal;
    let theta = cfg.num(c, if thermal { "theta0" } else { "theta" });
    let schedule = match (cfg.opt_num(c, "p"), cfg.schedule(c)) {
        (Some(p), _) => PressureSchedule::constant(p)?,
        (None, Some(knots)) => PressureSchedule::piecewise(knots.to_vec())?,
        (None, None) => PressureSchedule::constant(model.coexistence_pressure(theta)?)?,
    };
    let control = StepControl {
        atol: cfg.num(c, "atol"),
        rtol: cfg.num(c, "rtol"),
        ..StepControl::default()
    };
    let (phi0, t_end) = (cfg.num(c, "phi0"), cfg.num(c, "t_end"));
    let mut header = vec![
        "t",
        "phi",
        "p",
        "nu",
        "f",
        "dissipation",
        "balance_residual",
    ];
    if thermal {
        header.extend(["theta", "eta"]);
    }
    emit(out, meta, &header, |w| {
        let traj: Trajectory = if thermal {
            relax_thermal_homogeneous(
                model,
                phi0,
                theta,
                &schedule,
                cfg.num(c, "r"),
                t_end,
                &control,
            )?
        } else {
            relax_homogeneous(model, phi0, theta, &schedule, t_end, &control)?
        };
        for s in &traj.samples {
            let mut row = vec![
                s.t,
                s.phi,
                s.p,
                s.nu,
                s.f,
                s.dissipation,
                s.balance_residual,
            ];
            if thermal {
                row.extend([s.theta.unwrap_or(f64::NAN), s.eta.unwrap_or(f64::NAN)]);
            }
            w.numbers(&row)?;
        }
        Ok(())
    })
}

/// `dir/stem_energy.csv` next to `path`.
pub fn energy_path(path: &Path) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("pde1d");
    path.with_file_name(format!("{stem}_energy.csv"))
}

fn pde1d_cmd(
    model: &PotentialModel,
    cfg: &RunConfig,
    out: &Output,
    meta: &str,
) -> Result<(), RunError> {
    let c = Command::Pde1d;
    let Output::File(path) = out else {
        return Err(RunError::Usage(
            "pde1d writes two files and needs --out".into(),
        ));
    };
    let theta = cfg.num(c, "theta");
    let p = match cfg.opt_num(c, "p") {
        Some(p) => p,
        None => model.coexistence_pressure(theta)?,
    };
    let (x0, x1) = (cfg.num(c, "x_min"), cfg.num(c, "x_max"));
    let (left, right) = (cfg.num(c, "phi_left"), cfg.num(c, "phi_right"));
    let boundary = match cfg.text(c, "bc") {
        "dirichlet" => Boundary::Dirichlet { left, right },
        _ => Boundary::NoFlux,
    };
    let density = match cfg.text(c, "density") {
        "frozen" => DensityMode::FrozenRhoField,
        _ => DensityMode::ConstantRho,
    };
    let mid = 0.5 * (x0 + x1);
    let width = (2.0 * model.params().kappa).sqrt().max(f64::MIN_POSITIVE);
    let init = cfg.text(c, "init").to_string();
    let init = move |x: f64| match init.as_str() {
        "uniform" => left,
        "tanh" => 0.5 * (left + right) + 0.5 * (right - left) * ((x - mid) / width).tanh(),
        _ => {
            if x < mid {
                left
            } else {
                right
            }
        }
    };
    let opts = PdeOptions {
        t_end: cfg.num(c, "t_end"),
        dt: cfg.opt_num(c, "dt"),
        record_every: cfg.count(c, "record_every"),
        scheme: match cfg.text(c, "scheme") {
            "semi-implicit" => PdeScheme::SemiImplicit,
            _ => PdeScheme::Explicit,
        },
        stop_tol: cfg.opt_num(c, "stop_tol"),
    };
    let mut run = None;
    emit(out, meta, &["x", "phi"], |w| {
        let profile = Profile1D::from_fn(
            model,
            x0,
            x1,
            cfg.count(c, "n"),
            init,
            boundary,
            density,
            p,
            theta,
        )?;
        let r = run_pde1d(model, profile, &opts)?;
        for (x, phi) in r.profile.xs().into_iter().zip(r.profile.phi()) {
            w.numbers(&[x, *phi])?;
        }
        run = Some(r);
        Ok(())
    })?;
    let run = run.expect("set on success");
    emit(
        &Output::File(energy_path(path)),
        meta,
        &["t", "energy"],
        |w| {
            for e in &run.energy {
                w.numbers(&[e.t, e.energy])?;
            }
            Ok(())
        },
    )
}

fn validate_cmd(cfg: &RunConfig, opts: &RunOptions, meta: &str) -> Result<(), RunError> {
    let c = Command::Validate;
    let seed = opts.seed.unwrap_or(cfg.num(c, "seed") as u64);
    let header = [
        "name",
        "grid",
        "n_checked",
        "n_skipped",
        "max_abs_error",
        "max_rel_error",
        "tolerance",
        "pass",
        "offending",
    ];
    let mut failed = 0;
    let mut total = 0;
    emit(&opts.out, meta, &header, |w| {
        let reports = audit_suite(&cfg.params, cfg.count(c, "n_samples"), seed)?;
        for r in &reports {
            w.row([
                r.name.clone(),
                r.grid.clone(),
                r.n_checked.to_string(),
                r.n_skipped.to_string(),
                fmt_f64(r.max_abs_error),
                fmt_f64(r.max_rel_error),
                fmt_f64(r.tolerance),
                r.pass.to_string(),
                r.offending.clone().unwrap_or_default(),
            ])?;
            if !opts.quiet {
                eprintln!("{r}");
            }
        }
        total = reports.len();
        failed = reports.iter().filter(|r| !r.pass).count();
        Ok(())
    })?;
    if !opts.quiet {
        eprintln!("{} of {total} audits passed (seed {seed})", total - failed);
    }
    if failed > 0 {
        return Err(RunError::AuditsFailed { failed, total });
    }
    Ok(())
}
