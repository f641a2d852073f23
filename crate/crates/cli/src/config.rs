//! Run configuration: `[model]` and `[run.<command>]` sections of
//! `key = value` lines.
//!
//! ```text
//! # comment
//! [model]
//! kind = logarithmic
//! a = 1.0
//!
//! [run.relax]
//! schedule = 0:0.1, 10:0.3
//! ```

use std::fmt::{self, Write as _};

use lvphase::{ModelKind, ModelParams};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("invalid value for `{key}`: must be {constraint}")]
    Validation { key: String, constraint: String },
}

impl ConfigError {
    pub fn name(&self) -> &'static str {
        match self {
            ConfigError::Parse { .. } => "ParseError",
            ConfigError::Validation { .. } => "ValidationError",
        }
    }

    fn parse(line: usize, reason: impl Into<String>) -> Self {
        ConfigError::Parse {
            line,
            reason: reason.into(),
        }
    }

    fn invalid(key: &str, constraint: impl Into<String>) -> Self {
        ConfigError::Validation {
            key: key.to_string(),
            constraint: constraint.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Command {
    Isotherm,
    PhaseDiagram,
    Minima,
    Spinodal,
    Hysteresis,
    Relax,
    Thermal,
    Pde1d,
    Validate,
}

impl Command {
    pub const ALL: [Command; 9] = [
        Command::Isotherm,
        Command::PhaseDiagram,
        Command::Minima,
        Command::Spinodal,
        Command::Hysteresis,
        Command::Relax,
        Command::Thermal,
        Command::Pde1d,
        Command::Validate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Isotherm => "isotherm",
            Command::PhaseDiagram => "phase-diagram",
            Command::Minima => "minima",
            Command::Spinodal => "spinodal",
            Command::Hysteresis => "hysteresis",
            Command::Relax => "relax",
            Command::Thermal => "thermal",
            Command::Pde1d => "pde1d",
            Command::Validate => "validate",
        }
    }

    pub fn from_name(s: &str) -> Option<Command> {
        Command::ALL.into_iter().find(|c| c.name() == s)
    }

    fn keys(self) -> &'static [KeySpec] {
        match self {
            Command::Isotherm => ISOTHERM,
            Command::PhaseDiagram => PHASE_DIAGRAM,
            Command::Minima => MINIMA,
            Command::Spinodal => SPINODAL,
            Command::Hysteresis => HYSTERESIS,
            Command::Relax => RELAX,
            Command::Thermal => THERMAL,
            Command::Pde1d => PDE1D,
            Command::Validate => VALIDATE,
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Check {
    Any,
    Positive,
    NonNegative,
    /// Integer at least this large.
    Count(u64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Type {
    Num(Check),
    Choice(&'static [&'static str]),
    /// `t:p` pairs separated by commas.
    Schedule,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Default_ {
    Num(f64),
    /// Logarithmic, quartic.
    ByKind(f64, f64),
    Text(&'static str),
    Unset,
}

#[derive(Debug, Clone, Copy)]
struct KeySpec {
    key: &'static str,
    ty: Type,
    default: Default_,
    help: &'static str,
}

const fn num(key: &'static str, check: Check, default: f64, help: &'static str) -> KeySpec {
    KeySpec {
        key,
        ty: Type::Num(check),
        default: Default_::Num(default),
        help,
    }
}

const fn opt(key: &'static str, check: Check, help: &'static str) -> KeySpec {
    KeySpec {
        key,
        ty: Type::Num(check),
        default: Default_::Unset,
        help,
    }
}

const fn by_kind(key: &'static str, log: f64, quartic: f64, help: &'static str) -> KeySpec {
    KeySpec {
        key,
        ty: Type::Num(Check::Any),
        default: Default_::ByKind(log, quartic),
        help,
    }
}

const fn choice(
    key: &'static str,
    options: &'static [&'static str],
    default: &'static str,
    help: &'static str,
) -> KeySpec {
    KeySpec {
        key,
        ty: Type::Choice(options),
        default: Default_::Text(default),
        help,
    }
}

const SCHEDULE: KeySpec = KeySpec {
    key: "schedule",
    ty: Type::Schedule,
    default: Default_::Unset,
    help: "piecewise-linear p(t) as `t:p, t:p, ...`",
};

const MODEL: &[KeySpec] = &[
    choice(
        "kind",
        &["logarithmic", "quartic"],
        "logarithmic",
        "potential",
    ),
    num("a", Check::Positive, 1.0, "energy scale"),
    num("tau", Check::Positive, 1.0, "relaxation time"),
    num(
        "kappa",
        Check::NonNegative,
        1.0,
        "gradient-energy coefficient",
    ),
    num("theta_c", Check::Positive, 1.0, "critical temperature"),
    num("p_c", Check::Positive, 1.0, "critical pressure"),
    num(
        "q",
        Check::Positive,
        1.0,
        "order-parameter schedule exponent",
    ),
    num(
        "beta",
        Check::Positive,
        0.5,
        "order-parameter schedule exponent",
    ),
    num("A", Check::Positive, 7.0, "slope of the coexistence line"),
    num("R", Check::Positive, 1.0, "background gas constant"),
    num("c", Check::Positive, 1.0, "background heat capacity"),
    num(
        "p_ref",
        Check::Positive,
        1.0,
        "background reference pressure",
    ),
    num(
        "theta_ref",
        Check::Positive,
        1.0,
        "background reference temperature",
    ),
    num(
        "dnu_ref",
        Check::NonNegative,
        1.0,
        "quartic volume-jump amplitude",
    ),
    num(
        "beta_q",
        Check::Positive,
        0.5,
        "quartic volume-jump exponent",
    ),
];

const ISOTHERM: &[KeySpec] = &[
    num("theta", Check::Positive, 0.8, "temperature"),
    num("p_min", Check::Positive, 0.05, "lowest pressure"),
    num("p_max", Check::Positive, 0.35, "highest pressure"),
    num("n", Check::Count(2), 301.0, "number of pressures"),
];

const PHASE_DIAGRAM: &[KeySpec] = &[
    num("theta_min", Check::Positive, 0.5, "lowest temperature"),
    num("theta_max", Check::Positive, 0.99, "highest temperature"),
    num("n", Check::Count(2), 50.0, "number of temperatures"),
];

const MINIMA: &[KeySpec] = &[
    by_kind("u_min", -0.95, 0.0, "smallest order-parameter scale"),
    by_kind("u_max", 0.95, 1.5, "largest order-parameter scale"),
    num("n_u", Check::Count(2), 39.0, "number of scales"),
    num("h_min", Check::Any, -2.0, "smallest h/a"),
    num("h_max", Check::Any, 2.0, "largest h/a"),
    num("n_h", Check::Count(2), 81.0, "number of fields"),
];

const SPINODAL: &[KeySpec] = &[
    by_kind("u_min", -0.95, 0.05, "smallest order-parameter scale"),
    by_kind("u_max", -0.05, 1.5, "largest order-parameter scale"),
    num("n", Check::Count(2), 19.0, "number of scales"),
];

const HYSTERESIS: &[KeySpec] = &[
    num("theta", Check::Positive, 0.6, "temperature giving u(theta)"),
    opt("u", Check::Any, "order-parameter scale; overrides theta"),
    num(
        "h_amplitude",
        Check::Positive,
        0.3,
        "sweep amplitude in h/a",
    ),
    num("n_steps", Check::Count(2), 301.0, "points per sweep leg"),
];

const RELAX: &[KeySpec] = &[
    num("theta", Check::Positive, 0.8, "temperature"),
    num("phi0", Check::Any, 0.1, "initial order parameter"),
    opt("p", Check::Positive, "constant pressure; default p0(theta)"),
    SCHEDULE,
    num("t_end", Check::Positive, 50.0, "final time"),
    num("atol", Check::Positive, 1e-10, "absolute tolerance"),
    num("rtol", Check::Positive, 1e-8, "relative tolerance"),
];

const THERMAL: &[KeySpec] = &[
    num("theta0", Check::Positive, 0.5, "initial temperature"),
    num("phi0", Check::Any, -0.1, "initial order parameter"),
    opt(
        "p",
        Check::Positive,
        "constant pressure; default p0(theta0)",
    ),
    SCHEDULE,
    num("r", Check::Any, 0.0, "specific heat supply"),
    num("t_end", Check::Positive, 50.0, "final time"),
    num("atol", Check::Positive, 1e-10, "absolute tolerance"),
    num("rtol", Check::Positive, 1e-8, "relative tolerance"),
];

const PDE1D: &[KeySpec] = &[
    num("theta", Check::Positive, 0.6, "temperature"),
    opt("p", Check::Positive, "pressure; default p0(theta)"),
    num("x_min", Check::Any, -10.0, "left end"),
    num("x_max", Check::Any, 10.0, "right end"),
    num("n", Check::Count(3), 401.0, "grid points"),
    choice(
        "bc",
        &["noflux", "dirichlet"],
        "noflux",
        "boundary condition",
    ),
    num(
        "phi_left",
        Check::Any,
        -0.5,
        "left value (initial data, dirichlet)",
    ),
    num(
        "phi_right",
        Check::Any,
        0.5,
        "right value (initial data, dirichlet)",
    ),
    choice(
        "init",
        &["step", "tanh", "uniform"],
        "step",
        "initial profile",
    ),
    choice(
        "density",
        &["constant", "frozen"],
        "constant",
        "density mode",
    ),
    choice(
        "scheme",
        &["explicit", "semi-implicit"],
        "explicit",
        "time stepping",
    ),
    opt(
        "dt",
        Check::Positive,
        "time step; default 0.4 dx^2 tau / kappa",
    ),
    num("t_end", Check::Positive, 20.0, "final time"),
    num(
        "record_every",
        Check::Count(1),
        100.0,
        "energy sampling interval in steps",
    ),
    opt(
        "stop_tol",
        Check::Positive,
        "stop once max |phi_t| is below this",
    ),
];

const VALIDATE: &[KeySpec] = &[
    num(
        "n_samples",
        Check::Count(1),
        200.0,
        "random points per derivative audit",
    ),
    num(
        "seed",
        Check::Count(0),
        0.0,
        "sampling seed; --seed overrides",
    ),
];

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Text(String),
    Schedule(Vec<(f64, f64)>),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Num(x) => write!(f, "{x}"),
            Value::Text(s) => f.write_str(s),
            Value::Schedule(k) => {
                let parts: Vec<String> = k.iter().map(|(t, p)| format!("{t}:{p}")).collect();
                f.write_str(&parts.join(", "))
            }
        }
    }
}

type Entries = Vec<(&'static str, Option<Value>)>;

/// A fully resolved configuration: every key of every section holds its
/// given or default value (or is absent when it has no default).
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub kind: ModelKind,
    pub params: ModelParams,
    sections: Vec<(Command, Entries)>,
}

impl RunConfig {
    fn section(&self, cmd: Command) -> &[(&'static str, Option<Value>)] {
        &self
            .sections
            .iter()
            .find(|(c, _)| *c == cmd)
            .expect("every command has a section")
            .1
    }

    fn get(&self, cmd: Command, key: &str) -> Option<&Value> {
        self.section(cmd)
            .iter()
            .find(|(k, _)| *k == key)
            .unwrap_or_else(|| panic!("`{key}` is not a key of [run.{cmd}]"))
            .1
            .as_ref()
    }

    /// Numeric key. Panics on keys outside the schema.
    pub fn num(&self, cmd: Command, key: &str) -> f64 {
        self.opt_num(cmd, key)
            .unwrap_or_else(|| panic!("`{key}` has no default"))
    }

    pub fn opt_num(&self, cmd: Command, key: &str) -> Option<f64> {
        match self.get(cmd, key) {
            Some(Value::Num(x)) => Some(*x),
            None => None,
            Some(v) => panic!("`{key}` is not numeric: {v}"),
        }
    }

    pub fn count(&self, cmd: Command, key: &str) -> usize {
        self.num(cmd, key) as usize
    }

    pub fn text(&self, cmd: Command, key: &str) -> &str {
        match self.get(cmd, key) {
            Some(Value::Text(s)) => s,
            _ => panic!("`{key}` is not a choice key"),
        }
    }

    pub fn schedule(&self, cmd: Command) -> Option<&[(f64, f64)]> {
        match self.get(cmd, "schedule") {
            Some(Value::Schedule(k)) => Some(k),
            _ => None,
        }
    }

    /// `# `-prefixed echo of the model and of one command's section.
    pub fn echo(&self, cmd: Command) -> String {
        let mut out = String::from("# [model]\n");
        let _ = writeln!(out, "# kind = {}", self.kind);
        for spec in &MODEL[1..] {
            let _ = writeln!(
                out,
                "# {} = {}",
                spec.key,
                model_value(&self.params, spec.key)
            );
        }
        let _ = writeln!(out, "# [run.{cmd}]");
        for (k, v) in self.section(cmd) {
            match v {
                Some(v) => {
                    let _ = writeln!(out, "# {k} = {v}");
                }
                None => {
                    let _ = writeln!(out, "# {k} =");
                }
            }
        }
        out
    }
}

fn model_value(p: &ModelParams, key: &str) -> f64 {
    match key {
        "a" => p.a,
        "tau" => p.tau,
        "kappa" => p.kappa,
        "theta_c" => p.theta_c,
        "p_c" => p.p_c,
        "q" => p.q,
        "beta" => p.beta,
        "A" => p.p0_slope,
        "R" => p.r_gas,
        "c" => p.heat_capacity,
        "p_ref" => p.p_ref,
        "theta_ref" => p.theta_ref,
        "dnu_ref" => p.dnu_ref,
        "beta_q" => p.beta_q,
        _ => unreachable!("model key {key}"),
    }
}

fn set_model_value(p: &mut ModelParams, key: &str, v: f64) {
    let slot = match key {
        "a" => &mut p.a,
        "tau" => &mut p.tau,
        "kappa" => &mut p.kappa,
        "theta_c" => &mut p.theta_c,
        "p_c" => &mut p.p_c,
        "q" => &mut p.q,
        "beta" => &mut p.beta,
        "A" => &mut p.p0_slope,
        "R" => &mut p.r_gas,
        "c" => &mut p.heat_capacity,
        "p_ref" => &mut p.p_ref,
        "theta_ref" => &mut p.theta_ref,
        "dnu_ref" => &mut p.dnu_ref,
        "beta_q" => &mut p.beta_q,
        _ => unreachable!("model key {key}"),
    };
    *slot = v;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Model,
    Run(Command),
}

impl Section {
    fn keys(self) -> &'static [KeySpec] {
        match self {
            Section::Model => MODEL,
            Section::Run(c) => c.keys(),
        }
    }

    fn label(self) -> String {
        match self {
            Section::Model => "[model]".into(),
            Section::Run(c) => format!("[run.{c}]"),
        }
    }
}

fn parse_section(name: &str) -> Option<Section> {
    if name == "model" {
        return Some(Section::Model);
    }
    name.strip_prefix("run.")
        .and_then(Command::from_name)
        .map(Section::Run)
}

/// Raw `key = value` assignments with their line numbers.
#[derive(Debug, Default)]
struct Raw {
    entries: Vec<(Section, &'static KeySpec, String, usize)>,
}

impl Raw {
    fn find(
        &self,
        section: Section,
        key: &str,
    ) -> Option<&(Section, &'static KeySpec, String, usize)> {
        self.entries
            .iter()
            .rev()
            .find(|(s, k, _, _)| *s == section && k.key == key)
    }
}

fn strip_comment(line: &str) -> &str {
    let cut = line
        .char_indices()
        .find(|&(i, c)| {
            (c == '#' || c == ';') && (i == 0 || line[..i].ends_with(char::is_whitespace))
        })
        .map_or(line.len(), |(i, _)| i);
    line[..cut].trim()
}

fn lookup(section: Section, key: &str) -> Option<&'static KeySpec> {
    section.keys().iter().find(|k| k.key == key)
}

fn read_raw(text: &str) -> Result<Raw, ConfigError> {
    let mut raw = Raw::default();
    let mut section: Option<Section> = None;
    let mut seen_sections: Vec<(Section, usize)> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(line);
        if line.is_empty() {
            continue;
        }
        if let Some(inner) = line.strip_prefix('[') {
            let name = inner
                .strip_suffix(']')
                .ok_or_else(|| ConfigError::parse(line_no, "unterminated section header"))?
                .trim();
            let s = parse_section(name).ok_or_else(|| {
                ConfigError::parse(line_no, format!("unknown section `[{name}]`"))
            })?;
            if let Some((_, first)) = seen_sections.iter().find(|(x, _)| *x == s) {
                return Err(ConfigError::parse(
                    line_no,
                    format!("duplicate section `[{name}]` (lines {first} and {line_no})"),
                ));
            }
            seen_sections.push((s, line_no));
            section = Some(s);
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| ConfigError::parse(line_no, "expected `key = value`"))?;
        let (key, value) = (key.trim(), value.trim());
        let s = section.ok_or_else(|| ConfigError::parse(line_no, "key outside of any section"))?;
        let spec = lookup(s, key).ok_or_else(|| {
            ConfigError::parse(line_no, format!("unknown key `{key}` in {}", s.label()))
        })?;
        if let Some((_, _, _, first)) = raw.find(s, key) {
            return Err(ConfigError::parse(
                line_no,
                format!("duplicate key `{key}` (lines {first} and {line_no})"),
            ));
        }
        if value.is_empty() {
            return Err(ConfigError::parse(
                line_no,
                format!("missing value for `{key}`"),
            ));
        }
        raw.entries.push((s, spec, value.to_string(), line_no));
    }
    Ok(raw)
}

fn parse_value(spec: &KeySpec, text: &str, line: usize) -> Result<Value, ConfigError> {
    match spec.ty {
        Type::Num(_) => text.parse::<f64>().map(Value::Num).map_err(|_| {
            ConfigError::parse(
                line,
                format!("`{}`: expected a number, got `{text}`", spec.key),
            )
        }),
        Type::Choice(options) => {
            if options.contains(&text) {
                Ok(Value::Text(text.to_string()))
            } else {
                Err(ConfigError::parse(
                    line,
                    format!(
                        "`{}`: expected one of {}, got `{text}`",
                        spec.key,
                        options.join(", ")
                    ),
                ))
            }
        }
        Type::Schedule => {
            let mut knots = Vec::new();
            for part in text.split(',') {
                let (t, p) = part.trim().split_once(':').ok_or_else(|| {
                    ConfigError::parse(
                        line,
                        format!("schedule entry `{}` is not `t:p`", part.trim()),
                    )
                })?;
                let t = t.trim().parse::<f64>();
                let p = p.trim().parse::<f64>();
                match (t, p) {
                    (Ok(t), Ok(p)) => knots.push((t, p)),
                    _ => {
                        return Err(ConfigError::parse(
                            line,
                            format!("schedule entry `{}` is not numeric", part.trim()),
                        ))
                    }
                }
            }
            Ok(Value::Schedule(knots))
        }
    }
}

fn check_value(spec: &KeySpec, v: &Value) -> Result<(), ConfigError> {
    let (Type::Num(check), Value::Num(x)) = (spec.ty, v) else {
        if let Value::Schedule(k) = v {
            if k.windows(2).any(|w| !(w[1].0 > w[0].0)) {
                return Err(ConfigError::invalid(spec.key, "strictly increasing in t"));
            }
            if k.iter().any(|&(_, p)| !(p > 0.0)) {
                return Err(ConfigError::invalid(spec.key, "positive in p"));
            }
        }
        return Ok(());
    };
    let x = *x;
    let (ok, constraint) = match check {
        Check::Any => (x.is_finite(), "finite".to_string()),
        Check::Positive => (x > 0.0 && x.is_finite(), "> 0".to_string()),
        Check::NonNegative => (x >= 0.0 && x.is_finite(), ">= 0".to_string()),
        Check::Count(min) => (
            x.fract() == 0.0 && x >= min as f64 && x <= 9007199254740992.0,
            format!("an integer >= {min}"),
        ),
    };
    if ok {
        Ok(())
    } else {
        Err(ConfigError::invalid(spec.key, constraint))
    }
}

/// An override `section.key=value`, `key=value` for model keys, or
/// `key=value` for the keys of `cmd`.
#[derive(Debug, Clone, PartialEq)]
pub struct Override {
    pub section: Option<String>,
    pub key: String,
    pub value: String,
}

impl std::str::FromStr for Override {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (lhs, value) = s
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, got `{s}`"))?;
        let lhs = lhs.trim();
        let (section, key) = match lhs.rsplit_once('.') {
            Some((sec, key)) => (Some(sec.to_string()), key.to_string()),
            None => (None, lhs.to_string()),
        };
        Ok(Override {
            section,
            key,
            value: value.trim().to_string(),
        })
    }
}

/// Parses and validates a configuration. Overrides are applied after the
/// file, as if appended to it; they are reported as line 0.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    parse_config_with(text, None, &[])
}

pub fn parse_config_with(
    text: &str,
    cmd: Option<Command>,
    overrides: &[Override],
) -> Result<RunConfig, ConfigError> {
    let mut raw = read_raw(text)?;
    for o in overrides {
        let section = match (&o.section, cmd) {
            (Some(s), _) => parse_section(s)
                .ok_or_else(|| ConfigError::parse(0, format!("--set: unknown section `{s}`")))?,
            (None, _) if lookup(Section::Model, &o.key).is_some() => Section::Model,
            (None, Some(c)) => Section::Run(c),
            (None, None) => Section::Model,
        };
        let spec = lookup(section, &o.key).ok_or_else(|| {
            ConfigError::parse(
                0,
                format!("--set: unknown key `{}` in {}", o.key, section.label()),
            )
        })?;
        raw.entries
            .retain(|(s, k, _, _)| !(*s == section && k.key == o.key));
        raw.entries.push((section, spec, o.value.clone(), 0));
    }

    let kind = match raw.find(Section::Model, "kind") {
        Some((_, spec, v, line)) => match parse_value(spec, v, *line)? {
            Value::Text(t) => t
                .parse::<ModelKind>()
                .map_err(|_| ConfigError::parse(*line, "bad kind"))?,
            _ => unreachable!(),
        },
        None => ModelKind::Logarithmic,
    };

    let mut params = ModelParams::default();
    for spec in &MODEL[1..] {
        if let Some((_, _, v, line)) = raw.find(Section::Model, spec.key) {
            let value = parse_value(spec, v, *line)?;
            check_value(spec, &value)?;
            if let Value::Num(x) = value {
                set_model_value(&mut params, spec.key, x);
            }
        }
    }
    params.validate().map_err(|e| match e {
        lvphase::Error::InvalidParams {
            name, constraint, ..
        } => ConfigError::invalid(name, constraint),
        other => ConfigError::invalid("model", other.to_string()),
    })?;

    let mut sections = Vec::new();
    for cmd in Command::ALL {
        let mut values = Vec::new();
        for spec in cmd.keys() {
            let value = match raw.find(Section::Run(cmd), spec.key) {
                Some((_, _, v, line)) => {
                    let v = parse_value(spec, v, *line)?;
                    check_value(spec, &v)?;
                    Some(v)
                }
                None => match spec.default {
                    Default_::Num(x) => Some(Value::Num(x)),
                    Default_::ByKind(l, q) => Some(Value::Num(match kind {
                        ModelKind::Logarithmic => l,
                        ModelKind::Quartic => q,
                    })),
                    Default_::Text(t) => Some(Value::Text(t.to_string())),
                    Default_::Unset => None,
                },
            };
            values.push((spec.key, value));
        }
        sections.push((cmd, values));
    }
    let cfg = RunConfig {
        kind,
        params,
        sections,
    };
    cross_check(&cfg)?;
    Ok(cfg)
}

fn cross_check(cfg: &RunConfig) -> Result<(), ConfigError> {
    use Command::*;
    let ordered = |cmd: Command, lo: &str, hi: &str| {
        if cfg.num(cmd, hi) > cfg.num(cmd, lo) {
            Ok(())
        } else {
            Err(ConfigError::invalid(hi, format!("> {lo}")))
        }
    };
    ordered(Isotherm, "p_min", "p_max")?;
    ordered(PhaseDiagram, "theta_min", "theta_max")?;
    if cfg.num(PhaseDiagram, "theta_max") >= cfg.params.theta_c {
        return Err(ConfigError::invalid("theta_max", "< theta_c"));
    }
    ordered(Minima, "u_min", "u_max")?;
    ordered(Minima, "h_min", "h_max")?;
    ordered(Spinodal, "u_min", "u_max")?;
    ordered(Pde1d, "x_min", "x_max")?;
    for cmd in [Relax, Thermal] {
        if cfg.opt_num(cmd, "p").is_some() && cfg.schedule(cmd).is_some() {
            return Err(ConfigError::invalid("schedule", "absent when `p` is given"));
        }
    }
    let quartic = cfg.kind == ModelKind::Quartic;
    for cmd in [Minima, Spinodal] {
        let (lo, hi) = (cfg.num(cmd, "u_min"), cfg.num(cmd, "u_max"));
        if quartic && lo < 0.0 {
            return Err(ConfigError::invalid("u_min", ">= 0 for the quartic model"));
        }
        if !quartic && (lo <= -1.0 || hi >= 1.0) {
            return Err(ConfigError::invalid(
                if lo <= -1.0 { "u_min" } else { "u_max" },
                "in (-1, 1) for the logarithmic model",
            ));
        }
    }
    let phi_check = |cmd: Command, key: &str| {
        let x = cfg.num(cmd, key);
        if quartic || x.abs() < 1.0 {
            Ok(())
        } else {
            Err(ConfigError::invalid(
                key,
                "in (-1, 1) for the logarithmic model",
            ))
        }
    };
    phi_check(Relax, "phi0")?;
    phi_check(Thermal, "phi0")?;
    phi_check(Pde1d, "phi_left")?;
    phi_check(Pde1d, "phi_right")?;
    if let Some(u) = cfg.opt_num(Hysteresis, "u") {
        if quartic && u < 0.0 {
            return Err(ConfigError::invalid("u", ">= 0 for the quartic model"));
        }
        if !quartic && u <= -1.0 {
            return Err(ConfigError::invalid("u", "> -1 for the logarithmic model"));
        }
    }
    Ok(())
}

/// Every section and key with its default, for `--help`.
pub fn defaults_help() -> String {
    let mut out = String::from(
        "Configuration file: `key = value` lines under [model] and [run.<command>].\n\n[model]\n",
    );
    let line = |out: &mut String, spec: &KeySpec, kind_note: bool| {
        let default = match spec.default {
            Default_::Num(x) => format!("{x}"),
            Default_::ByKind(l, q) if kind_note => format!("{l} (logarithmic), {q} (quartic)"),
            Default_::ByKind(l, _) => format!("{l}"),
            Default_::Text(t) => t.to_string(),
            Default_::Unset => "unset".to_string(),
        };
        let choices = match spec.ty {
            Type::Choice(o) => format!(" [{}]", o.join("|")),
            _ => String::new(),
        };
        let _ = writeln!(
            out,
            "  {:<13} {:<28} {}{}",
            spec.key, default, spec.help, choices
        );
    };
    for spec in MODEL {
        line(&mut out, spec, false);
    }
    for cmd in Command::ALL {
        let _ = writeln!(out, "\n[run.{cmd}]");
        for spec in cmd.keys() {
            line(&mut out, spec, true);
        }
    }
    out
}
