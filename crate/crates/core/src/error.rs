use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: must be {constraint} (got {value})")]
    InvalidParams {
        name: &'static str,
        constraint: &'static str,
        value: f64,
    },

    /// The order parameter left the domain of the logarithmic potential.
    #[error("order parameter {phi} outside the admissible interval (-1, 1)")]
    DomainError { phi: f64 },

    #[error("non-positive specific volume {nu} at p = {p}, theta = {theta}, phi = {phi}")]
    NonPositiveVolume {
        p: f64,
        theta: f64,
        phi: f64,
        nu: f64,
    },

    #[error("operation `{operation}` is not defined for the {kind} model")]
    ModelMismatch {
        operation: &'static str,
        kind: &'static str,
    },

    #[error("step size underflow at t = {t} (dt = {dt})")]
    StepFailure { t: f64, dt: f64 },

    #[error("heat capacity theta * eta_theta = {value} is singular at t = {t}")]
    SingularHeatCapacity { t: f64, value: f64 },

    #[error("time step {dt} exceeds the explicit stability bound {bound}")]
    StabilityViolation { dt: f64, bound: f64 },

    #[error("invalid schedule: {reason}")]
    InvalidSchedule { reason: String },

    #[error("invalid grid: {reason}")]
    InvalidGrid { reason: String },

    #[error("audit `{check}` failed: {detail}")]
    AuditFailed { check: String, detail: String },
}

impl Error {
    /// Variant name, used by the CLI diagnostic stream.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidParams { .. } => "InvalidParams",
            Error::DomainError { .. } => "DomainError",
            Error::NonPositiveVolume { .. } => "NonPositiveVolume",
            Error::ModelMismatch { .. } => "ModelMismatch",
            Error::StepFailure { .. } => "StepFailure",
            Error::SingularHeatCapacity { .. } => "SingularHeatCapacity",
            Error::StabilityViolation { .. } => "StabilityViolation",
            Error::InvalidSchedule { .. } => "InvalidSchedule",
            Error::InvalidGrid { .. } => "InvalidGrid",
            Error::AuditFailed { .. } => "AuditFailed",
        }
    }
}

pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidParams {
            name,
            constraint: "> 0",
            value,
        })
    }
}
