//! Dissipative evolution of the order parameter.

mod homogeneous;
mod pde;
mod rk45;
mod schedule;

pub use homogeneous::{
    relax_homogeneous, relax_thermal_homogeneous, Trajectory, TrajectorySample, HEAT_CAPACITY_FLOOR,
};
pub use pde::{
    discrete_free_energy, kink_interface_tension, kink_profile, run_pde1d, Boundary, DensityMode,
    EnergySample, PdeOptions, PdeRun, PdeScheme, Profile1D, DEFAULT_DT_FACTOR, DOMAIN_GUARD,
};
pub use rk45::{integrate, StepControl};
pub use schedule::PressureSchedule;
