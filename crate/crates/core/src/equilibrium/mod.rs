//! Stationary points, phase equilibria and the quasi-static curves built
//! from them.

pub mod cubic;
mod hysteresis;
mod isotherm;
mod minima_map;
mod spinodal;
mod stationary;
mod thermo;

pub use hysteresis::{
    hysteresis_sweep, hysteresis_sweep_reduced, sweep_path, HysteresisPoint, SweepDirection,
};
pub use isotherm::{
    isotherm, isotherm_plateau, isotherm_sample, pressure_grid, Branch, IsothermCurve,
    IsothermSample, Plateau,
};
pub use minima_map::{minima_structure_map, MinimaMap};
pub use spinodal::{spinodal, spinodal_reduced, SpinodalBounds};
pub use stationary::{
    find_stationary_points, stationary_points_reduced, PhaseEquilibrium, PointKind,
    StationaryPoint, INFLECTION_TOL,
};
pub use thermo::{
    coexistence, equilibrium_state, latent_heat_and_clapeyron, state_equation_residual,
    volume_jump, volume_jump_closed_form, Coexistence, LatentHeat, PhaseState,
};
