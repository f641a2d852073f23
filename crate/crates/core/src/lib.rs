//! Phase-field model of liquid-vapour transitions.
//!
//! A [`PotentialModel`] gives the free energy `f(p, theta, phi)` and its
//! partials. [`equilibrium`] finds minima, isotherms and coexistence data,
//! [`dynamics`] relaxes homogeneous states and one-dimensional profiles, and
//! [`thermo_validate`] audits a model against thermodynamic identities.
//!
//! ```
//! use lvphase::equilibrium::coexistence;
//! use lvphase::{ModelParams, PotentialModel};
//!
//! let m = PotentialModel::logarithmic(ModelParams::default())?;
//! let c = coexistence(&m, 0.8)?.expect("below theta_c");
//! assert!(c.vapour.nu > c.liquid.nu);
//! # Ok::<(), lvphase::Error>(())
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dynamics;
pub mod equilibrium;
pub mod error;
pub mod potentials;
pub mod thermo_validate;

pub use error::{Error, Result};
pub use potentials::{ModelKind, ModelParams, PotentialModel};

// Book chapters compile and run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/potentials.md")]
    mod potentials {}
    #[doc = include_str!("../../../book/src/equilibrium.md")]
    mod equilibrium {}
    #[doc = include_str!("../../../book/src/dynamics.md")]
    mod dynamics {}
    #[doc = include_str!("../../../book/src/validation.md")]
    mod validation {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
