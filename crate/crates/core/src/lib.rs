//! Quantum frequency conversion from optics to microwaves in an
//! electro-optomechanical transducer, and the entanglement of a two-mode
//! squeezed vacuum that survives it.
//!
//! The pipeline runs bottom-up through the modules:
//!
//! - [`params`]: physical inputs, unit conventions, derived couplings and occupancies
//! - [`scattering`]: input-output coefficients, conversion efficiency and its optimum
//! - [`gaussian`]: covariance matrices, symplectic spectra, log-negativity
//! - [`capacity`]: the large-photon-number limit of the surviving entanglement
//! - [`analysis`]: sweeps and optimizers over photon number and loss rates
//! - [`cli`]: the `eomech` command-line tool
//!
//! Rates and frequencies are ordinary frequencies in Hz everywhere.
//!
//! ```
//! use eomech::params::{derive, SystemParams};
//! use eomech::scattering::efficiency_closed_form;
//!
//! let dp = derive(&SystemParams::default()).unwrap();
//! let r0 = efficiency_closed_form(&dp);
//! assert!((r0 - 0.3268).abs() < 1e-3);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod analysis;
pub mod capacity;
pub mod cli;
mod compensated;
pub mod error;
pub mod gaussian;
pub mod linsolve;
pub mod optimize;
pub mod params;
pub mod scattering;

pub use error::{Error, Result};
pub use params::{derive, ConventionFlags, DerivedParams, SystemParams};
