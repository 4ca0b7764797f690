//! Discrete-time Newtonian mechanics in central potentials.
//!
//! With a fixed time step `tau`, circular orbits that close after exactly
//! `n` steps exist only at discrete radii, so every central potential comes
//! with a discrete energy spectrum. This crate computes those spectra
//! (forward problem), reconstructs a potential from a prescribed spectrum
//! (inverse problem), and simulates the underlying dynamics step by step so
//! the claimed orbits can be verified directly.
//!
//! Organization:
//! - [`model`]: parameters, phase-space state, potential families
//! - [`dynamics`]: the explicit update map, trajectories, closure checks
//! - [`forward`]: orbit radii and spectra for a given potential
//! - [`inverse`]: radius profiles and potential reconstruction from spectra
//! - [`catalog`]: closed-form spectra for standard potentials
//! - [`verify`]: cross-checking suites used by the command-line tool

// validation guards use `!(x > 0.0)` on purpose: unlike `x <= 0.0`, the
// negated form also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod dynamics;
mod error;
pub mod forward;
pub mod interp;
pub mod inverse;
mod model;
pub mod quad;
pub mod roots;
pub mod verify;

pub use error::{Error, Result};
pub use model::{
    read_potential_csv, write_potential_csv, DiscreteParams, Extrapolation, OrbitSolution,
    PhaseState, PhysicalityReport, PotentialDescriptor, PotentialModel, VANISH_RATIO,
};
