//! Single-excitation physics of a one-dimensional coupled-resonator array
//! with a two-level emitter coupled to two neighbouring resonators.
//!
//! The crate is organised bottom-up:
//!
//! * [`model`]: parameters, dispersion and band geometry.
//! * [`roots`]: bracketed root finding used by the bound-state solver.
//! * [`spectrum`]: out-of-band levels and the level-counting transition.
//! * [`scattering`]: single-photon scattering eigenstates on the infinite chain.
//! * [`bound`]: bound-state wavefunctions, normalisation and chirality.
//! * [`dynamics`]: emitter population from the eigenstate expansion.
//! * [`oracle`]: finite-chain exact diagonalisation used to validate the rest.
//!
//! All energies are in units of the hopping strength unless a different
//! `hopping` is passed explicitly.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bound;
pub mod dynamics;
mod error;
pub mod model;
pub mod oracle;
pub mod roots;
pub mod scattering;
pub mod spectrum;

pub use bound::{build_bound_state, chirality, kappa_from_energy, BoundState, ChiralityReport};
pub use dynamics::{
    evolve_spectral, long_time_diagnostics, overlaps, LongTimeDiagnostics, Method,
    OverlapDecomposition, TimeSeries,
};
pub use error::{Error, Result};
pub use model::{BandGeometry, Branch, ModelParams};
pub use oracle::FiniteModel;
pub use scattering::{scattering_solution, ScatteringSolution};
pub use spectrum::{
    bound_defect, bound_state_energies, has_upper_bound_state, phase_boundary_g, BoundStateEnergy,
    PhaseBoundary, UpperStateReport,
};
