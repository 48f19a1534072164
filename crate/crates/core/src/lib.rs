//! Post-processing of first-principles point-defect calculations into
//! quantum-emitter photophysics.
//!
//! Given relaxed ground/excited geometries, Γ-point phonon modes, total
//! energies per charge state and plane-wave orbitals, the crate derives:
//!
//! - formation-energy diagrams and charge transition levels ([`energetics`]),
//! - Huang–Rhys factors, Debye–Waller factors and full-phonon PL lineshapes
//!   via the T = 0 generating-function formalism ([`lineshape`]),
//! - transition dipole moments, orientations and radiative lifetimes
//!   ([`optics`]),
//! - batch reports with CSV/SVG artifacts ([`report`]).
//!
//! File formats (POSCAR-style structures, native TOML schemas, manifests)
//! live in [`io`]; all physical constants in [`constants`]. Internal units
//! are eV, Å, amu, fs and degrees throughout.
//!
//! Everything is immutable after construction and safe to share across
//! threads; batch runs parallelize per defect.

pub mod constants;
pub mod energetics;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod lineshape;
pub mod model;
pub mod optics;
pub mod report;
pub mod units;
pub mod util;

pub use error::CoreError;
pub use model::{
    ChargeEntry, ChemPotentialPair, CrystalStructure, DefectEnergetics, DipoleKind, ModelError,
    PhononModeSet, PlanewaveOrbital, Spectrum, TransitionDipole,
};
