//! Domain types shared by every other module.
//!
//! All types are immutable after construction and validated in their
//! constructors, so malformed instances are unrepresentable downstream.
//! Internal units follow the ledger in [`crate::constants`]: eV, Å, amu,
//! fs, degrees.

mod defect;
mod dipole;
mod orbital;
mod phonons;
mod spectrum;
mod structure;

pub use defect::{ChargeEntry, ChemPotentialPair, DefectEnergetics};
pub use dipole::{DipoleKind, TransitionDipole};
pub use orbital::PlanewaveOrbital;
pub use phonons::PhononModeSet;
pub use spectrum::Spectrum;
pub(crate) use spectrum::check_uniform_grid;
pub use structure::CrystalStructure;

use thiserror::Error;

/// Validation failures raised by model constructors.
#[derive(Debug, Error)]
pub enum ModelError {
    #[error("structure needs at least one atom")]
    EmptyStructure,
    #[error("species/masses/positions length mismatch: {species}/{masses}/{positions}")]
    LengthMismatch {
        species: usize,
        masses: usize,
        positions: usize,
    },
    #[error("atom {index} has nonpositive or non-finite mass {mass}")]
    BadMass { index: usize, mass: f64 },
    #[error("zero-volume lattice (det = {0:e})")]
    SingularLattice(f64),
    #[error("expected {expected} phonon modes (3N), found {found}")]
    ModeCount { expected: usize, found: usize },
    #[error("mode {mode} eigenvector norm {norm} deviates from unity")]
    EigenvectorNorm { mode: usize, norm: f64 },
    #[error("mode {mode} eigenvector has {found} atom rows, expected {expected}")]
    EigenvectorShape {
        mode: usize,
        expected: usize,
        found: usize,
    },
    #[error("frequency list has {found} entries, expected {expected}")]
    FrequencyCount { expected: usize, found: usize },
    #[error("duplicate charge state q = {0}")]
    DuplicateCharge(i32),
    #[error("band gap must be positive, got {0}")]
    BadGap(f64),
    #[error("correction energy for q = {charge} is not finite: {value}")]
    BadCorrection { charge: i32, value: f64 },
    #[error("correction energy for q = 0 must be zero, got {0}")]
    NeutralCorrection(f64),
    #[error("species {0} appears in the stoichiometry but has no chemical potentials")]
    MissingPotential(String),
    #[error("orbital has {gvectors} G vectors but {coefficients} coefficients")]
    OrbitalShape {
        gvectors: usize,
        coefficients: usize,
    },
    #[error("duplicate G vector row at index {0}")]
    DuplicateGVector(usize),
    #[error("orbital norm {0} outside the 1e-3 renormalization window")]
    OrbitalNorm(f64),
    #[error("spectrum grid needs at least two points")]
    GridTooShort,
    #[error("spectrum grid is not uniformly increasing near index {0}")]
    NonUniformGrid(usize),
    #[error("spectrum intensity at index {index} is negative or non-finite: {value}")]
    BadIntensity { index: usize, value: f64 },
}
