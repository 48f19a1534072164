//! Deterministic synthetic systems for tests, benchmarks and demo runs:
//! toy crystals with complete orthonormal mode bases, and a 16-emitter
//! reference suite of carbon-substituted TMD bilayer fixtures whose derived
//! optical quantities are pinned in [`reference`].

pub mod reference;
pub mod suite;
pub mod toy;

pub use reference::{EmitterFixture, HostFixture, HOSTS, REFERENCE_EMITTERS};
pub use suite::write_reference_suite;
pub use toy::{box_structure, displaced_structure, orthonormal_modes};
