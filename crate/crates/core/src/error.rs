//! Crate-level error aggregation for the batch pipeline.

use crate::energetics::EnergeticsError;
use crate::io::IoError;
use crate::lineshape::LineshapeError;
use crate::model::ModelError;
use crate::optics::OpticsError;
use crate::units::UnitsError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Energetics(#[from] EnergeticsError),
    #[error(transparent)]
    Lineshape(#[from] LineshapeError),
    #[error(transparent)]
    Optics(#[from] OpticsError),
    #[error(transparent)]
    Units(#[from] UnitsError),
    #[error("{0}")]
    Pipeline(String),
}

impl CoreError {
    /// True for failures of input files or the manifest itself, as opposed
    /// to failures of the computation. CLIs map these to distinct exit
    /// codes.
    pub fn is_input_error(&self) -> bool {
        matches!(self, CoreError::Io(_))
    }
}
