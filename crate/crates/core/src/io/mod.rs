//! File formats: the POSCAR-style structure dialect, the toolkit's native
//! TOML schemas, the run manifest, and the CSV/SVG emitters.
//!
//! Every parse error carries the offending file path; text-format errors
//! carry a line number and schema errors embed the deserializer's own
//! line/column report. All numeric text is read and written in a locale
//! independent form.

pub mod csv;
pub mod manifest;
pub mod native;
pub mod poscar;
pub mod svg;

use crate::model::{CrystalStructure, ModelError};
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Syntax {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Schema { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Invalid {
        path: PathBuf,
        source: ModelError,
    },
}

pub(crate) fn read_to_string(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.to_path_buf(),
        source,
    })
}

/// Write a rendered artifact, creating parent directories as needed.
pub fn write_string(path: &Path, content: &str) -> Result<(), IoError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent).map_err(|source| IoError::Write {
                path: path.to_path_buf(),
                source,
            })?;
        }
    }
    std::fs::write(path, content).map_err(|source| IoError::Write {
        path: path.to_path_buf(),
        source,
    })
}

/// Built-in atomic masses in amu; the native structure schema may override
/// them per atom.
pub fn element_mass(symbol: &str) -> Option<f64> {
    let mass = match symbol {
        "H" => 1.008,
        "B" => 10.81,
        "C" => 12.011,
        "N" => 14.007,
        "O" => 15.999,
        "Si" => 28.085,
        "P" => 30.973_761_998,
        "S" => 32.06,
        "Ga" => 69.723,
        "Ge" => 72.630,
        "As" => 74.921_595,
        "Se" => 78.971,
        "Mo" => 95.95,
        "Te" => 127.60,
        "W" => 183.84,
        _ => return None,
    };
    Some(mass)
}

/// Parse a structure file in either dialect: the native TOML schema
/// (recognized by its `schema_version` key) or the POSCAR-style layout.
pub fn parse_structure(path: &Path) -> Result<CrystalStructure, IoError> {
    let content = read_to_string(path)?;
    if native::looks_native(&content) {
        native::structure_from_str(path, &content)
    } else {
        poscar::structure_from_str(path, &content)
    }
}
