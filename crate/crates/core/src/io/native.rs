//! The toolkit's native TOML schemas for structures, phonon mode sets,
//! defect energetics and plane-wave orbitals. Self-describing via a
//! `schema_version` key; parse → serialize → parse is an identity.

use super::{element_mass, IoError};
use crate::model::{
    ChargeEntry, ChemPotentialPair, CrystalStructure, DefectEnergetics, PhononModeSet,
    PlanewaveOrbital,
};
use crate::units::thz_to_mev;
use crate::util::vec_mat3;
use num_complex::Complex64;
use serde::{de::DeserializeOwned, Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

pub const SCHEMA_VERSION: u32 = 1;

/// Quick sniff used by the dual-dialect structure reader: native files are
/// valid TOML carrying a `schema_version` key.
pub fn looks_native(content: &str) -> bool {
    toml::from_str::<toml::Value>(content)
        .map(|v| v.get("schema_version").is_some())
        .unwrap_or(false)
}

fn from_toml<T: DeserializeOwned>(path: &Path, content: &str) -> Result<T, IoError> {
    toml::from_str(content).map_err(|e| IoError::Schema {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn check_version(path: &Path, version: u32) -> Result<(), IoError> {
    if version != SCHEMA_VERSION {
        return Err(IoError::Schema {
            path: path.to_path_buf(),
            message: format!("unsupported schema_version {version}, expected {SCHEMA_VERSION}"),
        });
    }
    Ok(())
}

pub(crate) fn load_toml_file<T: DeserializeOwned>(path: &Path) -> Result<T, IoError> {
    let content = super::read_to_string(path)?;
    from_toml(path, &content)
}

fn save_toml_file<T: Serialize>(path: &Path, value: &T) -> Result<(), IoError> {
    let text = toml::to_string_pretty(value).map_err(|e| IoError::Schema {
        path: path.to_path_buf(),
        message: format!("serialization failed: {e}"),
    })?;
    super::write_string(path, &text)
}

fn invalid(path: &Path) -> impl Fn(crate::model::ModelError) -> IoError + '_ {
    move |source| IoError::Invalid {
        path: path.to_path_buf(),
        source,
    }
}

// ---------------------------------------------------------------- structure

#[derive(Debug, Serialize, Deserialize)]
pub struct StructureFile {
    pub schema_version: u32,
    #[serde(default)]
    pub label: String,
    pub lattice: [[f64; 3]; 3],
    pub species: Vec<String>,
    /// Atomic masses in amu; omitted entries fall back to the element table.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub masses: Option<Vec<f64>>,
    pub coordinates: CoordinateKind,
    pub positions: Vec<[f64; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoordinateKind {
    Cartesian,
    Direct,
}

pub fn structure_from_str(path: &Path, content: &str) -> Result<CrystalStructure, IoError> {
    let raw: StructureFile = from_toml(path, content)?;
    check_version(path, raw.schema_version)?;
    let masses = match raw.masses {
        Some(m) => m,
        None => raw
            .species
            .iter()
            .map(|s| {
                element_mass(s).ok_or_else(|| IoError::Schema {
                    path: path.to_path_buf(),
                    message: format!("no tabulated mass for species {s}; add a masses array"),
                })
            })
            .collect::<Result<_, _>>()?,
    };
    let positions = match raw.coordinates {
        CoordinateKind::Cartesian => raw.positions,
        CoordinateKind::Direct => raw
            .positions
            .into_iter()
            .map(|f| vec_mat3(f, &raw.lattice))
            .collect(),
    };
    CrystalStructure::new(raw.lattice, raw.species, masses, positions, raw.label)
        .map_err(invalid(path))
}

pub fn load_structure(path: &Path) -> Result<CrystalStructure, IoError> {
    let content = super::read_to_string(path)?;
    structure_from_str(path, &content)
}

pub fn save_structure(path: &Path, s: &CrystalStructure) -> Result<(), IoError> {
    let raw = StructureFile {
        schema_version: SCHEMA_VERSION,
        label: s.label().to_string(),
        lattice: *s.lattice(),
        species: s.species().to_vec(),
        masses: Some(s.masses().to_vec()),
        coordinates: CoordinateKind::Cartesian,
        positions: s.positions().to_vec(),
    };
    save_toml_file(path, &raw)
}

// ------------------------------------------------------------------ phonons

#[derive(Debug, Serialize, Deserialize)]
pub struct PhononFile {
    pub schema_version: u32,
    pub natoms: usize,
    pub frequency_unit: FrequencyUnit,
    /// Mode energies (or THz frequencies), 3N entries, soft modes negative.
    pub frequencies: Vec<f64>,
    /// True when rows are eigenvectors of the mass-weighted dynamical
    /// matrix, false for plain Cartesian displacement patterns.
    pub mass_weighted: bool,
    /// One row per mode, 3N numbers each, atom-major (x y z per atom).
    pub eigenvectors: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FrequencyUnit {
    #[serde(rename = "meV")]
    Mev,
    #[serde(rename = "THz")]
    Thz,
}

pub fn phonons_from_str(path: &Path, content: &str) -> Result<PhononModeSet, IoError> {
    let raw: PhononFile = from_toml(path, content)?;
    check_version(path, raw.schema_version)?;
    let frequencies: Vec<f64> = match raw.frequency_unit {
        FrequencyUnit::Mev => raw.frequencies,
        FrequencyUnit::Thz => raw.frequencies.iter().map(|&f| thz_to_mev(f)).collect(),
    };
    let mut modes = Vec::with_capacity(raw.eigenvectors.len());
    for (k, row) in raw.eigenvectors.iter().enumerate() {
        if row.len() != 3 * raw.natoms {
            return Err(IoError::Schema {
                path: path.to_path_buf(),
                message: format!(
                    "mode {k}: eigenvector has {} components, expected {}",
                    row.len(),
                    3 * raw.natoms
                ),
            });
        }
        let norm = row.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() >= 1e-3 {
            return Err(IoError::Schema {
                path: path.to_path_buf(),
                message: format!(
                    "mode {k}: eigenvector norm {norm} outside the 1e-3 renormalization window"
                ),
            });
        }
        let vec: Vec<[f64; 3]> = row
            .chunks_exact(3)
            .map(|c| [c[0] / norm, c[1] / norm, c[2] / norm])
            .collect();
        modes.push(vec);
    }
    PhononModeSet::new(raw.natoms, frequencies, modes, raw.mass_weighted).map_err(invalid(path))
}

pub fn load_phonons(path: &Path) -> Result<PhononModeSet, IoError> {
    let content = super::read_to_string(path)?;
    phonons_from_str(path, &content)
}

pub fn save_phonons(path: &Path, set: &PhononModeSet) -> Result<(), IoError> {
    let eigenvectors = (0..set.nmodes())
        .map(|k| set.eigenvector(k).iter().flatten().copied().collect())
        .collect();
    let raw = PhononFile {
        schema_version: SCHEMA_VERSION,
        natoms: set.natoms(),
        frequency_unit: FrequencyUnit::Mev,
        frequencies: set.frequencies_mev().to_vec(),
        mass_weighted: set.mass_weighted(),
        eigenvectors,
    };
    save_toml_file(path, &raw)
}

// --------------------------------------------------------------- energetics

#[derive(Debug, Serialize, Deserialize)]
pub struct EnergeticsFile {
    pub schema_version: u32,
    #[serde(default)]
    pub label: String,
    pub host_total_energy_ev: f64,
    pub vbm_ev: f64,
    pub gap_ev: f64,
    #[serde(default)]
    pub stoichiometry: Vec<StoichiometryRow>,
    pub charge_states: Vec<ChargeStateRow>,
    #[serde(default)]
    pub chemical_potentials: BTreeMap<String, PotentialRow>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct StoichiometryRow {
    pub species: String,
    pub delta: i32,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ChargeStateRow {
    pub charge: i32,
    pub total_energy_ev: f64,
    #[serde(default)]
    pub correction_ev: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PotentialRow {
    pub rich_ev: f64,
    pub poor_ev: f64,
}

pub fn energetics_from_str(path: &Path, content: &str) -> Result<DefectEnergetics, IoError> {
    let raw: EnergeticsFile = from_toml(path, content)?;
    check_version(path, raw.schema_version)?;
    let entries = raw
        .charge_states
        .iter()
        .map(|c| ChargeEntry {
            charge: c.charge,
            total_energy_ev: c.total_energy_ev,
            correction_ev: c.correction_ev,
        })
        .collect();
    let stoich = raw
        .stoichiometry
        .iter()
        .map(|s| (s.species.clone(), s.delta))
        .collect();
    let potentials = raw
        .chemical_potentials
        .iter()
        .map(|(k, v)| {
            (
                k.clone(),
                ChemPotentialPair {
                    rich_ev: v.rich_ev,
                    poor_ev: v.poor_ev,
                },
            )
        })
        .collect();
    DefectEnergetics::new(
        raw.host_total_energy_ev,
        entries,
        stoich,
        potentials,
        raw.vbm_ev,
        raw.gap_ev,
        raw.label,
    )
    .map_err(invalid(path))
}

pub fn load_energetics(path: &Path) -> Result<DefectEnergetics, IoError> {
    let content = super::read_to_string(path)?;
    energetics_from_str(path, &content)
}

pub fn save_energetics(path: &Path, d: &DefectEnergetics) -> Result<(), IoError> {
    let raw = EnergeticsFile {
        schema_version: SCHEMA_VERSION,
        label: d.label.clone(),
        host_total_energy_ev: d.host_total_energy_ev,
        vbm_ev: d.vbm_ev,
        gap_ev: d.gap_ev,
        stoichiometry: d
            .stoichiometry_delta
            .iter()
            .map(|(species, delta)| StoichiometryRow {
                species: species.clone(),
                delta: *delta,
            })
            .collect(),
        charge_states: d
            .charge_entries
            .iter()
            .map(|e| ChargeStateRow {
                charge: e.charge,
                total_energy_ev: e.total_energy_ev,
                correction_ev: e.correction_ev,
            })
            .collect(),
        chemical_potentials: d
            .chem_potentials
            .iter()
            .map(|(k, v)| {
                (
                    k.clone(),
                    PotentialRow {
                        rich_ev: v.rich_ev,
                        poor_ev: v.poor_ev,
                    },
                )
            })
            .collect(),
    };
    save_toml_file(path, &raw)
}

// ----------------------------------------------------------------- orbitals

#[derive(Debug, Serialize, Deserialize)]
pub struct OrbitalFile {
    pub schema_version: u32,
    /// k-point in reciprocal Å⁻¹.
    pub kpoint: [f64; 3],
    pub energy_ev: f64,
    pub band_index: i32,
    pub spin_channel: i32,
    /// One row per plane wave: G_x, G_y, G_z, Re c, Im c.
    pub planewaves: Vec<[f64; 5]>,
}

pub fn orbital_from_str(path: &Path, content: &str) -> Result<PlanewaveOrbital, IoError> {
    let raw: OrbitalFile = from_toml(path, content)?;
    check_version(path, raw.schema_version)?;
    let mut gvectors = Vec::with_capacity(raw.planewaves.len());
    let mut coefficients = Vec::with_capacity(raw.planewaves.len());
    for row in &raw.planewaves {
        gvectors.push([row[0], row[1], row[2]]);
        coefficients.push(Complex64::new(row[3], row[4]));
    }
    PlanewaveOrbital::new(
        raw.kpoint,
        gvectors,
        coefficients,
        raw.energy_ev,
        raw.band_index,
        raw.spin_channel,
    )
    .map_err(invalid(path))
}

pub fn load_orbital(path: &Path) -> Result<PlanewaveOrbital, IoError> {
    let content = super::read_to_string(path)?;
    orbital_from_str(path, &content)
}

pub fn save_orbital(path: &Path, orbital: &PlanewaveOrbital) -> Result<(), IoError> {
    let planewaves = orbital
        .gvectors()
        .iter()
        .zip(orbital.coefficients())
        .map(|(g, c)| [g[0], g[1], g[2], c.re, c.im])
        .collect();
    let raw = OrbitalFile {
        schema_version: SCHEMA_VERSION,
        kpoint: orbital.kpoint(),
        energy_ev: orbital.energy_ev(),
        band_index: orbital.band_index(),
        spin_channel: orbital.spin_channel(),
        planewaves,
    };
    save_toml_file(path, &raw)
}
