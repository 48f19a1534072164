//! The batch-run manifest: input file paths, scalar inputs and run options
//! for a list of defects.
//!
//! Loading is fail-fast in the sense that every referenced file is located
//! and parsed up front, before any computation starts; per-defect problems
//! are recorded against that defect so the rest of the batch can proceed.

use super::{native, IoError};
use crate::constants::HBAR_MEV_FS;
use crate::energetics::Condition;
use crate::model::{CrystalStructure, DefectEnergetics, PhononModeSet, PlanewaveOrbital};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Debug, Serialize, Deserialize)]
struct ManifestFile {
    schema_version: u32,
    #[serde(default)]
    options: OptionsFile,
    #[serde(default)]
    defects: Vec<DefectEntryFile>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct OptionsFile {
    grid_step_mev: Option<f64>,
    sigma_mev: Option<f64>,
    gamma_mev: Option<f64>,
    t_max_fs: Option<f64>,
    n_time: Option<usize>,
    condition: Option<Condition>,
    fermi_points: Option<usize>,
    e_min_ev: Option<f64>,
    e_max_ev: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct DefectEntryFile {
    label: String,
    ground: String,
    excited: String,
    phonons: String,
    energetics: Option<String>,
    refractive_index: f64,
    zpl_override_ev: Option<f64>,
    orbitals: Option<OrbitalPathsFile>,
}

#[derive(Debug, Serialize, Deserialize)]
struct OrbitalPathsFile {
    excitation_initial: String,
    excitation_final: String,
    emission_initial: String,
    emission_final: String,
}

/// Tunables of a batch run. Defaults resolve TMD-scale phonon bands while
/// keeping the transform cheap; everything is overridable per manifest and
/// again per CLI invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub grid_step_mev: f64,
    pub sigma_mev: f64,
    pub gamma_mev: f64,
    /// Half-width of the time window; `None` resolves to 15ħ/γ.
    pub t_max_fs: Option<f64>,
    pub n_time: usize,
    pub condition: Condition,
    /// Fermi-grid samples for stability diagrams.
    pub fermi_points: usize,
    pub e_min_ev: Option<f64>,
    pub e_max_ev: Option<f64>,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            grid_step_mev: 0.5,
            sigma_mev: 3.0,
            gamma_mev: 1.0,
            t_max_fs: None,
            n_time: 1 << 16,
            condition: Condition::Rich,
            fermi_points: 501,
            e_min_ev: None,
            e_max_ev: None,
        }
    }
}

impl RunOptions {
    pub fn effective_t_max_fs(&self) -> f64 {
        self.t_max_fs
            .unwrap_or(15.0 * HBAR_MEV_FS / self.gamma_mev)
    }
}

/// CLI-level overrides applied on top of manifest options.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub grid_step_mev: Option<f64>,
    pub sigma_mev: Option<f64>,
    pub gamma_mev: Option<f64>,
    pub t_max_fs: Option<f64>,
    pub condition: Option<Condition>,
}

impl Overrides {
    pub fn apply(&self, options: &mut RunOptions) {
        if let Some(v) = self.grid_step_mev {
            options.grid_step_mev = v;
        }
        if let Some(v) = self.sigma_mev {
            options.sigma_mev = v;
        }
        if let Some(v) = self.gamma_mev {
            options.gamma_mev = v;
        }
        if let Some(v) = self.t_max_fs {
            options.t_max_fs = Some(v);
        }
        if let Some(v) = self.condition {
            options.condition = v;
        }
    }
}

/// The four orbitals of an excitation/emission transition pair.
#[derive(Debug, Clone)]
pub struct OrbitalSet {
    pub excitation_initial: PlanewaveOrbital,
    pub excitation_final: PlanewaveOrbital,
    pub emission_initial: PlanewaveOrbital,
    pub emission_final: PlanewaveOrbital,
}

/// Everything needed to process one defect.
#[derive(Debug, Clone)]
pub struct DefectJob {
    pub label: String,
    pub ground: CrystalStructure,
    pub excited: CrystalStructure,
    pub phonons: PhononModeSet,
    pub energetics: Option<DefectEnergetics>,
    pub refractive_index: f64,
    pub zpl_override_ev: Option<f64>,
    pub orbitals: Option<OrbitalSet>,
}

#[derive(Debug)]
pub struct Manifest {
    pub options: RunOptions,
    /// Per-defect load results, manifest order preserved.
    pub defects: Vec<(String, Result<DefectJob, IoError>)>,
}

pub fn load_manifest(path: &Path) -> Result<Manifest, IoError> {
    let raw: ManifestFile = native::load_toml_file(path)?;
    if raw.schema_version != native::SCHEMA_VERSION {
        return Err(IoError::Schema {
            path: path.to_path_buf(),
            message: format!("unsupported schema_version {}", raw.schema_version),
        });
    }
    let mut labels = std::collections::BTreeSet::new();
    for entry in &raw.defects {
        if !labels.insert(entry.label.clone()) {
            return Err(IoError::Schema {
                path: path.to_path_buf(),
                message: format!("duplicate defect label {:?}", entry.label),
            });
        }
    }

    let defaults = RunOptions::default();
    let o = &raw.options;
    let options = RunOptions {
        grid_step_mev: o.grid_step_mev.unwrap_or(defaults.grid_step_mev),
        sigma_mev: o.sigma_mev.unwrap_or(defaults.sigma_mev),
        gamma_mev: o.gamma_mev.unwrap_or(defaults.gamma_mev),
        t_max_fs: o.t_max_fs,
        n_time: o.n_time.unwrap_or(defaults.n_time),
        condition: o.condition.unwrap_or(defaults.condition),
        fermi_points: o.fermi_points.unwrap_or(defaults.fermi_points),
        e_min_ev: o.e_min_ev,
        e_max_ev: o.e_max_ev,
    };

    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let defects = raw
        .defects
        .iter()
        .map(|entry| (entry.label.clone(), load_job(path, base, entry)))
        .collect();
    Ok(Manifest { options, defects })
}

fn load_job(
    manifest_path: &Path,
    base: &Path,
    entry: &DefectEntryFile,
) -> Result<DefectJob, IoError> {
    if !(entry.refractive_index > 1.0) {
        return Err(IoError::Schema {
            path: manifest_path.to_path_buf(),
            message: format!(
                "defect {:?}: refractive_index must exceed 1, got {}",
                entry.label, entry.refractive_index
            ),
        });
    }
    let resolve = |rel: &str| -> PathBuf { base.join(rel) };
    let ground = super::parse_structure(&resolve(&entry.ground))?;
    let excited = super::parse_structure(&resolve(&entry.excited))?;
    let phonons = native::load_phonons(&resolve(&entry.phonons))?;
    let energetics = entry
        .energetics
        .as_deref()
        .map(|p| native::load_energetics(&resolve(p)))
        .transpose()?;
    let orbitals = entry
        .orbitals
        .as_ref()
        .map(|paths| -> Result<OrbitalSet, IoError> {
            Ok(OrbitalSet {
                excitation_initial: native::load_orbital(&resolve(&paths.excitation_initial))?,
                excitation_final: native::load_orbital(&resolve(&paths.excitation_final))?,
                emission_initial: native::load_orbital(&resolve(&paths.emission_initial))?,
                emission_final: native::load_orbital(&resolve(&paths.emission_final))?,
            })
        })
        .transpose()?;
    Ok(DefectJob {
        label: entry.label.clone(),
        ground,
        excited,
        phonons,
        energetics,
        refractive_index: entry.refractive_index,
        zpl_override_ev: entry.zpl_override_ev,
        orbitals,
    })
}
