//! Batch orchestration: run every defect of a manifest through energetics,
//! lineshape and optics, emit per-defect artifacts and the consolidated
//! report.
//!
//! Defects are processed in parallel; a single collector writes all files
//! with rows sorted by label, so identical inputs give byte-identical
//! outputs. A failing defect is recorded with a diagnostic and does not
//! stop the rest of the batch.

use crate::energetics::stability_diagram;
use crate::error::CoreError;
use crate::io::csv::{render_diagram_csv, render_modes_csv, render_report_csv, render_spectrum_csv};
use crate::io::manifest::{load_manifest, DefectJob, Overrides, RunOptions};
use crate::io::svg::{c_band, o_band, render_diagram_svg, render_spectrum_svg};
use crate::lineshape::{
    displacement, generating_lineshape, hr_summary, mass_weighted_delta_q, project_modes,
    spectral_function,
};
use crate::model::DipoleKind;
use crate::optics::{misalignment, radiative_lifetime, transition_dipole, OpticsError};
use crate::units::energy_to_wavelength_nm;
use crate::util::{sanitize_label, uniform_grid};
use rayon::prelude::*;
use std::path::{Path, PathBuf};

/// One consolidated row of the emitter report; optical columns are absent
/// when the manifest supplies no orbitals or the dipole vanishes.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectReportRow {
    pub label: String,
    pub delta_q: f64,
    pub zpl_ev: f64,
    pub zpl_nm: f64,
    pub hr: f64,
    pub dw: f64,
    pub lifetime_ns: Option<f64>,
    pub theta_ex_deg: Option<f64>,
    pub phi_ex_deg: Option<f64>,
    pub theta_em_deg: Option<f64>,
    pub phi_em_deg: Option<f64>,
    pub misalignment_deg: Option<f64>,
}

impl DefectReportRow {
    fn csv_values(&self) -> [Option<f64>; 11] {
        [
            Some(self.delta_q),
            Some(self.zpl_ev),
            Some(self.zpl_nm),
            Some(self.hr),
            Some(self.dw),
            self.lifetime_ns,
            self.theta_ex_deg,
            self.phi_ex_deg,
            self.theta_em_deg,
            self.phi_em_deg,
            self.misalignment_deg,
        ]
    }
}

/// Outcome of a batch run.
#[derive(Debug)]
pub struct RunSummary {
    pub rows: Vec<DefectReportRow>,
    /// (label, diagnostic) pairs for defects that failed.
    pub failures: Vec<(String, String)>,
    pub report_path: PathBuf,
}

impl RunSummary {
    pub fn all_succeeded(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A rendered output file, relative to the run's output directory.
pub struct Artifact {
    pub relative_path: PathBuf,
    pub content: String,
}

/// Load a manifest, process every defect and write all artifacts under
/// `out_dir`. Manifest-level problems surface as `Err`; per-defect problems
/// land in [`RunSummary::failures`].
pub fn run_manifest(
    manifest_path: &Path,
    out_dir: &Path,
    overrides: &Overrides,
) -> Result<RunSummary, CoreError> {
    let manifest = load_manifest(manifest_path)?;
    let mut options = manifest.options.clone();
    overrides.apply(&mut options);

    let results: Vec<(String, Result<(DefectReportRow, Vec<Artifact>), String>)> = manifest
        .defects
        .par_iter()
        .map(|(label, job)| {
            let outcome = match job {
                Ok(job) => compute_defect(job, &options).map_err(|e| e.to_string()),
                Err(e) => Err(e.to_string()),
            };
            (label.clone(), outcome)
        })
        .collect();

    let mut rows = Vec::new();
    let mut failures = Vec::new();
    let mut artifacts = Vec::new();
    for (label, outcome) in results {
        match outcome {
            Ok((row, defect_artifacts)) => {
                rows.push(row);
                artifacts.extend(defect_artifacts);
            }
            Err(diagnostic) => {
                log::error!("defect {label}: {diagnostic}");
                failures.push((label, diagnostic));
            }
        }
    }
    rows.sort_by(|a, b| a.label.cmp(&b.label));
    failures.sort_by(|a, b| a.0.cmp(&b.0));
    artifacts.sort_by(|a, b| a.relative_path.cmp(&b.relative_path));

    for artifact in &artifacts {
        let path = out_dir.join(&artifact.relative_path);
        crate::io::write_string(&path, &artifact.content)?;
    }

    let report_rows: Vec<(String, [Option<f64>; 11])> = rows
        .iter()
        .map(|r| (r.label.clone(), r.csv_values()))
        .collect();
    let report = render_report_csv(&report_rows, &provenance(&options));
    let report_path = out_dir.join("report.csv");
    crate::io::write_string(&report_path, &report)?;

    Ok(RunSummary {
        rows,
        failures,
        report_path,
    })
}

fn provenance(options: &RunOptions) -> Vec<(String, String)> {
    vec![
        ("tool".into(), format!("qemitter {}", env!("CARGO_PKG_VERSION"))),
        ("condition".into(), options.condition.to_string()),
        ("grid_step_meV".into(), format!("{}", options.grid_step_mev)),
        ("sigma_meV".into(), format!("{}", options.sigma_mev)),
        ("gamma_meV".into(), format!("{}", options.gamma_mev)),
        ("t_max_fs".into(), format!("{}", options.effective_t_max_fs())),
        ("n_time".into(), format!("{}", options.n_time)),
        ("fermi_points".into(), format!("{}", options.fermi_points)),
    ]
}

/// The single-defect pipeline: displacement → mode projections → spectral
/// function → lineshape, plus dipoles/lifetime when orbitals are present
/// and the stability diagram when energetics are present.
pub fn compute_defect(
    job: &DefectJob,
    options: &RunOptions,
) -> Result<(DefectReportRow, Vec<Artifact>), CoreError> {
    let masses = job.ground.masses();
    let delta_r = displacement(&job.ground, &job.excited)?;
    let delta_q = mass_weighted_delta_q(&delta_r, masses)?;
    let projections = project_modes(&delta_r, masses, &job.phonons)?;
    let summary = hr_summary(projections, delta_q);

    let zpl_ev = match job.zpl_override_ev {
        Some(z) => z,
        None => match &job.orbitals {
            Some(set) => {
                (set.emission_initial.energy_ev() - set.emission_final.energy_ev()).abs()
            }
            None => {
                return Err(CoreError::Pipeline(format!(
                    "defect {:?}: no ZPL source; set zpl_override_ev or provide emission orbitals",
                    job.label
                )))
            }
        },
    };
    if zpl_ev <= 0.0 {
        return Err(CoreError::Pipeline(format!(
            "defect {:?}: nonpositive ZPL {zpl_ev} eV",
            job.label
        )));
    }

    // Spectral grid: from zero to the highest mode plus six smearing widths.
    let max_mode = job
        .phonons
        .frequencies_mev()
        .iter()
        .cloned()
        .fold(0.0_f64, f64::max);
    let grid_hi = (max_mode + 6.0 * options.sigma_mev).max(10.0 * options.sigma_mev);
    let n_grid = (grid_hi / options.grid_step_mev).ceil() as usize + 1;
    let grid = uniform_grid(0.0, options.grid_step_mev, n_grid);
    let density = spectral_function(&summary.projections, &grid, options.sigma_mev)?;
    let lineshape = generating_lineshape(
        &density,
        zpl_ev,
        options.gamma_mev,
        options.effective_t_max_fs(),
        options.n_time,
    )?;
    let e_min = options.e_min_ev.unwrap_or((zpl_ev - 0.5).max(0.01));
    let e_max = options.e_max_ev.unwrap_or(zpl_ev + 0.1);
    let spectrum = lineshape.emission_spectrum(e_min, e_max, options.grid_step_mev)?;

    let mut row = DefectReportRow {
        label: job.label.clone(),
        delta_q,
        zpl_ev,
        zpl_nm: energy_to_wavelength_nm(zpl_ev)?,
        hr: summary.s_total,
        dw: summary.dw,
        lifetime_ns: None,
        theta_ex_deg: None,
        phi_ex_deg: None,
        theta_em_deg: None,
        phi_em_deg: None,
        misalignment_deg: None,
    };

    if let Some(set) = &job.orbitals {
        let excitation = transition_dipole(
            &set.excitation_final,
            &set.excitation_initial,
            DipoleKind::Excitation,
        )?;
        let emission = transition_dipole(
            &set.emission_final,
            &set.emission_initial,
            DipoleKind::Emission,
        )?;
        row.theta_ex_deg = excitation.theta_deg;
        row.phi_ex_deg = excitation.phi_deg;
        row.theta_em_deg = emission.theta_deg;
        row.phi_em_deg = emission.phi_deg;
        row.misalignment_deg = match misalignment(&excitation, &emission) {
            Ok(angle) => Some(angle),
            Err(OpticsError::ZeroDipole) => None,
            Err(other) => return Err(other.into()),
        };
        row.lifetime_ns = match radiative_lifetime(
            zpl_ev,
            emission.r_e_angstrom * emission.r_e_angstrom,
            job.refractive_index,
        ) {
            Ok(result) => Some(result.lifetime_ns),
            Err(OpticsError::ZeroDipole) => {
                log::warn!(
                    "defect {:?}: emission dipole vanishes; lifetime reported as absent",
                    job.label
                );
                None
            }
            Err(other) => return Err(other.into()),
        };
    }

    // Emitted rows must satisfy the report invariants by construction.
    debug_assert!((row.zpl_nm * row.zpl_ev / crate::constants::EV_NM - 1.0).abs() < 1e-9);
    debug_assert!((row.dw - (-row.hr).exp()).abs() <= 1e-9 * row.dw.max(1e-300));

    let slug = sanitize_label(&job.label);
    let prov = {
        let mut p = provenance(options);
        p.insert(1, ("label".into(), job.label.clone()));
        p
    };
    let mut artifacts = vec![
        Artifact {
            relative_path: PathBuf::from(&slug).join("modes.csv"),
            content: render_modes_csv(&summary.projections, &prov),
        },
        Artifact {
            relative_path: PathBuf::from(&slug).join("spectrum.csv"),
            content: render_spectrum_csv(&spectrum, &prov),
        },
        Artifact {
            relative_path: PathBuf::from(&slug).join("spectrum.svg"),
            content: render_spectrum_svg(
                &spectrum,
                &[o_band(), c_band()],
                &format!("{} emission", job.label),
                &prov,
            ),
        },
    ];
    if let Some(energetics) = &job.energetics {
        let diagram = stability_diagram(energetics, options.condition, options.fermi_points)?;
        artifacts.push(Artifact {
            relative_path: PathBuf::from(&slug).join("diagram.csv"),
            content: render_diagram_csv(&diagram, options.fermi_points, &prov),
        });
        artifacts.push(Artifact {
            relative_path: PathBuf::from(&slug).join("diagram.svg"),
            content: render_diagram_svg(
                &diagram,
                &format!("{} formation energies ({})", job.label, options.condition),
                &prov,
            ),
        });
    }
    Ok((row, artifacts))
}
