//! CSV emitters. Floats are written with 12 significant digits; provenance
//! (the resolved tunables) rides along as `#`-prefixed comment lines ahead
//! of the fixed column header.

use super::IoError;
use crate::energetics::StabilityDiagram;
use crate::lineshape::ModeProjection;
use crate::model::Spectrum;
use crate::units::energy_to_wavelength_nm;
use crate::util::fmt_g12;
use std::path::Path;

/// The fixed consolidated-report header.
pub const REPORT_HEADER: &str =
    "label,Q,zpl_eV,zpl_nm,HR,DW,lifetime_ns,theta_ex,phi_ex,theta_em,phi_em,misalignment";

fn provenance_block(provenance: &[(String, String)]) -> String {
    let mut out = String::new();
    for (key, value) in provenance {
        out.push_str(&format!("# {key} = {value}\n"));
    }
    out
}

pub fn render_spectrum_csv(spectrum: &Spectrum, provenance: &[(String, String)]) -> String {
    let mut out = provenance_block(provenance);
    out.push_str("energy_eV,wavelength_nm,intensity\n");
    for (&e, &i) in spectrum.energies_ev().iter().zip(spectrum.intensities()) {
        let wavelength = energy_to_wavelength_nm(e)
            .map(fmt_g12)
            .unwrap_or_else(|_| String::new());
        out.push_str(&format!("{},{},{}\n", fmt_g12(e), wavelength, fmt_g12(i)));
    }
    out
}

/// Per-mode projection table: `mode,hbar_omega_meV,q_k,s_k`.
pub fn render_modes_csv(
    projections: &[ModeProjection],
    provenance: &[(String, String)],
) -> String {
    let mut out = provenance_block(provenance);
    out.push_str("mode,hbar_omega_meV,q_k,s_k\n");
    for p in projections {
        out.push_str(&format!(
            "{},{},{},{}\n",
            p.mode_index,
            fmt_g12(p.hbar_omega_mev),
            fmt_g12(p.q_k),
            fmt_g12(p.s_k)
        ));
    }
    out
}

/// Formation-energy lines sampled across the gap: `fermi_eV,Ef_q...`.
pub fn render_diagram_csv(
    diagram: &StabilityDiagram,
    n_points: usize,
    provenance: &[(String, String)],
) -> String {
    let mut out = provenance_block(provenance);
    out.push_str("fermi_eV");
    for line in &diagram.lines {
        out.push_str(&format!(",Ef_q{:+}", line.charge));
    }
    out.push('\n');
    let n = n_points.max(2);
    for i in 0..n {
        let fermi = diagram.gap_ev * i as f64 / (n - 1) as f64;
        out.push_str(&fmt_g12(fermi));
        for line in &diagram.lines {
            out.push(',');
            out.push_str(&fmt_g12(line.value(fermi)));
        }
        out.push('\n');
    }
    out
}

/// One consolidated row per defect; absent optical values stay empty.
pub fn render_report_csv(
    rows: &[(String, [Option<f64>; 11])],
    provenance: &[(String, String)],
) -> String {
    let mut out = provenance_block(provenance);
    out.push_str(REPORT_HEADER);
    out.push('\n');
    for (label, values) in rows {
        out.push_str(label);
        for v in values {
            out.push(',');
            if let Some(v) = v {
                out.push_str(&fmt_g12(*v));
            }
        }
        out.push('\n');
    }
    out
}

pub fn write_spectrum_csv(
    spectrum: &Spectrum,
    path: &Path,
    provenance: &[(String, String)],
) -> Result<(), IoError> {
    super::write_string(path, &render_spectrum_csv(spectrum, provenance))
}

pub fn write_modes_csv(
    projections: &[ModeProjection],
    path: &Path,
    provenance: &[(String, String)],
) -> Result<(), IoError> {
    super::write_string(path, &render_modes_csv(projections, provenance))
}

pub fn write_diagram_csv(
    diagram: &StabilityDiagram,
    n_points: usize,
    path: &Path,
    provenance: &[(String, String)],
) -> Result<(), IoError> {
    super::write_string(path, &render_diagram_csv(diagram, n_points, provenance))
}
