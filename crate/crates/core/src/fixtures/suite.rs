//! Generator for the 16-emitter reference suite: writes structures, phonon
//! sets, energetics, orbitals and a manifest into a directory, constructed
//! so that the full pipeline reproduces the targets in
//! [`super::reference`].

use super::reference::{EmitterFixture, HostFixture, HOSTS, REFERENCE_EMITTERS};
use super::toy::{displaced_structure, orthonormal_modes, structure_with_species};
use crate::constants::{HBAR_SQ_OVER_ME_EV_A2, S_K_PER_MEV_AMU_A2};
use crate::io::{native, IoError};
use crate::model::{ChargeEntry, ChemPotentialPair, DefectEnergetics, PlanewaveOrbital};
use crate::optics::dipole_strength_from_lifetime;
use crate::util::sanitize_label;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

/// Smallest polar angle used when a row's published angle rounds to 0.00°:
/// keeps the azimuth recoverable while still printing as 0.00.
const MIN_THETA_DEG: f64 = 0.004;

/// Write the complete suite under `dir` and return the manifest path.
pub fn write_reference_suite(dir: &Path) -> Result<PathBuf, IoError> {
    std::fs::create_dir_all(dir).map_err(|source| IoError::Write {
        path: dir.to_path_buf(),
        source,
    })?;

    for (idx, host) in HOSTS.iter().enumerate() {
        let energetics = host_energetics(host, idx);
        native::save_energetics(&dir.join(host_energetics_rel(host)), &energetics)?;
    }

    let mut manifest = String::new();
    manifest.push_str("schema_version = 1\n\n[options]\n");
    manifest.push_str("grid_step_mev = 0.5\n");
    manifest.push_str("sigma_mev = 2.0\n");
    manifest.push_str("gamma_mev = 0.5\n");
    manifest.push_str("n_time = 65536\n");
    manifest.push_str("condition = \"rich\"\n");
    manifest.push_str("fermi_points = 401\n");

    for (idx, row) in REFERENCE_EMITTERS.iter().enumerate() {
        let host = &HOSTS[row.host];
        let slug = sanitize_label(row.label);
        write_emitter_inputs(dir, &slug, row, host, 1000 + idx as u64)?;
        manifest.push_str(&format!(
            "\n[[defects]]\nlabel = \"{}\"\n",
            row.label
        ));
        manifest.push_str(&format!("ground = \"{slug}/ground.toml\"\n"));
        manifest.push_str(&format!("excited = \"{slug}/excited.toml\"\n"));
        manifest.push_str(&format!("phonons = \"{slug}/phonons.toml\"\n"));
        manifest.push_str(&format!(
            "energetics = \"{}\"\n",
            host_energetics_rel(host)
        ));
        manifest.push_str(&format!("refractive_index = {}\n", host.refractive_index));
        manifest.push_str("[defects.orbitals]\n");
        manifest.push_str(&format!(
            "excitation_initial = \"{slug}/excitation_initial.toml\"\n"
        ));
        manifest.push_str(&format!(
            "excitation_final = \"{slug}/excitation_final.toml\"\n"
        ));
        manifest.push_str(&format!(
            "emission_initial = \"{slug}/emission_initial.toml\"\n"
        ));
        manifest.push_str(&format!(
            "emission_final = \"{slug}/emission_final.toml\"\n"
        ));
    }

    let manifest_path = dir.join("manifest.toml");
    crate::io::write_string(&manifest_path, &manifest)?;
    Ok(manifest_path)
}

fn host_energetics_rel(host: &HostFixture) -> String {
    format!("hosts/{}.toml", sanitize_label(host.name))
}

/// Number of modes carrying the lattice relaxation.
const ACTIVE_MODES: usize = 5;

fn write_emitter_inputs(
    dir: &Path,
    slug: &str,
    row: &EmitterFixture,
    host: &HostFixture,
    seed: u64,
) -> Result<(), IoError> {
    let metal = if host.name.starts_with('W') { "W" } else { "Mo" };
    let species = [metal, host.chalcogen, host.chalcogen, "C"];
    let ground = structure_with_species(&species, &format!("{} ground", row.label), seed);

    // Mode energies chosen symmetric about the mean that reproduces the
    // target Huang-Rhys factor at the target configuration coordinate:
    // HR = C_sk * Q^2 * <hbar omega>.
    let mean_mev = row.hr / (S_K_PER_MEV_AMU_A2 * row.delta_q * row.delta_q);
    let mut freqs = vec![0.0, 0.0, 0.0];
    for factor in [0.8, 0.9, 1.0, 1.1, 1.2, 1.3, 1.4, 1.5, 1.6] {
        freqs.push(mean_mev * factor);
    }
    let modes = orthonormal_modes(ground.masses(), freqs, true, seed ^ 0x5eed);

    let q_each = row.delta_q / (ACTIVE_MODES as f64).sqrt();
    let amplitudes: Vec<(usize, f64)> = (3..3 + ACTIVE_MODES).map(|m| (m, q_each)).collect();
    let excited =
        displaced_structure(&ground, &modes, &amplitudes, &format!("{} excited", row.label));

    native::save_structure(&dir.join(slug).join("ground.toml"), &ground)?;
    native::save_structure(&dir.join(slug).join("excited.toml"), &excited)?;
    native::save_phonons(&dir.join(slug).join("phonons.toml"), &modes)?;

    // Emission dipole magnitude fixed by the target lifetime; excitation
    // magnitude only has to be plausible since the report uses its angles.
    let mu_em = dipole_strength_from_lifetime(row.zpl_ev, row.lifetime_ns, host.refractive_index)
        .expect("reference rows are valid")
        .sqrt();
    let mu_ex = 0.8 * mu_em + 0.05;
    let (ex_i, ex_f) = orbital_pair(
        row.theta_ex_deg,
        row.phi_ex_deg,
        mu_ex,
        row.zpl_ev,
        false,
    );
    let (em_i, em_f) = orbital_pair(row.theta_em_deg, row.phi_em_deg, mu_em, row.zpl_ev, true);
    native::save_orbital(&dir.join(slug).join("excitation_initial.toml"), &ex_i)?;
    native::save_orbital(&dir.join(slug).join("excitation_final.toml"), &ex_f)?;
    native::save_orbital(&dir.join(slug).join("emission_initial.toml"), &em_i)?;
    native::save_orbital(&dir.join(slug).join("emission_final.toml"), &em_f)?;
    Ok(())
}

/// Build an (initial, final) orbital pair whose transition dipole has the
/// requested magnitude (e·Å) and component-modulus orientation, separated
/// by `zpl_ev`. Emission pairs descend from the excited state.
fn orbital_pair(
    theta_deg: f64,
    phi_deg: f64,
    mu_e_angstrom: f64,
    zpl_ev: f64,
    emission: bool,
) -> (PlanewaveOrbital, PlanewaveOrbital) {
    let theta = theta_deg.max(MIN_THETA_DEG).to_radians();
    let phi = phi_deg.to_radians();
    let direction = [
        theta.sin() * phi.cos(),
        theta.sin() * phi.sin(),
        theta.cos(),
    ];
    let g = 0.7; // reciprocal-vector length, 1/Å
    // |<p>|/hbar needed for the target dipole magnitude.
    let momentum_sum = mu_e_angstrom * zpl_ev / HBAR_SQ_OVER_ME_EV_A2;
    let amplitudes: Vec<f64> = direction
        .iter()
        .map(|&u| (momentum_sum * u / g).sqrt())
        .collect();
    let rest: f64 = 1.0 - amplitudes.iter().map(|a| a * a).sum::<f64>();
    assert!(rest > 0.0, "dipole fixture amplitudes exceed normalization");
    let c0 = rest.sqrt();

    let gvectors = vec![
        [0.0, 0.0, 0.0],
        [g, 0.0, 0.0],
        [0.0, g, 0.0],
        [0.0, 0.0, g],
    ];
    let coeff = |head: f64, signs: &[f64]| -> Vec<Complex64> {
        std::iter::once(head)
            .chain(signs.iter().copied())
            .map(|x| Complex64::new(x, 0.0))
            .collect()
    };
    let (e_initial, e_final, band_initial, band_final) = if emission {
        (zpl_ev, 0.0, 13, 12)
    } else {
        (0.0, zpl_ev, 12, 13)
    };
    let initial = PlanewaveOrbital::new(
        [0.0; 3],
        gvectors.clone(),
        coeff(c0, &amplitudes),
        e_initial,
        band_initial,
        0,
    )
    .expect("fixture orbital is normalized");
    let final_ = PlanewaveOrbital::new(
        [0.0; 3],
        gvectors,
        coeff(-c0, &amplitudes),
        e_final,
        band_final,
        0,
    )
    .expect("fixture orbital is normalized");
    (initial, final_)
}

fn host_energetics(host: &HostFixture, idx: usize) -> DefectEnergetics {
    let gap = host.gap_ev;
    let ctl = host.ctl_0_m1_ev;
    // Second acceptor level placed between the first and the CBM.
    let ctl2 = (ctl + gap) / 2.0 + 0.08;
    let f0 = 2.0;
    let vbm = 1.2 + 0.05 * idx as f64;
    let host_energy = -800.0 - 15.0 * idx as f64;

    let mu_c = -9.1;
    let (mu_rich, mu_poor) = if host.chalcogen == "S" {
        (-4.0, -5.2)
    } else {
        (-3.4, -4.6)
    };
    let mu_term_rich = mu_c - mu_rich; // +1·μ_C + (−1)·μ_chalc

    // Formation-energy intercepts at εF = 0 (rich conditions): the +1
    // donor line stays off the envelope so the stable set is {0,−1,−2}.
    let targets = [
        (1, f0 + 0.4),
        (0, f0),
        (-1, f0 + ctl),
        (-2, f0 + ctl + ctl2),
    ];
    let entries = targets
        .iter()
        .map(|&(q, ef)| {
            let correction = if q == 0 { 0.0 } else { 0.07 * (q * q) as f64 };
            ChargeEntry {
                charge: q,
                total_energy_ev: ef + host_energy + mu_term_rich
                    - q as f64 * vbm
                    - correction,
                correction_ev: correction,
            }
        })
        .collect();

    let mut potentials = BTreeMap::new();
    potentials.insert(
        "C".to_string(),
        ChemPotentialPair {
            rich_ev: mu_c,
            poor_ev: mu_c,
        },
    );
    potentials.insert(
        host.chalcogen.to_string(),
        ChemPotentialPair {
            rich_ev: mu_rich,
            poor_ev: mu_poor,
        },
    );

    DefectEnergetics::new(
        host_energy,
        entries,
        vec![("C".to_string(), 1), (host.chalcogen.to_string(), -1)],
        potentials,
        vbm,
        gap,
        format!("{} carbon substitution", host.name),
    )
    .expect("host fixture is well formed")
}
