//! Cross-module integration: the reference fixture chain from structures
//! and phonons through to the optical spectral function.

use qemitter_core::constants::HBAR_MEV_FS;
use qemitter_core::fixtures::{orthonormal_modes, write_reference_suite, REFERENCE_EMITTERS};
use qemitter_core::io::manifest::load_manifest;
use qemitter_core::lineshape::{
    displacement, generating_lineshape, hr_summary, mass_weighted_delta_q, project_modes,
    spectral_function,
};
use qemitter_core::util::uniform_grid;

fn suite_dir(tag: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("qemitter-pipeline-{tag}-{}", std::process::id()));
    std::fs::remove_dir_all(&dir).ok();
    dir
}

#[test]
fn reference_emitter_zpl_window_reproduces_debye_waller() {
    // The flagship fixture: S such that e^{-S} sits between the published
    // 0.04 and the next rounding step. The ZPL share of the total optical
    // spectral function must reproduce it.
    let dir = suite_dir("dw");
    let manifest_path = write_reference_suite(&dir).unwrap();
    let manifest = load_manifest(&manifest_path).unwrap();
    let row = &REFERENCE_EMITTERS[0];
    let (_, job) = manifest
        .defects
        .iter()
        .find(|(label, _)| label == row.label)
        .expect("flagship row present");
    let job = job.as_ref().expect("fixture loads");

    let delta_r = displacement(&job.ground, &job.excited).unwrap();
    let delta_q = mass_weighted_delta_q(&delta_r, job.ground.masses()).unwrap();
    let projections = project_modes(&delta_r, job.ground.masses(), &job.phonons).unwrap();
    let summary = hr_summary(projections, delta_q);
    assert!((summary.delta_q - row.delta_q).abs() < 1e-9);
    assert!((summary.s_total - row.hr).abs() < 1e-9);

    let sigma = 2.0;
    let gamma = 0.5;
    let max_mode = job
        .phonons
        .frequencies_mev()
        .iter()
        .cloned()
        .fold(0.0_f64, f64::max);
    let grid = uniform_grid(0.0, 0.25, ((max_mode + 6.0 * sigma) / 0.25) as usize + 1);
    let density = spectral_function(&summary.projections, &grid, sigma).unwrap();
    let zpl = job.orbitals.as_ref().unwrap().emission_initial.energy_ev();
    let lineshape =
        generating_lineshape(&density, zpl, gamma, 15.0 * HBAR_MEV_FS / gamma, 1 << 16).unwrap();

    // ZPL window: half the lowest phonon energy, leakage-corrected for the
    // known Lorentzian capture fraction of the window.
    let omega_min = job
        .phonons
        .frequencies_mev()
        .iter()
        .cloned()
        .filter(|&w| w > 0.0)
        .fold(f64::INFINITY, f64::min);
    let half_window = omega_min / 2.0;
    let zpl_fraction = |ls: &qemitter_core::lineshape::Lineshape, gamma: f64| {
        let capture = 2.0 / std::f64::consts::PI * (half_window / gamma).atan();
        ls.window_integral(-half_window, half_window) / capture / ls.total_integral()
    };

    // e^{-3.34} = 0.0354; published rounding is 0.04.
    let fraction = zpl_fraction(&lineshape, gamma);
    assert!(
        (fraction - 0.0354).abs() <= 0.005,
        "ZPL fraction {fraction}"
    );

    // Tighter DW consistency deep inside the narrow-line regime, where the
    // sideband manifold's Lorentzian tails under the ZPL window are small.
    let narrow_gamma = 0.12;
    let narrow = generating_lineshape(
        &density,
        zpl,
        narrow_gamma,
        15.0 * HBAR_MEV_FS / narrow_gamma,
        1 << 16,
    )
    .unwrap();
    let fraction = zpl_fraction(&narrow, narrow_gamma);
    assert!(
        (fraction - summary.dw).abs() <= 0.02 * summary.dw,
        "ZPL fraction {fraction} vs DW {}",
        summary.dw
    );
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn rigid_translation_has_no_phonon_weight() {
    // Shift every atom of a random toy system by the same vector: all the
    // displacement lands on the three zero-frequency translational modes.
    let ground = qemitter_core::fixtures::box_structure(6, "translation toy", 21);
    let mut freqs = vec![0.0, 0.0, 0.0];
    freqs.extend((3..18).map(|k| 12.0 + k as f64));
    let modes = orthonormal_modes(ground.masses(), freqs, true, 22);
    let shift = [0.031, -0.054, 0.02];
    let positions: Vec<[f64; 3]> = ground
        .positions()
        .iter()
        .map(|p| [p[0] + shift[0], p[1] + shift[1], p[2] + shift[2]])
        .collect();
    let excited = qemitter_core::CrystalStructure::new(
        *ground.lattice(),
        ground.species().to_vec(),
        ground.masses().to_vec(),
        positions,
        "shifted",
    )
    .unwrap();

    let delta_r = displacement(&ground, &excited).unwrap();
    let projections = project_modes(&delta_r, ground.masses(), &modes).unwrap();
    let s_total: f64 = projections.iter().map(|p| p.s_k).sum();
    assert!(s_total.abs() <= 1e-8, "S_total {s_total}");
    for p in projections.iter().skip(3) {
        assert!(p.q_k.abs() <= 1e-9, "mode {} q = {}", p.mode_index, p.q_k);
    }
}

#[test]
fn complete_basis_satisfies_parseval_and_sum_rule() {
    let ground = qemitter_core::fixtures::box_structure(8, "parseval toy", 5);
    let freqs: Vec<f64> = (0..24).map(|k| 25.0 + 2.0 * k as f64).collect();
    let modes = orthonormal_modes(ground.masses(), freqs, false, 6);
    // A deterministic, mode-agnostic displacement field.
    let delta_r: Vec<[f64; 3]> = (0..8)
        .map(|a| {
            [
                0.05 * ((1 + 3 * a) as f64).sin(),
                0.05 * ((2 + 3 * a) as f64).sin(),
                0.05 * ((3 + 3 * a) as f64).sin(),
            ]
        })
        .collect();
    let projections = project_modes(&delta_r, ground.masses(), &modes).unwrap();
    let delta_q = mass_weighted_delta_q(&delta_r, ground.masses()).unwrap();
    let q_sq: f64 = projections.iter().map(|p| p.q_k * p.q_k).sum();
    assert!((q_sq - delta_q * delta_q).abs() <= 1e-8 * delta_q * delta_q);

    let grid = uniform_grid(0.0, 0.2, 501); // 0..100 meV
    let density = spectral_function(&projections, &grid, 3.0).unwrap();
    let s_sum: f64 = projections.iter().map(|p| p.s_k).sum();
    assert!((density.integral() - s_sum).abs() <= 1e-4 * s_sum);
}
