//! Acceptance suite: one test per criterion, each printing a PASS line
//! with the tolerance it enforced. Expected values come from independent
//! oracles (SI brute force from CODATA constants, analytic Poisson
//! weights, dense-grid envelope scans) — never from the code under test.

use num_complex::Complex64;
use qemitter_core::constants::{
    EV_NM, HBAR_EV_FS, HBAR_MEV_FS, RADIATIVE_RATE_PER_NS, S_K_PER_MEV_AMU_A2,
};
use qemitter_core::energetics::{formation_energy, stability_diagram, Condition};
use qemitter_core::fixtures::{box_structure, orthonormal_modes, write_reference_suite, HOSTS,
    REFERENCE_EMITTERS};
use qemitter_core::lineshape::{
    delta_density, displacement, generating_lineshape, hr_summary, mass_weighted_delta_q,
    project_modes, spectral_function, ModeProjection,
};
use qemitter_core::model::{
    ChargeEntry, ChemPotentialPair, CrystalStructure, DefectEnergetics, DipoleKind,
    PlanewaveOrbital,
};
use qemitter_core::optics::{
    dipole_strength_from_lifetime, mu_debye, radiative_lifetime, transition_dipole,
};
use qemitter_core::units::energy_to_wavelength_nm;
use qemitter_core::util::uniform_grid;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::time::Instant;

fn pass(n: usize, detail: &str, started: Instant) {
    println!(
        "[PASS] criterion {n}: {detail} ({:.2} s)",
        started.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_1_dw_hr_consistency() {
    let started = Instant::now();
    for row in &REFERENCE_EMITTERS {
        // Route through the mode-summary path: two partial factors summing
        // to the row's HR.
        let mk = |s: f64| ModeProjection {
            mode_index: 0,
            hbar_omega_mev: 40.0,
            q_k: 0.0,
            s_k: s,
        };
        let summary = hr_summary(vec![mk(0.4 * row.hr), mk(0.6 * row.hr)], row.delta_q);
        assert!(
            (summary.dw - row.dw).abs() <= 0.005,
            "{}: exp(-{}) = {} vs published {}",
            row.label,
            row.hr,
            summary.dw,
            row.dw
        );
    }
    assert!(started.elapsed().as_secs_f64() < 1.0);
    pass(1, "exp(-HR) matches the DW column within 0.005 on all 16 rows", started);
}

#[test]
fn criterion_2_ev_nm_consistency() {
    let started = Instant::now();
    for row in &REFERENCE_EMITTERS {
        let nm = energy_to_wavelength_nm(row.zpl_ev).unwrap();
        assert!(
            (nm - row.zpl_nm).abs() / row.zpl_nm <= 0.01,
            "{}: {} eV -> {} nm vs published {}",
            row.label,
            row.zpl_ev,
            nm,
            row.zpl_nm
        );
    }
    assert!(started.elapsed().as_secs_f64() < 1.0);
    pass(2, "ZPL wavelengths within 1% of the nm column on all 16 rows", started);
}

/// Solve the small dense system C·w = m by Gaussian elimination with
/// partial pivoting. Test-side helper, independent of the crate.
fn solve_dense(mut c: Vec<Vec<f64>>, mut m: Vec<f64>) -> Vec<f64> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| c[a][col].abs().total_cmp(&c[b][col].abs()))
            .unwrap();
        c.swap(col, pivot);
        m.swap(col, pivot);
        let diag = c[col][col];
        for row in (col + 1)..n {
            let factor = c[row][col] / diag;
            for k in col..n {
                c[row][k] -= factor * c[col][k];
            }
            m[row] -= factor * m[col];
        }
    }
    let mut w = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = m[row];
        for k in (row + 1)..n {
            acc -= c[row][k] * w[k];
        }
        w[row] = acc / c[row][row];
    }
    w
}

#[test]
fn criterion_3_poisson_sideband_oracle() {
    let started = Instant::now();
    let omega = 50.0; // meV
    let gamma = 0.5;
    let window = omega / 2.0;
    // Window capture fraction of a unit Lorentzian a distance d away;
    // the analytic deconvolution kernel of the measurement.
    let capture = |d: f64| {
        (((d + window) / gamma).atan() - ((d - window) / gamma).atan()) / std::f64::consts::PI
    };
    for s in [0.5, 1.0, 3.0] {
        let density = delta_density(omega, s, 0.5, 60.0);
        let lineshape =
            generating_lineshape(&density, 1.5, gamma, 15.0 * HBAR_MEV_FS / gamma, 1 << 16)
                .unwrap();
        let lines = 9;
        let measured: Vec<f64> = (0..lines)
            .map(|n| {
                let center = n as f64 * omega;
                lineshape.window_integral(center - window, center + window)
            })
            .collect();
        let kernel: Vec<Vec<f64>> = (0..lines)
            .map(|n| {
                (0..lines)
                    .map(|m| capture((n as f64 - m as f64) * omega))
                    .collect()
            })
            .collect();
        let weights = solve_dense(kernel, measured);
        let mut factorial = 1.0;
        for (n, weight) in weights.iter().take(5).enumerate() {
            if n > 0 {
                factorial *= n as f64;
            }
            let oracle = (-s).exp() * s.powi(n as i32) / factorial;
            assert!(
                (weight - oracle).abs() <= 1e-3,
                "S={s} sideband {n}: {weight} vs analytic {oracle}"
            );
        }
    }
    assert!(started.elapsed().as_secs_f64() < 10.0);
    pass(3, "sideband weights match e^-S S^n/n! within 1e-3 for S in {0.5, 1, 3}", started);
}

#[test]
fn criterion_4_sum_rule_and_parseval() {
    let started = Instant::now();
    let ground = box_structure(8, "acceptance toy", 40);
    let freqs: Vec<f64> = (0..24).map(|k| 22.0 + 2.5 * k as f64).collect();
    let modes = orthonormal_modes(ground.masses(), freqs, false, 41);
    let delta_r: Vec<[f64; 3]> = (0..8)
        .map(|a| {
            [
                0.04 * ((1 + 7 * a) as f64).sin(),
                0.04 * ((2 + 7 * a) as f64).sin(),
                0.04 * ((3 + 7 * a) as f64).sin(),
            ]
        })
        .collect();
    let projections = project_modes(&delta_r, ground.masses(), &modes).unwrap();
    let delta_q = mass_weighted_delta_q(&delta_r, ground.masses()).unwrap();
    let q_sq: f64 = projections.iter().map(|p| p.q_k * p.q_k).sum();
    assert!(
        (q_sq - delta_q * delta_q).abs() <= 1e-8 * delta_q * delta_q,
        "Parseval: {q_sq} vs {}",
        delta_q * delta_q
    );
    let grid = uniform_grid(0.0, 0.2, 501);
    let density = spectral_function(&projections, &grid, 3.0).unwrap();
    let s_sum: f64 = projections.iter().map(|p| p.s_k).sum();
    assert!(
        (density.integral() - s_sum).abs() <= 1e-4 * s_sum,
        "sum rule: {} vs {s_sum}",
        density.integral()
    );
    assert!(started.elapsed().as_secs_f64() < 5.0);
    pass(4, "sum rule to 1e-4 and Parseval to 1e-8 on a complete mode set", started);
}

#[test]
fn criterion_5_lifetime_round_trip() {
    let started = Instant::now();
    for row in &REFERENCE_EMITTERS {
        let n_d = HOSTS[row.host].refractive_index;
        let mu_sq = dipole_strength_from_lifetime(row.zpl_ev, row.lifetime_ns, n_d).unwrap();
        let back = radiative_lifetime(row.zpl_ev, mu_sq, n_d).unwrap();
        assert!(
            (back.lifetime_ns - row.lifetime_ns).abs() <= 1e-9 * row.lifetime_ns,
            "{}: {} vs {}",
            row.label,
            back.lifetime_ns,
            row.lifetime_ns
        );
        let debye = mu_debye(mu_sq);
        assert!(
            (0.1..=20.0).contains(&debye),
            "{}: recovered dipole {debye} D outside 0.1-20 D",
            row.label
        );
    }
    assert!(started.elapsed().as_secs_f64() < 1.0);
    pass(5, "lifetime inversion round-trips to 1e-9 with dipoles in 0.1-20 D", started);
}

#[test]
fn criterion_6_si_unit_oracle() {
    let started = Instant::now();
    // Brute-force SI evaluation from CODATA constants only.
    let h = 6.626_070_15e-34; // J s
    let e = 1.602_176_634e-19; // C
    let c: f64 = 2.997_924_58e8; // m/s
    let eps0 = 8.854_187_812_8e-12; // F/m
    let amu = 1.660_539_066_60e-27; // kg
    let pi = std::f64::consts::PI;
    let hbar = h / (2.0 * pi);

    // s_k = omega q^2 / 2 hbar with hbar*omega in meV and q^2 in amu Å².
    let s_constant = (e * 1e-3) * (amu * 1e-20) / (2.0 * hbar * hbar);
    assert!(
        (s_constant - S_K_PER_MEV_AMU_A2).abs() <= 1e-9 * s_constant,
        "s_k constant: SI {s_constant} vs ledger {S_K_PER_MEV_AMU_A2}"
    );

    // Γ = n e² E³ μ² / (3π ε0 ħ⁴ c³) with E in eV and μ in e·Å, per ns.
    let rate_constant = e.powi(3) * (e * 1e-10).powi(2) / (3.0 * pi * eps0 * hbar.powi(4) * c.powi(3)) * 1e-9;
    assert!(
        (rate_constant - RADIATIVE_RATE_PER_NS).abs() <= 1e-9 * rate_constant,
        "rate constant: SI {rate_constant} vs ledger {RADIATIVE_RATE_PER_NS}"
    );

    let hbar_ev_fs = hbar / e * 1e15;
    assert!((hbar_ev_fs - HBAR_EV_FS).abs() <= 1e-9 * hbar_ev_fs);
    let ev_nm = h * c / e * 1e9;
    assert!((ev_nm - EV_NM).abs() <= 1e-9 * ev_nm);

    // End-to-end: the diatomic stretch with q = 1 amu^{1/2}Å at 50 meV.
    let s_oracle = (50.0 * e * 1e-3) * (amu * 1e-20) / (2.0 * hbar * hbar);
    let masses = vec![1.0, 1.0];
    let half = std::f64::consts::FRAC_1_SQRT_2;
    let mut vecs: Vec<Vec<[f64; 3]>> = (0..6)
        .map(|k| {
            let mut v = vec![[0.0; 3]; 2];
            v[k / 3][k % 3] = 1.0;
            v
        })
        .collect();
    vecs[0] = vec![[0.0, 0.0, half], [0.0, 0.0, -half]];
    vecs[5] = vec![[0.0, 0.0, half], [0.0, 0.0, half]];
    let modes =
        qemitter_core::PhononModeSet::new(2, vec![50.0; 6], vecs, true).unwrap();
    let delta = vec![[0.0, 0.0, half], [0.0, 0.0, -half]];
    let proj = project_modes(&delta, &masses, &modes).unwrap();
    assert!(
        (proj[0].s_k - s_oracle).abs() <= 1e-9 * s_oracle,
        "toy s_k {} vs SI oracle {s_oracle}",
        proj[0].s_k
    );

    // One-debye emitter at 1 eV in an n = 2 host, evaluated fully in SI.
    let debye_cm = 1e-21 / c; // C m
    let e0_j = e; // 1 eV
    let gamma_si = 2.0 * e0_j.powi(3) * debye_cm.powi(2)
        / (3.0 * pi * eps0 * hbar.powi(4) * c.powi(3));
    let mu_ea = debye_cm / e * 1e10; // e·Å
    let toolkit = radiative_lifetime(1.0, mu_ea * mu_ea, 2.0).unwrap();
    assert!(
        (toolkit.rate_per_ns * 1e9 - gamma_si).abs() <= 1e-9 * gamma_si,
        "1 D rate: toolkit {} vs SI {gamma_si}",
        toolkit.rate_per_ns * 1e9
    );

    assert!(started.elapsed().as_secs_f64() < 1.0);
    pass(6, "s_k and radiative-rate constants match the SI brute force to 1e-9", started);
}

fn random_energetics(rng: &mut ChaCha8Rng) -> DefectEnergetics {
    loop {
        let n_charges = if rng.random::<f64>() < 0.5 { 3 } else { 4 };
        let mut charges: Vec<i32> = vec![-2, -1, 0, 1, 2];
        // Fisher-Yates-ish selection.
        for i in 0..n_charges {
            let j = i + (rng.random::<u32>() as usize) % (charges.len() - i);
            charges.swap(i, j);
        }
        charges.truncate(n_charges);
        let gap = 1.0 + rng.random::<f64>();
        let entries: Vec<ChargeEntry> = charges
            .iter()
            .map(|&q| ChargeEntry {
                charge: q,
                total_energy_ev: -95.0 + 10.0 * rng.random::<f64>() - 0.8 * q as f64,
                correction_ev: if q == 0 {
                    0.0
                } else {
                    0.3 * rng.random::<f64>()
                },
            })
            .collect();
        let defect = DefectEnergetics::new(
            -100.0,
            entries,
            vec![],
            BTreeMap::<String, ChemPotentialPair>::new(),
            rng.random::<f64>() - 0.5,
            gap,
            "random",
        )
        .unwrap();
        // Keep envelope kinks comfortably separated from each other and
        // from the band edges so the grid scan is unambiguous.
        let diagram = stability_diagram(&defect, Condition::Rich, 51).unwrap();
        let mut kinks: Vec<f64> = diagram
            .ctls
            .iter()
            .filter(|c| c.on_envelope && c.within_gap)
            .map(|c| c.fermi_ev)
            .collect();
        kinks.sort_by(f64::total_cmp);
        let well_separated = kinks.windows(2).all(|w| w[1] - w[0] > 5e-3)
            && kinks
                .iter()
                .all(|&k| k > 5e-3 && k < gap - 5e-3);
        if well_separated {
            return defect;
        }
    }
}

#[test]
fn criterion_7_envelope_oracle() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    let step = 1e-3; // 1 meV scan
    for trial in 0..100 {
        let defect = random_energetics(&mut rng);
        let diagram = stability_diagram(&defect, Condition::Rich, 101).unwrap();
        let n = (defect.gap_ev / step).floor() as usize;
        let mut previous: Option<(f64, i32)> = None;
        let mut crossings = Vec::new();
        for i in 0..=n {
            let fermi = (i as f64) * step;
            let brute = defect
                .charges()
                .into_iter()
                .min_by(|&a, &b| {
                    formation_energy(&defect, a, fermi, Condition::Rich)
                        .unwrap()
                        .total_cmp(&formation_energy(&defect, b, fermi, Condition::Rich).unwrap())
                })
                .unwrap();
            let stable = diagram.stable_charge(fermi);
            assert_eq!(
                brute, stable,
                "trial {trial}: argmin {brute} vs envelope {stable} at {fermi}"
            );
            if let Some((prev_fermi, prev_charge)) = previous {
                if prev_charge != brute {
                    crossings.push(((prev_fermi + fermi) / 2.0, prev_charge, brute));
                }
            }
            previous = Some((fermi, brute));
        }
        let envelope_ctls: Vec<_> = diagram
            .ctls
            .iter()
            .filter(|c| c.on_envelope && c.within_gap)
            .collect();
        assert_eq!(
            crossings.len(),
            envelope_ctls.len(),
            "trial {trial}: {} scan crossings vs {} envelope levels",
            crossings.len(),
            envelope_ctls.len()
        );
        for (midpoint, q_a, q_b) in crossings {
            let matched = envelope_ctls.iter().find(|c| {
                c.q_hi == q_a.max(q_b) && c.q_lo == q_a.min(q_b)
            });
            let ctl = matched.unwrap_or_else(|| {
                panic!("trial {trial}: no CTL for crossing {q_a}->{q_b} near {midpoint}")
            });
            assert!(
                (ctl.fermi_ev - midpoint).abs() <= step / 2.0 + 1e-12,
                "trial {trial}: CTL {} vs scan midpoint {midpoint}",
                ctl.fermi_ev
            );
        }
    }
    assert!(started.elapsed().as_secs_f64() < 10.0);
    pass(7, "stable charges and CTLs match the 1 meV dense scan on 100 random systems", started);
}

#[test]
fn criterion_8_invariance_suite() {
    let started = Instant::now();

    // Gauge shift of all total energies leaves CTLs unchanged to 1e-9.
    let mut rng = ChaCha8Rng::seed_from_u64(0xBEEF);
    for _ in 0..20 {
        let defect = random_energetics(&mut rng);
        let charges = defect.charges();
        let base = qemitter_core::energetics::charge_transition_level(
            &defect,
            charges[0],
            charges[1],
            Condition::Rich,
        )
        .unwrap();
        let mut shifted = defect.clone();
        shifted.host_total_energy_ev += 217.125;
        for entry in &mut shifted.charge_entries {
            entry.total_energy_ev += 217.125;
        }
        let after = qemitter_core::energetics::charge_transition_level(
            &shifted,
            charges[0],
            charges[1],
            Condition::Rich,
        )
        .unwrap();
        assert!((base - after).abs() <= 1e-9 * base.abs().max(1.0));
    }

    // Rigid translation: S_total = 0 with translational modes excluded.
    let ground = box_structure(6, "invariance toy", 8);
    let mut freqs = vec![0.0, 0.0, 0.0];
    freqs.extend((3..18).map(|k| 10.0 + 2.0 * k as f64));
    let modes = orthonormal_modes(ground.masses(), freqs, true, 9);
    let positions: Vec<[f64; 3]> = ground
        .positions()
        .iter()
        .map(|p| [p[0] + 0.07, p[1] - 0.11, p[2] + 0.05])
        .collect();
    let shifted = CrystalStructure::new(
        *ground.lattice(),
        ground.species().to_vec(),
        ground.masses().to_vec(),
        positions,
        "shifted",
    )
    .unwrap();
    let delta_r = displacement(&ground, &shifted).unwrap();
    let projections = project_modes(&delta_r, ground.masses(), &modes).unwrap();
    let s_total: f64 = projections.iter().map(|p| p.s_k).sum();
    assert!(s_total.abs() <= 1e-8, "rigid translation S = {s_total}");

    // Global orbital phases leave r, theta, phi and the rate unchanged.
    let g = 0.6;
    let gvectors = vec![
        [0.0, 0.0, 0.0],
        [g, 0.0, 0.0],
        [0.0, g, 0.0],
        [0.0, 0.0, g],
    ];
    let normalize = |raw: Vec<Complex64>| {
        let norm = raw.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        raw.into_iter().map(|c| c / norm).collect::<Vec<_>>()
    };
    let initial = PlanewaveOrbital::new(
        [0.0; 3],
        gvectors.clone(),
        normalize(vec![
            Complex64::new(0.8, 0.1),
            Complex64::new(0.3, -0.2),
            Complex64::new(0.25, 0.15),
            Complex64::new(0.35, 0.0),
        ]),
        1.31,
        13,
        0,
    )
    .unwrap();
    let final_ = PlanewaveOrbital::new(
        [0.0; 3],
        gvectors,
        normalize(vec![
            Complex64::new(-0.7, 0.2),
            Complex64::new(0.4, 0.3),
            Complex64::new(0.2, -0.35),
            Complex64::new(0.15, 0.1),
        ]),
        0.0,
        12,
        0,
    )
    .unwrap();
    let reference = transition_dipole(&final_, &initial, DipoleKind::Emission).unwrap();
    let rotated = transition_dipole(
        &final_.with_global_phase(0.87),
        &initial.with_global_phase(-2.31),
        DipoleKind::Emission,
    )
    .unwrap();
    assert!(
        (reference.r_e_angstrom - rotated.r_e_angstrom).abs()
            <= 1e-12 * reference.r_e_angstrom
    );
    assert!(
        (reference.theta_deg.unwrap() - rotated.theta_deg.unwrap()).abs() <= 1e-12 * 180.0
    );
    assert!((reference.phi_deg.unwrap() - rotated.phi_deg.unwrap()).abs() <= 1e-12 * 180.0);
    let zpl = initial.energy_ev() - final_.energy_ev();
    let rate_a = radiative_lifetime(zpl, reference.r_e_angstrom.powi(2), 4.0).unwrap();
    let rate_b = radiative_lifetime(zpl, rotated.r_e_angstrom.powi(2), 4.0).unwrap();
    assert!((rate_a.rate_per_ns - rate_b.rate_per_ns).abs() <= 1e-12 * rate_a.rate_per_ns);

    // Γ scales exactly as E³: lifetime(2E)/lifetime(E) = 1/8.
    let tau_1 = radiative_lifetime(0.78, 0.4, 4.3751).unwrap().lifetime_ns;
    let tau_2 = radiative_lifetime(1.56, 0.4, 4.3751).unwrap().lifetime_ns;
    assert!((tau_2 / tau_1 - 0.125).abs() <= 1e-12);

    assert!(started.elapsed().as_secs_f64() < 10.0);
    pass(8, "gauge, translation, phase and E^3 invariances hold at stated tolerances", started);
}

fn collect_files(root: &std::path::Path) -> Vec<(String, Vec<u8>)> {
    let mut files = Vec::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in std::fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path.strip_prefix(root).unwrap().to_string_lossy().to_string();
                files.push((rel, std::fs::read(&path).unwrap()));
            }
        }
    }
    files.sort_by(|a, b| a.0.cmp(&b.0));
    files
}

#[test]
fn criterion_9_end_to_end_determinism() {
    let started = Instant::now();
    let base = std::env::temp_dir().join(format!("qemitter-acceptance-{}", std::process::id()));
    std::fs::remove_dir_all(&base).ok();
    let suite = base.join("suite");
    let manifest = write_reference_suite(&suite).unwrap();

    let exe = env!("CARGO_BIN_EXE_qemitter");
    let mut outputs = Vec::new();
    for run in 0..2 {
        let out = base.join(format!("out{run}"));
        let status = std::process::Command::new(exe)
            .arg("report")
            .arg(&manifest)
            .arg("--out")
            .arg(&out)
            .stdout(std::process::Stdio::null())
            .status()
            .expect("binary runs");
        assert!(status.success(), "run {run} exited with {status}");
        outputs.push(collect_files(&out));
    }
    assert_eq!(outputs[0].len(), outputs[1].len());
    assert!(
        outputs[0].iter().any(|(name, _)| name == "report.csv"),
        "report.csv missing"
    );
    for ((name_a, bytes_a), (name_b, bytes_b)) in outputs[0].iter().zip(&outputs[1]) {
        assert_eq!(name_a, name_b);
        assert_eq!(bytes_a, bytes_b, "{name_a} differs between runs");
    }

    // Report rows satisfy the wavelength and Debye-Waller invariants.
    let report = String::from_utf8(
        outputs[0]
            .iter()
            .find(|(name, _)| name == "report.csv")
            .unwrap()
            .1
            .clone(),
    )
    .unwrap();
    let mut rows = 0;
    for line in report.lines().filter(|l| !l.starts_with('#')).skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 12, "row {line}");
        let zpl: f64 = fields[2].parse().unwrap();
        let nm: f64 = fields[3].parse().unwrap();
        let hr: f64 = fields[4].parse().unwrap();
        let dw: f64 = fields[5].parse().unwrap();
        assert!((nm - EV_NM / zpl).abs() <= 1e-9 * nm, "row {line}");
        assert!((dw - (-hr).exp()).abs() <= 1e-9 * dw, "row {line}");
        rows += 1;
    }
    assert_eq!(rows, 16);

    std::fs::remove_dir_all(&base).ok();
    assert!(started.elapsed().as_secs_f64() < 60.0);
    pass(9, "two report runs are byte-identical; all 16 rows hold invariants 1-2", started);
}
