//! `qemitter`: batch post-processing of defect calculations into
//! quantum-emitter photophysics.
//!
//! Exit codes: 0 on success, 1 when a computation fails, 2 for usage
//! errors and unreadable/unparseable inputs.

use clap::{Parser, Subcommand, ValueEnum};
use qemitter_core::energetics::{
    charge_transition_level, formation_energy, stability_diagram, Condition,
};
use qemitter_core::io::csv::{render_diagram_csv, render_modes_csv};
use qemitter_core::io::manifest::{Overrides, RunOptions};
use qemitter_core::io::svg::{c_band, o_band, render_diagram_svg, write_svg_plot};
use qemitter_core::io::{self, native};
use qemitter_core::lineshape::{
    displacement, generating_lineshape, hr_summary, mass_weighted_delta_q, project_modes,
    spectral_function,
};
use qemitter_core::model::DipoleKind;
use qemitter_core::optics::{radiative_lifetime, transition_dipole};
use qemitter_core::report::run_manifest;
use qemitter_core::units::energy_to_wavelength_nm;
use qemitter_core::util::{fmt_sig, sanitize_label, uniform_grid};
use qemitter_core::CoreError;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qemitter",
    version,
    about = "Defect quantum-emitter photophysics: formation energies, PL lineshapes, dipoles and lifetimes"
)]
struct Cli {
    /// Output directory for generated artifacts.
    #[arg(
        long = "out",
        global = true,
        env = "QEMITTER_OUT_DIR",
        default_value = "qemitter-out"
    )]
    out: PathBuf,

    /// Energy grid step for spectra, meV.
    #[arg(long = "grid-step-meV", global = true)]
    grid_step_mev: Option<f64>,

    /// Gaussian smearing of the phonon spectral function, meV.
    #[arg(long = "sigma-meV", global = true)]
    sigma_mev: Option<f64>,

    /// Lorentzian broadening of the lineshape, meV.
    #[arg(long = "gamma-meV", global = true)]
    gamma_mev: Option<f64>,

    /// Half-width of the generating-function time window, fs.
    #[arg(long = "tmax-fs", global = true)]
    tmax_fs: Option<f64>,

    /// Chemical-potential limit for formation energies.
    #[arg(long = "condition", global = true, value_enum)]
    condition: Option<ConditionArg>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConditionArg {
    Rich,
    Poor,
}

impl From<ConditionArg> for Condition {
    fn from(value: ConditionArg) -> Self {
        match value {
            ConditionArg::Rich => Condition::Rich,
            ConditionArg::Poor => Condition::Poor,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Formation energies across the gap: stability diagram CSV + SVG.
    Formation {
        /// Energetics file (native schema).
        energetics: PathBuf,
    },
    /// Charge transition level between two charge states.
    #[command(allow_negative_numbers = true)]
    Ctl {
        /// Energetics file (native schema).
        energetics: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        q1: i32,
        #[arg(long, allow_hyphen_values = true)]
        q2: i32,
    },
    /// Huang-Rhys projections and the full-phonon PL spectrum.
    Lineshape {
        /// Ground-state structure (POSCAR-style or native schema).
        #[arg(long)]
        ground: PathBuf,
        /// Excited-state structure (POSCAR-style or native schema).
        #[arg(long)]
        excited: PathBuf,
        /// Phonon mode set (native schema).
        #[arg(long)]
        phonons: PathBuf,
        /// Zero-phonon line energy, eV.
        #[arg(long)]
        zpl: f64,
    },
    /// Transition dipole between two plane-wave orbitals.
    Dipole {
        /// Initial-state orbital file.
        #[arg(long)]
        initial: PathBuf,
        /// Final-state orbital file.
        #[arg(long)]
        r#final: PathBuf,
        #[arg(long, value_enum, default_value = "emission")]
        kind: KindArg,
    },
    /// Radiative rate and lifetime from ZPL, dipole strength and index.
    Lifetime {
        /// Zero-phonon line energy, eV.
        #[arg(long)]
        zpl: f64,
        /// Squared dipole magnitude, (e*A)^2.
        #[arg(long = "mu-sq")]
        mu_sq: f64,
        /// Host refractive index.
        #[arg(long = "refractive-index")]
        refractive_index: f64,
    },
    /// Run a manifest: per-defect artifacts plus the consolidated report.
    Report { manifest: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Excitation,
    Emission,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_input_error() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn overrides(cli: &Cli) -> Overrides {
    Overrides {
        grid_step_mev: cli.grid_step_mev,
        sigma_mev: cli.sigma_mev,
        gamma_mev: cli.gamma_mev,
        t_max_fs: cli.tmax_fs,
        condition: cli.condition.map(Condition::from),
    }
}

fn options(cli: &Cli) -> RunOptions {
    let mut opts = RunOptions::default();
    overrides(cli).apply(&mut opts);
    opts
}

fn run(cli: &Cli) -> Result<ExitCode, CoreError> {
    match &cli.command {
        Command::Formation { energetics } => {
            let defect = native::load_energetics(energetics)?;
            let opts = options(cli);
            let diagram = stability_diagram(&defect, opts.condition, opts.fermi_points)?;
            println!(
                "{} under {} conditions (gap {} eV)",
                defect.label,
                opts.condition,
                fmt_sig(defect.gap_ev, 6)
            );
            for line in &diagram.lines {
                let at_vbm = formation_energy(&defect, line.charge, 0.0, opts.condition)?;
                println!("  q={:+}: Ef(VBM) = {} eV", line.charge, fmt_sig(at_vbm, 6));
            }
            for ctl in diagram.ctls.iter().filter(|c| c.on_envelope) {
                println!(
                    "  CTL ({:+}|{:+}) = {} eV{}",
                    ctl.q_hi,
                    ctl.q_lo,
                    fmt_sig(ctl.fermi_ev, 6),
                    if ctl.within_gap { "" } else { " (outside gap)" }
                );
            }
            let slug = sanitize_label(&defect.label);
            let prov = vec![("condition".to_string(), opts.condition.to_string())];
            let csv_path = cli.out.join(format!("{slug}_diagram.csv"));
            io::write_string(
                &csv_path,
                &render_diagram_csv(&diagram, opts.fermi_points, &prov),
            )?;
            let svg_path = cli.out.join(format!("{slug}_diagram.svg"));
            io::write_string(&svg_path, &render_diagram_svg(&diagram, &defect.label, &prov))?;
            println!("wrote {} and {}", csv_path.display(), svg_path.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Ctl { energetics, q1, q2 } => {
            let defect = native::load_energetics(energetics)?;
            let opts = options(cli);
            let level = charge_transition_level(&defect, *q1, *q2, opts.condition)?;
            println!("{level:.3} eV");
            Ok(ExitCode::SUCCESS)
        }
        Command::Lineshape {
            ground,
            excited,
            phonons,
            zpl,
        } => {
            let ground = io::parse_structure(ground)?;
            let excited = io::parse_structure(excited)?;
            let modes = native::load_phonons(phonons)?;
            let opts = options(cli);

            let delta_r = displacement(&ground, &excited)?;
            let delta_q = mass_weighted_delta_q(&delta_r, ground.masses())?;
            let projections = project_modes(&delta_r, ground.masses(), &modes)?;
            let summary = hr_summary(projections, delta_q);
            let max_mode = modes
                .frequencies_mev()
                .iter()
                .cloned()
                .fold(0.0_f64, f64::max);
            let hi = (max_mode + 6.0 * opts.sigma_mev).max(10.0 * opts.sigma_mev);
            let n_grid = (hi / opts.grid_step_mev).ceil() as usize + 1;
            let grid = uniform_grid(0.0, opts.grid_step_mev, n_grid);
            let density = spectral_function(&summary.projections, &grid, opts.sigma_mev)?;
            let lineshape = generating_lineshape(
                &density,
                *zpl,
                opts.gamma_mev,
                opts.effective_t_max_fs(),
                opts.n_time,
            )?;
            let spectrum = lineshape.emission_spectrum(
                opts.e_min_ev.unwrap_or((zpl - 0.5).max(0.01)),
                opts.e_max_ev.unwrap_or(zpl + 0.1),
                opts.grid_step_mev,
            )?;

            println!("dQ = {} amu^1/2*A", fmt_sig(summary.delta_q, 6));
            println!("S  = {}", fmt_sig(summary.s_total, 6));
            println!("DW = {}", fmt_sig(summary.dw, 6));
            let prov = vec![
                ("sigma_meV".to_string(), format!("{}", opts.sigma_mev)),
                ("gamma_meV".to_string(), format!("{}", opts.gamma_mev)),
            ];
            let modes_path = cli.out.join("modes.csv");
            io::write_string(&modes_path, &render_modes_csv(&summary.projections, &prov))?;
            let csv_path = cli.out.join("spectrum.csv");
            io::csv::write_spectrum_csv(&spectrum, &csv_path, &prov)?;
            let svg_path = cli.out.join("spectrum.svg");
            write_svg_plot(
                &spectrum,
                &[o_band(), c_band()],
                &svg_path,
                &format!("{} emission", ground.label()),
                &prov,
            )?;
            println!(
                "wrote {}, {} and {}",
                modes_path.display(),
                csv_path.display(),
                svg_path.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Dipole {
            initial,
            r#final,
            kind,
        } => {
            let initial = native::load_orbital(initial)?;
            let final_ = native::load_orbital(r#final)?;
            let kind = match kind {
                KindArg::Excitation => DipoleKind::Excitation,
                KindArg::Emission => DipoleKind::Emission,
            };
            let dipole = transition_dipole(&final_, &initial, kind)?;
            println!("|mu| = {} e*A", fmt_sig(dipole.r_e_angstrom, 6));
            for (axis, c) in ["x", "y", "z"].iter().zip(&dipole.mu) {
                println!("mu_{axis} = {} + {}i", fmt_sig(c.re, 6), fmt_sig(c.im, 6));
            }
            match (dipole.theta_deg, dipole.phi_deg) {
                (Some(theta), Some(phi)) => {
                    println!("theta = {} deg", fmt_sig(theta, 6));
                    println!("phi   = {} deg", fmt_sig(phi, 6));
                }
                _ => println!("orientation undefined (vanishing dipole)"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Lifetime {
            zpl,
            mu_sq,
            refractive_index,
        } => {
            let result = radiative_lifetime(*zpl, *mu_sq, *refractive_index)?;
            println!("rate     = {} 1/ns", fmt_sig(result.rate_per_ns, 6));
            println!("lifetime = {} ns", fmt_sig(result.lifetime_ns, 6));
            println!(
                "zpl      = {} eV ({} nm)",
                fmt_sig(*zpl, 6),
                fmt_sig(energy_to_wavelength_nm(*zpl)?, 6)
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Report { manifest } => {
            let summary = run_manifest(manifest, &cli.out, &overrides(cli))?;
            for row in &summary.rows {
                println!(
                    "{}: Q={} zpl={} eV HR={} DW={}{}",
                    row.label,
                    fmt_sig(row.delta_q, 4),
                    fmt_sig(row.zpl_ev, 4),
                    fmt_sig(row.hr, 4),
                    fmt_sig(row.dw, 3),
                    match row.lifetime_ns {
                        Some(tau) => format!(" lifetime={} ns", fmt_sig(tau, 5)),
                        None => String::new(),
                    }
                );
            }
            for (label, diagnostic) in &summary.failures {
                eprintln!("failed: {label}: {diagnostic}");
            }
            println!(
                "report: {} ({} ok, {} failed)",
                summary.report_path.display(),
                summary.rows.len(),
                summary.failures.len()
            );
            if summary.all_succeeded() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
    }
}
