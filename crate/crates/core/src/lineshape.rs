//! Configuration coordinates, Huang–Rhys factors, the phonon spectral
//! function and the full-phonon PL lineshape.
//!
//! The pipeline is the standard T = 0 generating-function approach: project
//! the ground→excited displacement onto each phonon mode (q_k), form the
//! partial Huang–Rhys factors s_k = ω_k q_k²/2ħ, smear them into S(ħω),
//! Fourier transform to S(t), exponentiate into G(t) = exp[S(t) − S(0)] and
//! transform back with a Lorentzian damping γ to obtain the optical spectral
//! function A. The emission spectrum is L ∝ ω³ A, normalized to unit peak.

use crate::constants::{HBAR_MEV_FS, S_K_PER_MEV_AMU_A2};
use crate::model::{check_uniform_grid, CrystalStructure, ModelError, PhononModeSet, Spectrum};
use crate::util::{dot3, lerp_uniform, normal_cdf, scale3, sub3, uniform_grid, vec_mat3};
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LineshapeError {
    #[error("ground/excited structures differ: {0}")]
    StructureMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("smearing width must be positive, got {0} meV")]
    NonPositiveSigma(f64),
    #[error("broadening gamma must be positive, got {0} meV")]
    NonPositiveGamma(f64),
    #[error("energy grid would truncate {missing:.2e} of the spectral weight (limit 1e-3)")]
    GridTooNarrow { missing: f64 },
    #[error(
        "time step {dt_fs:.4} fs cannot resolve modes up to {max_mev:.2} meV (needs <= {required_fs:.4} fs)"
    )]
    NyquistViolation {
        dt_fs: f64,
        max_mev: f64,
        required_fs: f64,
    },
    #[error("time window {t_max_fs:.1} fs is shorter than 10 hbar/gamma = {required_fs:.1} fs")]
    TimeWindowTooShort { t_max_fs: f64, required_fs: f64 },
    #[error("output window [{lo:.4}, {hi:.4}] eV is empty")]
    BadWindow { lo: f64, hi: f64 },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Projection of the lattice relaxation onto one phonon mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeProjection {
    pub mode_index: usize,
    /// Mode energy ħω_k, meV (negative for imaginary modes).
    pub hbar_omega_mev: f64,
    /// Configuration coordinate q_k, amu^{1/2}·Å.
    pub q_k: f64,
    /// Partial Huang–Rhys factor s_k, dimensionless; zero for soft modes.
    pub s_k: f64,
}

/// Totals of the mode decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct HuangRhysSummary {
    pub projections: Vec<ModeProjection>,
    /// Total Huang–Rhys factor S = Σ s_k.
    pub s_total: f64,
    /// Mass-weighted displacement magnitude ΔQ, amu^{1/2}·Å.
    pub delta_q: f64,
    /// Debye–Waller factor e^{−S}.
    pub dw: f64,
}

/// Per-atom displacement R_e − R_g in Cartesian Å, with each component
/// mapped to the nearest periodic image.
///
/// Both snapshots must describe the same system: equal atom counts, equal
/// species order and lattices agreeing to 1e-6 Å.
pub fn displacement(
    ground: &CrystalStructure,
    excited: &CrystalStructure,
) -> Result<Vec<[f64; 3]>, LineshapeError> {
    if ground.natoms() != excited.natoms() {
        return Err(LineshapeError::StructureMismatch(format!(
            "atom counts {} vs {}",
            ground.natoms(),
            excited.natoms()
        )));
    }
    if ground.species() != excited.species() {
        return Err(LineshapeError::StructureMismatch(
            "species orders differ".to_string(),
        ));
    }
    if !ground.same_lattice(excited, 1e-6) {
        return Err(LineshapeError::StructureMismatch(
            "lattices differ by more than 1e-6 A".to_string(),
        ));
    }
    let inv = crate::util::inv3(ground.lattice());
    let delta = ground
        .positions()
        .iter()
        .zip(excited.positions())
        .map(|(&g, &e)| {
            let frac = vec_mat3(sub3(e, g), &inv);
            let wrapped = frac.map(|x| x - x.round());
            vec_mat3(wrapped, ground.lattice())
        })
        .collect();
    Ok(delta)
}

/// Total mass-weighted displacement ΔQ = sqrt(Σ_α m_α |ΔR_α|²).
pub fn mass_weighted_delta_q(
    delta_r: &[[f64; 3]],
    masses: &[f64],
) -> Result<f64, LineshapeError> {
    if delta_r.len() != masses.len() {
        return Err(LineshapeError::DimensionMismatch(format!(
            "{} displacements vs {} masses",
            delta_r.len(),
            masses.len()
        )));
    }
    let sum: f64 = delta_r
        .iter()
        .zip(masses)
        .map(|(d, &m)| m * dot3(*d, *d))
        .sum();
    Ok(sum.sqrt())
}

/// Project the displacement onto every phonon mode:
/// q_k = Σ_{α,i} √m_α (R_e − R_g)_{αi} Δr_{k,αi} and s_k = ω_k q_k²/2ħ.
///
/// Modes stored in a plain Cartesian convention are mass-weighted and
/// renormalized on the fly. Soft modes (ħω ≤ 0) get s_k = 0; imaginary
/// ones additionally log a warning.
pub fn project_modes(
    delta_r: &[[f64; 3]],
    masses: &[f64],
    modes: &PhononModeSet,
) -> Result<Vec<ModeProjection>, LineshapeError> {
    let natoms = masses.len();
    if delta_r.len() != natoms {
        return Err(LineshapeError::DimensionMismatch(format!(
            "{} displacements vs {} masses",
            delta_r.len(),
            natoms
        )));
    }
    if modes.natoms() != natoms {
        return Err(LineshapeError::DimensionMismatch(format!(
            "mode set carries {} atoms, structure has {}",
            modes.natoms(),
            natoms
        )));
    }
    let sqrt_m: Vec<f64> = masses.iter().map(|m| m.sqrt()).collect();
    // Mass-weighted displacement u_{αi} = √m_α ΔR_{αi}.
    let weighted: Vec<[f64; 3]> = delta_r
        .iter()
        .zip(&sqrt_m)
        .map(|(d, &s)| scale3(*d, s))
        .collect();

    let projections: Vec<ModeProjection> = (0..modes.nmodes())
        .into_par_iter()
        .map(|k| {
            let hbar_omega_mev = modes.frequencies_mev()[k];
            let raw = modes.eigenvector(k);
            let q_k = if modes.mass_weighted() {
                weighted.iter().zip(raw).map(|(u, e)| dot3(*u, *e)).sum()
            } else {
                // Convert the stored Cartesian pattern to the mass-weighted
                // eigenvector before projecting.
                let mut converted: Vec<[f64; 3]> = raw
                    .iter()
                    .zip(&sqrt_m)
                    .map(|(v, &s)| scale3(*v, s))
                    .collect();
                let norm = converted
                    .iter()
                    .map(|v| dot3(*v, *v))
                    .sum::<f64>()
                    .sqrt();
                for v in &mut converted {
                    *v = scale3(*v, 1.0 / norm);
                }
                weighted
                    .iter()
                    .zip(&converted)
                    .map(|(u, e)| dot3(*u, *e))
                    .sum()
            };
            let s_k = if hbar_omega_mev > 0.0 {
                S_K_PER_MEV_AMU_A2 * hbar_omega_mev * q_k * q_k
            } else {
                if hbar_omega_mev < 0.0 {
                    log::warn!(
                        "imaginary mode {k} (hbar*omega = {hbar_omega_mev:.3} meV) excluded from lineshape sums"
                    );
                }
                0.0
            };
            ModeProjection {
                mode_index: k,
                hbar_omega_mev,
                q_k,
                s_k,
            }
        })
        .collect();
    Ok(projections)
}

/// Totals over a mode decomposition.
pub fn hr_summary(projections: Vec<ModeProjection>, delta_q: f64) -> HuangRhysSummary {
    let s_total: f64 = projections.iter().map(|p| p.s_k).sum();
    HuangRhysSummary {
        projections,
        s_total,
        delta_q,
        dw: (-s_total).exp(),
    }
}

/// The smeared phonon spectral function S(ħω) on a uniform meV grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDensity {
    energies_mev: Vec<f64>,
    values: Vec<f64>,
    pub sigma_mev: f64,
}

impl SpectralDensity {
    pub fn energies_mev(&self) -> &[f64] {
        &self.energies_mev
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn step_mev(&self) -> f64 {
        self.energies_mev[1] - self.energies_mev[0]
    }

    /// Grid quadrature ∫ S(ħω) d(ħω).
    pub fn integral(&self) -> f64 {
        self.step_mev() * self.values.iter().sum::<f64>()
    }
}

/// Replace every s_k δ(ħω − ħω_k) by a unit-area Gaussian of width σ and
/// sample on the grid. Soft modes are already excluded via s_k = 0.
///
/// Fails when the grid would truncate more than 1e-3 of Σ s_k.
pub fn spectral_function(
    projections: &[ModeProjection],
    energies_mev: &[f64],
    sigma_mev: f64,
) -> Result<SpectralDensity, LineshapeError> {
    if !(sigma_mev > 0.0) {
        return Err(LineshapeError::NonPositiveSigma(sigma_mev));
    }
    if energies_mev.len() < 2 {
        return Err(LineshapeError::Model(ModelError::GridTooShort));
    }
    check_uniform_grid(energies_mev)?;

    let active: Vec<&ModeProjection> = projections.iter().filter(|p| p.s_k > 0.0).collect();
    let s_sum: f64 = active.iter().map(|p| p.s_k).sum();
    if s_sum > 0.0 {
        let lo = energies_mev[0];
        let hi = *energies_mev.last().unwrap();
        let missing: f64 = active
            .iter()
            .map(|p| {
                p.s_k
                    * (normal_cdf((lo - p.hbar_omega_mev) / sigma_mev)
                        + normal_cdf((p.hbar_omega_mev - hi) / sigma_mev))
            })
            .sum();
        if missing / s_sum > 1e-3 {
            return Err(LineshapeError::GridTooNarrow {
                missing: missing / s_sum,
            });
        }
    }

    let prefactor = 1.0 / (sigma_mev * (2.0 * std::f64::consts::PI).sqrt());
    let values = energies_mev
        .iter()
        .map(|&e| {
            active
                .iter()
                .map(|p| {
                    let z = (e - p.hbar_omega_mev) / sigma_mev;
                    p.s_k * prefactor * (-0.5 * z * z).exp()
                })
                .sum()
        })
        .collect();
    Ok(SpectralDensity {
        energies_mev: energies_mev.to_vec(),
        values,
        sigma_mev,
    })
}

/// The optical spectral function A on its natural FFT grid, expressed as a
/// density over the phonon-energy offset x = E_ZPL − E from the zero-phonon
/// line (x > 0 is the red-shifted sideband side).
#[derive(Debug, Clone)]
pub struct Lineshape {
    pub zpl_ev: f64,
    pub gamma_mev: f64,
    pub sigma_mev: f64,
    /// S(0): the total Huang–Rhys factor as integrated from the grid.
    pub hr_total: f64,
    /// Debye–Waller factor e^{−S(0)}.
    pub dw: f64,
    offsets_mev: Vec<f64>,
    density: Vec<f64>,
}

impl Lineshape {
    /// Offsets x = E_ZPL − E in meV, ascending, spanning the FFT window.
    pub fn offsets_mev(&self) -> &[f64] {
        &self.offsets_mev
    }

    /// A(x) ≥ 0 as a density per meV; integrates to ~1.
    pub fn density(&self) -> &[f64] {
        &self.density
    }

    pub fn step_mev(&self) -> f64 {
        self.offsets_mev[1] - self.offsets_mev[0]
    }

    pub fn total_integral(&self) -> f64 {
        self.step_mev() * self.density.iter().sum::<f64>()
    }

    /// Rectangle-rule integral of A over bins whose offset lies in [lo, hi).
    pub fn window_integral(&self, lo_mev: f64, hi_mev: f64) -> f64 {
        let step = self.step_mev();
        self.offsets_mev
            .iter()
            .zip(&self.density)
            .filter(|(x, _)| **x >= lo_mev && **x < hi_mev)
            .map(|(_, a)| a * step)
            .sum()
    }

    /// Emission spectrum L(E) = E³ A(E_ZPL − E), normalized to unit peak,
    /// on a uniform grid from `e_min_ev` to `e_max_ev`.
    pub fn emission_spectrum(
        &self,
        e_min_ev: f64,
        e_max_ev: f64,
        step_mev: f64,
    ) -> Result<Spectrum, LineshapeError> {
        if !(e_max_ev > e_min_ev) || !(step_mev > 0.0) {
            return Err(LineshapeError::BadWindow {
                lo: e_min_ev,
                hi: e_max_ev,
            });
        }
        let step_ev = step_mev * 1e-3;
        let n = ((e_max_ev - e_min_ev) / step_ev).floor() as usize + 1;
        if n < 2 {
            return Err(LineshapeError::BadWindow {
                lo: e_min_ev,
                hi: e_max_ev,
            });
        }
        let energies = uniform_grid(e_min_ev, step_ev, n);
        let mut intensities: Vec<f64> = energies
            .iter()
            .map(|&e| {
                if e <= 0.0 {
                    return 0.0;
                }
                let x = (self.zpl_ev - e) * 1e3;
                let a = lerp_uniform(&self.offsets_mev, &self.density, x);
                e * e * e * a
            })
            .collect();
        let max = intensities.iter().cloned().fold(0.0_f64, f64::max);
        if max > 0.0 {
            for v in &mut intensities {
                *v /= max;
            }
        }
        Ok(Spectrum::new(
            energies,
            intensities,
            self.zpl_ev,
            self.hr_total,
            self.dw,
            self.sigma_mev,
            self.gamma_mev,
        )?)
    }
}

/// Build the optical spectral function from the smeared phonon spectral
/// function via the generating function G(t) = exp[S(t) − S(0)]:
/// S(t) is the Fourier transform of S(ħω), a Lorentzian damping e^{−γ|t|/ħ}
/// broadens every line, and a discrete Fourier transform over the symmetric
/// window t ∈ [−t_max, t_max) yields A. Small negative ripple from the
/// finite window is clipped to zero; ripple beyond 1e-3 of the peak warns.
pub fn generating_lineshape(
    density: &SpectralDensity,
    zpl_ev: f64,
    gamma_mev: f64,
    t_max_fs: f64,
    n_time: usize,
) -> Result<Lineshape, LineshapeError> {
    if !(gamma_mev > 0.0) {
        return Err(LineshapeError::NonPositiveGamma(gamma_mev));
    }
    let required = 10.0 * HBAR_MEV_FS / gamma_mev;
    if t_max_fs < required {
        return Err(LineshapeError::TimeWindowTooShort {
            t_max_fs,
            required_fs: required,
        });
    }
    let n = n_time.max(16);
    let dt = 2.0 * t_max_fs / n as f64;
    let max_mev = density
        .energies_mev()
        .last()
        .copied()
        .unwrap_or(0.0)
        .max(0.0);
    if max_mev > 0.0 {
        let required_fs = std::f64::consts::PI * HBAR_MEV_FS / (4.0 * max_mev);
        if dt > required_fs {
            return Err(LineshapeError::NyquistViolation {
                dt_fs: dt,
                max_mev,
                required_fs,
            });
        }
    }

    let step = density.step_mev();
    // Quadrature weights of the nonzero spectral bins.
    let terms: Vec<(f64, f64)> = density
        .energies_mev()
        .iter()
        .zip(density.values())
        .filter(|(_, v)| **v != 0.0)
        .map(|(&e, &v)| (e / HBAR_MEV_FS, v * step))
        .collect();
    let s0: f64 = terms.iter().map(|(_, w)| w).sum();

    let gamma_rate = gamma_mev / HBAR_MEV_FS; // 1/fs
    let half = (n / 2) as i64;
    let mut buffer: Vec<Complex64> = (0..n as i64)
        .into_par_iter()
        .map(|j| {
            let t = (j - half) as f64 * dt;
            let mut s_t = Complex64::new(0.0, 0.0);
            for &(omega, w) in &terms {
                let (sin, cos) = (omega * t).sin_cos();
                s_t += Complex64::new(w * cos, -w * sin);
            }
            let g = (s_t - s0).exp();
            g * (-gamma_rate * t.abs()).exp()
        })
        .collect();

    FftPlanner::new()
        .plan_fft_inverse(n)
        .process(&mut buffer);

    // The inverse FFT assumes the window starts at t = 0; shift it back to
    // −t_max by the alternating phase, scale to a density per meV, and
    // reorder so offsets ascend.
    let delta_x = 2.0 * std::f64::consts::PI * HBAR_MEV_FS / (n as f64 * dt);
    let scale = dt / (2.0 * std::f64::consts::PI * HBAR_MEV_FS);
    let half = n / 2;
    let mut offsets_mev = Vec::with_capacity(n);
    let mut density_out = Vec::with_capacity(n);
    for i in 0..n {
        let p = (i + half) % n; // start from the most negative frequency
        let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
        offsets_mev.push((i as f64 - half as f64) * delta_x);
        density_out.push(sign * scale * buffer[p].re);
    }

    let max = density_out.iter().cloned().fold(0.0_f64, f64::max);
    let most_negative = density_out.iter().cloned().fold(0.0_f64, f64::min);
    if max > 0.0 && most_negative < -1e-3 * max {
        log::warn!(
            "spectral function ripple reaches {:.2e} of the peak; consider a longer time window",
            -most_negative / max
        );
    }
    for v in &mut density_out {
        if *v < 0.0 {
            *v = 0.0;
        }
    }

    Ok(Lineshape {
        zpl_ev,
        gamma_mev,
        sigma_mev: density.sigma_mev,
        hr_total: s0,
        dw: (-s0).exp(),
        offsets_mev,
        density: density_out,
    })
}

/// Convenience for tests and single-mode studies: a spectral density that
/// is exactly one grid spike of total weight `s` at `energy_mev`, i.e. an
/// unsmeared delta as far as the quadrature is concerned.
pub fn delta_density(energy_mev: f64, s: f64, step_mev: f64, max_mev: f64) -> SpectralDensity {
    let n = (max_mev / step_mev).ceil() as usize + 1;
    let energies = uniform_grid(0.0, step_mev, n);
    let mut values = vec![0.0; n];
    let idx = (energy_mev / step_mev).round() as usize;
    values[idx.min(n - 1)] = s / step_mev;
    SpectralDensity {
        energies_mev: energies,
        values,
        sigma_mev: 0.0,
    }
}
