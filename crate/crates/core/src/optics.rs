//! Transition dipoles from plane-wave orbitals, dipole orientations and
//! radiative lifetimes.

use crate::constants::{
    DEBYE_E_A, ELECTRON_MASS_EV_FS2_A2, HBAR_EV_FS, RADIATIVE_RATE_PER_NS,
};
use crate::model::{DipoleKind, PlanewaveOrbital, TransitionDipole};
use crate::util::dot3;
use num_complex::Complex64;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OpticsError {
    #[error("orbitals live at different k-points (|Δk| component > 1e-8)")]
    KpointMismatch,
    #[error("orbital energies are degenerate within the 1 meV guard: |ΔE| = {delta_mev:.4} meV")]
    DegenerateEnergies { delta_mev: f64 },
    #[error("transition dipole vanishes; no radiative rate can be assigned")]
    ZeroDipole,
    #[error("refractive index must exceed 1, got {0}")]
    BadRefractiveIndex(f64),
    #[error("transition energy must be positive, got {0} eV")]
    NonPositiveEnergy(f64),
    #[error("squared dipole magnitude must be nonnegative, got {0}")]
    NegativeMuSq(f64),
    #[error("lifetime must be positive, got {0} ns")]
    NonPositiveLifetime(f64),
}

/// Momentum matrix element ⟨ψ_f|p|ψ_i⟩ = ħ Σ_G c_f*(G) (k+G) c_i(G),
/// componentwise, in eV·fs/Å (ħ × Å⁻¹).
///
/// Both orbitals must share one k-point; their G sets are merged with
/// zero-fill, so vectors appearing in only one expansion contribute nothing.
pub fn momentum_matrix_element(
    fin: &PlanewaveOrbital,
    ini: &PlanewaveOrbital,
) -> Result<[Complex64; 3], OpticsError> {
    let dk = [
        fin.kpoint()[0] - ini.kpoint()[0],
        fin.kpoint()[1] - ini.kpoint()[1],
        fin.kpoint()[2] - ini.kpoint()[2],
    ];
    if dk.iter().any(|d| d.abs() > 1e-8) {
        return Err(OpticsError::KpointMismatch);
    }
    let key = |g: &[f64; 3]| [g[0].to_bits(), g[1].to_bits(), g[2].to_bits()];
    let mut by_g: BTreeMap<[u64; 3], ([f64; 3], Option<Complex64>, Option<Complex64>)> =
        BTreeMap::new();
    for (g, c) in fin.gvectors().iter().zip(fin.coefficients()) {
        by_g.entry(key(g)).or_insert((*g, None, None)).1 = Some(*c);
    }
    for (g, c) in ini.gvectors().iter().zip(ini.coefficients()) {
        by_g.entry(key(g)).or_insert((*g, None, None)).2 = Some(*c);
    }
    let k = ini.kpoint();
    let mut out = [Complex64::new(0.0, 0.0); 3];
    for (g, cf, ci) in by_g.values() {
        let (Some(cf), Some(ci)) = (cf, ci) else {
            continue;
        };
        let weight = cf.conj() * ci;
        for (axis, o) in out.iter_mut().enumerate() {
            *o += weight * (k[axis] + g[axis]);
        }
    }
    for o in &mut out {
        *o *= HBAR_EV_FS;
    }
    Ok(out)
}

/// Transition dipole μ = iħ ⟨ψ_f|p|ψ_i⟩ / ((E_f − E_i) m) in e·Å, with the
/// magnitude and component-modulus orientation filled in.
///
/// Transitions closer than 1 meV are rejected: the prefactor diverges and
/// such a pair is not a radiative two-level system. A vanishing matrix
/// element is not an error; the resulting dipole simply has no orientation.
pub fn transition_dipole(
    fin: &PlanewaveOrbital,
    ini: &PlanewaveOrbital,
    kind: DipoleKind,
) -> Result<TransitionDipole, OpticsError> {
    let delta_e = fin.energy_ev() - ini.energy_ev();
    if delta_e.abs() <= 1e-3 {
        return Err(OpticsError::DegenerateEnergies {
            delta_mev: delta_e.abs() * 1e3,
        });
    }
    let p = momentum_matrix_element(fin, ini)?;
    let prefactor = Complex64::new(0.0, HBAR_EV_FS / (delta_e * ELECTRON_MASS_EV_FS2_A2));
    let mu = [prefactor * p[0], prefactor * p[1], prefactor * p[2]];
    Ok(TransitionDipole::from_mu(mu, kind))
}

/// Angle in degrees between the orientation axes of two dipoles, in
/// [0°, 90°]. Axes are built from component moduli, so the comparison is
/// sign-free by construction.
pub fn misalignment(
    excitation: &TransitionDipole,
    emission: &TransitionDipole,
) -> Result<f64, OpticsError> {
    if excitation.r_e_angstrom <= 0.0 || emission.r_e_angstrom <= 0.0 {
        return Err(OpticsError::ZeroDipole);
    }
    let a = excitation.orientation_axis();
    let b = emission.orientation_axis();
    let cos = dot3(a, b) / (excitation.r_e_angstrom * emission.r_e_angstrom);
    Ok(cos.clamp(-1.0, 1.0).acos().to_degrees())
}

/// Radiative rate and lifetime of a two-level emitter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiativeResult {
    /// Γ_R in 1/ns.
    pub rate_per_ns: f64,
    pub lifetime_ns: f64,
    pub zpl_ev: f64,
    /// Squared dipole magnitude, (e·Å)².
    pub mu_sq: f64,
    pub refractive_index: f64,
}

/// Γ_R = n_D e² E₀³ μ² / (3π ε₀ ħ⁴ c³), evaluated through the SI-pinned
/// ledger constant, returned in 1/ns together with the lifetime 1/Γ_R.
pub fn radiative_lifetime(
    zpl_ev: f64,
    mu_sq: f64,
    refractive_index: f64,
) -> Result<RadiativeResult, OpticsError> {
    if !(zpl_ev > 0.0) {
        return Err(OpticsError::NonPositiveEnergy(zpl_ev));
    }
    if mu_sq < 0.0 || !mu_sq.is_finite() {
        return Err(OpticsError::NegativeMuSq(mu_sq));
    }
    if !(refractive_index > 1.0) {
        return Err(OpticsError::BadRefractiveIndex(refractive_index));
    }
    if mu_sq == 0.0 {
        return Err(OpticsError::ZeroDipole);
    }
    let rate = RADIATIVE_RATE_PER_NS * refractive_index * zpl_ev.powi(3) * mu_sq;
    Ok(RadiativeResult {
        rate_per_ns: rate,
        lifetime_ns: 1.0 / rate,
        zpl_ev,
        mu_sq,
        refractive_index,
    })
}

/// Invert the rate expression: the squared dipole magnitude in (e·Å)² that
/// reproduces a measured lifetime.
pub fn dipole_strength_from_lifetime(
    zpl_ev: f64,
    lifetime_ns: f64,
    refractive_index: f64,
) -> Result<f64, OpticsError> {
    if !(zpl_ev > 0.0) {
        return Err(OpticsError::NonPositiveEnergy(zpl_ev));
    }
    if !(refractive_index > 1.0) {
        return Err(OpticsError::BadRefractiveIndex(refractive_index));
    }
    if !(lifetime_ns > 0.0) {
        return Err(OpticsError::NonPositiveLifetime(lifetime_ns));
    }
    Ok(1.0 / (lifetime_ns * RADIATIVE_RATE_PER_NS * refractive_index * zpl_ev.powi(3)))
}

/// Dipole magnitude in debye from a squared magnitude in (e·Å)².
pub fn mu_debye(mu_sq: f64) -> f64 {
    mu_sq.max(0.0).sqrt() / DEBYE_E_A
}
