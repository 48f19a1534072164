use num_complex::Complex64;

/// Which optical process the dipole belongs to. Excitation dipoles are
/// evaluated with ground-state equilibrium orbitals, emission dipoles with
/// excited-state equilibrium orbitals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DipoleKind {
    Excitation,
    Emission,
}

impl std::fmt::Display for DipoleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DipoleKind::Excitation => write!(f, "excitation"),
            DipoleKind::Emission => write!(f, "emission"),
        }
    }
}

/// A complex transition dipole vector in e·Å with its derived magnitude and
/// orientation.
///
/// Orientation follows the component-modulus convention: the polar angle θ
/// is measured from the z-axis via arccos(|μ_z|/r) and the azimuth φ from
/// the x-axis via atan2(|μ_y|, |μ_x|), so both angles land in [0°, 90°].
/// A vanishing dipole has no defined orientation; the angles are then
/// absent rather than fabricated.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionDipole {
    pub mu: [Complex64; 3],
    /// Magnitude sqrt(|μ_x|² + |μ_y|² + |μ_z|²), e·Å.
    pub r_e_angstrom: f64,
    pub theta_deg: Option<f64>,
    pub phi_deg: Option<f64>,
    pub kind: DipoleKind,
}

impl TransitionDipole {
    pub fn from_mu(mu: [Complex64; 3], kind: DipoleKind) -> Self {
        let moduli = [mu[0].norm(), mu[1].norm(), mu[2].norm()];
        let r = (moduli[0] * moduli[0] + moduli[1] * moduli[1] + moduli[2] * moduli[2]).sqrt();
        let (theta_deg, phi_deg) = if r > 0.0 {
            let theta = (moduli[2] / r).clamp(-1.0, 1.0).acos().to_degrees();
            let phi = moduli[1].atan2(moduli[0]).to_degrees();
            (Some(theta), Some(phi))
        } else {
            (None, None)
        };
        Self {
            mu,
            r_e_angstrom: r,
            theta_deg,
            phi_deg,
            kind,
        }
    }

    /// Real orientation axis built from the component moduli; zero vector
    /// for a vanishing dipole.
    pub fn orientation_axis(&self) -> [f64; 3] {
        [self.mu[0].norm(), self.mu[1].norm(), self.mu[2].norm()]
    }
}
