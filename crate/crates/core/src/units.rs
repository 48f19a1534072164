//! Scalar unit conversions built on the constants ledger.

use crate::constants::{EV_NM, HBAR_MEV_FS, MEV_PER_THZ};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum UnitsError {
    #[error("photon energy must be positive, got {0} eV")]
    NonPositiveEnergy(f64),
    #[error("wavelength must be positive, got {0} nm")]
    NonPositiveWavelength(f64),
}

/// Photon energy in eV to vacuum wavelength in nm.
pub fn energy_to_wavelength_nm(energy_ev: f64) -> Result<f64, UnitsError> {
    if !(energy_ev > 0.0) {
        return Err(UnitsError::NonPositiveEnergy(energy_ev));
    }
    Ok(EV_NM / energy_ev)
}

/// Vacuum wavelength in nm to photon energy in eV.
pub fn wavelength_to_energy_ev(wavelength_nm: f64) -> Result<f64, UnitsError> {
    if !(wavelength_nm > 0.0) {
        return Err(UnitsError::NonPositiveWavelength(wavelength_nm));
    }
    Ok(EV_NM / wavelength_nm)
}

/// Mode energy ħω in meV to angular frequency in rad/fs.
pub fn mev_to_rad_per_fs(energy_mev: f64) -> f64 {
    energy_mev / HBAR_MEV_FS
}

/// Angular frequency in rad/fs to mode energy ħω in meV.
pub fn rad_per_fs_to_mev(omega: f64) -> f64 {
    omega * HBAR_MEV_FS
}

/// Linear frequency in THz to mode energy in meV (E = h·f).
pub fn thz_to_mev(freq_thz: f64) -> f64 {
    freq_thz * MEV_PER_THZ
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_ev_is_the_ledger_constant() {
        assert_eq!(energy_to_wavelength_nm(1.0).unwrap(), EV_NM);
    }

    #[test]
    fn telecom_zpl_wavelengths_within_one_percent() {
        // Rounded reference pairs are only consistent at the ~0.5% level.
        let nm = energy_to_wavelength_nm(0.78).unwrap();
        assert!((nm - 1589.5).abs() < 0.1);
        assert!((nm - 1581.0).abs() / 1581.0 < 0.01);
        let nm = energy_to_wavelength_nm(1.55).unwrap();
        assert!((nm - 799.9).abs() < 0.1);
        assert!((nm - 798.0).abs() / 798.0 < 0.01);
    }

    #[test]
    fn nonpositive_energy_is_a_domain_error() {
        assert!(energy_to_wavelength_nm(0.0).is_err());
        assert!(energy_to_wavelength_nm(-1.0).is_err());
        assert!(wavelength_to_energy_ev(0.0).is_err());
    }

    #[test]
    fn round_trips_are_exact() {
        for &e in &[0.05, 0.78, 1.0, 1.55, 3.2, 12.0] {
            let back = wavelength_to_energy_ev(energy_to_wavelength_nm(e).unwrap()).unwrap();
            assert!((back - e).abs() <= 1e-12 * e);
            let w = rad_per_fs_to_mev(mev_to_rad_per_fs(e * 1e3));
            assert!((w - e * 1e3).abs() <= 1e-12 * e * 1e3);
        }
    }

    #[test]
    fn thz_conversion_matches_codata() {
        assert!((thz_to_mev(10.0) - 41.356_676_969_238_59).abs() < 1e-9);
    }
}
