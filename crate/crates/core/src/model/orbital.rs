use super::ModelError;
use num_complex::Complex64;

/// A single-band plane-wave orbital: expansion coefficients c(G) on a set
/// of reciprocal-lattice vectors, at one k-point and spin channel.
///
/// Stored normalized: Σ|c(G)|² = 1 within 1e-6. Construction renormalizes
/// inputs whose norm deviates by less than 1e-3 and rejects anything worse.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanewaveOrbital {
    kpoint: [f64; 3],
    gvectors: Vec<[f64; 3]>,
    coefficients: Vec<Complex64>,
    energy_ev: f64,
    band_index: i32,
    spin_channel: i32,
}

impl PlanewaveOrbital {
    /// Largest tolerated deviation of Σ|c|² from one before rejection.
    pub const NORM_WINDOW: f64 = 1e-3;

    pub fn new(
        kpoint: [f64; 3],
        gvectors: Vec<[f64; 3]>,
        coefficients: Vec<Complex64>,
        energy_ev: f64,
        band_index: i32,
        spin_channel: i32,
    ) -> Result<Self, ModelError> {
        if gvectors.len() != coefficients.len() {
            return Err(ModelError::OrbitalShape {
                gvectors: gvectors.len(),
                coefficients: coefficients.len(),
            });
        }
        let mut seen = std::collections::BTreeSet::new();
        for (idx, g) in gvectors.iter().enumerate() {
            let key = [g[0].to_bits(), g[1].to_bits(), g[2].to_bits()];
            if !seen.insert(key) {
                return Err(ModelError::DuplicateGVector(idx));
            }
        }
        let norm_sq: f64 = coefficients.iter().map(|c| c.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() >= Self::NORM_WINDOW {
            return Err(ModelError::OrbitalNorm(norm_sq));
        }
        let scale = 1.0 / norm_sq.sqrt();
        let coefficients = coefficients.into_iter().map(|c| c * scale).collect();
        Ok(Self {
            kpoint,
            gvectors,
            coefficients,
            energy_ev,
            band_index,
            spin_channel,
        })
    }

    pub fn kpoint(&self) -> [f64; 3] {
        self.kpoint
    }

    /// Reciprocal vectors in Å⁻¹, parallel to `coefficients`.
    pub fn gvectors(&self) -> &[[f64; 3]] {
        &self.gvectors
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn energy_ev(&self) -> f64 {
        self.energy_ev
    }

    pub fn band_index(&self) -> i32 {
        self.band_index
    }

    pub fn spin_channel(&self) -> i32 {
        self.spin_channel
    }

    /// Same orbital with every coefficient multiplied by exp(iα).
    pub fn with_global_phase(&self, alpha: f64) -> Self {
        let phase = Complex64::from_polar(1.0, alpha);
        let mut out = self.clone();
        out.coefficients = out.coefficients.iter().map(|c| c * phase).collect();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_coefficient_orbital_is_valid() {
        let orb = PlanewaveOrbital::new(
            [0.0; 3],
            vec![[0.0; 3]],
            vec![Complex64::new(1.0, 0.0)],
            1.0,
            1,
            0,
        )
        .unwrap();
        assert_eq!(orb.coefficients().len(), 1);
    }

    #[test]
    fn two_equal_coefficients_have_unit_norm() {
        let c = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let orb = PlanewaveOrbital::new(
            [0.0; 3],
            vec![[0.0; 3], [1.0, 0.0, 0.0]],
            vec![c, c],
            1.0,
            1,
            0,
        )
        .unwrap();
        let norm: f64 = orb.coefficients().iter().map(|c| c.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn norm_window_rejects_large_deviation() {
        let c = Complex64::new(0.9_f64.sqrt(), 0.0);
        assert!(matches!(
            PlanewaveOrbital::new([0.0; 3], vec![[0.0; 3]], vec![c], 1.0, 1, 0),
            Err(ModelError::OrbitalNorm(_))
        ));
    }

    #[test]
    fn duplicate_g_rows_rejected() {
        let c = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        assert!(matches!(
            PlanewaveOrbital::new(
                [0.0; 3],
                vec![[1.0, 0.0, 0.0], [1.0, 0.0, 0.0]],
                vec![c, c],
                1.0,
                1,
                0
            ),
            Err(ModelError::DuplicateGVector(1))
        ));
    }

    #[test]
    fn slight_denormalization_is_repaired() {
        let c = Complex64::new((1.0 + 5e-4_f64).sqrt(), 0.0);
        let orb =
            PlanewaveOrbital::new([0.0; 3], vec![[0.0; 3]], vec![c], 1.0, 1, 0).unwrap();
        let norm: f64 = orb.coefficients().iter().map(|c| c.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
    }
}
