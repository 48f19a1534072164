use super::ModelError;

/// Γ-point phonon modes of a defect supercell: 3N mode energies plus one
/// eigenvector per mode.
///
/// Mode energies ħω are stored in meV; imaginary (soft) modes are stored as
/// negative values and excluded from lineshape sums downstream. Eigenvectors
/// are dimensionless displacement patterns with unit Euclidean norm over all
/// 3N components; `mass_weighted` records whether that stored pattern is the
/// eigenvector of the mass-weighted dynamical matrix (the usual convention)
/// or a plain Cartesian displacement pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct PhononModeSet {
    natoms: usize,
    frequencies_mev: Vec<f64>,
    eigenvectors: Vec<Vec<[f64; 3]>>,
    mass_weighted: bool,
}

impl PhononModeSet {
    /// Norm tolerance enforced on construction.
    pub const NORM_TOL: f64 = 1e-6;
    /// Pairwise orthogonality threshold; violations warn but do not fail,
    /// since truncated-precision files degrade orthogonality.
    pub const ORTHO_WARN_TOL: f64 = 1e-5;

    pub fn new(
        natoms: usize,
        frequencies_mev: Vec<f64>,
        eigenvectors: Vec<Vec<[f64; 3]>>,
        mass_weighted: bool,
    ) -> Result<Self, ModelError> {
        let expected = 3 * natoms;
        if eigenvectors.len() != expected {
            return Err(ModelError::ModeCount {
                expected,
                found: eigenvectors.len(),
            });
        }
        if frequencies_mev.len() != expected {
            return Err(ModelError::FrequencyCount {
                expected,
                found: frequencies_mev.len(),
            });
        }
        for (mode, vec) in eigenvectors.iter().enumerate() {
            if vec.len() != natoms {
                return Err(ModelError::EigenvectorShape {
                    mode,
                    expected: natoms,
                    found: vec.len(),
                });
            }
            let norm = mode_norm(vec);
            if (norm - 1.0).abs() > Self::NORM_TOL {
                return Err(ModelError::EigenvectorNorm { mode, norm });
            }
        }
        let set = Self {
            natoms,
            frequencies_mev,
            eigenvectors,
            mass_weighted,
        };
        set.warn_on_nonorthogonality();
        Ok(set)
    }

    fn warn_on_nonorthogonality(&self) {
        let mut worst = 0.0_f64;
        let mut worst_pair = (0, 0);
        let n = self.eigenvectors.len();
        for a in 0..n {
            for b in (a + 1)..n {
                let dot = mode_dot(&self.eigenvectors[a], &self.eigenvectors[b]).abs();
                if dot > worst {
                    worst = dot;
                    worst_pair = (a, b);
                }
            }
        }
        if worst > Self::ORTHO_WARN_TOL {
            log::warn!(
                "phonon modes {} and {} overlap by {worst:.2e} (threshold {:.0e})",
                worst_pair.0,
                worst_pair.1,
                Self::ORTHO_WARN_TOL
            );
        }
    }

    pub fn natoms(&self) -> usize {
        self.natoms
    }

    pub fn nmodes(&self) -> usize {
        self.eigenvectors.len()
    }

    /// Mode energies ħω in meV, negative for imaginary modes.
    pub fn frequencies_mev(&self) -> &[f64] {
        &self.frequencies_mev
    }

    pub fn eigenvector(&self, mode: usize) -> &[[f64; 3]] {
        &self.eigenvectors[mode]
    }

    pub fn mass_weighted(&self) -> bool {
        self.mass_weighted
    }
}

pub(crate) fn mode_norm(v: &[[f64; 3]]) -> f64 {
    mode_dot(v, v).sqrt()
}

pub(crate) fn mode_dot(a: &[[f64; 3]], b: &[[f64; 3]]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x[0] * y[0] + x[1] * y[1] + x[2] * y[2])
        .sum()
}
