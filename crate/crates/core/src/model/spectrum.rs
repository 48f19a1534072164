use super::ModelError;

/// An emission (or spectral-density) curve on a uniform energy grid, plus
/// the provenance scalars every plot and report needs.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    energies_ev: Vec<f64>,
    intensities: Vec<f64>,
    pub zpl_ev: f64,
    pub hr_total: f64,
    pub dw: f64,
    pub smearing_mev: f64,
    pub gamma_mev: f64,
}

impl Spectrum {
    pub fn new(
        energies_ev: Vec<f64>,
        intensities: Vec<f64>,
        zpl_ev: f64,
        hr_total: f64,
        dw: f64,
        smearing_mev: f64,
        gamma_mev: f64,
    ) -> Result<Self, ModelError> {
        if energies_ev.len() < 2 || energies_ev.len() != intensities.len() {
            return Err(ModelError::GridTooShort);
        }
        check_uniform_grid(&energies_ev)?;
        for (index, &value) in intensities.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(ModelError::BadIntensity { index, value });
            }
        }
        Ok(Self {
            energies_ev,
            intensities,
            zpl_ev,
            hr_total,
            dw,
            smearing_mev,
            gamma_mev,
        })
    }

    pub fn energies_ev(&self) -> &[f64] {
        &self.energies_ev
    }

    pub fn intensities(&self) -> &[f64] {
        &self.intensities
    }

    pub fn len(&self) -> usize {
        self.energies_ev.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies_ev.is_empty()
    }

    /// Grid step in eV.
    pub fn step_ev(&self) -> f64 {
        self.energies_ev[1] - self.energies_ev[0]
    }

    /// Index of the maximum intensity.
    pub fn argmax(&self) -> usize {
        self.intensities
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .unwrap_or(0)
    }
}

/// Strictly increasing with constant step to 1e-12 relative.
pub(crate) fn check_uniform_grid(grid: &[f64]) -> Result<(), ModelError> {
    let step = grid[1] - grid[0];
    if !(step > 0.0) {
        return Err(ModelError::NonUniformGrid(1));
    }
    for i in 1..grid.len() {
        let d = grid[i] - grid[i - 1];
        if (d - step).abs() > 1e-12 * step.abs().max(grid[i].abs()) {
            return Err(ModelError::NonUniformGrid(i));
        }
    }
    Ok(())
}
