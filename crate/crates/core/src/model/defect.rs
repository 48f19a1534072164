use super::ModelError;
use std::collections::BTreeMap;

/// One charge state of a defect: total energy and finite-size correction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargeEntry {
    pub charge: i32,
    /// Supercell total energy with the defect in this charge state, eV.
    pub total_energy_ev: f64,
    /// Externally supplied finite-size correction E_corr(q), eV.
    pub correction_ev: f64,
}

/// Chemical potential of a species under the two growth limits, eV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChemPotentialPair {
    pub rich_ev: f64,
    pub poor_ev: f64,
}

/// Everything needed to evaluate formation energies of a single defect
/// system across its charge states.
///
/// `stoichiometry_delta` counts atoms added (+) or removed (−) relative to
/// the pristine host and is shared by all charge states of the defect.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectEnergetics {
    pub host_total_energy_ev: f64,
    pub charge_entries: Vec<ChargeEntry>,
    pub stoichiometry_delta: Vec<(String, i32)>,
    pub chem_potentials: BTreeMap<String, ChemPotentialPair>,
    /// Valence band maximum of the pristine host, eV.
    pub vbm_ev: f64,
    /// Band gap of the pristine host, eV.
    pub gap_ev: f64,
    pub label: String,
}

impl DefectEnergetics {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        host_total_energy_ev: f64,
        charge_entries: Vec<ChargeEntry>,
        stoichiometry_delta: Vec<(String, i32)>,
        chem_potentials: BTreeMap<String, ChemPotentialPair>,
        vbm_ev: f64,
        gap_ev: f64,
        label: impl Into<String>,
    ) -> Result<Self, ModelError> {
        if !(gap_ev > 0.0) {
            return Err(ModelError::BadGap(gap_ev));
        }
        let mut seen = std::collections::BTreeSet::new();
        for entry in &charge_entries {
            if !seen.insert(entry.charge) {
                return Err(ModelError::DuplicateCharge(entry.charge));
            }
            if !entry.correction_ev.is_finite() {
                return Err(ModelError::BadCorrection {
                    charge: entry.charge,
                    value: entry.correction_ev,
                });
            }
            if entry.charge == 0 && entry.correction_ev != 0.0 {
                return Err(ModelError::NeutralCorrection(entry.correction_ev));
            }
        }
        for (species, _) in &stoichiometry_delta {
            if !chem_potentials.contains_key(species) {
                return Err(ModelError::MissingPotential(species.clone()));
            }
        }
        Ok(Self {
            host_total_energy_ev,
            charge_entries,
            stoichiometry_delta,
            chem_potentials,
            vbm_ev,
            gap_ev,
            label: label.into(),
        })
    }

    pub fn entry(&self, charge: i32) -> Option<&ChargeEntry> {
        self.charge_entries.iter().find(|e| e.charge == charge)
    }

    pub fn charges(&self) -> Vec<i32> {
        self.charge_entries.iter().map(|e| e.charge).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn potentials() -> BTreeMap<String, ChemPotentialPair> {
        let mut m = BTreeMap::new();
        m.insert(
            "C".to_string(),
            ChemPotentialPair {
                rich_ev: -9.0,
                poor_ev: -9.0,
            },
        );
        m.insert(
            "S".to_string(),
            ChemPotentialPair {
                rich_ev: -4.0,
                poor_ev: -5.0,
            },
        );
        m
    }

    #[test]
    fn duplicate_charges_rejected() {
        let entries = vec![
            ChargeEntry {
                charge: -1,
                total_energy_ev: -100.0,
                correction_ev: 0.1,
            },
            ChargeEntry {
                charge: -1,
                total_energy_ev: -99.0,
                correction_ev: 0.1,
            },
        ];
        assert!(matches!(
            DefectEnergetics::new(-102.0, entries, vec![], potentials(), 0.0, 1.8, ""),
            Err(ModelError::DuplicateCharge(-1))
        ));
    }

    #[test]
    fn missing_potential_rejected() {
        let entries = vec![ChargeEntry {
            charge: 0,
            total_energy_ev: -100.0,
            correction_ev: 0.0,
        }];
        let stoich = vec![("Se".to_string(), -1)];
        assert!(matches!(
            DefectEnergetics::new(-102.0, entries, stoich, potentials(), 0.0, 1.8, ""),
            Err(ModelError::MissingPotential(_))
        ));
    }

    #[test]
    fn neutral_correction_must_vanish() {
        let entries = vec![ChargeEntry {
            charge: 0,
            total_energy_ev: -100.0,
            correction_ev: 0.2,
        }];
        assert!(matches!(
            DefectEnergetics::new(-102.0, entries, vec![], potentials(), 0.0, 1.8, ""),
            Err(ModelError::NeutralCorrection(_))
        ));
    }
}
