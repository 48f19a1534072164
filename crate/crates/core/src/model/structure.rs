use super::ModelError;
use crate::util::{det3, inv3, vec_mat3};

/// A supercell snapshot: lattice, species, masses and Cartesian positions.
///
/// Lattice rows are the lattice vectors in Å; positions are Cartesian Å.
/// Fractional coordinates are derived on demand and wrapping into [0, 1)
/// is always an explicit call, never performed silently.
#[derive(Debug, Clone, PartialEq)]
pub struct CrystalStructure {
    lattice: [[f64; 3]; 3],
    species: Vec<String>,
    masses: Vec<f64>,
    positions: Vec<[f64; 3]>,
    label: String,
}

impl CrystalStructure {
    pub fn new(
        lattice: [[f64; 3]; 3],
        species: Vec<String>,
        masses: Vec<f64>,
        positions: Vec<[f64; 3]>,
        label: impl Into<String>,
    ) -> Result<Self, ModelError> {
        if species.is_empty() {
            return Err(ModelError::EmptyStructure);
        }
        if species.len() != masses.len() || species.len() != positions.len() {
            return Err(ModelError::LengthMismatch {
                species: species.len(),
                masses: masses.len(),
                positions: positions.len(),
            });
        }
        for (index, &mass) in masses.iter().enumerate() {
            if !(mass > 0.0) || !mass.is_finite() {
                return Err(ModelError::BadMass { index, mass });
            }
        }
        let det = det3(&lattice);
        if det.abs() < 1e-10 {
            return Err(ModelError::SingularLattice(det));
        }
        Ok(Self {
            lattice,
            species,
            masses,
            positions,
            label: label.into(),
        })
    }

    pub fn natoms(&self) -> usize {
        self.species.len()
    }

    pub fn lattice(&self) -> &[[f64; 3]; 3] {
        &self.lattice
    }

    pub fn species(&self) -> &[String] {
        &self.species
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn positions(&self) -> &[[f64; 3]] {
        &self.positions
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Signed cell volume in Å³.
    pub fn volume(&self) -> f64 {
        det3(&self.lattice)
    }

    /// Fractional coordinates of all atoms, unwrapped.
    pub fn fractional(&self) -> Vec<[f64; 3]> {
        let inv = inv3(&self.lattice);
        self.positions.iter().map(|&p| vec_mat3(p, &inv)).collect()
    }

    /// Fractional coordinates wrapped into [0, 1).
    pub fn wrapped_fractional(&self) -> Vec<[f64; 3]> {
        self.fractional()
            .into_iter()
            .map(|f| f.map(|x| x.rem_euclid(1.0)))
            .collect()
    }

    /// Cartesian position of a fractional coordinate in this lattice.
    pub fn cart_from_frac(&self, frac: [f64; 3]) -> [f64; 3] {
        vec_mat3(frac, &self.lattice)
    }

    /// True when both lattices agree componentwise within `tol` Å.
    pub fn same_lattice(&self, other: &Self, tol: f64) -> bool {
        for i in 0..3 {
            for j in 0..3 {
                if (self.lattice[i][j] - other.lattice[i][j]).abs() > tol {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubic(a: f64) -> [[f64; 3]; 3] {
        [[a, 0.0, 0.0], [0.0, a, 0.0], [0.0, 0.0, a]]
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(
            CrystalStructure::new(cubic(3.0), vec![], vec![], vec![], ""),
            Err(ModelError::EmptyStructure)
        ));
        assert!(matches!(
            CrystalStructure::new(
                cubic(3.0),
                vec!["C".into()],
                vec![12.011, 1.0],
                vec![[0.0; 3]],
                ""
            ),
            Err(ModelError::LengthMismatch { .. })
        ));
        assert!(matches!(
            CrystalStructure::new(cubic(3.0), vec!["C".into()], vec![-1.0], vec![[0.0; 3]], ""),
            Err(ModelError::BadMass { .. })
        ));
        let singular = [[1.0, 0.0, 0.0], [2.0, 0.0, 0.0], [0.0, 0.0, 1.0]];
        assert!(matches!(
            CrystalStructure::new(singular, vec!["C".into()], vec![12.0], vec![[0.0; 3]], ""),
            Err(ModelError::SingularLattice(_))
        ));
    }

    #[test]
    fn fractional_wrapping_is_explicit() {
        let s = CrystalStructure::new(
            cubic(2.0),
            vec!["C".into()],
            vec![12.011],
            vec![[-0.5, 4.5, 1.0]],
            "wrap",
        )
        .unwrap();
        let unwrapped = s.fractional()[0];
        assert!((unwrapped[0] + 0.25).abs() < 1e-12);
        assert!((unwrapped[1] - 2.25).abs() < 1e-12);
        let wrapped = s.wrapped_fractional()[0];
        assert!((wrapped[0] - 0.75).abs() < 1e-12);
        assert!((wrapped[1] - 0.25).abs() < 1e-12);
        assert!((wrapped[2] - 0.5).abs() < 1e-12);
        for w in s.wrapped_fractional().iter().flat_map(|f| f.iter()) {
            assert!((0.0..1.0).contains(w));
        }
    }

    #[test]
    fn volume_of_cubic_cell() {
        let s = CrystalStructure::new(
            cubic(3.0),
            vec!["C".into()],
            vec![12.011],
            vec![[0.0; 3]],
            "",
        )
        .unwrap();
        assert!((s.volume() - 27.0).abs() < 1e-12);
    }
}
