//! Small synthetic crystals and complete orthonormal phonon bases.

use crate::io::element_mass;
use crate::model::{CrystalStructure, PhononModeSet};
use crate::util::scale3;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SPECIES_CYCLE: [&str; 6] = ["W", "S", "S", "C", "Se", "Mo"];

/// A box-shaped cell with `n_atoms` atoms at reproducible pseudo-random
/// positions, species cycling through common TMD constituents.
pub fn box_structure(n_atoms: usize, label: &str, seed: u64) -> CrystalStructure {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lattice = [[12.0, 0.0, 0.0], [0.0, 12.0, 0.0], [0.0, 0.0, 18.0]];
    let mut species = Vec::with_capacity(n_atoms);
    let mut masses = Vec::with_capacity(n_atoms);
    let mut positions = Vec::with_capacity(n_atoms);
    for i in 0..n_atoms {
        let symbol = SPECIES_CYCLE[i % SPECIES_CYCLE.len()];
        species.push(symbol.to_string());
        masses.push(element_mass(symbol).expect("cycle species are tabulated"));
        positions.push([
            12.0 * rng.random::<f64>(),
            12.0 * rng.random::<f64>(),
            18.0 * rng.random::<f64>(),
        ]);
    }
    CrystalStructure::new(lattice, species, masses, positions, label)
        .expect("toy structure is well formed")
}

/// A structure with explicit species (masses from the element table).
pub fn structure_with_species(
    species: &[&str],
    label: &str,
    seed: u64,
) -> CrystalStructure {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lattice = [[12.0, 0.0, 0.0], [0.0, 12.0, 0.0], [0.0, 0.0, 18.0]];
    let masses: Vec<f64> = species
        .iter()
        .map(|s| element_mass(s).expect("species is tabulated"))
        .collect();
    let positions: Vec<[f64; 3]> = (0..species.len())
        .map(|_| {
            [
                10.0 * rng.random::<f64>() + 1.0,
                10.0 * rng.random::<f64>() + 1.0,
                16.0 * rng.random::<f64>() + 1.0,
            ]
        })
        .collect();
    CrystalStructure::new(
        lattice,
        species.iter().map(|s| s.to_string()).collect(),
        masses,
        positions,
        label,
    )
    .expect("toy structure is well formed")
}

/// A complete orthonormal mass-weighted mode basis for `masses.len()` atoms.
///
/// With `include_translations` the first three modes are the normalized
/// mass-weighted rigid translations (their frequencies should be zero);
/// the rest are Gram-Schmidt-orthonormalized pseudo-random vectors.
pub fn orthonormal_modes(
    masses: &[f64],
    frequencies_mev: Vec<f64>,
    include_translations: bool,
    seed: u64,
) -> PhononModeSet {
    let natoms = masses.len();
    let dim = 3 * natoms;
    assert_eq!(frequencies_mev.len(), dim, "one frequency per mode");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(dim);

    if include_translations {
        let norm = masses.iter().sum::<f64>().sqrt();
        for axis in 0..3 {
            let mut v = vec![0.0; dim];
            for (atom, &m) in masses.iter().enumerate() {
                v[3 * atom + axis] = m.sqrt() / norm;
            }
            basis.push(v);
        }
    }

    while basis.len() < dim {
        let mut v: Vec<f64> = (0..dim).map(|_| rng.random::<f64>() - 0.5).collect();
        // Two Gram-Schmidt passes keep the basis orthogonal to ~1e-15.
        for _ in 0..2 {
            for b in &basis {
                let dot: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= dot * y;
                }
            }
        }
        let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue; // degenerate draw, resample
        }
        for x in &mut v {
            *x /= norm;
        }
        basis.push(v);
    }

    let eigenvectors: Vec<Vec<[f64; 3]>> = basis
        .into_iter()
        .map(|v| v.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect())
        .collect();
    PhononModeSet::new(natoms, frequencies_mev, eigenvectors, true)
        .expect("orthonormal basis is valid")
}

/// Displace a structure along mass-weighted modes by the given
/// configuration-coordinate amplitudes (mode index, q in amu^{1/2}·Å).
pub fn displaced_structure(
    ground: &CrystalStructure,
    modes: &PhononModeSet,
    amplitudes: &[(usize, f64)],
    label: &str,
) -> CrystalStructure {
    assert!(modes.mass_weighted(), "displacement needs mass-weighted modes");
    let natoms = ground.natoms();
    let mut u = vec![[0.0_f64; 3]; natoms];
    for &(mode, q) in amplitudes {
        for (atom, e) in modes.eigenvector(mode).iter().enumerate() {
            for c in 0..3 {
                u[atom][c] += q * e[c];
            }
        }
    }
    let positions: Vec<[f64; 3]> = ground
        .positions()
        .iter()
        .zip(ground.masses())
        .zip(&u)
        .map(|((&p, &m), du)| {
            let dr = scale3(*du, 1.0 / m.sqrt());
            [p[0] + dr[0], p[1] + dr[1], p[2] + dr[2]]
        })
        .collect();
    CrystalStructure::new(
        *ground.lattice(),
        ground.species().to_vec(),
        ground.masses().to_vec(),
        positions,
        label,
    )
    .expect("displaced structure is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lineshape::{displacement, mass_weighted_delta_q, project_modes};

    #[test]
    fn basis_is_orthonormal_and_reproducible() {
        let s = box_structure(5, "toy", 7);
        let freqs = vec![20.0; 15];
        let a = orthonormal_modes(s.masses(), freqs.clone(), true, 42);
        let b = orthonormal_modes(s.masses(), freqs, true, 42);
        assert_eq!(a, b);
        for i in 0..a.nmodes() {
            for j in 0..a.nmodes() {
                let dot: f64 = a
                    .eigenvector(i)
                    .iter()
                    .zip(a.eigenvector(j))
                    .map(|(x, y)| x[0] * y[0] + x[1] * y[1] + x[2] * y[2])
                    .sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((dot - expect).abs() < 1e-12, "modes {i},{j}: {dot}");
            }
        }
    }

    #[test]
    fn displacement_recovers_target_amplitudes() {
        let ground = box_structure(4, "ground", 3);
        let freqs: Vec<f64> = (0..12).map(|k| if k < 3 { 0.0 } else { 15.0 + k as f64 }).collect();
        let modes = orthonormal_modes(ground.masses(), freqs, true, 11);
        let targets = [(4, 0.6), (6, -0.3), (9, 0.45)];
        let excited = displaced_structure(&ground, &modes, &targets, "excited");
        let dr = displacement(&ground, &excited).unwrap();
        let proj = project_modes(&dr, ground.masses(), &modes).unwrap();
        for &(mode, q) in &targets {
            assert!((proj[mode].q_k - q).abs() < 1e-9, "mode {mode}");
        }
        let dq = mass_weighted_delta_q(&dr, ground.masses()).unwrap();
        let expect: f64 = targets.iter().map(|(_, q)| q * q).sum::<f64>().sqrt();
        assert!((dq - expect).abs() < 1e-9);
    }
}
