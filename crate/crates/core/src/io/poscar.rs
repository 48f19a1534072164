//! POSCAR-style structure files: comment line, scale factor, three lattice
//! rows, species line, counts line, an optional selective-dynamics line,
//! `Direct`/`Cartesian`, then one coordinate row per atom. Masses come from
//! the built-in element table.

use super::{element_mass, IoError};
use crate::model::CrystalStructure;
use crate::util::vec_mat3;
use std::path::Path;

pub fn parse_structure_poscar(path: &Path) -> Result<CrystalStructure, IoError> {
    let content = super::read_to_string(path)?;
    structure_from_str(path, &content)
}

pub fn structure_from_str(path: &Path, text: &str) -> Result<CrystalStructure, IoError> {
    let syntax = |line: usize, message: String| IoError::Syntax {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut lines = text.lines().enumerate();
    let mut next = |what: &str| -> Result<(usize, &str), IoError> {
        lines
            .next()
            .map(|(i, l)| (i + 1, l))
            .ok_or_else(|| IoError::Syntax {
                path: path.to_path_buf(),
                line: text.lines().count() + 1,
                message: format!("unexpected end of file, expected {what}"),
            })
    };

    let (_, comment) = next("comment line")?;
    let label = comment.trim().to_string();

    let (ln, scale_line) = next("scale factor")?;
    let scale: f64 = scale_line
        .trim()
        .parse()
        .map_err(|_| syntax(ln, format!("expected scale factor, got {scale_line:?}")))?;
    if !(scale > 0.0) {
        return Err(syntax(ln, format!("scale factor must be positive, got {scale}")));
    }

    let mut lattice = [[0.0; 3]; 3];
    for row in &mut lattice {
        let (ln, l) = next("lattice row")?;
        let v = parse_floats(l);
        if v.len() < 3 {
            return Err(syntax(ln, format!("expected 3 lattice components, got {l:?}")));
        }
        for (j, out) in row.iter_mut().enumerate() {
            *out = v[j] * scale;
        }
    }

    let (ln, species_line) = next("species line")?;
    let symbols: Vec<&str> = species_line.split_whitespace().collect();
    if symbols.is_empty() || symbols.iter().any(|s| s.parse::<f64>().is_ok()) {
        return Err(syntax(
            ln,
            "expected a species line of element symbols (counts-only files are not supported)"
                .to_string(),
        ));
    }

    let (ln_counts, counts_line) = next("counts line")?;
    let counts: Vec<usize> = counts_line
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| syntax(ln_counts, format!("expected integer counts, got {counts_line:?}")))?;
    if counts.len() != symbols.len() {
        return Err(syntax(
            ln_counts,
            format!(
                "species/count mismatch: {} symbols vs {} counts",
                symbols.len(),
                counts.len()
            ),
        ));
    }
    let natoms: usize = counts.iter().sum();

    let (mut ln_mode, mut mode_line) = next("coordinate mode")?;
    if mode_line.trim_start().starts_with(['s', 'S']) {
        // Selective dynamics: tolerated and skipped.
        let (l, m) = next("coordinate mode")?;
        ln_mode = l;
        mode_line = m;
    }
    let direct = match mode_line.trim_start().chars().next() {
        Some('d') | Some('D') => true,
        Some('c') | Some('C') | Some('k') | Some('K') => false,
        _ => {
            return Err(syntax(
                ln_mode,
                format!("expected Direct or Cartesian, got {mode_line:?}"),
            ))
        }
    };

    let mut species = Vec::with_capacity(natoms);
    let mut masses = Vec::with_capacity(natoms);
    for (sym, &count) in symbols.iter().zip(&counts) {
        let mass = element_mass(sym).ok_or_else(|| IoError::Schema {
            path: path.to_path_buf(),
            message: format!(
                "no tabulated mass for species {sym}; use the native schema to supply masses"
            ),
        })?;
        for _ in 0..count {
            species.push(sym.to_string());
            masses.push(mass);
        }
    }

    let mut positions = Vec::with_capacity(natoms);
    for idx in 0..natoms {
        let (ln, l) = next("coordinate row")?;
        let v = parse_floats(l);
        if v.len() < 3 {
            return Err(syntax(
                ln,
                format!("expected coordinate row {} of {natoms}, got {l:?}", idx + 1),
            ));
        }
        let p = [v[0], v[1], v[2]];
        positions.push(if direct {
            vec_mat3(p, &lattice)
        } else {
            [p[0] * scale, p[1] * scale, p[2] * scale]
        });
    }

    CrystalStructure::new(lattice, species, masses, positions, label).map_err(|source| {
        IoError::Invalid {
            path: path.to_path_buf(),
            source,
        }
    })
}

/// Leading float tokens of a line; stops at the first non-numeric token so
/// trailing selective-dynamics flags or comments are ignored.
fn parse_floats(line: &str) -> Vec<f64> {
    line.split_whitespace()
        .map_while(|t| t.parse::<f64>().ok())
        .collect()
}
