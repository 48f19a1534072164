//! Formation energies versus Fermi level, charge transition levels and
//! stability diagrams.

use crate::constants::COULOMB_EV_A;
use crate::model::DefectEnergetics;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Thermodynamic limit of the synthesis environment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    Rich,
    Poor,
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Condition::Rich => write!(f, "rich"),
            Condition::Poor => write!(f, "poor"),
        }
    }
}

impl std::str::FromStr for Condition {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "rich" => Ok(Condition::Rich),
            "poor" => Ok(Condition::Poor),
            other => Err(format!("expected rich|poor, got {other}")),
        }
    }
}

#[derive(Debug, Error)]
pub enum EnergeticsError {
    #[error("charge state q = {0} is not present")]
    UnknownCharge(i32),
    #[error("charge transition level needs two distinct charges, got q = {0} twice")]
    IdenticalCharges(i32),
    #[error("stability diagram needs at least two charge states, got {0}")]
    TooFewCharges(usize),
    #[error("species {0} has no chemical potential entry")]
    MissingPotential(String),
}

/// One formation-energy line E^f(εF) = intercept + q·εF.
///
/// The slope is the integer charge by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormationLine {
    pub charge: i32,
    /// Formation energy at εF = 0 under the line's condition, eV.
    pub intercept_ev: f64,
}

impl FormationLine {
    pub fn slope(&self) -> f64 {
        self.charge as f64
    }

    pub fn value(&self, fermi_ev: f64) -> f64 {
        self.intercept_ev + self.charge as f64 * fermi_ev
    }
}

/// A crossing point between two formation-energy lines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargeTransition {
    /// The more positive of the two charges.
    pub q_hi: i32,
    /// The more negative of the two charges.
    pub q_lo: i32,
    pub fermi_ev: f64,
    /// True when the two charges are adjacent on the lower envelope.
    pub on_envelope: bool,
    /// True when the level lies strictly inside (0, gap).
    pub within_gap: bool,
}

/// Lower-envelope picture of a defect's charge states across the gap.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityDiagram {
    pub condition: Condition,
    pub gap_ev: f64,
    /// One line per charge state, sorted by descending charge.
    pub lines: Vec<FormationLine>,
    /// All pairwise transition levels, envelope pairs flagged.
    pub ctls: Vec<ChargeTransition>,
    /// Envelope segments as (start εF, stable charge), ascending in εF.
    segments: Vec<(f64, i32)>,
}

impl StabilityDiagram {
    /// Thermodynamically stable charge at a Fermi level in [0, gap].
    pub fn stable_charge(&self, fermi_ev: f64) -> i32 {
        let mut current = self.segments[0].1;
        for &(start, charge) in &self.segments {
            if fermi_ev >= start {
                current = charge;
            } else {
                break;
            }
        }
        current
    }

    /// Charges that are stable somewhere in [0, gap], in envelope order.
    pub fn stable_charges(&self) -> Vec<i32> {
        self.segments.iter().map(|&(_, q)| q).collect()
    }
}

fn chemical_potential_term(
    defect: &DefectEnergetics,
    condition: Condition,
) -> Result<f64, EnergeticsError> {
    let mut sum = 0.0;
    for (species, count) in &defect.stoichiometry_delta {
        let pair = defect
            .chem_potentials
            .get(species)
            .ok_or_else(|| EnergeticsError::MissingPotential(species.clone()))?;
        let mu = match condition {
            Condition::Rich => pair.rich_ev,
            Condition::Poor => pair.poor_ev,
        };
        sum += *count as f64 * mu;
    }
    Ok(sum)
}

/// Defect formation energy at a given Fermi level (measured from the VBM):
/// E_tot(q) − E_tot(host) − Σ nᵢ μᵢ + q(ε_vbm + ε_F) + E_corr(q).
///
/// Fermi levels outside [0, gap] are physically meaningful to inspect near
/// band edges and only warn.
pub fn formation_energy(
    defect: &DefectEnergetics,
    charge: i32,
    fermi_ev: f64,
    condition: Condition,
) -> Result<f64, EnergeticsError> {
    let entry = defect
        .entry(charge)
        .ok_or(EnergeticsError::UnknownCharge(charge))?;
    if fermi_ev < 0.0 || fermi_ev > defect.gap_ev {
        log::warn!(
            "Fermi level {fermi_ev:.4} eV lies outside [0, {:.4}] for {}",
            defect.gap_ev,
            defect.label
        );
    }
    let mu_term = chemical_potential_term(defect, condition)?;
    Ok(entry.total_energy_ev - defect.host_total_energy_ev - mu_term
        + charge as f64 * (defect.vbm_ev + fermi_ev)
        + entry.correction_ev)
}

fn intercept(
    defect: &DefectEnergetics,
    charge: i32,
    condition: Condition,
) -> Result<f64, EnergeticsError> {
    let entry = defect
        .entry(charge)
        .ok_or(EnergeticsError::UnknownCharge(charge))?;
    let mu_term = chemical_potential_term(defect, condition)?;
    Ok(entry.total_energy_ev - defect.host_total_energy_ev - mu_term
        + charge as f64 * defect.vbm_ev
        + entry.correction_ev)
}

/// Fermi level at which two charge states have equal formation energy:
/// εF = [E^f(q1; 0) − E^f(q2; 0)] / (q2 − q1).
///
/// The defect stoichiometry is shared across charge states, so the
/// chemical-potential terms cancel and the level is condition independent;
/// this is asserted rather than assumed.
pub fn charge_transition_level(
    defect: &DefectEnergetics,
    q1: i32,
    q2: i32,
    condition: Condition,
) -> Result<f64, EnergeticsError> {
    if q1 == q2 {
        return Err(EnergeticsError::IdenticalCharges(q1));
    }
    let level = |cond: Condition| -> Result<f64, EnergeticsError> {
        let e1 = intercept(defect, q1, cond)?;
        let e2 = intercept(defect, q2, cond)?;
        Ok((e1 - e2) / (q2 - q1) as f64)
    };
    let requested = level(condition)?;
    let other = level(match condition {
        Condition::Rich => Condition::Poor,
        Condition::Poor => Condition::Rich,
    })?;
    let scale = requested.abs().max(1.0);
    assert!(
        (requested - other).abs() <= 1e-9 * scale,
        "chemical-potential terms failed to cancel: {requested} vs {other}"
    );
    Ok(requested)
}

/// Full stability picture: one line per charge, every pairwise transition
/// level, and the lower envelope over [0, gap].
///
/// The analytic envelope is cross-checked against an argmin sweep over
/// `n_points` Fermi samples before being returned.
pub fn stability_diagram(
    defect: &DefectEnergetics,
    condition: Condition,
    n_points: usize,
) -> Result<StabilityDiagram, EnergeticsError> {
    let charges = defect.charges();
    if charges.len() < 2 {
        return Err(EnergeticsError::TooFewCharges(charges.len()));
    }
    let mut lines: Vec<FormationLine> = charges
        .iter()
        .map(|&q| {
            Ok(FormationLine {
                charge: q,
                intercept_ev: intercept(defect, q, condition)?,
            })
        })
        .collect::<Result<_, EnergeticsError>>()?;
    lines.sort_by_key(|l| std::cmp::Reverse(l.charge));

    let segments = lower_envelope(&lines, defect.gap_ev);

    // Transition levels for every pair; envelope adjacency flags the ones
    // that appear as kinks of the lower envelope.
    let mut ctls = Vec::new();
    for a in 0..lines.len() {
        for b in (a + 1)..lines.len() {
            let (qa, qb) = (lines[a].charge, lines[b].charge);
            let fermi = charge_transition_level(defect, qa, qb, condition)?;
            let on_envelope = segments
                .windows(2)
                .any(|w| (w[0].1 == qa && w[1].1 == qb) || (w[0].1 == qb && w[1].1 == qa));
            ctls.push(ChargeTransition {
                q_hi: qa.max(qb),
                q_lo: qa.min(qb),
                fermi_ev: fermi,
                on_envelope,
                within_gap: fermi > 0.0 && fermi < defect.gap_ev,
            });
        }
    }

    let diagram = StabilityDiagram {
        condition,
        gap_ev: defect.gap_ev,
        lines,
        ctls,
        segments,
    };

    // Sample check: the analytic envelope must agree with a brute argmin.
    let n = n_points.max(2);
    for i in 0..n {
        let f = defect.gap_ev * i as f64 / (n - 1) as f64;
        let brute = diagram
            .lines
            .iter()
            .min_by(|x, y| x.value(f).total_cmp(&y.value(f)))
            .expect("nonempty lines")
            .charge;
        let stable = diagram.stable_charge(f);
        if brute != stable {
            // A tie at a crossing can report either side; everything else
            // is a programming error.
            let vb = diagram.lines.iter().find(|l| l.charge == brute).unwrap();
            let vs = diagram.lines.iter().find(|l| l.charge == stable).unwrap();
            assert!(
                (vb.value(f) - vs.value(f)).abs() <= 1e-9 * vb.value(f).abs().max(1.0),
                "envelope mismatch at εF = {f}: analytic q={stable}, argmin q={brute}"
            );
        }
    }
    Ok(diagram)
}

fn lower_envelope(lines: &[FormationLine], gap_ev: f64) -> Vec<(f64, i32)> {
    // March from εF = 0 to the gap, always following the lowest line.
    // Lines are sorted by descending charge; ties at εF = 0 resolve to the
    // line that stays lowest (smaller charge).
    let mut current = lines
        .iter()
        .min_by(|a, b| {
            a.value(0.0)
                .total_cmp(&b.value(0.0))
                .then(a.charge.cmp(&b.charge))
        })
        .expect("nonempty lines");
    let mut segments = vec![(0.0, current.charge)];
    let mut fermi = 0.0;
    loop {
        // Earliest crossing beyond `fermi` where a slower-growing line
        // takes over.
        let mut next: Option<(f64, &FormationLine)> = None;
        for line in lines {
            if line.charge >= current.charge {
                continue;
            }
            let dq = (current.charge - line.charge) as f64;
            let cross = (line.intercept_ev - current.intercept_ev) / dq;
            if cross > fermi + 1e-15 && cross < gap_ev {
                match next {
                    Some((best, _)) if cross >= best => {}
                    _ => next = Some((cross, line)),
                }
            }
        }
        match next {
            Some((cross, line)) => {
                segments.push((cross, line.charge));
                current = line;
                fermi = cross;
            }
            None => break,
        }
    }
    segments
}

/// Crude isotropic point-charge estimate of the finite-size correction,
/// q²·α·e²/(4πε₀) / (2·ε·L). Approximate by construction: suitable for
/// sensitivity studies only, never a substitute for a supplied E_corr.
pub fn approx_point_charge_correction(
    charge: i32,
    madelung_alpha: f64,
    eps_rel: f64,
    length_angstrom: f64,
) -> f64 {
    let q = charge as f64;
    q * q * madelung_alpha * COULOMB_EV_A / (2.0 * eps_rel * length_angstrom)
}
