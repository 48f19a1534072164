//! Hand-rolled SVG plots: emission spectra with telecom-band shading and
//! formation-energy diagrams. Output is deterministic: fixed canvas, fixed
//! palette, fixed float formatting.

use super::IoError;
use crate::energetics::StabilityDiagram;
use crate::model::Spectrum;
use crate::units::wavelength_to_energy_ev;
use crate::util::fmt_sig;
use std::fmt::Write as _;
use std::path::Path;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 72.0;
const RIGHT: f64 = 700.0;
const TOP: f64 = 42.0;
const BOTTOM: f64 = 392.0;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

/// A shaded wavelength window drawn behind a spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct ShadeBand {
    pub label: String,
    pub wavelength_lo_nm: f64,
    pub wavelength_hi_nm: f64,
    pub fill: String,
}

/// Telecommunication O-band, 1260–1360 nm.
pub fn o_band() -> ShadeBand {
    ShadeBand {
        label: "O-band".to_string(),
        wavelength_lo_nm: 1260.0,
        wavelength_hi_nm: 1360.0,
        fill: "#7fc97f".to_string(),
    }
}

/// Telecommunication C-band, 1530–1565 nm.
pub fn c_band() -> ShadeBand {
    ShadeBand {
        label: "C-band".to_string(),
        wavelength_lo_nm: 1530.0,
        wavelength_hi_nm: 1565.0,
        fill: "#f4a6d7".to_string(),
    }
}

fn px(v: f64) -> String {
    format!("{v:.2}")
}

struct Axes {
    x_lo: f64,
    x_hi: f64,
    y_lo: f64,
    y_hi: f64,
}

impl Axes {
    fn x(&self, v: f64) -> f64 {
        LEFT + (v - self.x_lo) / (self.x_hi - self.x_lo) * (RIGHT - LEFT)
    }

    fn y(&self, v: f64) -> f64 {
        BOTTOM - (v - self.y_lo) / (self.y_hi - self.y_lo) * (BOTTOM - TOP)
    }
}

fn document_open(out: &mut String, title: &str, desc: &[(String, String)]) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, "<desc>");
    for (key, value) in desc {
        let _ = writeln!(out, "{key} = {value}");
    }
    let _ = writeln!(out, "</desc>");
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="15" text-anchor="middle">{}</text>"#,
        (LEFT + RIGHT) / 2.0,
        xml_escape(title)
    );
}

fn draw_frame(out: &mut String, axes: &Axes, x_label: &str, y_label: &str) {
    let _ = writeln!(
        out,
        r#"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black" stroke-width="1"/>"#,
        px(LEFT),
        px(TOP),
        px(RIGHT - LEFT),
        px(BOTTOM - TOP)
    );
    for i in 0..=5 {
        let frac = i as f64 / 5.0;
        let xv = axes.x_lo + frac * (axes.x_hi - axes.x_lo);
        let xp = axes.x(xv);
        let _ = writeln!(
            out,
            r#"<line x1="{x}" y1="{b}" x2="{x}" y2="{t}" stroke="black" stroke-width="1"/>"#,
            x = px(xp),
            b = px(BOTTOM),
            t = px(BOTTOM + 5.0)
        );
        let _ = writeln!(
            out,
            r#"<text x="{x}" y="{y}" font-family="sans-serif" font-size="11" text-anchor="middle">{v}</text>"#,
            x = px(xp),
            y = px(BOTTOM + 18.0),
            v = fmt_sig(xv, 4)
        );
        let yv = axes.y_lo + frac * (axes.y_hi - axes.y_lo);
        let yp = axes.y(yv);
        let _ = writeln!(
            out,
            r#"<line x1="{l}" y1="{y}" x2="{l2}" y2="{y}" stroke="black" stroke-width="1"/>"#,
            l = px(LEFT - 5.0),
            l2 = px(LEFT),
            y = px(yp)
        );
        let _ = writeln!(
            out,
            r#"<text x="{x}" y="{y}" font-family="sans-serif" font-size="11" text-anchor="end">{v}</text>"#,
            x = px(LEFT - 8.0),
            y = px(yp + 4.0),
            v = fmt_sig(yv, 3)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="13" text-anchor="middle">{}</text>"#,
        (LEFT + RIGHT) / 2.0,
        BOTTOM + 38.0,
        xml_escape(x_label)
    );
    let _ = writeln!(
        out,
        r#"<text x="18" y="{}" font-family="sans-serif" font-size="13" text-anchor="middle" transform="rotate(-90 18 {})">{}</text>"#,
        (TOP + BOTTOM) / 2.0,
        (TOP + BOTTOM) / 2.0,
        xml_escape(y_label)
    );
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Emission spectrum with optional shaded telecom windows.
pub fn render_spectrum_svg(
    spectrum: &Spectrum,
    bands: &[ShadeBand],
    title: &str,
    desc: &[(String, String)],
) -> String {
    let energies = spectrum.energies_ev();
    let axes = Axes {
        x_lo: energies[0],
        x_hi: *energies.last().unwrap(),
        y_lo: 0.0,
        y_hi: spectrum
            .intensities()
            .iter()
            .cloned()
            .fold(0.0_f64, f64::max)
            .max(1e-12)
            * 1.05,
    };
    let mut out = String::new();
    document_open(&mut out, title, desc);

    for band in bands {
        // Wavelength windows map to energy windows upside down.
        let e_lo = wavelength_to_energy_ev(band.wavelength_hi_nm).unwrap_or(f64::INFINITY);
        let e_hi = wavelength_to_energy_ev(band.wavelength_lo_nm).unwrap_or(f64::NEG_INFINITY);
        let lo = e_lo.max(axes.x_lo);
        let hi = e_hi.min(axes.x_hi);
        if lo >= hi {
            continue;
        }
        let _ = writeln!(
            out,
            r#"<rect x="{x}" y="{y}" width="{w}" height="{h}" fill="{fill}" fill-opacity="0.35"><title>{label} ({lo_nm}-{hi_nm} nm)</title></rect>"#,
            x = px(axes.x(lo)),
            y = px(TOP),
            w = px(axes.x(hi) - axes.x(lo)),
            h = px(BOTTOM - TOP),
            fill = band.fill,
            label = xml_escape(&band.label),
            lo_nm = band.wavelength_lo_nm,
            hi_nm = band.wavelength_hi_nm,
        );
    }

    let mut points = String::new();
    for (&e, &i) in energies.iter().zip(spectrum.intensities()) {
        let _ = write!(points, "{},{} ", px(axes.x(e)), px(axes.y(i)));
    }
    let _ = writeln!(
        out,
        r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="1.5"/>"#,
        points.trim_end(),
        PALETTE[0]
    );

    draw_frame(&mut out, &axes, "energy (eV)", "intensity (arb. units)");
    out.push_str("</svg>\n");
    out
}

/// Formation-energy lines across the gap with envelope transition levels.
pub fn render_diagram_svg(
    diagram: &StabilityDiagram,
    title: &str,
    desc: &[(String, String)],
) -> String {
    let mut y_lo = f64::INFINITY;
    let mut y_hi = f64::NEG_INFINITY;
    for line in &diagram.lines {
        for v in [line.value(0.0), line.value(diagram.gap_ev)] {
            y_lo = y_lo.min(v);
            y_hi = y_hi.max(v);
        }
    }
    let pad = 0.05 * (y_hi - y_lo).max(0.1);
    let axes = Axes {
        x_lo: 0.0,
        x_hi: diagram.gap_ev,
        y_lo: y_lo - pad,
        y_hi: y_hi + pad,
    };
    let mut out = String::new();
    document_open(&mut out, title, desc);

    for (idx, line) in diagram.lines.iter().enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        let _ = writeln!(
            out,
            r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{color}" stroke-width="1.8"/>"#,
            x1 = px(axes.x(0.0)),
            y1 = px(axes.y(line.value(0.0))),
            x2 = px(axes.x(diagram.gap_ev)),
            y2 = px(axes.y(line.value(diagram.gap_ev))),
        );
        let _ = writeln!(
            out,
            r#"<text x="{x}" y="{y}" font-family="sans-serif" font-size="12" fill="{color}">q={q:+}</text>"#,
            x = px(RIGHT - 60.0),
            y = px(TOP + 18.0 + 16.0 * idx as f64),
            q = line.charge,
        );
    }
    for ctl in diagram.ctls.iter().filter(|c| c.on_envelope && c.within_gap) {
        let line = diagram
            .lines
            .iter()
            .find(|l| l.charge == ctl.q_hi)
            .expect("envelope charge has a line");
        let _ = writeln!(
            out,
            r#"<circle cx="{x}" cy="{y}" r="4" fill="black"><title>({:+}|{:+}) at {} eV</title></circle>"#,
            ctl.q_hi,
            ctl.q_lo,
            fmt_sig(ctl.fermi_ev, 4),
            x = px(axes.x(ctl.fermi_ev)),
            y = px(axes.y(line.value(ctl.fermi_ev))),
        );
    }

    draw_frame(
        &mut out,
        &axes,
        "Fermi level (eV)",
        "formation energy (eV)",
    );
    out.push_str("</svg>\n");
    out
}

/// Write an emission spectrum plot with the given shaded bands.
pub fn write_svg_plot(
    spectrum: &Spectrum,
    bands: &[ShadeBand],
    path: &Path,
    title: &str,
    desc: &[(String, String)],
) -> Result<(), IoError> {
    super::write_string(path, &render_spectrum_svg(spectrum, bands, title, desc))
}
