//! Small numeric helpers shared across modules.

/// Dot product of two Cartesian 3-vectors.
pub fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn sub3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn add3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn scale3(a: [f64; 3], s: f64) -> [f64; 3] {
    [a[0] * s, a[1] * s, a[2] * s]
}

pub fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

/// Determinant of a 3×3 matrix stored as rows.
pub fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Inverse of a 3×3 matrix stored as rows. Caller guarantees det ≠ 0.
pub fn inv3(m: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let d = det3(m);
    let c = |r: usize, cidx: usize| -> f64 {
        let r1 = (r + 1) % 3;
        let r2 = (r + 2) % 3;
        let c1 = (cidx + 1) % 3;
        let c2 = (cidx + 2) % 3;
        m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]
    };
    let mut out = [[0.0; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            // adjugate: transpose of the cofactor matrix
            *v = c(j, i) / d;
        }
    }
    out
}

/// Row-vector times matrix: v·M with M stored as rows.
pub fn vec_mat3(v: [f64; 3], m: &[[f64; 3]; 3]) -> [f64; 3] {
    [
        v[0] * m[0][0] + v[1] * m[1][0] + v[2] * m[2][0],
        v[0] * m[0][1] + v[1] * m[1][1] + v[2] * m[2][1],
        v[0] * m[0][2] + v[1] * m[1][2] + v[2] * m[2][2],
    ]
}

/// Error function, Abramowitz & Stegun 7.1.26 (|err| < 1.5e-7).
///
/// Only used for coarse truncation estimates, never for pinned values.
pub fn erf(x: f64) -> f64 {
    let sign = if x < 0.0 { -1.0 } else { 1.0 };
    let x = x.abs();
    let t = 1.0 / (1.0 + 0.3275911 * x);
    let poly = t
        * (0.254829592
            + t * (-0.284496736 + t * (1.421413741 + t * (-1.453152027 + t * 1.061405429))));
    sign * (1.0 - poly * (-x * x).exp())
}

/// Standard normal CDF built on [`erf`].
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * (1.0 + erf(z / std::f64::consts::SQRT_2))
}

/// Format a float with `sig` significant digits, %g style: decimal notation
/// for moderate exponents, scientific otherwise, trailing zeros trimmed.
/// Locale independent by construction.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    assert!(sig >= 1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", sig - 1, x);
    let (mant, exp) = sci.split_once('e').expect("exp format");
    let exp: i32 = exp.parse().expect("exp digits");
    if exp < -4 || exp >= sig as i32 {
        let mant = trim_zeros(mant);
        format!("{mant}e{exp}")
    } else {
        let prec = (sig as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.prec$}"))
    }
}

/// Shorthand used by the CSV/SVG writers: 12 significant digits.
pub fn fmt_g12(x: f64) -> String {
    fmt_sig(x, 12)
}

fn trim_zeros(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    t.to_string()
}

/// Filesystem-safe form of a defect label: lowercase alphanumeric runs
/// joined by underscores.
pub fn sanitize_label(label: &str) -> String {
    let mut out = String::new();
    let mut pending_sep = false;
    for c in label.chars() {
        if c.is_ascii_alphanumeric() {
            if pending_sep && !out.is_empty() {
                out.push('_');
            }
            pending_sep = false;
            out.push(c.to_ascii_lowercase());
        } else {
            pending_sep = true;
        }
    }
    if out.is_empty() {
        "unnamed".to_string()
    } else {
        out
    }
}

/// Uniform grid from `lo` with `n` points spaced by `step`.
pub fn uniform_grid(lo: f64, step: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + step * i as f64).collect()
}

/// Linear interpolation on a uniform ascending grid; zero outside the range.
pub fn lerp_uniform(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    debug_assert_eq!(xs.len(), ys.len());
    if xs.len() < 2 {
        return 0.0;
    }
    let step = xs[1] - xs[0];
    let t = (x - xs[0]) / step;
    if t < 0.0 || t > (xs.len() - 1) as f64 {
        return 0.0;
    }
    let i = (t.floor() as usize).min(xs.len() - 2);
    let frac = t - i as f64;
    ys[i] * (1.0 - frac) + ys[i + 1] * frac
}
