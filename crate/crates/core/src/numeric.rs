//! Floating-point helpers: vector algebra on `f64`/complex triples and
//! rank-revealing decompositions used by the sampling probes.

use nalgebra::{DMatrix, SMatrix};
use num::complex::Complex64;

pub const DEFAULT_TOL: f64 = 1e-9;

pub fn dot3f(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross3f(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm3f(a: &[f64; 3]) -> f64 {
    dot3f(a, a).sqrt()
}

pub fn sub3f(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn norm6(a: &[f64; 6]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn dot3c(a: &[Complex64; 3], b: &[Complex64; 3]) -> Complex64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross3c(a: &[Complex64; 3], b: &[Complex64; 3]) -> [Complex64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm6c(a: &[Complex64; 6]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Singular values of a 6x6 real matrix, descending.
pub fn singular_values6(m: &[[f64; 6]; 6]) -> [f64; 6] {
    let mat = SMatrix::<f64, 6, 6>::from_fn(|i, j| m[i][j]);
    let svd = mat.svd(false, false);
    let mut sv = [0.0; 6];
    for (k, v) in svd.singular_values.iter().enumerate() {
        sv[k] = *v;
    }
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv
}

/// Right-nullspace vector of a 6x6 matrix (the singular vector for the
/// smallest singular value).
pub fn nullspace6(m: &[[f64; 6]; 6]) -> [f64; 6] {
    let mat = SMatrix::<f64, 6, 6>::from_fn(|i, j| m[i][j]);
    let svd = mat.svd(false, true);
    let vt = svd.v_t.expect("svd with v_t");
    // smallest singular value comes last in nalgebra's ordering
    let mut min_idx = 0;
    let mut min_val = f64::INFINITY;
    for (k, v) in svd.singular_values.iter().enumerate() {
        if *v < min_val {
            min_val = *v;
            min_idx = k;
        }
    }
    let mut out = [0.0; 6];
    for j in 0..6 {
        out[j] = vt[(min_idx, j)];
    }
    out
}

/// Collinearity residual of two real 6-vectors: norm of the component of
/// `b` orthogonal to `a`, over `|a| |b|`. Zero means proportional.
pub fn collinearity_residual(a: &[f64; 6], b: &[f64; 6]) -> f64 {
    let na = norm6(a);
    let nb = norm6(b);
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    // subtract the projection of b on a; stable near collinearity
    let k = dot / (na * na);
    let rej: f64 = a
        .iter()
        .zip(b)
        .map(|(x, y)| {
            let d = y - k * x;
            d * d
        })
        .sum();
    rej.sqrt() / nb
}

/// Collinearity residual for complex 6-vectors.
pub fn collinearity_residual_c(a: &[Complex64; 6], b: &[Complex64; 6]) -> f64 {
    let na = norm6c(a);
    let nb = norm6c(b);
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    let dot: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    let k = dot / (na * na);
    let rej: f64 = a
        .iter()
        .zip(b)
        .map(|(x, y)| (y - k * x).norm_sqr())
        .sum();
    rej.sqrt() / nb
}

/// All complex roots of a real polynomial `c[0] + c[1] t + ... + c[n] t^n`
/// via the companion matrix. Leading (near-)zero coefficients are dropped
/// relative to the largest coefficient.
pub fn poly_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if scale == 0.0 {
        return Vec::new();
    }
    let mut deg = coeffs.len().saturating_sub(1);
    while deg > 0 && coeffs[deg].abs() < 1e-14 * scale {
        deg -= 1;
    }
    if deg == 0 {
        return Vec::new();
    }
    let lead = coeffs[deg];
    let mut comp = DMatrix::<f64>::zeros(deg, deg);
    for i in 1..deg {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        comp[(i, deg - 1)] = -coeffs[i] / lead;
    }
    comp.complex_eigenvalues().iter().copied().collect()
}

/// Real roots of a real polynomial, within an imaginary-part tolerance.
pub fn poly_real_roots(coeffs: &[f64], imag_tol: f64) -> Vec<f64> {
    poly_roots(coeffs)
        .into_iter()
        .filter(|z| z.im.abs() <= imag_tol * (1.0 + z.re.abs()))
        .map(|z| z.re)
        .collect()
}

/// Solves a square complex linear system by LU; `None` when singular.
pub fn solve_complex(a: &DMatrix<Complex64>, b: &nalgebra::DVector<Complex64>) -> Option<nalgebra::DVector<Complex64>> {
    a.clone().lu().solve(b)
}
