//! Recognizing rational numbers from floating-point values (continued
//! fractions) and assembling monic orbit polynomials from root sets.

use num::complex::Complex64;
use num::{BigInt, Signed, ToPrimitive, Zero};

use crate::exactpoly::Rat;

/// Best rational approximation `p/q` of `x` with `q <= max_den`, accepted
/// only when `|x - p/q| <= tol * max(1, |x|)`.
pub fn rationalize(x: f64, max_den: u64, tol: f64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    // continued fraction expansion with convergent tracking
    let (mut p0, mut q0): (i128, i128) = (1, 0);
    let (mut p1, mut q1): (i128, i128) = (x.floor() as i128, 1);
    let mut frac = x - x.floor();
    for _ in 0..64 {
        let approx = p1 as f64 / q1 as f64;
        if (x - approx).abs() <= tol * x.abs().max(1.0) {
            return Some(Rat::new(BigInt::from(p1), BigInt::from(q1)));
        }
        if frac.abs() < 1e-18 {
            break;
        }
        let inv = 1.0 / frac;
        let a = inv.floor();
        if !(a.is_finite()) || a >= 1e18 {
            break;
        }
        let ai = a as i128;
        let p2 = ai * p1 + p0;
        let q2 = ai * q1 + q0;
        if q2 as u128 > max_den as u128 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        frac = inv - a;
    }
    let approx = p1 as f64 / q1 as f64;
    if (x - approx).abs() <= tol * x.abs().max(1.0) {
        Some(Rat::new(BigInt::from(p1), BigInt::from(q1)))
    } else {
        None
    }
}

/// Monic polynomial with the given complex roots; returns the real
/// coefficient vector (constant first) if all imaginary parts cancel.
pub fn monic_from_roots(roots: &[Complex64], imag_tol: f64) -> Option<Vec<f64>> {
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * r;
        }
        coeffs = next;
    }
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if coeffs
        .iter()
        .any(|c| c.im.abs() > imag_tol * scale.max(1.0))
    {
        return None;
    }
    Some(coeffs.iter().map(|c| c.re).collect())
}

/// Clears denominators to a primitive integer vector with positive leading
/// coefficient. Scans for the smallest common denominator `q <= max_den`
/// that sends every coefficient within rounding distance of an integer and
/// reproduces it to relative accuracy `tol`; rationalizing coefficients one
/// by one is not reliable, because each would accept a different low-quality
/// convergent.
pub fn integer_polynomial(coeffs: &[f64], max_den: u64, tol: f64) -> Option<Vec<BigInt>> {
    if coeffs.iter().any(|c| !c.is_finite()) {
        return None;
    }
    'scan: for q in 1..=max_den {
        let qf = q as f64;
        for &c in coeffs {
            let scaled = qf * c;
            if scaled.abs() >= 9e15 {
                return None; // beyond exact integer range of f64
            }
            let nearest = scaled.round();
            if (scaled - nearest).abs() > 1e-3 {
                continue 'scan;
            }
            if (c - nearest / qf).abs() > tol * c.abs().max(1.0) {
                continue 'scan;
            }
        }
        let mut ints: Vec<BigInt> = coeffs
            .iter()
            .map(|&c| BigInt::from((qf * c).round() as i64))
            .collect();
        let mut g = BigInt::zero();
        for v in &ints {
            g = num::integer::gcd(g, v.abs());
        }
        if g.is_zero() {
            return None;
        }
        let lead_neg = ints.last().map(|v| v.is_negative()).unwrap_or(false);
        for v in &mut ints {
            *v = &*v / &g;
            if lead_neg {
                *v = -v.clone();
            }
        }
        return Some(ints);
    }
    None
}

/// Max height (largest |numerator| or denominator) of a rational vector,
/// as f64; used to prefer the simplest rationalization.
pub fn height(rats: &[Rat]) -> f64 {
    rats.iter()
        .map(|r| {
            r.numer()
                .abs()
                .to_f64()
                .unwrap_or(f64::INFINITY)
                .max(r.denom().to_f64().unwrap_or(f64::INFINITY))
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;

    #[test]
    fn rationalize_simple() {
        assert_eq!(rationalize(0.5, 1000, 1e-9).unwrap(), rat(1, 2));
        assert_eq!(rationalize(-22.0 / 7.0, 1000, 1e-9).unwrap(), rat(-22, 7));
        assert_eq!(rationalize(3.0, 1000, 1e-9).unwrap(), rat(3, 1));
        // irrational numbers need huge denominators; reject under a bound
        assert!(rationalize(std::f64::consts::SQRT_2, 1000, 1e-12).is_none());
    }

    #[test]
    fn monic_and_integer_polynomial() {
        // roots of 2796 d^2 + 4137 d - 56
        let disc = (4137.0f64 * 4137.0 + 4.0 * 2796.0 * 56.0).sqrt();
        let r1 = (-4137.0 + disc) / (2.0 * 2796.0);
        let r2 = (-4137.0 - disc) / (2.0 * 2796.0);
        let roots = [Complex64::new(r1, 0.0), Complex64::new(r2, 0.0)];
        let monic = monic_from_roots(&roots, 1e-12).unwrap();
        let ints = integer_polynomial(&monic, 100_000, 1e-9).unwrap();
        assert_eq!(
            ints,
            vec![BigInt::from(-56), BigInt::from(4137), BigInt::from(2796)]
        );
    }

    #[test]
    fn complex_pair_gives_real_coeffs() {
        let roots = [Complex64::new(1.0, 2.0), Complex64::new(1.0, -2.0)];
        let monic = monic_from_roots(&roots, 1e-12).unwrap();
        // (d - (1+2i))(d - (1-2i)) = d^2 - 2d + 5
        assert!((monic[0] - 5.0).abs() < 1e-12);
        assert!((monic[1] + 2.0).abs() < 1e-12);
        assert!((monic[2] - 1.0).abs() < 1e-12);
    }
}
