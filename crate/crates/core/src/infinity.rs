//! Behaviour of the singularity surface and the reciprocal-twist map on the
//! plane at infinity: the cubic curve of singular directions, the quadratic
//! twist forms, their indetermination points, and the cubic forms that
//! extend the map regularly through those points.

use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::exactpoly::{rat_int, MultiPoly, Rat, VarSet};
use crate::geom::{cross3, is_zero3, to_f64_3, vec3, Vec3r};
use crate::numeric;
use crate::platform::{Architecture, Orientation};
use crate::singularity::cubic_surface;
use crate::twistmap::{
    twist_bundle, twist_infinity, twist_infinity_fallback, CubicInfinityTwist, InfinityTwist,
};
use crate::Result;

/// A direction at infinity where all quadratic twist forms vanish; the
/// cubic forms take over there.
#[derive(Clone, Debug)]
pub struct IndeterminationPoint {
    /// Projective direction, normalized to unit norm.
    pub dir: [Complex64; 3],
    pub is_real: bool,
    /// Worst scaled magnitude of the quadratic forms at the direction.
    pub quadratic_residual: f64,
    /// Scaled magnitude of the cubic extension forms; must stay away
    /// from zero for the extension to be defined.
    pub cubic_magnitude: f64,
}

/// Complete model at the plane at infinity.
#[derive(Clone, Debug)]
pub struct InfinityModel {
    h3: MultiPoly,
    quadratic: InfinityTwist,
    fallback: CubicInfinityTwist,
    indetermination: Vec<IndeterminationPoint>,
}

impl InfinityModel {
    /// The cubic curve of singular directions.
    pub fn h3(&self) -> &MultiPoly {
        &self.h3
    }

    /// The quadratic twist forms `(L(P) P | V)`.
    pub fn quadratic(&self) -> &InfinityTwist {
        &self.quadratic
    }

    /// The cubic twist forms used where the quadratic ones all vanish.
    pub fn fallback(&self) -> &CubicInfinityTwist {
        &self.fallback
    }

    pub fn indetermination_points(&self) -> &[IndeterminationPoint] {
        &self.indetermination
    }
}

/// Two independent rational vectors spanning the plane `L = 0` for the
/// linear form `L` in three variables.
fn kernel_basis(l: &MultiPoly) -> Result<(Vec3r, Vec3r)> {
    use num::Zero;
    let mut n = [Rat::zero(), Rat::zero(), Rat::zero()];
    for (m, c) in l.terms() {
        for k in 0..3 {
            if m.0[k] == 1 {
                n[k] = c.clone();
            }
        }
    }
    if is_zero3(&n) {
        return Err(Error::ZeroPolynomial);
    }
    // cross with the axis of a zero (or smallest) component
    let axis = if n[0].is_zero() {
        vec3(rat_int(1), rat_int(0), rat_int(0))
    } else if n[1].is_zero() {
        vec3(rat_int(0), rat_int(1), rat_int(0))
    } else {
        vec3(rat_int(0), rat_int(0), rat_int(1))
    };
    let u1 = cross3(&n, &axis);
    let u2 = cross3(&n, &u1);
    if is_zero3(&u1) || is_zero3(&u2) {
        return Err(Error::ZeroPolynomial);
    }
    Ok((u1, u2))
}

/// Restricts a polynomial in `(x, y, z)` to the line `u1 + t u2` and
/// returns the univariate coefficients, constant first.
fn restrict_to_line(p: &MultiPoly, u1: &Vec3r, u2: &Vec3r) -> Vec<Rat> {
    use num::Zero;
    let vars = VarSet::new(["t"]);
    let t = MultiPoly::var(&vars, 0);
    let images: Vec<MultiPoly> = (0..3)
        .map(|k| MultiPoly::constant(&vars, u1[k].clone()).add(&t.scale(&u2[k])))
        .collect();
    let restricted = p.substitute(&images);
    let deg = restricted.total_degree() as usize;
    let mut coeffs = vec![Rat::zero(); deg + 1];
    for (m, c) in restricted.terms() {
        coeffs[m.0[0] as usize] = c.clone();
    }
    coeffs
}

fn complex_dir(u1: &Vec3r, u2: &Vec3r, t: Complex64) -> [Complex64; 3] {
    let a = to_f64_3(u1);
    let b = to_f64_3(u2);
    let mut d: [Complex64; 3] = std::array::from_fn(|k| Complex64::new(a[k], 0.0) + t * b[k]);
    let n = d.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if n > 0.0 {
        for z in &mut d {
            *z /= n;
        }
    }
    d
}

/// Builds the model: curve, quadratic and cubic twist forms, and the
/// common zeros of the quadratic forms on the curve. The zeros lie on the
/// line `L = 0`, so they are roots of the curve's restriction to it.
pub fn infinity_model(arch: &Architecture, r: &Orientation) -> Result<InfinityModel> {
    let surface = cubic_surface(arch, r)?;
    let bundle = twist_bundle(arch, r)?;
    let quadratic = twist_infinity(&bundle)?;
    let fallback = twist_infinity_fallback(arch, r)?;
    let h3 = surface.h3().clone();

    let (u1, u2) = kernel_basis(quadratic.line())?;
    let coeffs: Vec<f64> = restrict_to_line(&h3, &u1, &u2)
        .iter()
        .map(|c| num::ToPrimitive::to_f64(c).unwrap_or(f64::NAN))
        .collect();
    let polish = |mut t: Complex64| -> Complex64 {
        for _ in 0..8 {
            let mut val = Complex64::new(0.0, 0.0);
            let mut der = Complex64::new(0.0, 0.0);
            for &c in coeffs.iter().rev() {
                der = der * t + val;
                val = val * t + c;
            }
            if der.norm() == 0.0 {
                break;
            }
            t -= val / der;
        }
        t
    };
    let mut candidates: Vec<[Complex64; 3]> = numeric::poly_roots(&coeffs)
        .into_iter()
        .map(|t| complex_dir(&u1, &u2, polish(t)))
        .collect();
    // the direction u2 itself is the root "at infinity" of the restriction
    if {
        use num::Zero;
        surface.h3().eval_rat(&u2).is_zero()
    } {
        let b = to_f64_3(&u2);
        let n = numeric::norm3f(&b);
        candidates.push(std::array::from_fn(|k| Complex64::new(b[k] / n, 0.0)));
    }

    let vq_scale: f64 = quadratic
        .v_inf()
        .iter()
        .map(|p| p.coeff_norm())
        .fold(0.0, f64::max);
    let cubic_scale: f64 = fallback
        .v3()
        .iter()
        .map(|p| p.coeff_norm())
        .fold(fallback.factor().coeff_norm(), f64::max);
    let mut indetermination = Vec::new();
    for dir in candidates {
        let vq: f64 = quadratic
            .v_inf()
            .iter()
            .map(|p| p.eval_complex(&dir).norm())
            .fold(0.0, f64::max)
            / vq_scale;
        if vq > 1e-7 {
            continue;
        }
        let cubic_magnitude = fallback
            .v3()
            .iter()
            .map(|p| p.eval_complex(&dir).norm())
            .fold(fallback.factor().eval_complex(&dir).norm(), f64::max)
            / cubic_scale;
        if cubic_magnitude < 1e-8 {
            return Err(Error::ExtensionUndefined);
        }
        let is_real = dir.iter().all(|z| z.im.abs() < 1e-8);
        indetermination.push(IndeterminationPoint {
            dir,
            is_real,
            quadratic_residual: vq,
            cubic_magnitude,
        });
    }
    Ok(InfinityModel {
        h3,
        quadratic,
        fallback,
        indetermination,
    })
}

/// One sampled direction on the curve at infinity with the self-reciprocity
/// diagnostics of its twist.
#[derive(Clone, Debug)]
pub struct SweepSample {
    pub dir: [f64; 3],
    /// `|Ω·V| / (|Ω||V|)`, or 0 when either factor vanishes.
    pub self_pairing: f64,
    /// Collinearity of `Ω` with the direction (rotation case).
    pub axis_alignment: f64,
    /// `|V·P| / (|V||P|)` when `Ω ≈ 0` (translation case).
    pub translation_defect: f64,
    pub used_fallback: bool,
}

#[derive(Clone, Debug)]
pub struct SweepReport {
    pub samples: Vec<SweepSample>,
    pub max_self_pairing: f64,
    pub max_defect: f64,
    pub violations: usize,
}

fn quartet_coeffs(g0: f64, g1: f64, gm: f64, g2: f64) -> [f64; 4] {
    // interpolate a cubic through values at t = 0, 1, -1, 2
    let a0 = g0;
    let a2 = 0.5 * (g1 + gm) - a0;
    let s = 0.5 * (g1 - gm);
    let a3 = (g2 - a0 - 4.0 * a2 - 2.0 * s) / 6.0;
    let a1 = s - a3;
    [a0, a1, a2, a3]
}

/// Samples `n` directions on the curve at infinity (random line slices in
/// the chart `x = 1`) and checks that every reciprocal twist there is
/// self-reciprocal: a rotation with axis parallel to the direction, or a
/// translation orthogonal to it.
pub fn self_reciprocity_sweep(model: &InfinityModel, n: usize, seed: u64, tol: f64) -> SweepReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(n);
    let h3 = |p: &[f64; 3]| model.h3.eval_f64(p);
    let l_scale = model.quadratic.line().coeff_norm();
    let mut guard = 0usize;
    while samples.len() < n && guard < 40 * n + 100 {
        guard += 1;
        let y0 = rng.gen_range(-4.0..4.0);
        let z0 = rng.gen_range(-4.0..4.0);
        let dy = rng.gen_range(-1.0..1.0f64);
        let dz = rng.gen_range(-1.0..1.0f64);
        if dy.abs() + dz.abs() < 0.1 {
            continue;
        }
        let at = |t: f64| [1.0, y0 + dy * t, z0 + dz * t];
        let coeffs = quartet_coeffs(h3(&at(0.0)), h3(&at(1.0)), h3(&at(-1.0)), h3(&at(2.0)));
        for t in numeric::poly_real_roots(&coeffs, 1e-9) {
            if samples.len() >= n {
                break;
            }
            let mut p = at(t);
            let np = numeric::norm3f(&p);
            for c in &mut p {
                *c /= np;
            }
            // polish the root against the curve along the slice direction
            let sample = sweep_sample(model, &p, l_scale, tol);
            samples.push(sample);
        }
    }
    let max_self_pairing = samples
        .iter()
        .map(|s| s.self_pairing)
        .fold(0.0, f64::max);
    let max_defect = samples
        .iter()
        .map(|s| s.axis_alignment.min(s.translation_defect))
        .fold(0.0, f64::max);
    let violations = samples
        .iter()
        .filter(|s| {
            s.self_pairing > tol || s.axis_alignment.min(s.translation_defect) > tol
        })
        .count();
    SweepReport {
        samples,
        max_self_pairing,
        max_defect,
        violations,
    }
}

fn sweep_sample(model: &InfinityModel, p: &[f64; 3], l_scale: f64, tol: f64) -> SweepSample {
    let lval = model.quadratic.line().eval_f64(p);
    let omega_q: [f64; 3] = std::array::from_fn(|k| lval * p[k]);
    let v_q: [f64; 3] = std::array::from_fn(|k| model.quadratic.v_inf()[k].eval_f64(p));
    let q_scale = model
        .quadratic
        .v_inf()
        .iter()
        .map(|c| c.coeff_norm())
        .fold(l_scale, f64::max);
    let quad_norm = (numeric::dot3f(&omega_q, &omega_q) + numeric::dot3f(&v_q, &v_q)).sqrt();
    let (omega, v, used_fallback) = if quad_norm > 1e-7 * q_scale {
        (omega_q, v_q, false)
    } else {
        let qv = model.fallback.factor().eval_f64(p);
        let of: [f64; 3] = std::array::from_fn(|k| qv * p[k]);
        let vf: [f64; 3] = std::array::from_fn(|k| model.fallback.v3()[k].eval_f64(p));
        (of, vf, true)
    };
    let no = numeric::norm3f(&omega);
    let nv = numeric::norm3f(&v);
    let self_pairing = if no * nv == 0.0 {
        0.0
    } else {
        numeric::dot3f(&omega, &v).abs() / (no * nv)
    };
    let twist_norm = (no * no + nv * nv).sqrt().max(1e-300);
    let axis_alignment = if no > tol.sqrt() * twist_norm {
        // rotation: omega must be parallel to the direction
        let c = numeric::cross3f(&omega, p);
        numeric::norm3f(&c) / (no * numeric::norm3f(p))
    } else {
        0.0
    };
    let translation_defect = if no <= tol.sqrt() * twist_norm && nv > 0.0 {
        numeric::dot3f(&v, p).abs() / (nv * numeric::norm3f(p))
    } else if axis_alignment > 0.0 {
        f64::INFINITY // rotation case: judged by axis alignment instead
    } else {
        0.0
    };
    SweepSample {
        dir: *p,
        self_pairing,
        axis_alignment: if axis_alignment.is_finite() {
            axis_alignment
        } else {
            0.0
        },
        translation_defect,
        used_fallback,
    }
}
