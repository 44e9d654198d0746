//! The cubic surface of singular poses for a fixed orientation: symbolic
//! Jacobian, its determinant, the curve at infinity, the planar hexagon
//! criterion, and numeric probes.

use num::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::exactpoly::{det_laplace3, MultiPoly, PolyMatrix, Rat, VarSet};
use crate::geom::{cross3, dot3, scale3, sub3, Vec3r};
use crate::numeric;
use crate::perm;
use crate::platform::{Architecture, Orientation};
use crate::Result;

/// The cubic `F = det(Jac)` in `x, y, z`, its homogenization, and its
/// degree-3 part (the curve at infinity), with provenance.
#[derive(Clone, Debug)]
pub struct CubicSurface {
    f: MultiPoly,
    f_h: MultiPoly,
    h3: MultiPoly,
    degenerate: bool,
    arch: Architecture,
    orientation: Orientation,
}

impl CubicSurface {
    /// The affine cubic, projectively normalized.
    pub fn f(&self) -> &MultiPoly {
        &self.f
    }

    /// Homogenization of `f` with variable `w` at degree 3.
    pub fn f_h(&self) -> &MultiPoly {
        &self.f_h
    }

    /// Degree-3 graded part of `f`: the equation of the curve at infinity.
    pub fn h3(&self) -> &MultiPoly {
        &self.h3
    }

    /// True when the surface degree dropped below 3 (special architecture).
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn architecture(&self) -> &Architecture {
        &self.arch
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn eval_f64(&self, p: &[f64; 3]) -> f64 {
        self.f.eval_f64(p)
    }

    pub fn eval_rat(&self, p: &Vec3r) -> Rat {
        self.f.eval_rat(p)
    }
}

/// The 6x6 matrix over `Q[x, y, z]` whose row `i` is the Plücker vector
/// `(C_i + P | A_i x (C_i + P))` with `P = (x, y, z)` symbolic.
pub fn jacobian_matrix(arch: &Architecture, r: &Orientation) -> PolyMatrix {
    let vars = VarSet::xyz();
    let c = arch.limb_vectors(r);
    let p: [MultiPoly; 3] = std::array::from_fn(|k| MultiPoly::var(&vars, k));
    let mut rows = Vec::with_capacity(6);
    for i in 0..6 {
        let f: [MultiPoly; 3] = std::array::from_fn(|k| {
            p[k].add(&MultiPoly::constant(&vars, c[i][k].clone()))
        });
        let a = arch.a(i);
        // A_i x F with A_i constant
        let m = [
            f[2].scale(&a[1]).sub(&f[1].scale(&a[2])),
            f[0].scale(&a[2]).sub(&f[2].scale(&a[0])),
            f[1].scale(&a[0]).sub(&f[0].scale(&a[1])),
        ];
        let mut row = Vec::with_capacity(6);
        row.extend(f);
        row.extend(m);
        rows.push(row);
    }
    PolyMatrix::from_rows(rows)
}

/// Builds the singularity surface for the given architecture/orientation.
pub fn cubic_surface(arch: &Architecture, r: &Orientation) -> Result<CubicSurface> {
    let jac = jacobian_matrix(arch, r);
    let det = det_laplace3(&jac)?;
    if det.is_zero() {
        return Err(Error::IdenticallySingular);
    }
    let f = det.normalize_projective()?;
    let deg = f.total_degree();
    if deg > 3 {
        return Err(Error::Internal(format!(
            "det(Jac) has degree {deg} > 3 in P"
        )));
    }
    if !f.constant_term().is_zero() {
        return Err(Error::Internal("F(0,0,0) != 0".into()));
    }
    let f_h = f.homogenize("w", 3)?;
    let h3 = f.graded_part(&[0, 1, 2], 3);
    Ok(CubicSurface {
        f,
        f_h,
        h3,
        degenerate: deg < 3,
        arch: arch.clone(),
        orientation: r.clone(),
    })
}

/// The degree-3 part of `det(Jac)` computed as the signed sum over all 720
/// permutations of `[A,A,P][A,B,P][B,B,P]` triple products (times -1/4).
pub fn h3_permutation_sum(arch: &Architecture, r: &Orientation) -> MultiPoly {
    let vars = VarSet::xyz();
    let a = arch.base();
    let b = arch.rotated_platform(r);
    // [U, V, P] as a linear form with coefficient vector U x V
    let linear_form = |u: &Vec3r, v: &Vec3r| -> Vec3r { cross3(u, v) };
    let mut acc_coeffs: std::collections::BTreeMap<(u32, u32, u32), Rat> =
        std::collections::BTreeMap::new();
    perm::for_each_signed(6, |s, sign| {
        let l1 = linear_form(&a[s[0]], &a[s[1]]);
        let l2 = linear_form(&a[s[2]], &b[s[2]]);
        let l3 = linear_form(&b[s[3]], &b[s[4]]);
        // expand the product of three linear forms
        for i in 0..3 {
            if l1[i].is_zero() {
                continue;
            }
            for j in 0..3 {
                if l2[j].is_zero() {
                    continue;
                }
                for k in 0..3 {
                    if l3[k].is_zero() {
                        continue;
                    }
                    let mut e = [0u32; 3];
                    e[i] += 1;
                    e[j] += 1;
                    e[k] += 1;
                    let c = &l1[i] * &l2[j] * &l3[k];
                    let c = if sign < 0 { -c } else { c };
                    let entry = acc_coeffs
                        .entry((e[0], e[1], e[2]))
                        .or_insert_with(Rat::zero);
                    *entry += c;
                }
            }
        }
    });
    let quarter = -Rat::new(1.into(), 4.into());
    MultiPoly::from_terms(
        &vars,
        acc_coeffs
            .into_iter()
            .map(|((i, j, k), c)| (vec![i, j, k], c * &quarter)),
    )
}

/// Returns the infinity cubic `H3` and asserts that the graded-part route
/// and the permutation-sum route agree exactly after normalization.
pub fn infinity_cubic(surface: &CubicSurface) -> Result<MultiPoly> {
    let by_grading = &surface.h3;
    let by_sum = h3_permutation_sum(&surface.arch, &surface.orientation);
    if by_sum.is_zero() != by_grading.is_zero() {
        return Err(Error::Internal(
            "H3 routes disagree on vanishing".into(),
        ));
    }
    if !by_grading.is_zero()
        && by_grading.normalize_projective()? != by_sum.normalize_projective()?
    {
        return Err(Error::Internal(
            "graded-part H3 differs from the permutation-sum H3".into(),
        ));
    }
    Ok(by_grading.clone())
}

/// The signed hexagon bracket sum over projected base/platform hexagons.
/// `alpha`, `beta` are planar (2D) rational points; brackets are 2x2
/// determinants.
pub fn hexagon_sum(alpha: &[[Rat; 2]; 6], beta: &[[Rat; 2]; 6]) -> Rat {
    let br = |u: &[Rat; 2], v: &[Rat; 2]| -> Rat { &u[0] * &v[1] - &u[1] * &v[0] };
    let mut acc = Rat::zero();
    perm::for_each_signed(6, |s, sign| {
        let t = br(&alpha[s[0]], &alpha[s[1]])
            * br(&beta[s[2]], &beta[s[3]])
            * br(&alpha[s[4]], &beta[s[4]]);
        if sign < 0 {
            acc -= t;
        } else {
            acc += t;
        }
    });
    acc
}

/// Deterministic rational orthogonal basis of the plane orthogonal to `p`:
/// Gram-Schmidt on the two coordinate axes least aligned with `p`.
pub fn projection_basis(p: &Vec3r) -> Result<(Vec3r, Vec3r)> {
    if crate::geom::is_zero3(p) {
        return Err(Error::ZeroDirection);
    }
    // pick the two axes with smallest |p_i|, ties by index
    let mut idx = [0usize, 1, 2];
    idx.sort_by(|&a, &b| {
        let na = p[a].clone() * p[a].clone();
        let nb = p[b].clone() * p[b].clone();
        na.cmp(&nb).then(a.cmp(&b))
    });
    let pp = dot3(p, p);
    let axis = |i: usize| -> Vec3r {
        let mut v = [Rat::zero(), Rat::zero(), Rat::zero()];
        v[i] = Rat::from(num::BigInt::from(1));
        v
    };
    let e1_raw = axis(idx[0]);
    let e1 = sub3(&e1_raw, &scale3(p, &(p[idx[0]].clone() / &pp)));
    let e2_raw = axis(idx[1]);
    let mut e2 = sub3(&e2_raw, &scale3(p, &(p[idx[1]].clone() / &pp)));
    let e1e1 = dot3(&e1, &e1);
    e2 = sub3(&e2, &scale3(&e1, &(dot3(&e2, &e1) / &e1e1)));
    Ok((e1, e2))
}

/// Hexagon criterion for a singularity at infinity in direction `p`:
/// projects the base and (rotated) platform joints onto the plane
/// orthogonal to `p` and evaluates the bracket sum. The value vanishes
/// exactly when `H3(p) = 0`, up to a nonzero basis-dependent factor.
pub fn hexagon_criterion(arch: &Architecture, r: &Orientation, p: &Vec3r) -> Result<Rat> {
    let (e1, e2) = projection_basis(p)?;
    let b = arch.rotated_platform(r);
    let proj = |v: &Vec3r| -> [Rat; 2] { [dot3(v, &e1), dot3(v, &e2)] };
    let alpha: [[Rat; 2]; 6] = std::array::from_fn(|i| proj(arch.a(i)));
    let beta: [[Rat; 2]; 6] = std::array::from_fn(|i| proj(&b[i]));
    Ok(hexagon_sum(&alpha, &beta))
}

/// Pointwise singularity test with relative tolerance
/// `tol * (1 + |coeffs| * |P|^3)`.
pub fn is_singular(surface: &CubicSurface, p: &[f64; 3], tol: f64) -> (bool, f64) {
    let residual = surface.eval_f64(p);
    let scale = 1.0 + surface.f.coeff_norm() * numeric::norm3f(p).powi(3);
    (residual.abs() <= tol * scale, residual)
}

/// One sampled point of the smoothness probe.
#[derive(Clone, Debug)]
pub struct ProbeSample {
    pub point: [f64; 3],
    pub grad_norm: f64,
    pub sigma5: f64,
    pub rank_is_5: bool,
}

/// Numeric smoothness probe report.
#[derive(Clone, Debug)]
pub struct SmoothnessReport {
    pub samples: Vec<ProbeSample>,
    pub min_grad_norm: f64,
    pub min_sigma5: f64,
    pub possibly_singular: bool,
}

/// Samples points on `F = 0` by slicing with random lines and root-finding,
/// then checks the gradient norm and the corank-1 property of `Jac`.
pub fn smoothness_probe(
    surface: &CubicSurface,
    n_samples: usize,
    seed: u64,
) -> SmoothnessReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(n_samples);
    let grads: [MultiPoly; 3] = std::array::from_fn(|k| surface.f.derivative(k));
    let jac = jacobian_matrix(&surface.arch, &surface.orientation);
    let coeff_scale = surface.f.coeff_norm();
    let mut guard = 0;
    while samples.len() < n_samples && guard < 200 * n_samples.max(1) {
        guard += 1;
        let p0: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-10.0..10.0));
        let d: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        if numeric::norm3f(&d) < 1e-3 {
            continue;
        }
        // cubic in t by interpolation at 4 nodes
        let eval = |t: f64| -> f64 {
            surface.eval_f64(&[p0[0] + t * d[0], p0[1] + t * d[1], p0[2] + t * d[2]])
        };
        let coeffs = interpolate_cubic(&eval);
        for t in numeric::poly_real_roots(&coeffs, 1e-9) {
            if samples.len() >= n_samples {
                break;
            }
            let mut pt = [p0[0] + t * d[0], p0[1] + t * d[1], p0[2] + t * d[2]];
            // one Newton polish along the gradient
            for _ in 0..3 {
                let fval = surface.eval_f64(&pt);
                let g: [f64; 3] = std::array::from_fn(|k| grads[k].eval_f64(&pt));
                let g2 = numeric::dot3f(&g, &g);
                if g2 == 0.0 {
                    break;
                }
                for k in 0..3 {
                    pt[k] -= fval * g[k] / g2;
                }
            }
            let fval = surface.eval_f64(&pt);
            let scale = 1.0 + coeff_scale * numeric::norm3f(&pt).powi(3);
            if fval.abs() > 1e-9 * scale {
                continue;
            }
            let g: [f64; 3] = std::array::from_fn(|k| grads[k].eval_f64(&pt));
            let grad_norm = numeric::norm3f(&g) / (1.0 + coeff_scale * numeric::norm3f(&pt).powi(2));
            let mut m = [[0.0f64; 6]; 6];
            for i in 0..6 {
                for j in 0..6 {
                    m[i][j] = jac.at(i, j).eval_f64(&pt);
                }
            }
            let sv = numeric::singular_values6(&m);
            let rank_is_5 = sv[4] > 1e-7 * sv[0].max(1.0) && sv[5] < 1e-6 * sv[0].max(1.0);
            samples.push(ProbeSample {
                point: pt,
                grad_norm,
                sigma5: sv[4],
                rank_is_5,
            });
        }
    }
    let min_grad_norm = samples
        .iter()
        .map(|s| s.grad_norm)
        .fold(f64::INFINITY, f64::min);
    let min_sigma5 = samples
        .iter()
        .map(|s| s.sigma5)
        .fold(f64::INFINITY, f64::min);
    let possibly_singular = samples
        .iter()
        .any(|s| !s.rank_is_5 || s.grad_norm < 1e-7);
    SmoothnessReport {
        samples,
        min_grad_norm,
        min_sigma5,
        possibly_singular,
    }
}

fn interpolate_cubic(eval: &dyn Fn(f64) -> f64) -> [f64; 4] {
    // values at t = 0, 1, -1, 2 determine a cubic exactly
    let f0 = eval(0.0);
    let f1 = eval(1.0);
    let fm1 = eval(-1.0);
    let f2 = eval(2.0);
    let c0 = f0;
    // f1 = c0 + c1 + c2 + c3 ; fm1 = c0 - c1 + c2 - c3 ; f2 = c0 + 2c1 + 4c2 + 8c3
    let s = f1 + fm1 - 2.0 * c0; // = 2 c2
    let c2 = s / 2.0;
    let d = f1 - fm1; // = 2 c1 + 2 c3
    let c3 = (f2 - c0 - 4.0 * c2 - d) / 6.0;
    let c1 = d / 2.0 - c3;
    [c0, c1, c2, c3]
}

/// Evaluates `H3` at a rational direction, exactly.
pub fn h3_at(surface: &CubicSurface, p: &Vec3r) -> Rat {
    surface.h3.eval_rat(p)
}

/// Helper for numeric sampling of directions on the infinity cubic.
pub fn h3_eval_f64(surface: &CubicSurface, p: &[f64; 3]) -> f64 {
    surface.h3.eval_f64(p)
}

/// Converts a rational direction to f64, for reports.
pub fn dir_to_f64(p: &Vec3r) -> [f64; 3] {
    [
        p[0].to_f64().unwrap(),
        p[1].to_f64().unwrap(),
        p[2].to_f64().unwrap(),
    ]
}
