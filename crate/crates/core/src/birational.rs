//! The inverse direction of the twist correspondence: recovering the pose
//! from a reciprocal twist by a 3x3 Cramer system, the induced exact
//! rational parametrization of the singularity surface, and roundtrip
//! diagnostics between the surface and the quadric.

use std::collections::HashMap;

use num::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::exactpoly::{rat_to_string, MultiPoly, Rat, VarSet};
use crate::geom::{cross3, dot3, mixed3, solve3, Vec3r};
use crate::numeric;
use crate::platform::{Architecture, Orientation};
use crate::quadric::{parametrize_quadric, quadric_model, QuadricModel, QuadricParam};
use crate::singularity::{cubic_surface, smoothness_probe};
use crate::twistmap::twist_bundle;
use crate::Result;

/// Pose of a twist on the quadric: the unique solution of
/// `V . P = 0`,
/// `(Omega x A_i) . P = -V . C_i - [Omega, A_i, C_i]` for the first two
/// basis joints `i`. The Cramer determinant is
/// `[V, Omega x A_i, Omega x A_j]`; its zeros are the indeterminacy locus.
pub fn pos(
    model: &QuadricModel,
    arch: &Architecture,
    r: &Orientation,
    omega: &Vec3r,
    v: &Vec3r,
) -> Result<Vec3r> {
    let twist: [Rat; 6] = std::array::from_fn(|i| {
        if i < 3 {
            omega[i].clone()
        } else {
            v[i - 3].clone()
        }
    });
    if !model.contains(&twist) {
        let lin = model.eval_linear(&twist);
        let quad = model.eval_quad(&twist);
        return Err(Error::NotOnQuadric([
            lin[0].to_f64().unwrap_or(f64::NAN),
            lin[1].to_f64().unwrap_or(f64::NAN),
            quad.to_f64().unwrap_or(f64::NAN),
        ]));
    }
    let c = arch.limb_vectors(r);
    let (i, j) = (model.dependency().basis[0], model.dependency().basis[1]);
    let rows = [
        v.clone(),
        cross3(omega, arch.a(i)),
        cross3(omega, arch.a(j)),
    ];
    let rhs = [
        Rat::zero(),
        -(dot3(v, &c[i]) + mixed3(omega, arch.a(i), &c[i])),
        -(dot3(v, &c[j]) + mixed3(omega, arch.a(j), &c[j])),
    ];
    solve3(&rows, &rhs).ok_or(Error::PosIndeterminacy)
}

/// Numeric Cramer inverse for a floating twist `(omega | v)`. Returns the
/// pose and the (scale-normalized) Cramer determinant.
pub fn pos_f64(
    model: &QuadricModel,
    arch: &Architecture,
    r: &Orientation,
    twist: &[f64; 6],
) -> Result<([f64; 3], f64)> {
    let omega = [twist[0], twist[1], twist[2]];
    let v = [twist[3], twist[4], twist[5]];
    let c = arch.limb_vectors(r);
    let (i, j) = (model.dependency().basis[0], model.dependency().basis[1]);
    let ai = crate::geom::to_f64_3(arch.a(i));
    let aj = crate::geom::to_f64_3(arch.a(j));
    let ci = crate::geom::to_f64_3(&c[i]);
    let cj = crate::geom::to_f64_3(&c[j]);
    let rows = [v, numeric::cross3f(&omega, &ai), numeric::cross3f(&omega, &aj)];
    let rhs = [
        0.0,
        -(numeric::dot3f(&v, &ci) + numeric::dot3f(&numeric::cross3f(&omega, &ai), &ci)),
        -(numeric::dot3f(&v, &cj) + numeric::dot3f(&numeric::cross3f(&omega, &aj), &cj)),
    ];
    let det = numeric::dot3f(&numeric::cross3f(&rows[0], &rows[1]), &rows[2]);
    let scale: f64 = rows.iter().map(numeric::norm3f).product();
    if scale == 0.0 || det.abs() < 1e-13 * scale {
        return Err(Error::PosIndeterminacy);
    }
    let mut p = [0.0; 3];
    for k in 0..3 {
        let mut m = rows;
        for r_ in 0..3 {
            m[r_][k] = rhs[r_];
        }
        p[k] = numeric::dot3f(&numeric::cross3f(&m[0], &m[1]), &m[2]) / det;
    }
    Ok((p, det / scale))
}

/// Exact rational parametrization `(s, t) -> P` of the singularity surface:
/// the quadric parametrization composed with the Cramer inverse, as a
/// triple of polynomial numerators over a common denominator.
#[derive(Clone, Debug)]
pub struct SurfaceParam {
    num: [MultiPoly; 3],
    den: MultiPoly,
    twist: [MultiPoly; 6],
}

impl SurfaceParam {
    /// Numerators of `(x, y, z)` as polynomials in `s, t`.
    pub fn numerators(&self) -> &[MultiPoly; 3] {
        &self.num
    }

    /// The common denominator (the Cramer determinant).
    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    /// The twist components `(omega | v)` as polynomials in `s, t`.
    pub fn twist_polys(&self) -> &[MultiPoly; 6] {
        &self.twist
    }

    /// Exact evaluation; `None` on the indeterminacy curve `den = 0`.
    pub fn eval(&self, s: &Rat, t: &Rat) -> Option<Vec3r> {
        let pt = [s.clone(), t.clone()];
        let d = self.den.eval_rat(&pt);
        if d.is_zero() {
            return None;
        }
        Some(std::array::from_fn(|k| self.num[k].eval_rat(&pt) / &d))
    }

    pub fn eval_f64(&self, s: f64, t: f64) -> Option<[f64; 3]> {
        let d = self.den.eval_f64(&[s, t]);
        if d == 0.0 {
            return None;
        }
        Some(std::array::from_fn(|k| self.num[k].eval_f64(&[s, t]) / d))
    }
}

/// Builds the symbolic parametrization for one orientation.
pub fn parametrize_surface(
    arch: &Architecture,
    r: &Orientation,
    model: &QuadricModel,
    param: &QuadricParam,
) -> Result<SurfaceParam> {
    let vars = VarSet::new(["s", "t"]);
    let s = MultiPoly::var(&vars, 0);
    let t = MultiPoly::var(&vars, 1);
    // twist components as degree-2 polynomials in (s, t): clear the
    // evaluation of `param.point` into symbols by rebuilding the same
    // second-intersection expression over Q[s, t]
    let twist = param.symbolic_point(&s, &t);
    let omega: [&MultiPoly; 3] = std::array::from_fn(|k| &twist[k]);
    let v: [&MultiPoly; 3] = std::array::from_fn(|k| &twist[3 + k]);
    let c = arch.limb_vectors(r);
    let (bi, bj) = (model.dependency().basis[0], model.dependency().basis[1]);
    let const3 = |w: &Vec3r| crate::geom::pvec_const(&vars, w);
    let cross_p = |a: &[&MultiPoly; 3], b: &crate::geom::PolyVec3| -> crate::geom::PolyVec3 {
        crate::geom::pvec_cross(&[a[0].clone(), a[1].clone(), a[2].clone()], b)
    };
    let dot_p = |a: &[&MultiPoly; 3], b: &crate::geom::PolyVec3| -> MultiPoly {
        crate::geom::pvec_dot(&[a[0].clone(), a[1].clone(), a[2].clone()], b)
    };
    let rows: [crate::geom::PolyVec3; 3] = [
        [v[0].clone(), v[1].clone(), v[2].clone()],
        cross_p(&omega, &const3(arch.a(bi))),
        cross_p(&omega, &const3(arch.a(bj))),
    ];
    let mixed_rows = |m: &[crate::geom::PolyVec3; 3]| -> MultiPoly {
        crate::geom::pvec_mixed(
            &[m[0][0].clone(), m[1][0].clone(), m[2][0].clone()],
            &[m[0][1].clone(), m[1][1].clone(), m[2][1].clone()],
            &[m[0][2].clone(), m[1][2].clone(), m[2][2].clone()],
        )
    };
    let rhs_of = |idx: usize| -> MultiPoly {
        let ci = const3(&c[idx]);
        let ai = const3(arch.a(idx));
        dot_p(&v, &ci)
            .add(&crate::geom::pvec_mixed(
                &[omega[0].clone(), omega[1].clone(), omega[2].clone()],
                &ai,
                &ci,
            ))
            .neg()
    };
    let rhs = [MultiPoly::zero(&vars), rhs_of(bi), rhs_of(bj)];
    let den = mixed_rows(&rows);
    if den.is_zero() {
        return Err(Error::PosIndeterminacy);
    }
    let num: [MultiPoly; 3] = std::array::from_fn(|k| {
        let mut m = rows.clone();
        for r_ in 0..3 {
            m[r_][k] = rhs[r_].clone();
        }
        mixed_rows(&m)
    });
    Ok(SurfaceParam { num, den, twist })
}

/// Parametrizations of the singularity locus over `SE(3)`: one symbolic
/// surface parametrization per orientation, cached by Cayley parameters.
pub struct Se3Parametrization {
    arch: Architecture,
    cache: HashMap<String, SurfaceParam>,
}

impl Se3Parametrization {
    pub fn new(arch: Architecture) -> Self {
        Se3Parametrization {
            arch,
            cache: HashMap::new(),
        }
    }

    pub fn architecture(&self) -> &Architecture {
        &self.arch
    }

    /// The parametrization of the singularity surface for one orientation.
    pub fn for_orientation(&mut self, r: &Orientation) -> Result<&SurfaceParam> {
        let (p, q, s) = r.cayley_params();
        let key = format!(
            "{}|{}|{}",
            rat_to_string(&p),
            rat_to_string(&q),
            rat_to_string(&s)
        );
        if !self.cache.contains_key(&key) {
            let bundle = twist_bundle(&self.arch, r)?;
            let model = quadric_model(&self.arch, r, &bundle)?;
            let param = parametrize_quadric(&model)?;
            let sp = parametrize_surface(&self.arch, r, &model, &param)?;
            self.cache.insert(key.clone(), sp);
        }
        Ok(&self.cache[&key])
    }
}

/// Roundtrip diagnostics between the surface and the quadric.
#[derive(Clone, Debug)]
pub struct RoundtripReport {
    /// Number of exact rational poses produced by the parametrization.
    pub exact_samples: usize,
    /// How many of those satisfied `F = 0` exactly after the roundtrip.
    pub exact_on_surface: usize,
    /// How many reproduced the twist projectively, exactly.
    pub exact_twist_match: usize,
    /// Number of floating samples on the surface.
    pub numeric_samples: usize,
    /// Worst relative pose error over `pos(rec(P))`.
    pub max_pose_error: f64,
    /// Worst twist collinearity residual over `rec(pos(T))`.
    pub max_twist_residual: f64,
}

/// Runs both roundtrips: quadric -> surface -> quadric with exact rational
/// samples from the parametrization, and surface -> quadric -> surface with
/// floating samples from line slicing.
pub fn roundtrip_report(
    arch: &Architecture,
    r: &Orientation,
    exact_samples: usize,
    numeric_samples: usize,
    seed: u64,
) -> Result<RoundtripReport> {
    let surface = cubic_surface(arch, r)?;
    let bundle = twist_bundle(arch, r)?;
    let model = quadric_model(arch, r, &bundle)?;
    let param = parametrize_quadric(&model)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut exact_done = 0;
    let mut exact_on_surface = 0;
    let mut exact_twist_match = 0;
    let mut max_twist_residual = 0.0f64;
    let mut guard = 0;
    while exact_done < exact_samples && guard < 20 * exact_samples.max(1) {
        guard += 1;
        let s = crate::exactpoly::rat(rng.gen_range(-100i64..=100), rng.gen_range(1i64..=9));
        let t = crate::exactpoly::rat(rng.gen_range(-100i64..=100), rng.gen_range(1i64..=9));
        let twist = param.point(&s, &t)?;
        let omega: Vec3r = std::array::from_fn(|k| twist[k].clone());
        let v: Vec3r = std::array::from_fn(|k| twist[3 + k].clone());
        let p = match pos(&model, arch, r, &omega, &v) {
            Ok(p) => p,
            Err(Error::PosIndeterminacy) => continue,
            Err(e) => return Err(e),
        };
        exact_done += 1;
        if surface.eval_rat(&p).is_zero() {
            exact_on_surface += 1;
        }
        // back through the twist map: exactly proportional?
        let (omega2, v2) = bundle.eval_rat(&p);
        let a: Vec<Rat> = omega.iter().chain(v.iter()).cloned().collect();
        let b: Vec<Rat> = omega2.iter().chain(v2.iter()).cloned().collect();
        if let Some(k) = a.iter().position(|x| !x.is_zero()) {
            if !b[k].is_zero() {
                let lambda = &b[k] / &a[k];
                if a.iter().zip(&b).all(|(x, y)| &(x * &lambda) == y) {
                    exact_twist_match += 1;
                }
            }
        }
        // normalize exactly before converting: raw coordinates can
        // overflow f64
        let unit = |w: &[Rat]| -> [f64; 6] {
            let m = w
                .iter()
                .map(num::Signed::abs)
                .max()
                .unwrap_or_else(Rat::zero);
            if m.is_zero() {
                return [0.0; 6];
            }
            std::array::from_fn(|i| (&w[i] / &m).to_f64().unwrap_or(f64::NAN))
        };
        max_twist_residual =
            max_twist_residual.max(numeric::collinearity_residual(&unit(&a), &unit(&b)));
    }

    let probe = smoothness_probe(&surface, numeric_samples, seed ^ 0x5eed);
    let mut max_pose_error = 0.0f64;
    let mut numeric_done = 0;
    for sample in &probe.samples {
        let twist = bundle.eval_f64(&sample.point);
        let Ok((p2, _)) = pos_f64(&model, arch, r, &twist) else {
            continue;
        };
        numeric_done += 1;
        let err = numeric::norm3f(&numeric::sub3f(&sample.point, &p2))
            / (1.0 + numeric::norm3f(&sample.point));
        max_pose_error = max_pose_error.max(err);
    }
    Ok(RoundtripReport {
        exact_samples: exact_done,
        exact_on_surface,
        exact_twist_match,
        numeric_samples: numeric_done,
        max_pose_error,
        max_twist_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::platform::case_study;
    use crate::singularity::CubicSurface;
    use crate::twistmap::TwistBundle;

    fn setup() -> (
        Architecture,
        Orientation,
        CubicSurface,
        TwistBundle,
        QuadricModel,
        QuadricParam,
    ) {
        let (arch, r) = case_study();
        let surface = cubic_surface(&arch, &r).unwrap();
        let bundle = twist_bundle(&arch, &r).unwrap();
        let model = quadric_model(&arch, &r, &bundle).unwrap();
        let param = parametrize_quadric(&model).unwrap();
        (arch, r, surface, bundle, model, param)
    }

    #[test]
    fn pos_of_parametrized_twists_lies_on_surface() {
        let (arch, r, surface, _, model, param) = setup();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut done = 0;
        while done < 20 {
            let s = crate::exactpoly::rat(rng.gen_range(-40i64..=40), rng.gen_range(1i64..=5));
            let t = crate::exactpoly::rat(rng.gen_range(-40i64..=40), rng.gen_range(1i64..=5));
            let twist = param.point(&s, &t).unwrap();
            let omega: Vec3r = std::array::from_fn(|k| twist[k].clone());
            let v: Vec3r = std::array::from_fn(|k| twist[3 + k].clone());
            let p = match pos(&model, &arch, &r, &omega, &v) {
                Ok(p) => p,
                Err(Error::PosIndeterminacy) => continue,
                Err(e) => panic!("{e}"),
            };
            assert!(surface.eval_rat(&p).is_zero(), "F(Pos(T)) != 0");
            done += 1;
        }
    }

    #[test]
    fn pos_rejects_off_quadric_twist() {
        let (arch, r, _, _, model, _) = setup();
        use crate::exactpoly::rat_int;
        let omega = [rat_int(1), rat_int(0), rat_int(0)];
        let v = [rat_int(0), rat_int(1), rat_int(0)];
        assert!(matches!(
            pos(&model, &arch, &r, &omega, &v),
            Err(Error::NotOnQuadric(_))
        ));
    }

    #[test]
    fn pos_inverts_rec_at_origin_neighbors() {
        // Rec followed by Pos is the identity on exact surface points
        let (arch, r, surface, bundle, model, _) = setup();
        let origin = crate::geom::vec3_zero();
        let (omega, v) = bundle.eval_rat(&origin);
        let p = pos(&model, &arch, &r, &omega, &v).unwrap();
        assert_eq!(p, origin);
        let _ = surface;
    }

    #[test]
    fn symbolic_parametrization_satisfies_surface_equation() {
        let (arch, r, surface, _, model, param) = setup();
        let sp = parametrize_surface(&arch, &r, &model, &param).unwrap();
        // F_h(den, n1, n2, n3) must vanish identically
        let images = vec![
            sp.denominator().clone(),
            sp.numerators()[0].clone(),
            sp.numerators()[1].clone(),
            sp.numerators()[2].clone(),
        ];
        let composed = surface.f_h().substitute(&images);
        assert!(composed.is_zero());
        // evaluation agrees with the exact pointwise route
        let s = crate::exactpoly::rat(7, 3);
        let t = crate::exactpoly::rat(-4, 5);
        if let Some(p) = sp.eval(&s, &t) {
            assert!(surface.eval_rat(&p).is_zero());
            let twist = param.point(&s, &t).unwrap();
            let omega: Vec3r = std::array::from_fn(|k| twist[k].clone());
            let v: Vec3r = std::array::from_fn(|k| twist[3 + k].clone());
            let q = pos(&model, &arch, &r, &omega, &v).unwrap();
            assert_eq!(p, q);
        } else {
            panic!("chosen chart point is on the indeterminacy curve");
        }
    }

    #[test]
    fn se3_cache_reuses_parametrization() {
        let (arch, r) = case_study();
        let mut se3 = Se3Parametrization::new(arch);
        let d1 = se3.for_orientation(&r).unwrap().denominator().clone();
        let d2 = se3.for_orientation(&r).unwrap().denominator().clone();
        assert_eq!(d1, d2);
        // a different orientation gives a different surface
        let r2 = Orientation::from_cayley(
            crate::exactpoly::rat(1, 2),
            crate::exactpoly::rat_int(0),
            crate::exactpoly::rat_int(0),
        );
        assert!(se3.for_orientation(&r2).is_ok());
    }

    #[test]
    fn roundtrips_are_tight() {
        let (arch, r) = case_study();
        let report = roundtrip_report(&arch, &r, 30, 20, 77).unwrap();
        assert_eq!(report.exact_samples, 30);
        assert_eq!(report.exact_on_surface, 30);
        assert_eq!(report.exact_twist_match, 30);
        assert!(report.numeric_samples >= 15);
        assert!(report.max_pose_error < 1e-8, "{}", report.max_pose_error);
        assert!(report.max_twist_residual < 1e-8);
    }

    #[test]
    fn numeric_pos_matches_exact_pos() {
        let (arch, r, _, _, model, param) = setup();
        let s = crate::exactpoly::rat(5, 2);
        let t = crate::exactpoly::rat(-3, 7);
        let twist = param.point(&s, &t).unwrap();
        let omega: Vec3r = std::array::from_fn(|k| twist[k].clone());
        let v: Vec3r = std::array::from_fn(|k| twist[3 + k].clone());
        let exact = pos(&model, &arch, &r, &omega, &v).unwrap();
        let tf: [f64; 6] = std::array::from_fn(|i| twist[i].to_f64().unwrap());
        let (approx, det) = pos_f64(&model, &arch, &r, &tf).unwrap();
        assert!(det.abs() > 0.0);
        for k in 0..3 {
            assert!((approx[k] - exact[k].to_f64().unwrap()).abs() < 1e-8);
        }
    }
}
