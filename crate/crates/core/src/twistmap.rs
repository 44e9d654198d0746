//! The reciprocal-twist map: for each pose on the singularity surface, the
//! one-dimensional space of twists reciprocal to all six limb lines.
//!
//! The quadratic formulas come from summing the cofactors of the 6x6 limb
//! matrix by columns; the sum is written as a signed sum over the symmetric
//! group, where the degree-3 terms cancel.

use num::{ToPrimitive, Zero};

use crate::error::Error;
use crate::exactpoly::{rat, MultiPoly, PolyMatrix, Rat, VarSet};
use crate::geom::{
    cross3, is_zero3, pvec_add, pvec_const, pvec_cross, pvec_mixed, PolyVec3, Vec3r,
};
use crate::perm;
use crate::platform::{Architecture, Orientation};
use crate::singularity::{jacobian_matrix, CubicSurface};
use crate::Result;

/// Quadratic polynomial formulas `(omega(P) | v(P))` for the reciprocal
/// twist along the singularity surface, in the pose variables `x, y, z`.
#[derive(Clone, Debug)]
pub struct TwistBundle {
    omega: [MultiPoly; 3],
    v: [MultiPoly; 3],
}

impl TwistBundle {
    /// Angular part `Omega` (three quadratics in the pose).
    pub fn omega(&self) -> &[MultiPoly; 3] {
        &self.omega
    }

    /// Translational part `V` (three quadratics in the pose).
    pub fn v(&self) -> &[MultiPoly; 3] {
        &self.v
    }

    /// All six components in reporting order `(omega | v)`.
    pub fn components(&self) -> [&MultiPoly; 6] {
        [
            &self.omega[0],
            &self.omega[1],
            &self.omega[2],
            &self.v[0],
            &self.v[1],
            &self.v[2],
        ]
    }

    /// Exact evaluation: `(omega, v)` at a rational pose.
    pub fn eval_rat(&self, p: &Vec3r) -> (Vec3r, Vec3r) {
        (
            std::array::from_fn(|k| self.omega[k].eval_rat(p)),
            std::array::from_fn(|k| self.v[k].eval_rat(p)),
        )
    }

    /// Numeric evaluation in reporting order `(omega | v)`.
    pub fn eval_f64(&self, p: &[f64; 3]) -> [f64; 6] {
        let c = self.components();
        std::array::from_fn(|k| c[k].eval_f64(p))
    }
}

/// Builds the quadratic twist formulas by the signed sum over all 720
/// permutations; the translational part is
/// `(1/12) sum e(s) (C_{s2}+P) x (C_{s3}+P) [M_{s4}, M_{s5}, M_{s6}]`
/// and the angular part is
/// `(1/12) sum e(s) [C_{s1}+P, C_{s2}+P, C_{s3}+P] (M_{s4} x M_{s5})`
/// with `M_i = A_i x (C_i + P)`. Degree-3 terms cancel in the sums.
pub fn twist_bundle(arch: &Architecture, r: &Orientation) -> Result<TwistBundle> {
    let vars = VarSet::xyz();
    let c = arch.limb_vectors(r);
    let p: PolyVec3 = std::array::from_fn(|k| MultiPoly::var(&vars, k));
    let f: Vec<PolyVec3> = (0..6)
        .map(|i| pvec_add(&p, &pvec_const(&vars, &c[i])))
        .collect();
    let m: Vec<PolyVec3> = (0..6)
        .map(|i| pvec_cross(&pvec_const(&vars, arch.a(i)), &f[i]))
        .collect();

    // pair/triple caches, keyed by sorted indices with an explicit sign
    let mut cross_f = vec![vec![None::<PolyVec3>; 6]; 6];
    let mut cross_m = vec![vec![None::<PolyVec3>; 6]; 6];
    for i in 0..6 {
        for j in (i + 1)..6 {
            cross_f[i][j] = Some(pvec_cross(&f[i], &f[j]));
            cross_m[i][j] = Some(pvec_cross(&m[i], &m[j]));
        }
    }
    let mut mixed_f = vec![vec![vec![None::<MultiPoly>; 6]; 6]; 6];
    let mut mixed_m = vec![vec![vec![None::<MultiPoly>; 6]; 6]; 6];
    for i in 0..6 {
        for j in (i + 1)..6 {
            for k in (j + 1)..6 {
                mixed_f[i][j][k] = Some(pvec_mixed(&f[i], &f[j], &f[k]));
                mixed_m[i][j][k] = Some(pvec_mixed(&m[i], &m[j], &m[k]));
            }
        }
    }
    // signed lookup for an arbitrary index order
    let pair = |table: &Vec<Vec<Option<PolyVec3>>>, i: usize, j: usize| -> (PolyVec3, bool) {
        if i < j {
            (table[i][j].clone().unwrap(), false)
        } else {
            (table[j][i].clone().unwrap(), true)
        }
    };
    let triple = |table: &Vec<Vec<Vec<Option<MultiPoly>>>>, mut a: usize, mut b: usize, mut c: usize| -> (MultiPoly, bool) {
        let mut neg = false;
        if a > b {
            std::mem::swap(&mut a, &mut b);
            neg = !neg;
        }
        if b > c {
            std::mem::swap(&mut b, &mut c);
            neg = !neg;
        }
        if a > b {
            std::mem::swap(&mut a, &mut b);
            neg = !neg;
        }
        (table[a][b][c].clone().unwrap(), neg)
    };

    let mut t1: PolyVec3 = std::array::from_fn(|_| MultiPoly::zero(&vars));
    let mut t2: PolyVec3 = std::array::from_fn(|_| MultiPoly::zero(&vars));
    perm::for_each_signed(6, |s, sign| {
        // translational part
        let (cf, n1) = pair(&cross_f, s[1], s[2]);
        let (mm, n2) = triple(&mixed_m, s[3], s[4], s[5]);
        let neg = (sign < 0) ^ n1 ^ n2;
        for k in 0..3 {
            let term = cf[k].mul(&mm);
            t1[k] = if neg { t1[k].sub(&term) } else { t1[k].add(&term) };
        }
        // angular part
        let (mf, n3) = triple(&mixed_f, s[0], s[1], s[2]);
        let (cm, n4) = pair(&cross_m, s[3], s[4]);
        let neg = (sign < 0) ^ n3 ^ n4;
        for k in 0..3 {
            let term = mf.mul(&cm[k]);
            t2[k] = if neg { t2[k].sub(&term) } else { t2[k].add(&term) };
        }
    });
    let twelfth = rat(1, 12);
    let v: [MultiPoly; 3] = std::array::from_fn(|k| t1[k].scale(&twelfth));
    let omega: [MultiPoly; 3] = std::array::from_fn(|k| t2[k].scale(&twelfth));
    for q in v.iter().chain(omega.iter()) {
        if q.total_degree() > 2 {
            return Err(Error::Internal(
                "degree-3 terms did not cancel in the twist sum".into(),
            ));
        }
    }
    Ok(TwistBundle { omega, v })
}

/// Cofactor row `i` of the limb matrix as a symbolic twist `(omega | v)`;
/// these are the degree-3 formulas valid wherever the row is nonzero.
pub fn twist_cofactor_row(
    jac: &PolyMatrix,
    i: usize,
) -> Result<([MultiPoly; 3], [MultiPoly; 3])> {
    if i >= 6 {
        return Err(Error::IndexOutOfRange(i, 6));
    }
    let mut v: Vec<MultiPoly> = Vec::with_capacity(3);
    let mut omega: Vec<MultiPoly> = Vec::with_capacity(3);
    for j in 0..3 {
        v.push(jac.cofactor(i, j)?);
    }
    for j in 3..6 {
        omega.push(jac.cofactor(i, j)?);
    }
    Ok((
        omega.try_into().map_err(|_| Error::Internal("arity".into()))?,
        v.try_into().map_err(|_| Error::Internal("arity".into()))?,
    ))
}

/// Determinant of a square rational matrix by cofactor expansion.
fn det_rat(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Rat::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rat>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let t = &m[0][j] * det_rat(&minor);
        if j % 2 == 0 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    acc
}

/// Reciprocal twist from the cofactor rows of the limb matrix evaluated at
/// an exact pose: returns the nonzero row of the adjugate with the largest
/// norm, as `(omega, v)`. Errors with `RankDrop` when every row vanishes.
pub fn adjugate_twist(
    arch: &Architecture,
    r: &Orientation,
    p: &Vec3r,
) -> Result<(Vec3r, Vec3r)> {
    let screws = crate::platform::limb_screws(arch, r, p);
    let rows: Vec<Vec<Rat>> = screws
        .iter()
        .map(|s| {
            s.direction
                .iter()
                .chain(s.moment.iter())
                .cloned()
                .collect()
        })
        .collect();
    let mut best: Option<([Rat; 6], f64)> = None;
    for i in 0..6 {
        let mut cof = [(); 6].map(|_| Rat::zero());
        for j in 0..6 {
            let minor: Vec<Vec<Rat>> = rows
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|(k, _)| *k != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let d = det_rat(&minor);
            cof[j] = if (i + j) % 2 == 0 { d } else { -d };
        }
        if cof.iter().all(Rat::is_zero) {
            continue;
        }
        let norm: f64 = cof
            .iter()
            .map(|c| c.to_f64().map(|x| x * x).unwrap_or(f64::INFINITY))
            .sum();
        if best.as_ref().map_or(true, |(_, n)| norm > *n) {
            best = Some((cof, norm));
        }
    }
    let (cof, _) = best.ok_or(Error::RankDrop)?;
    let v: Vec3r = std::array::from_fn(|k| cof[k].clone());
    let omega: Vec3r = std::array::from_fn(|k| cof[3 + k].clone());
    Ok((omega, v))
}

/// Reciprocal twist at an exact rational pose on the surface. Evaluates the
/// quadratic formulas; if they all vanish (the base locus), falls back to
/// the cofactor rows. Errors when the pose is off the surface or when the
/// limb matrix drops below rank 5.
pub fn rec(surface: &CubicSurface, bundle: &TwistBundle, p: &Vec3r) -> Result<(Vec3r, Vec3r)> {
    let residual = surface.eval_rat(p);
    if !residual.is_zero() {
        return Err(Error::NotOnSurface(residual.to_f64().unwrap_or(f64::NAN)));
    }
    let (omega, v) = bundle.eval_rat(p);
    if !is_zero3(&omega) || !is_zero3(&v) {
        return Ok((omega, v));
    }
    adjugate_twist(surface.architecture(), surface.orientation(), p)
}

/// Quadratic twist at infinity: the degree-2 graded parts of the twist
/// formulas. The angular part always factors as a common linear form times
/// the direction `(x, y, z)`.
#[derive(Clone, Debug)]
pub struct InfinityTwist {
    v_inf: [MultiPoly; 3],
    line: MultiPoly,
}

impl InfinityTwist {
    /// Translational part: three quadratics in the direction.
    pub fn v_inf(&self) -> &[MultiPoly; 3] {
        &self.v_inf
    }

    /// The linear form `L` with angular part `L * (x, y, z)`.
    pub fn line(&self) -> &MultiPoly {
        &self.line
    }

    /// Angular part at a direction: `L(d) * d`.
    pub fn omega_at(&self, d: &Vec3r) -> Vec3r {
        let l = self.line.eval_rat(d);
        crate::geom::scale3(d, &l)
    }

    pub fn v_at(&self, d: &Vec3r) -> Vec3r {
        std::array::from_fn(|k| self.v_inf[k].eval_rat(d))
    }
}

/// Extracts the twist at infinity from the quadratic bundle and verifies
/// the factorization of the angular part.
pub fn twist_infinity(bundle: &TwistBundle) -> Result<InfinityTwist> {
    let xyz = [0usize, 1, 2];
    let v_inf: [MultiPoly; 3] = std::array::from_fn(|k| bundle.v[k].graded_part(&xyz, 2));
    let omega_inf: [MultiPoly; 3] = std::array::from_fn(|k| bundle.omega[k].graded_part(&xyz, 2));
    let line = common_linear_factor(&omega_inf, 1)?;
    Ok(InfinityTwist { v_inf, line })
}

/// Finds `g` of degree `deg` with `polys[k] = g * var_k` for `k = 0..3`.
fn common_linear_factor(polys: &[MultiPoly; 3], deg: u32) -> Result<MultiPoly> {
    let vars = polys[0].vars().clone();
    let j = polys
        .iter()
        .position(|p| !p.is_zero())
        .ok_or(Error::ExtensionUndefined)?;
    let g = polys[j]
        .div_exact(&MultiPoly::var(&vars, j))
        .ok_or(Error::ExtensionUndefined)?;
    if g.total_degree() != deg {
        return Err(Error::ExtensionUndefined);
    }
    for (k, p) in polys.iter().enumerate() {
        if *p != g.mul(&MultiPoly::var(&vars, k)) {
            return Err(Error::ExtensionUndefined);
        }
    }
    Ok(g)
}

/// Degree-3 twist at infinity from the last cofactor row: the fallback
/// formulas where the quadratic bundle vanishes identically at infinity.
/// The angular part factors as a common quadratic times the direction.
#[derive(Clone, Debug)]
pub struct CubicInfinityTwist {
    v3: [MultiPoly; 3],
    factor: MultiPoly,
}

impl CubicInfinityTwist {
    pub fn v3(&self) -> &[MultiPoly; 3] {
        &self.v3
    }

    /// The quadratic `Q` with angular part `Q * (x, y, z)`.
    pub fn factor(&self) -> &MultiPoly {
        &self.factor
    }

    pub fn omega_at(&self, d: &Vec3r) -> Vec3r {
        let q = self.factor.eval_rat(d);
        crate::geom::scale3(d, &q)
    }

    pub fn v_at(&self, d: &Vec3r) -> Vec3r {
        std::array::from_fn(|k| self.v3[k].eval_rat(d))
    }
}

/// Builds the cubic fallback from the cofactor row of the sixth limb.
pub fn twist_infinity_fallback(arch: &Architecture, r: &Orientation) -> Result<CubicInfinityTwist> {
    let jac = jacobian_matrix(arch, r);
    let (omega, v) = twist_cofactor_row(&jac, 5)?;
    let xyz = [0usize, 1, 2];
    let v3: [MultiPoly; 3] = std::array::from_fn(|k| v[k].graded_part(&xyz, 3));
    let omega3: [MultiPoly; 3] = std::array::from_fn(|k| omega[k].graded_part(&xyz, 3));
    let factor = common_linear_factor(&omega3, 2)?;
    Ok(CubicInfinityTwist { v3, factor })
}

/// Self-reciprocity form `Omega . V` of the twist bundle: vanishes exactly
/// at poses mapping to self-reciprocal twists.
pub fn self_reciprocity_poly(bundle: &TwistBundle) -> MultiPoly {
    let mut acc = MultiPoly::zero(bundle.v[0].vars());
    for k in 0..3 {
        acc = acc.add(&bundle.omega[k].mul(&bundle.v[k]));
    }
    acc
}

/// A pure-rotation twist (`V` parallel to no translation constraint)
/// represented by its instantaneous screw axis: when `Omega . V = 0` and
/// `Omega != 0`, the twist is a rotation about the line through
/// `Omega x V / |Omega|^2` with direction `Omega`.
pub fn rotation_axis(omega: &Vec3r, v: &Vec3r) -> Result<(Vec3r, Vec3r)> {
    if is_zero3(omega) {
        return Err(Error::ZeroTwist);
    }
    let pitch = crate::geom::dot3(omega, v);
    if !pitch.is_zero() {
        return Err(Error::Internal("twist has nonzero pitch".into()));
    }
    let n2 = crate::geom::dot3(omega, omega);
    let point = crate::geom::scale3(&cross3(omega, v), &n2.recip());
    Ok((point, omega.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;
    use crate::platform::{case_study, limb_screws};
    use crate::singularity::cubic_surface;
    use crate::testutil;

    const CASE_TWIST: [&str; 6] = [
        // omega
        "-53*x^2 + 92*x*y - 108*x*z + 338*x + 248*y - 48*z + 736",
        "-53*x*y + 92*y^2 - 108*y*z - 3*x + 496*y - 300*z + 732",
        "-53*x*z + 92*y*z - 108*z^2 + 127*x - 212*y + 370*z - 266",
        // v
        "-80*x^2 + 55*x*y - 109*x*z + 140*y^2 - 14*y*z - 84*z^2 + 376*x + 774*y + 20*z + 1392",
        "52*x^2 - 131*x*y + 164*x*z + 68*y^2 - 62*y*z + 24*z^2 - 473*x + 78*y - 130*z - 426",
        "156*x^2 - 245*x*y + 180*x*z - 36*y^2 - 102*y*z + 24*z^2 - 663*x - 578*y - 234*z - 1410",
    ];

    fn case_bundle() -> TwistBundle {
        let (arch, r) = case_study();
        twist_bundle(&arch, &r).unwrap()
    }

    /// Scalar `lambda` with `b = lambda * a` across all components, if any.
    fn proportional(a: &[&MultiPoly], b: &[&MultiPoly]) -> Option<Rat> {
        let k = a.iter().position(|p| !p.is_zero())?;
        let (m, c) = a[k].leading()?;
        let lambda = b[k].coeff(&m.0) / c;
        if lambda.is_zero() {
            return None;
        }
        for (p, q) in a.iter().zip(b) {
            if &p.scale(&lambda) != *q {
                return None;
            }
        }
        Some(lambda)
    }

    #[test]
    fn bundle_matches_reference_formulas() {
        let bundle = case_bundle();
        let vars = VarSet::xyz();
        let expect: Vec<MultiPoly> = CASE_TWIST
            .iter()
            .map(|s| parse_poly(&vars, s).unwrap())
            .collect();
        let got = bundle.components();
        let lambda = proportional(&got, &expect.iter().collect::<Vec<_>>())
            .expect("twist formulas should agree up to a common scalar");
        assert!(!lambda.is_zero());
    }

    #[test]
    fn bundle_equals_cofactor_column_sums() {
        let (arch, r) = case_study();
        let bundle = twist_bundle(&arch, &r).unwrap();
        let jac = jacobian_matrix(&arch, &r);
        let vars = jac.vars().clone();
        let mut sums: Vec<MultiPoly> = (0..6).map(|_| MultiPoly::zero(&vars)).collect();
        for i in 0..6 {
            for (j, sum) in sums.iter_mut().enumerate() {
                *sum = sum.add(&jac.cofactor(i, j).unwrap());
            }
        }
        for k in 0..3 {
            assert_eq!(&bundle.v[k], &sums[k]);
            assert_eq!(&bundle.omega[k], &sums[3 + k]);
        }
    }

    #[test]
    fn limb_rows_annihilate_twist_up_to_det() {
        // Jac * (V | Omega) = det(Jac) * (1, ..., 1) as polynomials
        let (arch, r) = case_study();
        let bundle = twist_bundle(&arch, &r).unwrap();
        let jac = jacobian_matrix(&arch, &r);
        let det = jac.det().unwrap();
        for i in 0..6 {
            let mut acc = MultiPoly::zero(jac.vars());
            for j in 0..3 {
                acc = acc.add(&jac.at(i, j).mul(&bundle.v[j]));
                acc = acc.add(&jac.at(i, 3 + j).mul(&bundle.omega[j]));
            }
            assert_eq!(acc, det);
        }
    }

    #[test]
    fn origin_twist_is_reciprocal_to_all_limbs() {
        let (arch, r) = case_study();
        let surface = cubic_surface(&arch, &r).unwrap();
        let bundle = twist_bundle(&arch, &r).unwrap();
        let origin = crate::geom::vec3_zero();
        let (omega, v) = rec(&surface, &bundle, &origin).unwrap();
        // reporting order (omega | v) matches the published base point
        let expect: [i64; 6] = [736, 732, -266, 1392, -426, -1410];
        let got: Vec<Rat> = omega.iter().chain(v.iter()).cloned().collect();
        let lambda = &got[0] / crate::exactpoly::rat_int(expect[0]);
        for (g, e) in got.iter().zip(expect) {
            assert_eq!(g, &(&lambda * crate::exactpoly::rat_int(e)));
        }
        for s in limb_screws(&arch, &r, &origin) {
            assert!(s.reciprocal_product(&omega, &v).is_zero());
        }
    }

    #[test]
    fn rec_rejects_off_surface_pose(){
        let (arch, r) = case_study();
        let surface = cubic_surface(&arch, &r).unwrap();
        let bundle = twist_bundle(&arch, &r).unwrap();
        let p = [
            crate::exactpoly::rat_int(1),
            crate::exactpoly::rat_int(1),
            crate::exactpoly::rat_int(1),
        ];
        assert!(matches!(
            rec(&surface, &bundle, &p),
            Err(Error::NotOnSurface(_))
        ));
    }

    #[test]
    fn adjugate_row_agrees_with_bundle_at_origin() {
        let (arch, r) = case_study();
        let bundle = twist_bundle(&arch, &r).unwrap();
        let origin = crate::geom::vec3_zero();
        let (omega_a, v_a) = adjugate_twist(&arch, &r, &origin).unwrap();
        let (omega_b, v_b) = bundle.eval_rat(&origin);
        // both span the same nullspace line
        let ga: Vec<Rat> = omega_a.iter().chain(v_a.iter()).cloned().collect();
        let gb: Vec<Rat> = omega_b.iter().chain(v_b.iter()).cloned().collect();
        let k = ga.iter().position(|x| !x.is_zero()).unwrap();
        let lambda = &gb[k] / &ga[k];
        for (a, b) in ga.iter().zip(&gb) {
            assert_eq!(&(a * &lambda), b);
        }
    }

    #[test]
    fn infinity_twist_factorization() {
        let bundle = case_bundle();
        let inf = twist_infinity(&bundle).unwrap();
        let vars = VarSet::xyz();
        // L proportional to -53x + 92y - 108z
        let l_ref = parse_poly(&vars, "-53*x + 92*y - 108*z").unwrap();
        let lambda = proportional(&[inf.line()], &[&l_ref]).expect("linear form matches");
        assert!(!lambda.is_zero());
        // V_inf components are the degree-2 parts of the published v formulas
        for (k, s) in CASE_TWIST[3..].iter().enumerate() {
            let expect = parse_poly(&vars, s).unwrap().graded_part(&[0, 1, 2], 2);
            assert_eq!(
                proportional(&[&inf.v_inf()[k]], &[&expect]).is_some(),
                true
            );
        }
    }

    #[test]
    fn cubic_fallback_factor() {
        let (arch, r) = case_study();
        let fallback = twist_infinity_fallback(&arch, &r).unwrap();
        let vars = VarSet::xyz();
        let q_ref =
            parse_poly(&vars, "-x^2 + 7*x*y - 12*x*z + 7*y^2 - 7*y*z - 6*z^2").unwrap();
        assert!(proportional(&[fallback.factor()], &[&q_ref]).is_some());
    }

    #[test]
    fn random_instances_twist_identities() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..3 {
            let (arch, r) = testutil::random_instance(&mut rng);
            let bundle = twist_bundle(&arch, &r).unwrap();
            let jac = jacobian_matrix(&arch, &r);
            let det = jac.det().unwrap();
            // spot-check one row of the annihilation identity
            let mut acc = MultiPoly::zero(jac.vars());
            for j in 0..3 {
                acc = acc.add(&jac.at(2, j).mul(&bundle.v[j]));
                acc = acc.add(&jac.at(2, 3 + j).mul(&bundle.omega[j]));
            }
            assert_eq!(acc, det);
            // origin lies on the surface; its twist is reciprocal to the limbs
            let surface = cubic_surface(&arch, &r).unwrap();
            let origin = crate::geom::vec3_zero();
            let (omega, v) = rec(&surface, &bundle, &origin).unwrap();
            for s in limb_screws(&arch, &r, &origin) {
                assert!(s.reciprocal_product(&omega, &v).is_zero());
            }
        }
    }

    #[test]
    fn rotation_axis_of_zero_pitch_twist() {
        use crate::exactpoly::rat_int;
        let omega = [rat_int(0), rat_int(0), rat_int(2)];
        let v = [rat_int(2), rat_int(0), rat_int(0)];
        let (point, dir) = rotation_axis(&omega, &v).unwrap();
        // axis through (0, 1, 0) with direction z
        assert_eq!(point, [rat_int(0), rat_int(1), rat_int(0)]);
        assert_eq!(dir, omega);
        assert!(rotation_axis(&crate::geom::vec3_zero(), &v).is_err());
    }
}
