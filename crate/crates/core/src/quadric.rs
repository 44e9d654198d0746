//! The quadric surface of reciprocal twists: eliminating the pose from the
//! reciprocity equations leaves two linear and one quadratic homogeneous
//! equation in the twist coordinates, plus an exact rational
//! parametrization of the resulting quadric by lines through a base point.

use num::{Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::exactpoly::{MultiPoly, Rat, VarSet};
use crate::geom::{cross3, mixed3, scale3, sub3, Vec3r};
use crate::platform::{Architecture, Orientation};
use crate::twistmap::TwistBundle;
use crate::Result;

/// Expression of the two dependent base joints in terms of a maximal
/// independent triple among `A_2, ..., A_6` (0-based indices 1..=5).
#[derive(Clone, Debug)]
pub struct DependencyCoefficients {
    /// Indices of the independent triple, ascending.
    pub basis: [usize; 3],
    /// The two remaining indices, ascending.
    pub others: [usize; 2],
    /// `A_{others[k]} = sum_t coeffs[k][t] * A_{basis[t]}`.
    pub coeffs: [[Rat; 3]; 2],
}

/// Picks the triple among `A_2..A_6` with the largest `|[A_i, A_j, A_k]|`
/// (ties broken lexicographically) and solves for the other two joints.
pub fn dependency_coefficients(arch: &Architecture) -> Result<DependencyCoefficients> {
    let mut best: Option<([usize; 3], Rat)> = None;
    for i in 1..6 {
        for j in (i + 1)..6 {
            for k in (j + 1)..6 {
                let d = mixed3(arch.a(i), arch.a(j), arch.a(k)).abs();
                if d.is_zero() {
                    continue;
                }
                if best.as_ref().map_or(true, |(_, b)| d > *b) {
                    best = Some(([i, j, k], d));
                }
            }
        }
    }
    let (basis, _) = best.ok_or_else(|| {
        Error::DegenerateBase("base joints 2..6 do not span 3-space".into())
    })?;
    dependency_with_basis(arch, basis)
}

/// Same as [`dependency_coefficients`] but with a caller-chosen triple.
pub fn dependency_with_basis(
    arch: &Architecture,
    basis: [usize; 3],
) -> Result<DependencyCoefficients> {
    let others: Vec<usize> = (1..6).filter(|i| !basis.contains(i)).collect();
    let others: [usize; 2] = others
        .try_into()
        .map_err(|_| Error::DegenerateBase("basis must use three of the indices 2..6".into()))?;
    // columns of the 3x3 system are the basis joints
    let rows: [Vec3r; 3] = std::array::from_fn(|r| {
        std::array::from_fn(|t| arch.a(basis[t])[r].clone())
    });
    let mut coeffs: [[Rat; 3]; 2] = Default::default();
    for (k, &m) in others.iter().enumerate() {
        let rhs: Vec3r = arch.a(m).clone();
        let sol = crate::geom::solve3(&rows, &rhs).ok_or_else(|| {
            Error::DegenerateBase("chosen triple of base joints is linearly dependent".into())
        })?;
        coeffs[k] = sol;
    }
    Ok(DependencyCoefficients {
        basis,
        others,
        coeffs,
    })
}

/// The coefficients `l_i = [Omega, A_j, A_k]` (cyclic over the triple);
/// they satisfy `l_1 (Omega x A_1) + l_2 (Omega x A_2) + l_3 (Omega x A_3)
/// = 0` identically.
pub fn ell_coefficients(omega: &Vec3r, a: &[&Vec3r; 3]) -> [Rat; 3] {
    [
        mixed3(omega, a[1], a[2]),
        mixed3(omega, a[2], a[0]),
        mixed3(omega, a[0], a[1]),
    ]
}

/// The quadric in twist space: two linear and one quadratic homogeneous
/// equation, with the image of the origin as rational base point.
#[derive(Clone, Debug)]
pub struct QuadricModel {
    dep: DependencyCoefficients,
    /// Coefficient vectors of the linear equations over `(omega | v)`.
    linear: [[Rat; 6]; 2],
    linear_polys: [MultiPoly; 2],
    /// Symmetric matrix of the quadratic equation.
    quad_matrix: [[Rat; 6]; 6],
    quad_poly: MultiPoly,
    base_point: [Rat; 6],
}

impl QuadricModel {
    pub fn dependency(&self) -> &DependencyCoefficients {
        &self.dep
    }

    pub fn linear(&self) -> &[[Rat; 6]; 2] {
        &self.linear
    }

    pub fn linear_polys(&self) -> &[MultiPoly; 2] {
        &self.linear_polys
    }

    pub fn quad_matrix(&self) -> &[[Rat; 6]; 6] {
        &self.quad_matrix
    }

    pub fn quad_poly(&self) -> &MultiPoly {
        &self.quad_poly
    }

    /// The reciprocal twist of the origin pose, in order `(omega | v)`.
    pub fn base_point(&self) -> &[Rat; 6] {
        &self.base_point
    }

    /// Values of the two linear equations at a twist.
    pub fn eval_linear(&self, t: &[Rat; 6]) -> [Rat; 2] {
        std::array::from_fn(|k| {
            self.linear[k]
                .iter()
                .zip(t)
                .map(|(c, x)| c * x)
                .sum::<Rat>()
        })
    }

    /// Value of the quadratic equation at a twist.
    pub fn eval_quad(&self, t: &[Rat; 6]) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..6 {
            for j in 0..6 {
                acc += &self.quad_matrix[i][j] * &t[i] * &t[j];
            }
        }
        acc
    }

    /// True when the twist satisfies all three equations exactly.
    pub fn contains(&self, t: &[Rat; 6]) -> bool {
        self.eval_linear(t).iter().all(Rat::is_zero) && self.eval_quad(t).is_zero()
    }

    /// Scale-invariant residual of membership for a numeric twist.
    pub fn residual_f64(&self, t: &[f64; 6]) -> f64 {
        let norm: f64 = t.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        let mut worst = 0.0f64;
        for row in &self.linear {
            let v: f64 = row
                .iter()
                .zip(t)
                .map(|(c, x)| c.to_f64().unwrap() * x)
                .sum();
            let cn: f64 = row.iter().map(|c| c.to_f64().unwrap().abs()).sum();
            worst = worst.max(v.abs() / (cn * norm));
        }
        let mut q = 0.0;
        let mut qn = 0.0;
        for i in 0..6 {
            for j in 0..6 {
                let c = self.quad_matrix[i][j].to_f64().unwrap();
                q += c * t[i] * t[j];
                qn += c.abs();
            }
        }
        worst.max(q.abs() / (qn * norm * norm))
    }
}

/// Builds the quadric equations from the eliminated reciprocity system and
/// records the image of the origin as base point.
pub fn quadric_model(
    arch: &Architecture,
    r: &Orientation,
    bundle: &TwistBundle,
) -> Result<QuadricModel> {
    let dep = dependency_coefficients(arch)?;
    let c = arch.limb_vectors(r);

    // linear equations: one per dependent joint m with coefficients g:
    // omega-part (A_m x C_m) - sum_t g_t (A_t x C_t),
    // v-part C_m - sum_t g_t C_t
    let mut linear: [[Rat; 6]; 2] = Default::default();
    for (k, &m) in dep.others.iter().enumerate() {
        let mut w_part = cross3(arch.a(m), &c[m]);
        let mut v_part = c[m].clone();
        for (t, &b) in dep.basis.iter().enumerate() {
            let g = &dep.coeffs[k][t];
            w_part = sub3(&w_part, &scale3(&cross3(arch.a(b), &c[b]), g));
            v_part = sub3(&v_part, &scale3(&c[b], g));
        }
        for i in 0..3 {
            linear[k][i] = w_part[i].clone();
            linear[k][3 + i] = v_part[i].clone();
        }
    }

    let vars = VarSet::twist();
    let lin_form = |w: &Vec3r, v: &Vec3r| -> MultiPoly {
        let mut acc = MultiPoly::zero(&vars);
        for i in 0..3 {
            acc = acc.add(&MultiPoly::var(&vars, i).scale(&w[i]));
            acc = acc.add(&MultiPoly::var(&vars, 3 + i).scale(&v[i]));
        }
        acc
    };
    let linear_polys: [MultiPoly; 2] = std::array::from_fn(|k| {
        let w: Vec3r = std::array::from_fn(|i| linear[k][i].clone());
        let v: Vec3r = std::array::from_fn(|i| linear[k][3 + i].clone());
        lin_form(&w, &v)
    });

    // quadratic: cyclic sum over the basis triple (i, j, k) of
    // [Omega, A_j, A_k] (V . C_i + [Omega, A_i, C_i])
    let zero3 = crate::geom::vec3_zero();
    let mut quad_poly = MultiPoly::zero(&vars);
    for cyc in 0..3 {
        let i = dep.basis[cyc];
        let j = dep.basis[(cyc + 1) % 3];
        let k = dep.basis[(cyc + 2) % 3];
        let l = lin_form(&cross3(arch.a(j), arch.a(k)), &zero3);
        let rhs = lin_form(&cross3(arch.a(i), &c[i]), &c[i]);
        quad_poly = quad_poly.add(&l.mul(&rhs));
    }
    let mut quad_matrix: [[Rat; 6]; 6] = Default::default();
    for (m, coeff) in quad_poly.terms() {
        let on: Vec<usize> = (0..6).filter(|&i| m.0[i] > 0).collect();
        match on.as_slice() {
            [i] => quad_matrix[*i][*i] = coeff.clone(),
            [i, j] => {
                let half = coeff / crate::exactpoly::rat_int(2);
                quad_matrix[*i][*j] = half.clone();
                quad_matrix[*j][*i] = half;
            }
            _ => return Err(Error::Internal("quadratic form is not degree 2".into())),
        }
    }

    let origin = crate::geom::vec3_zero();
    let (omega0, v0) = bundle.eval_rat(&origin);
    let base_point: [Rat; 6] = std::array::from_fn(|i| {
        if i < 3 {
            omega0[i].clone()
        } else {
            v0[i - 3].clone()
        }
    });
    if base_point.iter().all(Rat::is_zero) {
        return Err(Error::RankDrop);
    }

    let model = QuadricModel {
        dep,
        linear,
        linear_polys,
        quad_matrix,
        quad_poly,
        base_point,
    };
    if !model.contains(&model.base_point.clone()) {
        return Err(Error::Internal(
            "origin twist does not satisfy the quadric equations".into(),
        ));
    }
    Ok(model)
}

// ---- exact rational linear algebra on small dense matrices ----

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn rref(m: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone().recip();
        for x in &mut m[r] {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Rank over the rationals.
pub fn rank(m: &[Vec<Rat>]) -> usize {
    let mut w = m.to_vec();
    rref(&mut w).len()
}

/// Basis of the right nullspace of a matrix given by rows.
pub fn nullspace(m: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut w = m.to_vec();
    let pivots = rref(&mut w);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Rat::zero(); cols];
            v[fc] = num::One::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -w[r][fc].clone();
            }
            v
        })
        .collect()
}

/// Solves `A u = b` (rows of `A` given) when the system is consistent.
pub(crate) fn solve_exact(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, r)| {
            let mut v = row.clone();
            v.push(r.clone());
            v
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None; // inconsistent
    }
    let mut u = vec![Rat::zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        u[pc] = aug[r][cols].clone();
    }
    Some(u)
}

/// Exact rational parametrization of the quadric: intersect the line
/// through the base point with direction in a fixed affine chart of the
/// nullspace of the linear equations with the quadric.
#[derive(Clone, Debug)]
pub struct QuadricParam {
    /// Columns: basis of the solution space of the linear equations.
    n: [Vec<Rat>; 4],
    /// Quadratic form restricted to that basis.
    qr: [[Rat; 4]; 4],
    /// Base point in restricted coordinates.
    u0: [Rat; 4],
    /// Chart axes `(a, b, c)`: directions `e_a + s e_b + t e_c`.
    chart: [usize; 3],
}

impl QuadricParam {
    pub fn chart(&self) -> [usize; 3] {
        self.chart
    }

    pub fn base_restricted(&self) -> &[Rat; 4] {
        &self.u0
    }

    fn apply_qr(&self, u: &[Rat; 4]) -> [Rat; 4] {
        std::array::from_fn(|i| (0..4).map(|j| &self.qr[i][j] * &u[j]).sum())
    }

    /// Second intersection of the quadric with the line through the base
    /// point in direction `e_a + s e_b + t e_c`, as a projective twist
    /// `(omega | v)`. Tangent directions reproduce the base point.
    pub fn point(&self, s: &Rat, t: &Rat) -> Result<[Rat; 6]> {
        let mut d = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
        d[self.chart[0]] = num::One::one();
        d[self.chart[1]] = s.clone();
        d[self.chart[2]] = t.clone();
        let qd = self.apply_qr(&d);
        let dqd: Rat = d.iter().zip(&qd).map(|(a, b)| a * b).sum();
        let uqd: Rat = self.u0.iter().zip(&qd).map(|(a, b)| a * b).sum();
        let u: [Rat; 4] = if dqd.is_zero() && uqd.is_zero() {
            // the whole line lies on the quadric; any point will do
            self.u0.clone()
        } else {
            let two = crate::exactpoly::rat_int(2);
            std::array::from_fn(|i| &dqd * &self.u0[i] - &two * &uqd * &d[i])
        };
        if u.iter().all(Rat::is_zero) {
            return Ok(self.twist_of(&self.u0));
        }
        Ok(self.twist_of(&u))
    }

    fn twist_of(&self, u: &[Rat; 4]) -> [Rat; 6] {
        std::array::from_fn(|i| (0..4).map(|j| &self.n[j][i] * &u[j]).sum())
    }

    /// The same second-intersection construction carried out symbolically:
    /// the twist components as polynomials in the chart parameters. The
    /// inputs must be the polynomials `s` and `t` over one variable set.
    pub fn symbolic_point(&self, s: &MultiPoly, t: &MultiPoly) -> [MultiPoly; 6] {
        let vars = s.vars().clone();
        let mut d: [MultiPoly; 4] = std::array::from_fn(|_| MultiPoly::zero(&vars));
        d[self.chart[0]] = MultiPoly::one(&vars);
        d[self.chart[1]] = s.clone();
        d[self.chart[2]] = t.clone();
        let qd: [MultiPoly; 4] = std::array::from_fn(|i| {
            let mut acc = MultiPoly::zero(&vars);
            for j in 0..4 {
                acc = acc.add(&d[j].scale(&self.qr[i][j]));
            }
            acc
        });
        let mut dqd = MultiPoly::zero(&vars);
        let mut uqd = MultiPoly::zero(&vars);
        for i in 0..4 {
            dqd = dqd.add(&d[i].mul(&qd[i]));
            uqd = uqd.add(&qd[i].scale(&self.u0[i]));
        }
        let two = crate::exactpoly::rat_int(2);
        let u: [MultiPoly; 4] = std::array::from_fn(|i| {
            dqd.scale(&self.u0[i]).sub(&d[i].mul(&uqd).scale(&two))
        });
        std::array::from_fn(|i| {
            let mut acc = MultiPoly::zero(&vars);
            for j in 0..4 {
                acc = acc.add(&u[j].scale(&self.n[j][i]));
            }
            acc
        })
    }
}

/// Builds the parametrization from a quadric model.
pub fn parametrize_quadric(model: &QuadricModel) -> Result<QuadricParam> {
    let lin_rows: Vec<Vec<Rat>> = model.linear.iter().map(|r| r.to_vec()).collect();
    if rank(&lin_rows) != 2 {
        return Err(Error::DegenerateQuadric);
    }
    let basis = nullspace(&lin_rows);
    let n: [Vec<Rat>; 4] = basis
        .try_into()
        .map_err(|_| Error::DegenerateQuadric)?;
    let mut qr: [[Rat; 4]; 4] = Default::default();
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = Rat::zero();
            for a in 0..6 {
                for b in 0..6 {
                    acc += &n[i][a] * &model.quad_matrix[a][b] * &n[j][b];
                }
            }
            qr[i][j] = acc;
        }
    }
    // base point in restricted coordinates: solve N u = base (columns of N)
    let rows: Vec<Vec<Rat>> = (0..6)
        .map(|a| (0..4).map(|j| n[j][a].clone()).collect())
        .collect();
    let u0v = solve_exact(&rows, model.base_point())
        .ok_or_else(|| Error::Internal("base point escapes the linear span".into()))?;
    let u0: [Rat; 4] = u0v
        .try_into()
        .map_err(|_| Error::Internal("arity".into()))?;
    // chart: drop the largest base-point coordinate so the chart directions
    // are transverse to the base point
    let k = (0..4)
        .max_by(|&a, &b| {
            let na = u0[a].abs();
            let nb = u0[b].abs();
            na.cmp(&nb)
        })
        .unwrap();
    let chart: Vec<usize> = (0..4).filter(|&i| i != k).collect();
    let chart: [usize; 3] = chart.try_into().unwrap();
    if u0.iter().all(Rat::is_zero) {
        return Err(Error::RankDrop);
    }
    Ok(QuadricParam { n, qr, u0, chart })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{parse_poly, rat, rat_int};
    use crate::platform::case_study;
    use crate::twistmap::twist_bundle;

    const CASE_LIN: [&str; 2] = [
        "72*o1 - 42*o2 + 16*v1 + 35*v2 + 21*v3",
        "30*o2 + 18*o3 - 26*v1 + 5*v2 - 15*v3",
    ];
    const CASE_QUAD: &str = "168*o2^2 + 80*o2*v1 - 518*o2*v2 + 522*o2*v3 + 264*v1*v2 \
                             - 296*v1*v3 - 165*v2^2 + 212*v2*v3 - 159*v3^2";

    fn case_model() -> QuadricModel {
        let (arch, r) = case_study();
        let bundle = twist_bundle(&arch, &r).unwrap();
        quadric_model(&arch, &r, &bundle).unwrap()
    }

    fn poly_coeff_row(p: &MultiPoly) -> Vec<Rat> {
        (0..6)
            .map(|i| {
                let mut e = vec![0u32; 6];
                e[i] = 1;
                p.coeff(&e)
            })
            .collect()
    }

    #[test]
    fn dependency_picks_largest_triple() {
        let (arch, _) = case_study();
        let dep = dependency_coefficients(&arch).unwrap();
        // |[A_3, A_4, A_6]| = 30 beats every other triple
        assert_eq!(dep.basis, [2, 3, 5]);
        assert_eq!(dep.others, [1, 4]);
        for (k, &m) in dep.others.iter().enumerate() {
            let mut acc = crate::geom::vec3_zero();
            for (t, &b) in dep.basis.iter().enumerate() {
                acc = crate::geom::add3(&acc, &scale3(arch.a(b), &dep.coeffs[k][t]));
            }
            assert_eq!(&acc, arch.a(m));
        }
    }

    #[test]
    fn dependency_with_reference_triple() {
        let (arch, _) = case_study();
        let dep = dependency_with_basis(&arch, [1, 2, 3]).unwrap();
        for (k, &m) in dep.others.iter().enumerate() {
            let mut acc = crate::geom::vec3_zero();
            for (t, &b) in dep.basis.iter().enumerate() {
                acc = crate::geom::add3(&acc, &scale3(arch.a(b), &dep.coeffs[k][t]));
            }
            assert_eq!(&acc, arch.a(m));
        }
    }

    #[test]
    fn ell_identity() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let mut v3 = || -> Vec3r {
                std::array::from_fn(|_| rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=3)))
            };
            let omega = v3();
            let a1 = v3();
            let a2 = v3();
            let a3 = v3();
            let l = ell_coefficients(&omega, &[&a1, &a2, &a3]);
            let mut acc = crate::geom::vec3_zero();
            for (li, ai) in l.iter().zip([&a1, &a2, &a3]) {
                acc = crate::geom::add3(&acc, &scale3(&cross3(&omega, ai), li));
            }
            assert!(crate::geom::is_zero3(&acc));
        }
    }

    #[test]
    fn twist_image_satisfies_linear_equations_identically() {
        let (arch, r) = case_study();
        let bundle = twist_bundle(&arch, &r).unwrap();
        let model = quadric_model(&arch, &r, &bundle).unwrap();
        let images: Vec<MultiPoly> = bundle.components().into_iter().cloned().collect();
        for lp in model.linear_polys() {
            assert!(lp.substitute(&images).is_zero());
        }
    }

    #[test]
    fn twist_image_satisfies_quadric_modulo_surface() {
        let (arch, r) = case_study();
        let bundle = twist_bundle(&arch, &r).unwrap();
        let model = quadric_model(&arch, &r, &bundle).unwrap();
        let surface = crate::singularity::cubic_surface(&arch, &r).unwrap();
        let images: Vec<MultiPoly> = bundle.components().into_iter().cloned().collect();
        let composed = model.quad_poly().substitute(&images);
        let q = composed.div_exact(surface.f());
        assert!(q.is_some(), "quadratic composed with the twist map should be a multiple of the surface equation");
        assert!(q.unwrap().total_degree() <= 1);
    }

    #[test]
    fn linear_span_matches_reference() {
        let model = case_model();
        let vars = VarSet::twist();
        let mut rows: Vec<Vec<Rat>> = model.linear.iter().map(|r| r.to_vec()).collect();
        assert_eq!(rank(&rows), 2);
        for s in CASE_LIN {
            rows.push(poly_coeff_row(&parse_poly(&vars, s).unwrap()));
        }
        assert_eq!(rank(&rows), 2);
    }

    #[test]
    fn quadratic_matches_reference_modulo_linear_span() {
        let model = case_model();
        let vars = VarSet::twist();
        let reference = parse_poly(&vars, CASE_QUAD).unwrap();
        let mut ref_matrix: [[Rat; 6]; 6] = Default::default();
        for (m, c) in reference.terms() {
            let on: Vec<usize> = (0..6).filter(|&i| m.0[i] > 0).collect();
            match on.as_slice() {
                [i] => ref_matrix[*i][*i] = c.clone(),
                [i, j] => {
                    let half = c / rat_int(2);
                    ref_matrix[*i][*j] = half.clone();
                    ref_matrix[*j][*i] = half;
                }
                _ => unreachable!(),
            }
        }
        // restrict both quadrics to the common solution space of the linear
        // equations and compare up to a scalar
        let rows: Vec<Vec<Rat>> = model.linear.iter().map(|r| r.to_vec()).collect();
        let nsp = nullspace(&rows);
        assert_eq!(nsp.len(), 4);
        let restrict = |q: &[[Rat; 6]; 6]| -> Vec<Vec<Rat>> {
            nsp.iter()
                .map(|u| {
                    nsp.iter()
                        .map(|w| {
                            let mut acc = Rat::zero();
                            for a in 0..6 {
                                for b in 0..6 {
                                    acc += &u[a] * &q[a][b] * &w[b];
                                }
                            }
                            acc
                        })
                        .collect()
                })
                .collect()
        };
        let m1 = restrict(model.quad_matrix());
        let m2 = restrict(&ref_matrix);
        let (i, j) = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .find(|&(i, j)| !m1[i][j].is_zero())
            .unwrap();
        let lambda = &m2[i][j] / &m1[i][j];
        assert!(!lambda.is_zero());
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(&m1[a][b] * &lambda, m2[a][b].clone());
            }
        }
    }

    #[test]
    fn base_point_matches_reference() {
        let model = case_model();
        let expect: [i64; 6] = [736, 732, -266, 1392, -426, -1410];
        let lambda = &model.base_point()[0] / rat_int(expect[0]);
        for (g, e) in model.base_point().iter().zip(expect) {
            assert_eq!(g, &(&lambda * rat_int(e)));
        }
        assert!(model.contains(model.base_point()));
    }

    #[test]
    fn parametrization_stays_on_quadric() {
        let model = case_model();
        let param = parametrize_quadric(&model).unwrap();
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..25 {
            let s = rat(rng.gen_range(-30i64..=30), rng.gen_range(1i64..=7));
            let t = rat(rng.gen_range(-30i64..=30), rng.gen_range(1i64..=7));
            let p = param.point(&s, &t).unwrap();
            assert!(p.iter().any(|c| !c.is_zero()));
            assert!(model.contains(&p), "point for ({s}, {t}) off the quadric");
        }
    }

    #[test]
    fn rref_rank_nullspace_solve() {
        let m = vec![
            vec![rat_int(1), rat_int(2), rat_int(3)],
            vec![rat_int(2), rat_int(4), rat_int(6)],
            vec![rat_int(0), rat_int(1), rat_int(1)],
        ];
        assert_eq!(rank(&m), 2);
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 1);
        for row in &m {
            let dot: Rat = row.iter().zip(&ns[0]).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
        let b = vec![rat_int(6), rat_int(12), rat_int(2)];
        let u = solve_exact(&m, &b).unwrap();
        for (row, r) in m.iter().zip(&b) {
            let dot: Rat = row.iter().zip(&u).map(|(a, b)| a * b).sum();
            assert_eq!(&dot, r);
        }
        // inconsistent system
        let b2 = vec![rat_int(6), rat_int(13), rat_int(2)];
        assert!(solve_exact(&m, &b2).is_none());
    }

    #[test]
    fn random_instances_quadric_contains_twist_image() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..3 {
            let (arch, r) = crate::testutil::random_instance(&mut rng);
            let bundle = twist_bundle(&arch, &r).unwrap();
            let Ok(model) = quadric_model(&arch, &r, &bundle) else {
                continue;
            };
            let images: Vec<MultiPoly> = bundle.components().into_iter().cloned().collect();
            for lp in model.linear_polys() {
                assert!(lp.substitute(&images).is_zero());
            }
            let surface = crate::singularity::cubic_surface(&arch, &r).unwrap();
            let composed = model.quad_poly().substitute(&images);
            assert!(composed.is_zero() || composed.div_exact(surface.f()).is_some());
        }
    }
}
