//! Small exact vector algebra: rational 3-vectors and 3-vectors of
//! polynomials, with dot, cross and mixed products.

use num::Zero;

use crate::exactpoly::{MultiPoly, Rat, VarSet};

pub type Vec3r = [Rat; 3];

pub fn vec3(a: Rat, b: Rat, c: Rat) -> Vec3r {
    [a, b, c]
}

pub fn vec3_zero() -> Vec3r {
    [Rat::zero(), Rat::zero(), Rat::zero()]
}

pub fn add3(a: &Vec3r, b: &Vec3r) -> Vec3r {
    [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2]]
}

pub fn sub3(a: &Vec3r, b: &Vec3r) -> Vec3r {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

pub fn scale3(a: &Vec3r, k: &Rat) -> Vec3r {
    [&a[0] * k, &a[1] * k, &a[2] * k]
}

pub fn dot3(a: &Vec3r, b: &Vec3r) -> Rat {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

pub fn cross3(a: &Vec3r, b: &Vec3r) -> Vec3r {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Mixed product `[a, b, c] = det(a | b | c)`.
pub fn mixed3(a: &Vec3r, b: &Vec3r, c: &Vec3r) -> Rat {
    dot3(&cross3(a, b), c)
}

pub fn is_zero3(a: &Vec3r) -> bool {
    a.iter().all(Rat::is_zero)
}

/// Solves the 3x3 system with the given rows and right-hand side by Cramer.
/// Returns `None` when the determinant vanishes.
pub fn solve3(rows: &[Vec3r; 3], rhs: &Vec3r) -> Option<Vec3r> {
    let det = mixed3_rows(rows);
    if det.is_zero() {
        return None;
    }
    let mut out = vec3_zero();
    for k in 0..3 {
        let mut m = rows.clone();
        for i in 0..3 {
            m[i][k] = rhs[i].clone();
        }
        out[k] = mixed3_rows(&m) / &det;
    }
    Some(out)
}

/// Determinant of the matrix whose rows are the given vectors.
pub fn mixed3_rows(rows: &[Vec3r; 3]) -> Rat {
    // det of rows equals det of columns (transpose)
    mixed3(
        &[rows[0][0].clone(), rows[1][0].clone(), rows[2][0].clone()],
        &[rows[0][1].clone(), rows[1][1].clone(), rows[2][1].clone()],
        &[rows[0][2].clone(), rows[1][2].clone(), rows[2][2].clone()],
    )
}

pub fn to_f64_3(a: &Vec3r) -> [f64; 3] {
    use num::ToPrimitive;
    [
        a[0].to_f64().unwrap(),
        a[1].to_f64().unwrap(),
        a[2].to_f64().unwrap(),
    ]
}

// ---- vectors of polynomials ----

pub type PolyVec3 = [MultiPoly; 3];

pub fn pvec_const(vars: &VarSet, v: &Vec3r) -> PolyVec3 {
    [
        MultiPoly::constant(vars, v[0].clone()),
        MultiPoly::constant(vars, v[1].clone()),
        MultiPoly::constant(vars, v[2].clone()),
    ]
}

pub fn pvec_add(a: &PolyVec3, b: &PolyVec3) -> PolyVec3 {
    [a[0].add(&b[0]), a[1].add(&b[1]), a[2].add(&b[2])]
}

pub fn pvec_dot(a: &PolyVec3, b: &PolyVec3) -> MultiPoly {
    a[0].mul(&b[0]).add(&a[1].mul(&b[1])).add(&a[2].mul(&b[2]))
}

pub fn pvec_cross(a: &PolyVec3, b: &PolyVec3) -> PolyVec3 {
    [
        a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
        a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
        a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
    ]
}

pub fn pvec_mixed(a: &PolyVec3, b: &PolyVec3, c: &PolyVec3) -> MultiPoly {
    pvec_dot(&pvec_cross(a, b), c)
}

pub fn pvec_scale(a: &PolyVec3, k: &Rat) -> PolyVec3 {
    [a[0].scale(k), a[1].scale(k), a[2].scale(k)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat_int;

    #[test]
    fn cross_and_mixed() {
        let a = vec3(rat_int(2), rat_int(0), rat_int(0));
        let c = vec3(rat_int(0), rat_int(3), rat_int(-1));
        assert_eq!(cross3(&a, &c), vec3(rat_int(0), rat_int(2), rat_int(6)));
        // mixed product of dependent vectors vanishes
        assert!(mixed3(&a, &a, &c).is_zero());
    }

    #[test]
    fn solve3_cramer() {
        let rows = [
            vec3(rat_int(1), rat_int(2), rat_int(0)),
            vec3(rat_int(0), rat_int(1), rat_int(1)),
            vec3(rat_int(1), rat_int(0), rat_int(1)),
        ];
        let rhs = vec3(rat_int(5), rat_int(3), rat_int(4));
        let sol = solve3(&rows, &rhs).unwrap();
        for i in 0..3 {
            assert_eq!(dot3(&rows[i], &sol), rhs[i]);
        }
        let sing = [
            vec3(rat_int(1), rat_int(0), rat_int(0)),
            vec3(rat_int(2), rat_int(0), rat_int(0)),
            vec3(rat_int(0), rat_int(0), rat_int(1)),
        ];
        assert!(solve3(&sing, &rhs).is_none());
    }
}
