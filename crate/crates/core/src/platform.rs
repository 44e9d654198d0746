//! Platform geometry, Cayley orientation handling, and the Plücker
//! coordinates of the six limbs.

use num::{One, Zero};
use serde::Deserialize;

use crate::error::Error;
use crate::exactpoly::{parse_rat, Rat};
use crate::geom::{add3, cross3, dot3, scale3, sub3, vec3_zero, Vec3r};
use crate::Result;

/// Joint centers of the six limbs, frame-normalized so `A_1 = b_1 = 0`.
#[derive(Clone, Debug)]
pub struct Architecture {
    base: [Vec3r; 6],
    platform: [Vec3r; 6],
    base_offset: Vec3r,
    platform_offset: Vec3r,
}

impl Architecture {
    /// Normalizes raw joint centers: subtracts `A_1` from the base points
    /// and `b_1` from the platform points, recording both offsets.
    pub fn normalize(raw_base: [Vec3r; 6], raw_platform: [Vec3r; 6]) -> Result<Self> {
        for (name, pts) in [("base", &raw_base), ("platform", &raw_platform)] {
            for i in 0..6 {
                for j in (i + 1)..6 {
                    if pts[i] == pts[j] {
                        return Err(Error::DegenerateArchitecture(format!(
                            "{} joints {} and {} coincide",
                            name,
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        let base_offset = raw_base[0].clone();
        let platform_offset = raw_platform[0].clone();
        let base = raw_base.clone().map(|p| sub3(&p, &base_offset));
        let platform = raw_platform.clone().map(|p| sub3(&p, &platform_offset));
        Ok(Architecture {
            base,
            platform,
            base_offset,
            platform_offset,
        })
    }

    /// Base joint `A_i`, 0-based.
    pub fn a(&self, i: usize) -> &Vec3r {
        &self.base[i]
    }

    /// Platform joint `b_i` in the platform frame, 0-based.
    pub fn b(&self, i: usize) -> &Vec3r {
        &self.platform[i]
    }

    pub fn base(&self) -> &[Vec3r; 6] {
        &self.base
    }

    pub fn platform(&self) -> &[Vec3r; 6] {
        &self.platform
    }

    /// Offset subtracted from the raw base points during normalization.
    pub fn base_offset(&self) -> &Vec3r {
        &self.base_offset
    }

    /// Offset subtracted from the raw platform points during normalization.
    pub fn platform_offset(&self) -> &Vec3r {
        &self.platform_offset
    }

    /// Converts a user-frame pose to the normalized frame:
    /// `P_norm = P_user + R*b_1_offset - A_1_offset`.
    pub fn normalize_pose(&self, r: &Orientation, p_user: &Vec3r) -> Vec3r {
        let rb = r.apply(&self.platform_offset);
        sub3(&add3(p_user, &rb), &self.base_offset)
    }

    /// Platform joints in the fixed frame for a given orientation:
    /// `B_i = R b_i`.
    pub fn rotated_platform(&self, r: &Orientation) -> [Vec3r; 6] {
        self.platform.clone().map(|b| r.apply(&b))
    }

    /// `C_i = B_i - A_i`.
    pub fn limb_vectors(&self, r: &Orientation) -> [Vec3r; 6] {
        let b = self.rotated_platform(r);
        let mut out: [Vec3r; 6] = std::array::from_fn(|_| vec3_zero());
        for i in 0..6 {
            out[i] = sub3(&b[i], &self.base[i]);
        }
        out
    }

    /// Stable content hash over the exact joint coordinates; used for
    /// provenance in reports.
    pub fn content_key(&self) -> String {
        use crate::exactpoly::rat_to_string;
        let mut s = String::new();
        for p in self.base.iter().chain(self.platform.iter()) {
            for c in p {
                s.push_str(&rat_to_string(c));
                s.push(',');
            }
        }
        // FNV-1a, enough for an identifier
        let mut h: u64 = 0xcbf29ce484222325;
        for b in s.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        format!("{h:016x}")
    }
}

/// Orientation given by exact rational Cayley parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct Orientation {
    p: Rat,
    q: Rat,
    r: Rat,
    delta: Rat,
    matrix: [Vec3r; 3],
}

impl Orientation {
    /// Rotation matrix from Cayley parameters:
    /// `R = (I + U)(I - U)^{-1}` with `U` the skew matrix of `(p, q, r)`.
    pub fn from_cayley(p: Rat, q: Rat, r: Rat) -> Self {
        let one = Rat::one();
        let two = &one + &one;
        let delta = &one + &p * &p + &q * &q + &r * &r;
        let m = [
            [
                &one + &p * &p - &q * &q - &r * &r,
                &two * (&p * &q - &r),
                &two * (&p * &r + &q),
            ],
            [
                &two * (&p * &q + &r),
                &one - &p * &p + &q * &q - &r * &r,
                &two * (&q * &r - &p),
            ],
            [
                &two * (&p * &r - &q),
                &two * (&q * &r + &p),
                &one - &p * &p - &q * &q + &r * &r,
            ],
        ];
        let matrix = m.map(|row| scale3(&row, &delta.recip()));
        Orientation {
            p,
            q,
            r,
            delta,
            matrix,
        }
    }

    /// Recovers Cayley parameters from an exactly orthogonal rational
    /// rotation matrix. Errors on half-turns (`1 + tr R = 0`).
    pub fn from_matrix(m: [Vec3r; 3]) -> Result<Self> {
        let tr = &m[0][0] + &m[1][1] + &m[2][2];
        let d = Rat::one() + tr;
        if d.is_zero() {
            return Err(Error::HalfTurn);
        }
        let p = (&m[2][1] - &m[1][2]) / &d;
        let q = (&m[0][2] - &m[2][0]) / &d;
        let r = (&m[1][0] - &m[0][1]) / &d;
        let o = Orientation::from_cayley(p, q, r);
        if o.matrix != m {
            return Err(Error::Input(
                "matrix is not an exact rotation matrix".into(),
            ));
        }
        Ok(o)
    }

    pub fn identity() -> Self {
        Orientation::from_cayley(Rat::zero(), Rat::zero(), Rat::zero())
    }

    /// `(p, q, r)` with `p = (R32 - R23)/(1 + tr R)` etc.
    pub fn cayley_params(&self) -> (Rat, Rat, Rat) {
        (self.p.clone(), self.q.clone(), self.r.clone())
    }

    pub fn delta(&self) -> &Rat {
        &self.delta
    }

    pub fn matrix(&self) -> &[Vec3r; 3] {
        &self.matrix
    }

    pub fn apply(&self, v: &Vec3r) -> Vec3r {
        [
            dot3(&self.matrix[0], v),
            dot3(&self.matrix[1], v),
            dot3(&self.matrix[2], v),
        ]
    }

    /// Exact orthogonality check: `R^T R = I` and `det R = 1`.
    pub fn is_exact_rotation(&self) -> bool {
        let m = &self.matrix;
        let col = |j: usize| -> Vec3r { [m[0][j].clone(), m[1][j].clone(), m[2][j].clone()] };
        for i in 0..3 {
            for j in 0..3 {
                let d = dot3(&col(i), &col(j));
                let expect = if i == j { Rat::one() } else { Rat::zero() };
                if d != expect {
                    return false;
                }
            }
        }
        crate::geom::mixed3_rows(m) == Rat::one()
    }
}

/// Platform pose: translation vector in the normalized fixed frame.
#[derive(Clone, Debug, PartialEq)]
pub struct Pose(pub Vec3r);

/// Plücker coordinates of a line (or a force system): direction and moment
/// about the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct Screw {
    pub direction: Vec3r,
    pub moment: Vec3r,
}

impl Screw {
    /// `F . V + Omega . M` against a twist given as `(omega | v)`.
    pub fn reciprocal_product(&self, omega: &Vec3r, v: &Vec3r) -> Rat {
        dot3(&self.direction, v) + dot3(omega, &self.moment)
    }
}

/// Plücker coordinates of the six limbs at pose `P`:
/// limb `i` is `(C_i + P | A_i x (C_i + P))`.
pub fn limb_screws(arch: &Architecture, r: &Orientation, p: &Vec3r) -> [Screw; 6] {
    let c = arch.limb_vectors(r);
    std::array::from_fn(|i| {
        let f = add3(&c[i], p);
        let m = cross3(arch.a(i), &f);
        Screw {
            direction: f,
            moment: m,
        }
    })
}

/// Input document: architecture plus Cayley orientation, exact rationals
/// as `num/den` strings.
#[derive(Debug, Deserialize)]
pub struct InputDoc {
    pub base: Vec<[String; 3]>,
    pub platform: Vec<[String; 3]>,
    pub cayley: CayleyInput,
}

#[derive(Debug, Deserialize)]
pub struct CayleyInput {
    pub p: String,
    pub q: String,
    pub r: String,
}

impl InputDoc {
    pub fn parse(text: &str) -> Result<(Architecture, Orientation)> {
        let doc: InputDoc =
            toml::from_str(text).map_err(|e| Error::Input(format!("input file: {e}")))?;
        if doc.base.len() != 6 {
            return Err(Error::Input(format!(
                "field `base` must list 6 points, got {}",
                doc.base.len()
            )));
        }
        if doc.platform.len() != 6 {
            return Err(Error::Input(format!(
                "field `platform` must list 6 points, got {}",
                doc.platform.len()
            )));
        }
        let parse_point = |p: &[String; 3]| -> Result<Vec3r> {
            Ok([parse_rat(&p[0])?, parse_rat(&p[1])?, parse_rat(&p[2])?])
        };
        let mut base: [Vec3r; 6] = std::array::from_fn(|_| vec3_zero());
        let mut platform: [Vec3r; 6] = std::array::from_fn(|_| vec3_zero());
        for i in 0..6 {
            base[i] = parse_point(&doc.base[i])?;
            platform[i] = parse_point(&doc.platform[i])?;
        }
        let arch = Architecture::normalize(base, platform)?;
        let orientation = Orientation::from_cayley(
            parse_rat(&doc.cayley.p)?,
            parse_rat(&doc.cayley.q)?,
            parse_rat(&doc.cayley.r)?,
        );
        Ok((arch, orientation))
    }
}

/// The worked example used throughout the test suite: a fixed rational
/// architecture with identity orientation.
pub fn case_study() -> (Architecture, Orientation) {
    let i = |v: i64| Rat::from(num::BigInt::from(v));
    let base = [
        [i(0), i(0), i(0)],
        [i(2), i(0), i(0)],
        [i(0), i(2), i(-1)],
        [i(0), i(1), i(2)],
        [i(1), i(0), i(1)],
        [i(6), i(3), i(0)],
    ];
    let platform = [
        [i(0), i(0), i(0)],
        [i(2), i(3), i(-1)],
        [i(0), i(1), i(4)],
        [i(1), i(3), i(1)],
        [i(1), i(3), i(-1)],
        [i(2), i(4), i(-3)],
    ];
    (
        Architecture::normalize(base, platform).unwrap(),
        Orientation::identity(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{rat, rat_int};

    #[test]
    fn case_study_already_normalized() {
        let (arch, _) = case_study();
        assert!(crate::geom::is_zero3(arch.base_offset()));
        assert!(crate::geom::is_zero3(arch.platform_offset()));
        assert!(crate::geom::is_zero3(arch.a(0)));
        assert!(crate::geom::is_zero3(arch.b(0)));
    }

    #[test]
    fn shifted_architecture_normalizes_with_offsets() {
        let (arch, _) = case_study();
        let shift = [rat_int(1), rat_int(2), rat_int(3)];
        let shifted_base = arch.base().clone().map(|p| add3(&p, &shift));
        let shifted = Architecture::normalize(shifted_base, arch.platform().clone()).unwrap();
        assert_eq!(shifted.base(), arch.base());
        assert_eq!(shifted.base_offset(), &shift);
    }

    #[test]
    fn duplicate_joint_rejected() {
        let (arch, _) = case_study();
        let mut base = arch.base().clone();
        base[2] = base[1].clone();
        assert!(matches!(
            Architecture::normalize(base, arch.platform().clone()),
            Err(Error::DegenerateArchitecture(_))
        ));
    }

    #[test]
    fn cayley_identity_and_quarter_turn() {
        let o = Orientation::identity();
        assert_eq!(o.matrix()[0], [rat_int(1), rat_int(0), rat_int(0)]);
        assert!(o.is_exact_rotation());

        // (1,0,0): quarter-turn about x
        let o = Orientation::from_cayley(rat_int(1), rat_int(0), rat_int(0));
        let expect = [
            [rat_int(1), rat_int(0), rat_int(0)],
            [rat_int(0), rat_int(0), rat_int(-1)],
            [rat_int(0), rat_int(1), rat_int(0)],
        ];
        assert_eq!(o.matrix(), &expect);
        assert!(o.is_exact_rotation());
        assert_eq!(o.delta(), &rat_int(2));
    }

    #[test]
    fn cayley_roundtrip() {
        for (p, q, r) in [
            (rat_int(2), rat_int(-1), rat_int(3)),
            (rat_int(5), rat_int(7), rat_int(-2)),
            (rat(1, 3), rat(-2, 7), rat(5, 2)),
        ] {
            let o = Orientation::from_cayley(p.clone(), q.clone(), r.clone());
            assert!(o.is_exact_rotation());
            let back = Orientation::from_matrix(o.matrix().clone()).unwrap();
            assert_eq!(back.cayley_params(), (p, q, r));
        }
    }

    #[test]
    fn half_turn_rejected() {
        let m = [
            [rat_int(1), rat_int(0), rat_int(0)],
            [rat_int(0), rat_int(-1), rat_int(0)],
            [rat_int(0), rat_int(0), rat_int(-1)],
        ];
        assert!(matches!(Orientation::from_matrix(m), Err(Error::HalfTurn)));
    }

    #[test]
    fn limb_screws_case_study() {
        let (arch, r) = case_study();
        let p = [rat_int(0), rat_int(0), rat_int(0)];
        let screws = limb_screws(&arch, &r, &p);
        // limb 1 at origin pose degenerates to the zero screw since A_1 = C_1 = 0
        assert!(crate::geom::is_zero3(&screws[0].moment));
        // limb 2: C_2 = b_2 - A_2 = (0,3,-1), A_2 x C_2 = (0,2,6)
        assert_eq!(
            screws[1].direction,
            [rat_int(0), rat_int(3), rat_int(-1)]
        );
        assert_eq!(screws[1].moment, [rat_int(0), rat_int(2), rat_int(6)]);
    }

    #[test]
    fn limb_screw_line_identity() {
        // F . M = 0 exactly for every limb at sampled rational poses
        let (arch, r) = case_study();
        for p in [
            [rat_int(0), rat_int(0), rat_int(0)],
            [rat_int(1), rat_int(-2), rat_int(3)],
            [rat(1, 2), rat(-5, 3), rat(7, 4)],
        ] {
            for s in limb_screws(&arch, &r, &p) {
                assert!(dot3(&s.direction, &s.moment).is_zero());
            }
        }
    }

    #[test]
    fn input_doc_roundtrip_and_errors() {
        let text = r#"
base = [["0","0","0"],["2","0","0"],["0","2","-1"],["0","1","2"],["1","0","1"],["6","3","0"]]
platform = [["0","0","0"],["2","3","-1"],["0","1","4"],["1","3","1"],["1","3","-1"],["2","4","-3"]]
[cayley]
p = "0"
q = "0"
r = "0"
"#;
        let (arch, o) = InputDoc::parse(text).unwrap();
        let (expect, _) = case_study();
        assert_eq!(arch.base(), expect.base());
        assert_eq!(o, Orientation::identity());

        let missing = "base = []\n[cayley]\np=\"0\"\nq=\"0\"\nr=\"0\"\n";
        let err = InputDoc::parse(missing).unwrap_err();
        assert!(err.to_string().contains("platform") || err.to_string().contains("base"));
    }
}
