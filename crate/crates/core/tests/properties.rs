//! Property-based checks for the exact-arithmetic kernel and the
//! geometric primitives: ring axioms, evaluation homomorphisms,
//! parser/printer roundtrips, rotation invariants, and screw identities.

use num::{One, Zero};
use proptest::prelude::*;

use stewart_sing::exactpoly::{parse_poly, rat, MultiPoly, Rat, VarSet};
use stewart_sing::geom::{cross3, dot3, vec3, Vec3r};
use stewart_sing::platform::{limb_screws, Architecture, Orientation};

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=10).prop_map(|(n, d)| rat(n, d))
}

fn vec3_strategy() -> impl Strategy<Value = Vec3r> {
    (rat_strategy(), rat_strategy(), rat_strategy()).prop_map(|(a, b, c)| vec3(a, b, c))
}

/// Sparse polynomial in x, y, z with small exponents and coefficients.
fn poly_strategy() -> impl Strategy<Value = MultiPoly> {
    let term = (proptest::collection::vec(0u32..=3, 3), -9i64..=9, 1i64..=4);
    proptest::collection::vec(term, 0..6).prop_map(|terms| {
        let vars = VarSet::xyz();
        MultiPoly::from_terms(
            &vars,
            terms.into_iter().map(|(e, n, d)| (e, rat(n, d))),
        )
    })
}

proptest! {
    #[test]
    fn addition_commutes(p in poly_strategy(), q in poly_strategy()) {
        prop_assert_eq!(p.add(&q), q.add(&p));
    }

    #[test]
    fn multiplication_commutes(p in poly_strategy(), q in poly_strategy()) {
        prop_assert_eq!(p.mul(&q), q.mul(&p));
    }

    #[test]
    fn multiplication_associates(
        p in poly_strategy(),
        q in poly_strategy(),
        s in poly_strategy(),
    ) {
        prop_assert_eq!(p.mul(&q).mul(&s), p.mul(&q.mul(&s)));
    }

    #[test]
    fn multiplication_distributes(
        p in poly_strategy(),
        q in poly_strategy(),
        s in poly_strategy(),
    ) {
        prop_assert_eq!(p.mul(&q.add(&s)), p.mul(&q).add(&p.mul(&s)));
    }

    #[test]
    fn subtraction_is_inverse_of_addition(p in poly_strategy(), q in poly_strategy()) {
        prop_assert!(p.sub(&p).is_zero());
        prop_assert_eq!(p.add(&q).sub(&q), p);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(
        p in poly_strategy(),
        q in poly_strategy(),
        x in rat_strategy(),
        y in rat_strategy(),
        z in rat_strategy(),
    ) {
        let at = [x, y, z];
        prop_assert_eq!(p.add(&q).eval_rat(&at), p.eval_rat(&at) + q.eval_rat(&at));
        prop_assert_eq!(p.mul(&q).eval_rat(&at), p.eval_rat(&at) * q.eval_rat(&at));
    }

    #[test]
    fn derivative_satisfies_leibniz(p in poly_strategy(), q in poly_strategy()) {
        for idx in 0..3 {
            let lhs = p.mul(&q).derivative(idx);
            let rhs = p.derivative(idx).mul(&q).add(&p.mul(&q.derivative(idx)));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn graded_parts_reassemble(p in poly_strategy()) {
        let all: Vec<usize> = (0..3).collect();
        let mut sum = MultiPoly::zero(p.vars());
        for k in 0..=p.total_degree() {
            sum = sum.add(&p.graded_part(&all, k));
        }
        prop_assert_eq!(sum, p);
    }

    #[test]
    fn printer_parser_roundtrip(p in poly_strategy()) {
        let text = p.to_string();
        let back = parse_poly(p.vars(), &text).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn projective_normalization_ignores_scale(
        p in poly_strategy(),
        n in prop_oneof![-30i64..=-1, 1i64..=30],
        d in 1i64..=7,
    ) {
        prop_assume!(!p.is_zero());
        let scaled = p.scale(&rat(n, d));
        prop_assert_eq!(
            p.normalize_projective().unwrap(),
            scaled.normalize_projective().unwrap()
        );
    }

    #[test]
    fn cayley_parameters_roundtrip(
        a in rat_strategy(),
        b in rat_strategy(),
        c in rat_strategy(),
    ) {
        let r = Orientation::from_cayley(a.clone(), b.clone(), c.clone());
        prop_assert_eq!(r.cayley_params(), (a, b, c));
        prop_assert!(r.is_exact_rotation());
    }

    #[test]
    fn rotations_preserve_inner_products(
        a in rat_strategy(),
        b in rat_strategy(),
        c in rat_strategy(),
        u in vec3_strategy(),
        w in vec3_strategy(),
    ) {
        let r = Orientation::from_cayley(a, b, c);
        let (ru, rw) = (r.apply(&u), r.apply(&w));
        prop_assert_eq!(dot3(&ru, &rw), dot3(&u, &w));
    }

    #[test]
    fn cross_product_is_orthogonal_to_factors(u in vec3_strategy(), w in vec3_strategy()) {
        let x = cross3(&u, &w);
        prop_assert!(dot3(&u, &x).is_zero());
        prop_assert!(dot3(&w, &x).is_zero());
    }
}

/// The strut screws are zero-pitch: along each limb the direction and the
/// moment about the origin are orthogonal, and the screw is reciprocal to
/// any twist whose rotation axis passes through both anchor points.
#[test]
fn limb_screws_are_zero_pitch() {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..25 {
        let (arch, r) = stewart_sing::testutil::random_instance(&mut rng);
        let p = vec3(rat(1, 3), rat(-2, 5), rat(1, 2));
        for s in limb_screws(&arch, &r, &p) {
            assert!(dot3(&s.direction, &s.moment).is_zero());
        }
    }
}

/// Normalization subtracts the first anchor on each side, so the stored
/// hexagon always starts at the origin of both frames.
#[test]
fn architecture_normalization_anchors_first_joint() {
    let base: [Vec3r; 6] = std::array::from_fn(|i| {
        vec3(rat(i as i64 + 1, 1), rat(2 * i as i64 - 3, 2), rat(1 - i as i64, 3))
    });
    let platform: [Vec3r; 6] =
        std::array::from_fn(|i| vec3(rat(2 - i as i64, 1), rat(i as i64, 2), rat(i as i64 + 1, 1)));
    let arch = Architecture::normalize(base, platform).unwrap();
    for k in 0..3 {
        assert!(arch.a(0)[k].is_zero());
        assert!(arch.b(0)[k].is_zero());
    }
}

#[test]
fn identity_orientation_has_unit_delta() {
    let r = Orientation::identity();
    assert!(r.delta().is_one());
    let v = vec3(rat(3, 2), rat(-1, 4), rat(5, 1));
    assert_eq!(r.apply(&v), v);
}
