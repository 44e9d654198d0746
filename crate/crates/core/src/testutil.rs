//! Deterministic random fixtures shared by unit and integration tests.

use rand::Rng;

use num::Zero;

use crate::exactpoly::rat;
use crate::geom::Vec3r;
use crate::platform::{Architecture, Orientation};

/// Random small-rational architecture and orientation. Retries until the
/// architecture is non-degenerate and its base spans 3-space; intended for
/// genericity spot-checks.
pub fn random_instance<R: Rng>(rng: &mut R) -> (Architecture, Orientation) {
    loop {
        let mut point = |first: bool| -> Vec3r {
            if first {
                crate::geom::vec3_zero()
            } else {
                std::array::from_fn(|_| rat(rng.gen_range(-8i64..=8), rng.gen_range(1i64..=2)))
            }
        };
        let base: [Vec3r; 6] = std::array::from_fn(|i| point(i == 0));
        let platform: [Vec3r; 6] = std::array::from_fn(|i| point(i == 0));
        let arch = match Architecture::normalize(base, platform) {
            Ok(a) => a,
            Err(_) => continue,
        };
        // require A_2..A_6 to span 3-space (quadric construction needs it)
        let mut spans = false;
        'outer: for i in 1..6 {
            for j in (i + 1)..6 {
                for k in (j + 1)..6 {
                    if !crate::geom::mixed3(arch.a(i), arch.a(j), arch.a(k)).is_zero() {
                        spans = true;
                        break 'outer;
                    }
                }
            }
        }
        if !spans {
            continue;
        }
        let orientation = Orientation::from_cayley(
            rat(rng.gen_range(-3i64..=3), rng.gen_range(1i64..=3)),
            rat(rng.gen_range(-3i64..=3), rng.gen_range(1i64..=3)),
            rat(rng.gen_range(-3i64..=3), rng.gen_range(1i64..=3)),
        );
        if crate::singularity::cubic_surface(&arch, &orientation).is_err() {
            continue;
        }
        return (arch, orientation);
    }
}
