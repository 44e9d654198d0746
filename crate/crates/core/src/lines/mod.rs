//! The 27 lines on the singularity surface, their incidence structure, and
//! the five exceptional lines whose reciprocal twists are pure rotations.
//!
//! Lines are found numerically: a line in the chart `x = t` is written
//! `y = a + b t, z = c + d t`; substituting into the cubic gives four
//! polynomial equations in `(a, b, c, d)` solved by multi-start Newton
//! iteration over the complex numbers. Two more charts cover lines with
//! vanishing `x`-direction.

pub mod newton;
pub mod rational;

use num::complex::Complex64;
use num::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::exactpoly::{MultiPoly, VarSet};
use crate::numeric;
use crate::platform::{Architecture, Orientation};
use crate::quadric::{quadric_model, QuadricModel};
use crate::singularity::{cubic_surface, CubicSurface};
use crate::twistmap::{twist_bundle, TwistBundle};
use crate::Result;

use newton::CompiledSystem;

/// A complex line on the cubic surface.
#[derive(Clone, Debug)]
pub struct Line3 {
    /// Chart index: 0 for `x = t`, 1 for `y = t`, 2 for `z = t`.
    pub chart: usize,
    /// Chart coefficients `(a, b, c, d)`.
    pub coeffs: [Complex64; 4],
    /// Direction vector.
    pub direction: [Complex64; 3],
    /// Moment about the origin.
    pub moment: [Complex64; 3],
    /// Scaled max residual of the defining equations at the solution.
    pub residual: f64,
    /// True when all chart coefficients are real to tolerance.
    pub is_real: bool,
}

impl Line3 {
    fn from_chart(chart: usize, coeffs: [Complex64; 4], residual: f64, real_tol: f64) -> Self {
        let [a, b, c, d] = coeffs;
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let (p0, dir) = match chart {
            0 => ([zero, a, c], [one, b, d]),
            1 => ([a, zero, c], [b, one, d]),
            _ => ([a, c, zero], [b, d, one]),
        };
        let moment = numeric::cross3c(&p0, &dir);
        let is_real = coeffs
            .iter()
            .all(|z| z.im.abs() <= real_tol * (1.0 + z.re.abs()));
        Line3 {
            chart,
            coeffs,
            direction: dir,
            moment,
            residual,
            is_real,
        }
    }

    /// The six Plücker coordinates `(direction | moment)`.
    pub fn plucker(&self) -> [Complex64; 6] {
        [
            self.direction[0],
            self.direction[1],
            self.direction[2],
            self.moment[0],
            self.moment[1],
            self.moment[2],
        ]
    }

    /// Chart-0 coefficients `(a, b, c, d)` with `x = t`; `None` for lines
    /// with (numerically) vanishing `x`-direction.
    pub fn chart0_coeffs(&self) -> Option<[Complex64; 4]> {
        if self.chart == 0 {
            return Some(self.coeffs);
        }
        let dx = self.direction[0];
        let dnorm = self.direction.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if dx.norm() <= 1e-9 * dnorm {
            return None;
        }
        let b = self.direction[1] / dx;
        let d = self.direction[2] / dx;
        // point with x = 0: start from the chart base point and walk back
        let p0 = match self.chart {
            1 => [self.coeffs[0], Complex64::new(0.0, 0.0), self.coeffs[2]],
            _ => [self.coeffs[0], self.coeffs[2], Complex64::new(0.0, 0.0)],
        };
        let t = -p0[0] / dx;
        let a = p0[1] + t * self.direction[1];
        let c = p0[2] + t * self.direction[2];
        Some([a, b, c, d])
    }

    /// A real point on a real line at chart parameter `t`.
    pub fn real_point(&self, t: f64) -> [f64; 3] {
        let [a, b, c, d] = [
            self.coeffs[0].re,
            self.coeffs[1].re,
            self.coeffs[2].re,
            self.coeffs[3].re,
        ];
        match self.chart {
            0 => [t, a + b * t, c + d * t],
            1 => [a + b * t, t, c + d * t],
            _ => [a + b * t, c + d * t, t],
        }
    }
}

/// Search configuration for the line finder.
#[derive(Clone, Debug)]
pub struct LineSearchConfig {
    pub starts_per_chart: usize,
    pub seed: u64,
    /// Relative residual bound for accepting a root.
    pub residual_tol: f64,
    /// Coefficient-space distance for deduplication.
    pub dedup_tol: f64,
    /// Imaginary-part threshold for calling a line real.
    pub real_tol: f64,
    /// Stop as soon as this many distinct lines are known.
    pub expected: usize,
}

impl Default for LineSearchConfig {
    fn default() -> Self {
        LineSearchConfig {
            starts_per_chart: 2000,
            seed: 0,
            residual_tol: 1e-8,
            dedup_tol: 1e-6,
            real_tol: 1e-8,
            expected: 27,
        }
    }
}

/// Substitutes the chart parametrization into the cubic and returns the
/// four coefficient equations in `(a, b, c, d)`.
fn chart_equations(surface: &CubicSurface, chart: usize) -> Vec<MultiPoly> {
    let vars = VarSet::new(["a", "b", "c", "d", "t"]);
    let a = MultiPoly::var(&vars, 0);
    let b = MultiPoly::var(&vars, 1);
    let c = MultiPoly::var(&vars, 2);
    let d = MultiPoly::var(&vars, 3);
    let t = MultiPoly::var(&vars, 4);
    let lin1 = a.add(&b.mul(&t));
    let lin2 = c.add(&d.mul(&t));
    let images = match chart {
        0 => [t.clone(), lin1, lin2],
        1 => [lin1, t.clone(), lin2],
        _ => [lin1, lin2, t.clone()],
    };
    let composed = surface.f().substitute(&images);
    // collect by powers of t
    let mut eqs: Vec<MultiPoly> = (0..4).map(|_| MultiPoly::zero(&vars)).collect();
    for (m, coeff) in composed.terms() {
        let k = m.0[4] as usize;
        let mut exps = m.0.clone();
        exps[4] = 0;
        eqs[k] = eqs[k].add(&MultiPoly::from_terms(&vars, [(exps, coeff.clone())]));
    }
    eqs
}

/// Finds lines on the surface by multi-start Newton iteration over three
/// affine charts, deduplicating across charts by Plücker collinearity.
pub fn find_lines(surface: &CubicSurface, cfg: &LineSearchConfig) -> Result<Vec<Line3>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut lines: Vec<Line3> = Vec::new();
    let coeff_scale = surface.f().coeff_norm();
    for chart in 0..3 {
        if lines.len() >= cfg.expected {
            break;
        }
        let eqs = chart_equations(surface, chart);
        let sys = CompiledSystem::new(&eqs, 4);
        let mut gauss = || -> f64 {
            // Box-Muller
            let u1: f64 = rng.gen_range(1e-12..1.0);
            let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            (-2.0 * u1.ln()).sqrt() * u2.cos()
        };
        for _ in 0..cfg.starts_per_chart {
            if lines.len() >= cfg.expected {
                break;
            }
            let start: Vec<Complex64> = (0..4)
                .map(|_| Complex64::new(2.0 * gauss(), 2.0 * gauss()))
                .collect();
            let Some(root) = sys.solve(&start, 60, 1e-13) else {
                continue;
            };
            let xnorm = root.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let scale = coeff_scale * (1.0 + xnorm).powi(3);
            let residual = sys.residual(&root) / scale;
            if residual > cfg.residual_tol {
                continue;
            }
            let coeffs: [Complex64; 4] = [root[0], root[1], root[2], root[3]];
            let line = Line3::from_chart(chart, coeffs, residual, cfg.real_tol);
            let dup = lines.iter().any(|known| {
                numeric::collinearity_residual_c(&known.plucker(), &line.plucker())
                    < cfg.dedup_tol
            });
            if !dup {
                lines.push(line);
            }
        }
    }
    // deterministic order: by chart, then by real parts of the coefficients
    lines.sort_by(|l1, l2| {
        l1.chart.cmp(&l2.chart).then_with(|| {
            for k in 0..4 {
                let o = l1.coeffs[k]
                    .re
                    .partial_cmp(&l2.coeffs[k].re)
                    .unwrap_or(std::cmp::Ordering::Equal);
                if o != std::cmp::Ordering::Equal {
                    return o;
                }
            }
            std::cmp::Ordering::Equal
        })
    });
    Ok(lines)
}

/// Scale-normalized mutual-moment residual; zero iff the lines meet (or
/// are parallel).
pub fn incidence_residual(l1: &Line3, l2: &Line3) -> f64 {
    let recip = numeric::dot3c(&l1.direction, &l2.moment)
        + numeric::dot3c(&l2.direction, &l1.moment);
    let n1 = numeric::norm6c(&l1.plucker());
    let n2 = numeric::norm6c(&l2.plucker());
    recip.norm() / (n1 * n2)
}

/// Boolean incidence matrix under the given residual threshold.
pub fn incidence_matrix(lines: &[Line3], tol: f64) -> Vec<Vec<bool>> {
    let n = lines.len();
    let mut m = vec![vec![false; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let hit = incidence_residual(&lines[i], &lines[j]) < tol;
            m[i][j] = hit;
            m[j][i] = hit;
        }
    }
    m
}

/// The rational skew pair, its five transversals, and the incidence
/// partition of the remaining twenty lines.
#[derive(Clone, Debug)]
pub struct LineClassification {
    pub pair: [usize; 2],
    pub transversals: Vec<usize>,
    pub meet_one: Vec<usize>,
    pub meet_none: Vec<usize>,
    /// Monic orbit polynomial of the pair (constant first); `None` when
    /// the chart-0 coordinates are unavailable or the product is complex.
    pub pair_monic: Option<Vec<f64>>,
    /// Primitive integer form of the pair polynomial; `None` when no
    /// common denominator below the bound reproduces the coefficients.
    pub pair_integer: Option<Vec<BigInt>>,
    pub quintic_monic: Option<Vec<f64>>,
    pub quintic_integer: Option<Vec<BigInt>>,
}

fn d_value(line: &Line3) -> Option<Complex64> {
    line.chart0_coeffs().map(|c| c[3])
}

fn point_c(line: &Line3, t: Complex64) -> [Complex64; 3] {
    let [a, b, c, d] = line.coeffs;
    match line.chart {
        0 => [t, a + b * t, c + d * t],
        1 => [a + b * t, t, c + d * t],
        _ => [a + b * t, c + d * t, t],
    }
}

/// Collinearity residual of the reciprocal twist at two points of a line;
/// (near) zero exactly on the five exceptional lines, where the twist map
/// contracts the line to a single point of the quadric.
pub fn twist_constancy(bundle: &TwistBundle, line: &Line3) -> f64 {
    let eval = |t: f64| -> [Complex64; 6] {
        let p = point_c(line, Complex64::new(t, 0.0));
        let c = bundle.components();
        std::array::from_fn(|k| c[k].eval_complex(&p))
    };
    numeric::collinearity_residual_c(&eval(0.0), &eval(1.0))
}

/// Classifies the 27 lines. The five exceptional lines are recognized by a
/// constant reciprocal twist along the line; the distinguished pair is the
/// two skew lines meeting all five; the remaining twenty split by their
/// incidence with the pair. Orbit polynomials collect the chart-0 slope
/// coordinates `d` of the pair and of the exceptional five.
pub fn classify(
    lines: &[Line3],
    bundle: &TwistBundle,
    incidence_tol: f64,
) -> Result<LineClassification> {
    let n = lines.len();
    let inc = incidence_matrix(lines, incidence_tol);
    const MAX_DEN: u64 = 100_000_000;
    const RAT_TOL: f64 = 1e-8;
    let transversals: Vec<usize> = (0..n)
        .filter(|&k| twist_constancy(bundle, &lines[k]) < 1e-6)
        .collect();
    if transversals.len() != 5 {
        return Err(Error::Internal(format!(
            "expected 5 constant-twist lines, found {}",
            transversals.len()
        )));
    }
    let pair: Vec<usize> = (0..n)
        .filter(|&k| {
            !transversals.contains(&k) && transversals.iter().all(|&s| inc[k][s])
        })
        .collect();
    let [i, j] = pair[..] else {
        return Err(Error::Internal(format!(
            "expected 2 lines meeting all exceptional lines, found {}",
            pair.len()
        )));
    };
    if inc[i][j] {
        return Err(Error::Internal("distinguished pair is not skew".into()));
    }
    let mut meet_one = Vec::new();
    let mut meet_none = Vec::new();
    for k in 0..n {
        if k == i || k == j || transversals.contains(&k) {
            continue;
        }
        if inc[k][i] ^ inc[k][j] {
            meet_one.push(k);
        } else if !inc[k][i] && !inc[k][j] {
            meet_none.push(k);
        }
    }
    let orbit = |members: &[usize]| -> (Option<Vec<f64>>, Option<Vec<BigInt>>) {
        let roots: Option<Vec<Complex64>> =
            members.iter().map(|&k| d_value(&lines[k])).collect();
        let monic = roots.and_then(|r| rational::monic_from_roots(&r, 1e-6));
        let ints = monic
            .as_deref()
            .and_then(|m| rational::integer_polynomial(m, MAX_DEN, RAT_TOL));
        (monic, ints)
    };
    let (pair_monic, pair_integer) = orbit(&[i, j]);
    let (quintic_monic, quintic_integer) = orbit(&transversals);
    Ok(LineClassification {
        pair: [i, j],
        transversals,
        meet_one,
        meet_none,
        pair_monic,
        pair_integer,
        quintic_monic,
        quintic_integer,
    })
}

/// Diagnostics for one exceptional line. The constant reciprocal twist is
/// a pure rotation; its zero pitch makes the twist itself the Plücker
/// coordinate of the rotation axis, which meets all six limb lines.
/// Fields are complex because on random instances some of the five lines
/// may only be defined over an extension field.
#[derive(Clone, Debug)]
pub struct ExceptionalPoint {
    pub line_index: usize,
    /// Unit twist `(omega | v)`.
    pub twist: [Complex64; 6],
    pub is_real: bool,
    /// Collinearity residual of the twist at two points of the line.
    pub twist_constancy: f64,
    /// Normalized pitch `|omega . v| / (|omega| |v|)` (bilinear product).
    pub pitch: f64,
    /// Point on the rotation axis closest to the origin (real lines only;
    /// zero otherwise).
    pub axis_point: [f64; 3],
    pub axis_direction: [f64; 3],
    /// Worst reciprocal-product residual of the axis against the limbs.
    pub max_limb_incidence: f64,
    /// Membership residual on the twist quadric.
    pub quadric_residual: f64,
    /// Normalized Cramer determinant of the inverse map (vanishes here).
    pub cramer_det: f64,
}

fn dot3_bilinear(a: &[Complex64; 3], b: &[Complex64; 3]) -> Complex64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm3c(a: &[Complex64; 3]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Scale-invariant quadric-membership residual for a complex twist;
/// mirrors the real version on the model.
fn quadric_residual_c(model: &QuadricModel, t: &[Complex64; 6]) -> f64 {
    use num::ToPrimitive;
    let norm: f64 = t.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return 0.0;
    }
    let mut worst = 0.0f64;
    for row in model.linear() {
        let mut v = Complex64::new(0.0, 0.0);
        let mut cn = 0.0;
        for (c, x) in row.iter().zip(t) {
            let cf = c.to_f64().unwrap();
            v += cf * x;
            cn += cf.abs();
        }
        worst = worst.max(v.norm() / (cn * norm));
    }
    let mut q = Complex64::new(0.0, 0.0);
    let mut qn = 0.0;
    for i in 0..6 {
        for j in 0..6 {
            let c = model.quad_matrix()[i][j].to_f64().unwrap();
            q += c * t[i] * t[j];
            qn += c.abs();
        }
    }
    worst.max(q.norm() / (qn * norm * norm))
}

/// Evaluates the exceptional structure on the five transversal lines.
pub fn exceptional_points(
    arch: &Architecture,
    r: &Orientation,
    bundle: &TwistBundle,
    model: &QuadricModel,
    lines: &[Line3],
    class: &LineClassification,
) -> Result<Vec<ExceptionalPoint>> {
    let limb_base = arch.limb_vectors(r);
    let mut out = Vec::with_capacity(class.transversals.len());
    for &k in &class.transversals {
        let line = &lines[k];
        let p0 = point_c(line, Complex64::new(0.0, 0.0));
        let p1 = point_c(line, Complex64::new(1.0, 0.0));
        let comps = bundle.components();
        let eval = |p: &[Complex64; 3]| -> [Complex64; 6] {
            std::array::from_fn(|i| comps[i].eval_complex(p))
        };
        let t0 = eval(&p0);
        let t1 = eval(&p1);
        let twist_constancy = numeric::collinearity_residual_c(&t0, &t1);
        let norm = numeric::norm6c(&t0);
        if norm == 0.0 {
            return Err(Error::ZeroTwist);
        }
        let twist: [Complex64; 6] = std::array::from_fn(|i| t0[i] / norm);
        let omega = [twist[0], twist[1], twist[2]];
        let v = [twist[3], twist[4], twist[5]];
        let no = norm3c(&omega);
        let nv = norm3c(&v);
        let pitch = dot3_bilinear(&omega, &v).norm() / (no * nv).max(1e-300);
        // zero pitch: the twist is the axis line in Plücker coordinates,
        // so incidence with a limb is the mutual-moment (reciprocal) form
        let mut max_limb_incidence = 0.0f64;
        for p in [&p0, &p1] {
            for i in 0..6 {
                let ci = crate::geom::to_f64_3(&limb_base[i]);
                let f: [Complex64; 3] = std::array::from_fn(|s| ci[s] + p[s]);
                let a = crate::geom::to_f64_3(arch.a(i));
                let ac: [Complex64; 3] = a.map(|x| Complex64::new(x, 0.0));
                let m = numeric::cross3c(&ac, &f);
                let limb_norm = (norm3c(&f).powi(2) + norm3c(&m).powi(2)).sqrt();
                if limb_norm == 0.0 {
                    continue; // a limb can degenerate at the origin pose
                }
                let recip = dot3_bilinear(&omega, &m) + dot3_bilinear(&f, &v);
                max_limb_incidence = max_limb_incidence.max(recip.norm() / limb_norm);
            }
        }
        let quadric_residual = quadric_residual_c(model, &twist);
        let (bi, bj) = (model.dependency().basis[0], model.dependency().basis[1]);
        let abi = crate::geom::to_f64_3(arch.a(bi)).map(|x| Complex64::new(x, 0.0));
        let abj = crate::geom::to_f64_3(arch.a(bj)).map(|x| Complex64::new(x, 0.0));
        let rows = [v, numeric::cross3c(&omega, &abi), numeric::cross3c(&omega, &abj)];
        let det = dot3_bilinear(&numeric::cross3c(&rows[0], &rows[1]), &rows[2]);
        let scale: f64 = rows.iter().map(norm3c).product();
        let cramer_det = if scale == 0.0 { 0.0 } else { det.norm() / scale };
        let is_real = twist_is_real(&twist);
        let (axis_point, axis_direction) = if is_real {
            let or: [f64; 3] = std::array::from_fn(|i| omega[i].re);
            let vr: [f64; 3] = std::array::from_fn(|i| v[i].re);
            let n2 = numeric::dot3f(&or, &or);
            let c = numeric::cross3f(&or, &vr);
            ([c[0] / n2, c[1] / n2, c[2] / n2], or)
        } else {
            ([0.0; 3], [0.0; 3])
        };
        out.push(ExceptionalPoint {
            line_index: k,
            twist,
            is_real,
            twist_constancy,
            pitch,
            axis_point,
            axis_direction,
            max_limb_incidence,
            quadric_residual,
            cramer_det,
        });
    }
    Ok(out)
}

fn twist_is_real(t: &[Complex64; 6]) -> bool {
    // a complex scalar multiple of a real vector still counts: rotate the
    // largest component onto the real axis first
    let lead = t
        .iter()
        .max_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap())
        .copied()
        .unwrap_or(Complex64::new(1.0, 0.0));
    if lead.norm() == 0.0 {
        return true;
    }
    let phase = lead / lead.norm();
    t.iter()
        .all(|z| (z / phase).im.abs() <= 1e-8 * (1.0 + (z / phase).re.abs()))
}

/// Full numeric verification of the blow-up structure for one instance.
#[derive(Clone, Debug)]
pub struct BlowupReport {
    pub lines: Vec<Line3>,
    pub real_count: usize,
    pub max_line_residual: f64,
    pub classification: LineClassification,
    pub exceptional: Vec<ExceptionalPoint>,
}

/// Finds the lines, classifies them, and checks the exceptional structure.
pub fn blowup_report(
    arch: &Architecture,
    r: &Orientation,
    cfg: &LineSearchConfig,
    incidence_tol: f64,
) -> Result<BlowupReport> {
    let surface = cubic_surface(arch, r)?;
    let bundle = twist_bundle(arch, r)?;
    let model = quadric_model(arch, r, &bundle)?;
    let lines = find_lines(&surface, cfg)?;
    if lines.len() != cfg.expected {
        return Err(Error::Internal(format!(
            "found {} lines, expected {}",
            lines.len(),
            cfg.expected
        )));
    }
    let classification = classify(&lines, &bundle, incidence_tol)?;
    let exceptional = exceptional_points(arch, r, &bundle, &model, &lines, &classification)?;
    let real_count = lines.iter().filter(|l| l.is_real).count();
    let max_line_residual = lines.iter().map(|l| l.residual).fold(0.0, f64::max);
    Ok(BlowupReport {
        lines,
        real_count,
        max_line_residual,
        classification,
        exceptional,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::platform::case_study;

    fn case_f2() -> Vec<BigInt> {
        [-56i64, 4137, 2796].iter().map(|&v| BigInt::from(v)).collect()
    }

    fn case_f5() -> Vec<BigInt> {
        [
            -515006656i64,
            1491086416,
            -1145865348,
            -6870509,
            160133255,
            14853594,
        ]
        .iter()
        .map(|&v| BigInt::from(v))
        .collect()
    }

    fn case_report() -> BlowupReport {
        let (arch, r) = case_study();
        blowup_report(&arch, &r, &LineSearchConfig::default(), 1e-7).unwrap()
    }

    #[test]
    fn twenty_seven_real_lines_with_partition() {
        let report = case_report();
        assert_eq!(report.lines.len(), 27);
        assert_eq!(report.real_count, 27);
        assert!(report.max_line_residual < 1e-8);
        let c = &report.classification;
        assert_eq!(c.transversals.len(), 5);
        assert_eq!(c.meet_one.len(), 10);
        assert_eq!(c.meet_none.len(), 10);
    }

    #[test]
    fn orbit_polynomials_match_reference() {
        let report = case_report();
        let c = &report.classification;
        assert_eq!(c.pair_integer.as_ref().unwrap(), &case_f2());
        assert_eq!(c.quintic_integer.as_ref().unwrap(), &case_f5());
        // monic coefficients agree with the references to 1e-6
        let monic_ref = |ints: &[BigInt]| -> Vec<f64> {
            let lead = num::ToPrimitive::to_f64(ints.last().unwrap()).unwrap();
            ints.iter()
                .map(|v| num::ToPrimitive::to_f64(v).unwrap() / lead)
                .collect()
        };
        for (got, want) in c.pair_monic.as_ref().unwrap().iter().zip(monic_ref(&case_f2())) {
            assert!((got - want).abs() < 1e-6);
        }
        for (got, want) in c
            .quintic_monic
            .as_ref()
            .unwrap()
            .iter()
            .zip(monic_ref(&case_f5()))
        {
            assert!((got - want).abs() < 1e-6);
        }
    }

    #[test]
    fn exceptional_lines_carry_rotation_twists() {
        let report = case_report();
        assert_eq!(report.exceptional.len(), 5);
        for e in &report.exceptional {
            assert!(e.twist_constancy < 1e-8, "{}", e.twist_constancy);
            assert!(e.pitch < 1e-8, "{}", e.pitch);
            assert!(e.max_limb_incidence < 1e-8, "{}", e.max_limb_incidence);
            assert!(e.quadric_residual < 1e-8, "{}", e.quadric_residual);
            assert!(e.cramer_det.abs() < 1e-6, "{}", e.cramer_det);
        }
    }

    #[test]
    fn lines_lie_on_surface() {
        let (arch, r) = case_study();
        let surface = cubic_surface(&arch, &r).unwrap();
        let report = case_report();
        let scale = surface.f().coeff_norm();
        for line in &report.lines {
            for t in [-1.0, 0.0, 2.0] {
                let p = line.real_point(t);
                let val = surface.eval_f64(&p);
                let s = scale * (1.0 + numeric::norm3f(&p)).powi(3);
                assert!(val.abs() < 1e-7 * s, "residual {} at {:?}", val / s, p);
            }
        }
    }

    #[test]
    fn incidence_residual_examples() {
        // two lines through the origin meet; parallel offset lines do not
        let mk = |coeffs: [f64; 4]| {
            Line3::from_chart(0, coeffs.map(|v| Complex64::new(v, 0.0)), 0.0, 1e-8)
        };
        let l1 = mk([0.0, 1.0, 0.0, 0.0]);
        let l2 = mk([0.0, -1.0, 0.0, 1.0]);
        assert!(incidence_residual(&l1, &l2) < 1e-12);
        let l3 = mk([1.0, 0.0, 1.0, 0.0]);
        assert!(incidence_residual(&l1, &l3) > 1e-3);
    }

    #[test]
    fn chart0_conversion_is_consistent() {
        // a line found in chart 1 maps to the same Plücker coordinates
        let c = [0.5, 2.0, -1.0, 0.25].map(|v| Complex64::new(v, 0.0));
        let l = Line3::from_chart(1, c, 0.0, 1e-8);
        let c0 = l.chart0_coeffs().unwrap();
        let l0 = Line3::from_chart(0, c0, 0.0, 1e-8);
        assert!(numeric::collinearity_residual_c(&l.plucker(), &l0.plucker()) < 1e-12);
    }
}
