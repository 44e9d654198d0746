//! Machine-readable reports for every pipeline stage, plus the aggregate
//! verification run. All documents carry a schema version, the seed, and
//! the tolerance, so identical configurations reproduce identical bytes.

use num::complex::Complex64;
use serde::Serialize;

use crate::birational::{parametrize_surface, roundtrip_report};
use crate::exactpoly::{rat, rat_to_string};
use crate::infinity::{infinity_model, self_reciprocity_sweep};
use crate::lines::{blowup_report, BlowupReport, LineSearchConfig};
use crate::numeric;
use crate::platform::{Architecture, Orientation};
use crate::quadric::{parametrize_quadric, quadric_model};
use crate::singularity::{cubic_surface, smoothness_probe};
use crate::twistmap::{twist_bundle, twist_infinity, twist_infinity_fallback};
use crate::Result;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Meta {
    pub schema_version: u32,
    pub command: String,
    pub seed: u64,
    pub tol: f64,
}

impl Meta {
    pub fn new(command: &str, seed: u64, tol: f64) -> Self {
        Meta {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            seed,
            tol,
        }
    }
}

fn c2(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

// ---------------------------------------------------------------- surface

#[derive(Clone, Debug, Serialize)]
pub struct SmoothnessSummary {
    pub samples: usize,
    pub min_gradient_norm: f64,
    pub min_sigma5: f64,
    pub possibly_singular: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurfaceReport {
    pub meta: Meta,
    pub f: String,
    pub f_homogeneous: String,
    pub curve_at_infinity: String,
    pub degree: u32,
    pub degenerate: bool,
    pub smoothness: SmoothnessSummary,
}

pub fn surface_report(
    arch: &Architecture,
    r: &Orientation,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<SurfaceReport> {
    let surface = cubic_surface(arch, r)?;
    let probe = smoothness_probe(&surface, samples, seed);
    Ok(SurfaceReport {
        meta: Meta::new("surface", seed, tol),
        f: surface.f().to_string(),
        f_homogeneous: surface.f_h().to_string(),
        curve_at_infinity: surface.h3().to_string(),
        degree: surface.f().total_degree(),
        degenerate: surface.is_degenerate(),
        smoothness: SmoothnessSummary {
            samples: probe.samples.len(),
            min_gradient_norm: probe.min_grad_norm,
            min_sigma5: probe.min_sigma5,
            possibly_singular: probe.possibly_singular,
        },
    })
}

// ------------------------------------------------------------------ twist

#[derive(Clone, Debug, Serialize)]
pub struct TwistReport {
    pub meta: Meta,
    pub omega: [String; 3],
    pub v: [String; 3],
    pub line_at_infinity: String,
    pub v_at_infinity: [String; 3],
    pub fallback_factor: String,
    pub fallback_v: [String; 3],
}

pub fn twist_report(arch: &Architecture, r: &Orientation, seed: u64, tol: f64) -> Result<TwistReport> {
    let bundle = twist_bundle(arch, r)?;
    let inf = twist_infinity(&bundle)?;
    let fb = twist_infinity_fallback(arch, r)?;
    Ok(TwistReport {
        meta: Meta::new("twist", seed, tol),
        omega: std::array::from_fn(|k| bundle.omega()[k].to_string()),
        v: std::array::from_fn(|k| bundle.v()[k].to_string()),
        line_at_infinity: inf.line().to_string(),
        v_at_infinity: std::array::from_fn(|k| inf.v_inf()[k].to_string()),
        fallback_factor: fb.factor().to_string(),
        fallback_v: std::array::from_fn(|k| fb.v3()[k].to_string()),
    })
}

// ---------------------------------------------------------------- quadric

#[derive(Clone, Debug, Serialize)]
pub struct QuadricReport {
    pub meta: Meta,
    /// Indices (0-based) of the base-joint triple used as a basis.
    pub basis: [usize; 3],
    pub dependent: [usize; 2],
    pub linear: [String; 2],
    pub quadratic: String,
    pub base_point: [String; 6],
}

pub fn quadric_report(arch: &Architecture, r: &Orientation, seed: u64, tol: f64) -> Result<QuadricReport> {
    let bundle = twist_bundle(arch, r)?;
    let model = quadric_model(arch, r, &bundle)?;
    let dep = model.dependency();
    Ok(QuadricReport {
        meta: Meta::new("quadric", seed, tol),
        basis: dep.basis,
        dependent: dep.others,
        linear: std::array::from_fn(|k| model.linear_polys()[k].to_string()),
        quadratic: model.quad_poly().to_string(),
        base_point: std::array::from_fn(|k| rat_to_string(&model.base_point()[k])),
    })
}

// ------------------------------------------------------------------ param

#[derive(Clone, Debug, Serialize)]
pub struct ParamSample {
    pub s: String,
    pub t: String,
    pub pose: [f64; 3],
    /// Surface residual of the pose; exactly zero in rational mode.
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParamReport {
    pub meta: Meta,
    pub numerators: [String; 3],
    pub denominator: String,
    pub twist: [String; 6],
    pub samples: Vec<ParamSample>,
}

pub fn param_report(
    arch: &Architecture,
    r: &Orientation,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<ParamReport> {
    let surface = cubic_surface(arch, r)?;
    let bundle = twist_bundle(arch, r)?;
    let model = quadric_model(arch, r, &bundle)?;
    let qparam = parametrize_quadric(&model)?;
    let sparam = parametrize_surface(arch, r, &model, &qparam)?;
    let mut out = Vec::with_capacity(samples);
    // deterministic rational grid spiralling out from the origin
    let mut k: i64 = 0;
    while out.len() < samples && k < 50 * samples as i64 + 100 {
        k += 1;
        let s = rat(k % 17 - 8, 1 + (k % 5) as i64);
        let t = rat((k * 3) % 23 - 11, 1 + (k % 7) as i64);
        let Some(pose) = sparam.eval(&s, &t) else {
            continue;
        };
        use num::Zero;
        let residual = surface.eval_rat(&pose);
        debug_assert!(residual.is_zero());
        out.push(ParamSample {
            s: rat_to_string(&s),
            t: rat_to_string(&t),
            pose: crate::geom::to_f64_3(&pose),
            residual: num::ToPrimitive::to_f64(&residual).unwrap_or(f64::NAN),
        });
    }
    Ok(ParamReport {
        meta: Meta::new("param", seed, tol),
        numerators: std::array::from_fn(|k| sparam.numerators()[k].to_string()),
        denominator: sparam.denominator().to_string(),
        twist: std::array::from_fn(|k| sparam.twist_polys()[k].to_string()),
        samples: out,
    })
}

/// CSV rendering of the sampled poses (header always present).
pub fn param_csv(report: &ParamReport) -> String {
    let mut out = String::from("s,t,x,y,z,residual\n");
    for row in &report.samples {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.s, row.t, row.pose[0], row.pose[1], row.pose[2], row.residual
        ));
    }
    out
}

// ------------------------------------------------------------------ lines

#[derive(Clone, Debug, Serialize)]
pub struct LineEntry {
    pub index: usize,
    pub chart: usize,
    /// Chart coefficients `(a, b, c, d)` as `[re, im]` pairs.
    pub coeffs: [[f64; 2]; 4],
    pub plucker: [[f64; 2]; 6],
    pub residual: f64,
    pub is_real: bool,
    /// `pair` | `exceptional` | `meet-one` | `meet-none`.
    pub class: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExceptionalEntry {
    pub line_index: usize,
    /// Unit twist `(omega | v)` as `[re, im]` pairs.
    pub twist: [[f64; 2]; 6],
    pub is_real: bool,
    pub twist_constancy: f64,
    pub pitch: f64,
    pub axis_point: [f64; 3],
    pub axis_direction: [f64; 3],
    pub max_limb_incidence: f64,
    pub quadric_residual: f64,
    pub cramer_det: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LinesReport {
    pub meta: Meta,
    pub count: usize,
    pub real_count: usize,
    pub max_residual: f64,
    pub pair: [usize; 2],
    pub pair_polynomial: Vec<String>,
    pub quintic_polynomial: Vec<String>,
    pub lines: Vec<LineEntry>,
    pub exceptional: Vec<ExceptionalEntry>,
}

fn line_class(report: &BlowupReport, k: usize) -> String {
    let c = &report.classification;
    if c.pair.contains(&k) {
        "pair"
    } else if c.transversals.contains(&k) {
        "exceptional"
    } else if c.meet_one.contains(&k) {
        "meet-one"
    } else {
        "meet-none"
    }
    .to_string()
}

fn lines_report_from(report: &BlowupReport, seed: u64, tol: f64) -> LinesReport {
    LinesReport {
        meta: Meta::new("lines", seed, tol),
        count: report.lines.len(),
        real_count: report.real_count,
        max_residual: report.max_line_residual,
        pair: report.classification.pair,
        pair_polynomial: report
            .classification
            .pair_integer
            .iter()
            .flatten()
            .map(|v| v.to_string())
            .collect(),
        quintic_polynomial: report
            .classification
            .quintic_integer
            .iter()
            .flatten()
            .map(|v| v.to_string())
            .collect(),
        lines: report
            .lines
            .iter()
            .enumerate()
            .map(|(k, l)| LineEntry {
                index: k,
                chart: l.chart,
                coeffs: l.coeffs.map(c2),
                plucker: l.plucker().map(c2),
                residual: l.residual,
                is_real: l.is_real,
                class: line_class(report, k),
            })
            .collect(),
        exceptional: report
            .exceptional
            .iter()
            .map(|e| ExceptionalEntry {
                line_index: e.line_index,
                twist: e.twist.map(c2),
                is_real: e.is_real,
                twist_constancy: e.twist_constancy,
                pitch: e.pitch,
                axis_point: e.axis_point,
                axis_direction: e.axis_direction,
                max_limb_incidence: e.max_limb_incidence,
                quadric_residual: e.quadric_residual,
                cramer_det: e.cramer_det,
            })
            .collect(),
    }
}

pub fn lines_report(arch: &Architecture, r: &Orientation, seed: u64, tol: f64) -> Result<LinesReport> {
    let cfg = LineSearchConfig {
        seed,
        ..LineSearchConfig::default()
    };
    let report = blowup_report(arch, r, &cfg, 1e-7)?;
    Ok(lines_report_from(&report, seed, tol))
}

// --------------------------------------------------------------- infinity

#[derive(Clone, Debug, Serialize)]
pub struct InfinityPointEntry {
    pub direction: [[f64; 2]; 3],
    pub is_real: bool,
    pub quadratic_residual: f64,
    pub cubic_magnitude: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct InfinityReport {
    pub meta: Meta,
    pub curve: String,
    pub line: String,
    pub v_at_infinity: [String; 3],
    pub indetermination_points: Vec<InfinityPointEntry>,
    pub sweep_samples: usize,
    pub sweep_violations: usize,
    pub sweep_max_self_pairing: f64,
}

pub fn infinity_report(
    arch: &Architecture,
    r: &Orientation,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<InfinityReport> {
    let model = infinity_model(arch, r)?;
    let sweep = self_reciprocity_sweep(&model, samples, seed, tol.max(1e-12));
    Ok(InfinityReport {
        meta: Meta::new("infinity", seed, tol),
        curve: model.h3().to_string(),
        line: model.quadratic().line().to_string(),
        v_at_infinity: std::array::from_fn(|k| model.quadratic().v_inf()[k].to_string()),
        indetermination_points: model
            .indetermination_points()
            .iter()
            .map(|p| InfinityPointEntry {
                direction: p.dir.map(c2),
                is_real: p.is_real,
                quadratic_residual: p.quadratic_residual,
                cubic_magnitude: p.cubic_magnitude,
            })
            .collect(),
        sweep_samples: sweep.samples.len(),
        sweep_violations: sweep.violations,
        sweep_max_self_pairing: sweep.max_self_pairing,
    })
}

// ------------------------------------------------------------------ verify

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub meta: Meta,
    pub passed: bool,
    pub checks: Vec<Check>,
}

fn check(checks: &mut Vec<Check>, name: &str, result: Result<(bool, String)>) {
    let (passed, detail) = match result {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    checks.push(Check {
        name: name.to_string(),
        passed,
        detail,
    });
}

/// Runs the full pipeline and records every outcome as a finding instead
/// of an error, so degenerate inputs produce a report rather than a crash.
pub fn verify_report(arch: &Architecture, r: &Orientation, seed: u64, tol: f64) -> VerifyReport {
    let mut checks = Vec::new();

    check(&mut checks, "surface-degree-3", (|| {
        let surface = cubic_surface(arch, r)?;
        let d = surface.f().total_degree();
        Ok((d == 3 && !surface.is_degenerate(), format!("degree {d}")))
    })());

    check(&mut checks, "surface-smooth-probe", (|| {
        let surface = cubic_surface(arch, r)?;
        let probe = smoothness_probe(&surface, 40, seed);
        Ok((
            !probe.possibly_singular,
            format!(
                "min gradient {:.3e}, min sigma5 {:.3e}",
                probe.min_grad_norm, probe.min_sigma5
            ),
        ))
    })());

    check(&mut checks, "twist-annihilates-limbs", (|| {
        let surface = cubic_surface(arch, r)?;
        let bundle = twist_bundle(arch, r)?;
        let probe = smoothness_probe(&surface, 25, seed ^ 1);
        let mut worst = 0.0f64;
        for sample in &probe.samples {
            let p = sample.point;
            let tw = bundle.eval_f64(&p);
            let tn = numeric::norm6(&tw);
            if tn < 1e-12 {
                continue;
            }
            for s in limb_screws_f64(arch, r, &p) {
                let recip = numeric::dot3f(&s.0, &[tw[3], tw[4], tw[5]])
                    + numeric::dot3f(&[tw[0], tw[1], tw[2]], &s.1);
                let scale = (numeric::dot3f(&s.0, &s.0) + numeric::dot3f(&s.1, &s.1)).sqrt();
                if scale > 0.0 {
                    worst = worst.max(recip.abs() / (scale * tn));
                }
            }
        }
        Ok((worst <= tol.max(1e-8), format!("max residual {worst:.3e}")))
    })());

    check(&mut checks, "quadric-contains-twists", (|| {
        let surface = cubic_surface(arch, r)?;
        let bundle = twist_bundle(arch, r)?;
        let model = quadric_model(arch, r, &bundle)?;
        let probe = smoothness_probe(&surface, 25, seed ^ 2);
        let mut worst = 0.0f64;
        for sample in &probe.samples {
            let tw = bundle.eval_f64(&sample.point);
            let tn = numeric::norm6(&tw);
            if tn < 1e-12 {
                continue;
            }
            let unit: [f64; 6] = std::array::from_fn(|k| tw[k] / tn);
            worst = worst.max(model.residual_f64(&unit));
        }
        Ok((worst <= tol.max(1e-8), format!("max residual {worst:.3e}")))
    })());

    check(&mut checks, "birational-roundtrips", (|| {
        let report = roundtrip_report(arch, r, 25, 25, seed)?;
        let ok = report.exact_on_surface == report.exact_samples
            && report.exact_twist_match == report.exact_samples
            && report.max_pose_error <= 1e-8
            && report.max_twist_residual <= 1e-8;
        Ok((
            ok,
            format!(
                "{} exact poses on surface, pose error {:.3e}, twist residual {:.3e}",
                report.exact_on_surface, report.max_pose_error, report.max_twist_residual
            ),
        ))
    })());

    let blowup = blowup_report(
        arch,
        r,
        &LineSearchConfig {
            seed,
            ..LineSearchConfig::default()
        },
        1e-7,
    );
    match &blowup {
        Ok(b) => {
            check(
                &mut checks,
                "lines-count-27",
                Ok((b.lines.len() == 27, format!("{} lines", b.lines.len()))),
            );
            let c = &b.classification;
            let part = (
                c.pair.len(),
                c.transversals.len(),
                c.meet_one.len(),
                c.meet_none.len(),
            );
            check(
                &mut checks,
                "line-partition-2-5-10-10",
                Ok((part == (2, 5, 10, 10), format!("{part:?}"))),
            );
            let worst = b
                .exceptional
                .iter()
                .map(|e| {
                    e.twist_constancy
                        .max(e.pitch)
                        .max(e.max_limb_incidence)
                        .max(e.quadric_residual)
                })
                .fold(0.0f64, f64::max);
            let worst_det = b
                .exceptional
                .iter()
                .map(|e| e.cramer_det.abs())
                .fold(0.0f64, f64::max);
            check(
                &mut checks,
                "exceptional-structure",
                Ok((
                    b.exceptional.len() == 5 && worst <= 1e-8 && worst_det <= 1e-6,
                    format!(
                        "{} exceptional lines, residual {:.3e}, det {:.3e}",
                        b.exceptional.len(),
                        worst,
                        worst_det
                    ),
                )),
            );
        }
        Err(e) => {
            check(&mut checks, "lines-count-27", Err(crate::error::Error::Internal(e.to_string())));
        }
    }

    check(&mut checks, "infinity-structure", (|| {
        let model = infinity_model(arch, r)?;
        let n = model.indetermination_points().len();
        let sweep = self_reciprocity_sweep(&model, 50, seed, tol.max(1e-7));
        Ok((
            n == 2 && sweep.violations == 0,
            format!(
                "{n} indetermination points, {} sweep violations",
                sweep.violations
            ),
        ))
    })());

    let passed = checks.iter().all(|c| c.passed);
    VerifyReport {
        meta: Meta::new("verify", seed, tol),
        passed,
        checks,
    }
}

fn limb_screws_f64(
    arch: &Architecture,
    r: &Orientation,
    p: &[f64; 3],
) -> Vec<([f64; 3], [f64; 3])> {
    let c = arch.limb_vectors(r);
    (0..6)
        .map(|i| {
            let ci = crate::geom::to_f64_3(&c[i]);
            let f: [f64; 3] = std::array::from_fn(|k| ci[k] + p[k]);
            let a = crate::geom::to_f64_3(arch.a(i));
            (f, numeric::cross3f(&a, &f))
        })
        .collect()
}

// ------------------------------------------------------------------- mesh

/// CSV grid of surface values over the cube `[-half, half]^3`.
pub fn mesh_grid_csv(arch: &Architecture, r: &Orientation, half: f64, n: usize) -> Result<String> {
    if half <= 0.0 || n < 2 {
        return Err(crate::error::Error::Input(
            "mesh box must be positive and the grid at least 2".into(),
        ));
    }
    let surface = cubic_surface(arch, r)?;
    let mut out = String::from("x,y,z,f\n");
    let step = 2.0 * half / (n - 1) as f64;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let p = [
                    -half + step * i as f64,
                    -half + step * j as f64,
                    -half + step * k as f64,
                ];
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    p[0],
                    p[1],
                    p[2],
                    surface.eval_f64(&p)
                ));
            }
        }
    }
    Ok(out)
}

/// The 27 lines with class tags, serialized for external renderers.
pub fn mesh_lines_json(arch: &Architecture, r: &Orientation, seed: u64, tol: f64) -> Result<String> {
    let report = lines_report(arch, r, seed, tol)?;
    serde_json::to_string_pretty(&report).map_err(|e| crate::error::Error::Internal(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::platform::case_study;

    #[test]
    fn surface_report_contains_the_cubic() {
        let (arch, r) = case_study();
        let rep = surface_report(&arch, &r, 10, 0, 1e-9).unwrap();
        assert_eq!(rep.degree, 3);
        assert!(rep.f.starts_with("80*x^3"));
        assert!(!rep.smoothness.possibly_singular);
        let json = serde_json::to_string(&rep).unwrap();
        assert!(json.contains("\"schema_version\":1"));
    }

    #[test]
    fn param_report_sampling_is_exact_and_deterministic() {
        let (arch, r) = case_study();
        let rep1 = param_report(&arch, &r, 20, 3, 1e-9).unwrap();
        let rep2 = param_report(&arch, &r, 20, 3, 1e-9).unwrap();
        assert_eq!(rep1.samples.len(), 20);
        for s in &rep1.samples {
            assert_eq!(s.residual, 0.0);
        }
        assert_eq!(
            serde_json::to_string(&rep1).unwrap(),
            serde_json::to_string(&rep2).unwrap()
        );
        let csv = param_csv(&rep1);
        assert!(csv.starts_with("s,t,x,y,z,residual\n"));
        assert_eq!(csv.lines().count(), 21);
    }

    #[test]
    fn empty_param_sampling_gives_header_only_csv() {
        let (arch, r) = case_study();
        let rep = param_report(&arch, &r, 0, 0, 1e-9).unwrap();
        assert_eq!(param_csv(&rep), "s,t,x,y,z,residual\n");
    }

    #[test]
    fn verify_report_is_green_on_the_case_study() {
        let (arch, r) = case_study();
        let rep = verify_report(&arch, &r, 0, 1e-8);
        for c in &rep.checks {
            assert!(c.passed, "check {} failed: {}", c.name, c.detail);
        }
        assert!(rep.passed);
    }

    #[test]
    fn mesh_grid_has_expected_size_and_rejects_bad_boxes() {
        let (arch, r) = case_study();
        let csv = mesh_grid_csv(&arch, &r, 2.0, 4).unwrap();
        assert_eq!(csv.lines().count(), 1 + 4 * 4 * 4);
        assert!(mesh_grid_csv(&arch, &r, 0.0, 4).is_err());
        assert!(mesh_grid_csv(&arch, &r, 1.0, 1).is_err());
    }
}
