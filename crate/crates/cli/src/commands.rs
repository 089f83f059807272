use std::path::Path;

use anyhow::{bail, Context, Result};
use heis_core::c3fin::{self, Branch, CurvePoint};
use heis_core::sextic::{self, RootMethod, SexticPoly};
use heis_core::solver::{self, TheoremReport, VerifyOptions};
use heis_core::{constants, EquilateralCertificate};
use serde::Serialize;

use crate::input::read_points;
use crate::output::{emit, num, Table};
use crate::OutputArgs;

pub enum Outcome {
    Passed,
    Failed,
}

impl Outcome {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Passed
        } else {
            Outcome::Failed
        }
    }
}

#[derive(Serialize)]
struct VerifyBody<'a> {
    all_passed: bool,
    #[serde(flatten)]
    report: &'a TheoremReport,
}

pub fn verify(
    samples: usize,
    grid_n: usize,
    perturb_r0: Option<f64>,
    out: &OutputArgs,
) -> Result<Outcome> {
    if samples < 101 {
        bail!("--samples must be at least 101 (got {samples})");
    }
    if grid_n < 27 {
        bail!("--grid must be at least 27 (got {grid_n})");
    }
    let mut opts = VerifyOptions::new(samples);
    opts.grid_n = grid_n;
    if let Some(r0) = perturb_r0 {
        if !(r0.is_finite() && r0 > 0.0) {
            bail!("--perturb-r0 must be a positive number");
        }
        opts.r0 = r0;
    }
    let report = solver::verify_theorems_with(opts)?;
    // Timing is machine dependent, so it stays out of the report itself.
    for th in &report.theorems {
        eprintln!(
            "{} {} ({:.3}s)",
            if th.passed { "PASS" } else { "FAIL" },
            th.name,
            th.runtime.as_secs_f64()
        );
    }
    let body = VerifyBody {
        all_passed: report.all_passed(),
        report: &report,
    };
    emit(out, "verify", &body, |b| {
        let mut t = Table::new(&["theorem", "check", "value", "passed"]);
        for th in &b.report.theorems {
            t.row([
                th.name.clone(),
                "margin".into(),
                num(Some(th.margin)),
                th.passed.to_string(),
            ]);
            for c in &th.checks {
                t.row([
                    th.name.clone(),
                    c.label.replace(',', ";"),
                    num(Some(c.value)),
                    c.passed.to_string(),
                ]);
            }
        }
        t.into_string()
    })?;
    Ok(Outcome::from_bool(report.all_passed()))
}

#[derive(Serialize)]
struct CurveRow {
    theta: f64,
    phi_plus: f64,
    phi_minus: f64,
    f: f64,
    /// Undefined at the two endpoints.
    f_prime: Option<f64>,
    h: f64,
    s: f64,
    v: f64,
    /// Horizontality defect on the `+` branch; the `-` branch is its negative.
    defect: Option<f64>,
}

#[derive(Serialize)]
struct CurveBody {
    theta_star: f64,
    rows: Vec<CurveRow>,
}

fn curve_row(theta: f64) -> Result<CurveRow> {
    let interior = theta.abs() < constants::theta_star();
    Ok(CurveRow {
        theta,
        phi_plus: c3fin::phi(theta, Branch::Plus)?,
        phi_minus: c3fin::phi(theta, Branch::Minus)?,
        f: c3fin::f(theta)?,
        f_prime: if interior {
            c3fin::f_prime(theta).ok()
        } else {
            None
        },
        h: c3fin::h(theta)?,
        s: c3fin::s(theta)?,
        v: c3fin::v(theta)?,
        defect: if interior {
            c3fin::horizontality_defect(theta, Branch::Plus).ok()
        } else {
            None
        },
    })
}

pub fn curve(samples: usize, out: &OutputArgs) -> Result<Outcome> {
    if samples < 2 {
        bail!("--samples must be at least 2 (got {samples})");
    }
    let ts = constants::theta_star();
    let rows = (0..samples)
        .map(|k| {
            let theta = if k + 1 == samples {
                ts
            } else {
                -ts + 2.0 * ts * k as f64 / (samples - 1) as f64
            };
            curve_row(theta)
        })
        .collect::<Result<Vec<_>>>()?;
    let body = CurveBody {
        theta_star: ts,
        rows,
    };
    emit(out, "curve", &body, |b| {
        let mut t = Table::new(&[
            "theta",
            "phi_plus",
            "phi_minus",
            "f",
            "f_prime",
            "h",
            "s",
            "v",
            "defect",
        ]);
        for r in &b.rows {
            t.row([
                num(Some(r.theta)),
                num(Some(r.phi_plus)),
                num(Some(r.phi_minus)),
                num(Some(r.f)),
                num(r.f_prime),
                num(Some(r.h)),
                num(Some(r.s)),
                num(Some(r.v)),
                num(r.defect),
            ]);
        }
        t.into_string()
    })?;
    Ok(Outcome::Passed)
}

#[derive(Serialize)]
struct PartnerRow {
    theta: f64,
    half_tan: f64,
    phi: f64,
    branch: Branch,
    distance: f64,
}

#[derive(Serialize)]
struct PolyBody {
    t0: f64,
    boundary: bool,
    /// Ascending powers of `t`.
    coefficients: [f64; 7],
    degree: usize,
    method: RootMethod,
    roots: Vec<f64>,
    partners: Vec<PartnerRow>,
    gap: Option<f64>,
}

pub fn poly(t0: f64, boundary: bool, out: &OutputArgs) -> Result<Outcome> {
    let ts = constants::t_star();
    let t0 = if boundary {
        // Accept any value that rounds to t* at six decimals.
        if !t0.is_finite() || (t0.abs() - ts).abs() > 5e-6 {
            bail!("--boundary needs t0 = ±{ts} (got {t0})");
        }
        ts.copysign(t0)
    } else {
        t0
    };
    sextic::check_parameter(t0).context("--t0 must lie in [-t*, t*]")?;
    let poly = SexticPoly::build(t0)?;
    let roots = sextic::admissible_roots(t0)?;
    let p0 = CurvePoint::new(2.0 * t0.atan(), Branch::Plus)?;
    let e0 = p0.embed();
    let partners = solver::partners(&p0)?
        .into_iter()
        .map(|q| PartnerRow {
            theta: q.theta(),
            half_tan: q.half_tan(),
            phi: q.phi(),
            branch: q.branch(),
            distance: e0.distance(&q.embed()),
        })
        .collect();
    let is_boundary = sextic::is_boundary(t0);
    let body = PolyBody {
        t0,
        boundary: is_boundary,
        coefficients: poly.coeffs,
        degree: poly.degree(),
        method: roots.method,
        roots: roots.roots,
        partners,
        gap: if is_boundary {
            None
        } else {
            solver::partner_gap(&p0).ok()
        },
    };
    emit(out, "poly", &body, |b| {
        let mut t = Table::new(&["kind", "index", "value", "branch", "phi", "distance"]);
        for (i, c) in b.coefficients.iter().enumerate() {
            t.row([
                "coefficient".to_string(),
                i.to_string(),
                num(Some(*c)),
                String::new(),
                String::new(),
                String::new(),
            ]);
        }
        for (i, r) in b.roots.iter().enumerate() {
            t.row([
                "root".to_string(),
                i.to_string(),
                num(Some(*r)),
                String::new(),
                String::new(),
                String::new(),
            ]);
        }
        for (i, p) in b.partners.iter().enumerate() {
            let branch = match p.branch {
                Branch::Plus => "+",
                Branch::Minus => "-",
            };
            t.row([
                "partner".to_string(),
                i.to_string(),
                num(Some(p.half_tan)),
                branch.to_string(),
                num(Some(p.phi)),
                num(Some(p.distance)),
            ]);
        }
        if let Some(g) = b.gap {
            t.row([
                "gap".to_string(),
                "0".to_string(),
                num(Some(g)),
                String::new(),
                String::new(),
                String::new(),
            ]);
        }
        t.into_string()
    })?;
    Ok(Outcome::Passed)
}

#[derive(Serialize)]
struct ZeroRow {
    t0: f64,
    t: f64,
}

#[derive(Serialize)]
struct SweepBody {
    samples: usize,
    zeros: Vec<ZeroRow>,
}

/// Zero set of `P` over the parameter square, one row per (t0, root), with
/// both boundary parameters included.
pub fn poly_sweep(samples: usize, out: &OutputArgs) -> Result<Outcome> {
    if samples < 2 {
        bail!("--samples must be at least 2 (got {samples})");
    }
    let ts = constants::t_star();
    let mut params = vec![-ts];
    params.extend(solver::sweep_parameters(samples));
    params.push(ts);
    let mut zeros = Vec::new();
    for t0 in params {
        for t in sextic::admissible_roots(t0)?.roots {
            zeros.push(ZeroRow { t0, t });
        }
    }
    let body = SweepBody { samples, zeros };
    emit(out, "poly-sweep", &body, |b| {
        let mut t = Table::new(&["t0", "t"]);
        for z in &b.zeros {
            t.row([num(Some(z.t0)), num(Some(z.t))]);
        }
        t.into_string()
    })?;
    Ok(Outcome::Passed)
}

#[derive(Serialize)]
struct CertifyBody<'a> {
    #[serde(flatten)]
    certificate: &'a EquilateralCertificate,
    max_residual: f64,
    worst_pair: (usize, usize),
    worst_distance: f64,
}

pub fn certify(input: &Path, tol: f64, out: &OutputArgs) -> Result<Outcome> {
    if !(tol.is_finite() && tol > 0.0) {
        bail!("--tol must be a positive number");
    }
    let points = read_points(input)?;
    let cert = solver::certify(&points, tol)?;
    let (i, j, d) = cert.worst_pair();
    let body = CertifyBody {
        certificate: &cert,
        max_residual: cert.max_residual(),
        worst_pair: (i, j),
        worst_distance: d,
    };
    emit(out, "certify", &body, |b| {
        let mut t = Table::new(&["i", "j", "distance", "residual"]);
        let pts = &b.certificate.points;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                t.row([
                    i.to_string(),
                    j.to_string(),
                    num(Some(pts[i].distance(&pts[j]))),
                    num(Some(b.certificate.residuals[i][j])),
                ]);
            }
        }
        t.row([
            "verdict".to_string(),
            String::new(),
            String::new(),
            b.certificate.verdict.to_string(),
        ]);
        t.into_string()
    })?;
    if !cert.verdict {
        eprintln!("not equilateral: pair ({i}, {j}) at distance {d:?}");
    }
    Ok(Outcome::from_bool(cert.verdict))
}
