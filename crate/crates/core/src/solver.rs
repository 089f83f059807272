//! Equilateral certificates, canonical sets, unit-distance partners on the
//! curve, and the composite theorem checks.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::c3fin::{Branch, CurvePoint};
use crate::ccircle;
use crate::constants;
use crate::error::{Error, Result};
use crate::heis::{distance, distance4, HeisPoint};
use crate::optimize::{newton3, NelderMead};
use crate::sextic::{self, AdmissibleRoots};

/// A candidate partner counts as verified when `|d - 1|` is below this.
pub const PARTNER_TOL: f64 = 1e-9;
/// Tolerance for the canonical certificates.
pub const CANONICAL_TOL: f64 = 1e-12;
/// Lower bound on the partner gap required by the sweep.
pub const GAP_THRESHOLD: f64 = 1e-3;
/// A refined basin with max-deviation below this is an equidistant point.
pub const SOLUTION_THRESHOLD: f64 = 1e-3;
/// Grid local minima above this deviation are not refined.
const SEED_THRESHOLD: f64 = 0.25;
/// Refined minima closer than this are one basin.
const BASIN_MERGE: f64 = 1e-5;

/// Pairwise residuals `|d(p_i, p_j) - target|` of a point set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilateralCertificate {
    pub points: Vec<HeisPoint>,
    pub target: f64,
    pub residuals: Vec<Vec<f64>>,
    pub tol: f64,
    pub verdict: bool,
}

impl EquilateralCertificate {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().flatten().fold(0.0, |m, &r| m.max(r))
    }

    /// Indices and distance of the pair with the largest residual.
    pub fn worst_pair(&self) -> (usize, usize, f64) {
        let mut worst = (0, 1, -1.0);
        for i in 0..self.points.len() {
            for j in i + 1..self.points.len() {
                if self.residuals[i][j] > worst.2 {
                    worst = (i, j, self.residuals[i][j]);
                }
            }
        }
        (
            worst.0,
            worst.1,
            distance(&self.points[worst.0], &self.points[worst.1]),
        )
    }
}

/// Check that every pair of `points` is at unit distance to within `tol`.
pub fn certify(points: &[HeisPoint], tol: f64) -> Result<EquilateralCertificate> {
    if points.len() < 2 {
        return Err(Error::TooFewPoints(points.len()));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive"));
    }
    let n = points.len();
    let mut residuals = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let r = (distance(&points[i], &points[j]) - 1.0).abs();
            residuals[i][j] = r;
            residuals[j][i] = r;
        }
    }
    let mut cert = EquilateralCertificate {
        points: points.to_vec(),
        target: 1.0,
        residuals,
        tol,
        verdict: false,
    };
    cert.verdict = cert.max_residual() <= tol;
    Ok(cert)
}

/// `(r, 0), (r e^{2πi/3}, 0), (r e^{-2πi/3}, 0)`.
pub fn s3_points(r: f64) -> [HeisPoint; 3] {
    let a = constants::CANONICAL_ANGLE;
    [
        HeisPoint::from_parts(r, 0.0, 0.0),
        HeisPoint::new(Complex64::from_polar(r, a), 0.0),
        HeisPoint::new(Complex64::from_polar(r, -a), 0.0),
    ]
}

/// The canonical triple together with `(0, sqrt(11/12))`.
pub fn s4_points(r: f64) -> [HeisPoint; 4] {
    let [a, b, c] = s3_points(r);
    [
        a,
        b,
        c,
        HeisPoint::from_parts(0.0, 0.0, constants::canonical_height()),
    ]
}

pub fn canonical_s3() -> EquilateralCertificate {
    certify(&s3_points(constants::r0()), CANONICAL_TOL).expect("three points")
}

pub fn canonical_s4() -> EquilateralCertificate {
    certify(&s4_points(constants::r0()), CANONICAL_TOL).expect("four points")
}

/// Curve points at unit distance from `p0`.
///
/// Each admissible root `t` of `P_{t0}` gives the latitude `2 arctan t`; the
/// branch is chosen by checking the distance directly, since `P = 0` is only
/// a necessary condition. On the boundary both branches at the single root
/// qualify.
pub fn partners(p0: &CurvePoint) -> Result<Vec<CurvePoint>> {
    let t0 = p0.half_tan();
    let roots = sextic::admissible_roots(t0)?;
    Ok(partners_from_roots(p0, &roots)?
        .into_iter()
        .map(|(p, _)| p)
        .collect())
}

fn partners_from_roots(p0: &CurvePoint, roots: &AdmissibleRoots) -> Result<Vec<(CurvePoint, f64)>> {
    let e0 = p0.embed();
    let mut out: Vec<(CurvePoint, f64)> = Vec::new();
    for &t in &roots.roots {
        let theta = 2.0 * t.atan();
        for branch in [Branch::Plus, Branch::Minus] {
            let cand = CurvePoint::new(theta, branch)?;
            let dev = (distance(&cand.embed(), &e0) - 1.0).abs();
            let duplicate = out.iter().any(|(q, _)| {
                (q.theta() - cand.theta()).abs() < 1e-12 && (q.phi() - cand.phi()).abs() < 1e-12
            });
            if dev < PARTNER_TOL && !duplicate {
                out.push((cand, dev));
            }
        }
    }
    if out.is_empty() {
        return Err(Error::NoPartner(p0.theta()));
    }
    Ok(out)
}

/// `|d(p1, p2) - 1|` for the two partners `p1, p2` of an interior `p0`.
pub fn partner_gap(p0: &CurvePoint) -> Result<f64> {
    let t0 = p0.half_tan();
    sextic::check_parameter(t0)?;
    if sextic::is_boundary(t0) {
        return Err(Error::BoundaryParameter(t0));
    }
    let ps = partners(p0)?;
    if ps.len() != 2 {
        return Err(Error::RootCount {
            t0,
            expected: 2,
            found: ps.len(),
        });
    }
    Ok((distance(&ps[0].embed(), &ps[1].embed()) - 1.0).abs())
}

/// `samples` values of `t0`, uniform in the open interval `(-t*, t*)`.
pub fn sweep_parameters(samples: usize) -> Vec<f64> {
    let ts = constants::t_star();
    (0..samples)
        .map(|k| -ts + 2.0 * ts * (k + 1) as f64 / (samples + 1) as f64)
        .collect()
}

/// One point of the partner sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub t0: f64,
    pub roots: Vec<f64>,
    pub partners: usize,
    /// Largest `|d(partner, p0) - 1|`.
    pub max_partner_residual: f64,
    /// Largest `|P_{t0}(t)|` over the roots, relative to the term magnitudes.
    pub max_poly_residual: f64,
    pub gap: Option<f64>,
}

impl SweepRecord {
    pub fn opposite_signs(&self) -> bool {
        self.roots.len() == 2 && self.roots[0] < 0.0 && self.roots[1] > 0.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub records: Vec<SweepRecord>,
    pub failures: Vec<String>,
}

impl SweepSummary {
    pub fn min_gap(&self) -> Option<(f64, f64)> {
        self.records
            .iter()
            .filter_map(|r| r.gap.map(|g| (g, r.t0)))
            .min_by(|a, b| a.0.total_cmp(&b.0))
    }

    pub fn all_two_roots(&self) -> bool {
        self.failures.is_empty()
            && self
                .records
                .iter()
                .all(|r| r.roots.len() == 2 && r.partners == 2)
    }

    pub fn max_partner_residual(&self) -> f64 {
        self.records
            .iter()
            .fold(0.0, |m, r| m.max(r.max_partner_residual))
    }

    /// Sampled `t0 != 0` whose two roots share a sign.
    pub fn same_sign_parameters(&self) -> Vec<f64> {
        self.records
            .iter()
            .filter(|r| r.t0 != 0.0 && r.roots.len() == 2 && !r.opposite_signs())
            .map(|r| r.t0)
            .collect()
    }
}

/// Partner structure of the `Plus`-branch curve point at each sampled `t0`.
pub fn sweep_partners(samples: usize) -> SweepSummary {
    let mut records = Vec::with_capacity(samples);
    let mut failures = Vec::new();
    for t0 in sweep_parameters(samples) {
        match sweep_one(t0) {
            Ok(r) => records.push(r),
            Err(e) => failures.push(format!("t0 = {t0}: {e}")),
        }
    }
    SweepSummary { records, failures }
}

fn sweep_one(t0: f64) -> Result<SweepRecord> {
    let p0 = CurvePoint::new(2.0 * t0.atan(), Branch::Plus)?;
    let roots = sextic::admissible_roots(t0)?;
    let found = partners_from_roots(&p0, &roots)?;
    let max_poly_residual = roots
        .roots
        .iter()
        .map(|&t| sextic::eval_p(t0, t).abs() / sextic::eval_p_scale(t0, t))
        .fold(0.0, f64::max);
    let gap = (found.len() == 2)
        .then(|| (distance(&found[0].0.embed(), &found[1].0.embed()) - 1.0).abs());
    Ok(SweepRecord {
        t0,
        roots: roots.roots,
        partners: found.len(),
        max_partner_residual: found.iter().fold(0.0, |m, (_, d)| m.max(*d)),
        max_poly_residual,
        gap,
    })
}

/// Outcome of the search for points equidistant from a triple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquidistantSearch {
    pub cells_per_axis: usize,
    pub seeds: usize,
    /// Distinct refined local minima.
    pub basins: usize,
    /// Points with max-deviation below [`SOLUTION_THRESHOLD`], ordered by `t`.
    pub solutions: Vec<EquidistantPoint>,
    /// Smallest max-deviation among the other basins.
    pub best_other_deviation: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquidistantPoint {
    pub point: HeisPoint,
    pub deviation: f64,
}

fn max_deviation(triple: &[HeisPoint; 3], q: &HeisPoint) -> f64 {
    triple
        .iter()
        .fold(0.0, |m, w| m.max((distance(q, w) - 1.0).abs()))
}

/// `d^4(q, w) - 1` for each `w` of the triple, with its gradient in `(x, y, t)`.
fn unit_system(triple: &[HeisPoint; 3], x: &[f64; 3]) -> ([f64; 3], [[f64; 3]; 3]) {
    let q = HeisPoint::from_parts(x[0], x[1], x[2]);
    let mut f = [0.0; 3];
    let mut jac = [[0.0; 3]; 3];
    for (k, w) in triple.iter().enumerate() {
        let (a, b) = (w.z.re, w.z.im);
        let rho = (q.z - w.z).norm_sqr();
        let e = q.t - w.t + 2.0 * (q.z * w.z.conj()).im;
        f[k] = distance4(&q, w) - 1.0;
        jac[k] = [
            4.0 * rho * (x[0] - a) - 4.0 * b * e,
            4.0 * rho * (x[1] - b) + 4.0 * a * e,
            2.0 * e,
        ];
    }
    (f, jac)
}

/// Grid search over `[-2, 2]^3` (about `grid_n` cells) for points equidistant
/// from the triple `(r e^{i k 2π/3}, 0)`, with optional local refinement.
///
/// Seeds are the grid cells that are no worse than any of their 26
/// neighbours. With `refine`, each seed is polished by Nelder–Mead on the
/// max-deviation objective and then by Newton on `d^4 = 1`; without it the
/// seeds are reported as they are and solutions are judged against the grid
/// spacing instead of [`SOLUTION_THRESHOLD`].
pub fn equidistant_to_triple(r: f64, grid_n: usize, refine: bool) -> Result<EquidistantSearch> {
    if grid_n < 1000 {
        return Err(Error::InvalidArgument("grid_n must be at least 1000"));
    }
    let triple = s3_points(r);
    let n = (grid_n as f64).cbrt().round() as usize;
    let step = 4.0 / n as f64;
    let coord = |i: usize| -2.0 + step * (i as f64 + 0.5);
    let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;

    let mut values = vec![0.0; n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let q = HeisPoint::from_parts(coord(i), coord(j), coord(k));
                values[idx(i, j, k)] = max_deviation(&triple, &q);
            }
        }
    }

    let mut seeds = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = values[idx(i, j, k)];
                if v >= SEED_THRESHOLD {
                    continue;
                }
                let mut is_min = true;
                'nbr: for di in -1i64..=1 {
                    for dj in -1i64..=1 {
                        for dk in -1i64..=1 {
                            let (a, b, c) = (i as i64 + di, j as i64 + dj, k as i64 + dk);
                            if (di, dj, dk) == (0, 0, 0)
                                || [a, b, c].iter().any(|&m| m < 0 || m >= n as i64)
                            {
                                continue;
                            }
                            if values[idx(a as usize, b as usize, c as usize)] < v {
                                is_min = false;
                                break 'nbr;
                            }
                        }
                    }
                }
                if is_min {
                    seeds.push([coord(i), coord(j), coord(k)]);
                }
            }
        }
    }

    let nm = NelderMead {
        initial_step: step,
        ..Default::default()
    };
    let objective = |x: &[f64; 3]| max_deviation(&triple, &HeisPoint::from_parts(x[0], x[1], x[2]));
    let mut basins: Vec<([f64; 3], f64)> = Vec::new();
    for seed in &seeds {
        let (x, dev) = if refine {
            let m = nm.minimize(objective, *seed);
            let polished = newton3(|x| unit_system(&triple, x), m.x, 50);
            let pd = objective(&polished);
            if pd.is_finite() && pd < m.value {
                (polished, pd)
            } else {
                (m.x, m.value)
            }
        } else {
            (*seed, objective(seed))
        };
        let merge = if refine { BASIN_MERGE } else { 1.5 * step };
        match basins
            .iter_mut()
            .find(|(b, _)| (0..3).all(|c| (b[c] - x[c]).abs() < merge))
        {
            Some(b) if dev < b.1 => *b = (x, dev),
            Some(_) => {}
            None => basins.push((x, dev)),
        }
    }

    let threshold = if refine { SOLUTION_THRESHOLD } else { step };
    let mut solutions: Vec<EquidistantPoint> = basins
        .iter()
        .filter(|(_, d)| *d < threshold)
        .map(|(x, d)| EquidistantPoint {
            point: HeisPoint::from_parts(x[0], x[1], x[2]),
            deviation: *d,
        })
        .collect();
    solutions.sort_by(|a, b| a.point.t.total_cmp(&b.point.t));
    let best_other_deviation = basins
        .iter()
        .map(|(_, d)| *d)
        .filter(|d| *d >= threshold)
        .min_by(f64::total_cmp);
    Ok(EquidistantSearch {
        cells_per_axis: n,
        seeds: seeds.len(),
        basins: basins.len(),
        solutions,
        best_other_deviation,
    })
}

/// [`equidistant_to_triple`] for the canonical radius `12^(-1/4)`.
pub fn equidistant_to_s3(grid_n: usize, refine: bool) -> Result<EquidistantSearch> {
    equidistant_to_triple(constants::r0(), grid_n, refine)
}

/// Parameters for [`verify_theorems_with`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub samples: usize,
    pub grid_n: usize,
    /// Radius used for the canonical triple; anything other than `12^(-1/4)`
    /// is a negative control.
    pub r0: f64,
}

impl VerifyOptions {
    pub fn new(samples: usize) -> Self {
        Self {
            samples,
            grid_n: 1_000_000,
            r0: constants::r0(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckLine {
    pub label: String,
    pub value: f64,
    pub passed: bool,
}

impl CheckLine {
    fn new(label: impl Into<String>, value: f64, passed: bool) -> Self {
        Self {
            label: label.into(),
            value,
            passed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremCheck {
    pub name: String,
    pub statement: String,
    pub passed: bool,
    /// Worst-case distance of the deciding quantity from its threshold.
    pub margin: f64,
    pub checks: Vec<CheckLine>,
    #[serde(skip)]
    pub runtime: std::time::Duration,
}

impl TheoremCheck {
    fn from_checks(name: &str, statement: &str, checks: Vec<CheckLine>, margin: f64) -> Self {
        Self {
            name: name.to_string(),
            statement: statement.to_string(),
            passed: checks.iter().all(|c| c.passed),
            margin,
            checks,
            runtime: std::time::Duration::ZERO,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub options: VerifyOptions,
    pub theorems: Vec<TheoremCheck>,
    /// Sampled `t0 != 0` whose two partner roots share a sign.
    pub same_sign_parameters: Vec<f64>,
}

impl TheoremReport {
    pub fn all_passed(&self) -> bool {
        self.theorems.iter().all(|t| t.passed)
    }
}

pub fn verify_theorems(samples: usize) -> Result<TheoremReport> {
    verify_theorems_with(VerifyOptions::new(samples))
}

/// Run every check in order: canonical four-point set, uniqueness of the
/// points equidistant from the triple, the non-unit distance between those two
/// points, the vertical-pair locus radius, and the partner sweep. A failing
/// check marks its theorem failed and the run continues.
pub fn verify_theorems_with(opts: VerifyOptions) -> Result<TheoremReport> {
    if opts.samples < 101 {
        return Err(Error::InvalidArgument(
            "at least 101 sweep samples are required",
        ));
    }
    if !(opts.r0.is_finite() && opts.r0 > 0.0) {
        return Err(Error::InvalidArgument("r0 must be positive"));
    }
    let timed = |f: &dyn Fn() -> TheoremCheck| {
        let start = std::time::Instant::now();
        let mut c = f();
        c.runtime = start.elapsed();
        c
    };

    let four_max_three = timed(&|| {
        let height = constants::canonical_height();
        let s3 = certify(&s3_points(opts.r0), CANONICAL_TOL).expect("three points");
        let s4 = certify(&s4_points(opts.r0), CANONICAL_TOL).expect("four points");
        let mut checks = vec![
            CheckLine::new("S3 max residual", s3.max_residual(), s3.verdict),
            CheckLine::new("S4 max residual", s4.max_residual(), s4.verdict),
        ];
        match equidistant_to_triple(opts.r0, opts.grid_n, true) {
            Ok(search) => {
                let n = search.solutions.len();
                checks.push(CheckLine::new("equidistant points found", n as f64, n == 2));
                let offset = if n == 2 {
                    let [lo, hi] = [search.solutions[0].point, search.solutions[1].point];
                    let e = |p: HeisPoint, t: f64| p.z.norm().max((p.t - t).abs());
                    e(lo, -height).max(e(hi, height))
                } else {
                    f64::INFINITY
                };
                checks.push(CheckLine::new(
                    "offset from (0, ±sqrt(11/12))",
                    offset,
                    offset <= 1e-6,
                ));
                let other = search.best_other_deviation.unwrap_or(f64::INFINITY);
                checks.push(CheckLine::new(
                    "best other basin deviation",
                    other,
                    other >= SOLUTION_THRESHOLD,
                ));
            }
            Err(e) => checks.push(CheckLine::new(
                format!("equidistant search: {e}"),
                f64::NAN,
                false,
            )),
        }
        let far = distance(
            &HeisPoint::from_parts(0.0, 0.0, height),
            &HeisPoint::from_parts(0.0, 0.0, -height),
        );
        checks.push(CheckLine::new(
            "d((0,t0),(0,-t0))",
            far,
            (far - 1.0).abs() > 0.38,
        ));
        let margin = s4.tol - s4.max_residual();
        TheoremCheck::from_checks(
            "three-on-finite-circle",
            "at most four equidistant points when three share a finite C-circle",
            checks,
            margin,
        )
    });

    let infinite = timed(&|| {
        let p1 = HeisPoint::from_parts(0.0, 0.0, -0.5);
        let p2 = HeisPoint::from_parts(0.0, 0.0, 0.5);
        let mut checks = Vec::new();
        let mut margin = f64::NAN;
        match ccircle::vertical_equidistant_locus(&p1, &p2) {
            Ok(ccircle::CCircle::Finite { radius, .. }) => {
                margin = radius - constants::r0();
                checks.push(CheckLine::new("locus radius", radius, margin > 0.0));
                let chord = ccircle::chord_pair_distance(radius).unwrap_or(f64::NAN);
                checks.push(CheckLine::new("chord pair distance", chord, chord > 1.0));
                let dim = ccircle::equilateral_dim_finite(radius, CANONICAL_TOL);
                checks.push(CheckLine::new(
                    "equilateral dimension of locus",
                    dim as f64,
                    dim == 2,
                ));
            }
            Ok(_) => checks.push(CheckLine::new("locus is a finite circle", 0.0, false)),
            Err(e) => checks.push(CheckLine::new(format!("locus: {e}"), f64::NAN, false)),
        }
        match ccircle::no_third_on_axis(&p1, &p2, 10_001, ccircle::DEFAULT_AXIS_RANGE) {
            Ok(rep) => checks.push(CheckLine::new(
                "no third point on the axis",
                rep.min_deviation,
                rep.min_deviation > 0.1,
            )),
            Err(e) => checks.push(CheckLine::new(format!("axis search: {e}"), f64::NAN, false)),
        }
        TheoremCheck::from_checks(
            "two-on-infinite-circle",
            "at most four equidistant points when two share an infinite C-circle",
            checks,
            margin,
        )
    });

    let sweep_start = std::time::Instant::now();
    let sweep = sweep_partners(opts.samples);
    let sweep_time = sweep_start.elapsed();
    let mut finite = timed(&|| {
        let min_gap = sweep.min_gap();
        let checks = vec![
            CheckLine::new(
                "sweep failures",
                sweep.failures.len() as f64,
                sweep.failures.is_empty(),
            ),
            CheckLine::new(
                "samples with exactly two roots and two partners",
                sweep
                    .records
                    .iter()
                    .filter(|r| r.roots.len() == 2 && r.partners == 2)
                    .count() as f64,
                sweep.all_two_roots() && sweep.records.len() == opts.samples,
            ),
            CheckLine::new(
                "max partner residual",
                sweep.max_partner_residual(),
                sweep.max_partner_residual() < PARTNER_TOL,
            ),
            CheckLine::new(
                "min partner gap",
                min_gap.map_or(f64::NAN, |g| g.0),
                min_gap.is_some_and(|g| g.0 > GAP_THRESHOLD),
            ),
        ];
        TheoremCheck::from_checks(
            "two-on-finite-circle",
            "at most four equidistant points when at most two share a finite C-circle",
            checks,
            min_gap.map_or(f64::NAN, |g| g.0 - GAP_THRESHOLD),
        )
    });
    finite.runtime += sweep_time;

    let parts = [&four_max_three, &infinite, &finite];
    let main = {
        let s4 = certify(&s4_points(opts.r0), CANONICAL_TOL).expect("four points");
        let mut checks = vec![CheckLine::new(
            "four-point equilateral set exists",
            s4.max_residual(),
            s4.verdict,
        )];
        for t in parts {
            checks.push(CheckLine::new(
                format!("{} holds", t.name),
                t.margin,
                t.passed,
            ));
        }
        let margin = parts.iter().map(|t| t.margin).fold(f64::INFINITY, f64::min);
        let mut c = TheoremCheck::from_checks(
            "equilateral-dimension-four",
            "the equilateral dimension of the Heisenberg group is 4",
            checks,
            margin,
        );
        c.runtime = parts.iter().map(|t| t.runtime).sum();
        c
    };

    let same_sign_parameters = sweep.same_sign_parameters();
    Ok(TheoremReport {
        options: opts,
        theorems: vec![four_max_three, infinite, finite, main],
        same_sign_parameters,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c3fin;
    use approx::assert_abs_diff_eq;

    #[test]
    fn certify_examples() {
        let c = certify(
            &[HeisPoint::ORIGIN, HeisPoint::from_parts(1.0, 0.0, 0.0)],
            1e-12,
        )
        .unwrap();
        assert!(c.verdict);
        assert_eq!(c.max_residual(), 0.0);
        assert!(canonical_s3().verdict);
        assert!(canonical_s4().verdict);
        assert_eq!(
            certify(&[HeisPoint::ORIGIN], 1e-12),
            Err(Error::TooFewPoints(1))
        );
    }

    #[test]
    fn five_points_fail() {
        let mut pts = s4_points(constants::r0()).to_vec();
        pts.push(HeisPoint::from_parts(
            0.0,
            0.0,
            -constants::canonical_height(),
        ));
        let c = certify(&pts, 1e-12).unwrap();
        assert!(!c.verdict);
        let (i, j, d) = c.worst_pair();
        assert_eq!((i, j), (3, 4));
        assert_abs_diff_eq!(d, (11.0f64 / 3.0).powf(0.25), epsilon = 1e-14);
    }

    #[test]
    fn symmetric_points_are_not_mutually_equilateral() {
        let pts: Vec<HeisPoint> = c3fin::symmetric_unit_points()
            .iter()
            .map(|p| p.embed())
            .collect();
        let c = certify(&pts, 1e-10).unwrap();
        assert!(!c.verdict);
        // the listed pairs (0,1) and (2,3) are at unit distance
        assert!(c.residuals[0][1] < 1e-10);
        assert!(c.residuals[2][3] < 1e-10);
        let others = [(0, 2), (0, 3), (1, 2), (1, 3)];
        assert!(others.iter().all(|&(i, j)| c.residuals[i][j] > 1e-3));
    }

    #[test]
    fn partners_at_theta_zero() {
        let p0 = CurvePoint::new(0.0, Branch::Plus).unwrap();
        let ps = partners(&p0).unwrap();
        assert_eq!(ps.len(), 2);
        let vt = 2.0 * constants::t0_zero_root().atan();
        let q0 = CurvePoint::new(vt, Branch::Plus).unwrap();
        let j2q0 = q0.j2();
        assert_abs_diff_eq!(ps[1].theta(), q0.theta(), epsilon = 1e-12);
        assert_eq!(ps[1].branch(), q0.branch());
        assert_abs_diff_eq!(ps[0].theta(), j2q0.theta(), epsilon = 1e-12);
        assert_eq!(ps[0].branch(), j2q0.branch());

        let ps1 = partners(&p0.j1()).unwrap();
        let expect = [q0.j1(), q0.j3()];
        for (got, want) in ps1.iter().zip(expect.iter()) {
            assert_abs_diff_eq!(got.theta(), want.theta(), epsilon = 1e-12);
            assert_eq!(got.branch(), want.branch());
        }
    }

    #[test]
    fn gap_at_theta_zero() {
        let p0 = CurvePoint::new(0.0, Branch::Plus).unwrap();
        let vt = 2.0 * constants::t0_zero_root().atan();
        let expected = (c3fin::s(vt).unwrap().powf(0.25) - 1.0).abs();
        assert_abs_diff_eq!(partner_gap(&p0).unwrap(), expected, epsilon = 1e-10);
    }

    #[test]
    fn gap_rejects_boundary() {
        let p = CurvePoint::new(constants::theta_star(), Branch::Plus).unwrap();
        assert!(matches!(partner_gap(&p), Err(Error::BoundaryParameter(_))));
    }

    #[test]
    fn boundary_partners() {
        let p = CurvePoint::new(constants::theta_star(), Branch::Plus).unwrap();
        let ps = partners(&p).unwrap();
        assert!(!ps.is_empty());
        for q in ps {
            assert_abs_diff_eq!(distance(&q.embed(), &p.embed()), 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn sweep_parameters_exclude_endpoints() {
        let ts = constants::t_star();
        let v = sweep_parameters(2001);
        assert_eq!(v.len(), 2001);
        assert!(v[0] > -ts && v[2000] < ts);
        assert_abs_diff_eq!(v[1000], 0.0, epsilon = 1e-15);
    }

    #[test]
    fn equidistant_small_grid() {
        let s = equidistant_to_s3(27_000, true).unwrap();
        assert_eq!(s.solutions.len(), 2);
        let h = constants::canonical_height();
        assert_abs_diff_eq!(s.solutions[0].point.t, -h, epsilon = 1e-9);
        assert_abs_diff_eq!(s.solutions[1].point.t, h, epsilon = 1e-9);
        assert!(s.best_other_deviation.unwrap() > SOLUTION_THRESHOLD);
        assert!(equidistant_to_s3(10, true).is_err());
    }

    #[test]
    fn verify_rejects_few_samples() {
        assert!(verify_theorems(100).is_err());
    }

    #[test]
    fn verify_with_tampered_radius_fails() {
        let mut opts = VerifyOptions::new(101);
        opts.grid_n = 27_000;
        opts.r0 += 1e-3;
        let rep = verify_theorems_with(opts).unwrap();
        assert!(!rep.theorems[0].passed);
        assert!(!rep.all_passed());
        assert!(rep.theorems[1].passed);
        assert!(rep.theorems[2].passed);
    }
}
