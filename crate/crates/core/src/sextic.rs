//! The partner polynomial `P_{t0}(t)` and its real roots.
//!
//! For a curve point at half-angle tangent `t0 = tan(θ0/2)`, every curve point
//! at unit distance from it has half-angle tangent `t` with
//!
//! ```text
//! P_{t0}(t) = K_{t0}(t)^2 - Q(t0) Q(t) (t0 t - 1)^2 = 0,
//! K_{t0}(t) = 5t0(7 - 5t0^2) t^3 - (31t0^2 - 5) t^2 + 5t0(7t0^2 + 3) t - 7 + 5t0^2,
//! Q(t)      = -25t^4 + 6t^2 + 15.
//! ```
//!
//! `P` is symmetric in `(t0, t)`. `Q` is positive on `(-t*, t*)` and vanishes
//! at `±t*`, where `P` collapses to the square of the cubic `K`.

use serde::{Deserialize, Serialize};

use crate::constants;
use crate::error::{Error, Result};

/// Uniform samples used by the sign-change scan.
pub const SCAN_SAMPLES: usize = 4096;
/// Denser rescan used when the first scan finds an unexpected root count.
pub const RESCAN_SAMPLES: usize = 65_536;
/// Bisection stops once the bracket is this narrow.
pub const ROOT_TOL: f64 = 1e-13;
/// Roots closer than this are merged.
pub const DEDUP_TOL: f64 = 1e-10;
/// `|t0|` within this distance of `t*` is treated as the boundary case.
pub const BOUNDARY_TOL: f64 = 1e-9;
/// Slack allowed past `±t*` before a parameter is rejected.
const RANGE_SLACK: f64 = 1e-12;

/// `Q(t) = -25t^4 + 6t^2 + 15`.
pub fn quartic_weight(t: f64) -> f64 {
    let u = t * t;
    (-25.0 * u + 6.0) * u + 15.0
}

/// Coefficients of `K_{t0}` in ascending powers of `t`.
pub fn cubic_factor(t0: f64) -> [f64; 4] {
    let u = t0 * t0;
    [
        -7.0 + 5.0 * u,
        5.0 * t0 * (7.0 * u + 3.0),
        -(31.0 * u - 5.0),
        5.0 * t0 * (7.0 - 5.0 * u),
    ]
}

/// Evaluate a polynomial given in ascending coefficients.
pub fn horner(coeffs: &[f64], t: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
}

/// `P_{t0}(t)` evaluated in factored form.
pub fn eval_p(t0: f64, t: f64) -> f64 {
    let k = horner(&cubic_factor(t0), t);
    let l = t0 * t - 1.0;
    k * k - quartic_weight(t0) * quartic_weight(t) * l * l
}

/// Magnitude of the two terms of [`eval_p`], used to scale residuals.
pub fn eval_p_scale(t0: f64, t: f64) -> f64 {
    let k = horner(&cubic_factor(t0), t);
    let l = t0 * t - 1.0;
    (k * k)
        .max((quartic_weight(t0) * quartic_weight(t) * l * l).abs())
        .max(1.0)
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `P_{t0}` expanded into coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SexticPoly {
    pub t0: f64,
    /// Ascending powers of `t`.
    pub coeffs: [f64; 7],
}

pub fn check_parameter(t0: f64) -> Result<()> {
    if !t0.is_finite() {
        return Err(Error::NonFinite);
    }
    if t0.abs() > constants::t_star() + RANGE_SLACK {
        return Err(Error::ParameterOutOfRange(t0));
    }
    Ok(())
}

pub fn is_boundary(t0: f64) -> bool {
    (t0.abs() - constants::t_star()).abs() <= BOUNDARY_TOL
}

impl SexticPoly {
    pub fn build(t0: f64) -> Result<Self> {
        check_parameter(t0)?;
        let k = cubic_factor(t0);
        let k2 = poly_mul(&k, &k);
        let q = [15.0, 0.0, 6.0, 0.0, -25.0];
        let l = [-1.0, t0];
        let rhs = poly_mul(&q, &poly_mul(&l, &l));
        let w = quartic_weight(t0);
        let mut coeffs = [0.0; 7];
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c = k2[i] - w * rhs[i];
        }
        Ok(Self { t0, coeffs })
    }

    pub fn eval(&self, t: f64) -> f64 {
        horner(&self.coeffs, t)
    }

    /// Highest power with a non-negligible coefficient.
    pub fn degree(&self) -> usize {
        let scale = self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        self.coeffs
            .iter()
            .rposition(|c| c.abs() > 1e-12 * scale)
            .unwrap_or(0)
    }
}

fn bisect(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut glo = g(lo);
    if glo == 0.0 {
        return lo;
    }
    if g(hi) == 0.0 {
        return hi;
    }
    for _ in 0..200 {
        if hi - lo <= ROOT_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let gm = g(mid);
        if gm == 0.0 {
            return mid;
        }
        if (gm < 0.0) == (glo < 0.0) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Sign-change scan over `[a, b]` followed by bisection of each bracket.
pub fn scan_roots(g: impl Fn(f64) -> f64, a: f64, b: f64, samples: usize) -> Vec<f64> {
    let n = samples.max(2);
    let xs: Vec<f64> = (0..n)
        .map(|k| a + (b - a) * k as f64 / (n - 1) as f64)
        .collect();
    let vals: Vec<f64> = xs.iter().map(|&x| g(x)).collect();
    let mut roots: Vec<f64> = Vec::new();
    for k in 0..n - 1 {
        let (v0, v1) = (vals[k], vals[k + 1]);
        let root = if v0 == 0.0 {
            Some(xs[k])
        } else if v0 * v1 < 0.0 {
            Some(bisect(&g, xs[k], xs[k + 1]))
        } else {
            None
        };
        if let Some(r) = root {
            if roots
                .last()
                .is_none_or(|&last| (r - last).abs() > DEDUP_TOL)
            {
                roots.push(r);
            }
        }
    }
    if vals[n - 1] == 0.0
        && roots
            .last()
            .is_none_or(|&last| (xs[n - 1] - last).abs() > DEDUP_TOL)
    {
        roots.push(xs[n - 1]);
    }
    roots
}

/// How the roots of `P_{t0}` were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootMethod {
    /// `t0 = 0`: the quartic `400t^4 - 160t^2 - 176`, solved in closed form.
    Quartic,
    /// `|t0| = t*`: the real root of the cubic factor.
    BoundaryCubic,
    /// Interior: sign-change scan and bisection on `P_{t0}`.
    Scan,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmissibleRoots {
    pub t0: f64,
    pub method: RootMethod,
    /// Ascending.
    pub roots: Vec<f64>,
}

/// Number of admissible roots expected: one on the boundary, two inside.
pub fn expected_root_count(t0: f64) -> usize {
    if is_boundary(t0) {
        1
    } else {
        2
    }
}

/// All real roots of `P_{t0}` in `[-t*, t*]`.
///
/// Fails with [`Error::RootCount`] if the count differs from
/// [`expected_root_count`] even after a denser rescan.
pub fn admissible_roots(t0: f64) -> Result<AdmissibleRoots> {
    check_parameter(t0)?;
    let ts = constants::t_star();
    let expected = expected_root_count(t0);
    let (method, roots) = if t0 == 0.0 {
        // 400u^2 - 160u - 176 = 0 in u = t^2
        let u = (1.0 + 2.0 * 3f64.sqrt()) / 5.0;
        (RootMethod::Quartic, vec![-u.sqrt(), u.sqrt()])
    } else if expected == 1 {
        let k = cubic_factor(t0.signum() * ts);
        let mut roots = scan_roots(|t| horner(&k, t), -ts, ts, SCAN_SAMPLES);
        if roots.len() != 1 {
            roots = scan_roots(|t| horner(&k, t), -ts, ts, RESCAN_SAMPLES);
        }
        (RootMethod::BoundaryCubic, roots)
    } else {
        let g = |t: f64| eval_p(t0, t);
        let mut roots = scan_roots(g, -ts, ts, SCAN_SAMPLES);
        if roots.len() != expected {
            roots = scan_roots(g, -ts, ts, RESCAN_SAMPLES);
        }
        (RootMethod::Scan, roots)
    };
    if roots.len() != expected {
        return Err(Error::RootCount {
            t0,
            expected,
            found: roots.len(),
        });
    }
    Ok(AdmissibleRoots { t0, method, roots })
}

/// Discriminant of the cubic factor `K_{t0}`; negative means exactly one
/// real root on the whole line.
pub fn cubic_discriminant(t0: f64) -> f64 {
    let [d, c, b, a] = cubic_factor(t0);
    18.0 * a * b * c * d - 4.0 * b.powi(3) * d + b * b * c * c
        - 4.0 * a * c.powi(3)
        - 27.0 * a * a * d * d
}

fn trim(p: &mut Vec<f64>, tol: f64) {
    while p.len() > 1 && p.last().is_some_and(|c| c.abs() <= tol) {
        p.pop();
    }
}

fn poly_rem(num: &[f64], den: &[f64]) -> Vec<f64> {
    let mut r = num.to_vec();
    let dn = den.len() - 1;
    let lead = den[dn];
    while r.len() > dn {
        let q = r[r.len() - 1] / lead;
        let shift = r.len() - 1 - dn;
        for (i, &c) in den.iter().enumerate() {
            r[shift + i] -= q * c;
        }
        r.pop();
    }
    if r.is_empty() {
        r.push(0.0);
    }
    r
}

/// Sturm sequence of a polynomial (ascending coefficients) in floating point.
pub fn sturm_sequence(coeffs: &[f64]) -> Vec<Vec<f64>> {
    let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs())).max(1.0);
    let tol = 1e-10 * scale;
    let mut p0 = coeffs.to_vec();
    trim(&mut p0, tol);
    let mut p1: Vec<f64> = p0
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| i as f64 * c)
        .collect();
    if p1.is_empty() {
        return vec![p0];
    }
    trim(&mut p1, tol);
    let mut seq = vec![p0, p1];
    loop {
        let n = seq.len();
        if seq[n - 1].len() == 1 {
            break;
        }
        let mut r: Vec<f64> = poly_rem(&seq[n - 2], &seq[n - 1])
            .into_iter()
            .map(|c| -c)
            .collect();
        trim(&mut r, tol);
        if r.len() == 1 && r[0].abs() <= tol {
            break;
        }
        seq.push(r);
    }
    seq
}

fn sign_changes(seq: &[Vec<f64>], x: f64) -> usize {
    let signs: Vec<f64> = seq
        .iter()
        .map(|p| horner(p, x))
        .filter(|v| *v != 0.0)
        .collect();
    signs.windows(2).filter(|w| w[0] * w[1] < 0.0).count()
}

/// Distinct real roots in `(a, b]` by Sturm's theorem. A cross-check for the
/// scan; reliable only when roots are well separated.
pub fn sturm_root_count(coeffs: &[f64], a: f64, b: f64) -> usize {
    let seq = sturm_sequence(coeffs);
    sign_changes(&seq, a).saturating_sub(sign_changes(&seq, b))
}
