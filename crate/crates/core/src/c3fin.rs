//! The curve of points at unit distance from both `(0, 0)` and `(1, 0)`.
//!
//! In Korányi–Reimann coordinates the curve is
//! `1 + 6 cos θ - 8 sqrt(cos θ) cos(θ/2) cos(φ + θ/2) = 0`, the union of the
//! graphs `φ±(θ) = -θ/2 ± arccos f(θ)` over `I = [-θ*, θ*]` with
//! `θ* = arccos(5/2 - sqrt 6)`. The two branches meet at `±θ*`, where `f = 1`.
//!
//! `arccos` has a square-root singularity at 1, so a rounding error of `1e-16`
//! in `f` becomes `1e-8` in `φ`. Latitudes with `1 - f` at rounding level are
//! therefore snapped onto the junction, where `φ = -θ/2` exactly.

use serde::{Deserialize, Serialize};

use crate::constants;
use crate::error::{Error, Result};
use crate::heis::HeisPoint;
use crate::sphere::{self, normalize_angle, SpherePoint};

/// Slack allowed past `±θ*` before a latitude is rejected.
const INTERVAL_SLACK: f64 = 1e-12;

/// `1 - f^2` below which a latitude is treated as a branch junction.
const JUNCTION_EPS: f64 = 1e-14;

/// `1 - f` below which `arccos f` is taken to be 0.
const SNAP_EPS: f64 = 4.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Branch {
        match self {
            Branch::Plus => Branch::Minus,
            Branch::Minus => Branch::Plus,
        }
    }
}

fn check_interval(theta: f64) -> Result<()> {
    if !theta.is_finite() {
        return Err(Error::NonFinite);
    }
    if theta.abs() > constants::theta_star() + INTERVAL_SLACK {
        return Err(Error::OutsideCurveInterval(theta));
    }
    Ok(())
}

fn check_interior(theta: f64) -> Result<()> {
    check_interval(theta)?;
    if theta.abs() >= constants::theta_star() {
        return Err(Error::BranchJunction(theta));
    }
    Ok(())
}

fn f_raw(theta: f64) -> f64 {
    let c = theta.cos();
    (1.0 + 6.0 * c) / (8.0 * c.sqrt() * (theta / 2.0).cos())
}

/// `f(θ) = (1 + 6 cos θ) / (8 sqrt(cos θ) cos(θ/2))`, the value of
/// `cos(φ + θ/2)` on the curve. Ranges over `[sqrt(5/8), 1]`.
pub fn f(theta: f64) -> Result<f64> {
    check_interval(theta)?;
    Ok(f_raw(theta))
}

fn f_prime_raw(theta: f64) -> f64 {
    let c = theta.cos();
    -theta.sin() * (4.0 * c - 1.0) / (32.0 * c.powf(1.5) * (theta / 2.0).cos().powi(3))
}

/// Derivative of [`f`], defined on the open interval.
pub fn f_prime(theta: f64) -> Result<f64> {
    check_interior(theta)?;
    Ok(f_prime_raw(theta))
}

fn half_opening(theta: f64) -> f64 {
    let fv = f_raw(theta);
    if 1.0 - fv <= SNAP_EPS {
        0.0
    } else {
        fv.acos()
    }
}

fn phi_raw(theta: f64, branch: Branch) -> f64 {
    -theta / 2.0 + branch.sign() * half_opening(theta)
}

/// `φ±(θ) = -θ/2 ± arccos f(θ)`.
pub fn phi(theta: f64, branch: Branch) -> Result<f64> {
    check_interval(theta)?;
    Ok(phi_raw(theta, branch))
}

/// Left-hand side of the curve equation. Zero exactly on the curve.
pub fn on_curve(theta: f64, phi: f64) -> f64 {
    let c = theta.cos().max(0.0);
    1.0 + 6.0 * c - 8.0 * c.sqrt() * (theta / 2.0).cos() * (phi + theta / 2.0).cos()
}

/// A point of the curve, identified by its latitude and branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    theta: f64,
    branch: Branch,
}

impl CurvePoint {
    pub fn new(theta: f64, branch: Branch) -> Result<Self> {
        check_interval(theta)?;
        let ts = constants::theta_star();
        Ok(Self {
            theta: theta.clamp(-ts, ts),
            branch,
        })
    }

    /// Locate `(theta, phi)` on the curve by picking the branch whose `φ` is
    /// nearest to `phi` modulo `2π`. Ties (the junctions) resolve to `Plus`.
    pub fn from_coords(theta: f64, phi: f64) -> Result<Self> {
        check_interval(theta)?;
        let gap = |b: Branch| normalize_angle(phi - phi_raw(theta, b)).abs();
        let branch = if gap(Branch::Minus) < gap(Branch::Plus) {
            Branch::Minus
        } else {
            Branch::Plus
        };
        Self::new(theta, branch)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn phi(&self) -> f64 {
        phi_raw(self.theta, self.branch)
    }

    /// Half-angle tangent `tan(θ/2)`.
    pub fn half_tan(&self) -> f64 {
        (self.theta / 2.0).tan()
    }

    pub fn sphere_point(&self) -> SpherePoint {
        SpherePoint::new(self.theta, self.phi()).expect("curve latitudes lie inside (-pi/2, pi/2)")
    }

    pub fn embed(&self) -> HeisPoint {
        sphere::embed(&self.sphere_point())
    }

    pub fn is_junction(&self) -> bool {
        1.0 - f_raw(self.theta).min(1.0).powi(2) < JUNCTION_EPS
    }

    /// Antipodal involution `(θ, φ) ↦ (-θ, -φ)`.
    pub fn j1(&self) -> CurvePoint {
        self.image(-self.theta, -self.phi())
    }

    /// Symmetric involution `(θ, φ) ↦ (-θ, φ + θ)`.
    pub fn j2(&self) -> CurvePoint {
        self.image(-self.theta, self.phi() + self.theta)
    }

    /// Vertical involution `(θ, φ) ↦ (θ, -φ - θ)`.
    pub fn j3(&self) -> CurvePoint {
        self.image(self.theta, -self.phi() - self.theta)
    }

    fn image(&self, theta: f64, phi: f64) -> CurvePoint {
        CurvePoint::from_coords(theta, phi).expect("involutions preserve the curve interval")
    }
}

/// `h(θ) = d^4(p, j1 p)`, the antipodal function.
pub fn h(theta: f64) -> Result<f64> {
    check_interval(theta)?;
    let c = theta.cos();
    Ok(0.5 * (8.0 * c.powi(3) - 12.0 * c * c + 12.0 * c + 7.0) / (1.0 + c))
}

/// `s(θ) = d^4(p, j2 p) = 16 sin^4(θ/2)`, the symmetric function.
pub fn s(theta: f64) -> Result<f64> {
    check_interval(theta)?;
    Ok(16.0 * (theta / 2.0).sin().powi(4))
}

/// `v(θ) = d^4(p, j3 p)`, the vertical function.
pub fn v(theta: f64) -> Result<f64> {
    check_interval(theta)?;
    let c = theta.cos();
    Ok(c / (2.0 * (1.0 + c)) * (-4.0 * c * c + 20.0 * c - 1.0))
}

/// `1 + 2 dφ/dθ` along the given branch, i.e. the contact form
/// `cos θ (dθ + 2 dφ)` divided by `cos θ dθ`. Zero where the curve is
/// tangent to the horizontal distribution.
pub fn horizontality_defect(theta: f64, branch: Branch) -> Result<f64> {
    check_interior(theta)?;
    let fv = f_raw(theta);
    let gap = 1.0 - fv * fv;
    if gap < JUNCTION_EPS {
        return Err(Error::BranchJunction(theta));
    }
    Ok(-branch.sign() * 2.0 * f_prime_raw(theta) / gap.sqrt())
}

/// The six maximisers of `h`, in the order `q1+, q1-, q2+, q2-, q3+, q3-`:
/// `±(0, arccos 7/8)`, `±(arccos 1/4, 0)`, `±(arccos 1/4, -arccos 1/4)`.
pub fn q_points() -> [CurvePoint; 6] {
    let a = 0.25f64.acos();
    let pt = |theta: f64, b| CurvePoint::new(theta, b).expect("inside interval");
    [
        pt(0.0, Branch::Plus),
        pt(0.0, Branch::Minus),
        pt(a, Branch::Plus),
        pt(-a, Branch::Minus),
        pt(a, Branch::Minus),
        pt(-a, Branch::Plus),
    ]
}

/// The six minimisers of `h`, in the order `r1+, r1-, r2+, r2-, r3+, r3-`.
pub fn r_points() -> [CurvePoint; 6] {
    let ts = constants::theta_star();
    let b = ((6f64.sqrt() - 1.0) / 2.0).acos();
    let pt = |theta: f64, br| CurvePoint::new(theta, br).expect("inside interval");
    [
        pt(ts, Branch::Plus),
        pt(-ts, Branch::Plus),
        pt(b, Branch::Plus),
        pt(-b, Branch::Minus),
        pt(b, Branch::Minus),
        pt(-b, Branch::Plus),
    ]
}

/// The four points at latitude `±π/3` forming two symmetric pairs at unit
/// distance: `(π/3, -π/6 ± arccos(sqrt 6/3))` and their `j2` images.
pub fn symmetric_unit_points() -> [CurvePoint; 4] {
    let a = std::f64::consts::FRAC_PI_3;
    let pt = |theta: f64, b| CurvePoint::new(theta, b).expect("inside interval");
    [
        pt(a, Branch::Plus),
        pt(-a, Branch::Plus),
        pt(a, Branch::Minus),
        pt(-a, Branch::Minus),
    ]
}

/// Latitude `θ0 ∈ (0, θ*)` at which vertical pairs are at unit distance,
/// together with residuals of two candidate cubics in `c = cos θ0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerticalUnitSolution {
    pub theta: f64,
    pub cos_theta: f64,
    /// `4c^3 - 20c^2 + 3c + 2`, which is `v(θ) = 1` cleared of denominators.
    pub direct_cubic_residual: f64,
    /// `4c^3 - 2c^2 + 3c + 2`, the cubic as it is usually quoted.
    pub printed_cubic_residual: f64,
}

/// Solve `v(θ) = 1` on `(0, θ*)` by bisection on the closed form.
pub fn vertical_unit_solution() -> VerticalUnitSolution {
    let g = |x: f64| v(x).expect("bracket lies inside the interval") - 1.0;
    let (mut lo, mut hi) = (0.0, constants::theta_star());
    // g(0) = 11/4 > 0, g(θ*) < 0
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let theta = 0.5 * (lo + hi);
    let c = theta.cos();
    VerticalUnitSolution {
        theta,
        cos_theta: c,
        direct_cubic_residual: ((4.0 * c - 20.0) * c + 3.0) * c + 2.0,
        printed_cubic_residual: ((4.0 * c - 2.0) * c + 3.0) * c + 2.0,
    }
}
