//! Korányi–Reimann coordinates on the unit sphere `|z|^4 + t^2 = 1`.
//!
//! A point `(theta, phi)` embeds as `z = sqrt(cos theta) e^{i phi}`,
//! `t = sin theta`. On the sphere the distance has the closed form
//!
//! ```text
//! d^4 = 2 + 6 cos θ cos θ0 - 2 sin θ sin θ0
//!       - 8 sqrt(cos θ cos θ0) cos((θ+θ0)/2) cos((φ + θ/2) - (φ0 + θ0/2))
//! ```

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::heis::HeisPoint;

/// Tolerance on `|gauge^4 - 1|` accepted by [`project`].
pub const ON_SPHERE_TOL: f64 = 1e-10;

/// Within this distance of a pole, `cos theta` is clamped at zero.
const POLE_GUARD: f64 = 1e-6;

/// Wrap an angle into `[-pi, pi)`.
pub fn normalize_angle(phi: f64) -> f64 {
    let wrapped = (phi + PI).rem_euclid(2.0 * PI) - PI;
    if wrapped >= PI {
        -PI
    } else {
        wrapped
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpherePoint {
    theta: f64,
    phi: f64,
}

impl SpherePoint {
    /// `theta` must lie in `[-pi/2, pi/2]`; `phi` is wrapped into `[-pi, pi)`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::NonFinite);
        }
        if theta.abs() > FRAC_PI_2 {
            return Err(Error::ThetaOutOfRange(theta));
        }
        Ok(Self {
            theta,
            phi: normalize_angle(phi),
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    fn cos_theta(&self) -> f64 {
        guarded_cos(self.theta)
    }

    pub fn embed(&self) -> HeisPoint {
        embed(self)
    }
}

fn guarded_cos(theta: f64) -> f64 {
    if FRAC_PI_2 - theta.abs() < POLE_GUARD {
        // cos(pi/2 - e) = sin(e), accurate near the pole
        (FRAC_PI_2 - theta.abs()).sin().max(0.0)
    } else {
        theta.cos()
    }
}

pub fn embed(sp: &SpherePoint) -> HeisPoint {
    let rho = sp.cos_theta().sqrt();
    HeisPoint::new(Complex64::from_polar(rho, sp.phi), sp.theta.sin())
}

/// Inverse of [`embed`]. At the poles `z = 0` and `phi` is reported as 0.
pub fn project(p: &HeisPoint) -> Result<SpherePoint> {
    if !p.is_finite() {
        return Err(Error::NonFinite);
    }
    let dev = (p.gauge4() - 1.0).abs();
    if dev > ON_SPHERE_TOL {
        return Err(Error::OffUnitSphere(dev));
    }
    // cos θ = |z|^2 and sin θ = t; atan2 stays accurate near the poles.
    let theta = p.t.atan2(p.z.norm_sqr());
    let phi = if p.z == Complex64::new(0.0, 0.0) {
        0.0
    } else {
        p.z.arg()
    };
    SpherePoint::new(theta.clamp(-FRAC_PI_2, FRAC_PI_2), phi)
}

/// Fourth power of the Korányi distance between two sphere points.
pub fn sphere_dist4(p: &SpherePoint, p0: &SpherePoint) -> f64 {
    let (c, c0) = (p.cos_theta(), p0.cos_theta());
    let (s, s0) = (p.theta.sin(), p0.theta.sin());
    let phase = (p.phi + p.theta / 2.0) - (p0.phi + p0.theta / 2.0);
    2.0 + 6.0 * c * c0
        - 2.0 * s * s0
        - 8.0 * (c * c0).sqrt() * ((p.theta + p0.theta) / 2.0).cos() * phase.cos()
}

/// The value `v` that `cos((phi + theta/2) - (phi0 + theta0/2))` must take for
/// the point at latitude `theta` to be at unit distance from `p0`.
///
/// `|v| > 1` means no such point exists at this latitude. A polar `p0` yields
/// [`Error::PoleCenter`], since its unit-distance locus is the circle
/// `theta = ±pi/6`.
pub fn locus_cos(theta: f64, p0: &SpherePoint) -> Result<f64> {
    if !theta.is_finite() {
        return Err(Error::NonFinite);
    }
    if theta.abs() > FRAC_PI_2 {
        return Err(Error::ThetaOutOfRange(theta));
    }
    let c0 = p0.cos_theta();
    if c0 <= 0.0 {
        return Err(Error::PoleCenter {
            theta: p0.theta.signum() * PI / 6.0,
        });
    }
    let c = guarded_cos(theta);
    if c <= 0.0 {
        return Err(Error::DegenerateLocus("theta is a pole"));
    }
    let half = ((theta + p0.theta) / 2.0).cos();
    if half == 0.0 {
        return Err(Error::DegenerateLocus("cos((theta + theta0)/2) vanishes"));
    }
    let num = 1.0 + 6.0 * c * c0 - 2.0 * theta.sin() * p0.theta.sin();
    Ok(num / (8.0 * (c * c0).sqrt() * half))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heis::distance4;
    use approx::assert_abs_diff_eq;

    fn sp(theta: f64, phi: f64) -> SpherePoint {
        SpherePoint::new(theta, phi).unwrap()
    }

    #[test]
    fn embed_examples() {
        let e = embed(&sp(0.0, 0.0));
        assert_eq!((e.z.re, e.z.im, e.t), (1.0, 0.0, 0.0));
        let pole = embed(&sp(FRAC_PI_2, 1.234));
        assert_abs_diff_eq!(pole.z.norm(), 0.0, epsilon = 1e-12);
        assert_eq!(pole.t, 1.0);
        let e = embed(&sp(PI / 3.0, 0.0));
        assert_abs_diff_eq!(e.z.re, 0.5f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(e.t, 3f64.sqrt() / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e.gauge4(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn project_examples() {
        let q = project(&HeisPoint::from_parts(1.0, 0.0, 0.0)).unwrap();
        assert_eq!((q.theta(), q.phi()), (0.0, 0.0));
        let q = project(&HeisPoint::from_parts(0.0, 0.0, -1.0)).unwrap();
        assert_eq!((q.theta(), q.phi()), (-FRAC_PI_2, 0.0));
        let q = project(&HeisPoint::from_parts(
            0.5f64.sqrt(),
            0.0,
            3f64.sqrt() / 2.0,
        ))
        .unwrap();
        assert_abs_diff_eq!(q.theta(), PI / 3.0, epsilon = 1e-15);
        assert_eq!(q.phi(), 0.0);
    }

    #[test]
    fn project_rejects_off_sphere() {
        assert!(matches!(
            project(&HeisPoint::from_parts(0.5, 0.0, 0.0)),
            Err(Error::OffUnitSphere(_))
        ));
    }

    #[test]
    fn phi_wraps_into_half_open_range() {
        assert_eq!(sp(0.0, PI).phi(), -PI);
        assert_abs_diff_eq!(sp(0.0, 3.0 * PI / 2.0).phi(), -PI / 2.0, epsilon = 1e-15);
        assert!(SpherePoint::new(2.0, 0.0).is_err());
    }

    #[test]
    fn dist4_examples() {
        let a = sp(0.3, -0.4);
        assert_abs_diff_eq!(sphere_dist4(&a, &a), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(
            sphere_dist4(&sp(0.0, 0.0), &sp(FRAC_PI_2, 0.0)),
            2.0,
            epsilon = 1e-14
        );
        let q1 = sp(0.0, (7.0f64 / 8.0).acos());
        assert_abs_diff_eq!(sphere_dist4(&q1, &sp(0.0, 0.0)), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(
            sphere_dist4(&q1, &sp(0.0, 0.0)),
            distance4(&q1.embed(), &HeisPoint::from_parts(1.0, 0.0, 0.0)),
            epsilon = 1e-14
        );
    }

    #[test]
    fn locus_examples() {
        let o = sp(0.0, 0.0);
        assert_abs_diff_eq!(locus_cos(0.0, &o).unwrap(), 7.0 / 8.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            locus_cos(0.25f64.acos(), &o).unwrap(),
            (5.0f64 / 8.0).sqrt(),
            epsilon = 1e-15
        );
        match locus_cos(0.1, &sp(FRAC_PI_2, 0.0)) {
            Err(Error::PoleCenter { theta }) => assert_abs_diff_eq!(theta, PI / 6.0),
            other => panic!("expected pole marker, got {other:?}"),
        }
        match locus_cos(0.1, &sp(-FRAC_PI_2, 0.0)) {
            Err(Error::PoleCenter { theta }) => assert_abs_diff_eq!(theta, -PI / 6.0),
            other => panic!("expected pole marker, got {other:?}"),
        }
    }

    #[test]
    fn pole_locus_is_the_pi_over_six_circle() {
        let pole = HeisPoint::from_parts(0.0, 0.0, 1.0);
        for k in 0..12 {
            let q = embed(&sp(PI / 6.0, k as f64 * 0.5));
            assert_abs_diff_eq!(distance4(&q, &pole), 1.0, epsilon = 1e-14);
        }
    }
}
