//! Group law, Korányi gauge and distance, and the similarity group.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point `(z, t)` of the Heisenberg group.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeisPoint {
    pub z: Complex64,
    pub t: f64,
}

impl HeisPoint {
    pub const ORIGIN: HeisPoint = HeisPoint {
        z: Complex64::new(0.0, 0.0),
        t: 0.0,
    };

    pub const fn new(z: Complex64, t: f64) -> Self {
        Self { z, t }
    }

    pub const fn from_parts(x: f64, y: f64, t: f64) -> Self {
        Self {
            z: Complex64::new(x, y),
            t,
        }
    }

    /// Like [`HeisPoint::from_parts`] but rejects NaN and infinities.
    pub fn checked(x: f64, y: f64, t: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() && t.is_finite() {
            Ok(Self::from_parts(x, y, t))
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn is_finite(&self) -> bool {
        self.z.re.is_finite() && self.z.im.is_finite() && self.t.is_finite()
    }

    /// `(z,t) ⋆ (w,s) = (z + w, t + s + 2 Im(z conj(w)))`.
    pub fn compose(&self, other: &HeisPoint) -> HeisPoint {
        HeisPoint {
            z: self.z + other.z,
            t: self.t + other.t + 2.0 * (self.z * other.z.conj()).im,
        }
    }

    pub fn inverse(&self) -> HeisPoint {
        HeisPoint {
            z: -self.z,
            t: -self.t,
        }
    }

    /// Fourth power of the gauge, `|z|^4 + t^2`.
    pub fn gauge4(&self) -> f64 {
        let r2 = self.z.norm_sqr();
        r2 * r2 + self.t * self.t
    }

    /// Korányi gauge `(|z|^4 + t^2)^(1/4)`.
    pub fn gauge(&self) -> f64 {
        self.gauge4().sqrt().sqrt()
    }

    pub fn distance(&self, other: &HeisPoint) -> f64 {
        distance(self, other)
    }

    pub fn distance4(&self, other: &HeisPoint) -> f64 {
        distance4(self, other)
    }
}

impl std::ops::Mul for HeisPoint {
    type Output = HeisPoint;

    fn mul(self, rhs: HeisPoint) -> HeisPoint {
        self.compose(&rhs)
    }
}

/// `d(p, q)^4 = |q^{-1} ⋆ p|^4 = |z - w|^4 + (t - s + 2 Im(z conj(w)))^2`.
///
/// Distances are carried as fourth powers internally; the root is taken once
/// in [`distance`].
pub fn distance4(p: &HeisPoint, q: &HeisPoint) -> f64 {
    let dz = (p.z - q.z).norm_sqr();
    let dt = p.t - q.t + 2.0 * (p.z * q.z.conj()).im;
    dz * dz + dt * dt
}

/// Korányi distance.
pub fn distance(p: &HeisPoint, q: &HeisPoint) -> f64 {
    distance4(p, q).sqrt().sqrt()
}

/// An element of the similarity group `Sim(ℌ, d)`.
///
/// Acting on a point, the components are applied in the fixed order
/// conjugation, rotation, dilation, left translation:
///
/// `g(p) = L_translation(D_dilation(R_rotation(j^conjugate(p))))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Similarity {
    translation: HeisPoint,
    rotation: f64,
    conjugate: bool,
    dilation: f64,
}

impl Default for Similarity {
    fn default() -> Self {
        Self::identity()
    }
}

impl Similarity {
    pub fn new(
        translation: HeisPoint,
        rotation: f64,
        conjugate: bool,
        dilation: f64,
    ) -> Result<Self> {
        if !(dilation.is_finite() && dilation > 0.0) {
            return Err(Error::InvalidDilation(dilation));
        }
        if !translation.is_finite() || !rotation.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            translation,
            rotation,
            conjugate,
            dilation,
        })
    }

    pub const fn identity() -> Self {
        Self {
            translation: HeisPoint::ORIGIN,
            rotation: 0.0,
            conjugate: false,
            dilation: 1.0,
        }
    }

    pub const fn translation(by: HeisPoint) -> Self {
        Self {
            translation: by,
            ..Self::identity()
        }
    }

    pub const fn rotation(angle: f64) -> Self {
        Self {
            rotation: angle,
            ..Self::identity()
        }
    }

    pub const fn conjugation() -> Self {
        Self {
            conjugate: true,
            ..Self::identity()
        }
    }

    pub fn dilation(r: f64) -> Result<Self> {
        Self::new(HeisPoint::ORIGIN, 0.0, false, r)
    }

    pub fn translation_part(&self) -> HeisPoint {
        self.translation
    }

    pub fn rotation_angle(&self) -> f64 {
        self.rotation
    }

    pub fn is_conjugating(&self) -> bool {
        self.conjugate
    }

    /// The factor by which `self` scales Korányi distances.
    pub fn scale_factor(&self) -> f64 {
        self.dilation
    }

    pub fn apply(&self, p: &HeisPoint) -> HeisPoint {
        let (mut z, mut t) = (p.z, p.t);
        if self.conjugate {
            z = z.conj();
            t = -t;
        }
        z *= Complex64::from_polar(1.0, self.rotation);
        z *= self.dilation;
        t *= self.dilation * self.dilation;
        self.translation.compose(&HeisPoint { z, t })
    }

    /// Inverse action, undoing the steps of [`Similarity::apply`] in reverse.
    pub fn apply_inverse(&self, p: &HeisPoint) -> HeisPoint {
        let q = self.translation.inverse().compose(p);
        let mut z = q.z / self.dilation;
        let mut t = q.t / (self.dilation * self.dilation);
        z *= Complex64::from_polar(1.0, -self.rotation);
        if self.conjugate {
            z = z.conj();
            t = -t;
        }
        HeisPoint { z, t }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn p(x: f64, y: f64, t: f64) -> HeisPoint {
        HeisPoint::from_parts(x, y, t)
    }

    #[test]
    fn compose_examples() {
        let w = p(0.3, -1.2, 4.0);
        assert_eq!(HeisPoint::ORIGIN.compose(&w), w);
        assert_eq!(
            p(0.0, 1.0, 0.0).compose(&p(1.0, 0.0, 0.0)),
            p(1.0, 1.0, 2.0)
        );
        assert_eq!(
            p(1.0, 0.0, 0.0).compose(&p(0.0, 1.0, 0.0)),
            p(1.0, 1.0, -2.0)
        );
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(HeisPoint::ORIGIN.inverse(), HeisPoint::ORIGIN);
        let q = p(1.0, 1.0, 3.0);
        assert_eq!(q.inverse(), p(-1.0, -1.0, -3.0));
        assert_eq!(q.inverse().compose(&q), HeisPoint::ORIGIN);
        assert_eq!(q.compose(&q.inverse()), HeisPoint::ORIGIN);
        let r0 = crate::constants::r0();
        assert_eq!(p(r0, 0.0, 0.0).inverse(), p(-r0, 0.0, 0.0));
    }

    #[test]
    fn gauge_examples() {
        assert_eq!(HeisPoint::ORIGIN.gauge(), 0.0);
        assert_eq!(p(1.0, 0.0, 0.0).gauge(), 1.0);
        let g = p(0.0, 0.0, (11.0f64 / 12.0).sqrt()).gauge();
        assert_abs_diff_eq!(g, 0.978_482_042_633_557, epsilon = 1e-12);
    }

    #[test]
    fn distance_examples() {
        assert_abs_diff_eq!(
            distance(&p(0.0, 0.0, -0.5), &p(0.0, 0.0, 0.5)),
            1.0,
            epsilon = 1e-15
        );
        let r0 = crate::constants::r0();
        let h = crate::constants::canonical_height();
        assert_abs_diff_eq!(
            distance(&p(0.0, 0.0, h), &p(r0, 0.0, 0.0)),
            1.0,
            epsilon = 1e-14
        );
        let rot = Complex64::from_polar(r0, crate::constants::CANONICAL_ANGLE);
        assert_abs_diff_eq!(
            distance(&p(r0, 0.0, 0.0), &HeisPoint::new(rot, 0.0)),
            1.0,
            epsilon = 1e-14
        );
        // (2 sqrt(11/12))^(1/2) = (11/3)^(1/4)
        let far = distance(&p(0.0, 0.0, h), &p(0.0, 0.0, -h));
        assert_abs_diff_eq!(far, (11.0f64 / 3.0).powf(0.25), epsilon = 1e-14);
        assert_abs_diff_eq!(far, 1.383_782_575_230_905, epsilon = 1e-12);
    }

    #[test]
    fn gauge_is_distance_from_origin() {
        let q = p(0.7, -0.2, 1.3);
        assert_eq!(q.gauge(), distance(&q, &HeisPoint::ORIGIN));
        assert_eq!(q.gauge(), distance(&HeisPoint::ORIGIN, &q));
    }

    #[test]
    fn similarity_examples() {
        let q = p(1.0, 1.0, 2.0);
        assert_eq!(Similarity::identity().apply(&q), q);
        assert_eq!(
            Similarity::conjugation().apply(&p(0.0, 1.0, 5.0)),
            p(0.0, -1.0, -5.0)
        );
        assert_eq!(
            Similarity::dilation(2.0).unwrap().apply(&p(1.0, 0.0, 1.0)),
            p(2.0, 0.0, 4.0)
        );
    }

    #[test]
    fn similarity_order_is_conjugate_rotate_dilate_translate() {
        let g = Similarity::new(p(1.0, 0.0, 0.0), std::f64::consts::FRAC_PI_2, true, 2.0).unwrap();
        // j: (i, 1) -> (-i, -1); R: -> (1, -1); D_2: -> (2, -4); L_(1,0): -> (3, -4 + 2 Im(1 * 2)) = (3, -4)
        let out = g.apply(&p(0.0, 1.0, 1.0));
        assert_abs_diff_eq!(out.z.re, 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(out.z.im, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(out.t, -4.0, epsilon = 1e-15);
        let back = g.apply_inverse(&out);
        assert_abs_diff_eq!(back.z.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(back.z.im, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(back.t, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn scale_factors() {
        assert_eq!(Similarity::identity().scale_factor(), 1.0);
        let d0 = 1.383_782_575_230_905;
        assert_eq!(
            Similarity::dilation(1.0 / d0).unwrap().scale_factor(),
            1.0 / d0
        );
        assert_eq!(
            Similarity::translation(p(1.0, 2.0, 3.0)).scale_factor(),
            1.0
        );
        assert_eq!(Similarity::rotation(0.4).scale_factor(), 1.0);
        assert_eq!(Similarity::conjugation().scale_factor(), 1.0);
    }

    #[test]
    fn rejects_bad_dilation() {
        assert_eq!(Similarity::dilation(0.0), Err(Error::InvalidDilation(0.0)));
        assert!(Similarity::dilation(-1.0).is_err());
        assert!(Similarity::dilation(f64::NAN).is_err());
        assert_eq!(
            HeisPoint::checked(f64::NAN, 0.0, 0.0),
            Err(Error::NonFinite)
        );
    }
}
