//! ℂ-circles and unit-distance configurations on them.
//!
//! Infinite ℂ-circles are vertical lines. Every finite ℂ-circle is the image
//! of the planar circle `|z| = r, t = 0` under a left translation, because the
//! model circle is invariant under rotations and conjugation; a finite circle
//! is therefore stored as a translation `center` and a radius.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants;
use crate::error::{Error, Result};
use crate::heis::{distance, HeisPoint, Similarity};

/// Default half-width of the `t` window searched by [`no_third_on_axis`].
pub const DEFAULT_AXIS_RANGE: f64 = 3.0;
/// Default sample count for [`no_third_on_axis`].
pub const DEFAULT_AXIS_GRID: usize = 100_000;

const VERTICAL_TOL: f64 = 1e-10;
const UNIT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CCircle {
    /// The vertical line through `axis_point`.
    Infinite { axis_point: HeisPoint },
    /// `center ⋆ {(radius e^{i a}, 0)}`.
    Finite { center: HeisPoint, radius: f64 },
}

impl CCircle {
    pub fn finite(center: HeisPoint, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidArgument(
                "finite C-circle radius must be positive",
            ));
        }
        Ok(CCircle::Finite { center, radius })
    }

    pub fn infinite(axis_point: HeisPoint) -> Self {
        CCircle::Infinite { axis_point }
    }

    /// Point at parameter `s`: the height offset along an infinite circle, the
    /// angle on a finite one.
    pub fn point_at(&self, s: f64) -> HeisPoint {
        match *self {
            CCircle::Infinite { axis_point } => {
                axis_point.compose(&HeisPoint::from_parts(0.0, 0.0, s))
            }
            CCircle::Finite { center, radius } => {
                center.compose(&HeisPoint::new(Complex64::from_polar(radius, s), 0.0))
            }
        }
    }

    /// The similarity carrying the model circle (`z = 0`, resp. `|z| = 1, t = 0`)
    /// onto `self`.
    pub fn normalizer(&self) -> Similarity {
        match *self {
            CCircle::Infinite { axis_point } => Similarity::translation(axis_point),
            CCircle::Finite { center, radius } => Similarity::new(center, 0.0, false, radius)
                .expect("finite circle radius is positive"),
        }
    }
}

/// Half-angle `arccos(1 - 1/(8 r^4))` at which `(r e^{±i a}, 0)` is at unit
/// distance from `(r, 0)`. Defined only for `r >= 1/2`.
pub fn chord_angle(r: f64) -> Option<f64> {
    if !(r.is_finite() && r >= 0.5) {
        return None;
    }
    let r4 = r.powi(4);
    Some((1.0 - 1.0 / (8.0 * r4)).clamp(-1.0, 1.0).acos())
}

/// Distance between `(r e^{i a}, 0)` and `(r e^{-i a}, 0)` with `a = chord_angle(r)`.
pub fn chord_pair_distance(r: f64) -> Option<f64> {
    let a = chord_angle(r)?;
    let p = HeisPoint::new(Complex64::from_polar(r, a), 0.0);
    let q = HeisPoint::new(Complex64::from_polar(r, -a), 0.0);
    Some(distance(&p, &q))
}

/// Equilateral dimension of the finite ℂ-circle of radius `r`: 3 exactly at
/// `r = 12^(-1/4)` (to within `tol`), 2 otherwise.
pub fn equilateral_dim_finite(r: f64, tol: f64) -> usize {
    if (r - constants::r0()).abs() <= tol {
        3
    } else {
        2
    }
}

/// Translation taking `(0, ∓1/2)` to the pair `p1, p2`, after checking that
/// they are vertically aligned at unit distance.
fn vertical_frame(p1: &HeisPoint, p2: &HeisPoint) -> Result<HeisPoint> {
    if !p1.is_finite() || !p2.is_finite() {
        return Err(Error::NonFinite);
    }
    if (p1.z - p2.z).norm() > VERTICAL_TOL * p1.z.norm().max(1.0) {
        return Err(Error::NotVertical);
    }
    let d = distance(p1, p2);
    if (d - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotUnitDistance(d));
    }
    // (w, m) ⋆ (0, s) = (w, m + s), so the midpoint translation is exact.
    Ok(HeisPoint::new(p1.z, 0.5 * (p1.t + p2.t)))
}

/// The locus of points at unit distance from two vertically aligned points at
/// unit distance from each other: the translate of `|z| = (3/4)^(1/4), t = 0`
/// by their midpoint.
pub fn vertical_equidistant_locus(p1: &HeisPoint, p2: &HeisPoint) -> Result<CCircle> {
    let center = vertical_frame(p1, p2)?;
    CCircle::finite(center, constants::vertical_locus_radius())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisSearchReport {
    pub samples: usize,
    /// Minimum over the grid of `max(|d(q, p1) - 1|, |d(q, p2) - 1|)`.
    pub min_deviation: f64,
    /// Height of the minimiser in the frame where the pair is `(0, ∓1/2)`.
    pub argmin_t: f64,
    /// The minimiser in the original coordinates.
    pub argmin: HeisPoint,
}

/// Grid search along the common axis of `p1, p2` for a third point at unit
/// distance from both. `grid` samples span `[-range, range]` in the normalised
/// frame; a single sample sits at the midpoint.
pub fn no_third_on_axis(
    p1: &HeisPoint,
    p2: &HeisPoint,
    grid: usize,
    range: f64,
) -> Result<AxisSearchReport> {
    if grid == 0 {
        return Err(Error::InvalidArgument("grid must be positive"));
    }
    if !(range.is_finite() && range > 0.0) {
        return Err(Error::InvalidArgument("range must be positive"));
    }
    let mid = vertical_frame(p1, p2)?;
    let mut best = (f64::INFINITY, 0.0, mid);
    for k in 0..grid {
        let s = if grid == 1 {
            0.0
        } else {
            -range + 2.0 * range * k as f64 / (grid - 1) as f64
        };
        let q = mid.compose(&HeisPoint::from_parts(0.0, 0.0, s));
        let dev = (distance(&q, p1) - 1.0)
            .abs()
            .max((distance(&q, p2) - 1.0).abs());
        if dev < best.0 {
            best = (dev, s, q);
        }
    }
    Ok(AxisSearchReport {
        samples: grid,
        min_deviation: best.0,
        argmin_t: best.1,
        argmin: best.2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn chord_angle_examples() {
        assert_abs_diff_eq!(
            chord_angle(constants::r0()).unwrap(),
            2.0 * PI / 3.0,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(chord_angle(0.5).unwrap(), PI, epsilon = 1e-15);
        assert_eq!(chord_angle(0.4), None);
        let r = 0.75f64.powf(0.25);
        assert_abs_diff_eq!(
            chord_angle(r).unwrap(),
            (5.0f64 / 6.0).acos(),
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            chord_angle(r).unwrap(),
            0.585_685_543_457_150_8,
            epsilon = 1e-12
        );
    }

    #[test]
    fn equilateral_dim_examples() {
        assert_eq!(equilateral_dim_finite(constants::r0(), 1e-12), 3);
        assert_eq!(equilateral_dim_finite(1.0, 1e-12), 2);
        assert_eq!(equilateral_dim_finite(constants::r0() + 1e-6, 1e-12), 2);
    }

    #[test]
    fn chord_pair_examples() {
        assert_abs_diff_eq!(
            chord_pair_distance(constants::r0()).unwrap(),
            1.0,
            epsilon = 1e-14
        );
        // d^4 = 16 r^4 sin^4 a + 4 r^4 sin^2 2a = 11/3 with r^4 = 3/4, cos a = 5/6
        let d = chord_pair_distance(0.75f64.powf(0.25)).unwrap();
        assert_abs_diff_eq!(d, (11.0f64 / 3.0).powf(0.25), epsilon = 1e-14);
        assert_eq!(chord_pair_distance(0.4), None);
    }

    #[test]
    fn vertical_locus_examples() {
        let c = vertical_equidistant_locus(
            &HeisPoint::from_parts(0.0, 0.0, -0.5),
            &HeisPoint::from_parts(0.0, 0.0, 0.5),
        )
        .unwrap();
        match c {
            CCircle::Finite { center, radius } => {
                assert_eq!(center, HeisPoint::ORIGIN);
                assert_abs_diff_eq!(radius, 0.930_604_859_102_099_6, epsilon = 1e-15);
            }
            _ => panic!("expected finite circle"),
        }
        let p1 = HeisPoint::ORIGIN;
        let p2 = HeisPoint::from_parts(0.0, 0.0, 1.0);
        let c = vertical_equidistant_locus(&p1, &p2).unwrap();
        for k in 0..16 {
            let q = c.point_at(k as f64 * PI / 8.0);
            assert_abs_diff_eq!(q.t, 0.5, epsilon = 1e-15);
            assert_abs_diff_eq!(distance(&q, &p1), 1.0, epsilon = 1e-14);
            assert_abs_diff_eq!(distance(&q, &p2), 1.0, epsilon = 1e-14);
        }
        assert_eq!(
            vertical_equidistant_locus(&HeisPoint::ORIGIN, &HeisPoint::from_parts(1.0, 0.0, 0.0)),
            Err(Error::NotVertical)
        );
    }

    #[test]
    fn off_axis_vertical_pair() {
        let p1 = HeisPoint::from_parts(0.4, -1.1, 2.0);
        let p2 = HeisPoint::from_parts(0.4, -1.1, 3.0);
        let c = vertical_equidistant_locus(&p1, &p2).unwrap();
        for k in 0..64 {
            let q = c.point_at(k as f64 * PI / 32.0);
            assert_abs_diff_eq!(distance(&q, &p1), 1.0, epsilon = 1e-13);
            assert_abs_diff_eq!(distance(&q, &p2), 1.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn axis_search_examples() {
        let p1 = HeisPoint::from_parts(0.0, 0.0, -0.5);
        let p2 = HeisPoint::from_parts(0.0, 0.0, 0.5);
        // On the axis the distances are |t ± 1/2|^(1/2). The max-deviation is
        // 1 - (1/4)^(1/4) at the midpoint, but its minimum is 1/4, where
        // sqrt(t + 1/2) - 1 = 1 - sqrt(t - 1/2), i.e. t = ±17/16.
        let rep = no_third_on_axis(&p1, &p2, DEFAULT_AXIS_GRID, DEFAULT_AXIS_RANGE).unwrap();
        assert_abs_diff_eq!(rep.min_deviation, 0.25, epsilon = 1e-4);
        assert_abs_diff_eq!(rep.argmin_t.abs(), 17.0 / 16.0, epsilon = 1e-4);
        let single = no_third_on_axis(&p1, &p2, 1, DEFAULT_AXIS_RANGE).unwrap();
        assert_eq!(single.samples, 1);
        assert_eq!(single.argmin_t, 0.0);
        assert_abs_diff_eq!(
            single.min_deviation,
            1.0 - 0.25f64.powf(0.25),
            epsilon = 1e-15
        );
        let far = HeisPoint::from_parts(0.0, 0.0, 1.5);
        assert!(matches!(
            no_third_on_axis(&p1, &far, 10, 3.0),
            Err(Error::NotUnitDistance(_))
        ));
    }

    #[test]
    fn normalizer_maps_model_circle() {
        let c = CCircle::finite(HeisPoint::from_parts(1.0, 2.0, -0.5), 0.7).unwrap();
        let g = c.normalizer();
        for k in 0..8 {
            let a = k as f64 * PI / 4.0;
            let model = HeisPoint::new(Complex64::from_polar(1.0, a), 0.0);
            let img = g.apply(&model);
            let direct = c.point_at(a);
            assert_abs_diff_eq!((img.z - direct.z).norm(), 0.0, epsilon = 1e-14);
            assert_abs_diff_eq!(img.t, direct.t, epsilon = 1e-14);
        }
    }
}
