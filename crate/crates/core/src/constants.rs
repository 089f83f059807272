//! Closed-form constants that recur across the crate.

/// Radius `12^(-1/4)` of the only axis-centred planar circle carrying an
/// equilateral triple.
pub fn r0() -> f64 {
    12f64.powf(-0.25)
}

/// Angular separation of the canonical triple.
pub const CANONICAL_ANGLE: f64 = 2.0 * std::f64::consts::FRAC_PI_3;

/// Height `sqrt(11/12)` of the two points equidistant from the canonical triple.
pub fn canonical_height() -> f64 {
    (11.0f64 / 12.0).sqrt()
}

/// Radius `(3/4)^(1/4)` of the circle of points at unit distance from `(0, ±1/2)`.
pub fn vertical_locus_radius() -> f64 {
    0.75f64.powf(0.25)
}

/// Half-width `arccos(5/2 - sqrt 6)` of the curve interval.
pub fn theta_star() -> f64 {
    (2.5 - 6f64.sqrt()).acos()
}

/// `tan(theta*/2)`, via the half-angle identity `tan(x/2) = sqrt((1 - cos x)/(1 + cos x))`.
pub fn t_star() -> f64 {
    let c = 2.5 - 6f64.sqrt();
    ((1.0 - c) / (1.0 + c)).sqrt()
}

/// Positive root `sqrt((1 + 2 sqrt 3)/5)` of the sextic at `t0 = 0`.
pub fn t0_zero_root() -> f64 {
    ((1.0 + 2.0 * 3f64.sqrt()) / 5.0).sqrt()
}
