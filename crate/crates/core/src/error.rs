use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite coordinate")]
    NonFinite,

    #[error("dilation factor must be positive and finite, got {0}")]
    InvalidDilation(f64),

    #[error("theta = {0} is outside [-pi/2, pi/2]")]
    ThetaOutOfRange(f64),

    #[error("point is off the unit Korányi sphere (|gauge^4 - 1| = {0:e})")]
    OffUnitSphere(f64),

    /// The unit-distance locus around a pole is the circle `theta = ±pi/6`
    /// rather than a graph over the `cos` argument.
    #[error("locus centre is a pole; the unit-distance locus is the circle theta = {theta}")]
    PoleCenter { theta: f64 },

    #[error("degenerate locus: {0}")]
    DegenerateLocus(&'static str),

    #[error("points do not lie on a common vertical line")]
    NotVertical,

    #[error("points are at Korányi distance {0}, expected 1")]
    NotUnitDistance(f64),

    #[error("theta = {0} is outside the curve interval [-theta*, theta*]")]
    OutsideCurveInterval(f64),

    #[error("theta = {0} is at a branch junction, where the derivative is unbounded")]
    BranchJunction(f64),

    #[error("t0 = {0} is outside the admissible interval [-t*, t*]")]
    ParameterOutOfRange(f64),

    #[error("t0 = {0} is on the boundary of the admissible interval")]
    BoundaryParameter(f64),

    #[error("expected {expected} admissible roots for t0 = {t0}, found {found}")]
    RootCount {
        t0: f64,
        expected: usize,
        found: usize,
    },

    #[error("no unit-distance partner verified for the curve point at theta = {0}")]
    NoPartner(f64),

    #[error("at least two points are required, got {0}")]
    TooFewPoints(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}
