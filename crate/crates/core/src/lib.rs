//! The first Heisenberg group with the Korányi metric.
//!
//! The crate provides exact-formula arithmetic on `ℌ = ℂ × ℝ`, Korányi–Reimann
//! coordinates on the unit sphere, ℂ-circles, the curve of points at unit
//! distance from both `(0,0)` and `(1,0)`, and the sextic partner polynomial
//! whose root structure rules out five mutually equidistant points.
//!
//! Everything is `f64`, every function is pure, and every type is an
//! immutable value.

pub mod c3fin;
pub mod ccircle;
pub mod constants;
mod error;
pub mod heis;
pub mod optimize;
pub mod sextic;
pub mod solver;
pub mod sphere;

pub use c3fin::{Branch, CurvePoint};
pub use ccircle::CCircle;
pub use error::{Error, Result};
pub use heis::{distance, distance4, HeisPoint, Similarity};
pub use sextic::SexticPoly;
pub use solver::EquilateralCertificate;
pub use sphere::SpherePoint;
