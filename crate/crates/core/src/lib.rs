//! Rotationally symmetric point configurations.
//!
//! The crate builds SAT encodings of order-type problems (k-gon avoidance,
//! everywhere-unbalanced sets) with an s-fold rotational symmetry folded
//! into the variable space, drives an external solver over DIMACS, realizes
//! the resulting orientation assignments as planar coordinates, and
//! certifies them with exact arithmetic.
//!
//! Geometry is generic over [`Scalar`]: `f64` for search, [`BigRational`]
//! and [`QuadRational`] (`a + b√3`) for certification.

pub mod assignment;
pub mod collinear;
pub mod combin;
pub mod encoder;
pub mod error;
pub mod geom;
pub mod io;
pub mod localizer;
pub mod quad;
pub mod sat;
pub mod scalar;
pub mod symmetry;
pub mod verify;

pub use num_rational::BigRational;

pub use assignment::OrientationAssignment;
pub use error::{Error, ParseError, Result};
pub use geom::{orient, rotate, Orientation, Point};
pub use io::PointSet;
pub use quad::QuadRational;
pub use scalar::Scalar;
pub use symmetry::SFoldSymmetry;

/// Search-regime point.
pub type FloatPoint = Point<f64>;
/// Certification-regime point with rational coordinates.
pub type RationalPoint = Point<BigRational>;
/// Certification-regime point with coordinates in `Q(√3)`.
pub type QuadPoint = Point<QuadRational>;
