//! Projective billiards on polygonal tables.
//!
//! A projective billiard replaces the classical reflection law by a
//! projective one: each boundary point carries a transverse line, and the
//! incoming and outgoing chords are harmonic conjugates with respect to that
//! line and the boundary line. Everything here is generic over a [`Scalar`]
//! so periodicity can be decided exactly over rationals (or Q(√3)) and
//! approximately in `f64`.
//!
//! Modules:
//! - [`projective`]: homogeneous points/lines, join/meet, cross-ratio,
//!   harmonic conjugates
//! - [`tables`]: right-spherical, centrally-projective, regular and
//!   converging-mirror tables
//! - [`dynamics`]: the billiard map, orbits, periodicity and grid scans
//! - [`duality`]: polar duality and the outer ghost billiard

pub mod duality;
pub mod dynamics;
mod error;
pub mod projective;
pub mod scalar;
mod sqrt3;
pub mod tables;

pub use duality::{dual_orbit, dual_polygon, outer_orbit, outer_step, DualSystem, OuterOrbit, Polarity};
pub use dynamics::{
    check_periodic, diagonal_concurrency_check, orbit, period_report, reflect, reflectivity_scan, step, ChordParam,
    Orbit, PeriodReport, ScanFailure, ScanReport, Termination,
};
pub use error::{Error, Result};
pub use projective::{
    cross_ratio_lines, cross_ratio_points, harmonic_conjugate_line, harmonic_conjugate_point, incident, join, meet,
    midpoint, CrossRatio, ProjLine, ProjPoint,
};
pub use scalar::{Rational, Scalar, FLOAT_TOLERANCE};
pub use sqrt3::QSqrt3;
pub use tables::{
    centrally_projective, converging_mirrors, regular_polygon, regular_polygon_vertices, right_spherical, Edge, Family,
    FieldRule, Table,
};
