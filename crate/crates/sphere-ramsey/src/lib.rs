//! Geometric constructions and numeric certificates for two-colorings of
//! small spheres.
//!
//! The crate revolves around two kinds of questions about spheres of radius
//! near 1 in three-space: which points lie at a fixed chord distance from a
//! given point (a circle), and how constraints of the form "this point has a
//! neighbour at distance `a`" propagate along great circles. Both feed the
//! headline check, that an explicit two-coloring of the sphere of radius
//! 1/√2 admits no monochromatic unit-side equilateral triangle;
//! [`coloring::verify_chi`] tests that claim numerically at scale.
//!
//! Modules:
//!
//! * [`geom`]: sphere points and distance circles, with a circle-circle
//!   intersection solver.
//! * [`coloring`]: a small rule DSL for sphere colorings, the concrete
//!   coloring `chi`, Monte Carlo and structured verification, witness search.
//! * [`propagation`]: diamond-fold parameters and arc growth along a great
//!   circle.
//! * [`sqrt2`]: the chord-1 construction on the sphere of radius 1/√2 (the
//!   closed curve with its cap and strip bounds, plus the height-doubling
//!   recursion).
//! * [`sqrt3`]: the chord-1 construction on the sphere of radius 1/√3
//!   (closed-form circle intersections with their discriminant identity,
//!   plus an intermediate-value root certificate).
//! * [`isosceles`]: red-point sequences and tangency certificates for
//!   isosceles triangles with two unit sides on the sphere of radius 1/√2.
//!
//! All floating-point checks run against the tolerance bundle in [`tol`];
//! every tolerance can be overridden per call where it matters.
//!
//! With the default `parallel` feature the heavy sweeps fan out via rayon.
//! Disabling it swaps in sequential loops with identical results: reductions
//! are order-independent (max / min-by-index) and random sampling derives one
//! RNG stream per sample index.

pub mod coloring;
pub mod error;
pub mod geom;
pub mod isosceles;
pub mod propagation;
pub mod sqrt2;
pub mod sqrt3;
pub mod tol;
pub mod vec;

pub use error::{Error, Result};
pub use tol::Tolerances;
pub use vec::Vec3;
