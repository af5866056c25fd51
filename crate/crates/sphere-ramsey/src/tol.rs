//! Numeric tolerances used across the crate.
//!
//! Three distinct scales show up in practice and conflating them causes
//! either false alarms or silent acceptance of garbage:
//!
//! * sphere membership: constructed points sit on their sphere to within a
//!   few ulps, so `1e-12` is generous while still catching real bugs;
//! * intersection residuals: a circle-circle intersection goes through a
//!   quadratic solve and loses a couple of digits, hence the looser `1e-11`;
//! * plane membership for coloring rules: sampled points land near the
//!   decision planes only by accident, and `1e-10` keeps the band narrow
//!   enough that the band itself never changes a verdict in the sweeps.

/// Tolerance bundle threaded through geometric predicates.
#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    /// Allowed deviation of a point's norm from its sphere radius.
    pub sphere: f64,
    /// Allowed constraint residual on solver outputs.
    pub solve: f64,
    /// Half-width of the band treated as "on the plane" by coloring rules.
    pub plane: f64,
}

pub const EPS_SPHERE: f64 = 1e-12;
pub const EPS_SOLVE: f64 = 1e-11;
pub const EPS_PLANE: f64 = 1e-10;

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { sphere: EPS_SPHERE, solve: EPS_SOLVE, plane: EPS_PLANE }
    }
}

impl Tolerances {
    /// Default bundle with the solver tolerance replaced.
    pub fn with_solve(solve: f64) -> Self {
        Tolerances { solve, ..Tolerances::default() }
    }
}
