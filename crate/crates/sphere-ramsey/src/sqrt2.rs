//! The chord-1 construction on the sphere of radius 1/√2.
//!
//! On `S(1/√2)` two points are at chord distance 1 exactly when they are
//! orthogonal as vectors, which turns distance circles into great circles
//! and makes the following objects tractable in closed form.
//!
//! * A closed curve `Γ`, parametrized by [`curve_point`]: for each `α` the
//!   point `d'(α)` lies on the great circle orthogonal to a moving axis
//!   `k(α)` and at unit chord from a partner point `d(α)` on a fixed great
//!   circle. `Γ` passes through the north pole `b = (0,0,1/√2)` at `α = 0`
//!   and through `b₁ = (1/2, 0, 1/2)` at `α = π/2`, with period `π`.
//! * A spherical cap bound: `Γ` never enters the open cap `q·x > 1 + √2/2`
//!   where `q = (1, 0, 1+√2)`; [`cap_margin`] gives the signed clearance in
//!   factored form, zero exactly at the tangency parameters.
//! * The strip `E = {x : |q·x| ≤ 1/√2}` around the cap's axis:
//!   [`solve_coverage`] finds, for any point of the strip, a parameter `α`
//!   with `d'(α) ⊥ p`, by reducing `d'(α)·p = 0` to a phase equation in
//!   `2α`. Solvability is equivalent to `x² + y² ≥ (x + 2z)²` at
//!   `p = (x, y, z)`, which holds on all of `E` and fails on the open cap.
//! * A height-doubling recursion on horizontal circles around the cap axis:
//!   a circle at height `h ≥ 1/2` above the center forces one at height
//!   `√(2h² - r²)`; [`enlarge_step`] performs one step and materializes the
//!   witness points that justify it. Two steps from the cap's own height
//!   reach a circle of diameter `√(4 - 2√2) > 1`.

use crate::error::{Error, Result};
use crate::geom::SphereCircle;
use crate::geom::SpherePoint;
use crate::tol::Tolerances;
use crate::vec::Vec3;
use serde::Serialize;
use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

/// Sphere radius for everything in this module.
pub const RADIUS: f64 = FRAC_1_SQRT_2;

/// Axis of the cap and strip: `(1, 0, 1+√2)`.
pub fn cap_axis() -> Vec3 {
    Vec3::new(1.0, 0.0, 1.0 + SQRT_2)
}

/// Cap threshold: points with `q·x` beyond this are inside the forbidden
/// cap.
pub fn cap_threshold() -> f64 {
    1.0 + SQRT_2 / 2.0
}

/// Half-width of the strip `E` in the `q·x` functional.
pub const STRIP_HALF_WIDTH: f64 = FRAC_1_SQRT_2;

/// North pole `b`, the curve point at `α = 0`.
pub fn pole() -> Vec3 {
    Vec3::new(0.0, 0.0, RADIUS)
}

/// The point `b₁ = (1/2, 0, 1/2)`, the curve point at `α = π/2`.
pub fn b1() -> Vec3 {
    Vec3::new(0.5, 0.0, 0.5)
}

/// Moving axis `k(α) = (cos α, sin α, 0)/√2`; the curve point at `α` lies
/// on the great circle orthogonal to it.
pub fn moving_axis(alpha: f64) -> Vec3 {
    let (s, c) = alpha.sin_cos();
    Vec3::new(c, s, 0.0) * FRAC_1_SQRT_2
}

/// Partner point `d(α)`, at unit chord from the curve point and on the
/// fixed great circle orthogonal to `b₁`.
pub fn partner_point(alpha: f64) -> Vec3 {
    let (s, c) = alpha.sin_cos();
    Vec3::new(s, -c, -s) * (1.0 / (2.0 * (1.0 + s * s)).sqrt())
}

/// Curve point `d'(α)`.
pub fn curve_point(alpha: f64) -> Vec3 {
    let s = alpha.sin();
    let c = alpha.cos();
    Vec3::new(s * s, -s * c, 1.0) * (1.0 / (2.0 * (1.0 + s * s)).sqrt())
}

/// One evaluated curve sample with named constraint residuals.
#[derive(Clone, Debug, Serialize)]
pub struct CurveSample {
    pub alpha: f64,
    pub point: SpherePoint,
    /// Keyed by constraint name; all values should sit at rounding level.
    pub residuals: BTreeMap<&'static str, f64>,
}

impl CurveSample {
    pub fn max_residual(&self) -> f64 {
        self.residuals.values().fold(0.0f64, |a, &b| a.max(b))
    }
}

/// Evaluates the curve at `alpha` and reports how well the defining
/// constraints hold: membership of `S(1/√2)`, orthogonality to the moving
/// axis, unit distance to the partner point, and the partner's membership of
/// the fixed great circle orthogonal to `b₁`.
pub fn curve_sample(alpha: f64) -> CurveSample {
    let d_prime = curve_point(alpha);
    let k = moving_axis(alpha);
    let partner = partner_point(alpha);
    let mut residuals = BTreeMap::new();
    residuals.insert("on_sphere", (d_prime.norm() - RADIUS).abs());
    residuals.insert("orth_axis", k.dot(d_prime).abs());
    residuals.insert("unit_chord_partner", (partner.distance(d_prime) - 1.0).abs());
    residuals.insert("partner_on_cross_circle", partner.dot(b1()).abs());
    CurveSample {
        alpha,
        point: SpherePoint::snapped(d_prime, RADIUS).expect("curve point is nonzero"),
        residuals,
    }
}

/// Signed clearance of the curve from the cap boundary, in the factored
/// form
/// `(√2/2)·(w - 1)(w - √2)/w` with `w = √(1 + sin²α)`.
///
/// Nonpositive everywhere (the curve never enters the cap), and zero exactly
/// where `sin α ∈ {0, ±1}`.
pub fn cap_margin(alpha: f64) -> f64 {
    let s = alpha.sin();
    let w = (1.0 + s * s).sqrt();
    (SQRT_2 / 2.0) * (w - 1.0) * (w - SQRT_2) / w
}

/// Position of a point relative to the strip `E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StripPosition {
    Inside,
    /// Within `tol.plane` of one of the two bounding planes.
    Boundary,
    Outside,
}

/// Classifies `p` against the strip `E = {|q·x| ≤ 1/√2}`.
pub fn strip_membership(p: &SpherePoint, tol: &Tolerances) -> Result<StripPosition> {
    check_radius(p)?;
    let v = cap_axis().dot(p.coords()).abs();
    if (v - STRIP_HALF_WIDTH).abs() <= tol.plane {
        Ok(StripPosition::Boundary)
    } else if v < STRIP_HALF_WIDTH {
        Ok(StripPosition::Inside)
    } else {
        Ok(StripPosition::Outside)
    }
}

fn check_radius(p: &SpherePoint) -> Result<()> {
    if (p.radius() - RADIUS).abs() > 1e-12 {
        return Err(Error::Precondition(format!(
            "point lives on S({}), expected S(1/√2)",
            p.radius()
        )));
    }
    Ok(())
}

/// Finds `α ∈ [0, π)` with `d'(α)·p = 0`, or `None` when no parameter
/// works.
///
/// Writing `p = (x, y, z)`, the equation reads
/// `x·cos 2α + y·sin 2α = x + 2z` up to a positive factor, so a solution
/// exists iff `x² + y² ≥ (x + 2z)²`. Both solutions of the phase equation
/// are folded into `[0, π)` (the curve has period π) and the smaller
/// parameter is returned.
pub fn solve_coverage(p: &SpherePoint, tol: &Tolerances) -> Result<Option<f64>> {
    check_radius(p)?;
    let Vec3 { x, y, z } = p.coords();
    let amp = (x * x + y * y).sqrt();
    let rhs = x + 2.0 * z;
    if amp < 1e-300 {
        // Poles: the equation degenerates to rhs = 0, which fails on the
        // sphere.
        return Ok(None);
    }
    let ratio = rhs / amp;
    if ratio.abs() > 1.0 + 1e-12 {
        return Ok(None);
    }
    let spread = ratio.clamp(-1.0, 1.0).acos();
    let phase = y.atan2(x);
    let fold = |two_alpha: f64| -> f64 {
        let mut a = (two_alpha / 2.0) % PI;
        if a < 0.0 {
            a += PI;
        }
        // Guard against -0.0 and a fold landing a hair under π.
        if a >= PI {
            a -= PI;
        }
        a.abs()
    };
    let c1 = fold(phase + spread);
    let c2 = fold(phase - spread);
    let alpha = c1.min(c2);
    let residual = curve_point(alpha).dot(p.coords()).abs();
    if residual > tol.solve.max(1e-10) {
        return Err(Error::Internal(format!(
            "coverage parameter violates orthogonality by {residual:.3e}"
        )));
    }
    Ok(Some(alpha))
}

/// Deterministic sample of the strip: `steps × steps` points on heights
/// spanning `E`, rotated around the cap axis.
pub fn strip_grid(steps: usize) -> Vec<SpherePoint> {
    let q = cap_axis();
    let e = q.normalized().expect("cap axis is nonzero");
    // Orthonormal completion of the axis; v is the global y-axis.
    let v = Vec3::new(0.0, 1.0, 0.0);
    let u = v.cross(e);
    let s_max = STRIP_HALF_WIDTH / q.norm();
    let mut out = Vec::with_capacity(steps * steps);
    for i in 0..steps {
        let s = -s_max + 2.0 * s_max * i as f64 / (steps - 1) as f64;
        let rho = (RADIUS * RADIUS - s * s).max(0.0).sqrt();
        for j in 0..steps {
            let psi = 2.0 * PI * j as f64 / steps as f64;
            let coords = e * s + u * (rho * psi.cos()) + v * (rho * psi.sin());
            out.push(SpherePoint::snapped(coords, RADIUS).expect("strip point is nonzero"));
        }
    }
    out
}

/// Points strictly inside the cap, at `q·x ≥ cap_threshold() + margin`.
pub fn cap_grid(steps: usize, margin: f64) -> Vec<SpherePoint> {
    let q = cap_axis();
    let e = q.normalized().expect("cap axis is nonzero");
    let v = Vec3::new(0.0, 1.0, 0.0);
    let u = v.cross(e);
    let s_min = (cap_threshold() + margin) / q.norm();
    let side = (steps as f64).sqrt().ceil() as usize;
    let mut out = Vec::with_capacity(steps);
    'outer: for i in 0..side {
        let s = s_min + (RADIUS - s_min) * (i as f64 + 0.5) / side as f64;
        let rho = (RADIUS * RADIUS - s * s).max(0.0).sqrt();
        for j in 0..side {
            let psi = 2.0 * PI * j as f64 / side as f64;
            let coords = e * s + u * (rho * psi.cos()) + v * (rho * psi.sin());
            out.push(SpherePoint::snapped(coords, RADIUS).expect("cap point is nonzero"));
            if out.len() == steps {
                break 'outer;
            }
        }
    }
    out
}

/// Result of sweeping [`solve_coverage`] over a point set.
#[derive(Clone, Debug, Serialize)]
pub struct CoverageSweep {
    pub samples: usize,
    /// Points for which no parameter was found.
    pub failures: usize,
    /// Largest orthogonality residual among the solved points.
    pub max_residual: f64,
    /// Index of the first failing point, if any.
    pub first_failure: Option<usize>,
}

/// Solves the coverage equation for every point, in parallel under the
/// `parallel` feature. The reduction is order-independent, so both builds
/// report identical numbers.
pub fn sweep_coverage(points: &[SpherePoint], tol: &Tolerances) -> Result<CoverageSweep> {
    let eval = |(i, p): (usize, &SpherePoint)| -> Result<(f64, Option<usize>)> {
        match solve_coverage(p, tol)? {
            Some(alpha) => Ok((curve_point(alpha).dot(p.coords()).abs(), None)),
            None => Ok((0.0, Some(i))),
        }
    };
    let results: Vec<(f64, Option<usize>)> = {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            points
                .par_iter()
                .enumerate()
                .map(eval)
                .collect::<Result<Vec<_>>>()?
        }
        #[cfg(not(feature = "parallel"))]
        {
            points.iter().enumerate().map(eval).collect::<Result<Vec<_>>>()?
        }
    };
    let mut sweep = CoverageSweep {
        samples: points.len(),
        failures: 0,
        max_residual: 0.0,
        first_failure: None,
    };
    for (res, fail) in results {
        sweep.max_residual = sweep.max_residual.max(res);
        if let Some(i) = fail {
            sweep.failures += 1;
            sweep.first_failure = Some(sweep.first_failure.map_or(i, |f: usize| f.min(i)));
        }
    }
    Ok(sweep)
}

/// State of the height-doubling recursion.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EnlargementState {
    /// Squared height of the current circle's plane above the center, along
    /// the cap axis.
    pub h_squared: f64,
    pub step: u32,
    /// Unit vector along the cap axis.
    pub e_axis: Vec3,
    /// Euclidean diameter of the current circle, `2·√(r² - h²)`.
    pub diameter: f64,
    /// Worst witness-identity residual observed producing this state.
    pub witness_residual_max: f64,
}

impl EnlargementState {
    /// Starting state: the height of the cap boundary plane,
    /// `h₀² = (2+√2)/8`.
    pub fn initial() -> EnlargementState {
        let h_squared = (2.0 + SQRT_2) / 8.0;
        EnlargementState {
            h_squared,
            step: 0,
            e_axis: cap_axis().normalized().expect("cap axis is nonzero"),
            diameter: diameter_for(h_squared),
            witness_residual_max: 0.0,
        }
    }

    /// The circle this state describes, as a plane section.
    pub fn circle(&self) -> SphereCircle {
        SphereCircle::from_plane(self.e_axis, self.h_squared.sqrt(), RADIUS)
            .expect("recursion heights stay below the radius")
    }
}

fn diameter_for(h_squared: f64) -> f64 {
    2.0 * (RADIUS * RADIUS - h_squared).max(0.0).sqrt()
}

/// One step of the recursion: `h² → 2h² - r²` ... squared heights double
/// against the squared radius.
///
/// Requires `h ≥ 1/2` so the new height is real. The step materializes the
/// four witness points behind the implication (a point of the old circle
/// and two orthogonal partners on the new one, closed up by the frame
/// witness) and
/// validates their defining identities to `1e-12`.
pub fn enlarge_step(state: &EnlargementState) -> Result<EnlargementState> {
    let r = RADIUS;
    let h2 = state.h_squared;
    if h2 < 0.25 - 1e-15 {
        return Err(Error::Domain(format!(
            "height² = {h2} below 1/4; the doubled height would be imaginary"
        )));
    }
    if h2 > r * r + 1e-15 {
        return Err(Error::Domain(format!("height² = {h2} exceeds the squared radius")));
    }
    let h = h2.min(r * r).sqrt();
    let e = state.e_axis;
    // Orthonormal completion (u, v, e); v is the global y-axis by
    // construction of the cap axis.
    let v = Vec3::new(0.0, 1.0, 0.0);
    let u = v.cross(e);
    let a = (r * r - h2).max(0.0).sqrt();
    let new_h2 = 2.0 * h2 - r * r;
    let g = new_h2.max(0.0).sqrt();

    // Witnesses: x on the current circle; k orthogonal to x in the (u, e)
    // plane; f orthogonal to both x and k; f' the frame closure, which lands
    // at the new height.
    let x = u * -a + e * h;
    let k = u * h + e * a;
    let f = u * (-a * a / h) + v * (-(r * g) / h) + e * a;
    let fp = u * (-(a * g) / h) + v * (r * a / h) + e * g;

    let mut worst = 0.0f64;
    let mut track = |label: &str, value: f64| -> Result<()> {
        worst = worst.max(value.abs());
        if value.abs() > 1e-12 {
            return Err(Error::Internal(format!(
                "witness identity '{label}' off by {value:.3e}"
            )));
        }
        Ok(())
    };
    track("x_on_sphere", x.norm() - r)?;
    track("k_on_sphere", k.norm() - r)?;
    track("f_on_sphere", f.norm() - r)?;
    track("fp_on_sphere", fp.norm() - r)?;
    track("x_orth_k", x.dot(k))?;
    track("k_orth_f", k.dot(f))?;
    track("f_orth_fp", f.dot(fp))?;
    track("k_orth_fp", k.dot(fp))?;
    track("fp_at_new_height", e.dot(fp) - g)?;
    // Frame closure: f' = -(1/r)·k × f.
    track("fp_closes_frame", (k.cross(f) * (-1.0 / r)).distance(fp))?;

    Ok(EnlargementState {
        h_squared: new_h2,
        step: state.step + 1,
        e_axis: e,
        diameter: diameter_for(new_h2),
        witness_residual_max: state.witness_residual_max.max(worst),
    })
}

/// Summary of running the recursion twice from the cap height.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EnlargementCertificate {
    pub h0_squared: f64,
    pub h1_squared: f64,
    pub h2_squared: f64,
    /// Diameter of the final circle.
    pub diameter: f64,
    pub witness_residual_max: f64,
    /// Whether the final diameter exceeds 1, the point of the exercise.
    pub exceeds_unit: bool,
}

/// Runs two enlargement steps from the initial height and checks the final
/// diameter `√(4 - 2√2)` against 1.
pub fn enlargement_certificate() -> Result<EnlargementCertificate> {
    let s0 = EnlargementState::initial();
    let s1 = enlarge_step(&s0)?;
    let s2 = enlarge_step(&s1)?;
    Ok(EnlargementCertificate {
        h0_squared: s0.h_squared,
        h1_squared: s1.h_squared,
        h2_squared: s2.h_squared,
        diameter: s2.diameter,
        witness_residual_max: s2.witness_residual_max,
        exceeds_unit: s2.diameter > 1.0,
    })
}
