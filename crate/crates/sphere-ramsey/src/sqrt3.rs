//! The two-anchor intersection curve on the sphere of radius 1/√3.
//!
//! On `S(1/√3)` a unit chord between two points is the same as the dot
//! product `-1/6`. Fix the anchor `a₂ = (1/2, 1/4, 1/(4√3))` and let a
//! second anchor `k(α) = (cos α/2, sin α/2, -1/(2√3))` travel around a
//! horizontal circle. For each `α` the locus of points at unit chord from
//! both anchors is the intersection of two circles, computed here in closed
//! form rather than through the generic solver:
//!
//! * eliminating `x, y` from the two plane equations turns the sphere
//!   equation into a quadratic in `t = z/√3` with coefficients
//!   `(Σ²D, -2Σ²/3, (9 - 14Σ² + 3Σ⁴)/9)`, where `Δ² = 1 + 2cos α + sin α`,
//!   `Σ² = 4 - Δ²`, `D = 4 + 3Δ²`, and `Δ₀ = cos α - 2 sin α`;
//! * the discriminant collapses to `4Σ²Δ²Δ₀²` exactly, so real solutions
//!   exist precisely when `Δ² ≥ 0` and the two branches merge where
//!   `Δ = 0`; the branch points `d₁, d₂` and their reflections
//!   `d'ᵢ = -k(α) - dᵢ` are then written out componentwise in terms of
//!   `Δ/Σ, Δ₀, D`.
//!
//! The admissible parameter set `{Δ² ≥ 0}` is `[0, 2·arctan 3] ∪ [3π/2, 2π)`
//! and both of its endpoints send `d'₁` and `d'₂` to the fixed anchor `a₂`
//! itself, so the reflected branches glue into closed curves. The module
//! also certifies, by bisection, a parameter where the first reflected
//! branch returns to unit chord from the frozen point `q = d'₂(0)`: the gap
//! function changes sign between `α = 0` and `α = π/2`.

use crate::error::{Error, Result};
use crate::geom::PlanePair;
use crate::geom::SpherePoint;
use crate::tol::Tolerances;
use crate::vec::Vec3;
use serde::Serialize;
use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};

/// Sphere radius `1/√3`.
pub fn radius() -> f64 {
    3.0f64.sqrt().recip()
}

/// Dot product equivalent to a unit chord on `S(1/√3)`.
pub const UNIT_CHORD_DOT: f64 = -1.0 / 6.0;

/// Fixed anchor `a₂`.
pub fn fixed_anchor() -> Vec3 {
    Vec3::new(0.5, 0.25, 0.25 / 3.0f64.sqrt())
}

/// Moving anchor `k(α)` on the horizontal circle at `z = -1/(2√3)`.
pub fn moving_anchor(alpha: f64) -> Vec3 {
    let (s, c) = alpha.sin_cos();
    Vec3::new(0.5 * c, 0.5 * s, -0.5 / 3.0f64.sqrt())
}

/// `Δ² = 1 + 2cos α + sin α`, which may be negative; its sign governs
/// whether the two distance circles meet.
pub fn delta_squared(alpha: f64) -> f64 {
    1.0 + 2.0 * alpha.cos() + alpha.sin()
}

/// `Δ₀ = cos α - 2 sin α`, the factor controlling when the two solution
/// heights coincide.
pub fn delta_zero(alpha: f64) -> f64 {
    alpha.cos() - 2.0 * alpha.sin()
}

/// The two maximal parameter intervals where `Δ² ≥ 0`, as closed intervals
/// in `[0, 2π]`.
pub fn admissible_domain() -> [(f64, f64); 2] {
    [(0.0, 2.0 * 3.0f64.atan()), (1.5 * PI, 2.0 * PI)]
}

/// Whether the circles meet at `alpha` (up to the solver tolerance).
pub fn is_admissible(alpha: f64, tol: &Tolerances) -> bool {
    delta_squared(alpha) >= -tol.solve
}

/// Coefficients of the height quadratic `a t² + b t + c = 0` in `t = z/√3`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct QuadCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl QuadCoefficients {
    pub fn discriminant(&self) -> f64 {
        self.b * self.b - 4.0 * self.a * self.c
    }

    /// The factored value `4Σ²Δ²Δ₀²` the discriminant must equal.
    pub fn factored_discriminant(alpha: f64) -> f64 {
        let d2 = delta_squared(alpha);
        let s2 = 4.0 - d2;
        let d0 = delta_zero(alpha);
        4.0 * s2 * d2 * d0 * d0
    }
}

pub fn quad_coefficients(alpha: f64) -> QuadCoefficients {
    let d2 = delta_squared(alpha);
    let s2 = 4.0 - d2;
    let big_d = 4.0 + 3.0 * d2;
    QuadCoefficients {
        a: s2 * big_d,
        b: -2.0 * s2 / 3.0,
        c: (9.0 - 14.0 * s2 + 3.0 * s2 * s2) / 9.0,
    }
}

/// Result of comparing the expanded and factored discriminants over a
/// parameter grid.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DiscriminantCheck {
    pub samples: usize,
    pub max_rel_error: f64,
    /// Parameter realizing the worst error.
    pub worst_alpha: f64,
}

/// Sweeps the discriminant identity `b² - 4ac = 4Σ²Δ²Δ₀²` over `grid`
/// equally spaced parameters. The identity holds for every `α`, admissible
/// or not, so no filtering is applied. Relative error is measured against
/// `max(|expanded|, |factored|, 1)`.
pub fn discriminant_check(grid: usize) -> DiscriminantCheck {
    let eval = |i: usize| -> (f64, f64) {
        let alpha = 2.0 * PI * i as f64 / grid as f64;
        let q = quad_coefficients(alpha);
        let expanded = q.discriminant();
        let factored = QuadCoefficients::factored_discriminant(alpha);
        let scale = expanded.abs().max(factored.abs()).max(1.0);
        ((expanded - factored).abs() / scale, alpha)
    };
    let merge = |a: (f64, f64), b: (f64, f64)| if b.0 > a.0 { b } else { a };
    let worst = {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            (0..grid).into_par_iter().map(eval).reduce(|| (0.0, 0.0), merge)
        }
        #[cfg(not(feature = "parallel"))]
        {
            (0..grid).map(eval).fold((0.0, 0.0), merge)
        }
    };
    DiscriminantCheck {
        samples: grid,
        max_rel_error: worst.0,
        worst_alpha: worst.1,
    }
}

/// The two intersection points and their reflections at one parameter.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BranchPair {
    pub alpha: f64,
    /// Intersection point on the `-Δ/Σ` branch.
    pub d1: SpherePoint,
    /// Intersection point on the `+Δ/Σ` branch.
    pub d2: SpherePoint,
    /// Reflection `-k(α) - d₁` through the midpoint of the moving anchor's
    /// antipodal pair.
    pub d1_prime: SpherePoint,
    pub d2_prime: SpherePoint,
    /// Set when the branches merge (`Δ² ≈ 0`); the four points then pair up.
    pub tangent: bool,
}

/// Closed-form intersection of the two unit-chord circles at `alpha`.
///
/// Fails with a domain error when `Δ² < -tol.solve` (the circles miss each
/// other). Within the tolerance band around zero the configuration is
/// reported tangent and `Δ` is clamped to zero.
pub fn intersection_points(alpha: f64, tol: &Tolerances) -> Result<BranchPair> {
    let d2_raw = delta_squared(alpha);
    if d2_raw < -tol.solve {
        return Err(Error::Domain(format!(
            "parameter {alpha} is inadmissible: Δ² = {d2_raw:.3e} < 0"
        )));
    }
    let tangent = d2_raw <= tol.solve;
    let d2c = d2_raw.max(0.0);
    let s2 = 4.0 - d2c;
    let big_d = 4.0 + 3.0 * d2c;
    let ratio = (d2c / s2).sqrt();
    let (sin_a, cos_a) = alpha.sin_cos();
    let d0 = delta_zero(alpha);
    let sqrt3 = 3.0f64.sqrt();
    let r = radius();

    let point = |sign: f64| -> Result<SpherePoint> {
        let x = (-2.0 * (1.0 + cos_a) + sign * ratio * (1.0 + sin_a)) / big_d;
        let y = (-(2.0 * sin_a + 1.0) - sign * ratio * (2.0 + cos_a)) / big_d;
        let z = (1.0 + sign * 3.0 * ratio * d0) / (sqrt3 * big_d);
        SpherePoint::with_tolerance(Vec3::new(x, y, z), r, tol)
    };
    let d1 = point(-1.0)?;
    let d2 = point(1.0)?;
    let k = moving_anchor(alpha);
    let reflect = |p: &SpherePoint| -> Result<SpherePoint> {
        SpherePoint::with_tolerance(-k - p.coords(), r, tol)
    };
    Ok(BranchPair {
        alpha,
        d1_prime: reflect(&d1)?,
        d2_prime: reflect(&d2)?,
        d1,
        d2,
        tangent,
    })
}

/// A branch pair together with the residuals of every defining constraint.
#[derive(Clone, Debug, Serialize)]
pub struct Sqrt3Sample {
    pub pair: BranchPair,
    pub residuals: BTreeMap<&'static str, f64>,
}

impl Sqrt3Sample {
    pub fn max_residual(&self) -> f64 {
        self.residuals.values().fold(0.0f64, |a, &b| a.max(b))
    }
}

/// Evaluates the closed forms at `alpha` and measures all constraints:
/// sphere membership, plus the unit chords to both anchors and between each
/// point and its reflection.
pub fn curve_sample(alpha: f64, tol: &Tolerances) -> Result<Sqrt3Sample> {
    let pair = intersection_points(alpha, tol)?;
    let k = moving_anchor(alpha);
    let a2 = fixed_anchor();
    let mut residuals = BTreeMap::new();
    let mut put = |name: &'static str, v: f64| {
        residuals.insert(name, v.abs());
    };
    let r = radius();
    for (tag, d, dp) in [
        ("d1", &pair.d1, &pair.d1_prime),
        ("d2", &pair.d2, &pair.d2_prime),
    ] {
        let dc = d.coords();
        let dpc = dp.coords();
        put(leak(format!("{tag}_on_sphere")), dc.norm() - r);
        put(leak(format!("{tag}_chord_moving")), dc.dot(k) - UNIT_CHORD_DOT);
        put(leak(format!("{tag}_chord_fixed")), dc.dot(a2) - UNIT_CHORD_DOT);
        put(leak(format!("{tag}_prime_on_sphere")), dpc.norm() - r);
        put(leak(format!("{tag}_prime_chord_moving")), dpc.dot(k) - UNIT_CHORD_DOT);
        put(leak(format!("{tag}_chord_prime")), dc.distance(dpc) - 1.0);
    }
    Ok(Sqrt3Sample { pair, residuals })
}

// Residual keys are built from the branch tag; the handful of distinct
// strings is interned for the life of the process.
fn leak(s: String) -> &'static str {
    use std::collections::HashSet;
    use std::sync::{Mutex, OnceLock};
    static INTERN: OnceLock<Mutex<HashSet<&'static str>>> = OnceLock::new();
    let set = INTERN.get_or_init(|| Mutex::new(HashSet::new()));
    let mut guard = set.lock().expect("intern set poisoned");
    if let Some(&existing) = guard.get(s.as_str()) {
        return existing;
    }
    let leaked: &'static str = Box::leak(s.into_boxed_str());
    guard.insert(leaked);
    leaked
}

/// The same configuration expressed as two plane sections, for cross-checks
/// against the generic circle-intersection solver.
pub fn plane_pair(alpha: f64) -> PlanePair {
    PlanePair {
        normal1: moving_anchor(alpha),
        offset1: UNIT_CHORD_DOT,
        normal2: fixed_anchor(),
        offset2: UNIT_CHORD_DOT,
        sphere_radius: radius(),
    }
}

/// Largest distance from a reflected branch point to the fixed anchor at
/// the two seam parameters, where both reflected branches must close onto
/// `a₂`.
pub fn seam_continuity(tol: &Tolerances) -> Result<f64> {
    let a2 = fixed_anchor();
    let mut worst = 0.0f64;
    for seam in [2.0 * 3.0f64.atan(), 1.5 * PI] {
        let pair = intersection_points(seam, tol)?;
        if !pair.tangent {
            return Err(Error::Internal(format!(
                "seam parameter {seam} not reported tangent"
            )));
        }
        worst = worst.max(pair.d1_prime.coords().max_abs_diff(a2));
        worst = worst.max(pair.d2_prime.coords().max_abs_diff(a2));
    }
    Ok(worst)
}

/// Output of the sign-change certificate for the return-to-unit-chord
/// equation on the first reflected branch.
#[derive(Clone, Debug, Serialize)]
pub struct IvtCertificate {
    /// Gap `‖d'₁(α) - q‖ - 1` at the left bracket end, `α = 0`.
    pub gap_at_zero: f64,
    /// Gap at the right bracket end, `α = π/2`.
    pub gap_at_half_pi: f64,
    /// Bisection root of the gap.
    pub root_alpha: f64,
    pub root_point: SpherePoint,
    pub iterations: u32,
    pub residuals: BTreeMap<&'static str, f64>,
}

impl IvtCertificate {
    pub fn max_residual(&self) -> f64 {
        self.residuals.values().fold(0.0f64, |a, &b| a.max(b))
    }
}

/// Reference point `q = d'₂(0)`.
pub fn frozen_q() -> Vec3 {
    let s3 = 3.0f64.sqrt();
    Vec3::new(
        (-5.0 - 2.0 * s3) / 26.0,
        (1.0 + 3.0 * s3) / 13.0,
        (11.0 - 6.0 * s3) / (26.0 * s3),
    )
}

fn gap(alpha: f64, q: Vec3, tol: &Tolerances) -> Result<f64> {
    let pair = intersection_points(alpha, tol)?;
    Ok(pair.d1_prime.coords().distance(q) - 1.0)
}

/// Certifies a parameter in `(0, π/2)` where `d'₁` lies at unit chord from
/// `q = d'₂(0)`.
///
/// The gap is negative at `α = 0` and positive at `α = π/2`; bisection runs
/// until the bracket width drops below `1e-15` and the final residuals are
/// reported against the solver tolerance.
pub fn ivt_certificate(tol: &Tolerances) -> Result<IvtCertificate> {
    let q = frozen_q();
    let f_lo = gap(0.0, q, tol)?;
    let f_hi = gap(FRAC_PI_2, q, tol)?;
    if !(f_lo < 0.0 && f_hi > 0.0) {
        return Err(Error::Bracket(format!(
            "gap does not change sign on [0, π/2]: f(0) = {f_lo:.6e}, f(π/2) = {f_hi:.6e}"
        )));
    }
    let mut lo = 0.0f64;
    let mut hi = FRAC_PI_2;
    let mut iterations = 0;
    while hi - lo > 1e-15 && iterations < 200 {
        let mid = 0.5 * (lo + hi);
        if gap(mid, q, tol)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let root_alpha = 0.5 * (lo + hi);
    let pair = intersection_points(root_alpha, tol)?;
    let p = pair.d1_prime;
    let mut residuals = BTreeMap::new();
    residuals.insert("on_sphere", (p.coords().norm() - radius()).abs());
    residuals.insert(
        "chord_moving_anchor",
        (p.coords().dot(moving_anchor(root_alpha)) - UNIT_CHORD_DOT).abs(),
    );
    residuals.insert("unit_chord_to_q", (p.coords().distance(q) - 1.0).abs());
    Ok(IvtCertificate {
        gap_at_zero: f_lo,
        gap_at_half_pi: f_hi,
        root_alpha,
        root_point: p,
        iterations,
        residuals,
    })
}

/// Evenly samples the admissible domain with `n` points per interval,
/// endpoints included.
pub fn sample_curve(n: usize, tol: &Tolerances) -> Result<Vec<Sqrt3Sample>> {
    if n < 2 {
        return Err(Error::Precondition("need at least two samples per interval".into()));
    }
    let mut out = Vec::with_capacity(2 * n);
    for (lo, hi) in admissible_domain() {
        for i in 0..n {
            let alpha = lo + (hi - lo) * i as f64 / (n - 1) as f64;
            // The right seam sits exactly at the domain edge; nudge the
            // endpoint inward so rounding cannot push Δ² past the tolerance.
            let alpha = alpha.min(hi - f64::EPSILON * hi.abs());
            out.push(curve_sample(alpha, tol)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{intersect_circles_with, CircleIntersection};
    use proptest::prelude::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn anchors_live_on_the_sphere() {
        assert!((fixed_anchor().norm() - radius()).abs() < 1e-15);
        for k in 0..100 {
            let alpha = 0.0628 * k as f64;
            assert!((moving_anchor(alpha).norm() - radius()).abs() < 1e-15);
        }
    }

    #[test]
    fn quadratic_at_zero_matches_hand_computation() {
        let q = quad_coefficients(0.0);
        assert!((q.a - 13.0).abs() < 1e-12);
        assert!((q.b + 2.0 / 3.0).abs() < 1e-15);
        assert!((q.c + 2.0 / 9.0).abs() < 1e-15);
        assert!((q.discriminant() - 12.0).abs() < 1e-12);
        assert!((QuadCoefficients::factored_discriminant(0.0) - 12.0).abs() < 1e-12);
    }

    #[test]
    fn quadratic_roots_are_the_solution_heights() {
        // Roots are extracted with the factored discriminant; the expanded
        // form cancels catastrophically near the seams.
        let s3 = 3.0f64.sqrt();
        for k in 0..500 {
            let alpha = 2.0 * 3.0f64.atan() * k as f64 / 499.0;
            let q = quad_coefficients(alpha);
            let disc = QuadCoefficients::factored_discriminant(alpha).max(0.0).sqrt();
            let t_lo = (-q.b - disc) / (2.0 * q.a);
            let t_hi = (-q.b + disc) / (2.0 * q.a);
            let pair = intersection_points(alpha, &tol()).unwrap();
            let mut zs = [pair.d1.coords().z / s3, pair.d2.coords().z / s3];
            zs.sort_by(f64::total_cmp);
            assert!((zs[0] - t_lo).abs() < 1e-12, "α = {alpha}");
            assert!((zs[1] - t_hi).abs() < 1e-12, "α = {alpha}");
        }
    }

    #[test]
    fn discriminant_identity_over_full_circle() {
        let check = discriminant_check(10_000);
        assert_eq!(check.samples, 10_000);
        assert!(check.max_rel_error < 1e-10, "worst at α = {}", check.worst_alpha);
    }

    #[test]
    fn admissibility_boundary_is_sharp() {
        let t = tol();
        let seam = 2.0 * 3.0f64.atan();
        assert!(is_admissible(seam, &t));
        assert!(!is_admissible(seam + 1e-3, &t));
        assert!(is_admissible(1.5 * PI, &t));
        assert!(!is_admissible(1.5 * PI - 1e-3, &t));
        assert!(delta_squared(seam).abs() < 1e-14);
        assert!(delta_squared(1.5 * PI).abs() < 1e-14);
        assert!(matches!(
            intersection_points(PI, &t),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn constraints_hold_across_the_admissible_domain() {
        for sample in sample_curve(2000, &tol()).unwrap() {
            assert!(
                sample.max_residual() < 1e-11,
                "α = {}: {:?}",
                sample.pair.alpha,
                sample.residuals
            );
        }
    }

    #[test]
    fn frozen_branch_points_at_zero() {
        let s3 = 3.0f64.sqrt();
        let pair = intersection_points(0.0, &tol()).unwrap();
        let p1 = Vec3::new((-5.0 + 2.0 * s3) / 26.0, (1.0 - 3.0 * s3) / 13.0, (11.0 + 6.0 * s3) / (26.0 * s3));
        assert!(pair.d1_prime.coords().max_abs_diff(p1) < 1e-15);
        assert!(pair.d2_prime.coords().max_abs_diff(frozen_q()) < 1e-15);
        assert!(!pair.tangent);
    }

    #[test]
    fn frozen_branch_point_at_half_pi() {
        let pair = intersection_points(FRAC_PI_2, &tol()).unwrap();
        let p2 = Vec3::new(0.4, -0.4, -3.0f64.sqrt() / 15.0);
        assert!(pair.d1_prime.coords().max_abs_diff(p2) < 1e-15);
    }

    #[test]
    fn seams_close_onto_the_fixed_anchor() {
        assert!(seam_continuity(&tol()).unwrap() < 1e-11);
    }

    #[test]
    fn coincident_heights_do_not_mean_tangency() {
        // At tan α = 1/2 the two solution heights agree but the points stay
        // apart; the tangent flag must not fire there.
        let alpha = 0.5f64.atan();
        assert!(delta_zero(alpha).abs() < 1e-15);
        let pair = intersection_points(alpha, &tol()).unwrap();
        assert!(!pair.tangent);
        assert!((pair.d1.coords().z - pair.d2.coords().z).abs() < 1e-14);
        assert!(pair.d1.coords().distance(pair.d2.coords()) > 0.1);
    }

    #[test]
    fn closed_forms_match_generic_intersector() {
        let t = tol();
        for k in 0..300 {
            let alpha = 2.0 * 3.0f64.atan() * (k as f64 + 0.5) / 300.5;
            let pair = intersection_points(alpha, &t).unwrap();
            match intersect_circles_with(&plane_pair(alpha), &t).unwrap() {
                CircleIntersection::Pair { first, second } => {
                    let closed = [pair.d1.coords(), pair.d2.coords()];
                    let generic = [first.coords(), second.coords()];
                    let direct = closed[0].max_abs_diff(generic[0]).max(closed[1].max_abs_diff(generic[1]));
                    let swapped = closed[0].max_abs_diff(generic[1]).max(closed[1].max_abs_diff(generic[0]));
                    assert!(direct.min(swapped) < 1e-10, "α = {alpha}");
                }
                other => panic!("expected transversal pair at α = {alpha}, got {other:?}"),
            }
        }
    }

    #[test]
    fn ivt_bracket_values_match_closed_forms() {
        let cert = ivt_certificate(&tol()).unwrap();
        let s3 = 3.0f64.sqrt();
        assert!((cert.gap_at_zero - ((12.0f64 / 13.0).sqrt() - 1.0)).abs() < 1e-12);
        assert!((cert.gap_at_half_pi - (((61.0 + 14.0 * s3) / 65.0).sqrt() - 1.0)).abs() < 1e-12);
        assert!(cert.gap_at_zero < -0.039);
        assert!(cert.gap_at_half_pi > 0.145);
    }

    #[test]
    fn ivt_root_satisfies_all_constraints() {
        let cert = ivt_certificate(&tol()).unwrap();
        assert!(cert.root_alpha > 0.0 && cert.root_alpha < FRAC_PI_2);
        assert!(cert.max_residual() < 1e-10, "{:?}", cert.residuals);
        assert!(cert.residuals["unit_chord_to_q"] < 1e-12);
    }

    #[test]
    fn ivt_root_is_stable_against_an_independent_scan() {
        // Coarse scan oracle for the sign change.
        let q = frozen_q();
        let t = tol();
        let n = 100_000;
        let mut crossing = None;
        let mut prev = gap(0.0, q, &t).unwrap();
        for k in 1..=n {
            let alpha = FRAC_PI_2 * k as f64 / n as f64;
            let g = gap(alpha, q, &t).unwrap();
            if prev < 0.0 && g >= 0.0 {
                crossing = Some(alpha);
                break;
            }
            prev = g;
        }
        let scan = crossing.expect("scan must find the sign change");
        let cert = ivt_certificate(&t).unwrap();
        assert!((scan - cert.root_alpha).abs() < 2.0 * FRAC_PI_2 / n as f64);
    }

    #[test]
    fn sample_curve_respects_interval_endpoints() {
        let samples = sample_curve(50, &tol()).unwrap();
        assert_eq!(samples.len(), 100);
        assert!(samples[0].pair.alpha == 0.0);
        assert!(samples[49].pair.tangent);
        assert!(samples[50].pair.tangent);
    }

    proptest! {
        #[test]
        fn reflection_midpoint_is_minus_half_k(i in 0usize..2000) {
            let (lo, hi) = admissible_domain()[i % 2];
            let frac = ((i / 2) as f64 + 0.5) / 1000.0;
            let alpha = lo + (hi - lo) * frac;
            let pair = intersection_points(alpha, &tol()).unwrap();
            let k = moving_anchor(alpha);
            let mid1 = (pair.d1.coords() + pair.d1_prime.coords()) * 0.5;
            let mid2 = (pair.d2.coords() + pair.d2_prime.coords()) * 0.5;
            prop_assert!(mid1.max_abs_diff(k * -0.5) < 1e-12);
            prop_assert!(mid2.max_abs_diff(k * -0.5) < 1e-12);
        }

        #[test]
        fn inadmissible_parameters_are_rejected(frac in 0.0001..0.9999f64) {
            let lo = 2.0 * 3.0f64.atan();
            let hi = 1.5 * PI;
            let alpha = lo + (hi - lo) * frac;
            // Stay clear of the seams where the tolerance band applies.
            prop_assume!(delta_squared(alpha) < -1e-9);
            prop_assert!(intersection_points(alpha, &tol()).is_err());
        }
    }
}
