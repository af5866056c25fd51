//! Diamond folds and arc growth along a great circle.
//!
//! Setup: points at mutual chord distance `a` on a sphere `S(r)` can be
//! folded into a rhombus of two triangles sharing an edge ("diamond"). The
//! fold leaves the distance `b` between the two free tips adjustable, up to
//! the maximum reached at the flat configuration. If the sphere is colored
//! with no red pair at distance `a`, a red point `x` forces the whole
//! distance circle at chord `b` around `x` to carry red points in abundance;
//! intersecting that circle with a fixed great circle `D` through `x` turns
//! the constraint into interval arithmetic on `D`.
//!
//! Two fold families are supported:
//!
//! * [`DiamondVariant::Equilateral`]: all four rhombus sides and the shared
//!   edge have length `a`; works on any sphere with `a/r ≤ √3`.
//! * [`DiamondVariant::Asymmetric`]: two sides of length `a` and two of
//!   length 1, specific to the sphere of radius `1/√2` and `a ≤ √(3/2)`.
//!
//! [`diamond_params`] reduces a fold to the quantities that matter downstream
//! (the tip distance `b` with its circle radius `r_b` and cut angle `gamma`)
//! and classifies
//! the outcome. [`arc_step`] grows an arc by one fold application, and
//! [`simulate_propagation`] replays the growth numerically from scratch so
//! the closed forms can be checked against plain root finding.

use crate::error::{Error, Result};
use serde::Serialize;
use std::f64::consts::{PI, SQRT_2};

/// Which diamond fold is being applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiamondVariant {
    Equilateral,
    Asymmetric,
}

/// Classification of a fold configuration.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    /// The cut angle already swallows the forbidden angle: one application
    /// of the fold contradicts a red pair at distance `a`.
    ImmediateContradiction,
    /// The arc grows linearly and reaches the forbidden angle after `m`
    /// applications.
    GrowthContradiction { m: u32 },
    /// The tip circle collapses (or nearly so); the fold propagates nothing.
    Degenerate { reason: String },
}

/// Diamond-fold parameters for one `(a, r)` pair.
#[derive(Clone, Debug, Serialize)]
pub struct DiamondReport {
    pub a: f64,
    pub r: f64,
    /// Aspect ratio `a/r`.
    pub t: f64,
    pub variant: DiamondVariant,
    /// Chord distance between the two fold tips at the flat configuration.
    pub b: f64,
    /// Radius of the distance circle at chord `b`.
    pub r_b: f64,
    /// Central angle of the chord `a`.
    pub theta: f64,
    /// Central angle cut out of a great circle through the base point by the
    /// tip circle; `None` when degenerate.
    pub gamma: Option<f64>,
    /// Fold applications needed to cover `theta`, for growth verdicts.
    pub m: Option<u32>,
    pub degenerate: bool,
    /// Set when `r_b` is within `1e-9` of `r`, where the cut angle formula
    /// approaches its `γ = π` limit.
    pub near_degenerate: bool,
    pub verdict: Verdict,
}

/// Relative tip-circle radius below which the fold is reported degenerate.
///
/// Wide enough that inputs specified to eight decimal places (for example
/// `r = 0.70710678` standing for `1/√2`) land in the degenerate bucket
/// rather than producing a cut angle of `1e-8`.
const DEGENERATE_REL_RADIUS: f64 = 1e-6;

/// Computes tip distance, circle radius and cut angle for one fold.
pub fn diamond_params(a: f64, r: f64, variant: DiamondVariant) -> Result<DiamondReport> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("sphere radius must be positive, got {r}")));
    }
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Domain(format!("side length must be positive, got {a}")));
    }
    let t = a / r;
    let b = match variant {
        DiamondVariant::Equilateral => {
            if t > 3f64.sqrt() * (1.0 + 1e-12) {
                return Err(Error::Domain(format!(
                    "equilateral fold needs a/r ≤ √3, got {t}"
                )));
            }
            2.0 * a * (((3.0 - t * t) / (4.0 - t * t)).max(0.0)).sqrt()
        }
        DiamondVariant::Asymmetric => {
            if (r * SQRT_2 - 1.0).abs() > 1e-8 {
                return Err(Error::Domain(format!(
                    "asymmetric fold is defined on the sphere of radius 1/√2, got r = {r}"
                )));
            }
            if a > 1.5f64.sqrt() * (1.0 + 1e-12) {
                return Err(Error::Domain(format!(
                    "asymmetric fold needs a ≤ √(3/2), got {a}"
                )));
            }
            (1.0 + a * (((3.0 - 2.0 * a * a) / (2.0 - a * a)).max(0.0)).sqrt()).sqrt()
        }
    };
    let r_b = (b * b * (1.0 - b * b / (4.0 * r * r)).max(0.0)).sqrt();
    let theta = 2.0 * (t / 2.0).clamp(0.0, 1.0).asin();

    let mut report = DiamondReport {
        a,
        r,
        t,
        variant,
        b,
        r_b,
        theta,
        gamma: None,
        m: None,
        degenerate: false,
        near_degenerate: false,
        verdict: Verdict::ImmediateContradiction,
    };

    if r_b <= DEGENERATE_REL_RADIUS * r {
        let reason = match variant {
            DiamondVariant::Equilateral if b <= DEGENERATE_REL_RADIUS * r => {
                format!("tip distance b collapses to 0 at a/r = √3 (got a/r = {t})")
            }
            DiamondVariant::Equilateral => {
                format!("tip circle collapses to the antipode at a/r = √2 (got a/r = {t})")
            }
            DiamondVariant::Asymmetric => {
                format!("tip circle collapses at a = 1 (got a = {a})")
            }
        };
        report.degenerate = true;
        report.verdict = Verdict::Degenerate { reason };
        return Ok(report);
    }

    let h = ((r - r_b) * (r + r_b)).max(0.0).sqrt();
    report.near_degenerate = r - r_b < 1e-9;
    // atan2 handles h → 0 smoothly: the cut angle saturates at π when the
    // tip circle is a great circle.
    let gamma = 2.0 * r_b.atan2(h);
    report.gamma = Some(gamma);
    report.verdict = if 2.0 * gamma >= theta {
        Verdict::ImmediateContradiction
    } else {
        let m = (theta / gamma).ceil() as u32;
        report.m = Some(m);
        Verdict::GrowthContradiction { m }
    };
    Ok(report)
}

/// An arc of a circle, stored as unwrapped angles with `end ≥ start`.
///
/// Angles live on the real line; reduce mod 2π only when comparing against
/// positions on the circle. This keeps repeated growth steps free of
/// branch-cut bookkeeping.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ArcInterval {
    pub start: f64,
    pub end: f64,
}

impl ArcInterval {
    pub fn new(start: f64, end: f64) -> Result<Self> {
        if !(end >= start) {
            return Err(Error::Domain(format!("arc end {end} precedes start {start}")));
        }
        if end - start > 2.0 * PI * (1.0 + 1e-12) {
            return Err(Error::Domain(format!(
                "arc length {} exceeds a full turn",
                end - start
            )));
        }
        Ok(ArcInterval { start, end })
    }

    pub fn length(&self) -> f64 {
        self.end - self.start
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.start + self.end)
    }
}

/// Outcome of one growth step.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ArcStep {
    Grown { interval: ArcInterval },
    /// The next interval would wrap past a full turn; the circle is covered.
    Saturated,
}

/// Applies one fold to an arc of red positions on the great circle.
///
/// A red point at angle `s` forces red points at the two positions where its
/// tip circle cuts the great circle. Taking the union over `s` in the
/// current arc `[u, v]` of length at least `gamma` yields a single arc
/// again: `[u - γ/2, v + γ/2]` when `b < √2·r` (cuts near the point) and
/// `[u + π - γ/2, v + π + γ/2]` when `b > √2·r` (cuts near the antipode).
pub fn arc_step(current: &ArcInterval, report: &DiamondReport) -> Result<ArcStep> {
    let gamma = match (report.degenerate, report.gamma) {
        (false, Some(g)) => g,
        _ => {
            return Err(Error::Degenerate(
                "arc growth is undefined for a degenerate fold".into(),
            ))
        }
    };
    if current.length() + gamma > 2.0 * PI {
        return Ok(ArcStep::Saturated);
    }
    let interval = if report.b < SQRT_2 * report.r {
        ArcInterval::new(current.start - gamma / 2.0, current.end + gamma / 2.0)?
    } else {
        ArcInterval::new(
            current.start + PI - gamma / 2.0,
            current.end + PI + gamma / 2.0,
        )?
    };
    Ok(ArcStep::Grown { interval })
}

/// One growth step of the simulation, with the analytic prediction and the
/// deviation between the two, endpoint by endpoint.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SimStep {
    pub analytic: ArcInterval,
    pub simulated: ArcInterval,
    pub start_deviation: f64,
    pub end_deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropagationSim {
    pub steps: Vec<SimStep>,
    pub max_endpoint_deviation: f64,
    /// Cut angle from the closed form.
    pub gamma_analytic: f64,
    /// Cut angle measured by root-finding the chord equation on the circle.
    pub gamma_measured: f64,
    pub saturated: bool,
}

/// Half-angle at chord `b` on the great circle, found by bisecting
/// `‖p(φ) - p(0)‖ = b` instead of inverting it analytically.
fn measure_half_angle(b: f64, r: f64) -> Result<f64> {
    let f = |phi: f64| 2.0 * r * (phi / 2.0).sin() - b;
    if f(PI) < 0.0 {
        return Err(Error::Bracket(format!("chord {b} exceeds the diameter {}", 2.0 * r)));
    }
    let (mut lo, mut hi) = (0.0f64, PI);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Roots of `A·cos φ + B·sin φ = C` in `[center - π, center + π)`, by sign
/// scan and bisection.
fn circle_equation_roots(a: f64, b: f64, c: f64, center: f64) -> Vec<f64> {
    const CELLS: usize = 256;
    let f = |phi: f64| a * phi.cos() + b * phi.sin() - c;
    let lo = center - PI;
    let width = 2.0 * PI / CELLS as f64;
    let mut roots = Vec::new();
    let mut prev = f(lo);
    for i in 0..CELLS {
        let x1 = lo + (i + 1) as f64 * width;
        let cur = f(x1);
        if prev == 0.0 {
            roots.push(lo + i as f64 * width);
        } else if prev * cur < 0.0 {
            let (mut xa, mut xb) = (lo + i as f64 * width, x1);
            let (mut fa, _) = (prev, cur);
            for _ in 0..80 {
                let mid = 0.5 * (xa + xb);
                let fm = f(mid);
                if fa * fm <= 0.0 {
                    xb = mid;
                } else {
                    xa = mid;
                    fa = fm;
                }
                if xb - xa < 1e-14 {
                    break;
                }
            }
            roots.push(0.5 * (xa + xb));
        }
        prev = cur;
    }
    roots
}

/// Replays the arc growth numerically and returns per-step deviations from
/// the [`arc_step`] closed form.
///
/// The first interval comes from solving the tip-circle/great-circle chord
/// equation on a `grid`-point parameter sweep of the tip circle; subsequent
/// steps reuse the numerically measured half-angle. Grid work is data
/// parallel under the `parallel` feature with order-independent reductions,
/// so results do not depend on the worker count.
pub fn simulate_propagation(report: &DiamondReport, grid: usize) -> Result<PropagationSim> {
    if report.degenerate {
        return Err(Error::Degenerate("cannot simulate a degenerate fold".into()));
    }
    if grid < 8 {
        return Err(Error::Domain(format!("simulation grid too coarse: {grid}")));
    }
    let gamma = report.gamma.expect("non-degenerate report carries gamma");
    let (r, b, r_b) = (report.r, report.b, report.r_b);
    let h = ((r - r_b) * (r + r_b)).max(0.0).sqrt();
    let tips_near_antipode = b > SQRT_2 * r;
    // Tip circle of the base point p(0) = (r, 0, 0): center at offset
    // ±h along x, radius r_b; the great circle is parametrized by φ in the
    // xz-plane. Membership of p(φ) in the tip circle reads
    //   r_b·cos t·cos φ ∓ h·sin φ = r - b²/(2r)
    // with t the tip-circle parameter.
    let rhs = r - b * b / (2.0 * r);
    let center = if tips_near_antipode { PI / 2.0 } else { 3.0 * PI / 2.0 };

    let offsets = |k: usize| -> (f64, f64) {
        let t = 2.0 * PI * k as f64 / grid as f64;
        let a_coef = r_b * t.cos();
        let mut lo = f64::MAX;
        let mut hi = f64::MIN;
        for root in circle_equation_roots(a_coef, -h, rhs, center) {
            let mut off = root - center;
            if off <= -PI {
                off += 2.0 * PI;
            } else if off > PI {
                off -= 2.0 * PI;
            }
            lo = lo.min(off);
            hi = hi.max(off);
        }
        (lo, hi)
    };

    let reduce = |acc: (f64, f64), item: (f64, f64)| (acc.0.min(item.0), acc.1.max(item.1));

    #[cfg(feature = "parallel")]
    let (lo, hi) = {
        use rayon::prelude::*;
        (0..grid)
            .into_par_iter()
            .map(offsets)
            .reduce(|| (f64::MAX, f64::MIN), reduce)
    };
    #[cfg(not(feature = "parallel"))]
    let (lo, hi) = (0..grid).map(offsets).fold((f64::MAX, f64::MIN), reduce);

    if lo > hi {
        return Err(Error::Bracket("tip circle never meets the great circle".into()));
    }

    let delta_measured = measure_half_angle(b, r)?;
    let gamma_measured = if tips_near_antipode {
        2.0 * PI - 2.0 * delta_measured
    } else {
        2.0 * delta_measured
    };

    let analytic_first = ArcInterval::new(center - gamma, center + gamma)?;
    let mut sim = ArcInterval::new(center + lo, center + hi)?;
    let mut analytic = analytic_first;
    let mut steps = vec![SimStep {
        analytic,
        simulated: sim,
        start_deviation: (sim.start - analytic.start).abs(),
        end_deviation: (sim.end - analytic.end).abs(),
    }];
    let mut saturated = false;

    let target_steps = match report.verdict {
        Verdict::GrowthContradiction { m } => m.saturating_sub(2) as usize,
        _ => 0,
    };
    for _ in 0..target_steps {
        match arc_step(&analytic, report)? {
            ArcStep::Grown { interval } => analytic = interval,
            ArcStep::Saturated => {
                saturated = true;
                break;
            }
        }
        if sim.length() + gamma_measured > 2.0 * PI {
            saturated = true;
            break;
        }
        sim = if tips_near_antipode {
            // The two cut positions sit at ±δ from the antipode of the
            // source; mod 2π the swept unions merge into one arc.
            ArcInterval::new(
                sim.start + PI - (PI - delta_measured),
                sim.end + PI + (PI - delta_measured),
            )?
        } else {
            ArcInterval::new(sim.start - delta_measured, sim.end + delta_measured)?
        };
        steps.push(SimStep {
            analytic,
            simulated: sim,
            start_deviation: (sim.start - analytic.start).abs(),
            end_deviation: (sim.end - analytic.end).abs(),
        });
    }

    let max_endpoint_deviation = steps
        .iter()
        .map(|s| s.start_deviation.max(s.end_deviation))
        .fold(0.0f64, f64::max);

    Ok(PropagationSim {
        steps,
        max_endpoint_deviation,
        gamma_analytic: gamma,
        gamma_measured,
        saturated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{chord_circle, SphereCircle};
    use crate::vec::Vec3;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn unit_triangle_on_unit_sphere_contradicts_immediately() {
        let rep = diamond_params(1.0, 1.0, DiamondVariant::Equilateral).unwrap();
        // Flat tip distance 2√(2/3) and circle radius 2√2/3.
        assert!((rep.b - 2.0 * (2.0f64 / 3.0).sqrt()).abs() < 1e-14);
        assert!((rep.r_b - 2.0 * 2f64.sqrt() / 3.0).abs() < 1e-14);
        assert!((rep.theta - PI / 3.0).abs() < 1e-14);
        let gamma = rep.gamma.unwrap();
        assert!((gamma - 2.0 * (2.0 * 2f64.sqrt()).atan()).abs() < 1e-13);
        assert!((gamma - 2.46192).abs() < 1e-5);
        assert_eq!(rep.verdict, Verdict::ImmediateContradiction);
    }

    /// Independent check of the cut angle: intersect the tip circle with a
    /// great circle through the base point by dense scan + bisection on the
    /// chord condition, and measure the cut central angle directly.
    #[test]
    fn cut_angle_matches_geometric_scan() {
        for (a, r) in [(1.0, 1.0), (0.8, 1.0), (0.5, 0.7), (1.3, 1.0)] {
            let rep = diamond_params(a, r, DiamondVariant::Equilateral).unwrap();
            let x = crate::geom::SpherePoint::new(Vec3::new(r, 0.0, 0.0), r).unwrap();
            let tip = chord_circle(&x, rep.b).unwrap();
            let great = SphereCircle::from_plane(Vec3::new(0.0, 1.0, 0.0), 0.0, r).unwrap();
            // Angles of great-circle points whose chord to the tip circle's
            // plane vanishes: scan the great circle against the tip plane.
            let n = tip.normal();
            let f = |phi: f64| great.point_at(phi).coords().dot(n) - tip.offset();
            let mut roots = Vec::new();
            let cells = 4096;
            let mut prev = f(0.0);
            for i in 0..cells {
                let x1 = 2.0 * PI * (i + 1) as f64 / cells as f64;
                let cur = f(x1);
                if prev * cur < 0.0 {
                    let (mut lo, mut hi) = (2.0 * PI * i as f64 / cells as f64, x1);
                    let mut flo = prev;
                    for _ in 0..80 {
                        let mid = 0.5 * (lo + hi);
                        let fm = f(mid);
                        if flo * fm <= 0.0 {
                            hi = mid;
                        } else {
                            lo = mid;
                            flo = fm;
                        }
                    }
                    roots.push(0.5 * (lo + hi));
                }
                prev = cur;
            }
            assert_eq!(roots.len(), 2, "a={a} r={r}");
            let spread = (roots[1] - roots[0]).abs();
            let cut = spread.min(2.0 * PI - spread);
            let gamma = rep.gamma.unwrap();
            assert!(
                (cut - gamma).abs() < 1e-6,
                "a={a} r={r}: scan {cut} vs closed form {gamma}"
            );
        }
    }

    #[test]
    fn asymmetric_fold_at_low_side_length() {
        let rep = diamond_params(0.9, FRAC_1_SQRT_2, DiamondVariant::Asymmetric).unwrap();
        // Closed forms specific to this fold.
        let a: f64 = 0.9;
        let b_expect =
            (1.0 + a * ((3.0 - 2.0 * a * a) / (2.0 - a * a)).sqrt()).sqrt();
        let rb_expect = (1.0 - a * a).abs() / (2.0 - a * a).sqrt();
        assert!((rep.b - b_expect).abs() < 1e-14);
        assert!((rep.r_b - rb_expect).abs() < 1e-12);
        assert!(!rep.degenerate);
    }

    #[test]
    fn asymmetric_fold_rejects_wrong_sphere() {
        assert!(diamond_params(0.9, 1.0, DiamondVariant::Asymmetric).is_err());
    }

    #[test]
    fn degenerate_aspect_ratios_are_flagged() {
        let rep = diamond_params(2f64.sqrt(), 1.0, DiamondVariant::Equilateral).unwrap();
        assert!(rep.degenerate);
        assert!(matches!(rep.verdict, Verdict::Degenerate { .. }));
        let rep = diamond_params(3f64.sqrt(), 1.0, DiamondVariant::Equilateral).unwrap();
        assert!(rep.degenerate);
        let rep = diamond_params(1.0, FRAC_1_SQRT_2, DiamondVariant::Asymmetric).unwrap();
        assert!(rep.degenerate);
        // Eight-digit approximations of 1/√2 land in the same bucket.
        let rep = diamond_params(1.0, 0.70710678, DiamondVariant::Equilateral).unwrap();
        assert!(rep.degenerate);
    }

    #[test]
    fn nearby_ratios_are_not_flagged() {
        for t in [1.40, 1.42, 1.72, 1.7305] {
            let rep = diamond_params(t, 1.0, DiamondVariant::Equilateral).unwrap();
            assert!(!rep.degenerate, "t = {t} wrongly degenerate");
            assert!(rep.gamma.is_some());
        }
    }

    #[test]
    fn arc_growth_by_one_cut_angle_per_step() {
        let rep = diamond_params(1.73, 1.0, DiamondVariant::Equilateral).unwrap();
        let gamma = rep.gamma.unwrap();
        let c2 = ArcInterval::new(-gamma, gamma).unwrap();
        match arc_step(&c2, &rep).unwrap() {
            ArcStep::Grown { interval } => {
                assert!((interval.length() - 3.0 * gamma).abs() < 1e-13);
            }
            ArcStep::Saturated => panic!("unexpected saturation"),
        }
    }

    #[test]
    fn arc_step_saturates_past_full_turn() {
        let rep = diamond_params(1.0, 1.0, DiamondVariant::Equilateral).unwrap();
        let gamma = rep.gamma.unwrap();
        let wide = ArcInterval::new(0.0, 2.0 * PI - gamma / 2.0).unwrap();
        assert_eq!(arc_step(&wide, &rep).unwrap(), ArcStep::Saturated);
    }

    #[test]
    fn arc_step_refuses_degenerate_reports() {
        let rep = diamond_params(2f64.sqrt(), 1.0, DiamondVariant::Equilateral).unwrap();
        let arc = ArcInterval::new(0.0, 1.0).unwrap();
        assert!(matches!(arc_step(&arc, &rep), Err(Error::Degenerate(_))));
    }

    #[test]
    fn near_tip_and_near_antipode_cases_shift_differently() {
        // b < √2·r: the new arc stays centered where it was.
        let low = diamond_params(0.5, 1.0, DiamondVariant::Equilateral).unwrap();
        assert!(low.b < SQRT_2 * low.r);
        // b > √2·r: the new arc jumps to the antipodal region.
        let high = diamond_params(1.2, 1.0, DiamondVariant::Equilateral).unwrap();
        assert!(high.b > SQRT_2 * high.r);
        let arc = ArcInterval::new(1.0, 1.0 + low.gamma.unwrap()).unwrap();
        if let ArcStep::Grown { interval } = arc_step(&arc, &low).unwrap() {
            assert!((interval.midpoint() - arc.midpoint()).abs() < 1e-13);
        }
        let arc = ArcInterval::new(1.0, 1.0 + high.gamma.unwrap()).unwrap();
        if let ArcStep::Grown { interval } = arc_step(&arc, &high).unwrap() {
            assert!((interval.midpoint() - (arc.midpoint() + PI)).abs() < 1e-13);
        }
    }

    #[test]
    fn simulation_tracks_analytic_growth() {
        let rep = diamond_params(1.73, 1.0, DiamondVariant::Equilateral).unwrap();
        assert!(matches!(rep.verdict, Verdict::GrowthContradiction { .. }));
        let sim = simulate_propagation(&rep, 10_000).unwrap();
        assert!((sim.gamma_measured - sim.gamma_analytic).abs() < 1e-6);
        assert!(sim.max_endpoint_deviation < 2.0 * PI / 10_000.0, "{}", sim.max_endpoint_deviation);
        assert_eq!(sim.steps.len(), rep.m.unwrap() as usize - 1);
        // Linear growth: each step adds one cut angle.
        for (k, step) in sim.steps.iter().enumerate() {
            let expect = (k as f64 + 2.0) * sim.gamma_analytic;
            assert!((step.analytic.length() - expect).abs() < 1e-12);
            assert!((step.simulated.length() - expect).abs() < 2.0 * PI / 10_000.0);
        }
    }

    #[test]
    fn simulation_first_interval_matches_closed_form_both_cases() {
        for a in [0.6, 0.8, 1.2, 1.73, 1.05] {
            let rep = diamond_params(a, 1.0, DiamondVariant::Equilateral).unwrap();
            let sim = simulate_propagation(&rep, 4096).unwrap();
            let first = &sim.steps[0];
            assert!(
                first.start_deviation < 2.0 * PI / 4096.0
                    && first.end_deviation < 2.0 * PI / 4096.0,
                "a={a}: deviations {} {}",
                first.start_deviation,
                first.end_deviation
            );
        }
    }

    #[test]
    fn tip_height_identity_across_the_range() {
        // |r - b²/(2r)| = √(r² - r_b²) for every non-degenerate ratio.
        for i in 1..1000 {
            let t = 1.73 * i as f64 / 1000.0;
            let rep = diamond_params(t, 1.0, DiamondVariant::Equilateral).unwrap();
            if rep.degenerate {
                continue;
            }
            let lhs = (rep.r - rep.b * rep.b / (2.0 * rep.r)).abs();
            let rhs = ((rep.r - rep.r_b) * (rep.r + rep.r_b)).max(0.0).sqrt();
            assert!((lhs - rhs).abs() < 1e-10, "t={t}: {lhs} vs {rhs}");
        }
    }

    proptest! {
        #[test]
        fn reports_scale_with_the_sphere(
            t in 0.1..1.7f64,
            r in 0.3..2.0f64,
            lambda in 0.5..2.0f64,
        ) {
            let base = diamond_params(t * r, r, DiamondVariant::Equilateral).unwrap();
            let scaled = diamond_params(t * r * lambda, r * lambda, DiamondVariant::Equilateral).unwrap();
            prop_assert_eq!(base.degenerate, scaled.degenerate);
            if base.degenerate {
                return Ok(());
            }
            prop_assert!((scaled.b / base.b - lambda).abs() < 1e-9);
            prop_assert!((scaled.r_b / base.r_b - lambda).abs() < 1e-6);
            let (g1, g2) = (base.gamma.unwrap(), scaled.gamma.unwrap());
            prop_assert!((g1 - g2).abs() < 1e-9);
            prop_assert!((base.theta - scaled.theta).abs() < 1e-12);
        }

        #[test]
        fn tip_distance_never_exceeds_the_diameter(t in 0.001..1.7320f64, r in 0.2..3.0f64) {
            let rep = diamond_params(t * r, r, DiamondVariant::Equilateral).unwrap();
            prop_assert!(rep.b <= 2.0 * r * (1.0 + 1e-12));
        }
    }
}
