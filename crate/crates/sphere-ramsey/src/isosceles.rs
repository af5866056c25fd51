//! Fan and arc-chain constructions on `S(1/√2)` for a leg length `a`
//! strictly between `√(3/2)` and `√2`, together with the path that connects
//! a distinguished point to its own rotation.
//!
//! A chord of length `a` spans the central angle `θ = 2·asin(a/√2)`, which
//! for this range of `a` lies in `(2π/3, π)`; its complement `β = π - θ`
//! is small. Everything below hangs off one frame:
//!
//! * the pole `(0, 0, 1/√2)` with the start-of-march point `d` at chord `a`
//!   from it in the `xz` plane, and a distinguished point orthogonal to `d`
//!   (two variants: one lying in the `xz` plane, one tilted out of it with
//!   a negative `y` component; the two variants sit at chord `a` from each
//!   other);
//! * the fan: `n = ⌈π/β⌉` copies of the distinguished point rotated about
//!   `d` in steps of `2β`, chosen so the fan's chord-`a` circles chain all
//!   the way around.
//!
//! [`separation_system`] materializes the chain: on the great circle
//! orthogonal to `d`, each fan point cuts out the arc of points at central
//! angle at least `θ` from it, and consecutive arcs share exactly one
//! endpoint. At a shared endpoint the two chord-`a` circles meet
//! tangentially.
//! `n·2β ≥ 2π` makes the arcs cover the whole circle, so crossing from one
//! arc's midpoint to the next forces a crossing of a chord-`a` circle.
//!
//! [`red_path`] builds the connecting path: a second point `h` marches away
//! from `d` along the circle of points at chord `a` from the pole, for as
//! long as the great circle orthogonal to `h` still meets the chord-`a`
//! circle around the distinguished point. The two intersection points,
//! rotated by `θ` inside their great circle, sweep out two path branches
//! that join where the intersection degenerates to tangency. The resulting
//! polyline connects the distinguished point to its own `2β` rotation while
//! every vertex keeps an exact chord-`a` partner, and the report counts how
//! often it crosses the fan's chord-`a` circles.

use crate::error::{Error, Result};
use crate::geom::{chord_circle, intersect_circles_with, CircleIntersection, PlanePair, SphereCircle, SpherePoint};
use crate::tol::Tolerances;
use crate::vec::{Rotation, Vec3};
use serde::Serialize;
use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

/// Sphere radius for this module.
pub const RADIUS: f64 = FRAC_1_SQRT_2;

/// Smallest admissible leg length, `√(3/2)`.
pub fn min_leg() -> f64 {
    1.5f64.sqrt()
}

/// Derived angular data for a leg length.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Params {
    pub a: f64,
    /// Central angle spanned by a chord of length `a`.
    pub theta: f64,
    /// Complement `π - θ`.
    pub beta: f64,
    /// Fan size `⌈π/β⌉`, the least count whose `2β` steps wrap the circle.
    pub n: usize,
}

pub fn params(a: f64) -> Result<Params> {
    if !(a > min_leg() && a < SQRT_2) {
        return Err(Error::Domain(format!(
            "leg length must lie strictly between √(3/2) ≈ {:.6} and √2 ≈ {:.6}, got {a}",
            min_leg(),
            SQRT_2
        )));
    }
    let theta = 2.0 * (a / SQRT_2).asin();
    let beta = PI - theta;
    let n = (PI / beta).ceil() as usize;
    Ok(Params { a, theta, beta, n })
}

/// Choice of the distinguished point orthogonal to the start-of-march
/// point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StartVariant {
    /// `(cos θ, 0, -sin θ)/√2`, inside the `xz` plane.
    InPlane,
    /// `(cos²θ, -sin θ, -sin θ cos θ)/√2`, tilted below the `xz` plane;
    /// at chord `a` from the in-plane variant.
    Tilted,
}

/// Frame shared by every construction at one leg length.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Frame {
    pub params: Params,
    pub variant: StartVariant,
    pub pole: Vec3,
    /// Start of the march, at chord `a` from the pole in the `xz` plane.
    pub d_start: Vec3,
    /// The distinguished point for the chosen variant.
    pub start: Vec3,
}

pub fn frame(a: f64, variant: StartVariant) -> Result<Frame> {
    let p = params(a)?;
    let s = a * (2.0 - a * a).sqrt();
    let c = 1.0 - a * a;
    let start = match variant {
        StartVariant::InPlane => Vec3::new(c, 0.0, -s),
        StartVariant::Tilted => Vec3::new(c * c, -s, -s * c),
    } * RADIUS;
    Ok(Frame {
        params: p,
        variant,
        pole: Vec3::new(0.0, 0.0, RADIUS),
        d_start: Vec3::new(s, 0.0, c) * RADIUS,
        start,
    })
}

impl Frame {
    /// `sin θ`, in the closed form `a·√(2 - a²)`.
    pub fn sin_theta(&self) -> f64 {
        self.params.a * (2.0 - self.params.a * self.params.a).sqrt()
    }

    /// `cos θ = 1 - a²`, negative throughout the admissible range.
    pub fn cos_theta(&self) -> f64 {
        1.0 - self.params.a * self.params.a
    }

    /// Circle along which the second point marches: all points at chord `a`
    /// from the pole.
    pub fn march_circle(&self) -> Result<SphereCircle> {
        let pole = SpherePoint::new(self.pole, RADIUS)?;
        chord_circle(&pole, self.params.a)
    }
}

/// Point of the march circle at angle `psi` (the start-of-march point sits
/// at `psi = 0`).
pub fn march_point(frame: &Frame, psi: f64) -> Vec3 {
    let s = frame.sin_theta();
    let c = frame.cos_theta();
    Vec3::new(s * psi.cos(), s * psi.sin(), c) * RADIUS
}

/// Signed intersection margin at march angle `psi`: negative while the
/// great circle orthogonal to the marching point still meets the chord-`a`
/// circle around the distinguished point, zero at tangency, positive once
/// they miss.
pub fn intersect_margin(frame: &Frame, psi: f64) -> f64 {
    let h = march_point(frame, psi);
    (2.0 * h.dot(frame.start)).abs() - frame.sin_theta()
}

/// Where the margin peaks, with its closed-form peak value.
///
/// For the in-plane variant the peak sits at `psi = π` with value
/// `sin θ·(2|cos θ| - 1)`; for the tilted variant at
/// `psi = atan2(sin θ, -cos²θ)` with value
/// `sin θ·(√(1 - sin²θ cos²θ) + cos²θ - 1)`. Both are strictly positive on
/// the admissible range, which is what lets the march terminate.
pub fn peak_margin(frame: &Frame) -> (f64, f64) {
    let s = frame.sin_theta();
    let c = frame.cos_theta();
    match frame.variant {
        StartVariant::InPlane => (PI, s * (2.0 * c.abs() - 1.0)),
        StartVariant::Tilted => {
            let w = (1.0 - s * s * c * c).sqrt();
            (s.atan2(-c * c), s * (w + c * c - 1.0))
        }
    }
}

/// The fan of rotated copies of the distinguished point.
#[derive(Clone, Debug, Serialize)]
pub struct Fan {
    pub points: Vec<SpherePoint>,
    /// Worst deviation of a consecutive central angle from `2β`.
    pub max_step_residual: f64,
    /// Worst deviation of a fan point from the great circle orthogonal to
    /// the start-of-march point.
    pub max_plane_residual: f64,
}

/// Rotates the distinguished point about the start-of-march axis in steps
/// of `2β`, `n` times around.
pub fn fan(frame: &Frame) -> Result<Fan> {
    let axis = frame
        .d_start
        .normalized()
        .ok_or_else(|| Error::Internal("start-of-march point is zero".into()))?;
    let p = frame.params;
    let mut points = Vec::with_capacity(p.n);
    for k in 0..p.n {
        let rot = Rotation::about_axis(axis, 2.0 * p.beta * k as f64);
        points.push(SpherePoint::new(rot.apply(frame.start), RADIUS)?);
    }
    let mut max_step_residual = 0.0f64;
    for w in points.windows(2) {
        let cosang = (w[0].coords().dot(w[1].coords()) / (RADIUS * RADIUS)).clamp(-1.0, 1.0);
        max_step_residual = max_step_residual.max((cosang.acos() - 2.0 * p.beta).abs());
    }
    let max_plane_residual = points
        .iter()
        .map(|q| q.coords().dot(axis).abs())
        .fold(0.0f64, f64::max);
    Ok(Fan {
        points,
        max_step_residual,
        max_plane_residual,
    })
}

/// One arc of the chain on the great circle orthogonal to the
/// start-of-march point: the points at central angle at least `θ` from one
/// fan point.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ChainArc {
    /// Angle of the fan point owning this arc.
    pub fan_angle: f64,
    /// Arc endpoints as circle angles; `end - start = 2β`.
    pub start_angle: f64,
    pub end_angle: f64,
    pub start_point: SpherePoint,
    pub end_point: SpherePoint,
}

/// The full chain of arcs with its closure residuals.
#[derive(Clone, Debug, Serialize)]
pub struct SeparationSystem {
    pub arcs: Vec<ChainArc>,
    /// Worst gap between one arc's end and the next arc's start.
    pub junction_residual: f64,
    /// Worst deviation of an arc endpoint from chord `a` to its fan point.
    pub chord_residual: f64,
    /// Whether `n·2β ≥ 2π`, so the arcs wrap the whole circle.
    pub covers_circle: bool,
}

pub fn separation_system(frame: &Frame) -> Result<SeparationSystem> {
    let p = frame.params;
    let circle = SphereCircle::from_plane(frame.d_start, 0.0, RADIUS)?;
    let fan = fan(frame)?;
    let mut arcs = Vec::with_capacity(p.n);
    for (k, q) in fan.points.iter().enumerate() {
        let phi = circle.angle_of(q);
        let start_angle = phi + p.theta;
        let end_angle = phi + PI + p.beta;
        arcs.push(ChainArc {
            fan_angle: phi,
            start_angle,
            end_angle,
            start_point: circle.point_at(start_angle),
            end_point: circle.point_at(end_angle),
        });
        let _ = k;
    }
    let mut junction_residual = 0.0f64;
    for w in arcs.windows(2) {
        junction_residual = junction_residual
            .max(w[0].end_point.coords().max_abs_diff(w[1].start_point.coords()));
    }
    let mut chord_residual = 0.0f64;
    for (arc, q) in arcs.iter().zip(&fan.points) {
        for endpoint in [&arc.start_point, &arc.end_point] {
            chord_residual = chord_residual
                .max((endpoint.coords().distance(q.coords()) - p.a).abs());
        }
    }
    Ok(SeparationSystem {
        arcs,
        junction_residual,
        chord_residual,
        covers_circle: p.n as f64 * 2.0 * p.beta >= 2.0 * PI - 1e-12,
    })
}

/// Evidence that consecutive chord-`a` circles of the fan meet
/// tangentially and that hopping between neighbouring arc midpoints forces
/// a circle crossing.
#[derive(Clone, Debug, Serialize)]
pub struct TangencyCertificate {
    pub junctions: usize,
    /// Worst chord residual of a junction point against both owning fan
    /// points.
    pub max_chord_residual: f64,
    /// Worst non-collinearity of the two circle normals at a junction
    /// (zero means exact tangency).
    pub max_collinearity_residual: f64,
    /// Sign changes of the distance-to-fan-point function along each
    /// midpoint-to-midpoint hop; every entry must be odd.
    pub midpoint_crossings: Vec<usize>,
}

pub fn tangency_certificate(frame: &Frame) -> Result<TangencyCertificate> {
    let p = frame.params;
    let system = separation_system(frame)?;
    let fan = fan(frame)?;
    let mut max_chord_residual = 0.0f64;
    let mut max_collinearity_residual = 0.0f64;
    let mut midpoint_crossings = Vec::with_capacity(p.n - 1);
    let circle = SphereCircle::from_plane(frame.d_start, 0.0, RADIUS)?;
    for i in 0..p.n - 1 {
        let junction = system.arcs[i].end_point.coords();
        let pi_ = fan.points[i].coords();
        let pj = fan.points[i + 1].coords();
        for q in [pi_, pj] {
            max_chord_residual = max_chord_residual.max((junction.distance(q) - p.a).abs());
        }
        let u1 = junction
            .cross(pi_)
            .normalized()
            .ok_or_else(|| Error::Degenerate("junction aligned with a fan point".into()))?;
        let u2 = junction
            .cross(pj)
            .normalized()
            .ok_or_else(|| Error::Degenerate("junction aligned with a fan point".into()))?;
        max_collinearity_residual = max_collinearity_residual.max(u1.cross(u2).norm());

        // March along the circle between the two arc midpoints and count
        // crossings of "central angle θ from the owning fan point".
        let mid_a = system.arcs[i].fan_angle + PI;
        let mid_b = system.arcs[i + 1].fan_angle + PI;
        let steps = 2000;
        let mut crossings = 0;
        let mut prev_sign = 0.0f64;
        for t in 0..=steps {
            let angle = mid_a + (mid_b - mid_a).rem_euclid(2.0 * PI) * t as f64 / steps as f64;
            let x = circle.point_at(angle).coords();
            let f = (x.dot(pi_) / (RADIUS * RADIUS)).clamp(-1.0, 1.0).acos() - p.theta;
            if t > 0 && prev_sign * f < 0.0 {
                crossings += 1;
            }
            if f != 0.0 {
                prev_sign = f;
            }
        }
        midpoint_crossings.push(crossings);
    }
    Ok(TangencyCertificate {
        junctions: p.n - 1,
        max_chord_residual,
        max_collinearity_residual,
        midpoint_crossings,
    })
}

/// Connecting-path report.
#[derive(Clone, Debug, Serialize)]
pub struct PathReport {
    /// March angle where the intersection degenerates to tangency.
    pub psi_star: f64,
    /// Number of march samples per branch (grid + 1).
    pub samples: usize,
    /// Distance between the two branch ends at the tangency; the branches
    /// must join there.
    pub junction_gap: f64,
    /// Central angle between the two free ends of the polyline; must be
    /// `2β`.
    pub endpoint_angle: f64,
    /// Distance from the distinguished point to the nearest free end; one
    /// end must be the distinguished point itself.
    pub start_endpoint_gap: f64,
    /// Worst deviation of a path vertex from chord `a` to its rotation
    /// partner.
    pub max_chord_residual: f64,
    /// Largest distance between consecutive polyline vertices; small values
    /// certify the branch labelling stayed consistent along the march.
    pub max_adjacent_gap: f64,
    /// Crossings of each fan point's chord-`a` circle along the polyline.
    pub crossings_per_fan_point: Vec<usize>,
    pub total_crossings: usize,
    /// The joined polyline, first branch forward then second branch
    /// reversed.
    pub polyline: Vec<SpherePoint>,
}

/// Finds the first march angle where the margin changes sign, by scan and
/// bisection.
fn find_psi_star(frame: &Frame) -> Result<f64> {
    let scan = 4096;
    let mut lo = 0.0f64;
    let mut hi = None;
    let mut prev = intersect_margin(frame, 0.0);
    if prev >= 0.0 {
        return Err(Error::Bracket(format!(
            "march starts non-intersecting (margin {prev:.3e})"
        )));
    }
    for k in 1..=scan {
        let psi = 2.0 * PI * k as f64 / scan as f64;
        let m = intersect_margin(frame, psi);
        if prev < 0.0 && m >= 0.0 {
            lo = 2.0 * PI * (k - 1) as f64 / scan as f64;
            hi = Some(psi);
            break;
        }
        prev = m;
    }
    let mut hi = hi.ok_or_else(|| {
        Error::Bracket("margin never becomes nonnegative along the march".into())
    })?;
    for _ in 0..100 {
        if hi - lo <= 1e-13 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if intersect_margin(frame, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Builds the connecting path with `grid` march steps per branch.
pub fn red_path(frame: &Frame, grid: usize, tol: &Tolerances) -> Result<PathReport> {
    if grid < 8 {
        return Err(Error::Precondition("need at least 8 march steps".into()));
    }
    let p = frame.params;
    let psi_star = find_psi_star(frame)?;
    let offset = (1.0 - p.a * p.a) / 2.0;

    let mut branch_l: Vec<Vec3> = Vec::with_capacity(grid + 1);
    let mut branch_m: Vec<Vec3> = Vec::with_capacity(grid + 1);
    let mut prev_raw: Option<(Vec3, Vec3)> = None;
    let mut max_chord_residual = 0.0f64;
    for j in 0..=grid {
        let psi = psi_star * j as f64 / grid as f64;
        let h = march_point(frame, psi);
        let planes = PlanePair {
            normal1: h,
            offset1: 0.0,
            normal2: frame.start,
            offset2: offset,
            sphere_radius: RADIUS,
        };
        let (mut l, mut m) = match intersect_circles_with(&planes, tol)? {
            CircleIntersection::Pair { first, second } => (first.coords(), second.coords()),
            CircleIntersection::Tangent { point } => (point.coords(), point.coords()),
            CircleIntersection::Empty => {
                return Err(Error::Internal(format!(
                    "march angle {psi} lost the intersection before tangency"
                )))
            }
        };
        // Labels follow proximity to the previous unrotated pair; the
        // solver's own ordering may flip as the planes move.
        if let Some((pl, pm)) = prev_raw {
            let direct = l.distance(pl).powi(2) + m.distance(pm).powi(2);
            let swapped = m.distance(pl).powi(2) + l.distance(pm).powi(2);
            if swapped < direct {
                std::mem::swap(&mut l, &mut m);
            }
        }
        prev_raw = Some((l, m));
        let axis = h
            .normalized()
            .ok_or_else(|| Error::Internal("marching point is zero".into()))?;
        let rot = Rotation::about_axis(axis, p.theta);
        let lp = rot.apply(l);
        let mp = rot.apply(m);
        max_chord_residual = max_chord_residual
            .max((l.distance(lp) - p.a).abs())
            .max((m.distance(mp) - p.a).abs());
        branch_l.push(lp);
        branch_m.push(mp);
    }

    let junction_gap = branch_l[grid].distance(branch_m[grid]);
    let e1 = branch_l[0];
    let e2 = branch_m[0];
    let endpoint_angle = (e1.dot(e2) / (RADIUS * RADIUS)).clamp(-1.0, 1.0).acos();
    let start_endpoint_gap = e1.distance(frame.start).min(e2.distance(frame.start));

    let mut polyline = Vec::with_capacity(2 * grid + 2);
    polyline.extend(branch_l.iter().copied());
    polyline.extend(branch_m.iter().rev().copied());
    let max_adjacent_gap = polyline
        .windows(2)
        .map(|w| w[0].distance(w[1]))
        .fold(0.0f64, f64::max);

    let fan = fan(frame)?;
    let mut crossings_per_fan_point = Vec::with_capacity(p.n);
    for q in &fan.points {
        let qc = q.coords();
        let mut crossings = 0;
        let mut prev_sign = 0.0f64;
        for (idx, x) in polyline.iter().enumerate() {
            let f = (x.dot(qc) / (RADIUS * RADIUS)).clamp(-1.0, 1.0).acos() - p.theta;
            if idx > 0 && prev_sign * f < 0.0 {
                crossings += 1;
            }
            if f != 0.0 {
                prev_sign = f;
            }
        }
        crossings_per_fan_point.push(crossings);
    }
    let total_crossings = crossings_per_fan_point.iter().sum();

    let polyline = polyline
        .into_iter()
        .map(|v| SpherePoint::with_tolerance(v, RADIUS, tol))
        .collect::<Result<Vec<_>>>()?;
    Ok(PathReport {
        psi_star,
        samples: grid + 1,
        junction_gap,
        endpoint_angle,
        start_endpoint_gap,
        max_chord_residual,
        max_adjacent_gap,
        crossings_per_fan_point,
        total_crossings,
        polyline,
    })
}
