//! Points and distance circles on origin-centered spheres.
//!
//! The key objects are [`SpherePoint`] (a validated point of `S(r)`) and
//! [`SphereCircle`] (a plane section of the sphere, possibly a single
//! point). [`intersect_circles`] intersects two plane sections and
//! classifies the outcome as one of the [`CircleIntersection`] cases.
//!
//! The set of points at chord distance `d` from `x ∈ S(r)` is itself a plane
//! section: its plane has unit normal `x/r` and offset `r - d²/(2r)`, and the
//! section radius is `d·√(1 - d²/(4r²))`. [`chord_circle`] builds it.
//!
//! Orientation convention: a rotation by a positive angle along a circle is
//! counterclockwise when viewed from the tip of the circle's normal, looking
//! back toward the sphere center. Every module in this crate that walks along
//! circles uses this convention.

use crate::error::{Error, Result};
use crate::tol::Tolerances;
use crate::vec::{Rotation, Vec3, Vec4};
use serde::Serialize;

/// A point on an origin-centered sphere of known radius.
///
/// Construction validates the radius so that downstream code can rely on
/// membership instead of re-checking it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(into = "[f64; 3]")]
pub struct SpherePoint {
    coords: Vec3,
    radius: f64,
}

impl From<SpherePoint> for [f64; 3] {
    fn from(p: SpherePoint) -> Self {
        p.coords.to_array()
    }
}

impl SpherePoint {
    /// Accepts `coords` as a point of `S(radius)` within the default sphere
    /// tolerance.
    pub fn new(coords: Vec3, radius: f64) -> Result<Self> {
        Self::with_tolerance(coords, radius, &Tolerances::default())
    }

    pub fn with_tolerance(coords: Vec3, radius: f64, tol: &Tolerances) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::Domain(format!("sphere radius must be positive, got {radius}")));
        }
        let err = (coords.norm() - radius).abs();
        if err > tol.sphere {
            return Err(Error::Precondition(format!(
                "point {:?} is off the sphere of radius {radius} by {err:.3e}",
                coords.to_array()
            )));
        }
        Ok(SpherePoint { coords, radius })
    }

    /// Rescales `coords` onto `S(radius)` exactly. Fails only for the zero
    /// vector, which has no direction to keep.
    pub fn snapped(coords: Vec3, radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::Domain(format!("sphere radius must be positive, got {radius}")));
        }
        let dir = coords
            .normalized()
            .ok_or_else(|| Error::Degenerate("cannot project the zero vector onto a sphere".into()))?;
        Ok(SpherePoint { coords: dir * radius, radius })
    }

    pub fn coords(&self) -> Vec3 {
        self.coords
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn chord_to(&self, other: &SpherePoint) -> f64 {
        self.coords.distance(other.coords)
    }

    pub fn antipode(&self) -> SpherePoint {
        SpherePoint { coords: -self.coords, radius: self.radius }
    }
}

/// A point on an origin-centered sphere in four-space.
///
/// Exists solely for the equatorial-lift distance check in
/// [`crate::coloring::equatorial_lift_check`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sphere4Point {
    coords: Vec4,
    radius: f64,
}

impl Sphere4Point {
    pub fn new(coords: Vec4, radius: f64) -> Result<Self> {
        Self::with_tolerance(coords, radius, &Tolerances::default())
    }

    pub fn with_tolerance(coords: Vec4, radius: f64, tol: &Tolerances) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::Domain(format!("sphere radius must be positive, got {radius}")));
        }
        let err = (coords.norm() - radius).abs();
        if err > tol.sphere {
            return Err(Error::Precondition(format!(
                "point {:?} is off the 3-sphere of radius {radius} by {err:.3e}",
                coords.0
            )));
        }
        Ok(Sphere4Point { coords, radius })
    }

    pub fn coords(&self) -> Vec4 {
        self.coords
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn distance(&self, other: &Sphere4Point) -> f64 {
        self.coords.distance(other.coords)
    }
}

/// A plane section of an origin-centered sphere.
///
/// Stored as a unit normal plus the signed offset of the plane along it, with
/// the section center and radius precomputed. A section radius of zero (the
/// plane touches the sphere) is legal and represents a single point.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SphereCircle {
    sphere_radius: f64,
    normal: Vec3,
    offset: f64,
    center: Vec3,
    circle_radius: f64,
}

impl SphereCircle {
    /// Section of `S(sphere_radius)` by the plane `{x : x·normal = offset}`,
    /// where `normal` need not be unit length and `offset` is measured
    /// against it as given.
    pub fn from_plane(normal: Vec3, offset: f64, sphere_radius: f64) -> Result<Self> {
        if !(sphere_radius > 0.0) {
            return Err(Error::Domain(format!(
                "sphere radius must be positive, got {sphere_radius}"
            )));
        }
        let n = normal
            .normalized()
            .ok_or_else(|| Error::Degenerate("plane normal must be nonzero".into()))?;
        let unit_offset = offset / normal.norm();
        if unit_offset.abs() > sphere_radius * (1.0 + 1e-12) {
            return Err(Error::Domain(format!(
                "plane at distance {:.6} misses the sphere of radius {sphere_radius}",
                unit_offset.abs()
            )));
        }
        let circle_radius = (sphere_radius * sphere_radius - unit_offset * unit_offset)
            .max(0.0)
            .sqrt();
        Ok(SphereCircle {
            sphere_radius,
            normal: n,
            offset: unit_offset,
            center: n * unit_offset,
            circle_radius,
        })
    }

    pub fn sphere_radius(&self) -> f64 {
        self.sphere_radius
    }

    /// Unit normal of the section plane.
    pub fn normal(&self) -> Vec3 {
        self.normal
    }

    /// Signed distance of the section plane from the origin, along the unit
    /// normal.
    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn center(&self) -> Vec3 {
        self.center
    }

    pub fn circle_radius(&self) -> f64 {
        self.circle_radius
    }

    pub fn is_degenerate(&self) -> bool {
        self.circle_radius == 0.0
    }

    /// Deterministic orthonormal basis of the section plane.
    ///
    /// The first axis is the coordinate direction least aligned with the
    /// normal, projected into the plane; the second completes a right-handed
    /// frame with the normal. Both depend only on the normal, so repeated
    /// calls agree bit for bit.
    pub fn in_plane_basis(&self) -> (Vec3, Vec3) {
        let n = self.normal;
        let abs = [n.x.abs(), n.y.abs(), n.z.abs()];
        let pick = if abs[0] <= abs[1] && abs[0] <= abs[2] {
            Vec3::new(1.0, 0.0, 0.0)
        } else if abs[1] <= abs[2] {
            Vec3::new(0.0, 1.0, 0.0)
        } else {
            Vec3::new(0.0, 0.0, 1.0)
        };
        let u = (pick - n * pick.dot(n)).normalized().expect("axis not parallel to normal");
        let v = n.cross(u);
        (u, v)
    }

    /// Point of the circle at `angle`, measured from the first basis axis.
    pub fn point_at(&self, angle: f64) -> SpherePoint {
        let (u, v) = self.in_plane_basis();
        let (s, c) = angle.sin_cos();
        let coords = self.center + u * (self.circle_radius * c) + v * (self.circle_radius * s);
        SpherePoint { coords, radius: self.sphere_radius }
    }

    /// Angle of `p` in the circle's own basis, in `(-π, π]`.
    pub fn angle_of(&self, p: &SpherePoint) -> f64 {
        let (u, v) = self.in_plane_basis();
        let rel = p.coords() - self.center;
        rel.dot(v).atan2(rel.dot(u))
    }

    pub fn contains(&self, p: &SpherePoint, tol: &Tolerances) -> bool {
        (p.coords().norm() - self.sphere_radius).abs() <= tol.sphere
            && (p.coords().dot(self.normal) - self.offset).abs() <= tol.sphere.max(1e-12)
    }
}

/// The circle of points at chord distance `d` from `x`, on `x`'s sphere.
///
/// `d` must lie in `[0, 2r]`; `d = 2r` yields the degenerate single-point
/// circle at the antipode, and `d = 0` the one at `x` itself.
pub fn chord_circle(x: &SpherePoint, d: f64) -> Result<SphereCircle> {
    let r = x.radius();
    if !(0.0..=2.0 * r * (1.0 + 1e-12)).contains(&d) {
        return Err(Error::Domain(format!(
            "chord {d} outside [0, {}] on the sphere of radius {r}",
            2.0 * r
        )));
    }
    let normal = x.coords() * (1.0 / r);
    let offset = r - d * d / (2.0 * r);
    let circle_radius = (d * d * (1.0 - d * d / (4.0 * r * r)).max(0.0)).sqrt();
    Ok(SphereCircle {
        sphere_radius: r,
        normal,
        offset,
        center: normal * offset,
        circle_radius,
    })
}

/// Central angle subtended by a chord of length `d` on a sphere of radius
/// `r`: `2·asin(d/(2r))`.
pub fn chord_to_angle(d: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("sphere radius must be positive, got {r}")));
    }
    if !(0.0..=2.0 * r * (1.0 + 1e-12)).contains(&d) {
        return Err(Error::Domain(format!("chord {d} outside [0, {}]", 2.0 * r)));
    }
    Ok(2.0 * (d / (2.0 * r)).clamp(-1.0, 1.0).asin())
}

/// Chord length subtended by a central angle `theta ∈ [0, π]`.
pub fn angle_to_chord(theta: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("sphere radius must be positive, got {r}")));
    }
    if !(0.0..=std::f64::consts::PI * (1.0 + 1e-12)).contains(&theta) {
        return Err(Error::Domain(format!("central angle {theta} outside [0, π]")));
    }
    Ok(2.0 * r * (theta / 2.0).sin())
}

/// Moves `p` along the circle `c` by `angle` (positive angles follow the
/// orientation convention in the module docs).
///
/// `p` must lie on `c`. For a degenerate circle the only legal input is its
/// single point, which is returned unchanged.
pub fn rotate_on_circle(p: &SpherePoint, c: &SphereCircle, angle: f64) -> Result<SpherePoint> {
    rotate_on_circle_with(p, c, angle, &Tolerances::default())
}

pub fn rotate_on_circle_with(
    p: &SpherePoint,
    c: &SphereCircle,
    angle: f64,
    tol: &Tolerances,
) -> Result<SpherePoint> {
    if !c.contains(p, tol) {
        return Err(Error::Precondition(format!(
            "point {:?} does not lie on the given circle (plane residual {:.3e})",
            p.coords().to_array(),
            (p.coords().dot(c.normal()) - c.offset()).abs()
        )));
    }
    if c.is_degenerate() {
        return Ok(*p);
    }
    let rot = Rotation::about_axis(c.normal(), angle);
    let coords = rot.apply(p.coords() - c.center()) + c.center();
    SpherePoint::with_tolerance(coords, c.sphere_radius(), tol)
}

/// Two planes cutting a common sphere; input to [`intersect_circles`].
///
/// Each plane is `{x : x·normal = offset}` with the offset measured against
/// the normal as given (normals need not be unit length).
#[derive(Clone, Copy, Debug)]
pub struct PlanePair {
    pub normal1: Vec3,
    pub offset1: f64,
    pub normal2: Vec3,
    pub offset2: f64,
    pub sphere_radius: f64,
}

/// Outcome of intersecting two plane sections of a sphere.
#[derive(Clone, Copy, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CircleIntersection {
    Empty,
    Tangent { point: SpherePoint },
    /// Transversal intersection; points ordered by their parameter along the
    /// plane-intersection line, so the labelling is deterministic.
    Pair { first: SpherePoint, second: SpherePoint },
}

/// Intersects the two plane sections described by `planes`.
///
/// Solves for the line common to both planes, then intersects it with the
/// sphere via a quadratic in the line parameter. The discriminant is
/// compared against the solver tolerance: within it, the configuration is
/// reported tangent at the quadratic's vertex.
pub fn intersect_circles(planes: &PlanePair) -> Result<CircleIntersection> {
    intersect_circles_with(planes, &Tolerances::default())
}

pub fn intersect_circles_with(
    planes: &PlanePair,
    tol: &Tolerances,
) -> Result<CircleIntersection> {
    let r = planes.sphere_radius;
    if !(r > 0.0) {
        return Err(Error::Domain(format!("sphere radius must be positive, got {r}")));
    }
    let n1 = planes
        .normal1
        .normalized()
        .ok_or_else(|| Error::Degenerate("first plane normal is zero".into()))?;
    let n2 = planes
        .normal2
        .normalized()
        .ok_or_else(|| Error::Degenerate("second plane normal is zero".into()))?;
    let o1 = planes.offset1 / planes.normal1.norm();
    let o2 = planes.offset2 / planes.normal2.norm();

    let dir = n1.cross(n2);
    let dir_norm = dir.norm();
    if dir_norm < 1e-12 {
        return Err(Error::Degenerate(
            "plane normals are parallel; sections coincide or are disjoint".into(),
        ));
    }
    let v = dir * (1.0 / dir_norm);

    // Point of the line lying in span{n1, n2}.
    let c = n1.dot(n2);
    let det = 1.0 - c * c;
    let a = (o1 - c * o2) / det;
    let b = (o2 - c * o1) / det;
    let u0 = n1 * a + n2 * b;

    // ‖u0 + t·v‖ = r  ⇔  t² + 2(u0·v)t + (‖u0‖² - r²) = 0.
    let p = u0.dot(v);
    let q = u0.norm_squared() - r * r;
    let disc = p * p - q;

    let mk = |t: f64| -> Result<SpherePoint> {
        let coords = u0 + v * t;
        let point = SpherePoint::with_tolerance(
            coords,
            r,
            &Tolerances { sphere: tol.solve, ..*tol },
        )?;
        for (n, o, label) in [(n1, o1, "first"), (n2, o2, "second")] {
            let res = (point.coords().dot(n) - o).abs();
            if res > tol.solve {
                return Err(Error::Internal(format!(
                    "intersection point violates the {label} plane by {res:.3e}"
                )));
            }
        }
        Ok(point)
    };

    if disc.abs() <= tol.solve {
        Ok(CircleIntersection::Tangent { point: mk(-p)? })
    } else if disc < 0.0 {
        Ok(CircleIntersection::Empty)
    } else {
        let s = disc.sqrt();
        Ok(CircleIntersection::Pair { first: mk(-p - s)?, second: mk(-p + s)? })
    }
}
