//! Two-colorings of spheres described by a small rule DSL, and the concrete
//! coloring `chi` of the sphere of radius 1/√2.
//!
//! A [`ColoringRule`] is an ordered rule list evaluated first-match-wins:
//!
//! * [`Rule::SignProduct`]: matches when the product of two linear forms is
//!   strictly positive (or strictly negative), assigning one color each way.
//!   A product of exactly zero falls through to later rules.
//! * [`Rule::OnPlane`]: matches points on the zero set of a linear form,
//!   with a finite list of exceptional points that receive the other color.
//!
//! Points exactly on a plane form a measure-zero stratum, and floating-point
//! sampling almost never lands there. Callers that construct such points on
//! purpose pass a [`StrataHint`] naming the forms that vanish exactly; the
//! hinted forms then evaluate to zero and all others are taken at face
//! value, which makes the assigned color independent of the plane-band
//! tolerance. Without a hint, plane membership falls back to an
//! `ε_plane`-band test.
//!
//! `chi` itself colors by the sign of `y·z`, sending the `y = 0` circle to
//! red and the `z = 0` circle to blue except at one point each:
//! `(1/√2, 0, 0)` is blue and `(-1/√2, 0, 0)` is red. No rotation of an
//! orthogonal triple on this sphere is monochromatic; [`verify_chi`] checks
//! that claim by sampling.

mod search;
mod verify;

pub use search::{find_monochromatic, ConfigSpec};
pub use verify::{verify_chi, verify_chi_seq, verify_coloring, ChiVerification};

use crate::error::{Error, Result};
use crate::geom::{Sphere4Point, SpherePoint};
use crate::tol::Tolerances;
use crate::vec::{Rotation, Vec3};
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_1_SQRT_2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

impl std::fmt::Display for Color {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Color::Red => write!(f, "red"),
            Color::Blue => write!(f, "blue"),
        }
    }
}

/// One clause of a coloring rule list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Rule {
    /// Colors by the sign of `(form1·p)(form2·p)`; zero products fall
    /// through.
    SignProduct {
        form1: [f64; 3],
        form2: [f64; 3],
        positive: Color,
        negative: Color,
    },
    /// Colors points on `{p : form·p = 0}`, except for the listed points
    /// which receive `exception_color`.
    OnPlane {
        form: [f64; 3],
        color: Color,
        #[serde(default)]
        exceptions: Vec<[f64; 3]>,
        exception_color: Color,
    },
}

/// An ordered rule list with a default color, tied to one sphere radius.
///
/// Serializes to the JSON accepted by the CLI's `--coloring` flag.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ColoringRule {
    pub sphere_radius: f64,
    pub default: Color,
    #[serde(default)]
    pub rules: Vec<Rule>,
}

/// Declares which linear forms vanish exactly at a constructed point.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct StrataHint {
    pub zero_forms: Vec<[f64; 3]>,
}

impl StrataHint {
    pub fn new(zero_forms: Vec<[f64; 3]>) -> Self {
        StrataHint { zero_forms }
    }

    fn covers(&self, form: &[f64; 3]) -> bool {
        self.zero_forms.iter().any(|z| z == form)
    }
}

fn eval_form(form: &[f64; 3], p: Vec3) -> f64 {
    form[0] * p.x + form[1] * p.y + form[2] * p.z
}

impl ColoringRule {
    /// The coloring of `S(1/√2)` with no monochromatic orthogonal triple.
    pub fn chi() -> ColoringRule {
        let r = FRAC_1_SQRT_2;
        ColoringRule {
            sphere_radius: r,
            default: Color::Blue,
            rules: vec![
                Rule::SignProduct {
                    form1: [0.0, 1.0, 0.0],
                    form2: [0.0, 0.0, 1.0],
                    positive: Color::Blue,
                    negative: Color::Red,
                },
                Rule::OnPlane {
                    form: [0.0, 0.0, 1.0],
                    color: Color::Blue,
                    exceptions: vec![[-r, 0.0, 0.0]],
                    exception_color: Color::Red,
                },
                Rule::OnPlane {
                    form: [0.0, 1.0, 0.0],
                    color: Color::Red,
                    exceptions: vec![[r, 0.0, 0.0]],
                    exception_color: Color::Blue,
                },
            ],
        }
    }

    /// A coloring with no rules: everything gets the default color.
    pub fn constant(sphere_radius: f64, color: Color) -> ColoringRule {
        ColoringRule { sphere_radius, default: color, rules: Vec::new() }
    }

    pub fn from_json(json: &str) -> Result<ColoringRule> {
        let rule: ColoringRule = serde_json::from_str(json)
            .map_err(|e| Error::Domain(format!("cannot parse coloring: {e}")))?;
        if !(rule.sphere_radius > 0.0) {
            return Err(Error::Domain(format!(
                "coloring sphere radius must be positive, got {}",
                rule.sphere_radius
            )));
        }
        Ok(rule)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("coloring serializes")
    }

    /// Colors `p` under this rule list.
    ///
    /// `p` must sit on the rule's sphere. With a [`StrataHint`], hinted
    /// forms evaluate to exactly zero and unhinted plane memberships are
    /// taken as false, so the result does not depend on `tol.plane`.
    pub fn color(
        &self,
        p: &SpherePoint,
        hint: Option<&StrataHint>,
        tol: &Tolerances,
    ) -> Result<Color> {
        if (p.radius() - self.sphere_radius).abs() > tol.sphere
            || (p.coords().norm() - self.sphere_radius).abs() > tol.sphere
        {
            return Err(Error::Precondition(format!(
                "point of radius {} fed to a coloring of S({})",
                p.radius(),
                self.sphere_radius
            )));
        }
        let c = p.coords();
        for rule in &self.rules {
            match rule {
                Rule::SignProduct { form1, form2, positive, negative } => {
                    let v1 = match hint {
                        Some(h) if h.covers(form1) => 0.0,
                        _ => eval_form(form1, c),
                    };
                    let v2 = match hint {
                        Some(h) if h.covers(form2) => 0.0,
                        _ => eval_form(form2, c),
                    };
                    let prod = v1 * v2;
                    if prod > 0.0 {
                        return Ok(*positive);
                    }
                    if prod < 0.0 {
                        return Ok(*negative);
                    }
                }
                Rule::OnPlane { form, color, exceptions, exception_color } => {
                    let on = match hint {
                        Some(h) => h.covers(form),
                        None => eval_form(form, c).abs() < tol.plane,
                    };
                    if on {
                        let exceptional = exceptions.iter().any(|e| {
                            c.max_abs_diff(Vec3::from(*e)) <= tol.plane
                        });
                        return Ok(if exceptional { *exception_color } else { *color });
                    }
                }
            }
        }
        Ok(self.default)
    }
}

/// A (possibly partial) point configuration found monochromatic, with the
/// pairwise-distance residuals of the placement.
#[derive(Clone, Debug, Serialize)]
pub struct TripleWitness {
    pub points: Vec<SpherePoint>,
    pub color: Color,
    pub residuals: Vec<f64>,
}

/// The mutually orthogonal triple obtained by rotating the scaled coordinate
/// axes by the given Euler angles (yaw, pitch, roll).
pub fn orthogonal_triple(angles: [f64; 3], radius: f64) -> Result<[SpherePoint; 3]> {
    if !(radius > 0.0) {
        return Err(Error::Domain(format!("radius must be positive, got {radius}")));
    }
    let rot = Rotation::from_euler(angles[0], angles[1], angles[2]);
    Ok(triple_from_rotation(&rot, radius))
}

pub(crate) fn triple_from_rotation(rot: &Rotation, radius: f64) -> [SpherePoint; 3] {
    let cols = rot.columns();
    let mk = |v: Vec3| {
        SpherePoint::snapped(v * radius, radius).expect("rotation column is unit length")
    };
    [mk(cols[0]), mk(cols[1]), mk(cols[2])]
}

/// Distances in the lift of an orthogonal pair to the 3-sphere of radius
/// 1/√2: a "pole" with only its last coordinate nonzero and two equatorial
/// points (last coordinate zero).
///
/// Returns `(‖pole - p1‖, ‖pole - p2‖, ‖p1 - p2‖)`. The first two are
/// always 1: the pole is orthogonal to every equatorial point, and two
/// orthogonal points at radius 1/√2 are at distance exactly 1.
pub fn equatorial_lift_check(
    pole: &Sphere4Point,
    p1: &Sphere4Point,
    p2: &Sphere4Point,
    tol: &Tolerances,
) -> Result<(f64, f64, f64)> {
    for (p, label) in [(pole, "pole"), (p1, "p1"), (p2, "p2")] {
        if (p.radius() - FRAC_1_SQRT_2).abs() > tol.sphere {
            return Err(Error::Precondition(format!(
                "{label} lies on a 3-sphere of radius {}, expected 1/√2",
                p.radius()
            )));
        }
    }
    let pc = pole.coords().0;
    if pc[0].abs() > tol.sphere || pc[1].abs() > tol.sphere || pc[2].abs() > tol.sphere {
        return Err(Error::Precondition(
            "pole must have only its last coordinate nonzero".into(),
        ));
    }
    for (p, label) in [(p1, "p1"), (p2, "p2")] {
        if p.coords().0[3].abs() > tol.sphere {
            return Err(Error::Precondition(format!(
                "{label} must have last coordinate zero"
            )));
        }
    }
    Ok((pole.distance(p1), pole.distance(p2), p1.distance(p2)))
}
