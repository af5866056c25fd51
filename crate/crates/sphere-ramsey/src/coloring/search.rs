//! Monochromatic-configuration search over rotations of a rigid template.
//!
//! The rigid template described by a [`ConfigSpec`] is placed once in a
//! canonical pose; the search then
//! sweeps a seeded coarse grid over Euler angles and tests whether all
//! rotated points receive the target color. A hit is refined by compass
//! search on the angles, maximizing the distance of the points from the
//! coloring's decision boundaries so the reported witness is robustly inside
//! its color class. Because the template is rigid, distance residuals are at
//! rounding level no matter how far refinement moves.
//!
//! The grid is scanned in parallel under the `parallel` feature; the hit
//! with the lowest flat index wins, which makes the result identical to the
//! sequential scan.

use super::{Color, ColoringRule, Rule, TripleWitness};
use crate::error::{Error, Result};
use crate::geom::SpherePoint;
use crate::tol::Tolerances;
use crate::vec::{Rotation, Vec3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// Point configuration to search for.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ConfigSpec {
    /// Two points at chord distance `a`.
    Pair { a: f64 },
    /// Three points pairwise at chord distance `a`.
    Equilateral { a: f64 },
    /// Apex joined to two base points by unit chords, base points at chord
    /// distance `a`.
    Isosceles { base: f64 },
}

impl ConfigSpec {
    /// Canonical placement on `S(radius)`, or an error when the
    /// configuration does not embed.
    fn template(&self, radius: f64) -> Result<Vec<Vec3>> {
        let r = radius;
        match *self {
            ConfigSpec::Pair { a } => {
                if !(a > 0.0) || a > 2.0 * r {
                    return Err(Error::Domain(format!(
                        "pair distance {a} does not embed on a sphere of radius {r}"
                    )));
                }
                let beta = (a / (2.0 * r)).asin();
                Ok(vec![
                    Vec3::new(r * beta.sin(), 0.0, r * beta.cos()),
                    Vec3::new(-r * beta.sin(), 0.0, r * beta.cos()),
                ])
            }
            ConfigSpec::Equilateral { a } => {
                if !(a > 0.0) || a > 3f64.sqrt() * r {
                    return Err(Error::Domain(format!(
                        "equilateral side {a} does not embed on a sphere of radius {r}"
                    )));
                }
                let rho = a / 3f64.sqrt();
                let zc = (r * r - rho * rho).max(0.0).sqrt();
                Ok((0..3)
                    .map(|k| {
                        let ang = 2.0 * PI * k as f64 / 3.0;
                        Vec3::new(rho * ang.cos(), rho * ang.sin(), zc)
                    })
                    .collect())
            }
            ConfigSpec::Isosceles { base } => {
                if 1.0 > 2.0 * r {
                    return Err(Error::Domain(format!(
                        "unit legs do not embed on a sphere of radius {r}"
                    )));
                }
                // Base points on the unit-chord circle around the north pole.
                let z1 = r - 1.0 / (2.0 * r);
                let rho = (1.0 - 1.0 / (4.0 * r * r)).sqrt();
                if !(base > 0.0) || base > 2.0 * rho {
                    return Err(Error::Domain(format!(
                        "isosceles base {base} does not embed (max {})",
                        2.0 * rho
                    )));
                }
                let half = (base / (2.0 * rho)).asin();
                Ok(vec![
                    Vec3::new(0.0, 0.0, r),
                    Vec3::new(rho * half.cos(), rho * half.sin(), z1),
                    Vec3::new(rho * half.cos(), -rho * half.sin(), z1),
                ])
            }
        }
    }

    /// Expected pairwise chord distances, in index order (0,1), (0,2), (1,2).
    fn expected_distances(&self) -> Vec<f64> {
        match *self {
            ConfigSpec::Pair { a } => vec![a],
            ConfigSpec::Equilateral { a } => vec![a, a, a],
            ConfigSpec::Isosceles { base } => vec![1.0, 1.0, base],
        }
    }
}

fn place(template: &[Vec3], rot: &Rotation, radius: f64) -> Vec<SpherePoint> {
    template
        .iter()
        .map(|&v| SpherePoint::snapped(rot.apply(v), radius).expect("template point is nonzero"))
        .collect()
}

/// Distance of the placement from the nearest sign-rule decision boundary:
/// the minimum over points and sign rules of `|f1(p)·f2(p)|`. Infinite when
/// the rule list has no sign rules.
fn margin(rule: &ColoringRule, points: &[SpherePoint]) -> f64 {
    let mut m = f64::INFINITY;
    for p in points {
        let c = p.coords();
        for r in &rule.rules {
            if let Rule::SignProduct { form1, form2, .. } = r {
                let v1 = form1[0] * c.x + form1[1] * c.y + form1[2] * c.z;
                let v2 = form2[0] * c.x + form2[1] * c.y + form2[2] * c.z;
                m = m.min((v1 * v2).abs());
            }
        }
    }
    m
}

fn all_target(
    rule: &ColoringRule,
    points: &[SpherePoint],
    target: Color,
    tol: &Tolerances,
) -> bool {
    points
        .iter()
        .all(|p| rule.color(p, None, tol).map(|c| c == target).unwrap_or(false))
}

fn angles_of(index: usize, grid: usize, jitter: [f64; 3]) -> [f64; 3] {
    let k = index % grid;
    let j = (index / grid) % grid;
    let i = index / (grid * grid);
    [
        2.0 * PI * i as f64 / grid as f64 + jitter[0],
        PI * j as f64 / grid as f64 + jitter[1],
        2.0 * PI * k as f64 / grid as f64 + jitter[2],
    ]
}

/// Searches rotations of the configuration for an all-`target` placement.
///
/// `grid` is the per-axis density of the Euler grid (shifted by a small
/// seeded jitter so axis-aligned colorings are not probed only at their
/// symmetry points), `refine_iters` bounds the compass-search refinement.
/// Returns the refined witness, or `None` when no grid placement matches.
pub fn find_monochromatic(
    rule: &ColoringRule,
    config: ConfigSpec,
    target: Color,
    grid: usize,
    refine_iters: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<Option<TripleWitness>> {
    if grid == 0 {
        return Err(Error::Domain("grid density must be positive".into()));
    }
    let radius = rule.sphere_radius;
    let template = config.template(radius)?;

    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[16] = 0x37;
    let mut rng = ChaCha8Rng::from_seed(key);
    let jitter = [
        rng.gen::<f64>() * 2.0 * PI / grid as f64,
        rng.gen::<f64>() * PI / grid as f64,
        rng.gen::<f64>() * 2.0 * PI / grid as f64,
    ];

    let total = grid * grid * grid;
    let probe = |index: usize| -> Option<usize> {
        let angles = angles_of(index, grid, jitter);
        let rot = Rotation::from_euler(angles[0], angles[1], angles[2]);
        let points = place(&template, &rot, radius);
        all_target(rule, &points, target, tol).then_some(index)
    };

    #[cfg(feature = "parallel")]
    let hit = {
        use rayon::prelude::*;
        (0..total).into_par_iter().filter_map(probe).min()
    };
    #[cfg(not(feature = "parallel"))]
    let hit = (0..total).filter_map(probe).min();

    let Some(index) = hit else {
        return Ok(None);
    };

    // Compass refinement: maximize the boundary margin while staying inside
    // the target color class.
    let mut angles = angles_of(index, grid, jitter);
    let mut best = {
        let rot = Rotation::from_euler(angles[0], angles[1], angles[2]);
        margin(rule, &place(&template, &rot, radius))
    };
    let mut step = PI / grid as f64;
    for _ in 0..refine_iters {
        let mut improved = false;
        for axis in 0..3 {
            for dir in [-1.0, 1.0] {
                let mut cand = angles;
                cand[axis] += dir * step;
                let rot = Rotation::from_euler(cand[0], cand[1], cand[2]);
                let points = place(&template, &rot, radius);
                if !all_target(rule, &points, target, tol) {
                    continue;
                }
                let m = margin(rule, &points);
                if m > best {
                    best = m;
                    angles = cand;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }

    let rot = Rotation::from_euler(angles[0], angles[1], angles[2]);
    let points = place(&template, &rot, radius);
    debug_assert!(all_target(rule, &points, target, tol));
    let expected = config.expected_distances();
    let pairs: &[(usize, usize)] =
        if points.len() == 2 { &[(0, 1)] } else { &[(0, 1), (0, 2), (1, 2)] };
    let residuals = pairs
        .iter()
        .zip(expected.iter())
        .map(|(&(i, j), &d)| (points[i].chord_to(&points[j]) - d).abs())
        .collect();
    Ok(Some(TripleWitness { points, color: target, residuals }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    const R2: f64 = FRAC_1_SQRT_2;

    #[test]
    fn constant_coloring_yields_an_equilateral_witness() {
        let all_blue = ColoringRule::constant(R2, Color::Blue);
        let w = find_monochromatic(
            &all_blue,
            ConfigSpec::Equilateral { a: 1.0 },
            Color::Blue,
            8,
            20,
            0,
            &Tolerances::default(),
        )
        .unwrap()
        .expect("an all-blue sphere contains blue triangles");
        assert_eq!(w.points.len(), 3);
        for r in &w.residuals {
            assert!(*r < 1e-8, "distance residual {r:e}");
        }
    }

    #[test]
    fn chi_has_no_monochromatic_unit_triangle_at_tested_densities() {
        let chi = ColoringRule::chi();
        for target in [Color::Red, Color::Blue] {
            let found = find_monochromatic(
                &chi,
                ConfigSpec::Equilateral { a: 1.0 },
                target,
                16,
                20,
                11,
                &Tolerances::default(),
            )
            .unwrap();
            assert!(found.is_none(), "unexpected {target} triangle: {found:?}");
        }
    }

    #[test]
    fn off_axis_coloring_yields_a_red_pair_off_the_equator() {
        // Red wherever z ≠ 0 (the sign rule squares the form), blue on the
        // equator: the search must find a red orthogonal pair, necessarily
        // with both points off the equator.
        let hemispheres = ColoringRule {
            sphere_radius: R2,
            default: Color::Blue,
            rules: vec![Rule::SignProduct {
                form1: [0.0, 0.0, 1.0],
                form2: [0.0, 0.0, 1.0],
                positive: Color::Red,
                negative: Color::Blue,
            }],
        };
        let w = find_monochromatic(
            &hemispheres,
            ConfigSpec::Pair { a: 1.0 },
            Color::Red,
            12,
            40,
            5,
            &Tolerances::default(),
        )
        .unwrap()
        .expect("red pairs exist off the equator");
        assert_eq!(w.points.len(), 2);
        for p in &w.points {
            assert!(p.coords().z.abs() > 1e-3, "refinement left a point near the equator");
        }
        assert!(w.residuals[0] < 1e-8);
    }

    #[test]
    fn explicit_upper_halfspace_pair_exists_and_is_red() {
        // Oracle for the previous test: an explicitly constructed orthogonal
        // pair with both points strictly above the equator.
        let u = Vec3::new(1.0, 0.0, 1.0);
        let v = Vec3::new(-0.5, 1.0, 0.5);
        assert!(u.dot(v).abs() < 1e-15);
        let p1 = SpherePoint::snapped(u, R2).unwrap();
        let p2 = SpherePoint::snapped(v, R2).unwrap();
        assert!((p1.chord_to(&p2) - 1.0).abs() < 1e-12);
        assert!(p1.coords().z > 0.0 && p2.coords().z > 0.0);
    }

    #[test]
    fn isosceles_template_places_exact_distances() {
        let all_red = ColoringRule::constant(R2, Color::Red);
        let w = find_monochromatic(
            &all_red,
            ConfigSpec::Isosceles { base: 1.3 },
            Color::Red,
            6,
            10,
            2,
            &Tolerances::default(),
        )
        .unwrap()
        .expect("constant coloring");
        assert_eq!(w.points.len(), 3);
        assert!((w.points[0].chord_to(&w.points[1]) - 1.0).abs() < 1e-12);
        assert!((w.points[0].chord_to(&w.points[2]) - 1.0).abs() < 1e-12);
        assert!((w.points[1].chord_to(&w.points[2]) - 1.3).abs() < 1e-12);
    }

    #[test]
    fn non_embeddable_configurations_are_rejected() {
        let rule = ColoringRule::constant(R2, Color::Red);
        let tol = Tolerances::default();
        assert!(find_monochromatic(&rule, ConfigSpec::Pair { a: 1.5 }, Color::Red, 4, 0, 0, &tol)
            .is_err());
        assert!(find_monochromatic(
            &rule,
            ConfigSpec::Isosceles { base: 1.415 },
            Color::Red,
            4,
            0,
            0,
            &tol
        )
        .is_err());
        let small = ColoringRule::constant(0.4, Color::Red);
        assert!(find_monochromatic(
            &small,
            ConfigSpec::Isosceles { base: 0.5 },
            Color::Red,
            4,
            0,
            0,
            &tol
        )
        .is_err());
    }

    #[test]
    fn search_is_deterministic_for_a_seed() {
        let rule = ColoringRule {
            sphere_radius: R2,
            default: Color::Blue,
            rules: vec![Rule::SignProduct {
                form1: [1.0, 0.0, 0.0],
                form2: [0.0, 1.0, 0.0],
                positive: Color::Red,
                negative: Color::Blue,
            }],
        };
        let tol = Tolerances::default();
        let a = find_monochromatic(&rule, ConfigSpec::Pair { a: 0.4 }, Color::Red, 10, 15, 31, &tol)
            .unwrap()
            .unwrap();
        let b = find_monochromatic(&rule, ConfigSpec::Pair { a: 0.4 }, Color::Red, 10, 15, 31, &tol)
            .unwrap()
            .unwrap();
        for (p, q) in a.points.iter().zip(b.points.iter()) {
            assert_eq!(p.coords(), q.coords());
        }
    }
}
