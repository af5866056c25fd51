//! Sampling verification that a coloring admits no monochromatic orthogonal
//! triple.
//!
//! Two regimes are combined. Random sampling draws rotations uniformly (via
//! normalized Gaussian quaternions) and checks the rotated coordinate
//! triple; this explores the generic strata. The structured sweep walks the
//! measure-zero strata a random draw never hits: triples with one point
//! exactly on the `y = 0` or `z = 0` circle, plus all signed permutation
//! triples of the coordinate axes. Structured points carry strata hints so
//! their colors are exact rather than tolerance-band artifacts.
//!
//! Every sampled triple also feeds the cross-term identity
//! `y₁z₁ + y₂z₂ + y₃z₃ = 0` (rows and columns of a rotation matrix are
//! orthonormal, and the sum is `r²` times one off-diagonal entry of `R·Rᵀ`);
//! the worst residual is reported as a sanity check on triple generation.
//!
//! The random sweep derives one RNG stream per sample index, so the parallel
//! and sequential paths visit identical triples and the reduction (max
//! residual, lowest-index counterexample) is order-independent.

use super::{triple_from_rotation, Color, ColoringRule, StrataHint, TripleWitness};
use crate::geom::SpherePoint;
use crate::tol::Tolerances;
use crate::vec::{Rotation, Vec3};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

/// Outcome of a verification sweep.
#[derive(Clone, Debug, Serialize)]
pub struct ChiVerification {
    pub pass: bool,
    /// Random triples checked.
    pub samples: u64,
    /// Structured (exact-strata) triples checked.
    pub boundary_triples: u64,
    pub monochromatic_count: u64,
    pub worst_identity_residual: f64,
    /// Lowest-index monochromatic triple, if any was found.
    pub counterexample: Option<TripleWitness>,
}

fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&index.to_le_bytes());
    key[16] = 0x9e;
    ChaCha8Rng::from_seed(key)
}

fn random_rotation(rng: &mut ChaCha8Rng) -> Rotation {
    loop {
        let w: f64 = rng.sample(StandardNormal);
        let x: f64 = rng.sample(StandardNormal);
        let y: f64 = rng.sample(StandardNormal);
        let z: f64 = rng.sample(StandardNormal);
        if let Some(rot) = Rotation::from_quaternion(w, x, y, z) {
            return rot;
        }
    }
}

#[derive(Clone, Debug)]
struct Acc {
    worst: f64,
    mono_count: u64,
    first_mono: Option<(u64, TripleWitness)>,
}

impl Acc {
    fn empty() -> Acc {
        Acc { worst: 0.0, mono_count: 0, first_mono: None }
    }

    fn merge(mut self, other: Acc) -> Acc {
        self.worst = self.worst.max(other.worst);
        self.mono_count += other.mono_count;
        self.first_mono = match (self.first_mono.take(), other.first_mono) {
            (None, b) => b,
            (a, None) => a,
            (Some(a), Some(b)) => Some(if a.0 <= b.0 { a } else { b }),
        };
        self
    }
}

fn check_triple(
    rule: &ColoringRule,
    triple: &[SpherePoint; 3],
    hints: [Option<&StrataHint>; 3],
    tol: &Tolerances,
) -> (f64, Option<TripleWitness>) {
    let residual: f64 = triple
        .iter()
        .map(|p| p.coords().y * p.coords().z)
        .sum::<f64>()
        .abs();
    let colors: Vec<Color> = triple
        .iter()
        .zip(hints)
        .map(|(p, h)| rule.color(p, h, tol).expect("triple point lies on the coloring sphere"))
        .collect();
    let witness = if colors[0] == colors[1] && colors[1] == colors[2] {
        let distances: Vec<f64> = [(0usize, 1usize), (0, 2), (1, 2)]
            .iter()
            .map(|&(i, j)| triple[i].chord_to(&triple[j]))
            .collect();
        Some(TripleWitness { points: triple.to_vec(), color: colors[0], residuals: distances })
    } else {
        None
    };
    (residual, witness)
}

fn random_sample(rule: &ColoringRule, seed: u64, index: u64, tol: &Tolerances) -> Acc {
    let mut rng = stream(seed, index);
    let rot = random_rotation(&mut rng);
    let triple = triple_from_rotation(&rot, rule.sphere_radius);
    let (residual, witness) = check_triple(rule, &triple, [None, None, None], tol);
    Acc {
        worst: residual,
        mono_count: witness.is_some() as u64,
        first_mono: witness.map(|w| (index, w)),
    }
}

fn random_sweep_seq(rule: &ColoringRule, samples: u64, seed: u64, tol: &Tolerances) -> Acc {
    (0..samples).fold(Acc::empty(), |acc, i| acc.merge(random_sample(rule, seed, i, tol)))
}

#[cfg(feature = "parallel")]
fn random_sweep(rule: &ColoringRule, samples: u64, seed: u64, tol: &Tolerances) -> Acc {
    use rayon::prelude::*;
    (0..samples)
        .into_par_iter()
        .map(|i| random_sample(rule, seed, i, tol))
        .reduce(Acc::empty, Acc::merge)
}

#[cfg(not(feature = "parallel"))]
fn random_sweep(rule: &ColoringRule, samples: u64, seed: u64, tol: &Tolerances) -> Acc {
    random_sweep_seq(rule, samples, seed, tol)
}

const Y_FORM: [f64; 3] = [0.0, 1.0, 0.0];
const Z_FORM: [f64; 3] = [0.0, 0.0, 1.0];

/// Triples with the first point exactly on a coordinate circle, the other
/// two spanning its orthogonal complement at an arbitrary phase.
fn boundary_triple(
    radius: f64,
    family_z_zero: bool,
    phi: f64,
    psi: f64,
) -> ([SpherePoint; 3], StrataHint) {
    let (sp, cp) = phi.sin_cos();
    let (ss, cs) = psi.sin_cos();
    let (d1, u, v, hint) = if family_z_zero {
        (
            Vec3::new(radius * cp, radius * sp, 0.0),
            Vec3::new(-radius * sp, radius * cp, 0.0),
            Vec3::new(0.0, 0.0, radius),
            StrataHint::new(vec![Z_FORM]),
        )
    } else {
        (
            Vec3::new(radius * cp, 0.0, radius * sp),
            Vec3::new(-radius * sp, 0.0, radius * cp),
            Vec3::new(0.0, radius, 0.0),
            StrataHint::new(vec![Y_FORM]),
        )
    };
    let d2 = u * cs + v * ss;
    let d3 = u * -ss + v * cs;
    let mk = |c: Vec3| SpherePoint::snapped(c, radius).expect("boundary point is nonzero");
    ([mk(d1), mk(d2), mk(d3)], hint)
}

/// All signed permutations of the scaled coordinate axes.
fn axis_triples(radius: f64) -> Vec<[SpherePoint; 3]> {
    let axes = [
        Vec3::new(1.0, 0.0, 0.0),
        Vec3::new(0.0, 1.0, 0.0),
        Vec3::new(0.0, 0.0, 1.0),
    ];
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::with_capacity(48);
    for perm in perms {
        for signs in 0..8u8 {
            let triple = std::array::from_fn(|i| {
                let s = if signs >> i & 1 == 1 { -radius } else { radius };
                SpherePoint::snapped(axes[perm[i]] * s, radius).expect("axis point")
            });
            out.push(triple);
        }
    }
    out
}

/// Hint for an exactly-placed point: the coordinate forms that vanish at it.
fn exact_hint(p: &SpherePoint) -> StrataHint {
    let mut zero = Vec::new();
    if p.coords().y == 0.0 {
        zero.push(Y_FORM);
    }
    if p.coords().z == 0.0 {
        zero.push(Z_FORM);
    }
    StrataHint::new(zero)
}

fn boundary_sweep(rule: &ColoringRule, tol: &Tolerances) -> (u64, Acc) {
    const STEPS: u64 = 100;
    let r = rule.sphere_radius;
    let mut acc = Acc::empty();
    let mut count = 0u64;
    for family_z_zero in [false, true] {
        for i in 0..STEPS {
            let phi = 2.0 * std::f64::consts::PI * i as f64 / STEPS as f64;
            for j in 0..STEPS {
                let psi = 2.0 * std::f64::consts::PI * j as f64 / STEPS as f64;
                let (triple, hint) = boundary_triple(r, family_z_zero, phi, psi);
                let (residual, witness) =
                    check_triple(rule, &triple, [Some(&hint), None, None], tol);
                acc = acc.merge(Acc {
                    worst: residual,
                    mono_count: witness.is_some() as u64,
                    first_mono: witness.map(|w| (u64::MAX, w)),
                });
                count += 1;
            }
        }
    }
    for triple in axis_triples(r) {
        let hints = [exact_hint(&triple[0]), exact_hint(&triple[1]), exact_hint(&triple[2])];
        let (residual, witness) = check_triple(
            rule,
            &triple,
            [Some(&hints[0]), Some(&hints[1]), Some(&hints[2])],
            tol,
        );
        acc = acc.merge(Acc {
            worst: residual,
            mono_count: witness.is_some() as u64,
            first_mono: witness.map(|w| (u64::MAX, w)),
        });
        count += 1;
    }
    (count, acc)
}

fn finish(samples: u64, boundary: u64, acc: Acc, tol: &Tolerances) -> ChiVerification {
    ChiVerification {
        pass: acc.mono_count == 0 && acc.worst <= tol.sphere,
        samples,
        boundary_triples: boundary,
        monochromatic_count: acc.mono_count,
        worst_identity_residual: acc.worst,
        counterexample: acc.first_mono.map(|(_, w)| w),
    }
}

/// Random sweep only, for an arbitrary coloring. The structured strata sweep
/// is specific to colorings built on the coordinate planes, so it is not
/// included here.
pub fn verify_coloring(
    rule: &ColoringRule,
    samples: u64,
    seed: u64,
    tol: &Tolerances,
) -> ChiVerification {
    let acc = random_sweep(rule, samples, seed, tol);
    finish(samples, 0, acc, tol)
}

/// Full verification of `chi`: `samples` random triples plus the structured
/// boundary sweep. `samples = 0` runs the structured sweep alone.
pub fn verify_chi(samples: u64, seed: u64, tol: &Tolerances) -> ChiVerification {
    let rule = ColoringRule::chi();
    let acc = random_sweep(&rule, samples, seed, tol);
    let (boundary, bacc) = boundary_sweep(&rule, tol);
    finish(samples, boundary, acc.merge(bacc), tol)
}

/// Sequential twin of [`verify_chi`], compiled regardless of features; used
/// to compare the parallel and fallback paths.
pub fn verify_chi_seq(samples: u64, seed: u64, tol: &Tolerances) -> ChiVerification {
    let rule = ColoringRule::chi();
    let acc = random_sweep_seq(&rule, samples, seed, tol);
    let (boundary, bacc) = boundary_sweep(&rule, tol);
    finish(samples, boundary, acc.merge(bacc), tol)
}
