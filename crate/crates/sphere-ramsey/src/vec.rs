//! Minimal fixed-size vector and rotation types.
//!
//! Everything here works on plain `f64` triples; the sphere-aware wrappers
//! live in [`crate::geom`].

use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

/// A vector in three-space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "[f64; 3]", from = "[f64; 3]")]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Vec3) -> Vec3 {
        Vec3 {
            x: self.y * other.z - self.z * other.y,
            y: self.z * other.x - self.x * other.z,
            z: self.x * other.y - self.y * other.x,
        }
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// Unit vector in the same direction, or `None` for (near-)zero input.
    pub fn normalized(self) -> Option<Vec3> {
        let n = self.norm();
        if n < 1e-300 {
            None
        } else {
            Some(self * (1.0 / n))
        }
    }

    pub fn distance(self, other: Vec3) -> f64 {
        (self - other).norm()
    }

    /// Largest absolute component difference; handy for exact-value checks.
    pub fn max_abs_diff(self, other: Vec3) -> f64 {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }
}

impl From<Vec3> for [f64; 3] {
    fn from(v: Vec3) -> Self {
        v.to_array()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

/// A rotation of three-space, stored as an orthonormal matrix.
#[derive(Clone, Copy, Debug)]
pub struct Rotation {
    rows: [Vec3; 3],
}

impl Rotation {
    pub const IDENTITY: Rotation = Rotation {
        rows: [
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
            Vec3::new(0.0, 0.0, 1.0),
        ],
    };

    /// Composition `Rz(yaw) * Ry(pitch) * Rx(roll)`.
    pub fn from_euler(yaw: f64, pitch: f64, roll: f64) -> Rotation {
        let (sy, cy) = yaw.sin_cos();
        let (sp, cp) = pitch.sin_cos();
        let (sr, cr) = roll.sin_cos();
        Rotation {
            rows: [
                Vec3::new(cy * cp, cy * sp * sr - sy * cr, cy * sp * cr + sy * sr),
                Vec3::new(sy * cp, sy * sp * sr + cy * cr, sy * sp * cr - cy * sr),
                Vec3::new(-sp, cp * sr, cp * cr),
            ],
        }
    }

    /// Rotation from a (not necessarily unit) quaternion `(w, x, y, z)`.
    ///
    /// Returns `None` when the quaternion is too close to zero to normalize.
    pub fn from_quaternion(w: f64, x: f64, y: f64, z: f64) -> Option<Rotation> {
        let n2 = w * w + x * x + y * y + z * z;
        if n2 < 1e-30 {
            return None;
        }
        let s = 2.0 / n2;
        Some(Rotation {
            rows: [
                Vec3::new(
                    1.0 - s * (y * y + z * z),
                    s * (x * y - w * z),
                    s * (x * z + w * y),
                ),
                Vec3::new(
                    s * (x * y + w * z),
                    1.0 - s * (x * x + z * z),
                    s * (y * z - w * x),
                ),
                Vec3::new(
                    s * (x * z - w * y),
                    s * (y * z + w * x),
                    1.0 - s * (x * x + y * y),
                ),
            ],
        })
    }

    /// Right-handed rotation by `angle` about the unit vector `axis`.
    pub fn about_axis(axis: Vec3, angle: f64) -> Rotation {
        let (s, c) = angle.sin_cos();
        let t = 1.0 - c;
        let (x, y, z) = (axis.x, axis.y, axis.z);
        Rotation {
            rows: [
                Vec3::new(t * x * x + c, t * x * y - s * z, t * x * z + s * y),
                Vec3::new(t * x * y + s * z, t * y * y + c, t * y * z - s * x),
                Vec3::new(t * x * z - s * y, t * y * z + s * x, t * z * z + c),
            ],
        }
    }

    pub fn apply(&self, v: Vec3) -> Vec3 {
        Vec3::new(self.rows[0].dot(v), self.rows[1].dot(v), self.rows[2].dot(v))
    }

    /// The images of the three coordinate axes.
    pub fn columns(&self) -> [Vec3; 3] {
        [
            Vec3::new(self.rows[0].x, self.rows[1].x, self.rows[2].x),
            Vec3::new(self.rows[0].y, self.rows[1].y, self.rows[2].y),
            Vec3::new(self.rows[0].z, self.rows[1].z, self.rows[2].z),
        ]
    }

    pub fn transpose(&self) -> Rotation {
        let c = self.columns();
        Rotation { rows: c }
    }
}

/// A point of four-space. Only used for the equatorial-lift distance checks;
/// nothing else in the crate leaves three dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "[f64; 4]", from = "[f64; 4]")]
pub struct Vec4(pub [f64; 4]);

impl Vec4 {
    pub fn norm(self) -> f64 {
        self.0.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn distance(self, other: Vec4) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

impl From<[f64; 4]> for Vec4 {
    fn from(a: [f64; 4]) -> Self {
        Vec4(a)
    }
}

impl From<Vec4> for [f64; 4] {
    fn from(v: Vec4) -> Self {
        v.0
    }
}
