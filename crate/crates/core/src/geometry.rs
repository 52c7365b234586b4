//! Geometric preprocessing: vectors, three-atom triangles and image
//! geometry relative to a conducting plate at z = 0.

use std::ops::{Add, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Distances below this many length units count as coincident.
pub const COINCIDENCE_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3(pub [f64; 3]);

impl Vec3 {
    pub const ZERO: Vec3 = Vec3([0.0; 3]);
    pub const X: Vec3 = Vec3([1.0, 0.0, 0.0]);
    pub const Y: Vec3 = Vec3([0.0, 1.0, 0.0]);
    pub const Z: Vec3 = Vec3([0.0, 0.0, 1.0]);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3([x, y, z])
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn x(self) -> f64 {
        self.0[0]
    }

    pub fn y(self) -> f64 {
        self.0[1]
    }

    pub fn z(self) -> f64 {
        self.0[2]
    }

    /// Mirror image through the plane z = 0, i.e. σ·v with σ = diag(1, 1, −1).
    pub fn reflect_z(self) -> Vec3 {
        Vec3([self.0[0], self.0[1], -self.0[2]])
    }

    pub fn is_finite(self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }
}

impl Index<usize> for Vec3 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(a: [f64; 3]) -> Self {
        Vec3(a)
    }
}

/// Three atom positions and the side lengths opposite each atom:
/// `alpha = |C − B|`, `beta = |C − A|`, `gamma = |B − A|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleGeometry {
    pub pos_a: Vec3,
    pub pos_b: Vec3,
    pub pos_c: Vec3,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl TriangleGeometry {
    pub fn new(pos_a: Vec3, pos_b: Vec3, pos_c: Vec3) -> Result<Self> {
        if !(pos_a.is_finite() && pos_b.is_finite() && pos_c.is_finite()) {
            return Err(Error::InvalidInput("non-finite atom position".into()));
        }
        let alpha = (pos_c - pos_b).norm();
        let beta = (pos_c - pos_a).norm();
        let gamma = (pos_b - pos_a).norm();
        for (name, d) in [("B–C", alpha), ("A–C", beta), ("A–B", gamma)] {
            if d < COINCIDENCE_THRESHOLD {
                return Err(Error::DegenerateGeometry(format!("atoms {name} coincide")));
            }
        }
        Ok(Self { pos_a, pos_b, pos_c, alpha, beta, gamma })
    }

    /// Equilateral triangle of side `side` in the xy-plane.
    pub fn equilateral(side: f64) -> Result<Self> {
        let h = side * 3f64.sqrt() / 2.0;
        Self::new(Vec3::ZERO, Vec3::new(side, 0.0, 0.0), Vec3::new(side / 2.0, h, 0.0))
    }

    /// Side vectors (α⃗, β⃗, γ⃗) = (C − B, C − A, B − A).
    pub fn side_vectors(&self) -> [Vec3; 3] {
        [self.pos_c - self.pos_b, self.pos_c - self.pos_a, self.pos_b - self.pos_a]
    }

    pub fn perimeter(&self) -> f64 {
        self.alpha + self.beta + self.gamma
    }
}

/// Pair geometry in front of a mirror at z = 0.
///
/// Angles are stored as sin² values only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImageGeometry {
    /// Atom–atom distance |r_B − r_A|.
    pub r: f64,
    /// Distance of B from the image of A, |r_B − σ r_A|.
    pub r_bar: f64,
    pub sin2_theta: f64,
    pub sin2_theta_bar: f64,
}

impl ImageGeometry {
    pub fn new(pos_a: Vec3, pos_b: Vec3) -> Result<Self> {
        if !(pos_a.is_finite() && pos_b.is_finite()) {
            return Err(Error::InvalidInput("non-finite atom position".into()));
        }
        for z in [pos_a.z(), pos_b.z()] {
            if z <= 0.0 {
                return Err(Error::InsideConductor { z });
            }
        }
        let direct = pos_b - pos_a;
        let image = pos_b - pos_a.reflect_z();
        let r = direct.norm();
        if r < COINCIDENCE_THRESHOLD {
            return Err(Error::DegenerateGeometry("atoms A and B coincide".into()));
        }
        let r_bar = image.norm();
        let cos2 = (direct.z() / r).powi(2);
        let cos2_bar = (image.z() / r_bar).powi(2);
        Ok(Self {
            r,
            r_bar,
            sin2_theta: (1.0 - cos2).clamp(0.0, 1.0),
            sin2_theta_bar: (1.0 - cos2_bar).clamp(0.0, 1.0),
        })
    }
}

pub fn make_triangle(pos_a: Vec3, pos_b: Vec3, pos_c: Vec3) -> Result<TriangleGeometry> {
    TriangleGeometry::new(pos_a, pos_b, pos_c)
}

pub fn image_geometry(pos_a: Vec3, pos_b: Vec3) -> Result<ImageGeometry> {
    ImageGeometry::new(pos_a, pos_b)
}

/// Rotation about `axis` (unit vector) by `angle`, Rodrigues form.
pub fn rotate(v: Vec3, axis: Vec3, angle: f64) -> Vec3 {
    let k = axis * (1.0 / axis.norm());
    let (s, c) = angle.sin_cos();
    let kxv = Vec3::new(k[1] * v[2] - k[2] * v[1], k[2] * v[0] - k[0] * v[2], k[0] * v[1] - k[1] * v[0]);
    v * c + kxv * s + k * (k.dot(v) * (1.0 - c))
}
