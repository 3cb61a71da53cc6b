//! Points, vectors and the two ambient maps: reflection across the plane and
//! inversion in the unit sphere.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::ops::{Add, AddAssign, Div, Index, Mul, Neg, Sub, SubAssign};

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

pub type Point3 = Vec3;

pub const E1: Vec3 = Vec3 { x: 1.0, y: 0.0, z: 0.0 };
pub const E2: Vec3 = Vec3 { x: 0.0, y: 1.0, z: 0.0 };
pub const E3: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 1.0 };

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }
    pub fn from_array(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }
    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }
    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }
    pub fn norm2(self) -> f64 {
        self.dot(self)
    }
    pub fn norm(self) -> f64 {
        self.norm2().sqrt()
    }
    /// Unit vector in the same direction; the zero vector maps to itself.
    pub fn normalized(self) -> Vec3 {
        let n = self.norm();
        if n > 0.0 {
            self / n
        } else {
            self
        }
    }
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
    pub fn dist(self, o: Vec3) -> f64 {
        (self - o).norm()
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
impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}
impl Div<f64> for Vec3 {
    type Output = Vec3;
    fn div(self, s: f64) -> Vec3 {
        Vec3::new(self.x / s, self.y / s, self.z / s)
    }
}
impl AddAssign for Vec3 {
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}
impl SubAssign for Vec3 {
    fn sub_assign(&mut self, o: Vec3) {
        *self = *self - o;
    }
}
impl Index<usize> for Vec3 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        match i {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("Vec3 index {i} out of range"),
        }
    }
}

/// Row-major 3×3 matrix, used for gradients of test vector fields.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    pub const ZERO: Mat3 = Mat3([[0.0; 3]; 3]);
    pub fn identity() -> Mat3 {
        Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    }
    pub fn scaled(self, s: f64) -> Mat3 {
        let mut m = self.0;
        for row in m.iter_mut() {
            for v in row.iter_mut() {
                *v *= s;
            }
        }
        Mat3(m)
    }
    /// a ⊗ b, entry (i, j) = a_i b_j.
    pub fn outer(a: Vec3, b: Vec3) -> Mat3 {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = a[i] * b[j];
            }
        }
        Mat3(m)
    }
    pub fn mul_vec(self, v: Vec3) -> Vec3 {
        let r = |i: usize| self.0[i][0] * v.x + self.0[i][1] * v.y + self.0[i][2] * v.z;
        Vec3::new(r(0), r(1), r(2))
    }
    pub fn trace(self) -> f64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }
    /// n · (M n): the normal-normal component of a gradient.
    pub fn quad(self, n: Vec3) -> f64 {
        n.dot(self.mul_vec(n))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ball3 {
    pub center: Point3,
    pub radius: f64,
}

impl Ball3 {
    pub fn new(center: Point3, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !center.is_finite() {
            return Err(Error::Domain(format!("ball radius must be positive, got {radius}")));
        }
        Ok(Ball3 { center, radius })
    }
    pub fn contains(&self, x: Point3) -> bool {
        (x - self.center).norm() < self.radius
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AmbientKind {
    HalfSpace,
    UnitBall,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmbientSpace {
    pub kind: AmbientKind,
    pub theta: f64,
}

impl AmbientSpace {
    pub fn new(kind: AmbientKind, theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta < std::f64::consts::PI) {
            return Err(Error::Domain(format!("contact angle must lie in (0, pi), got {theta}")));
        }
        Ok(AmbientSpace { kind, theta })
    }
    pub fn half_space(theta: f64) -> Result<Self> {
        Self::new(AmbientKind::HalfSpace, theta)
    }
    pub fn unit_ball(theta: f64) -> Result<Self> {
        Self::new(AmbientKind::UnitBall, theta)
    }
    /// Outward normal of the ambient at a point of the wetting surface.
    pub fn wetting_normal(&self, x: Point3) -> Vec3 {
        match self.kind {
            AmbientKind::HalfSpace => -E3,
            AmbientKind::UnitBall => x.normalized(),
        }
    }
    /// Distance outside the closed ambient (0 when inside).
    pub fn outside_distance(&self, x: Point3) -> f64 {
        match self.kind {
            AmbientKind::HalfSpace => (-x.z).max(0.0),
            AmbientKind::UnitBall => (x.norm() - 1.0).max(0.0),
        }
    }
    /// Distance to the wetting surface.
    pub fn wetting_distance(&self, x: Point3) -> f64 {
        match self.kind {
            AmbientKind::HalfSpace => x.z.abs(),
            AmbientKind::UnitBall => (x.norm() - 1.0).abs(),
        }
    }
}

pub fn reflect_halfspace(x: Point3) -> Point3 {
    Vec3::new(x.x, x.y, -x.z)
}

/// ξ(x) = x/|x|².
pub fn sphere_inversion(x: Point3) -> Result<Point3> {
    let n2 = x.norm2();
    if !(n2.sqrt() >= 1e-12) {
        return Err(Error::Domain(format!("sphere inversion of a point with |x| = {:e}", n2.sqrt())));
    }
    Ok(x / n2)
}

pub fn hat_ball(x0: Point3, r: f64, ambient: &AmbientSpace) -> Result<Ball3> {
    match ambient.kind {
        AmbientKind::HalfSpace => Ball3::new(reflect_halfspace(x0), r),
        AmbientKind::UnitBall => {
            let p = x0.norm();
            if p < 1e-12 {
                return Err(Error::NoHatBall);
            }
            Ball3::new(sphere_inversion(x0)?, r / p)
        }
    }
}

/// Splits v into its normal part (v·ν)ν and the tangential remainder.
pub fn normal_split(v: Vec3, unit_normal: Vec3) -> Result<(Vec3, Vec3)> {
    let n = unit_normal.norm();
    if (n - 1.0).abs() > 1e-12 {
        return Err(Error::Contract(format!("normal has length {n}, expected 1")));
    }
    let perp = unit_normal * v.dot(unit_normal);
    Ok((perp, v - perp))
}

/// 2|¼H + v⊥|² − (⅛|H|² + 2|v⊥|² + H·v).
pub fn quarter_h_identity_residual(h: Vec3, v: Vec3, unit_normal: Vec3) -> Result<f64> {
    let (perp, _) = normal_split(v, unit_normal)?;
    let lhs = 2.0 * (h * 0.25 + perp).norm2();
    let rhs = 0.125 * h.norm2() + 2.0 * perp.norm2() + h.dot(v);
    Ok(lhs - rhs)
}

impl std::ops::Add for Mat3 {
    type Output = Mat3;
    fn add(self, o: Mat3) -> Mat3 {
        let mut m = self.0;
        for (row, orow) in m.iter_mut().zip(o.0) {
            for (v, w) in row.iter_mut().zip(orow) {
                *v += w;
            }
        }
        Mat3(m)
    }
}
