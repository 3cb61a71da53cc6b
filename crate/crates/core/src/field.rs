//! Closed-form test vector fields for first-variation checks.

use crate::error::{Error, Result};
use crate::geom::{AmbientKind, AmbientSpace, Mat3, Point3, Vec3, E1, E2};
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tangency {
    TangentToWetting,
    Free,
}

type FieldFn = Arc<dyn Fn(Point3) -> (Vec3, Mat3) + Send + Sync>;

/// A vector field X with its Jacobian, `jac.0[i][j] = ∂X_i/∂x_j`.
#[derive(Clone)]
pub struct TestVectorField {
    pub name: String,
    pub tangency: Tangency,
    eval: FieldFn,
    /// Centre and radii where X fails to be smooth.
    radial: Option<(Point3, Vec<f64>)>,
}

impl std::fmt::Debug for TestVectorField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TestVectorField").field("name", &self.name).field("tangency", &self.tangency).finish()
    }
}

impl TestVectorField {
    pub fn new<F>(name: &str, tangency: Tangency, eval: F) -> Self
    where
        F: Fn(Point3) -> (Vec3, Mat3) + Send + Sync + 'static,
    {
        TestVectorField { name: name.to_string(), tangency, eval: Arc::new(eval), radial: None }
    }

    pub fn zero() -> Self {
        Self::new("zero", Tangency::TangentToWetting, |_| (Vec3::ZERO, Mat3::default()))
    }

    pub fn constant(v: Vec3) -> Self {
        let t = if v.z.abs() <= 1e-15 { Tangency::TangentToWetting } else { Tangency::Free };
        Self::new("constant", t, move |_| (v, Mat3::default()))
    }

    /// X(x) = x.
    pub fn position() -> Self {
        Self::new("position", Tangency::Free, |x| (x, Mat3::identity()))
    }

    /// X(x) = e × x, tangent to every sphere about the origin and, for e = E3, to the plane.
    pub fn rotation(e: Vec3) -> Self {
        let jac = Mat3([[0.0, -e.z, e.y], [e.z, 0.0, -e.x], [-e.y, e.x, 0.0]]);
        Self::new("rotation", Tangency::Free, move |x| (e.cross(x), jac))
    }

    /// Smoothed proof field φ(|x − a|)(x − a), where φ follows
    /// (max(s, σ)⁻² − ρ⁻²)₊ with both kinks replaced by cubic Hermite blends of width w.
    pub fn smoothed_proof_field(a: Point3, sigma: f64, rho: f64, width: f64) -> Result<Self> {
        if !(sigma > 0.0 && rho > sigma + width && width > 0.0 && width < sigma) {
            return Err(Error::Domain(format!("smoothed cutoff needs 0 < w < σ < ρ − w (σ={sigma}, ρ={rho}, w={width})")));
        }
        let profile = CutoffProfile::new(sigma, rho, width);
        let t = if a.z.abs() <= 1e-15 { Tangency::TangentToWetting } else { Tangency::Free };
        let h = 0.5 * width;
        let mut f = Self::new("smoothed-proof-field", t, move |x| {
            let d = x - a;
            let s = d.norm();
            let (phi, dphi) = profile.eval(s);
            let mut jac = Mat3::identity().scaled(phi);
            if s > 0.0 {
                jac = jac + Mat3::outer(d, d).scaled(dphi / s);
            }
            (d * phi, jac)
        });
        f.radial = Some((a, vec![sigma - h, sigma + h, rho - h, rho + h]));
        Ok(f)
    }

    pub fn eval(&self, x: Point3) -> (Vec3, Mat3) {
        (self.eval)(x)
    }

    /// Centre and breakpoints of X on the wetting surface: in-plane distances, or angles about
    /// the centre's direction on the sphere.
    pub fn wetting_breaks(&self, kind: AmbientKind) -> Option<(Point3, Vec<f64>)> {
        let (c, radii) = self.radial.as_ref()?;
        let b: Vec<f64> = match kind {
            AmbientKind::HalfSpace => radii.iter().filter(|r| **r > c.z.abs()).map(|r| (r * r - c.z * c.z).sqrt()).collect(),
            AmbientKind::UnitBall => {
                let p = c.norm();
                if p < 1e-12 {
                    return None;
                }
                radii.iter().filter_map(|&r| crate::energy::sphere_cap_angle(p, r)).collect()
            }
        };
        Some((*c, b))
    }

    /// Samples the wetting surface and returns the largest normal component of X there.
    pub fn tangency_defect(&self, ambient: &AmbientSpace) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..24 {
            for j in 0..24 {
                let (u, v) = ((i as f64 + 0.5) / 24.0, (j as f64 + 0.5) / 24.0);
                let p = match ambient.kind {
                    AmbientKind::HalfSpace => (E1 * (4.0 * u - 2.0)) + (E2 * (4.0 * v - 2.0)),
                    AmbientKind::UnitBall => {
                        let (z, phi) = (2.0 * u - 1.0, 2.0 * std::f64::consts::PI * v);
                        let s = (1.0 - z * z).sqrt();
                        Vec3::new(s * phi.cos(), s * phi.sin(), z)
                    }
                };
                let n = ambient.wetting_normal(p);
                worst = worst.max(self.eval(p).0.dot(n).abs());
            }
        }
        worst
    }

    /// Errors when the field claims tangency but is not tangent within 1e−10.
    pub fn verify(&self, ambient: &AmbientSpace) -> Result<()> {
        if self.tangency == Tangency::TangentToWetting {
            let d = self.tangency_defect(ambient);
            if d > 1e-10 {
                return Err(Error::Contract(format!("field '{}' is not tangent to the wetting surface ({d:.3e})", self.name)));
            }
        }
        Ok(())
    }
}

/// Radial profile φ of the smoothed proof field.
#[derive(Clone, Copy, Debug)]
pub struct CutoffProfile {
    sigma: f64,
    rho: f64,
    width: f64,
}

impl CutoffProfile {
    pub fn new(sigma: f64, rho: f64, width: f64) -> Self {
        CutoffProfile { sigma, rho, width }
    }

    fn raw(&self, s: f64) -> (f64, f64) {
        if s <= self.sigma {
            (self.sigma.powi(-2) - self.rho.powi(-2), 0.0)
        } else if s < self.rho {
            (s.powi(-2) - self.rho.powi(-2), -2.0 * s.powi(-3))
        } else {
            (0.0, 0.0)
        }
    }

    /// (φ(s), φ'(s)).
    pub fn eval(&self, s: f64) -> (f64, f64) {
        let h = 0.5 * self.width;
        for knot in [self.sigma, self.rho] {
            let (s0, s1) = (knot - h, knot + h);
            if s > s0 && s < s1 {
                let (y0, d0) = self.raw(s0);
                let (y1, d1) = self.raw(s1);
                return hermite(s0, s1, y0, d0, y1, d1, s);
            }
        }
        self.raw(s)
    }
}

fn hermite(s0: f64, s1: f64, y0: f64, d0: f64, y1: f64, d1: f64, s: f64) -> (f64, f64) {
    let l = s1 - s0;
    let t = (s - s0) / l;
    let (t2, t3) = (t * t, t * t * t);
    let v = (2.0 * t3 - 3.0 * t2 + 1.0) * y0 + (t3 - 2.0 * t2 + t) * l * d0 + (-2.0 * t3 + 3.0 * t2) * y1 + (t3 - t2) * l * d1;
    let dv = ((6.0 * t2 - 6.0 * t) * y0 + (3.0 * t2 - 4.0 * t + 1.0) * l * d0 + (-6.0 * t2 + 6.0 * t) * y1 + (3.0 * t2 - 2.0 * t) * l * d1) / l;
    (v, dv)
}
