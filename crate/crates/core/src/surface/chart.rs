use crate::geom::{AmbientSpace, Point3, Vec3};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DomainKind {
    /// Unit disk in Cartesian (u, v); sampled at polar nodes.
    PolarDisk,
    Rectangle { u0: f64, u1: f64, v0: f64, v1: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FdScheme {
    Central,
    /// One Richardson step on the central stencils (fourth order).
    Richardson,
}

/// Pointwise extrinsic data supplied by analytic charts.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalCurvature {
    pub normal: Vec3,
    pub mean_curvature: Vec3,
    pub gauss: f64,
    pub second_form_norm2: f64,
}

/// Positions and partial derivatives of F at one parameter point.
#[derive(Clone, Copy, Debug)]
pub struct Jet {
    pub f: Point3,
    pub fu: Vec3,
    pub fv: Vec3,
    pub fuu: Vec3,
    pub fuv: Vec3,
    pub fvv: Vec3,
}

/// Full local geometry: frame, metric determinant and curvature.
#[derive(Clone, Copy, Debug)]
pub struct LocalGeometry {
    pub point: Point3,
    pub fu: Vec3,
    pub fv: Vec3,
    pub det_g: f64,
    pub curvature: LocalCurvature,
}

pub type MapFn = Arc<dyn Fn(f64, f64) -> Point3 + Send + Sync>;
pub type CurvatureFn = Arc<dyn Fn(f64, f64) -> LocalCurvature + Send + Sync>;

#[derive(Clone)]
pub struct ParametricChart {
    pub domain: DomainKind,
    pub ambient: AmbientSpace,
    map: MapFn,
    analytic: Option<CurvatureFn>,
    pub fd_step: f64,
    pub fd_scheme: FdScheme,
    pub generator: String,
    pub params: Vec<(String, f64)>,
    /// A point of the wetting sphere known to have winding number 0.
    pub exterior_hint: Option<Point3>,
}

impl fmt::Debug for ParametricChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParametricChart")
            .field("domain", &self.domain)
            .field("ambient", &self.ambient)
            .field("generator", &self.generator)
            .field("params", &self.params)
            .field("analytic", &self.analytic.is_some())
            .field("fd_step", &self.fd_step)
            .finish()
    }
}

impl ParametricChart {
    pub fn new(domain: DomainKind, ambient: AmbientSpace, map: MapFn) -> Self {
        ParametricChart {
            domain,
            ambient,
            map,
            analytic: None,
            fd_step: 1e-4,
            fd_scheme: FdScheme::Central,
            generator: "custom".to_string(),
            params: Vec::new(),
            exterior_hint: None,
        }
    }

    pub fn with_analytic(mut self, f: CurvatureFn) -> Self {
        self.analytic = Some(f);
        self
    }

    /// Same map with the analytic callbacks removed, so every quantity comes from differencing.
    pub fn without_analytic(&self) -> Self {
        let mut c = self.clone();
        c.analytic = None;
        c
    }

    pub fn with_fd(mut self, step: f64, scheme: FdScheme) -> Self {
        self.fd_step = step;
        self.fd_scheme = scheme;
        self
    }

    pub fn named(mut self, name: &str, params: Vec<(String, f64)>) -> Self {
        self.generator = name.to_string();
        self.params = params;
        self
    }

    pub fn has_analytic(&self) -> bool {
        self.analytic.is_some()
    }

    pub fn map(&self) -> MapFn {
        self.map.clone()
    }

    pub fn eval(&self, u: f64, v: f64) -> Point3 {
        (self.map)(u, v)
    }

    pub fn param(&self, key: &str) -> Option<f64> {
        self.params.iter().find(|(k, _)| k == key).map(|p| p.1)
    }

    pub fn jet(&self, u: f64, v: f64) -> Jet {
        let h = self.fd_step;
        let f = |a: f64, b: f64| self.eval(u + a, v + b);
        let f0 = f(0.0, 0.0);
        let central = |h: f64| {
            let (pu, mu, pv, mv) = (f(h, 0.0), f(-h, 0.0), f(0.0, h), f(0.0, -h));
            let fu = (pu - mu) / (2.0 * h);
            let fv = (pv - mv) / (2.0 * h);
            let fuu = (pu - f0 * 2.0 + mu) / (h * h);
            let fvv = (pv - f0 * 2.0 + mv) / (h * h);
            let fuv = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h);
            [fu, fv, fuu, fuv, fvv]
        };
        let d = match self.fd_scheme {
            FdScheme::Central => central(h),
            FdScheme::Richardson => {
                let a = central(h);
                let b = central(2.0 * h);
                let mut out = a;
                for i in 0..5 {
                    out[i] = (a[i] * 4.0 - b[i]) / 3.0;
                }
                out
            }
        };
        Jet { f: f0, fu: d[0], fv: d[1], fuu: d[2], fuv: d[3], fvv: d[4] }
    }

    /// First derivatives only.
    pub fn tangent(&self, u: f64, v: f64) -> (Vec3, Vec3) {
        let h = self.fd_step;
        let f = |a: f64, b: f64| self.eval(u + a, v + b);
        let c = |h: f64| ((f(h, 0.0) - f(-h, 0.0)) / (2.0 * h), (f(0.0, h) - f(0.0, -h)) / (2.0 * h));
        match self.fd_scheme {
            FdScheme::Central => c(h),
            FdScheme::Richardson => {
                let (a, b) = c(h);
                let (a2, b2) = c(2.0 * h);
                ((a * 4.0 - a2) / 3.0, (b * 4.0 - b2) / 3.0)
            }
        }
    }

    /// Unit normal at (u, v): analytic when available, else the normalized cross product.
    pub fn normal(&self, u: f64, v: f64) -> Vec3 {
        match &self.analytic {
            Some(a) => a(u, v).normal,
            None => {
                let (fu, fv) = self.tangent(u, v);
                fu.cross(fv).normalized()
            }
        }
    }

    pub fn local_geometry(&self, u: f64, v: f64) -> LocalGeometry {
        if let Some(a) = &self.analytic {
            let (fu, fv) = self.tangent(u, v);
            let c = fu.cross(fv);
            return LocalGeometry { point: self.eval(u, v), fu, fv, det_g: c.norm2(), curvature: a(u, v) };
        }
        let j = self.jet(u, v);
        let (e, f, g) = (j.fu.dot(j.fu), j.fu.dot(j.fv), j.fv.dot(j.fv));
        let det = e * g - f * f;
        let n = j.fu.cross(j.fv).normalized();
        let (l, m, nn) = (j.fuu.dot(n), j.fuv.dot(n), j.fvv.dot(n));
        // shape operator S = g^{-1} II
        let inv = 1.0 / det;
        let s11 = inv * (g * l - f * m);
        let s12 = inv * (g * m - f * nn);
        let s21 = inv * (e * m - f * l);
        let s22 = inv * (e * nn - f * m);
        let h = s11 + s22;
        let k = (l * nn - m * m) * inv;
        let a2 = s11 * s11 + 2.0 * s12 * s21 + s22 * s22;
        LocalGeometry {
            point: j.f,
            fu: j.fu,
            fv: j.fv,
            det_g: det,
            curvature: LocalCurvature { normal: n, mean_curvature: n * h, gauss: k, second_form_norm2: a2 },
        }
    }
}
