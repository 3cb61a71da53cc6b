//! The winding-weighted measure η on the wetting surface.

mod curve;
pub mod fan;
mod sphere;

pub use curve::{oriented_area, rotation_index, winding_number, CurveSample, OrientedCurve, Wetting};
pub use sphere::icosphere;

use crate::error::{Error, Result};
use crate::geom::{AmbientKind, Point3, Vec3};
use crate::quadrature::{gauss_legendre_unit, stable_sum, NeumaierSum};
use crate::surface::SampledSurface;
use rayon::prelude::*;
use std::f64::consts::PI;
use std::io::{BufRead, Write};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EtaRoute {
    /// Signed-triangle sweep with Gauss–Legendre nodes; exact polygon geometry.
    Fan,
    /// Midpoint grid (plane) or icosahedral nodes (sphere) weighted by winding numbers.
    Grid,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub plane_resolution: usize,
    pub inflation: f64,
    pub sphere_level: u32,
    pub fan_nodes: usize,
    pub radial_nodes: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { plane_resolution: 512, inflation: 0.1, sphere_level: 7, fan_nodes: 6, radial_nodes: 12 }
    }
}

#[derive(Clone, Debug)]
pub struct WettedRegion {
    pub curves: Vec<OrientedCurve>,
    pub wetting: Wetting,
    pub grid: GridSpec,
    pub route: EtaRoute,
    /// Point of the wetting sphere with known winding number.
    pub reference: Option<(Point3, i32)>,
    gl: Vec<(f64, f64)>,
    gl_r: Vec<(f64, f64)>,
}

impl WettedRegion {
    pub fn new(curves: Vec<OrientedCurve>) -> Result<Self> {
        let wetting = curves.first().map(|c| c.wetting).ok_or_else(|| Error::Contract("no curves".into()))?;
        if curves.iter().any(|c| c.wetting != wetting) {
            return Err(Error::Contract("curves live on different wetting surfaces".into()));
        }
        let reference = curves.iter().find_map(|c| c.exterior_hint).map(|h| (h.normalized(), 0));
        let grid = GridSpec::default();
        Ok(WettedRegion {
            curves,
            wetting,
            grid,
            route: EtaRoute::Fan,
            reference,
            gl: gauss_legendre_unit(grid.fan_nodes),
            gl_r: gauss_legendre_unit(grid.radial_nodes),
        })
    }

    /// Region bounded by the boundary image of a sampled surface.
    pub fn from_surface(s: &SampledSurface) -> Result<Self> {
        let wetting = match s.ambient.kind {
            AmbientKind::HalfSpace => Wetting::Plane,
            AmbientKind::UnitBall => Wetting::Sphere,
        };
        let samples = s
            .boundary
            .iter()
            .map(|b| CurveSample { point: b.point, tangent: b.tangent, weight: b.arc_weight })
            .collect();
        let mut c = OrientedCurve::from_samples(samples, wetting, true);
        c.exterior_hint = s.meta.exterior_hint;
        Self::new(vec![c])
    }

    pub fn with_grid(mut self, grid: GridSpec) -> Self {
        self.grid = grid;
        self.gl = gauss_legendre_unit(grid.fan_nodes);
        self.gl_r = gauss_legendre_unit(grid.radial_nodes);
        self
    }

    pub fn with_route(mut self, route: EtaRoute) -> Self {
        self.route = route;
        self
    }

    pub fn with_reference(mut self, point: Point3, wind: i32) -> Self {
        self.reference = Some((point.normalized(), wind));
        self
    }

    fn plane_polys(&self) -> Vec<Vec<[f64; 2]>> {
        self.curves.iter().map(|c| c.vertices.iter().map(|v| [v.x, v.y]).collect()).collect()
    }

    fn sphere_polys(&self) -> Vec<Vec<Point3>> {
        self.curves.iter().map(|c| c.vertices.iter().map(|v| v.normalized()).collect()).collect()
    }

    fn sphere_reference(&self) -> (Point3, i32) {
        self.reference.unwrap_or_else(|| {
            let mut b = Vec3::ZERO;
            for c in &self.curves {
                for v in &c.vertices {
                    b += *v;
                }
            }
            let r = if b.norm() > 1e-9 { -b.normalized() } else { crate::geom::E3 };
            (r, 0)
        })
    }

    /// Winding number of x with respect to all curves.
    pub fn wind(&self, x: Point3) -> Result<i32> {
        match self.wetting {
            Wetting::Plane => self.curves.iter().map(|c| winding_number(c, x)).sum(),
            Wetting::Sphere => spherical_wind(self, x),
        }
    }

    /// Oriented area |T|.
    pub fn area(&self) -> Result<f64> {
        match self.wetting {
            Wetting::Plane => oriented_area(&self.curves),
            Wetting::Sphere => self.radial_integral(self.sphere_reference().0 * -1.0, &|b| 1.0 - b.cos(), PI),
        }
    }

    /// ∫ wind·f over the wetting surface within distance `clip` of `center`, for f radial
    /// about `center`. Plane: `cum(S) = ∫_0^S f(s) s ds` with s the in-plane distance from the
    /// projection of `center`. Sphere: `cum(B) = ∫_0^B f(β) sin β dβ` with β the angle to
    /// `center`, and `clip` an angle.
    pub fn radial_integral(&self, center: Point3, cum: &dyn Fn(f64) -> f64, clip: f64) -> Result<f64> {
        match self.wetting {
            Wetting::Plane => {
                let p = [center.x, center.y];
                Ok(stable_sum(self.plane_polys().iter().map(|v| fan::plane_radial(v, p, cum, clip, &self.gl))))
            }
            Wetting::Sphere => {
                let c = center.normalized();
                let clip = clip.min(PI);
                if clip <= 0.0 {
                    return Ok(0.0);
                }
                // a clip within 1e−4 of π only removes a tiny cap about −c, whose winding is
                // wind(−c); the clipped fan is ill-conditioned there
                let near_full = clip > PI - 1e-4;
                let fan_clip = if near_full { PI } else { clip };
                let fan = stable_sum(self.sphere_polys().iter().map(|v| fan::sphere_radial(v, c, cum, fan_clip, &self.gl)));
                let w = self.wind_near(-c)? as f64;
                let tail = if near_full { w * 2.0 * PI * (cum(PI) - cum(clip)) } else { 0.0 };
                Ok(fan + w * 2.0 * PI * cum(fan_clip) - tail)
            }
        }
    }

    /// Winding number at x, or at a nearby point when x sits on the curve or on the great
    /// circle of an edge.
    fn wind_near(&self, x: Point3) -> Result<i32> {
        let first = match spherical_wind(self, x) {
            Ok(w) => return Ok(w),
            Err(e @ (Error::UndefinedWinding { .. } | Error::Geometry(_))) => e,
            Err(e) => return Err(e),
        };
        let t1 = if x.cross(crate::geom::E1).norm() > 0.5 { crate::geom::E1 } else { crate::geom::E2 };
        let t1 = (t1 - x * t1.dot(x)).normalized();
        let t2 = x.cross(t1);
        for (a, b) in [(1.0, 0.0), (0.6, 0.8), (-0.28, 0.96)] {
            if let Ok(w) = spherical_wind(self, (x + (t1 * a + t2 * b) * 1e-6).normalized()) {
                return Ok(w);
            }
        }
        Err(first)
    }

    /// Fan-route integral of a general f, polar about `center`, with radial breakpoints
    /// (distances in the plane, angles on the sphere).
    pub fn fan_integral(&self, f: &(dyn Fn(Point3) -> f64 + Sync), center: Option<Point3>, breaks: &[f64]) -> Result<f64> {
        match self.wetting {
            Wetting::Plane => {
                let polys = self.plane_polys();
                let p = center.map(|c| [c.x, c.y]).unwrap_or_else(|| {
                    let n: usize = polys.iter().map(Vec::len).sum();
                    let (sx, sy) = polys.iter().flatten().fold((0.0, 0.0), |a, v| (a.0 + v[0], a.1 + v[1]));
                    [sx / n as f64, sy / n as f64]
                });
                let g = |x: [f64; 2]| f(Vec3::new(x[0], x[1], 0.0));
                Ok(stable_sum(polys.iter().map(|v| fan::plane_general(v, p, &g, breaks, &self.gl, &self.gl_r))))
            }
            Wetting::Sphere => {
                let c = match center {
                    Some(c) => c.normalized(),
                    None => -self.sphere_reference().0,
                };
                let fan = stable_sum(
                    self.sphere_polys().iter().map(|v| fan::sphere_general(v, c, &|x| f(x), breaks, &self.gl, &self.gl_r)),
                );
                let w = self.wind_near(-c)?;
                if w == 0 {
                    return Ok(fan);
                }
                Ok(fan + w as f64 * sphere_total(f, c))
            }
        }
    }

    /// Grid-route integral (independent of the fan route).
    pub fn grid_integral(&self, f: &(dyn Fn(Point3) -> f64 + Sync)) -> Result<f64> {
        match self.wetting {
            Wetting::Plane => Ok(plane_grid(&self.plane_polys(), f, self.grid.plane_resolution, self.grid.inflation)),
            Wetting::Sphere => {
                let nodes = icosphere(self.grid.sphere_level);
                let w = 4.0 * PI / nodes.len() as f64;
                let reference = self.sphere_reference();
                let vals: Vec<f64> = nodes
                    .par_iter()
                    .map(|&x| {
                        let d = self.curves.iter().map(|c| c.distance_to(x)).fold(f64::INFINITY, f64::min);
                        if d < 1e-6 {
                            return 0.0;
                        }
                        match sphere::wind_from(&self.curves, reference, x) {
                            Ok(k) if k != 0 => k as f64 * f(x),
                            _ => 0.0,
                        }
                    })
                    .collect();
                Ok(stable_sum(vals) * w)
            }
        }
    }
}

fn sphere_total(f: &(dyn Fn(Point3) -> f64 + Sync), c: Point3) -> f64 {
    let e1 = if c.cross(crate::geom::E1).norm() > 0.5 { crate::geom::E1 } else { crate::geom::E2 };
    let e1 = (e1 - c * e1.dot(c)).normalized();
    let e2 = c.cross(e1);
    let gb = gauss_legendre_unit(64);
    let np = 128;
    let mut acc = NeumaierSum::default();
    for &(t, w) in &gb {
        let b = PI * t;
        let (sb, cb) = b.sin_cos();
        for k in 0..np {
            let (sp, cp) = (2.0 * PI * k as f64 / np as f64).sin_cos();
            acc.add(w * PI * sb * (2.0 * PI / np as f64) * f(c * cb + (e1 * cp + e2 * sp) * sb));
        }
    }
    acc.value()
}

fn plane_grid(polys: &[Vec<[f64; 2]>], f: &(dyn Fn(Point3) -> f64 + Sync), res: usize, inflation: f64) -> f64 {
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for v in polys.iter().flatten() {
        x0 = x0.min(v[0]);
        x1 = x1.max(v[0]);
        y0 = y0.min(v[1]);
        y1 = y1.max(v[1]);
    }
    let (wx, wy) = ((x1 - x0) * (1.0 + inflation), (y1 - y0) * (1.0 + inflation));
    let (cx, cy) = (0.5 * (x0 + x1), 0.5 * (y0 + y1));
    let (hx, hy) = (wx / res as f64, wy / res as f64);
    let rows: Vec<f64> = (0..res)
        .into_par_iter()
        .map(|j| {
            let y = cy - 0.5 * wy + (j as f64 + 0.5) * hy;
            // signed x-intercepts of edges crossing this row
            let mut hits: Vec<(f64, i32)> = Vec::new();
            for poly in polys {
                let n = poly.len();
                for i in 0..n {
                    let (a, b) = (poly[i], poly[(i + 1) % n]);
                    let up = a[1] <= y && b[1] > y;
                    let down = a[1] > y && b[1] <= y;
                    if up || down {
                        let t = (y - a[1]) / (b[1] - a[1]);
                        hits.push((a[0] + t * (b[0] - a[0]), if up { 1 } else { -1 }));
                    }
                }
            }
            hits.sort_by(|p, q| p.0.total_cmp(&q.0));
            let total: i32 = hits.iter().map(|h| h.1).sum();
            let mut acc = NeumaierSum::default();
            let mut k = 0;
            let mut passed = 0;
            for i in 0..res {
                let x = cx - 0.5 * wx + (i as f64 + 0.5) * hx;
                while k < hits.len() && hits[k].0 <= x {
                    passed += hits[k].1;
                    k += 1;
                }
                let near = hits.iter().any(|h| (h.0 - x).abs() < 1e-6);
                let w = total - passed;
                if w != 0 && !near {
                    acc.add(w as f64 * f(Vec3::new(x, y, 0.0)));
                }
            }
            acc.value()
        })
        .collect();
    stable_sum(rows) * hx * hy
}

/// Winding number of a point of S² with respect to the region's spherical curves.
pub fn spherical_wind(region: &WettedRegion, x: Point3) -> Result<i32> {
    if region.wetting != Wetting::Sphere {
        return Err(Error::Contract("spherical_wind needs curves on the sphere".into()));
    }
    sphere::wind_from(&region.curves, region.sphere_reference(), x)
}

/// ∫ f dη using the region's configured route.
pub fn eta_integral(region: &WettedRegion, f: &(dyn Fn(Point3) -> f64 + Sync)) -> Result<f64> {
    match region.route {
        EtaRoute::Fan => region.fan_integral(f, None, &[]),
        EtaRoute::Grid => region.grid_integral(f),
    }
}

pub const CURVE_COLUMNS: &str = "x,y,z,tx,ty,tz,w";

pub fn write_curves<W: Write>(region: &WettedRegion, mut w: W) -> Result<()> {
    use crate::surface::io::{num, push_vec};
    writeln!(w, "# format=capmono-curve-v1")?;
    writeln!(w, "# wetting={}", if region.wetting == Wetting::Plane { "plane" } else { "sphere" })?;
    if let Some((p, k)) = region.reference {
        writeln!(w, "# reference={};{};{};{k}", num(p.x), num(p.y), num(p.z))?;
    }
    writeln!(w, "{CURVE_COLUMNS}")?;
    for (i, c) in region.curves.iter().enumerate() {
        writeln!(w, "# curve={i}")?;
        for s in &c.samples {
            let mut row = Vec::with_capacity(7);
            push_vec(&mut row, s.point);
            push_vec(&mut row, s.tangent);
            row.push(num(s.weight));
            writeln!(w, "{}", row.join(","))?;
        }
    }
    Ok(())
}

pub fn read_curves<R: BufRead>(r: R) -> Result<WettedRegion> {
    let mut wetting = None;
    let mut reference = None;
    let mut curves: Vec<Vec<CurveSample>> = Vec::new();
    let mut header = false;
    for (ln, line) in r.lines().enumerate() {
        let line = line?;
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some((k, v)) = rest.trim().split_once('=') {
                match k {
                    "wetting" => {
                        wetting = Some(match v {
                            "plane" => Wetting::Plane,
                            "sphere" => Wetting::Sphere,
                            _ => return Err(Error::Parse(format!("unknown wetting '{v}'"))),
                        })
                    }
                    "reference" => {
                        let p: Vec<&str> = v.split(';').collect();
                        if p.len() != 4 {
                            return Err(Error::Parse("reference needs x;y;z;wind".into()));
                        }
                        let f = |s: &str| s.parse::<f64>().map_err(|e| Error::Parse(e.to_string()));
                        let k = p[3].parse::<i32>().map_err(|e| Error::Parse(e.to_string()))?;
                        reference = Some((Vec3::new(f(p[0])?, f(p[1])?, f(p[2])?), k));
                    }
                    "curve" => curves.push(Vec::new()),
                    _ => {}
                }
            }
            continue;
        }
        if !header {
            if line != CURVE_COLUMNS {
                return Err(Error::Parse(format!("line {}: expected header '{CURVE_COLUMNS}'", ln + 1)));
            }
            header = true;
            continue;
        }
        let v: std::result::Result<Vec<f64>, _> = line.split(',').map(str::parse::<f64>).collect();
        let v = v.map_err(|e| Error::Parse(format!("line {}: {e}", ln + 1)))?;
        if v.len() != 7 {
            return Err(Error::Parse(format!("line {}: expected 7 columns", ln + 1)));
        }
        if curves.is_empty() {
            curves.push(Vec::new());
        }
        curves.last_mut().unwrap().push(CurveSample {
            point: Vec3::new(v[0], v[1], v[2]),
            tangent: Vec3::new(v[3], v[4], v[5]),
            weight: v[6],
        });
    }
    let wetting = wetting.ok_or_else(|| Error::Parse("missing wetting metadata".into()))?;
    let curves = curves.into_iter().map(|s| OrientedCurve::from_samples(s, wetting, true)).collect();
    let mut region = WettedRegion::new(curves)?;
    region.reference = reference;
    Ok(region)
}
