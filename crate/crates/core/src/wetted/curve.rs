use crate::error::{Error, Result};
use crate::geom::{Point3, Vec3, E1, E2, E3};
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Wetting {
    Plane,
    Sphere,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveSample {
    pub point: Point3,
    pub tangent: Vec3,
    pub weight: f64,
}

/// Closed or open curve on the wetting surface. `samples` carry the quadrature data; the
/// polyline through `vertices` is the geometric curve used for winding numbers.
#[derive(Clone, Debug, PartialEq)]
pub struct OrientedCurve {
    pub samples: Vec<CurveSample>,
    pub vertices: Vec<Point3>,
    pub wetting: Wetting,
    pub closed: bool,
    /// Point of the wetting sphere with winding number 0, if known.
    pub exterior_hint: Option<Point3>,
}

impl OrientedCurve {
    pub fn from_samples(samples: Vec<CurveSample>, wetting: Wetting, closed: bool) -> Self {
        let vertices = samples.iter().map(|s| s.point).collect();
        OrientedCurve { samples, vertices, wetting, closed, exterior_hint: None }
    }

    /// Closed planar polygon; each edge carries `per_edge` midpoint samples.
    pub fn polygon(vertices: &[[f64; 2]], per_edge: usize) -> Self {
        let n = vertices.len();
        let per_edge = per_edge.max(1);
        let mut samples = Vec::with_capacity(n * per_edge);
        for i in 0..n {
            let a = Vec3::new(vertices[i][0], vertices[i][1], 0.0);
            let b = Vec3::new(vertices[(i + 1) % n][0], vertices[(i + 1) % n][1], 0.0);
            let len = (b - a).norm();
            if len == 0.0 {
                continue;
            }
            let t = (b - a) / len;
            for k in 0..per_edge {
                let s = (k as f64 + 0.5) / per_edge as f64;
                samples.push(CurveSample { point: a + (b - a) * s, tangent: t, weight: len / per_edge as f64 });
            }
        }
        let vertices = vertices.iter().map(|v| Vec3::new(v[0], v[1], 0.0)).collect();
        OrientedCurve { samples, vertices, wetting: Wetting::Plane, closed: true, exterior_hint: None }
    }

    /// Circle of radius r about (cx, cy), counter-clockwise when turns > 0; |turns| traversals.
    pub fn circle(cx: f64, cy: f64, r: f64, n: usize, turns: i32) -> Self {
        let total = n * turns.unsigned_abs() as usize;
        let dir = turns.signum() as f64;
        let dphi = 2.0 * PI / n as f64;
        let samples = (0..total)
            .map(|k| {
                let phi = dir * k as f64 * dphi;
                let (s, c) = phi.sin_cos();
                CurveSample {
                    point: Vec3::new(cx + r * c, cy + r * s, 0.0),
                    tangent: Vec3::new(-s * dir, c * dir, 0.0),
                    weight: r * dphi,
                }
            })
            .collect();
        Self::from_samples(samples, Wetting::Plane, true)
    }

    /// Latitude circle on S² at height z0, counter-clockwise seen from above.
    pub fn latitude_circle(z0: f64, n: usize) -> Self {
        let s0 = (1.0 - z0 * z0).max(0.0).sqrt();
        let dphi = 2.0 * PI / n as f64;
        let samples = (0..n)
            .map(|k| {
                let (s, c) = (k as f64 * dphi).sin_cos();
                CurveSample {
                    point: Vec3::new(s0 * c, s0 * s, z0),
                    tangent: Vec3::new(-s, c, 0.0),
                    weight: s0 * dphi,
                }
            })
            .collect();
        let mut c = Self::from_samples(samples, Wetting::Sphere, true);
        c.exterior_hint = Some(-E3);
        c
    }

    pub fn length(&self) -> f64 {
        crate::quadrature::stable_sum(self.samples.iter().map(|s| s.weight))
    }

    pub(crate) fn edges(&self) -> impl Iterator<Item = (Point3, Point3)> + '_ {
        let n = self.vertices.len();
        let m = if self.closed { n } else { n.saturating_sub(1) };
        (0..m).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Smallest distance from x to the polyline.
    pub fn distance_to(&self, x: Point3) -> f64 {
        self.edges().map(|(a, b)| segment_distance(x, a, b)).fold(f64::INFINITY, f64::min)
    }
}

fn segment_distance(x: Point3, a: Point3, b: Point3) -> f64 {
    let d = b - a;
    let l2 = d.norm2();
    let t = if l2 > 0.0 { ((x - a).dot(d) / l2).clamp(0.0, 1.0) } else { 0.0 };
    (x - (a + d * t)).norm()
}

fn require_plane(c: &OrientedCurve) -> Result<()> {
    if c.wetting != Wetting::Plane {
        return Err(Error::Contract("planar curve required; use spherical_wind on the sphere".into()));
    }
    Ok(())
}

/// Winding number of a closed planar curve about x (third coordinates ignored).
pub fn winding_number(curve: &OrientedCurve, x: Point3) -> Result<i32> {
    require_plane(curve)?;
    if !curve.closed {
        return Err(Error::Contract("winding number needs a closed curve".into()));
    }
    let flat = |p: Point3| Vec3::new(p.x, p.y, 0.0);
    let x = flat(x);
    let d = curve.edges().map(|(a, b)| segment_distance(x, flat(a), flat(b))).fold(f64::INFINITY, f64::min);
    if !(d > 1e-9) {
        return Err(Error::UndefinedWinding { distance: d });
    }
    let mut total = 0.0;
    for (a, b) in curve.edges() {
        let (p, q) = (a - x, b - x);
        total += (p.x * q.y - p.y * q.x).atan2(p.x * q.x + p.y * q.y);
    }
    let w = total / (2.0 * PI);
    let r = w.round();
    if (w - r).abs() >= 0.1 {
        return Err(Error::UndefinedWinding { distance: d });
    }
    Ok(r as i32)
}

/// ½∮(x dy − y dx) over closed planar curves, evaluated with the sampled tangents.
pub fn oriented_area(curves: &[OrientedCurve]) -> Result<f64> {
    let mut total = crate::quadrature::NeumaierSum::default();
    for c in curves {
        require_plane(c)?;
        if !c.closed {
            return Err(Error::Contract("oriented area needs closed curves".into()));
        }
        for s in &c.samples {
            total.add(0.5 * s.weight * (s.point.x * s.tangent.y - s.point.y * s.tangent.x));
        }
    }
    Ok(total.value())
}

fn turning(points: &[[f64; 2]]) -> f64 {
    let n = points.len();
    let dir = |i: usize| {
        let (a, b) = (points[i % n], points[(i + 1) % n]);
        [b[0] - a[0], b[1] - a[1]]
    };
    let mut total = 0.0;
    for i in 0..n {
        let (p, q) = (dir(i), dir(i + 1));
        total += (p[0] * q[1] - p[1] * q[0]).atan2(p[0] * q[0] + p[1] * q[1]);
    }
    total
}

fn index_from_turning(t: f64) -> Result<i32> {
    let w = t / (2.0 * PI);
    let r = w.round();
    if (w - r).abs() >= 0.1 {
        return Err(Error::Geometry(format!("total turning {t} is not a multiple of 2 pi")));
    }
    Ok(r as i32)
}

/// Total turning of the tangent divided by 2π. Sphere curves are first projected
/// stereographically from a pole away from the curve (the exterior hint when available).
pub fn rotation_index(curve: &OrientedCurve) -> Result<i32> {
    if !curve.closed {
        return Err(Error::Contract("rotation index needs a closed curve".into()));
    }
    match curve.wetting {
        Wetting::Plane => {
            let n = curve.samples.len();
            let mut total = 0.0;
            for i in 0..n {
                let (p, q) = (curve.samples[i].tangent, curve.samples[(i + 1) % n].tangent);
                total += (p.x * q.y - p.y * q.x).atan2(p.x * q.x + p.y * q.y);
            }
            index_from_turning(total)
        }
        Wetting::Sphere => {
            let pole = projection_pole(curve)?;
            let e1 = if pole.cross(E1).norm() > 0.5 { E1 } else { E2 };
            let e1 = (e1 - pole * e1.dot(pole)).normalized();
            let e2 = (-pole).cross(e1);
            let pts: Vec<[f64; 2]> = curve
                .vertices
                .iter()
                .map(|v| {
                    let x = v.normalized();
                    let den = 1.0 - x.dot(pole);
                    [x.dot(e1) / den, x.dot(e2) / den]
                })
                .collect();
            index_from_turning(turning(&pts))
        }
    }
}

fn projection_pole(curve: &OrientedCurve) -> Result<Point3> {
    let dist = |p: Point3| curve.vertices.iter().map(|v| (v.normalized() - p).norm()).fold(f64::INFINITY, f64::min);
    if let Some(h) = curve.exterior_hint {
        let h = h.normalized();
        if dist(h) >= 0.1 {
            return Ok(h);
        }
    }
    let mut bary = Vec3::ZERO;
    for v in &curve.vertices {
        bary += *v;
    }
    let mut cands = vec![E1, -E1, E2, -E2, E3, -E3];
    if bary.norm() > 1e-9 {
        cands.insert(0, -bary.normalized());
    }
    let mut scored: Vec<(f64, Point3)> = cands.into_iter().map(|p| (dist(p), p)).collect();
    scored.sort_by(|a, b| b.0.total_cmp(&a.0));
    scored
        .into_iter()
        .find(|(d, _)| *d >= 0.1)
        .map(|(_, p)| p)
        .ok_or_else(|| Error::Geometry("no projection pole at chordal distance 0.1 from the curve".into()))
}
