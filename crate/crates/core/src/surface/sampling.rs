use super::chart::{DomainKind, ParametricChart};
use super::{BoundarySample, SampledSurface, SurfaceMeta, SurfaceSample};
use crate::error::{Error, Result};
use crate::geom::{AmbientKind, Vec3, E3};
use crate::quadrature::QuadratureRule;
use rayon::prelude::*;
use std::f64::consts::PI;

#[derive(Clone, Debug)]
pub struct SamplingOptions {
    /// Boundary samples per angular interior sample.
    pub boundary_factor: usize,
    /// Overrides the boundary sample count.
    pub boundary_points: Option<usize>,
    /// Reject charts whose boundary image leaves the wetting surface by more than 1e-8.
    pub require_wetting_boundary: bool,
    /// Step for derivatives along the boundary parameter.
    pub boundary_step: f64,
}

impl Default for SamplingOptions {
    fn default() -> Self {
        SamplingOptions { boundary_factor: 32, boundary_points: None, require_wetting_boundary: true, boundary_step: 1e-3 }
    }
}

pub fn sample_chart(chart: &ParametricChart, nu: usize, nv: usize, rule: QuadratureRule) -> Result<SampledSurface> {
    sample_chart_with(chart, nu, nv, rule, &SamplingOptions::default())
}

pub fn sample_chart_with(
    chart: &ParametricChart,
    nu: usize,
    nv: usize,
    rule: QuadratureRule,
    opts: &SamplingOptions,
) -> Result<SampledSurface> {
    if nu < 8 || nv < 8 {
        return Err(Error::Contract(format!("resolution {nu}x{nv} below the 8x8 minimum")));
    }
    let interior = match chart.domain {
        DomainKind::PolarDisk => polar_interior(chart, nu, nv, rule)?,
        DomainKind::Rectangle { u0, u1, v0, v1 } => rect_interior(chart, nu, nv, rule, [u0, u1, v0, v1])?,
    };
    let (boundary, corner_turning) = match chart.domain {
        DomainKind::PolarDisk => {
            let nb = opts.boundary_points.unwrap_or(nv * opts.boundary_factor).max(8);
            (polar_boundary(chart, nb, opts.boundary_step), 0.0)
        }
        DomainKind::Rectangle { u0, u1, v0, v1 } => rect_boundary(chart, nu, nv, opts, [u0, u1, v0, v1]),
    };

    let amb = chart.ambient;
    for s in &interior {
        let d = amb.outside_distance(s.point);
        if d > 1e-8 {
            return Err(Error::Geometry(format!("sample {:?} lies {d:e} outside the ambient", s.point)));
        }
    }
    if opts.require_wetting_boundary {
        for b in &boundary {
            let d = amb.wetting_distance(b.point);
            if d > 1e-8 {
                return Err(Error::Geometry(format!("boundary point {:?} is {d:e} off the wetting surface", b.point)));
            }
        }
    }

    Ok(SampledSurface {
        ambient: amb,
        interior,
        boundary,
        euler_characteristic: 1,
        corner_turning,
        meta: SurfaceMeta {
            generator: chart.generator.clone(),
            params: chart.params.clone(),
            rule,
            nu,
            nv,
            exterior_hint: chart.exterior_hint,
        },
    })
}

fn interior_sample(chart: &ParametricChart, u: f64, v: f64, du: Vec3, dv: Vec3, taper: f64, jac: f64) -> Result<SurfaceSample> {
    let g = chart.local_geometry(u, v);
    let scale = g.fu.norm2() * g.fv.norm2();
    if !(g.det_g > 1e-14 * scale) || !g.det_g.is_finite() {
        return Err(Error::Immersion { u, v, det: g.det_g });
    }
    let e1 = g.fu * du.x + g.fv * du.y;
    let e2 = g.fu * dv.x + g.fv * dv.y;
    let c = g.curvature;
    let j = chart.jet(u, v);
    let (l, m, n) = (j.fuu.dot(c.normal), j.fuv.dot(c.normal), j.fvv.dot(c.normal));
    let ii = |a: Vec3, b: Vec3| a.x * b.x * l + (a.x * b.y + a.y * b.x) * m + a.y * b.y * n;
    Ok(SurfaceSample {
        point: g.point,
        weight: g.det_g.sqrt() * jac,
        normal: c.normal,
        mean_curvature: c.mean_curvature,
        gauss: c.gauss,
        second_form_norm2: c.second_form_norm2,
        cell: [e1, e2],
        taper,
        second_form: [ii(du, du), ii(du, dv), ii(dv, dv)],
    })
}

fn polar_interior(chart: &ParametricChart, nu: usize, nv: usize, rule: QuadratureRule) -> Result<Vec<SurfaceSample>> {
    let radial = rule.nodes(nu);
    let dphi = 2.0 * PI / nv as f64;
    (0..nu * nv)
        .into_par_iter()
        .map(|k| {
            let (r, w) = radial[k / nv];
            let phi = (k % nv) as f64 * dphi + 0.5 * dphi;
            let (s, c) = phi.sin_cos();
            // cell edges in (u, v): radial width w, angular width r dphi
            let du = Vec3::new(c * w, s * w, 0.0);
            let dv = Vec3::new(-s * r * dphi, c * r * dphi, 0.0);
            interior_sample(chart, r * c, r * s, du, dv, (0.5 * w / r).min(1.0), r * w * dphi)
        })
        .collect()
}

fn rect_interior(
    chart: &ParametricChart,
    nu: usize,
    nv: usize,
    rule: QuadratureRule,
    [u0, u1, v0, v1]: [f64; 4],
) -> Result<Vec<SurfaceSample>> {
    let (a, b) = (rule.nodes(nu), rule.nodes(nv));
    let (lu, lv) = (u1 - u0, v1 - v0);
    (0..nu * nv)
        .into_par_iter()
        .map(|k| {
            let (tu, wu) = a[k / nv];
            let (tv, wv) = b[k % nv];
            let du = Vec3::new(wu * lu, 0.0, 0.0);
            let dv = Vec3::new(0.0, wv * lv, 0.0);
            interior_sample(chart, u0 + tu * lu, v0 + tv * lv, du, dv, 0.0, wu * lu * wv * lv)
        })
        .collect()
}

fn d1<F: Fn(f64) -> Vec3>(f: &F, t: f64, h: f64) -> Vec3 {
    ((f(t + h) - f(t - h)) * 8.0 - (f(t + 2.0 * h) - f(t - 2.0 * h))) / (12.0 * h)
}

fn d2<F: Fn(f64) -> Vec3>(f: &F, t: f64, h: f64) -> Vec3 {
    ((f(t + h) + f(t - h)) * 16.0 - (f(t + 2.0 * h) + f(t - 2.0 * h)) - f(t) * 30.0) / (12.0 * h * h)
}

/// Frame and curvatures at parameter t of a boundary path (u(t), v(t)).
fn boundary_sample<P: Fn(f64) -> (f64, f64)>(chart: &ParametricChart, path: &P, t: f64, dt: f64, h: f64) -> BoundarySample {
    let gamma = |t: f64| {
        let (u, v) = path(t);
        chart.eval(u, v)
    };
    let point = gamma(t);
    let g1 = d1(&gamma, t, h);
    let g2 = d2(&gamma, t, h);
    let speed = g1.norm();
    let tangent = g1 / speed;
    let conormal_at = |t: f64| {
        let (u, v) = path(t);
        let tau = d1(&gamma, t, h).normalized();
        tau.cross(chart.normal(u, v)).normalized()
    };
    let (u, v) = path(t);
    let normal = chart.normal(u, v);
    let conormal = tangent.cross(normal).normalized();
    let dmu = d1(&conormal_at, t, h);
    let nw = match chart.ambient.kind {
        AmbientKind::HalfSpace => E3,
        AmbientKind::UnitBall => point.normalized(),
    };
    BoundarySample {
        point,
        tangent,
        conormal,
        normal,
        arc_weight: speed * dt,
        geodesic_curvature: dmu.dot(tangent) / speed,
        wetting_curvature: nw.dot(g1.cross(g2)) / (speed * speed * speed),
    }
}

fn polar_boundary(chart: &ParametricChart, nb: usize, h: f64) -> Vec<BoundarySample> {
    let dphi = 2.0 * PI / nb as f64;
    let path = |phi: f64| {
        let (s, c) = phi.sin_cos();
        (c, s)
    };
    (0..nb).into_par_iter().map(|k| boundary_sample(chart, &path, k as f64 * dphi, dphi, h)).collect()
}

fn rect_boundary(
    chart: &ParametricChart,
    nu: usize,
    nv: usize,
    opts: &SamplingOptions,
    [u0, u1, v0, v1]: [f64; 4],
) -> (Vec<BoundarySample>, f64) {
    let corners = [(u0, v0), (u1, v0), (u1, v1), (u0, v1)];
    let counts = [nu, nv, nu, nv];
    let h = opts.boundary_step;
    let mut out = Vec::new();
    let mut edge_tangents = Vec::new();
    for e in 0..4 {
        let (a, b) = (corners[e], corners[(e + 1) % 4]);
        let path = move |t: f64| (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1));
        let m = counts[e] * opts.boundary_factor.max(1);
        let dt = 1.0 / m as f64;
        let start = d1(&|t| chart.eval(path(t).0, path(t).1), 0.0, h).normalized();
        let end = d1(&|t| chart.eval(path(t).0, path(t).1), 1.0, h).normalized();
        edge_tangents.push((start, end));
        out.extend((0..m).map(|k| boundary_sample(chart, &path, (k as f64 + 0.5) * dt, dt, h)));
    }
    let mut turning = 0.0;
    for e in 0..4 {
        let t_in = edge_tangents[(e + 3) % 4].1;
        let t_out = edge_tangents[e].0;
        let (u, v) = corners[e];
        let n = chart.normal(u, v);
        turning += t_in.cross(t_out).dot(n).atan2(t_in.dot(t_out));
    }
    (out, turning)
}
