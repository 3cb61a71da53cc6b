//! Equality-case charts and polynomial perturbations.

use super::chart::{DomainKind, LocalCurvature, ParametricChart};
use crate::error::{Error, Result};
use crate::geom::{AmbientSpace, Point3, Vec3, E3};
use std::f64::consts::PI;
use std::sync::Arc;

/// sin(a r)/r, regular at r = 0.
fn sinc_scaled(a: f64, r: f64) -> f64 {
    let x = a * r;
    if x.abs() < 1e-4 {
        a * (1.0 - x * x / 6.0 + x * x * x * x / 120.0)
    } else {
        x.sin() / r
    }
}

/// Piece of the sphere |x − c| = rho around the pole c + sign·rho·E3, polar angle up to alpha_max.
fn sphere_piece(ambient: AmbientSpace, c: Point3, rho: f64, sign: f64, alpha_max: f64) -> ParametricChart {
    let map = move |u: f64, v: f64| {
        let r = (u * u + v * v).sqrt();
        let s = sinc_scaled(alpha_max, r);
        c + Vec3::new(rho * s * u, rho * s * v, rho * sign * (alpha_max * r).cos())
    };
    let curv = move |u: f64, v: f64| {
        let outward = (map(u, v) - c) / rho;
        LocalCurvature {
            normal: outward * sign,
            mean_curvature: outward * (-2.0 / rho),
            gauss: 1.0 / (rho * rho),
            second_form_norm2: 2.0 / (rho * rho),
        }
    };
    ParametricChart::new(DomainKind::PolarDisk, ambient, Arc::new(map)).with_analytic(Arc::new(curv))
}

fn check_theta(theta: f64) -> Result<()> {
    if theta > 0.0 && theta < PI {
        Ok(())
    } else {
        Err(Error::Domain(format!("contact angle must lie in (0, pi), got {theta}")))
    }
}

/// Spherical cap of radius `radius` meeting {x₃ = 0} at angle θ.
pub fn make_cap_halfspace(theta: f64, radius: f64, center: [f64; 2]) -> Result<ParametricChart> {
    check_theta(theta)?;
    if !(radius > 0.0) {
        return Err(Error::Domain(format!("cap radius must be positive, got {radius}")));
    }
    let amb = AmbientSpace::half_space(theta)?;
    let c = Vec3::new(center[0], center[1], -radius * theta.cos());
    Ok(sphere_piece(amb, c, radius, 1.0, theta).named(
        "cap",
        vec![
            ("theta".into(), theta),
            ("R".into(), radius),
            ("cx".into(), center[0]),
            ("cy".into(), center[1]),
        ],
    ))
}

fn flat_disk(amb: AmbientSpace, height: f64, radius: f64) -> ParametricChart {
    let map = move |u: f64, v: f64| Vec3::new(radius * u, radius * v, height);
    let curv = |_: f64, _: f64| LocalCurvature {
        normal: E3,
        mean_curvature: Vec3::ZERO,
        gauss: 0.0,
        second_form_norm2: 0.0,
    };
    let mut c = ParametricChart::new(DomainKind::PolarDisk, amb, Arc::new(map)).with_analytic(Arc::new(curv));
    c.exterior_hint = Some(-E3);
    c
}

/// Totally geodesic disk {x₃ = cos θ} in the unit ball.
pub fn make_flat_disk_ball(theta: f64) -> Result<ParametricChart> {
    check_theta(theta)?;
    let amb = AmbientSpace::unit_ball(theta)?;
    Ok(flat_disk(amb, theta.cos(), theta.sin()).named("flat-disk-ball", vec![("theta".into(), theta)]))
}

/// Capillary piece of a sphere (or plane) in the unit ball whose contact circle sits at the
/// given latitude; the wetted region is the part of S² north of that circle.
pub fn make_cap_ball(theta: f64, latitude: f64) -> Result<ParametricChart> {
    check_theta(theta)?;
    if !(latitude.abs() < 0.5 * PI) {
        return Err(Error::Domain(format!("latitude must lie in (-pi/2, pi/2), got {latitude}")));
    }
    let amb = AmbientSpace::unit_ball(theta)?;
    let params = vec![("theta".into(), theta), ("latitude".into(), latitude)];
    let (z0, s0) = latitude.sin_cos();
    let (st, ct) = theta.sin_cos();
    // conormal at (s0, 0, z0) in the (x, z) plane
    let mx = ct * z0 + st * s0;
    let mz = -ct * s0 + st * z0;
    if mz.abs() < 1e-9 {
        return Ok(flat_disk(amb, z0, s0).named("cap-ball", params));
    }
    let d = z0 + s0 * mx / mz;
    let rho = (s0 / mz).abs();
    let inside: Vec<f64> = [1.0, -1.0].into_iter().filter(|sg| (d + sg * rho).abs() < 1.0).collect();
    if inside.len() != 1 {
        return Err(Error::Geometry(format!("no admissible sphere for theta = {theta}, latitude = {latitude}")));
    }
    let sign = inside[0];
    let ca = ((z0 - d) / (sign * rho)).clamp(-1.0, 1.0);
    let mut chart = sphere_piece(amb, Vec3::new(0.0, 0.0, d), rho, sign, ca.acos()).named("cap-ball", params);
    chart.exterior_hint = Some(-E3);
    Ok(chart)
}

/// q_m(u, v) = Re((u + iv)^m), q_0 = 1.
pub fn perturbation_mode(mode: u32, u: f64, v: f64) -> f64 {
    let (mut re, mut im) = (1.0, 0.0);
    for _ in 0..mode {
        let t = re * u - im * v;
        im = re * v + im * u;
        re = t;
    }
    re
}

/// Adds amplitude·b(u, v)·q_mode(u, v)·E₃ with a bump b vanishing on the domain boundary.
pub fn perturb(chart: &ParametricChart, amplitude: f64, mode: u32) -> Result<ParametricChart> {
    if !amplitude.is_finite() {
        return Err(Error::Domain("perturbation amplitude must be finite".into()));
    }
    if amplitude == 0.0 {
        return Ok(chart.clone());
    }
    let base = chart.map();
    let domain = chart.domain;
    let bump = move |u: f64, v: f64| match domain {
        DomainKind::PolarDisk => (1.0 - u * u - v * v) * perturbation_mode(mode, u, v),
        DomainKind::Rectangle { u0, u1, v0, v1 } => {
            let (su, sv) = ((2.0 * u - u0 - u1) / (u1 - u0), (2.0 * v - v0 - v1) / (v1 - v0));
            (1.0 - su * su) * (1.0 - sv * sv) * perturbation_mode(mode, su, sv)
        }
    };
    let map = move |u: f64, v: f64| base(u, v) + E3 * (amplitude * bump(u, v));
    let mut params = chart.params.clone();
    params.push(("amplitude".into(), amplitude));
    params.push(("mode".into(), mode as f64));
    let mut out = ParametricChart::new(domain, chart.ambient, Arc::new(map))
        .with_fd(chart.fd_step, chart.fd_scheme)
        .named(&format!("perturbed-{}", chart.generator), params);
    out.exterior_hint = chart.exterior_hint;

    // post hoc immersivity probe
    let n = 48;
    for i in 0..n {
        for j in 0..n {
            let (u, v) = match domain {
                DomainKind::PolarDisk => {
                    let r = (i as f64 + 0.5) / n as f64;
                    let p = 2.0 * PI * j as f64 / n as f64;
                    (r * p.cos(), r * p.sin())
                }
                DomainKind::Rectangle { u0, u1, v0, v1 } => {
                    (u0 + (u1 - u0) * (i as f64 + 0.5) / n as f64, v0 + (v1 - v0) * (j as f64 + 0.5) / n as f64)
                }
            };
            let (fu, fv) = out.tangent(u, v);
            let det = fu.cross(fv).norm2();
            if !(det > 1e-14 * fu.norm2() * fv.norm2()) {
                return Err(Error::Immersion { u, v, det });
            }
        }
    }
    Ok(out)
}
