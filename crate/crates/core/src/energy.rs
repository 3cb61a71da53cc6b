//! Willmore functionals, Gauss–Bonnet bookkeeping, densities and the area estimates.

use crate::balls::RadialIndex;
use crate::error::{Error, Result};
use crate::geom::{reflect_halfspace, AmbientKind, Point3};
use crate::surface::{gamma_total, SampledSurface};
use crate::wetted::{oriented_area, WettedRegion};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub const SCHEMA_VERSION: u32 = 1;

/// Samples required inside the smallest ball of a density grid.
pub const MIN_DENSITY_SAMPLES: usize = 50;

/// Threshold on max |H⃗| below which a surface counts as minimal.
pub const MINIMALITY_THRESHOLD: f64 = 1e-6;

/// ¼∫|H⃗|² dμ.
pub fn willmore(surface: &SampledSurface) -> f64 {
    0.25 * surface.integrate(|s| s.mean_curvature.norm2())
}

/// ¼∫|H⃗|² dμ + ∮κ_g.
pub fn willmore_classical(surface: &SampledSurface) -> f64 {
    willmore(surface) + surface.integrate_boundary(|b| b.geodesic_curvature)
}

/// ¼∫|H⃗|² dμ + sinθ|∂Σ| − cosθ|T|.
pub fn willmore_ball(surface: &SampledSurface, region: &WettedRegion) -> Result<f64> {
    if surface.ambient.kind != AmbientKind::UnitBall {
        return Err(Error::Ambient("willmore_ball needs the unit-ball ambient".into()));
    }
    let (s, c) = surface.theta().sin_cos();
    Ok(willmore(surface) + s * surface.boundary_length() - c * region.area()?)
}

/// The capillary Willmore energy of whichever ambient the surface lives in.
pub fn willmore_capillary(surface: &SampledSurface, region: &WettedRegion) -> Result<f64> {
    match surface.ambient.kind {
        AmbientKind::HalfSpace => Ok(willmore(surface)),
        AmbientKind::UnitBall => willmore_ball(surface, region),
    }
}

/// ∫K dμ + ∮κ_g + corner turning − 2πχ.
pub fn gauss_bonnet_residual(surface: &SampledSurface) -> f64 {
    surface.integrate(|s| s.gauss) + surface.integrate_boundary(|b| b.geodesic_curvature) + surface.corner_turning
        - 2.0 * PI * surface.euler_characteristic as f64
}

/// Default radii for density extrapolation: 16 points from just past the 60th nearest sample to
/// three times that, or `None` when x0 is far from the surface.
pub fn default_density_grid(index: &RadialIndex, scale: f64) -> Option<Vec<f64>> {
    if index.nearest() > 4.0 * scale {
        return None;
    }
    let r0 = 1.05 * index.kth_distance(MIN_DENSITY_SAMPLES + 10 - 1);
    if !r0.is_finite() {
        return None;
    }
    Some((0..16).map(|k| r0 * (1.0 + 2.0 * k as f64 / 15.0)).collect())
}

/// Intercept of the least-squares line through (r, y).
pub fn extrapolate_to_zero(r: &[f64], y: &[f64]) -> f64 {
    let n = r.len() as f64;
    let (mr, my) = (r.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let sxx: f64 = r.iter().map(|x| (x - mr).powi(2)).sum();
    let sxy: f64 = r.iter().zip(y).map(|(x, v)| (x - mr) * (v - my)).sum();
    if sxx <= 0.0 {
        return my;
    }
    my - sxy / sxx * mr
}

fn checked_grid(index: &RadialIndex, scale: f64, grid: Option<&[f64]>) -> Result<Option<Vec<f64>>> {
    match grid {
        None => Ok(default_density_grid(index, scale)),
        Some(g) => {
            let rmin = g.iter().copied().fold(f64::INFINITY, f64::min);
            if !(rmin > 0.0) || g.len() < 2 {
                return Err(Error::Domain("density grid needs at least two positive radii".into()));
            }
            if index.nearest() > 4.0 * scale {
                return Ok(None);
            }
            let found = index.count_within(rmin);
            if found < MIN_DENSITY_SAMPLES {
                return Err(Error::Resolution { required: MIN_DENSITY_SAMPLES, found });
            }
            Ok(Some(g.to_vec()))
        }
    }
}

/// Θ²(μ, x0): μ(B_r(x0))/(πr²) on a grid, extrapolated linearly to r = 0.
pub fn density(surface: &SampledSurface, x0: Point3, grid: Option<&[f64]>) -> Result<f64> {
    let index = RadialIndex::new(surface, x0, 1, |_, o| o[0] = 1.0);
    let Some(radii) = checked_grid(&index, surface.cell_scale(), grid)? else {
        return Ok(0.0);
    };
    let ys: Vec<f64> = radii.iter().map(|&r| index.query(r)[0] / (PI * r * r)).collect();
    Ok(extrapolate_to_zero(&radii, &ys))
}

/// η(B_r(c)) for the region's wetting surface.
pub fn eta_ball(region: &WettedRegion, c: Point3, r: f64) -> Result<f64> {
    eta_ball_radial(region, c, r, &|s| 0.5 * s * s, &|b| 1.0 - b.cos())
}

/// ∫_{B_r(c)} f dη for f radial about c: `plane_cum(S)` integrates f·s ds in the plane,
/// `sphere_cum(B)` integrates f·sinβ dβ on the sphere.
pub fn eta_ball_radial(
    region: &WettedRegion,
    c: Point3,
    r: f64,
    plane_cum: &dyn Fn(f64) -> f64,
    sphere_cum: &dyn Fn(f64) -> f64,
) -> Result<f64> {
    use crate::wetted::Wetting;
    match region.wetting {
        Wetting::Plane => {
            let h2 = r * r - c.z * c.z;
            if h2 <= 0.0 {
                return Ok(0.0);
            }
            region.radial_integral(c, plane_cum, h2.sqrt())
        }
        Wetting::Sphere => {
            let p = c.norm();
            if p < 1e-12 {
                return if r > 1.0 { region.area() } else { Ok(0.0) };
            }
            match sphere_cap_angle(p, r) {
                None => Ok(0.0),
                Some(b) => region.radial_integral(c, sphere_cum, b),
            }
        }
    }
}

/// Angular radius about c/|c| of B_r(c) ∩ S², or None when empty.
pub fn sphere_cap_angle(p: f64, r: f64) -> Option<f64> {
    let cb = (1.0 + p * p - r * r) / (2.0 * p);
    if cb >= 1.0 {
        None
    } else {
        Some(cb.max(-1.0).acos())
    }
}

/// The tilde density: half-space (μ − cosθη)(B_r(a)) + (μ − cosθη)(B_r(ã)); ball
/// (μ − cosθη)(B_r) + |x0|²(μ − cosθη)(B̂_r) for x0 ≠ 0 and μ(B_r(0)) at the origin; each over πr²
/// and extrapolated to r = 0.
pub fn tilde_density(surface: &SampledSurface, region: &WettedRegion, x0: Point3, grid: Option<&[f64]>) -> Result<f64> {
    let c = surface.theta().cos();
    let index = RadialIndex::new(surface, x0, 1, |_, o| o[0] = 1.0);
    let scale = surface.cell_scale();
    let (radii, on) = match checked_grid(&index, scale, grid)? {
        Some(g) => (g, 1.0),
        None => {
            // off the surface: only η can contribute, on a grid scaled to the boundary sampling
            let h = 4.0 * scale;
            ((0..16).map(|k| h * (1.0 + 2.0 * k as f64 / 15.0)).collect(), 0.0)
        }
    };
    let mut ys = Vec::with_capacity(radii.len());
    match surface.ambient.kind {
        AmbientKind::HalfSpace => {
            let refl = reflect_halfspace(x0);
            let hat = RadialIndex::new(surface, refl, 1, |_, o| o[0] = 1.0);
            for &r in &radii {
                let eta = eta_ball(region, x0, r)?;
                let m = on * (index.query(r)[0] + hat.query(r)[0]) - 2.0 * c * eta;
                ys.push(m / (PI * r * r));
            }
        }
        AmbientKind::UnitBall => {
            let p = x0.norm();
            if p < 1e-12 {
                for &r in &radii {
                    ys.push(on * index.query(r)[0] / (PI * r * r));
                }
            } else {
                let xi = x0 / (p * p);
                let hat = RadialIndex::new(surface, xi, 1, |_, o| o[0] = 1.0);
                for &r in &radii {
                    let eta = eta_ball(region, x0, r)?;
                    let m = on * (index.query(r)[0] + p * p * hat.query(r / p)[0]) - c * eta * (1.0 + p * p);
                    ys.push(m / (PI * r * r));
                }
            }
        }
    }
    Ok(extrapolate_to_zero(&radii, &ys))
}

/// The capillary density Θ̃/(1 − cosθ).
pub fn capillary_density(surface: &SampledSurface, region: &WettedRegion, x0: Point3, grid: Option<&[f64]>) -> Result<f64> {
    Ok(tilde_density(surface, region, x0, grid)? / (1.0 - surface.theta().cos()))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LiYauMargin {
    /// 𝒲 − 4(1 − cosθ)πΘ²(μ, x0).
    pub margin: f64,
    /// 𝒲 − 2(1 − cosθ)π.
    pub global_margin: f64,
    pub density: f64,
}

pub fn li_yau_margin(surface: &SampledSurface, region: &WettedRegion, x0: Point3) -> Result<LiYauMargin> {
    let w = willmore_capillary(surface, region)?;
    let one_minus = 1.0 - surface.theta().cos();
    let d = density(surface, x0, None)?;
    Ok(LiYauMargin { margin: w - 4.0 * one_minus * PI * d, global_margin: w - 2.0 * one_minus * PI, density: d })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AreaEstimate {
    /// 2|Σ| − cosθ|T| − 2(1 − cosθ)π.
    pub margin: f64,
    /// |Σ| − π sin²θ.
    pub brendle_margin: f64,
    pub minimal: bool,
    pub max_mean_curvature: f64,
}

pub fn area_estimate_margin(surface: &SampledSurface, region: &WettedRegion) -> Result<AreaEstimate> {
    if surface.ambient.kind != AmbientKind::UnitBall {
        return Err(Error::Ambient("the area estimate is stated in the unit ball".into()));
    }
    let (s, c) = surface.theta().sin_cos();
    let a = surface.area();
    let h = surface.max_mean_curvature();
    Ok(AreaEstimate {
        margin: 2.0 * a - c * region.area()? - 2.0 * (1.0 - c) * PI,
        brendle_margin: a - PI * s * s,
        minimal: h <= MINIMALITY_THRESHOLD,
        max_mean_curvature: h,
    })
}

/// 2|Σ| + ∫H⃗·x dμ − sinθ·γ(S²).
pub fn divergence_identity_residual(surface: &SampledSurface) -> Result<f64> {
    if surface.ambient.kind != AmbientKind::UnitBall {
        return Err(Error::Ambient("the balance law is stated in the unit ball".into()));
    }
    Ok(2.0 * surface.area() + surface.integrate(|s| s.mean_curvature.dot(s.point)) - surface.theta().sin() * gamma_total(surface))
}

/// ¼∫|H⃗|² − ∫K − ½∫|Å|², with |Å|² = |A|² − ½|H⃗|².
pub fn traceless_identity_residual(surface: &SampledSurface) -> f64 {
    surface.integrate(|s| {
        let h2 = s.mean_curvature.norm2();
        0.25 * h2 - s.gauss - 0.5 * (s.second_form_norm2 - 0.5 * h2)
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EnergyReport {
    pub schema_version: u32,
    pub ambient: AmbientKind,
    pub theta: f64,
    pub generator: String,
    /// Capillary Willmore energy 𝒲 of the ambient.
    pub willmore: f64,
    /// ¼∫|H⃗|².
    pub willmore_bulk: f64,
    pub willmore_classical: f64,
    pub area: f64,
    pub boundary_length: f64,
    pub oriented_wetted_area: f64,
    pub gauss_bonnet_residual: f64,
    pub traceless_identity_residual: f64,
    pub li_yau_margin: f64,
    pub li_yau_global_margin: f64,
    pub boundary_density: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub area_estimate_margin: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub brendle_margin: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub minimal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub divergence_identity_residual: Option<f64>,
}

/// Full report; the Li–Yau margin uses the first boundary sample as x0.
pub fn energy_report(surface: &SampledSurface, region: &WettedRegion) -> Result<EnergyReport> {
    let x0 = surface.boundary.first().map(|b| b.point).ok_or_else(|| Error::Geometry("surface has no boundary".into()))?;
    let ly = li_yau_margin(surface, region, x0)?;
    let t = match surface.ambient.kind {
        AmbientKind::HalfSpace => oriented_area(&region.curves)?,
        AmbientKind::UnitBall => region.area()?,
    };
    let (ae, div) = match surface.ambient.kind {
        AmbientKind::UnitBall => (Some(area_estimate_margin(surface, region)?), Some(divergence_identity_residual(surface)?)),
        AmbientKind::HalfSpace => (None, None),
    };
    Ok(EnergyReport {
        schema_version: SCHEMA_VERSION,
        ambient: surface.ambient.kind,
        theta: surface.theta(),
        generator: surface.meta.generator.clone(),
        willmore: willmore_capillary(surface, region)?,
        willmore_bulk: willmore(surface),
        willmore_classical: willmore_classical(surface),
        area: surface.area(),
        boundary_length: surface.boundary_length(),
        oriented_wetted_area: t,
        gauss_bonnet_residual: gauss_bonnet_residual(surface),
        traceless_identity_residual: traceless_identity_residual(surface),
        li_yau_margin: ly.margin,
        li_yau_global_margin: ly.global_margin,
        boundary_density: ly.density,
        area_estimate_margin: ae.map(|a| a.margin),
        brendle_margin: ae.map(|a| a.brendle_margin),
        minimal: ae.map(|a| a.minimal),
        divergence_identity_residual: div,
    })
}
