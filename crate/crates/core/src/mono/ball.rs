//! Unit-ball monotonicity: the free-boundary g_{x0}, ĝ_{x0}, their capillary corrections, the
//! identity residuals for x0 ≠ 0 and x0 = 0, and the limit identities.

use super::{forward_differences, projection_square, IdentityResidual, Violation, MONOTONE_SLACK};
use crate::balls::RadialIndex;
use crate::energy::{eta_ball, eta_ball_radial, tilde_density, MINIMALITY_THRESHOLD};
use crate::error::{Error, Result};
use crate::field::TestVectorField;
use crate::geom::{sphere_inversion, AmbientKind, Point3};
use crate::surface::{gamma_total, SampledSurface};
use crate::wetted::WettedRegion;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Below this |x0| the origin formula is used.
pub const ORIGIN_THRESHOLD: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    General,
    Origin,
}

impl Branch {
    pub fn of(x0: Point3) -> Branch {
        if x0.norm() < ORIGIN_THRESHOLD {
            Branch::Origin
        } else {
            Branch::General
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Branch::General => "general",
            Branch::Origin => "origin",
        }
    }
}

/// Closed-form antiderivatives, in t = |x − x0|² = 1 + p² − 2p·u on S², of
/// ((x − x0)/|x − x0|²·x)² (first) and ((x − ξ)/|x − ξ|²·x)² (second), times 4.
fn f_anti(p: f64, t: f64, sign: f64) -> f64 {
    let c = 1.0 - p * p;
    // x0 on S² up to rounding; otherwise −c²/t picks up the mass that concentrates at x0 as p → 1
    if c.abs() < 1e-12 {
        return t;
    }
    t + sign * 2.0 * c * t.ln() - c * c / t
}

/// ∫_{cos B}^{1} of the first (sign +1) or second (sign −1) sphere integrand du.
pub fn f_cum(p: f64, b: f64, sign: f64) -> f64 {
    let t1 = (1.0 - p) * (1.0 - p);
    let t0 = 1.0 + p * p - 2.0 * p * b.cos();
    if t0 <= t1 {
        return 0.0;
    }
    (f_anti(p, t0, sign) - f_anti(p, t1, sign)) / (8.0 * p)
}

/// ∫_{cos B}^{1} |x − ξ|² du with |ξ| = 1/p.
pub fn y2_cum(p: f64, b: f64) -> f64 {
    let (s, c) = b.sin_cos();
    (1.0 + 1.0 / (p * p)) * (1.0 - c) - s * s / p
}

const NO_PLANE: fn(f64) -> f64 = |_| f64::NAN;

/// All ball-restricted sums for one base point.
pub struct BallProbe<'a> {
    region: &'a WettedRegion,
    x0: Point3,
    p: f64,
    sin_theta: f64,
    cos_theta: f64,
    gamma: f64,
    branch: Branch,
    direct: RadialIndex,
    hat: Option<RadialIndex>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct BallTerms {
    pub g: f64,
    pub g_hat: f64,
    pub g_theta: f64,
    pub g_hat_theta: f64,
    pub remainder: f64,
    pub q: f64,
    pub q_hat: f64,
}

impl<'a> BallProbe<'a> {
    pub fn new(surface: &SampledSurface, region: &'a WettedRegion, x0: Point3) -> Result<Self> {
        if surface.ambient.kind != AmbientKind::UnitBall {
            return Err(Error::Ambient("ball monotonicity on a half-space surface".into()));
        }
        let branch = Branch::of(x0);
        let (s, c) = surface.theta().sin_cos();
        let direct_about = |c0: Point3| {
            RadialIndex::new(surface, c0, 4, move |s, o| {
                o[0] = 1.0;
                o[1] = s.mean_curvature.norm2();
                o[2] = s.mean_curvature.dot(s.point - c0);
                o[3] = projection_square(s, c0);
            })
        };
        let (direct, hat) = match branch {
            Branch::Origin => (direct_about(crate::geom::Vec3::ZERO), None),
            Branch::General => {
                let xi = sphere_inversion(x0)?;
                let hat_about = || {
                    RadialIndex::new(surface, xi, 7, move |s, o| {
                        let x = s.point;
                        let y = x - xi;
                        let h = s.mean_curvature;
                        let yt_x = y.dot(x) - y.dot(s.normal) * x.dot(s.normal);
                        o[0] = 1.0;
                        o[1] = h.norm2();
                        o[2] = h.dot(y);
                        o[3] = projection_square(s, xi);
                        o[4] = y.norm2() + yt_x;
                        o[5] = h.dot(x) * y.norm2();
                        o[6] = h.dot(x);
                    })
                };
                let (d, h) = rayon::join(|| direct_about(x0), hat_about);
                (d, Some(h))
            }
        };
        Ok(BallProbe {
            region,
            x0,
            p: x0.norm(),
            sin_theta: s,
            cos_theta: c,
            gamma: gamma_total(surface),
            branch,
            direct,
            hat,
        })
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn terms(&self, r: f64) -> Result<BallTerms> {
        let d = self.direct.query(r);
        let pr2 = PI * r * r;
        let g = d[0] / pr2 + d[1] / (16.0 * PI) + d[2] / (2.0 * pr2);
        let Some(hat) = &self.hat else {
            let gh = -(r.powi(-2)).min(1.0) * self.sin_theta * self.gamma / (2.0 * PI);
            return Ok(BallTerms {
                g,
                g_hat: gh,
                g_theta: g,
                g_hat_theta: gh,
                remainder: d[2] / (2.0 * pr2) + gh,
                q: d[3],
                q_hat: 0.0,
            });
        };
        let p = self.p;
        let p2 = p * p;
        let rh = r / p;
        let b = hat.query(rh);
        let g_xi = b[0] / (PI * rh * rh) + b[1] / (16.0 * PI) + b[2] / (2.0 * PI * rh * rh);
        let g_hat = g_xi - p2 / pr2 * b[4] - p2 / (2.0 * pr2) * b[5] + b[6] / (2.0 * PI) + b[0] / PI;
        let eta = eta_ball(self.region, self.x0, r)?;
        let ey2 = eta_ball_radial(self.region, self.x0, r, &NO_PLANE, &|bb| y2_cum(p, bb))?;
        let c = self.cos_theta;
        let g_theta = g - c * eta / pr2;
        let g_hat_theta = g_hat - c * p2 * eta / pr2 + c * p2 / pr2 * ey2 - c * eta / PI;
        let r_x0 = d[2] / (2.0 * pr2) + p2 * b[2] / (2.0 * pr2) - p2 / pr2 * b[4] - p2 / (2.0 * pr2) * b[5];
        let remainder = r_x0 + c * p2 / pr2 * ey2 - c * eta / PI + b[6] / (2.0 * PI) + b[0] / PI;
        Ok(BallTerms { g, g_hat, g_theta, g_hat_theta, remainder, q: d[3], q_hat: b[3] })
    }

    /// −(cosθ/π)(E1 + E2) on B_ρ(x0) \ B_σ(x0); zero on the origin branch.
    pub fn deficit_term(&self, sigma: f64, rho: f64) -> Result<f64> {
        if self.branch == Branch::Origin || sigma >= rho {
            return Ok(0.0);
        }
        let p = self.p;
        let both = |bb: f64| f_cum(p, bb, 1.0) + f_cum(p, bb, -1.0);
        let e = eta_ball_radial(self.region, self.x0, rho, &NO_PLANE, &both)?
            - eta_ball_radial(self.region, self.x0, sigma, &NO_PLANE, &both)?;
        Ok(-self.cos_theta / PI * e)
    }

    /// Integral side minus the profile difference.
    pub fn residual(&self, sigma: f64, rho: f64) -> Result<IdentityResidual> {
        if !(sigma > 0.0 && sigma <= rho) {
            return Err(Error::Domain(format!("need 0 < σ ≤ ρ, got σ={sigma}, ρ={rho}")));
        }
        if sigma == rho {
            return Ok(IdentityResidual::zero());
        }
        let (lo, hi) = (self.terms(sigma)?, self.terms(rho)?);
        let qa = (hi.q - lo.q) / PI;
        let qh = (hi.q_hat - lo.q_hat) / PI;
        let def = self.deficit_term(sigma, rho)?;
        let rhs = (hi.g_theta + hi.g_hat_theta) - (lo.g_theta + lo.g_hat_theta);
        let raw = qa + qh + def - rhs;
        Ok(IdentityResidual::from_terms(raw, &[qa, qh, def, hi.g_theta, hi.g_hat_theta, lo.g_theta, lo.g_hat_theta]))
    }
}

/// Free-boundary (g_{x0}(r), ĝ_{x0}(r)).
pub fn volkmann_g_pair(surface: &SampledSurface, region: &WettedRegion, x0: Point3, r: f64) -> Result<(f64, f64)> {
    general_terms(surface, region, x0, r).map(|t| (t.g, t.g_hat))
}

/// Capillary (g_{x0,θ}(r), ĝ_{x0,θ}(r)).
pub fn capillary_g_pair(surface: &SampledSurface, region: &WettedRegion, x0: Point3, r: f64) -> Result<(f64, f64)> {
    general_terms(surface, region, x0, r).map(|t| (t.g_theta, t.g_hat_theta))
}

fn general_terms(surface: &SampledSurface, region: &WettedRegion, x0: Point3, r: f64) -> Result<BallTerms> {
    if Branch::of(x0) == Branch::Origin {
        return Err(Error::Domain("x0 = 0 has no inversion; use the origin branch".into()));
    }
    if !(r > 0.0) {
        return Err(Error::Domain(format!("radius must be positive, got {r}")));
    }
    BallProbe::new(surface, region, x0)?.terms(r)
}

pub fn ball_identity_residual(surface: &SampledSurface, region: &WettedRegion, x0: Point3, sigma: f64, rho: f64) -> Result<IdentityResidual> {
    BallProbe::new(surface, region, x0)?.residual(sigma, rho)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BallProfile {
    pub base_point: Point3,
    pub r_grid: Vec<f64>,
    pub g_theta: Vec<f64>,
    pub g_hat_theta: Vec<f64>,
    #[serde(rename = "G")]
    pub g_total: Vec<f64>,
    #[serde(rename = "R")]
    pub remainder: Vec<f64>,
    /// Identity residual on (r[i−1], r[i]); zero at i = 0.
    pub residual: Vec<f64>,
    pub branch: Branch,
    pub min_forward_difference: f64,
    pub violations: Vec<Violation>,
}

pub fn ball_profile(surface: &SampledSurface, region: &WettedRegion, x0: Point3, r_grid: &[f64]) -> Result<BallProfile> {
    if r_grid.is_empty() || r_grid.iter().any(|r| !(*r > 0.0)) || r_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("r grid must be positive and increasing".into()));
    }
    let probe = BallProbe::new(surface, region, x0)?;
    let terms: Vec<BallTerms> = r_grid.par_iter().map(|&r| probe.terms(r)).collect::<Result<_>>()?;
    let mut residual = vec![0.0];
    for w in r_grid.windows(2) {
        residual.push(probe.residual(w[0], w[1])?.raw);
    }
    let g_total: Vec<f64> = terms.iter().map(|t| t.g_theta + t.g_hat_theta).collect();
    let (min_fd, violations) = forward_differences(r_grid, &g_total, MONOTONE_SLACK);
    Ok(BallProfile {
        base_point: x0,
        r_grid: r_grid.to_vec(),
        g_theta: terms.iter().map(|t| t.g_theta).collect(),
        g_hat_theta: terms.iter().map(|t| t.g_hat_theta).collect(),
        g_total,
        remainder: terms.iter().map(|t| t.remainder).collect(),
        residual,
        branch: probe.branch,
        min_forward_difference: min_fd,
        violations,
    })
}

/// ∫div_Σ X dμ − cosθ∫div_{S²}X dη + ∫H⃗·X dμ + 2cosθ∫X·x dη − sinθ∫X·x dγ.
pub fn first_variation_residual_ball(surface: &SampledSurface, region: &WettedRegion, x: &TestVectorField) -> Result<f64> {
    if surface.ambient.kind != AmbientKind::UnitBall {
        return Err(Error::Ambient("ball first variation on a half-space surface".into()));
    }
    let (s, c) = surface.theta().sin_cos();
    let bulk = surface.integrate(|smp| {
        let (v, j) = x.eval(smp.point);
        j.trace() - j.quad(smp.normal) + smp.mean_curvature.dot(v)
    });
    let f = |p: Point3| {
        let n = p.normalized();
        let (v, j) = x.eval(p);
        -c * (j.trace() - j.quad(n)) + 2.0 * c * v.dot(p)
    };
    let eta = match x.wetting_breaks(AmbientKind::UnitBall) {
        Some((ctr, breaks)) => region.fan_integral(&f, Some(ctr), &breaks)?,
        None => crate::wetted::eta_integral(region, &f)?,
    };
    let gamma = surface.integrate_boundary(|b| x.eval(b.point).0.dot(b.point));
    Ok(bulk + eta - s * gamma)
}

/// ((x − x0)/|x − x0|²·x)² + ((x − ξ(x0))/|x − ξ(x0)|²·x)² − ½ for x, x0 on S².
pub fn sphere_point_identity(x: Point3, x0: Point3) -> Result<f64> {
    if (x.norm() - 1.0).abs() > 1e-12 || (x0.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::Domain("both points must lie on the unit sphere".into()));
    }
    let d = x - x0;
    let d2 = d.norm2();
    if d2 < 1e-28 {
        return Err(Error::Domain("coincident points".into()));
    }
    let xi = sphere_inversion(x0)?;
    let e = x - xi;
    let a = d.dot(x) / d2;
    let b = e.dot(x) / e.norm2();
    Ok(a * a + b * b - 0.5)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MinimalDensity {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub tilde_density: f64,
    /// N(x0), the tilde density in units of 1 − cosθ.
    pub multiplicity: f64,
}

/// For minimal surfaces and x0 on S²: (2/π)∫|(x − x0)^⊥|²/|x − x0|⁴ dμ against
/// (2|Σ| − cosθ|T|)/(2π) − Θ̃(μ − cosθη, x0).
pub fn minimal_density_identity(surface: &SampledSurface, region: &WettedRegion, x0: Point3) -> Result<MinimalDensity> {
    if surface.ambient.kind != AmbientKind::UnitBall {
        return Err(Error::Ambient("minimal density identity is stated in the unit ball".into()));
    }
    let h = surface.max_mean_curvature();
    if h > MINIMALITY_THRESHOLD {
        return Err(Error::NonMinimal(h));
    }
    if (x0.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::Domain("x0 must lie on the unit sphere".into()));
    }
    let c = surface.theta().cos();
    let lhs = 2.0 / PI
        * surface.integrate(|s| {
            let d = s.point - x0;
            let d2 = d.norm2();
            if d2 < 1e-24 {
                0.0
            } else {
                d.dot(s.normal).powi(2) / (d2 * d2)
            }
        });
    let td = tilde_density(surface, region, x0, None)?;
    let rhs = (2.0 * surface.area() - c * region.area()?) / (2.0 * PI) - td;
    Ok(MinimalDensity { lhs, rhs, residual: lhs - rhs, tilde_density: td, multiplicity: td / (1.0 - c) })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BallLimit {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

/// Residuals of the r → ∞, r → 0 limits of the ball identities: "general" for x0 ≠ 0,
/// "origin" for x0 = 0 and additionally "sphere" for x0 on S².
pub fn limit_identities_ball(surface: &SampledSurface, region: &WettedRegion, x0: Point3) -> Result<Vec<BallLimit>> {
    if surface.ambient.kind != AmbientKind::UnitBall {
        return Err(Error::Ambient("ball limit identities on a half-space surface".into()));
    }
    let (s, c) = surface.theta().sin_cos();
    let h2 = surface.integrate(|smp| smp.mean_curvature.norm2());
    let gamma = gamma_total(surface);
    let eta_total = region.area()?;
    let td = tilde_density(surface, region, x0, None)?;
    let mut out = Vec::new();
    match Branch::of(x0) {
        Branch::Origin => {
            let lhs = surface.integrate(|smp| projection_square(smp, x0)) / PI;
            let rhs = h2 / (16.0 * PI) + s * gamma / (2.0 * PI) - td;
            out.push(BallLimit { name: "origin".into(), lhs, rhs, residual: lhs - rhs });
        }
        Branch::General => {
            let xi = sphere_inversion(x0)?;
            let p = x0.norm();
            let q = surface.integrate(|smp| projection_square(smp, x0) + projection_square(smp, xi)) / PI;
            let both = |bb: f64| f_cum(p, bb, 1.0) + f_cum(p, bb, -1.0);
            let e = region.radial_integral(x0, &both, PI)?;
            let lhs = q - c / PI * e;
            let rhs = h2 / (8.0 * PI) + (s * gamma - 2.0 * c * eta_total) / (2.0 * PI) - td;
            out.push(BallLimit { name: "general".into(), lhs, rhs, residual: lhs - rhs });
            if (p - 1.0).abs() < 1e-9 {
                let rhs = h2 / (8.0 * PI) + (s * gamma - c * eta_total) / (2.0 * PI) - td;
                out.push(BallLimit { name: "sphere".into(), lhs: q, rhs, residual: q - rhs });
            }
        }
    }
    Ok(out)
}
