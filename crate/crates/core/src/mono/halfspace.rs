//! Half-space monotonicity: g_a, ĝ_a, the identity residual, G_θ and R(r).

use super::{forward_differences, projection_square, IdentityResidual, Violation, MONOTONE_SLACK};
use crate::balls::RadialIndex;
use crate::energy::{eta_ball, eta_ball_radial, tilde_density};
use crate::error::{Error, Result};
use crate::field::TestVectorField;
use crate::geom::{reflect_halfspace, AmbientKind, Point3};
use crate::surface::SampledSurface;
use crate::wetted::WettedRegion;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

// channels: 1, |H|², H·(x − c), Q_c
const CH: usize = 4;

fn index_about(surface: &SampledSurface, c: Point3) -> RadialIndex {
    RadialIndex::new(surface, c, CH, move |s, o| {
        o[0] = 1.0;
        o[1] = s.mean_curvature.norm2();
        o[2] = s.mean_curvature.dot(s.point - c);
        o[3] = projection_square(s, c);
    })
}

/// Ball-restricted sums about a and ã, shared by every radius.
pub struct HalfspaceProbe<'a> {
    region: &'a WettedRegion,
    a: Point3,
    cos_theta: f64,
    direct: RadialIndex,
    hat: RadialIndex,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfspaceTerms {
    pub g: f64,
    pub g_hat: f64,
    /// R(r), the two H⃗·(x − c) terms.
    pub remainder: f64,
    pub q: f64,
    pub q_hat: f64,
}

impl<'a> HalfspaceProbe<'a> {
    pub fn new(surface: &SampledSurface, region: &'a WettedRegion, a: Point3) -> Result<Self> {
        if surface.ambient.kind != AmbientKind::HalfSpace {
            return Err(Error::Ambient("half-space monotonicity on a ball surface".into()));
        }
        let at = reflect_halfspace(a);
        let (direct, hat) = rayon::join(|| index_about(surface, a), || index_about(surface, at));
        Ok(HalfspaceProbe { region, a, cos_theta: surface.theta().cos(), direct, hat })
    }

    pub fn base_point(&self) -> Point3 {
        self.a
    }

    pub fn terms(&self, r: f64) -> Result<HalfspaceTerms> {
        let eta = eta_ball(self.region, self.a, r)?;
        let (d, h) = (self.direct.query(r), self.hat.query(r));
        let pr2 = PI * r * r;
        let rem = d[2] / (2.0 * pr2) + h[2] / (2.0 * pr2);
        Ok(HalfspaceTerms {
            g: (d[0] - self.cos_theta * eta) / pr2 + d[1] / (16.0 * PI) + d[2] / (2.0 * pr2),
            g_hat: (h[0] - self.cos_theta * eta) / pr2 + h[1] / (16.0 * PI) + h[2] / (2.0 * pr2),
            remainder: rem,
            q: d[3],
            q_hat: h[3],
        })
    }

    /// ∫ a₃²/|x − a|⁴ dη over B_ρ(a) \ B_σ(a); the reflected ball carries the same value.
    pub fn deficit_integral(&self, sigma: f64, rho: f64) -> Result<f64> {
        let a3 = self.a.z;
        if a3 == 0.0 || sigma >= rho {
            return Ok(0.0);
        }
        let cum = |s: f64| 0.5 * s * s / (s * s + a3 * a3);
        let unused = |_: f64| 0.0;
        Ok(eta_ball_radial(self.region, self.a, rho, &cum, &unused)? - eta_ball_radial(self.region, self.a, sigma, &cum, &unused)?)
    }

    /// −(cosθ/π)·(deficit over A + deficit over Â).
    pub fn deficit_term(&self, sigma: f64, rho: f64) -> Result<f64> {
        Ok(-self.cos_theta / PI * 2.0 * self.deficit_integral(sigma, rho)?)
    }

    pub fn residual(&self, sigma: f64, rho: f64) -> Result<IdentityResidual> {
        if !(sigma > 0.0 && sigma <= rho) {
            return Err(Error::Domain(format!("need 0 < σ ≤ ρ, got σ={sigma}, ρ={rho}")));
        }
        if sigma == rho {
            return Ok(IdentityResidual::zero());
        }
        let (lo, hi) = (self.terms(sigma)?, self.terms(rho)?);
        let lhs = (hi.g + hi.g_hat) - (lo.g + lo.g_hat);
        let qa = (hi.q - lo.q) / PI;
        let qh = (hi.q_hat - lo.q_hat) / PI;
        let def = self.deficit_term(sigma, rho)?;
        let raw = lhs - (qa + qh + def);
        Ok(IdentityResidual::from_terms(raw, &[hi.g, hi.g_hat, lo.g, lo.g_hat, qa, qh, def]))
    }
}

/// (g_a(r), ĝ_a(r)).
pub fn g_pair(surface: &SampledSurface, region: &WettedRegion, a: Point3, r: f64) -> Result<(f64, f64)> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("radius must be positive, got {r}")));
    }
    let t = HalfspaceProbe::new(surface, region, a)?.terms(r)?;
    Ok((t.g, t.g_hat))
}

/// (g + ĝ)(ρ) − (g + ĝ)(σ) minus the projection-square and η-deficit side.
pub fn simon_residual(surface: &SampledSurface, region: &WettedRegion, a: Point3, sigma: f64, rho: f64) -> Result<IdentityResidual> {
    HalfspaceProbe::new(surface, region, a)?.residual(sigma, rho)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MonotonicityProfile {
    pub base_point: Point3,
    pub r_grid: Vec<f64>,
    pub g: Vec<f64>,
    pub g_hat: Vec<f64>,
    #[serde(rename = "G")]
    pub g_total: Vec<f64>,
    #[serde(rename = "R")]
    pub remainder: Vec<f64>,
    /// Identity residual on (r[i−1], r[i]); zero at i = 0.
    pub residual: Vec<f64>,
    /// η-deficit term on (r[i−1], r[i]); over (0, r[0]) at i = 0.
    pub deficit: Vec<f64>,
    pub min_forward_difference: f64,
    pub violations: Vec<Violation>,
    /// max over r < R of the scaled-mass bound's left side over its right side; at most 1.
    pub doubling_ratio: f64,
}

pub fn g_profile(surface: &SampledSurface, region: &WettedRegion, a: Point3, r_grid: &[f64]) -> Result<MonotonicityProfile> {
    if r_grid.is_empty() || r_grid.iter().any(|r| !(*r > 0.0)) || r_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("r grid must be positive and increasing".into()));
    }
    let probe = HalfspaceProbe::new(surface, region, a)?;
    let terms: Vec<HalfspaceTerms> = r_grid.par_iter().map(|&r| probe.terms(r)).collect::<Result<_>>()?;
    let mut residual = vec![0.0];
    let mut deficit = vec![probe.deficit_term(1e-300, r_grid[0])?];
    for w in r_grid.windows(2) {
        residual.push(probe.residual(w[0], w[1])?.raw);
        deficit.push(probe.deficit_term(w[0], w[1])?);
    }
    let g: Vec<f64> = terms.iter().map(|t| t.g).collect();
    let g_hat: Vec<f64> = terms.iter().map(|t| t.g_hat).collect();
    let g_total: Vec<f64> = terms.iter().map(|t| t.g + t.g_hat).collect();
    let (min_fd, violations) = forward_differences(r_grid, &g_total, MONOTONE_SLACK);
    let c = surface.theta().cos();
    let h2 = surface.integrate(|s| s.mean_curvature.norm2());
    let mass: Vec<f64> = r_grid
        .iter()
        .map(|&r| {
            let eta = eta_ball(region, a, r)?;
            Ok((probe.direct.query(r)[0] + probe.hat.query(r)[0] - 2.0 * c * eta) / (PI * r * r))
        })
        .collect::<Result<_>>()?;
    let mut doubling: f64 = 0.0;
    for i in 0..mass.len() {
        for j in i + 1..mass.len() {
            let rhs = 3.0 * mass[j] + 9.0 / (8.0 * PI) * h2;
            if rhs > 0.0 {
                doubling = doubling.max(mass[i] / rhs);
            }
        }
    }
    Ok(MonotonicityProfile {
        base_point: a,
        r_grid: r_grid.to_vec(),
        g,
        g_hat,
        g_total,
        remainder: terms.iter().map(|t| t.remainder).collect(),
        residual,
        deficit,
        min_forward_difference: min_fd,
        violations,
        doubling_ratio: doubling,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LimitIdentity {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

/// (2/π)∫Q_a dμ against (1/8π)∫|H⃗|² − Θ̃(μ − cosθη, a), for a on the plane.
pub fn limit_identity_boundary(surface: &SampledSurface, region: &WettedRegion, a: Point3) -> Result<LimitIdentity> {
    if a.z.abs() > 1e-12 {
        return Err(Error::Contract(format!("base point must lie on the plane, a₃ = {}", a.z)));
    }
    let a = Point3::new(a.x, a.y, 0.0);
    let q = surface.integrate(|s| projection_square(s, a));
    let h2 = surface.integrate(|s| s.mean_curvature.norm2());
    let lhs = 2.0 / PI * q;
    let rhs = h2 / (8.0 * PI) - tilde_density(surface, region, a, None)?;
    Ok(LimitIdentity { lhs, rhs, residual: lhs - rhs })
}

/// ∫div_Σ X dμ − cosθ∫div X dη + ∫H⃗·X dμ for X tangent to the plane.
pub fn first_variation_residual_halfspace(surface: &SampledSurface, region: &WettedRegion, x: &TestVectorField) -> Result<f64> {
    if surface.ambient.kind != AmbientKind::HalfSpace {
        return Err(Error::Ambient("half-space first variation on a ball surface".into()));
    }
    x.verify(&surface.ambient)?;
    let bulk = surface.integrate(|s| {
        let (v, j) = x.eval(s.point);
        j.trace() - j.quad(s.normal) + s.mean_curvature.dot(v)
    });
    let f = |p: Point3| {
        let j = x.eval(p).1;
        j.0[0][0] + j.0[1][1]
    };
    let eta = match x.wetting_breaks(surface.ambient.kind) {
        Some((c, breaks)) => region.fan_integral(&f, Some(c), &breaks)?,
        None => crate::wetted::eta_integral(region, &f)?,
    };
    Ok(bulk - surface.theta().cos() * eta)
}
