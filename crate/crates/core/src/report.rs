//! CSV and text output. Numbers carry 12 significant digits; ',' separates and '\n' ends rows.

use crate::error::Result;
use crate::field::TestVectorField;
use crate::geom::{AmbientKind, Point3, Vec3};
use crate::mono::ball::{ball_identity_residual, first_variation_residual_ball, sphere_point_identity, BallProfile};
use crate::mono::halfspace::{first_variation_residual_halfspace, limit_identity_boundary, simon_residual, MonotonicityProfile};
use crate::surface::{contact_check, SampledSurface};
use crate::wetted::WettedRegion;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::io::Write;

pub const HALFSPACE_PROFILE_COLUMNS: &str = "r,g,gHat,G,R,deficit,residual";
pub const BALL_PROFILE_COLUMNS: &str = "r,gTheta,gHatTheta,G,R,residual,branch";
pub const SUITE_COLUMNS: &str = "check,value,tolerance,pass";

/// 12 significant digits in scientific form.
pub fn fmt12(x: f64) -> String {
    format!("{x:.11e}")
}

/// `value (kπ)` with both parts at 12 significant digits.
pub fn fmt_pi(x: f64) -> String {
    format!("{} ({}π)", fmt12(x), fmt12(x / PI))
}

pub fn write_halfspace_profile<W: Write>(p: &MonotonicityProfile, mut w: W) -> Result<()> {
    writeln!(w, "{HALFSPACE_PROFILE_COLUMNS}")?;
    for i in 0..p.r_grid.len() {
        let row = [p.r_grid[i], p.g[i], p.g_hat[i], p.g_total[i], p.remainder[i], p.deficit[i], p.residual[i]];
        writeln!(w, "{}", row.map(fmt12).join(","))?;
    }
    Ok(())
}

pub fn write_ball_profile<W: Write>(p: &BallProfile, mut w: W) -> Result<()> {
    writeln!(w, "{BALL_PROFILE_COLUMNS}")?;
    for i in 0..p.r_grid.len() {
        let row = [p.r_grid[i], p.g_theta[i], p.g_hat_theta[i], p.g_total[i], p.remainder[i], p.residual[i]];
        writeln!(w, "{},{}", row.map(fmt12).join(","), p.branch.name())?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn new(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Check { name: name.into(), value, tolerance }
    }

    pub fn pass(&self) -> bool {
        self.value.abs() <= self.tolerance
    }
}

pub fn write_checks<W: Write>(checks: &[Check], mut w: W) -> Result<()> {
    writeln!(w, "{SUITE_COLUMNS}")?;
    for c in checks {
        writeln!(w, "{},{},{},{}", c.name, fmt12(c.value), fmt12(c.tolerance), c.pass())?;
    }
    Ok(())
}

/// Largest deviation from κ_g = cosθκ̃_g (+ sinθ in the ball).
pub fn boundary_curvature_defect(surface: &SampledSurface) -> f64 {
    let (s, c) = surface.theta().sin_cos();
    let shift = match surface.ambient.kind {
        AmbientKind::HalfSpace => 0.0,
        AmbientKind::UnitBall => s,
    };
    surface.boundary.iter().map(|b| (b.geodesic_curvature - c * b.wetting_curvature - shift).abs()).fold(0.0, f64::max)
}

fn fmt_point(p: Point3) -> String {
    format!("({:.4},{:.4},{:.4})", p.x, p.y, p.z)
}

/// Identity checks for one surface. `residual_tol` bounds normalized monotonicity residuals and
/// first variations; geometric invariants use fixed tolerances.
pub fn identity_suite(
    surface: &SampledSurface,
    region: &WettedRegion,
    probes: &[Point3],
    pairs: &[[f64; 2]],
    residual_tol: f64,
) -> Result<Vec<Check>> {
    let mut out = vec![
        Check::new("gauss-bonnet", crate::energy::gauss_bonnet_residual(surface), 1e-3),
        Check::new("boundary-curvature", boundary_curvature_defect(surface), 1e-6),
    ];
    let perturbed = surface.meta.generator.starts_with("perturbed");
    if !perturbed {
        out.push(Check::new("contact-angle", contact_check(surface), 1e-6));
    }
    match surface.ambient.kind {
        AmbientKind::HalfSpace => {
            if let Some(b) = surface.boundary.first() {
                if !perturbed {
                    let l = limit_identity_boundary(surface, region, b.point)?;
                    out.push(Check::new("limit-identity", l.residual, 1e-2));
                }
                let field = TestVectorField::smoothed_proof_field(Point3::new(b.point.x, b.point.y, 0.0), 0.4, 1.5, 0.2)?;
                let fv = first_variation_residual_halfspace(surface, region, &field)?;
                out.push(Check::new("first-variation", fv, residual_tol));
            }
            for a in probes {
                for p in pairs {
                    let r = simon_residual(surface, region, *a, p[0], p[1])?;
                    out.push(Check::new(format!("simon{}[{},{}]", fmt_point(*a), p[0], p[1]), r.normalized, residual_tol));
                }
            }
        }
        AmbientKind::UnitBall => {
            let fv = first_variation_residual_ball(surface, region, &TestVectorField::position())?;
            out.push(Check::new("first-variation", fv, residual_tol));
            if surface.max_mean_curvature() <= crate::energy::MINIMALITY_THRESHOLD {
                out.push(Check::new("divergence-identity", crate::energy::divergence_identity_residual(surface)?, 1e-4));
            }
            for x0 in probes {
                for p in pairs {
                    let r = ball_identity_residual(surface, region, *x0, p[0], p[1])?;
                    out.push(Check::new(format!("ball-identity{}[{},{}]", fmt_point(*x0), p[0], p[1]), r.normalized, residual_tol));
                }
            }
            let mut worst: f64 = 0.0;
            for b in surface.boundary.iter().step_by(7) {
                let x = b.point.normalized();
                for c in surface.boundary.iter().step_by(11) {
                    let y: Vec3 = c.point.normalized();
                    if (x - y).norm() > 0.1 {
                        worst = worst.max(sphere_point_identity(x, y)?.abs());
                    }
                }
            }
            out.push(Check::new("sphere-point-identity", worst, 1e-12));
        }
    }
    Ok(out)
}
