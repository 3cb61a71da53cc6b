//! Quadrature-sampled immersions.

mod chart;
mod generators;
pub mod io;
mod sampling;

pub use chart::{CurvatureFn, DomainKind, FdScheme, Jet, LocalCurvature, LocalGeometry, MapFn, ParametricChart};
pub use generators::{make_cap_ball, make_cap_halfspace, make_flat_disk_ball, perturb, perturbation_mode};
pub use sampling::{sample_chart, sample_chart_with, SamplingOptions};

use crate::geom::{AmbientKind, AmbientSpace, Point3, Vec3, E3};
use crate::quadrature::{stable_sum, QuadratureRule};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfaceSample {
    pub point: Point3,
    pub weight: f64,
    pub normal: Vec3,
    pub mean_curvature: Vec3,
    pub gauss: f64,
    /// |A|², squared norm of the second fundamental form.
    pub second_form_norm2: f64,
    /// Edge vectors of the parameter cell around the sample, |e1 × e2| = weight.
    pub cell: [Vec3; 2],
    /// The e2 edge at ±½e1 is scaled by 1 ± taper (polar cells are annular sectors).
    pub taper: f64,
    /// Second fundamental form on the cell edges: II(e1,e1), II(e1,e2), II(e2,e2).
    pub second_form: [f64; 3],
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundarySample {
    pub point: Point3,
    pub tangent: Vec3,
    pub conormal: Vec3,
    pub normal: Vec3,
    pub arc_weight: f64,
    pub geodesic_curvature: f64,
    pub wetting_curvature: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceMeta {
    pub generator: String,
    pub params: Vec<(String, f64)>,
    pub rule: QuadratureRule,
    pub nu: usize,
    pub nv: usize,
    pub exterior_hint: Option<Point3>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampledSurface {
    pub ambient: AmbientSpace,
    pub interior: Vec<SurfaceSample>,
    pub boundary: Vec<BoundarySample>,
    pub euler_characteristic: i32,
    /// Sum of exterior angles at boundary corners (0 for smooth boundaries).
    pub corner_turning: f64,
    pub meta: SurfaceMeta,
}

impl SampledSurface {
    pub fn theta(&self) -> f64 {
        self.ambient.theta
    }

    pub fn area(&self) -> f64 {
        stable_sum(self.interior.iter().map(|s| s.weight))
    }

    pub fn boundary_length(&self) -> f64 {
        stable_sum(self.boundary.iter().map(|b| b.arc_weight))
    }

    pub fn integrate<F: Fn(&SurfaceSample) -> f64>(&self, f: F) -> f64 {
        stable_sum(self.interior.iter().map(|s| f(s) * s.weight))
    }

    pub fn integrate_boundary<F: Fn(&BoundarySample) -> f64>(&self, f: F) -> f64 {
        stable_sum(self.boundary.iter().map(|b| f(b) * b.arc_weight))
    }

    pub fn max_mean_curvature(&self) -> f64 {
        self.interior.iter().map(|s| s.mean_curvature.norm()).fold(0.0, f64::max)
    }

    /// Largest cell diameter, the resolution scale of ball-restricted sums.
    pub fn cell_scale(&self) -> f64 {
        self.interior.iter().map(|s| s.cell[0].norm() + s.cell[1].norm()).fold(0.0, f64::max)
    }
}

/// Outward normal of the boundary curve inside the wetting surface, ν̄ = τ × n_w.
pub fn wetting_conormal(ambient: &AmbientSpace, b: &BoundarySample) -> Vec3 {
    let nw = match ambient.kind {
        AmbientKind::HalfSpace => E3,
        AmbientKind::UnitBall => b.point.normalized(),
    };
    b.tangent.cross(nw).normalized()
}

/// Largest deviation of the conormal from the capillary frame prescribed by θ.
pub fn contact_check(surface: &SampledSurface) -> f64 {
    let th = surface.theta();
    let (s, c) = th.sin_cos();
    surface
        .boundary
        .iter()
        .map(|b| {
            let nb = wetting_conormal(&surface.ambient, b);
            let target = match surface.ambient.kind {
                AmbientKind::HalfSpace => -E3 * s + nb * c,
                AmbientKind::UnitBall => nb * c + b.point.normalized() * s,
            };
            (b.conormal - target).norm()
        })
        .fold(0.0, f64::max)
}

/// Total boundary length, the measure γ(S²).
pub fn gamma_total(surface: &SampledSurface) -> f64 {
    surface.boundary_length()
}
