//! Monotonicity formulas in the half-space and in the unit ball.

pub mod ball;
pub mod halfspace;

use crate::geom::{Point3, Vec3};
use crate::surface::SurfaceSample;
use serde::{Deserialize, Serialize};

/// Signed identity residual, with its size relative to the largest term entering it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IdentityResidual {
    pub raw: f64,
    pub normalized: f64,
    pub scale: f64,
}

impl IdentityResidual {
    pub fn from_terms(raw: f64, terms: &[f64]) -> Self {
        let scale = terms.iter().fold(0.0f64, |m, t| m.max(t.abs()));
        let normalized = if scale > 0.0 { raw / scale } else { raw };
        IdentityResidual { raw, normalized, scale }
    }

    pub fn zero() -> Self {
        IdentityResidual::default()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Violation {
    pub index: usize,
    pub r: f64,
    pub magnitude: f64,
}

/// Smallest forward difference and every drop below −slack.
pub fn forward_differences(r: &[f64], g: &[f64], slack: f64) -> (f64, Vec<Violation>) {
    let mut min = f64::INFINITY;
    let mut bad = Vec::new();
    for i in 1..g.len() {
        let d = g[i] - g[i - 1];
        min = min.min(d);
        if d < -slack {
            bad.push(Violation { index: i, r: r[i], magnitude: -d });
        }
    }
    (if g.len() < 2 { 0.0 } else { min }, bad)
}

/// |¼H⃗ + (x − c)^⊥/|x − c|²|².
pub fn projection_square(s: &SurfaceSample, c: Point3) -> f64 {
    let d = s.point - c;
    let d2 = d.norm2();
    let v: Vec3 = if d2 > 1e-24 { s.mean_curvature * 0.25 + s.normal * (d.dot(s.normal) / d2) } else { s.mean_curvature * 0.25 };
    v.norm2()
}

/// Default monotonicity-test slack on forward differences.
pub const MONOTONE_SLACK: f64 = 1e-6;
