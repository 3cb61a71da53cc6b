//! Run configuration: TOML with fixed sections. `to_canonical` is the canonical form; parsing it
//! and writing it again reproduces the same bytes.

use crate::error::{Error, Result};
use crate::geom::{AmbientKind, Point3, Vec3};
use crate::quadrature::QuadratureRule;
use crate::surface::{make_cap_ball, make_cap_halfspace, make_flat_disk_ball, perturb, sample_chart, ParametricChart, SampledSurface};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub const GENERATORS: [&str; 4] = ["cap", "hemisphere", "flat-disk-ball", "cap-ball"];

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub run: RunSection,
    #[serde(default)]
    pub generator: GeneratorSection,
    #[serde(default)]
    pub quadrature: QuadratureSection,
    #[serde(default)]
    pub probes: ProbeSection,
    #[serde(default)]
    pub radii: RadiiSection,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub tolerance: ToleranceSection,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunSection {
    /// "half-space" or "ball"; implied by the generator when omitted.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ambient: Option<String>,
    pub theta: f64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GeneratorSection {
    pub name: String,
    /// Cap radius (half-space).
    #[serde(rename = "R")]
    pub radius: f64,
    pub center: [f64; 2],
    /// Latitude of the contact circle on S² (cap-ball).
    pub latitude: f64,
    pub amplitude: f64,
    pub mode: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct QuadratureSection {
    pub nu: usize,
    pub nv: usize,
    pub rule: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ProbeSection {
    pub points: Vec<[f64; 3]>,
    /// Include the first boundary sample as a probe.
    pub contact: bool,
    /// Number of extra random probes drawn from the seed.
    pub random: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RadiiSection {
    /// Geometric r-grid.
    pub r_min: f64,
    pub r_max: f64,
    pub count: usize,
    /// (σ, ρ) pairs for identity residuals.
    pub pairs: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    pub dir: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ToleranceSection {
    /// Bound on normalized identity residuals.
    pub residual: f64,
    /// Allowed drop of G between neighbouring radii.
    pub monotone: f64,
}

impl Default for RunSection {
    fn default() -> Self {
        RunSection { ambient: None, theta: 2.0 * PI / 3.0, seed: 0 }
    }
}

impl Default for GeneratorSection {
    fn default() -> Self {
        GeneratorSection { name: "cap".into(), radius: 1.0, center: [0.0, 0.0], latitude: 0.5, amplitude: 0.0, mode: 0 }
    }
}

impl Default for QuadratureSection {
    fn default() -> Self {
        QuadratureSection { nu: 128, nv: 128, rule: "midpoint".into() }
    }
}

impl Default for ProbeSection {
    fn default() -> Self {
        ProbeSection { points: Vec::new(), contact: true, random: 0 }
    }
}

impl Default for RadiiSection {
    fn default() -> Self {
        RadiiSection { r_min: 0.05, r_max: 4.0, count: 40, pairs: vec![[0.2, 2.0]] }
    }
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection { dir: "out".into() }
    }
}

impl Default for ToleranceSection {
    fn default() -> Self {
        ToleranceSection { residual: 1e-3, monotone: 1e-6 }
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let c: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_canonical(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if !GENERATORS.contains(&self.generator.name.as_str()) {
            return bad(format!("unknown generator '{}' (expected one of {})", self.generator.name, GENERATORS.join(", ")));
        }
        if let Some(a) = &self.run.ambient {
            let kind = crate::surface::io::parse_ambient_kind(a).map_err(|e| Error::Config(e.to_string()))?;
            if kind != self.ambient_kind() {
                return bad(format!("generator '{}' does not live in ambient '{a}'", self.generator.name));
            }
        }
        if !(self.run.theta > 0.0 && self.run.theta < PI) {
            return bad(format!("theta must lie in (0, pi), got {}", self.run.theta));
        }
        if QuadratureRule::parse(&self.quadrature.rule).is_none() {
            return bad(format!("unknown quadrature rule '{}'", self.quadrature.rule));
        }
        if self.quadrature.nu < 8 || self.quadrature.nv < 8 {
            return bad(format!("resolution {}x{} below 8x8", self.quadrature.nu, self.quadrature.nv));
        }
        let r = &self.radii;
        if !(r.r_min > 0.0 && r.r_max > r.r_min && r.count >= 2) {
            return bad("radii need 0 < r_min < r_max and count >= 2".into());
        }
        if r.pairs.iter().any(|p| !(p[0] > 0.0 && p[1] > p[0])) {
            return bad("each (sigma, rho) pair needs 0 < sigma < rho".into());
        }
        if !(self.tolerance.residual > 0.0 && self.tolerance.monotone >= 0.0) {
            return bad("tolerances must be positive".into());
        }
        Ok(())
    }

    pub fn ambient_kind(&self) -> AmbientKind {
        match self.generator.name.as_str() {
            "flat-disk-ball" | "cap-ball" => AmbientKind::UnitBall,
            _ => AmbientKind::HalfSpace,
        }
    }

    pub fn rule(&self) -> QuadratureRule {
        QuadratureRule::parse(&self.quadrature.rule).unwrap_or(QuadratureRule::Midpoint)
    }

    /// Contact angle actually used; the hemisphere ignores `run.theta`.
    pub fn theta(&self) -> f64 {
        if self.generator.name == "hemisphere" {
            PI / 2.0
        } else {
            self.run.theta
        }
    }

    pub fn chart(&self) -> Result<ParametricChart> {
        let g = &self.generator;
        let base = match g.name.as_str() {
            "cap" => make_cap_halfspace(self.theta(), g.radius, g.center)?,
            "hemisphere" => make_cap_halfspace(PI / 2.0, g.radius, g.center)?,
            "flat-disk-ball" => make_flat_disk_ball(self.theta())?,
            "cap-ball" => make_cap_ball(self.theta(), g.latitude)?,
            other => return Err(Error::Config(format!("unknown generator '{other}'"))),
        };
        perturb(&base, g.amplitude, g.mode)
    }

    pub fn sample(&self) -> Result<SampledSurface> {
        sample_chart(&self.chart()?, self.quadrature.nu, self.quadrature.nv, self.rule())
    }

    /// Geometric grid from r_min to r_max.
    pub fn r_grid(&self) -> Vec<f64> {
        let r = &self.radii;
        let q = (r.r_max / r.r_min).ln() / (r.count - 1) as f64;
        (0..r.count).map(|i| if i + 1 == r.count { r.r_max } else { r.r_min * (q * i as f64).exp() }).collect()
    }

    /// Explicit probes, then the contact point, then seeded random probes inside the ambient.
    pub fn probe_points(&self, surface: &SampledSurface) -> Vec<Point3> {
        use rand::{Rng, SeedableRng};
        let mut out: Vec<Point3> = self.probes.points.iter().map(|p| Vec3::from_array(*p)).collect();
        if self.probes.contact {
            if let Some(b) = surface.boundary.first() {
                out.push(b.point);
            }
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(self.run.seed);
        for _ in 0..self.probes.random {
            let p = match self.ambient_kind() {
                AmbientKind::HalfSpace => Vec3::new(rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5), rng.random_range(0.0..1.5)),
                AmbientKind::UnitBall => loop {
                    let p = Vec3::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                    if p.norm() < 0.95 {
                        break p;
                    }
                },
            };
            out.push(p);
        }
        out
    }
}
