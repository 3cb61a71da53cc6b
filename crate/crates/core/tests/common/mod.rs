#![allow(dead_code)]

use capmono::quadrature::QuadratureRule;
use capmono::surface::{sample_chart, ParametricChart, SampledSurface};
use capmono::wetted::WettedRegion;

pub fn sample(chart: capmono::Result<ParametricChart>, n: usize) -> SampledSurface {
    sample_chart(&chart.unwrap(), n, n, QuadratureRule::Midpoint).unwrap()
}

pub fn sample_gl(chart: capmono::Result<ParametricChart>, n: usize) -> SampledSurface {
    sample_chart(&chart.unwrap(), n, n, QuadratureRule::GaussLegendre).unwrap()
}

pub fn with_region(s: SampledSurface) -> (SampledSurface, WettedRegion) {
    let r = WettedRegion::from_surface(&s).unwrap();
    (s, r)
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}
