mod common;

use capmono::geom::E3;
use capmono::quadrature::QuadratureRule;
use capmono::surface::io::{read_surface, write_boundary, write_surface};
use capmono::surface::*;
use common::*;
use std::f64::consts::PI;

#[test]
fn hemisphere_area_and_length() {
    let s = sample_gl(make_cap_halfspace(PI / 2.0, 1.0, [0.0, 0.0]), 64);
    assert!(rel(s.area(), 2.0 * PI) < 1e-4);
    assert!(rel(s.boundary_length(), 2.0 * PI) < 1e-6);
    assert!(rel(gamma_total(&s), 2.0 * PI) < 1e-6);
}

#[test]
fn cap_area_and_boundary_length() {
    let th = 2.0 * PI / 3.0;
    let s = sample_gl(make_cap_halfspace(th, 1.0, [0.3, -0.1]), 64);
    assert!(rel(s.area(), 3.0 * PI) < 1e-4);
    assert!(rel(gamma_total(&s), 2.0 * PI * th.sin()) < 1e-6);
    for b in &s.boundary {
        assert!(b.point.z.abs() < 1e-8);
    }
}

#[test]
fn flat_disk_is_minimal_with_known_areas() {
    for th in [PI / 3.0, PI / 2.0] {
        let s = sample_gl(make_flat_disk_ball(th), 48);
        assert!(s.max_mean_curvature() < 1e-8);
        assert!(rel(s.area(), PI * th.sin().powi(2)) < 1e-6);
        assert!(rel(gamma_total(&s), 2.0 * PI * th.sin()) < 1e-6);
        // 2|Σ| = sinθ|∂Σ|
        assert!((2.0 * s.area() - th.sin() * s.boundary_length()).abs() < 1e-6);
    }
}

#[test]
fn analytic_and_differenced_curvature_agree() {
    let chart = make_cap_halfspace(2.0 * PI / 3.0, 1.0, [0.0, 0.0]).unwrap();
    let fd = chart.without_analytic().with_fd(1e-4, FdScheme::Central);
    let a = sample_chart(&chart, 24, 24, QuadratureRule::GaussLegendre).unwrap();
    let b = sample_chart(&fd, 24, 24, QuadratureRule::GaussLegendre).unwrap();
    let worst = a
        .interior
        .iter()
        .zip(&b.interior)
        .map(|(x, y)| (x.mean_curvature - y.mean_curvature).norm())
        .fold(0.0, f64::max);
    assert!(worst < 1e-6, "{worst}");
}

#[test]
fn contact_residuals_of_generators() {
    for th in [PI / 6.0, PI / 2.0, 5.0 * PI / 6.0] {
        let s = sample(make_cap_halfspace(th, 1.0, [0.0, 0.0]), 32);
        assert!(contact_check(&s) < 1e-10, "θ={th}");
    }
    for (th, lat) in [(2.0 * PI / 3.0, 0.2), (PI / 3.0, 1.0), (PI / 2.0, 0.0)] {
        let s = sample(make_cap_ball(th, lat), 32);
        assert!(contact_check(&s) < 1e-8, "θ={th} lat={lat}");
    }
    assert!(contact_check(&sample(make_flat_disk_ball(1.0), 32)) < 1e-10);
}

#[test]
fn free_boundary_cap_in_ball() {
    // the equatorial free-boundary piece is the flat disk through the origin
    let s = sample_gl(make_cap_ball(PI / 2.0, 0.0), 48);
    assert!(rel(s.area(), PI) < 1e-5);
    assert!(s.interior.iter().all(|p| p.mean_curvature.norm() < 1e-8));
    // off the equator it is a round sphere meeting S² orthogonally
    let s = sample_gl(make_cap_ball(PI / 2.0, PI / 4.0), 48);
    for p in &s.interior {
        let c = capmono::geom::Vec3::new(0.0, 0.0, 2f64.sqrt());
        assert!(((p.point - c).norm() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn perturbation_keeps_boundary_and_breaks_contact() {
    let base = make_cap_halfspace(2.0 * PI / 3.0, 1.0, [0.0, 0.0]).unwrap();
    let same = perturb(&base, 0.0, 2).unwrap();
    let a = sample_chart(&base, 16, 16, QuadratureRule::Midpoint).unwrap();
    let b = sample_chart(&same, 16, 16, QuadratureRule::Midpoint).unwrap();
    assert_eq!(a.interior, b.interior);
    let p = sample(perturb(&base, 0.05, 2), 64);
    assert!(p.boundary.iter().all(|b| b.point.z.abs() < 1e-8));
    assert!(contact_check(&p) > 1e-3);
    let ball = sample(perturb(&make_cap_ball(2.0 * PI / 3.0, 0.4).unwrap(), 0.03, 3), 48);
    assert!(ball.boundary.iter().all(|b| (b.point.norm() - 1.0).abs() < 1e-8));
}

#[test]
fn pointwise_invariants() {
    let th = 2.0 * PI / 3.0;
    let s = sample(make_cap_halfspace(th, 1.0, [0.0, 0.0]), 48);
    for p in &s.interior {
        assert!((p.normal.norm() - 1.0).abs() < 1e-10);
        assert!(p.mean_curvature.cross(p.normal).norm() < 1e-8);
        assert!(p.weight > 0.0 && p.point.z > -1e-8);
    }
    for b in &s.boundary {
        assert!(b.tangent.dot(b.conormal).abs() < 1e-8);
        assert!(b.tangent.dot(b.normal).abs() < 1e-8);
        assert!(b.conormal.dot(b.normal).abs() < 1e-8);
        assert!((b.geodesic_curvature - th.cos() * b.wetting_curvature).abs() < 1e-6);
    }
    let th = PI / 3.0;
    let s = sample(make_cap_ball(th, 0.7), 48);
    for b in &s.boundary {
        assert!((b.geodesic_curvature - th.cos() * b.wetting_curvature - th.sin()).abs() < 1e-6);
    }
}

#[test]
fn degenerate_chart_is_rejected() {
    let cap = make_cap_halfspace(PI / 2.0, 1.0, [0.0, 0.0]).unwrap();
    assert!(perturb(&cap, f64::NAN, 1).is_err());
    assert!(sample_chart(&cap, 4, 4, QuadratureRule::Midpoint).is_err());
}

#[test]
fn table_round_trip_is_lossless() {
    let s = sample(perturb(&make_cap_ball(2.0, 0.5).unwrap(), 0.02, 2), 16);
    let (mut a, mut b) = (Vec::new(), Vec::new());
    write_surface(&s, &mut a).unwrap();
    write_boundary(&s, &mut b).unwrap();
    let back = read_surface(&a[..], &b[..]).unwrap();
    assert_eq!(back.interior, s.interior);
    assert_eq!(back.boundary, s.boundary);
    assert_eq!(back.meta, s.meta);
    assert_eq!(back.ambient, s.ambient);
}

#[test]
fn midpoint_area_converges_at_second_order() {
    let chart = || make_cap_halfspace(2.0 * PI / 3.0, 1.0, [0.0, 0.0]);
    let e: Vec<f64> = [32, 64, 128].iter().map(|&n| (sample(chart(), n).area() - 3.0 * PI).abs()).collect();
    assert!(e[0] / e[1] >= 3.0 && e[1] / e[2] >= 3.0, "{e:?}");
    let flat = sample(make_cap_halfspace(PI / 2.0, 1.0, [0.0, 0.0]), 16);
    assert!(flat.interior.iter().all(|p| p.point.dot(E3) >= 0.0));
}
