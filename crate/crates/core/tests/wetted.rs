mod common;

use capmono::geom::{Point3, Vec3};
use capmono::surface::make_flat_disk_ball;
use capmono::wetted::*;
use common::*;
use std::f64::consts::PI;

/// Signed crossings of the ray from x towards +e1.
fn ray_cast(verts: &[[f64; 2]], x: [f64; 2]) -> i32 {
    let n = verts.len();
    let mut w = 0;
    for i in 0..n {
        let (a, b) = (verts[i], verts[(i + 1) % n]);
        let side = (b[0] - a[0]) * (x[1] - a[1]) - (x[0] - a[0]) * (b[1] - a[1]);
        if a[1] <= x[1] && b[1] > x[1] && side > 0.0 {
            w += 1;
        } else if a[1] > x[1] && b[1] <= x[1] && side < 0.0 {
            w -= 1;
        }
    }
    w
}

fn bowtie() -> Vec<[f64; 2]> {
    vec![[-1.0, -1.0], [2.0, 2.0], [2.0, -2.0], [-1.0, 1.0]]
}

#[test]
fn circle_windings() {
    let c = OrientedCurve::circle(0.0, 0.0, 1.0, 256, 1);
    assert_eq!(winding_number(&c, Vec3::ZERO).unwrap(), 1);
    assert_eq!(winding_number(&c, Vec3::new(3.0, 0.0, 0.0)).unwrap(), 0);
    let twice = OrientedCurve::circle(0.0, 0.0, 1.0, 256, 2);
    assert_eq!(winding_number(&twice, Vec3::ZERO).unwrap(), 2);
    assert!(winding_number(&c, Vec3::new(1.0, 0.0, 0.0)).is_err());
}

#[test]
fn oriented_areas() {
    let ccw = OrientedCurve::circle(0.0, 0.0, 1.0, 4096, 1);
    assert!((oriented_area(&[ccw]).unwrap() - PI).abs() < 1e-6);
    let cw = OrientedCurve::circle(0.0, 0.0, 1.0, 4096, -1);
    assert!((oriented_area(&[cw]).unwrap() + PI).abs() < 1e-6);
    let sq = OrientedCurve::polygon(&[[0.0, 0.0], [2.0, 0.0], [2.0, 2.0], [0.0, 2.0]], 3);
    assert!((oriented_area(&[sq]).unwrap() - 4.0).abs() < 1e-12);
}

#[test]
fn eta_integrals_on_the_plane() {
    let region = WettedRegion::new(vec![OrientedCurve::circle(0.0, 0.0, 1.0, 1024, 1)]).unwrap();
    let one = eta_integral(&region, &|_| 1.0).unwrap();
    assert!((one - PI).abs() < 1e-4);
    let kernel = |x: Point3| 1.0 / (x - Vec3::new(0.0, 0.0, 1.0)).norm2().powi(2);
    let v = eta_integral(&region, &kernel).unwrap();
    // ∫_0^1 2πr (r² + 1)^−2 dr = π/2
    assert!((v - PI / 2.0).abs() < 1e-3, "{v}");
    let grid = region.clone().with_route(EtaRoute::Grid);
    assert!((eta_integral(&grid, &kernel).unwrap() - PI / 2.0).abs() < 1e-3);
}

#[test]
fn figure_eight_lobes_cancel() {
    let verts = bowtie();
    let curve = OrientedCurve::polygon(&verts, 4);
    // left lobe +1 (area 1), right lobe −1 (area 4)
    let region = WettedRegion::new(vec![curve.clone()]).unwrap();
    assert!((eta_integral(&region, &|_| 1.0).unwrap() + 3.0).abs() < 1e-10);
    assert!((oriented_area(std::slice::from_ref(&curve)).unwrap() + 3.0).abs() < 1e-12);
    // grid oracle with ray casting at every node
    let n = 600;
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            let x = [-1.0 + 3.0 * (i as f64 + 0.5) / n as f64, -2.0 + 4.0 * (j as f64 + 0.5) / n as f64];
            acc += ray_cast(&verts, x) as f64;
        }
    }
    assert!((acc * 12.0 / (n * n) as f64 + 3.0).abs() < 2e-2);
    assert_eq!(rotation_index(&curve).unwrap(), 0);
    assert_eq!(rotation_index(&OrientedCurve::circle(0.0, 0.0, 1.0, 64, 1)).unwrap(), 1);
}

#[test]
fn spherical_winding_and_gauss_bonnet() {
    let th = PI / 3.0;
    let (s, region) = with_region(sample(make_flat_disk_ball(th), 64));
    assert_eq!(spherical_wind(&region, Vec3::new(0.0, 0.0, 1.0)).unwrap(), 1);
    assert_eq!(spherical_wind(&region, Vec3::new(0.0, 0.0, -1.0)).unwrap(), 0);
    assert_eq!(rotation_index(&region.curves[0]).unwrap(), 1);
    let turning = s.integrate_boundary(|b| b.wetting_curvature);
    let eta = region.area().unwrap();
    assert!((eta - (2.0 * PI - turning)).abs() < 1e-4, "{eta} {turning}");
    assert!((eta - 2.0 * PI * (1.0 - th.cos())).abs() < 1e-4);
    let lat = WettedRegion::new(vec![OrientedCurve::latitude_circle(0.25, 2048)]).unwrap();
    assert!((lat.area().unwrap() - 2.0 * PI * 0.75).abs() < 1e-5);
}

#[test]
fn curve_table_round_trip() {
    let region = WettedRegion::new(vec![OrientedCurve::circle(0.5, 0.0, 1.0, 32, 1)]).unwrap();
    let mut buf = Vec::new();
    write_curves(&region, &mut buf).unwrap();
    let back = read_curves(&buf[..]).unwrap();
    assert_eq!(back.curves[0].samples, region.curves[0].samples);
}
