use capmono::geom::Point3;
use capmono::mono::ball::*;
use std::f64::consts::PI;
use capmono::quadrature::gauss_legendre_unit;


fn direct_cum(p: f64, b: f64, second: bool) -> f64 {
    let xi = 1.0 / p;
    gauss_legendre_unit(400)
        .iter()
        .map(|&(t, w)| {
            let u = b.cos() + (1.0 - b.cos()) * t;
            let v = if second {
                let num = 1.0 - xi * u;
                num / (1.0 + xi * xi - 2.0 * xi * u)
            } else {
                (1.0 - p * u) / (1.0 + p * p - 2.0 * p * u)
            };
            w * (1.0 - b.cos()) * v * v
        })
        .sum()
}

#[test]
fn closed_form_sphere_integrals() {
    for p in [0.3, 0.7, 1.0, 1.6] {
        for b in [0.2, 1.0, 2.5, PI] {
            assert!((f_cum(p, b, 1.0) - direct_cum(p, b, false)).abs() < 1e-9, "p={p} b={b}");
            assert!((f_cum(p, b, -1.0) - direct_cum(p, b, true)).abs() < 1e-9, "p={p} b={b}");
            let y2: f64 = gauss_legendre_unit(40)
                .iter()
                .map(|&(t, w)| {
                    let u = b.cos() + (1.0 - b.cos()) * t;
                    w * (1.0 - b.cos()) * (1.0 + 1.0 / (p * p) - 2.0 * u / p)
                })
                .sum();
            assert!((y2_cum(p, b) - y2).abs() < 1e-12);
        }
    }
}

#[test]
fn sphere_identity_examples() {
    let r = sphere_point_identity(Point3::new(1.0, 0.0, 0.0), Point3::new(0.0, 1.0, 0.0)).unwrap();
    assert!(r.abs() < 1e-14);
    let r = sphere_point_identity(Point3::new(0.0, 0.0, 1.0), Point3::new(0.0, 0.0, -1.0)).unwrap();
    assert!(r.abs() < 1e-15);
    assert!(sphere_point_identity(Point3::new(0.0, 0.0, 1.0), Point3::new(0.0, 0.0, 1.0)).is_err());
}
