use capmono::wetted::fan::*;
use capmono::quadrature::gauss_legendre_unit;


fn square() -> Vec<[f64; 2]> {
    vec![[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]]
}

#[test]
fn polygon_area_is_exact() {
    let gl = gauss_legendre_unit(4);
    let a = plane_radial(&square(), [0.3, -0.2], &|s| 0.5 * s * s, f64::INFINITY, &gl);
    assert!((a - 4.0).abs() < 1e-13);
    // centre outside the polygon
    let a = plane_radial(&square(), [3.0, 2.0], &|s| 0.5 * s * s, f64::INFINITY, &gl);
    assert!((a - 4.0).abs() < 1e-13);
}

#[test]
fn clipped_disk_inside_square() {
    let gl = gauss_legendre_unit(6);
    let a = plane_radial(&square(), [0.0, 0.0], &|s| 0.5 * s * s, 0.5, &gl);
    assert!((a - std::f64::consts::PI * 0.25).abs() < 1e-13);
    // quarter disk at a corner
    let a = plane_radial(&square(), [1.0, 1.0], &|s| 0.5 * s * s, 0.5, &gl);
    assert!((a - std::f64::consts::PI * 0.25 / 4.0).abs() < 1e-12, "{a}");
}

#[test]
fn general_matches_radial() {
    let gl = gauss_legendre_unit(8);
    let glr = gauss_legendre_unit(12);
    let f = |x: [f64; 2]| 1.0 + x[0] * x[0] + 0.5 * x[1];
    let v = plane_general(&square(), [0.1, 0.2], &f, &[], &gl, &glr);
    // ∫ over [-1,1]² of 1 + x² + y/2 = 4 + 4/3
    assert!((v - (4.0 + 4.0 / 3.0)).abs() < 1e-12, "{v}");
}
