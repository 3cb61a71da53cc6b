use capmono::energy::*;
use std::f64::consts::PI;

#[test]
fn intercept_of_exact_line() {
    let r = [0.1, 0.2, 0.3, 0.4];
    let y: Vec<f64> = r.iter().map(|x| 0.5 + 2.0 * x).collect();
    assert!((extrapolate_to_zero(&r, &y) - 0.5).abs() < 1e-14);
}

#[test]
fn cap_angle_limits() {
    assert!(sphere_cap_angle(1.0, 0.0).is_none());
    assert!((sphere_cap_angle(1.0, 2.0).unwrap() - PI).abs() < 1e-12);
    // chord of length √2 subtends a right angle
    assert!((sphere_cap_angle(1.0, 2f64.sqrt()).unwrap() - PI / 2.0).abs() < 1e-12);
    assert!(sphere_cap_angle(0.5, 0.4).is_none());
}
