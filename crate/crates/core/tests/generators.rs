use capmono::surface::*;
use std::f64::consts::PI;

#[test]
fn modes() {
    assert_eq!(perturbation_mode(0, 0.3, 0.4), 1.0);
    assert!((perturbation_mode(2, 0.3, 0.4) - (0.09 - 0.16)).abs() < 1e-15);
    assert!((perturbation_mode(3, 1.0, 1.0) - (-2.0)).abs() < 1e-12);
}

#[test]
fn cap_ball_free_boundary_off_equator() {
    // orthogonal sphere through the 45-degree circle: centre sqrt(2), radius 1
    let c = make_cap_ball(PI / 2.0, PI / 4.0).unwrap();
    let apex = c.eval(0.0, 0.0);
    assert!((apex.z - (2f64.sqrt() - 1.0)).abs() < 1e-12);
    let b = c.eval(1.0, 0.0);
    assert!((b.norm() - 1.0).abs() < 1e-12);
}

#[test]
fn rejects_bad_input() {
    assert!(make_cap_halfspace(0.0, 1.0, [0.0, 0.0]).is_err());
    assert!(make_cap_halfspace(1.0, -1.0, [0.0, 0.0]).is_err());
    assert!(make_flat_disk_ball(4.0).is_err());
    assert!(make_cap_ball(1.0, 2.0).is_err());
}
