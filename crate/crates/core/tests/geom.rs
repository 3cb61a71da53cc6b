use capmono::Error;
use capmono::geom::*;

#[test]
fn reflection_examples() {
    assert_eq!(reflect_halfspace(Vec3::new(1.0, 2.0, 3.0)), Vec3::new(1.0, 2.0, -3.0));
    let p = Vec3::new(0.3, -1.0, 0.0);
    assert_eq!(reflect_halfspace(p), p);
}

#[test]
fn inversion_examples() {
    assert_eq!(sphere_inversion(Vec3::new(0.5, 0.0, 0.0)).unwrap(), Vec3::new(2.0, 0.0, 0.0));
    assert!(matches!(sphere_inversion(Vec3::ZERO), Err(Error::Domain(_))));
    let x = Vec3::new(0.0, 0.0, 1.0);
    let x0 = Vec3::new(0.5, 0.0, 0.0);
    let xi = sphere_inversion(x0).unwrap();
    let lhs = x0.norm() * (x - xi).norm();
    assert!((lhs - (x - x0).norm()).abs() < 1e-14);
    assert!((lhs - 1.25f64.sqrt()).abs() < 1e-14);
}

#[test]
fn hat_balls() {
    let hs = AmbientSpace::half_space(1.0).unwrap();
    let b = hat_ball(Vec3::new(0.0, 0.0, 1.0), 2.0, &hs).unwrap();
    assert_eq!(b.center, Vec3::new(0.0, 0.0, -1.0));
    assert_eq!(b.radius, 2.0);
    let ball = AmbientSpace::unit_ball(1.0).unwrap();
    let b = hat_ball(Vec3::new(0.5, 0.0, 0.0), 1.0, &ball).unwrap();
    assert_eq!(b.center, Vec3::new(2.0, 0.0, 0.0));
    assert_eq!(b.radius, 2.0);
    assert!(matches!(hat_ball(Vec3::ZERO, 1.0, &ball), Err(Error::NoHatBall)));
}

#[test]
fn split_and_quarter_h() {
    let (p, t) = normal_split(E1, E3).unwrap();
    assert_eq!(p, Vec3::ZERO);
    assert_eq!(t, E1);
    let (p, t) = normal_split(E3, E3).unwrap();
    assert_eq!(p, E3);
    assert_eq!(t, Vec3::ZERO);
    assert!(normal_split(E1, E3 * 1.1).is_err());
    assert_eq!(quarter_h_identity_residual(Vec3::ZERO, Vec3::new(1.0, 2.0, 3.0), E3).unwrap(), 0.0);
    let r = quarter_h_identity_residual(E3 * 3.0, E1 * 2.0, E3).unwrap();
    assert!(r.abs() < 1e-15);
}

#[test]
fn ambient_rejects_bad_angles() {
    assert!(AmbientSpace::half_space(0.0).is_err());
    assert!(AmbientSpace::unit_ball(std::f64::consts::PI).is_err());
    assert!(AmbientSpace::unit_ball(f64::NAN).is_err());
}
