use capmono::field::*;
use capmono::geom::{AmbientSpace, Mat3, Point3, Vec3, E1};
use capmono::geom::E3;


fn fd_jacobian(f: &TestVectorField, x: Point3) -> Mat3 {
    let h = 1e-6;
    let mut m = Mat3::default();
    for j in 0..3 {
        let mut e = [0.0; 3];
        e[j] = h;
        let e = Vec3::from_array(e);
        let d = (f.eval(x + e).0 - f.eval(x - e).0) / (2.0 * h);
        for i in 0..3 {
            m.0[i][j] = d[i];
        }
    }
    m
}

#[test]
fn jacobians_match_differences() {
    let fields = [
        TestVectorField::position(),
        TestVectorField::rotation(Vec3::new(0.3, -0.2, 0.9)),
        TestVectorField::smoothed_proof_field(Vec3::new(0.1, 0.2, 0.0), 0.2, 1.5, 0.1).unwrap(),
    ];
    for f in &fields {
        for x in [Vec3::new(0.5, 0.1, 0.3), Vec3::new(0.13, 0.21, 0.05), Vec3::new(-0.9, 0.8, 0.4)] {
            let (_, jac) = f.eval(x);
            let fd = fd_jacobian(f, x);
            for i in 0..3 {
                for j in 0..3 {
                    assert!((jac.0[i][j] - fd.0[i][j]).abs() < 1e-5, "{} {i}{j}", f.name);
                }
            }
        }
    }
}

#[test]
fn cutoff_is_c1() {
    let p = CutoffProfile::new(0.2, 1.0, 0.1);
    for knot in [0.15, 0.25, 0.95, 1.05] {
        let (a, da) = p.eval(knot - 1e-9);
        let (b, db) = p.eval(knot + 1e-9);
        assert!((a - b).abs() < 1e-6 && (da - db).abs() < 1e-5);
    }
    assert_eq!(p.eval(2.0), (0.0, 0.0));
}

#[test]
fn tangency_flags() {
    let hs = AmbientSpace::half_space(1.0).unwrap();
    let ball = AmbientSpace::unit_ball(1.0).unwrap();
    assert!(TestVectorField::constant(E1).verify(&hs).is_ok());
    assert!(TestVectorField::smoothed_proof_field(Vec3::new(0.3, 0.0, 0.0), 0.2, 1.0, 0.1).unwrap().verify(&hs).is_ok());
    let bad = TestVectorField::new("bad", Tangency::TangentToWetting, |_| (E3, Mat3::default()));
    assert!(bad.verify(&hs).is_err());
    assert!(TestVectorField::rotation(E3).tangency_defect(&ball) < 1e-14);
    assert!(TestVectorField::rotation(E3).tangency_defect(&hs) < 1e-14);
}
