mod common;

use capmono::field::TestVectorField;
use capmono::geom::{Point3, Vec3};
use capmono::mono::ball::*;
use capmono::surface::*;
use capmono::wetted::WettedRegion;
use common::*;
use std::f64::consts::PI;

fn ball_cap(th: f64, lat: f64, n: usize) -> (SampledSurface, WettedRegion) {
    with_region(sample(make_cap_ball(th, lat), n))
}

#[test]
fn branch_selection() {
    assert_eq!(Branch::of(Vec3::ZERO), Branch::Origin);
    assert_eq!(Branch::of(Point3::new(0.0, 0.0, 1e-6)), Branch::General);
    assert_eq!(Branch::Origin.name(), "origin");
    let (s, r) = ball_cap(2.0 * PI / 3.0, 0.2, 32);
    assert!(volkmann_g_pair(&s, &r, Vec3::ZERO, 0.5).is_err());
}

#[test]
fn free_boundary_angle_has_no_capillary_correction() {
    let (s, r) = ball_cap(PI / 2.0, PI / 4.0, 64);
    let x0 = Point3::new(0.1, 0.2, 0.5);
    for rad in [0.3, 0.8, 2.0] {
        let (g, gh) = volkmann_g_pair(&s, &r, x0, rad).unwrap();
        let (gt, ght) = capillary_g_pair(&s, &r, x0, rad).unwrap();
        assert!((g - gt).abs() < 1e-14 && (gh - ght).abs() < 1e-14);
    }
}

#[test]
fn identity_on_disk_and_cap() {
    for (s, r) in [with_region(sample(make_flat_disk_ball(PI / 3.0), 128)), ball_cap(2.0 * PI / 3.0, 0.2, 128)] {
        let contact = s.boundary[0].point;
        for (x0, sig, rho) in [(contact, 0.1, 2.0), (Point3::new(0.1, -0.1, 0.3), 0.1, 2.0), (Vec3::ZERO, 0.5, 1.5)] {
            let res = ball_identity_residual(&s, &r, x0, sig, rho).unwrap();
            assert!(res.normalized.abs() < 1e-2, "{x0:?}: {res:?}");
        }
    }
}

#[test]
fn origin_branch_hat_term_saturates() {
    let (s, r) = with_region(sample(make_flat_disk_ball(PI / 3.0), 64));
    let probe = BallProbe::new(&s, &r, Vec3::ZERO).unwrap();
    let gamma = gamma_total(&s);
    let sin = (PI / 3.0).sin();
    assert!((probe.terms(0.5).unwrap().g_hat + sin * gamma / (2.0 * PI)).abs() < 1e-12);
    assert!((probe.terms(2.0).unwrap().g_hat + 0.25 * sin * gamma / (2.0 * PI)).abs() < 1e-12);
    assert_eq!(probe.deficit_term(0.1, 1.0).unwrap(), 0.0);
}

#[test]
fn profile_at_a_contact_point_is_monotone() {
    let (s, r) = ball_cap(2.0 * PI / 3.0, 0.2, 128);
    let grid: Vec<f64> = (0..20).map(|i| 0.05 * 40f64.powf(i as f64 / 19.0)).collect();
    let p = ball_profile(&s, &r, Point3::new(0.0, 0.0, 0.5), &grid).unwrap();
    assert_eq!(p.branch, Branch::General);
    assert!(p.violations.is_empty(), "{:?}", p.violations);
}

#[test]
fn minimal_density_on_disks() {
    for th in [PI / 3.0, PI / 2.0, 2.0 * PI / 3.0] {
        let (s, r) = with_region(sample(make_flat_disk_ball(th), 192));
        let m = minimal_density_identity(&s, &r, s.boundary[0].point).unwrap();
        assert!(m.residual.abs() < 1e-2, "θ={th}: {m:?}");
        assert!((m.multiplicity - 1.0).abs() < 2e-2);
    }
    let (c, cr) = ball_cap(2.0 * PI / 3.0, 0.2, 32);
    assert!(matches!(minimal_density_identity(&c, &cr, c.boundary[0].point), Err(capmono::Error::NonMinimal(_))));
}

#[test]
fn limit_identities() {
    let (s, r) = ball_cap(2.0 * PI / 3.0, 0.2, 192);
    let at_origin = limit_identities_ball(&s, &r, Vec3::ZERO).unwrap();
    assert_eq!(at_origin.len(), 1);
    let on_sphere = limit_identities_ball(&s, &r, s.boundary[0].point).unwrap();
    assert_eq!(on_sphere.iter().map(|l| l.name.as_str()).collect::<Vec<_>>(), ["general", "sphere"]);
    for l in at_origin.iter().chain(&on_sphere) {
        assert!(l.residual.abs() < 2e-2 * l.rhs.abs().max(1.0), "{l:?}");
    }
}

#[test]
fn first_variation_with_position_and_rotation() {
    for (s, r) in [with_region(sample(make_flat_disk_ball(PI / 3.0), 128)), ball_cap(2.0 * PI / 3.0, 0.2, 128)] {
        let v = first_variation_residual_ball(&s, &r, &TestVectorField::position()).unwrap();
        assert!(v.abs() < 1e-3, "{v}");
        let rot = first_variation_residual_ball(&s, &r, &TestVectorField::rotation(Vec3::new(0.0, 0.0, 1.0))).unwrap();
        assert!(rot.abs() < 1e-6, "{rot}");
    }
}

#[test]
fn sphere_point_identity_domain() {
    let x = Point3::new(1.0, 0.0, 0.0);
    assert!(sphere_point_identity(x, x).is_err());
    assert!(sphere_point_identity(x, Point3::new(0.5, 0.0, 0.0)).is_err());
    assert!(sphere_point_identity(x, Point3::new(0.0, 1.0, 0.0)).unwrap().abs() < 1e-15);
}
