mod common;

use capmono::field::{Tangency, TestVectorField};
use capmono::geom::{Point3, Vec3};
use capmono::mono::halfspace::*;
use capmono::surface::*;
use common::*;
use std::f64::consts::PI;

fn cap(n: usize) -> (SampledSurface, capmono::wetted::WettedRegion) {
    with_region(sample(make_cap_halfspace(2.0 * PI / 3.0, 1.0, [0.0, 0.0]), n))
}

#[test]
fn reflection_is_trivial_on_the_plane() {
    let (s, r) = cap(64);
    let a = s.boundary[5].point;
    let a = Point3::new(a.x, a.y, 0.0);
    let (g, gh) = g_pair(&s, &r, a, 0.7).unwrap();
    assert!((g - gh).abs() < 1e-12);
    let (g, gh) = g_pair(&s, &r, Point3::new(0.0, 0.0, 1.2), 0.7).unwrap();
    assert!((g - gh).abs() > 1e-3);
}

#[test]
fn residual_domain() {
    let (s, r) = cap(32);
    let a = Point3::new(0.0, 0.0, 1.0);
    assert_eq!(simon_residual(&s, &r, a, 0.4, 0.4).unwrap().raw, 0.0);
    assert!(simon_residual(&s, &r, a, 0.5, 0.4).is_err());
    assert!(simon_residual(&s, &r, a, 0.0, 0.4).is_err());
    assert!(g_pair(&s, &r, a, -1.0).is_err());
    assert!(g_profile(&s, &r, a, &[0.5, 0.4]).is_err());
    let ball = sample(make_flat_disk_ball(1.0), 16);
    let br = capmono::wetted::WettedRegion::from_surface(&ball).unwrap();
    assert!(matches!(simon_residual(&ball, &br, a, 0.1, 0.2), Err(capmono::Error::Ambient(_))));
}

#[test]
fn identity_holds_on_the_cap() {
    let (s, r) = cap(128);
    let b = s.boundary[0].point;
    for a in [Point3::new(0.0, 0.0, 0.8), Point3::new(b.x, b.y, 0.0), Point3::new(0.4, -0.2, 0.3)] {
        for (sig, rho) in [(0.1, 0.5), (0.3, 1.5), (0.1, 3.0)] {
            let res = simon_residual(&s, &r, a, sig, rho).unwrap();
            assert!(res.normalized.abs() < 1e-3, "a={a:?} ({sig},{rho}): {res:?}");
        }
    }
}

#[test]
fn deficit_vanishes_on_the_plane_and_not_above() {
    let (s, r) = cap(64);
    let on = HalfspaceProbe::new(&s, &r, Point3::new(0.2, 0.0, 0.0)).unwrap();
    assert_eq!(on.deficit_term(0.1, 2.0).unwrap(), 0.0);
    let above = HalfspaceProbe::new(&s, &r, Point3::new(0.2, 0.0, 0.3)).unwrap();
    // cosθ < 0 makes the deficit positive
    assert!(above.deficit_term(0.1, 2.0).unwrap() > 0.0);
}

#[test]
fn profile_of_the_cap_stays_below_its_limit() {
    let (s, r) = cap(128);
    let grid: Vec<f64> = (0..20).map(|i| 0.05 * 80f64.powf(i as f64 / 19.0)).collect();
    let p = g_profile(&s, &r, Point3::new(0.0, 0.0, 0.6), &grid).unwrap();
    assert!(p.violations.is_empty(), "{:?}", p.violations);
    assert!(p.doubling_ratio <= 1.0);
    assert_eq!(p.residual[0], 0.0);
    // G increases towards its r → ∞ value ∫|H⃗|²/8π
    let limit = s.integrate(|x| x.mean_curvature.norm2()) / (8.0 * PI);
    assert!(p.g_total.iter().all(|&g| g <= limit + 1e-6), "{:?} > {limit}", p.g_total.last());
}

#[test]
fn boundary_limit_identity() {
    let (s, r) = cap(192);
    let b = s.boundary[0].point;
    let l = limit_identity_boundary(&s, &r, Point3::new(b.x, b.y, 0.0)).unwrap();
    assert!(l.residual.abs() < 1e-2, "{l:?}");
    assert!(limit_identity_boundary(&s, &r, Point3::new(0.0, 0.0, 0.1)).is_err());
}

#[test]
fn first_variation() {
    let (s, r) = cap(128);
    assert_eq!(first_variation_residual_halfspace(&s, &r, &TestVectorField::zero()).unwrap(), 0.0);
    let c = first_variation_residual_halfspace(&s, &r, &TestVectorField::constant(Vec3::new(1.0, 0.5, 0.0))).unwrap();
    assert!(c.abs() < 1e-6, "{c}");
    let b = s.boundary[0].point;
    let f = TestVectorField::smoothed_proof_field(Point3::new(b.x, b.y, 0.0), 0.4, 1.5, 0.2).unwrap();
    let v = first_variation_residual_halfspace(&s, &r, &f).unwrap();
    assert!(v.abs() < 1e-3, "{v}");
    let up = TestVectorField::new("up", Tangency::TangentToWetting, |_| (Vec3::new(0.0, 0.0, 1.0), Default::default()));
    assert!(matches!(first_variation_residual_halfspace(&s, &r, &up), Err(capmono::Error::Contract(_))));
}
