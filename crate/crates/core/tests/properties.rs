use capmono::balls::CellGeometry;
use capmono::geom::*;
use capmono::mono::ball::sphere_point_identity;
use capmono::wetted::{winding_number, OrientedCurve};
use proptest::prelude::*;

fn vec3(r: f64) -> impl Strategy<Value = Vec3> {
    (-r..r, -r..r, -r..r).prop_map(|(x, y, z)| Vec3::new(x, y, z))
}

fn unit() -> impl Strategy<Value = Vec3> {
    vec3(1.0).prop_filter("nonzero", |v| v.norm() > 0.1).prop_map(|v| v.normalized())
}

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

proptest! {
    #[test]
    fn reflection_is_an_involution(x in vec3(5.0)) {
        prop_assert_eq!(reflect_halfspace(reflect_halfspace(x)), x);
        prop_assert_eq!(reflect_halfspace(x).z, -x.z);
    }

    #[test]
    fn inversion_is_an_involution(x in vec3(3.0).prop_filter("away from 0", |v| v.norm() > 1e-3)) {
        let y = sphere_inversion(sphere_inversion(x).unwrap()).unwrap();
        prop_assert!((y - x).norm() <= 1e-12 * x.norm());
        prop_assert!((sphere_inversion(x).unwrap().norm() * x.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn normal_split_is_orthogonal(v in vec3(4.0), n in unit()) {
        let (p, t) = normal_split(v, n).unwrap();
        prop_assert!(t.dot(n).abs() < 1e-12);
        prop_assert!((p.norm2() + t.norm2() - v.norm2()).abs() < 1e-11 * (1.0 + v.norm2()));
    }

    #[test]
    fn quarter_h_identity_for_normal_h(h in -5.0..5.0f64, v in vec3(4.0), n in unit()) {
        let r = quarter_h_identity_residual(n * h, v, n).unwrap();
        prop_assert!(r.abs() < 1e-11 * (1.0 + h * h + v.norm2()));
    }

    #[test]
    fn sphere_pairs(x in unit(), y in unit()) {
        prop_assume!((x - y).norm() > 0.1);
        prop_assert!(sphere_point_identity(x, y).unwrap().abs() < 1e-12);
    }

    #[test]
    fn winding_matches_ray_casting(
        pts in prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), 3..9),
        probes in prop::collection::vec((-2.5..2.5f64, -2.5..2.5f64), 20),
    ) {
        let verts: Vec<[f64; 2]> = pts.iter().map(|&(x, y)| [x, y]).collect();
        let curve = OrientedCurve::polygon(&verts, 1);
        for (px, py) in probes {
            if let Ok(w) = winding_number(&curve, Vec3::new(px, py, 0.0)) {
                prop_assert_eq!(w, ray_cast(&verts, [px, py]));
            }
        }
    }

    #[test]
    fn cell_fraction_is_a_monotone_fraction(
        d in vec3(1.0), a in 0.05..1.0f64, b in 0.05..1.0f64, skew in -0.5..0.5f64,
        taper in 0.0..1.0f64, ii in (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64),
    ) {
        let cell = CellGeometry {
            d,
            e1: Vec3::new(a, 0.0, 0.0),
            e2: Vec3::new(skew * b, b, 0.0),
            taper,
            ii: [ii.0, ii.1, ii.2],
        };
        let mut last = 0.0;
        for k in 0..=40 {
            let f = cell.fraction(0.1 * k as f64);
            prop_assert!((0.0..=1.0).contains(&f), "{f}");
            prop_assert!(f >= last - 1e-12, "{f} < {last}");
            last = f;
        }
        prop_assert!((cell.fraction(10.0) - 1.0).abs() < 1e-12);
    }
}
