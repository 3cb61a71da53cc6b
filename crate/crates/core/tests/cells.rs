use capmono::balls::CellGeometry;
use capmono::geom::Vec3;
use std::f64::consts::PI;


fn flat(d: Vec3, e1: Vec3, e2: Vec3, taper: f64) -> CellGeometry {
    CellGeometry { d, e1, e2, taper, ii: [0.0; 3] }
}

#[test]
fn square_inside_and_outside() {
    let cell = flat(Vec3::ZERO, Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.0, 1.0, 0.0), 0.0);
    assert!((cell.fraction(1.0) - 1.0).abs() < 1e-14);
    // inscribed disk
    assert!((cell.fraction(0.5) - PI / 4.0).abs() < 1e-14);
    assert_eq!(cell.fraction(0.0), 0.0);
}

#[test]
fn off_plane_centre_shrinks_the_disk() {
    let cell = flat(Vec3::new(0.0, 0.0, 0.3), Vec3::new(2.0, 0.0, 0.0), Vec3::new(0.0, 2.0, 0.0), 0.0);
    let r = (0.25f64 + 0.09).sqrt();
    assert!((cell.fraction(r) - PI * 0.25 / 4.0).abs() < 1e-13);
}

#[test]
fn wedge_cell_is_a_triangle() {
    // triangle (0,0), (1,-1), (1,1) written as a fully tapered cell
    let cell = flat(Vec3::new(0.5, 0.0, 0.0), Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.0, 1.0, 0.0), 1.0);
    assert!((cell.fraction(0.5) - PI * 0.25 / 4.0).abs() < 1e-13);
}

#[test]
fn quarter_disk_at_corner() {
    let cell = flat(Vec3::new(0.5, 0.5, 0.0), Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.0, 1.0, 0.0), 0.0);
    assert!((cell.fraction(0.7) - PI * 0.49 / 4.0).abs() < 1e-13);
}

#[test]
fn curved_cell_matches_subsampling() {
    // patch of the paraboloid z = ½κ(x² + y²) seen from a centre above it
    let (h, kappa) = (0.2, 0.8);
    let e1 = Vec3::new(h, 0.0, 0.0);
    let e2 = Vec3::new(0.3 * h, h, 0.0);
    let p = Vec3::new(0.35, 0.1, 0.0);
    let c = Vec3::new(0.0, 0.0, 0.6);
    let ii = |a: Vec3, b: Vec3| kappa * (a.x * b.x + a.y * b.y);
    let cell = CellGeometry { d: p - c, e1, e2, taper: 0.0, ii: [ii(e1, e1), ii(e1, e2), ii(e2, e2)] };
    for r in [0.62, 0.66, 0.7, 0.74] {
        let m = 600;
        let mut inside = 0usize;
        for i in 0..m {
            for j in 0..m {
                let (s, t) = ((i as f64 + 0.5) / m as f64 - 0.5, (j as f64 + 0.5) / m as f64 - 0.5);
                let v = e1 * s + e2 * t;
                let x = p + v + Vec3::new(0.0, 0.0, 0.5 * ii(v, v));
                if (x - c).norm() < r {
                    inside += 1;
                }
            }
        }
        let est = inside as f64 / (m * m) as f64;
        let planar = flat(p - c, e1, e2, 0.0).fraction(r);
        let got = cell.fraction(r);
        assert!((got - est).abs() < 0.2 * (planar - est).abs() + 2e-3, "r={r} got {got} est {est} planar {planar}");
    }
}
