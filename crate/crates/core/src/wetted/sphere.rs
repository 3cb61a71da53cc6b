use super::curve::OrientedCurve;
use crate::error::{Error, Result};
use crate::geom::{Point3, Vec3, E1, E2};
use std::collections::HashMap;


enum Crossing {
    None,
    Signed(i32),
    Degenerate,
}

fn arc_crossing(p1: Point3, p2: Point3, e1: Point3, e2: Point3) -> Crossing {
    let np = p1.cross(p2);
    let ne = e1.cross(e2);
    let (s1, s2) = (np.dot(e1), np.dot(e2));
    if (s1 > 0.0 && s2 > 0.0) || (s1 < 0.0 && s2 < 0.0) {
        return Crossing::None;
    }
    let (t1, t2) = (ne.dot(p1), ne.dot(p2));
    if (t1 > 0.0 && t2 > 0.0) || (t1 < 0.0 && t2 < 0.0) {
        return Crossing::None;
    }
    let eps = 1e-14 * np.norm().max(1e-300) * ne.norm().max(1e-300);
    if s1.abs() < eps || s2.abs() < eps || t1.abs() < eps || t2.abs() < eps {
        return Crossing::Degenerate;
    }
    let mut x = np.cross(ne);
    if x.dot(p1 + p2) < 0.0 {
        x = -x;
    }
    let on_p = p1.cross(x).dot(np) > 0.0 && x.cross(p2).dot(np) > 0.0;
    let on_e = e1.cross(x).dot(ne) > 0.0 && x.cross(e2).dot(ne) > 0.0;
    if !(on_p && on_e) {
        return Crossing::None;
    }
    let dir = np.cross(x);
    Crossing::Signed(if dir.dot(ne) > 0.0 { 1 } else { -1 })
}

fn slerp_path(a: Point3, b: Point3) -> Option<Vec<Point3>> {
    if (a + b).norm() < 1e-6 {
        return None;
    }
    let ang = a.dot(b).clamp(-1.0, 1.0).acos();
    let m = (ang / (0.45 * std::f64::consts::PI)).ceil().max(1.0) as usize;
    let mut pts = Vec::with_capacity(m + 1);
    for k in 0..=m {
        let t = k as f64 / m as f64;
        let p = if ang < 1e-12 {
            a
        } else {
            (a * ((1.0 - t) * ang).sin() + b * (t * ang).sin()) / ang.sin()
        };
        pts.push(p.normalized());
    }
    Some(pts)
}

fn crossings(curves: &[OrientedCurve], a: Point3, b: Point3) -> Option<i32> {
    let path = slerp_path(a, b)?;
    let mut total = 0;
    for seg in path.windows(2) {
        if (seg[0] - seg[1]).norm() == 0.0 {
            continue;
        }
        for c in curves {
            for (e1, e2) in c.edges() {
                match arc_crossing(seg[0], seg[1], e1.normalized(), e2.normalized()) {
                    Crossing::None => {}
                    Crossing::Signed(s) => total += s,
                    Crossing::Degenerate => return None,
                }
            }
        }
    }
    Some(total)
}

fn perpendicular(a: Point3) -> Vec3 {
    let t = if a.cross(E1).norm() > 0.5 { E1 } else { E2 };
    (t - a * t.dot(a)).normalized()
}

/// Winding number of points of S² with respect to closed spherical curves, propagated from a
/// reference point of known winding by signed crossings.
pub(crate) fn wind_from(curves: &[OrientedCurve], reference: (Point3, i32), x: Point3) -> Result<i32> {
    let x = x.normalized();
    let d = curves.iter().map(|c| c.distance_to(x)).fold(f64::INFINITY, f64::min);
    if !(d > 1e-9) {
        return Err(Error::UndefinedWinding { distance: d });
    }
    let (mut r, mut w) = (reference.0.normalized(), reference.1);
    for attempt in 0..8 {
        let direct = crossings(curves, r, x);
        let via = || {
            let m = perpendicular(r);
            Some(crossings(curves, r, m)? + crossings(curves, m, x)?)
        };
        let got = match direct {
            Some(c) => Some(c),
            None if (r + x).norm() < 1e-6 => via(),
            None => None,
        };
        if let Some(c) = got {
            return Ok(w + c);
        }
        // jitter the reference and carry its winding along
        let step = 1e-3 * (attempt as f64 + 1.0);
        let t = perpendicular(r);
        let t = (t + r.cross(t) * (0.37 * attempt as f64)).normalized();
        let r2 = (r + t * step).normalized();
        match crossings(curves, r, r2) {
            Some(c) => {
                w += c;
                r = r2;
            }
            None => continue,
        }
    }
    Err(Error::Geometry("spherical winding failed after jittered retries".into()))
}

/// Vertices of the icosahedron refined `level` times, projected to S².
pub fn icosphere(level: u32) -> Vec<Point3> {
    let t = (1.0 + 5f64.sqrt()) / 2.0;
    let mut verts: Vec<Point3> = [
        (-1.0, t, 0.0),
        (1.0, t, 0.0),
        (-1.0, -t, 0.0),
        (1.0, -t, 0.0),
        (0.0, -1.0, t),
        (0.0, 1.0, t),
        (0.0, -1.0, -t),
        (0.0, 1.0, -t),
        (t, 0.0, -1.0),
        (t, 0.0, 1.0),
        (-t, 0.0, -1.0),
        (-t, 0.0, 1.0),
    ]
    .iter()
    .map(|&(x, y, z)| Vec3::new(x, y, z).normalized())
    .collect();
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    for _ in 0..level {
        let mut cache: HashMap<(usize, usize), usize> = HashMap::new();
        let mut mid = |a: usize, b: usize, verts: &mut Vec<Point3>| {
            let key = (a.min(b), a.max(b));
            *cache.entry(key).or_insert_with(|| {
                verts.push(((verts[a] + verts[b]) * 0.5).normalized());
                verts.len() - 1
            })
        };
        let mut next = Vec::with_capacity(faces.len() * 4);
        for f in &faces {
            let ab = mid(f[0], f[1], &mut verts);
            let bc = mid(f[1], f[2], &mut verts);
            let ca = mid(f[2], f[0], &mut verts);
            next.push([f[0], ab, ca]);
            next.push([f[1], bc, ab]);
            next.push([f[2], ca, bc]);
            next.push([ab, bc, ca]);
        }
        faces = next;
    }
    verts
}

