//! Exact-geometry integration over winding-weighted regions. The region is swept by signed
//! triangles (centre, v_i, v_{i+1}); each triangle is integrated in polar coordinates about
//! the centre, with the outer variable running along the edge.

use crate::geom::{Point3, Vec3};
use crate::quadrature::NeumaierSum;

/// Roots in (0, 1) of a λ² + b λ + c = 0.
fn unit_roots(a: f64, b: f64, c: f64, out: &mut Vec<f64>) {
    let scale = a.abs().max(b.abs()).max(c.abs());
    if scale == 0.0 {
        return;
    }
    if a.abs() <= 1e-14 * scale {
        if b != 0.0 {
            out.push(-c / b);
        }
    } else {
        let disc = b * b - 4.0 * a * c;
        if disc >= 0.0 {
            let sq = disc.sqrt();
            let q = -0.5 * (b + b.signum() * sq);
            if q != 0.0 {
                out.push(q / a);
                out.push(c / q);
            } else {
                out.push(0.0);
            }
        }
    }
    out.retain(|t| *t > 0.0 && *t < 1.0);
}

fn pieces(mut cuts: Vec<f64>) -> Vec<(f64, f64)> {
    cuts.push(0.0);
    cuts.push(1.0);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
    cuts.windows(2).map(|w| (w[0], w[1])).collect()
}

fn cross2(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

/// ∫ wind · f over the plane region intersected with the disk of radius `smax` about `p`,
/// where f is radial about p and `cum(S) = ∫_0^S f(s) s ds`.
pub fn plane_radial(verts: &[[f64; 2]], p: [f64; 2], cum: &dyn Fn(f64) -> f64, smax: f64, gl: &[(f64, f64)]) -> f64 {
    let n = verts.len();
    let f_max = if smax.is_finite() { cum(smax) } else { 0.0 };
    let mut acc = NeumaierSum::default();
    for i in 0..n {
        let a = [verts[i][0] - p[0], verts[i][1] - p[1]];
        let b = [verts[(i + 1) % n][0] - p[0], verts[(i + 1) % n][1] - p[1]];
        let cr = cross2(a, b);
        if cr == 0.0 {
            continue;
        }
        let d = [b[0] - a[0], b[1] - a[1]];
        let q = |t: f64| [a[0] + t * d[0], a[1] + t * d[1]];
        let mut cuts = Vec::new();
        if smax.is_finite() {
            let dd = d[0] * d[0] + d[1] * d[1];
            let ad = a[0] * d[0] + a[1] * d[1];
            let aa = a[0] * a[0] + a[1] * a[1];
            unit_roots(dd, 2.0 * ad, aa - smax * smax, &mut cuts);
        }
        for (l0, l1) in pieces(cuts) {
            let qm = q(0.5 * (l0 + l1));
            if (qm[0] * qm[0] + qm[1] * qm[1]).sqrt() >= smax {
                let (q0, q1) = (q(l0), q(l1));
                let dpsi = cross2(q0, q1).atan2(q0[0] * q1[0] + q0[1] * q1[1]);
                acc.add(f_max * dpsi);
            } else {
                let mut s = 0.0;
                for &(t, w) in gl {
                    let qq = q(l0 + (l1 - l0) * t);
                    let s2 = qq[0] * qq[0] + qq[1] * qq[1];
                    s += w * cum(s2.sqrt()) / s2;
                }
                acc.add(s * cr * (l1 - l0));
            }
        }
    }
    acc.value()
}

/// ∫ wind · f over the plane region for a general f, polar about p, with optional radial
/// breakpoints where f changes character.
pub fn plane_general(
    verts: &[[f64; 2]],
    p: [f64; 2],
    f: &dyn Fn([f64; 2]) -> f64,
    breaks: &[f64],
    gl: &[(f64, f64)],
    gl_r: &[(f64, f64)],
) -> f64 {
    let n = verts.len();
    let mut acc = NeumaierSum::default();
    for i in 0..n {
        let a = [verts[i][0] - p[0], verts[i][1] - p[1]];
        let b = [verts[(i + 1) % n][0] - p[0], verts[(i + 1) % n][1] - p[1]];
        let cr = cross2(a, b);
        if cr == 0.0 {
            continue;
        }
        let d = [b[0] - a[0], b[1] - a[1]];
        let mut cuts = Vec::new();
        let dd = d[0] * d[0] + d[1] * d[1];
        let ad = a[0] * d[0] + a[1] * d[1];
        let aa = a[0] * a[0] + a[1] * a[1];
        for &r in breaks {
            unit_roots(dd, 2.0 * ad, aa - r * r, &mut cuts);
        }
        for (l0, l1) in pieces(cuts) {
            let mut s = 0.0;
            for &(t, w) in gl {
                let l = l0 + (l1 - l0) * t;
                let q = [a[0] + l * d[0], a[1] + l * d[1]];
                let s2 = q[0] * q[0] + q[1] * q[1];
                let smax = s2.sqrt();
                let e = [q[0] / smax, q[1] / smax];
                let mut knots = vec![0.0];
                knots.extend(breaks.iter().copied().filter(|&r| r > 0.0 && r < smax));
                knots.push(smax);
                knots.sort_by(f64::total_cmp);
                let mut inner = 0.0;
                for k in knots.windows(2) {
                    let (r0, r1) = (k[0], k[1]);
                    for &(tr, wr) in gl_r {
                        let r = r0 + (r1 - r0) * tr;
                        inner += wr * (r1 - r0) * r * f([p[0] + r * e[0], p[1] + r * e[1]]);
                    }
                }
                s += w * inner / s2;
            }
            acc.add(s * cr * (l1 - l0));
        }
    }
    acc.value()
}

/// Spherical analogue of `plane_radial`: f radial in the polar angle β about the unit vector
/// c, `cum(B) = ∫_0^B f(β) sin β dβ`, clipped at β ≤ bmax. Returns the fan sum, which counts
/// wind(x) − wind(−c); the caller adds the constant part.
pub fn sphere_radial(verts: &[Point3], c: Point3, cum: &dyn Fn(f64) -> f64, bmax: f64, gl: &[(f64, f64)]) -> f64 {
    let n = verts.len();
    let clip = bmax < std::f64::consts::PI;
    let k = bmax.cos();
    let f_max = cum(bmax.min(std::f64::consts::PI));
    let mut acc = NeumaierSum::default();
    for i in 0..n {
        let (a, b) = (verts[i], verts[(i + 1) % n]);
        let num = c.dot(a.cross(b));
        if num == 0.0 {
            continue;
        }
        let d = b - a;
        let q = |t: f64| a + d * t;
        let mut cuts = Vec::new();
        if clip {
            let (ca, cd) = (c.dot(a), c.dot(d));
            let (aa, ad, dd) = (a.norm2(), a.dot(d), d.norm2());
            unit_roots(cd * cd - k * k * dd, 2.0 * (ca * cd - k * k * ad), ca * ca - k * k * aa, &mut cuts);
        }
        for (l0, l1) in pieces(cuts) {
            let qm = q(0.5 * (l0 + l1));
            if clip && c.dot(qm) / qm.norm() <= k {
                let (p0, p1) = (q(l0), q(l1));
                let (p0, p1) = (p0 - c * c.dot(p0), p1 - c * c.dot(p1));
                let dpsi = c.dot(p0.cross(p1)).atan2(p0.dot(p1));
                acc.add(f_max * dpsi);
            } else {
                let mut s = 0.0;
                for &(t, w) in gl {
                    let qq = q(l0 + (l1 - l0) * t);
                    let cq = c.dot(qq);
                    let axis2 = qq.norm2() - cq * cq;
                    let beta = axis2.sqrt().atan2(cq);
                    s += w * cum(beta) / axis2;
                }
                acc.add(s * num * (l1 - l0));
            }
        }
    }
    acc.value()
}

/// Spherical analogue of `plane_general`, with breakpoints in β.
pub fn sphere_general(
    verts: &[Point3],
    c: Point3,
    f: &dyn Fn(Point3) -> f64,
    breaks: &[f64],
    gl: &[(f64, f64)],
    gl_r: &[(f64, f64)],
) -> f64 {
    let n = verts.len();
    let mut acc = NeumaierSum::default();
    for i in 0..n {
        let (a, b) = (verts[i], verts[(i + 1) % n]);
        let num = c.dot(a.cross(b));
        if num == 0.0 {
            continue;
        }
        let d = b - a;
        let mut cuts = Vec::new();
        let (ca, cd) = (c.dot(a), c.dot(d));
        let (aa, ad, dd) = (a.norm2(), a.dot(d), d.norm2());
        for &bk in breaks {
            let k = bk.cos();
            unit_roots(cd * cd - k * k * dd, 2.0 * (ca * cd - k * k * ad), ca * ca - k * k * aa, &mut cuts);
        }
        for (l0, l1) in pieces(cuts) {
            let mut s = 0.0;
            for &(t, w) in gl {
                let qq = a + d * (l0 + (l1 - l0) * t);
                let cq = c.dot(qq);
                let perp = qq - c * cq;
                let axis2 = perp.norm2();
                let bend = axis2.sqrt().atan2(cq);
                let e: Vec3 = perp.normalized();
                let mut knots = vec![0.0];
                knots.extend(breaks.iter().copied().filter(|&r| r > 0.0 && r < bend));
                knots.push(bend);
                knots.sort_by(f64::total_cmp);
                let mut inner = 0.0;
                for kk in knots.windows(2) {
                    let (r0, r1) = (kk[0], kk[1]);
                    for &(tr, wr) in gl_r {
                        let r = r0 + (r1 - r0) * tr;
                        let (sr, cr) = r.sin_cos();
                        inner += wr * (r1 - r0) * sr * f(c * cr + e * sr);
                    }
                }
                s += w * inner / axis2;
            }
            acc.add(s * num * (l1 - l0));
        }
    }
    acc.value()
}
