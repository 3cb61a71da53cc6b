//! Ball-restricted surface integrals. Samples are sorted once by distance to a centre; a
//! query at radius r takes a prefix sum for cells entirely inside the ball and, for cells the
//! sphere crosses, the area fraction of the cell inside the ball. The cell is the flat
//! parallelogram (or polar trapezoid) of its edge vectors, lifted by its second fundamental
//! form, so that the ball's trace on it is an ellipse.

use crate::geom::Point3;
use crate::geom::Vec3;
use crate::surface::{SampledSurface, SurfaceSample};
use rayon::prelude::*;

pub struct RadialIndex {
    center: Point3,
    dist: Vec<f64>,
    /// Cell geometry in sorted order.
    cells: Vec<CellGeometry>,
    /// Weighted channel values in sorted order, row-major (sample, channel).
    values: Vec<f64>,
    /// prefix[k * m + c] = sum of values of channel c over the first k samples.
    prefix: Vec<f64>,
    channels: usize,
    reach: f64,
}

impl RadialIndex {
    /// `channel(sample, out)` writes the per-sample integrands; they are multiplied by area weights.
    pub fn new<F>(surface: &SampledSurface, center: Point3, channels: usize, channel: F) -> Self
    where
        F: Fn(&SurfaceSample, &mut [f64]) + Sync,
    {
        let rows: Vec<(f64, Vec<f64>)> = surface
            .interior
            .par_iter()
            .map(|s| {
                let mut v = vec![0.0; channels];
                channel(s, &mut v);
                for x in v.iter_mut() {
                    *x *= s.weight;
                }
                ((s.point - center).norm(), v)
            })
            .collect();
        let mut order: Vec<usize> = (0..rows.len()).collect();
        order.sort_by(|&a, &b| rows[a].0.total_cmp(&rows[b].0).then(a.cmp(&b)));
        let n = rows.len();
        let mut dist = Vec::with_capacity(n);
        let mut cells = Vec::with_capacity(n);
        let mut values = Vec::with_capacity(n * channels);
        let mut prefix = vec![0.0; (n + 1) * channels];
        let mut reach: f64 = 0.0;
        for (k, &i) in order.iter().enumerate() {
            let (d, v) = &rows[i];
            let s = &surface.interior[i];
            dist.push(*d);
            cells.push(CellGeometry::new(s, center));
            let (a, b) = (s.cell[0], s.cell[1] * (1.0 + s.taper.abs()));
            reach = reach.max(0.5 * (a + b).norm()).max(0.5 * (a - b).norm());
            values.extend_from_slice(v);
            for c in 0..channels {
                prefix[(k + 1) * channels + c] = prefix[k * channels + c] + v[c];
            }
        }
        RadialIndex { center, dist, cells, values, prefix, channels, reach: 1.01 * reach }
    }

    pub fn center(&self) -> Point3 {
        self.center
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    /// Number of sample points strictly inside B_r.
    pub fn count_within(&self, r: f64) -> usize {
        self.dist.partition_point(|&d| d < r)
    }

    pub fn nearest(&self) -> f64 {
        self.dist.first().copied().unwrap_or(f64::INFINITY)
    }

    /// k-th smallest distance (0-based).
    pub fn kth_distance(&self, k: usize) -> f64 {
        self.dist.get(k).copied().unwrap_or(f64::INFINITY)
    }

    /// Channel sums over B_r(center).
    pub fn query(&self, r: f64) -> Vec<f64> {
        let m = self.channels;
        let mut out = vec![0.0; m];
        if !(r > 0.0) {
            return out;
        }
        let lo = self.dist.partition_point(|&d| d < r - self.reach);
        let hi = self.dist.partition_point(|&d| d < r + self.reach);
        out.copy_from_slice(&self.prefix[lo * m..lo * m + m]);
        for k in lo..hi {
            let f = self.cells[k].fraction(r);
            if f > 0.0 {
                for (o, v) in out.iter_mut().zip(&self.values[k * m..k * m + m]) {
                    *o += f * v;
                }
            }
        }
        out
    }

    /// Channel sums over every sample.
    pub fn total(&self) -> Vec<f64> {
        let n = self.dist.len();
        self.prefix[n * self.channels..(n + 1) * self.channels].to_vec()
    }
}

/// One quadrature cell seen from a ball centre.
#[derive(Clone, Copy, Debug)]
pub struct CellGeometry {
    /// Offset of the sample from the ball centre.
    pub d: Vec3,
    pub e1: Vec3,
    pub e2: Vec3,
    /// The e2 edge at ±½e1 is scaled by 1 ± taper.
    pub taper: f64,
    /// II(e1,e1), II(e1,e2), II(e2,e2) with respect to e1 × e2.
    pub ii: [f64; 3],
}

impl CellGeometry {
    pub fn new(s: &SurfaceSample, center: Point3) -> CellGeometry {
        let flip = if s.cell[0].cross(s.cell[1]).dot(s.normal) < 0.0 { -1.0 } else { 1.0 };
        CellGeometry { d: s.point - center, e1: s.cell[0], e2: s.cell[1], taper: s.taper, ii: s.second_form.map(|v| flip * v) }
    }

    /// Fraction of the cell inside B_r(centre).
    pub fn fraction(&self, r: f64) -> f64 {
        let m = self.e1.cross(self.e2);
        let area = m.norm();
        if area == 0.0 {
            return if self.d.norm() < r { 1.0 } else { 0.0 };
        }
        let m = m / area;
        let dn = self.d.dot(m);
        let b1 = self.e1.normalized();
        let b2 = m.cross(b1);
        let w = [self.d.dot(b1), self.d.dot(b2)];
        // |x − c|² ≈ |w + v|² + dn² + dn·II(v) for in-plane v: the quadratic form A = I + dn·S
        let a = match self.shape_matrix(b1, b2) {
            Some(sb) => {
                let a = [1.0 + dn * sb[0], dn * sb[1], 1.0 + dn * sb[2]];
                let det = a[0] * a[2] - a[1] * a[1];
                if a[0] > 0.05 && det > 0.05 * a[0] {
                    a
                } else {
                    [1.0, 0.0, 1.0]
                }
            }
            None => [1.0, 0.0, 1.0],
        };
        let det = a[0] * a[2] - a[1] * a[1];
        // centre −A⁻¹w and squared radius of the ellipse
        let aiw = [(a[2] * w[0] - a[1] * w[1]) / det, (a[0] * w[1] - a[1] * w[0]) / det];
        let rad2 = r * r - dn * dn - (w[0] * w[0] + w[1] * w[1]) + (w[0] * aiw[0] + w[1] * aiw[1]);
        if rad2 <= 0.0 {
            return 0.0;
        }
        // u = L(v + A⁻¹w), LᵀL = A
        let l11 = a[0].sqrt();
        let l12 = a[1] / l11;
        let l22 = (a[2] - l12 * l12).sqrt();
        let corners = [(-0.5, -0.5), (0.5, -0.5), (0.5, 0.5), (-0.5, 0.5)];
        let pts: Vec<[f64; 2]> = corners
            .iter()
            .map(|&(s, t)| {
                let v = self.e1 * s + self.e2 * (t * (1.0 + 2.0 * s * self.taper));
                let (x, y) = (v.dot(b1) + aiw[0], v.dot(b2) + aiw[1]);
                [l11 * x + l12 * y, l22 * y]
            })
            .collect();
        let mut inside = 0.0;
        let mut total = 0.0;
        for k in 0..4 {
            let (p, q) = (pts[k], pts[(k + 1) % 4]);
            inside += triangle_disk_area(p, q, rad2.sqrt());
            total += 0.5 * (p[0] * q[1] - p[1] * q[0]);
        }
        if total <= 0.0 {
            return if rad2 > 0.0 { 1.0 } else { 0.0 };
        }
        (inside / total).clamp(0.0, 1.0)
    }

    /// Shape operator in the orthonormal basis (b1, b2): [s11, s12, s22].
    fn shape_matrix(&self, b1: Vec3, b2: Vec3) -> Option<[f64; 3]> {
        // E has columns e1, e2 in (b1, b2) coordinates; S = E⁻ᵀ II E⁻¹
        let (p, q, r, s) = (self.e1.dot(b1), self.e2.dot(b1), self.e1.dot(b2), self.e2.dot(b2));
        let det = p * s - q * r;
        if det.abs() < 1e-300 {
            return None;
        }
        let inv = [s / det, -q / det, -r / det, p / det]; // rows of E⁻¹
        let [l, mm, n] = self.ii;
        let (i00, i01, i10, i11) = (inv[0], inv[1], inv[2], inv[3]);
        // (E⁻ᵀ II E⁻¹)_{jk} = Σ inv[a][j] II[a][b] inv[b][k]
        let ii = [[l, mm], [mm, n]];
        let col = |j: usize| if j == 0 { [i00, i10] } else { [i01, i11] };
        let form = |j: usize, k: usize| {
            let (cj, ck) = (col(j), col(k));
            let mut acc = 0.0;
            for x in 0..2 {
                for y in 0..2 {
                    acc += cj[x] * ii[x][y] * ck[y];
                }
            }
            acc
        };
        Some([form(0, 0), form(0, 1), form(1, 1)])
    }
}

/// Signed area of the triangle (0, a, b) inside the disk of radius `rad` about 0.
fn triangle_disk_area(a: [f64; 2], b: [f64; 2], rad: f64) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let (qa, qb, qc) = (d[0] * d[0] + d[1] * d[1], 2.0 * (a[0] * d[0] + a[1] * d[1]), a[0] * a[0] + a[1] * a[1] - rad * rad);
    let mut ts = vec![0.0];
    if qa > 0.0 {
        let disc = qb * qb - 4.0 * qa * qc;
        if disc > 0.0 {
            let sq = disc.sqrt();
            for t in [(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)] {
                if t > 0.0 && t < 1.0 {
                    ts.push(t);
                }
            }
        }
    }
    ts.push(1.0);
    let at = |t: f64| [a[0] + t * d[0], a[1] + t * d[1]];
    let mut total = 0.0;
    for w in ts.windows(2) {
        let (p, q) = (at(w[0]), at(w[1]));
        let mid = at(0.5 * (w[0] + w[1]));
        let cr = p[0] * q[1] - p[1] * q[0];
        if mid[0] * mid[0] + mid[1] * mid[1] < rad * rad {
            total += 0.5 * cr;
        } else {
            let dot = p[0] * q[0] + p[1] * q[1];
            total += 0.5 * rad * rad * cr.atan2(dot);
        }
    }
    total
}
