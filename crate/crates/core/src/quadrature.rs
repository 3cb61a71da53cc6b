//! One-dimensional rules and compensated summation.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureRule {
    GaussLegendre,
    Midpoint,
}

impl QuadratureRule {
    /// Nodes and weights on [0, 1].
    pub fn nodes(self, n: usize) -> Vec<(f64, f64)> {
        match self {
            QuadratureRule::GaussLegendre => gauss_legendre_unit(n),
            QuadratureRule::Midpoint => {
                let h = 1.0 / n as f64;
                (0..n).map(|i| ((i as f64 + 0.5) * h, h)).collect()
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            QuadratureRule::GaussLegendre => "gauss-legendre",
            QuadratureRule::Midpoint => "midpoint",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "gauss-legendre" | "gl" => Some(QuadratureRule::GaussLegendre),
            "midpoint" => Some(QuadratureRule::Midpoint),
            _ => None,
        }
    }
}

/// Gauss–Legendre nodes and weights on [-1, 1], ascending.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n > 0);
    let mut out = vec![(0.0, 0.0); n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out[i] = (-x, w);
        out[n - 1 - i] = (x, w);
    }
    out
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

pub fn gauss_legendre_unit(n: usize) -> Vec<(f64, f64)> {
    gauss_legendre(n).into_iter().map(|(x, w)| (0.5 * (x + 1.0), 0.5 * w)).collect()
}

/// ∫_a^b f by an n-point Gauss–Legendre rule.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rule: &[(f64, f64)]) -> f64 {
    let h = b - a;
    let mut s = 0.0;
    for &(t, w) in rule {
        s += w * f(a + h * t);
    }
    s * h
}

/// Neumaier-compensated sum, fixed left-to-right order.
#[derive(Clone, Copy, Debug, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

pub fn stable_sum<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    let mut s = NeumaierSum::default();
    for v in it {
        s.add(v);
    }
    s.value()
}
