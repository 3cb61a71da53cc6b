use capmono::quadrature::*;

#[test]
fn gauss_legendre_is_exact_for_polynomials() {
    for n in [1usize, 2, 5, 8, 17, 64] {
        let rule = gauss_legendre(n);
        let ws: f64 = rule.iter().map(|r| r.1).sum();
        assert!((ws - 2.0).abs() < 1e-13, "n={n}");
        for k in 0..(2 * n) {
            let num: f64 = rule.iter().map(|&(x, w)| w * x.powi(k as i32)).sum();
            let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
            assert!((num - exact).abs() < 1e-12, "n={n} k={k}");
        }
    }
}

#[test]
fn compensated_sum_recovers_small_terms() {
    let v = [1e16, 1.0, -1e16, 1.0];
    assert_eq!(stable_sum(v), 2.0);
}
