use capmono::report::*;
use std::f64::consts::PI;

#[test]
fn twelve_digits() {
    assert_eq!(fmt12(PI), "3.14159265359e0");
    assert_eq!(fmt_pi(3.0 * PI), "9.42477796077e0 (3.00000000000e0π)");
}
