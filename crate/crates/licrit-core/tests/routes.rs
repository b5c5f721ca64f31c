use std::sync::OnceLock;

use licrit_core::lfunc::builtin_zeta;
use licrit_core::licoeff::{arithmetic_series, zero_sum_series, ArithmeticOptions, LiParams};
use licrit_core::par::Serial;
use licrit_core::zeros::{find_zeros, FindOptions, ZeroSet};

fn zeros() -> &'static ZeroSet {
    static Z: OnceLock<ZeroSet> = OnceLock::new();
    Z.get_or_init(|| find_zeros(1000.0, &FindOptions::default(), &Serial).unwrap().zeros)
}

/// The pole block's sign is fixed by agreement with the sum over zeros; a
/// flipped block would move λ(n, a) by m_F(2 − u^n − u^{−n}), far outside
/// the bounds.
#[test]
fn pole_sign_self_test() {
    let d = builtin_zeta();
    for a in [-1.0, -0.5] {
        let p = LiParams::new(5, a).unwrap().with_m(200_000);
        let zs = zero_sum_series(&d, zeros(), &p, &Serial).unwrap();
        let ar = arithmetic_series(&d, &p, &ArithmeticOptions::default(), &Serial).unwrap();
        for (x, y) in zs.iter().zip(&ar) {
            let residual = (x.re() - y.re()).abs();
            assert!(residual <= x.error_bound + y.error_bound, "a = {a}, n = {}: {residual:e}", x.n);
            let pole = y.diagnostics["pole_block"];
            assert!(residual < pole.abs(), "a = {a}, n = {}", x.n);
        }
    }
}

#[test]
fn doubled_width_moves_less_than_the_bound() {
    let d = builtin_zeta();
    let p = LiParams::new(20, -1.0).unwrap().with_m(100_000);
    let q = p.clone().with_precision(p.precision.doubled());
    let pairs = [
        (
            arithmetic_series(&d, &p, &ArithmeticOptions::default(), &Serial).unwrap(),
            arithmetic_series(&d, &q, &ArithmeticOptions::default(), &Serial).unwrap(),
        ),
        (zero_sum_series(&d, zeros(), &p, &Serial).unwrap(), zero_sum_series(&d, zeros(), &q, &Serial).unwrap()),
    ];
    for (lo, hi) in &pairs {
        for (x, y) in lo.iter().zip(hi) {
            let moved = (&x.value - &y.value).abs().to_f64();
            assert!(moved < x.error_bound, "{:?} n = {}: {moved:e}", x.route, x.n);
            assert!(y.bits >= 2 * x.bits - 64);
        }
    }
}
