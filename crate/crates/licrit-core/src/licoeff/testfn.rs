//! Laplace-transform check of the test functions behind the arithmetic formula.
//!
//! With `x = −u`, the left side is
//! `∫_0^∞ e^{−(s−a)u} Σ_l C(n,l)(1−2a)^l (−u)^{l−1}/(l−1)! du`, and the
//! closed form is `1 − (1 + (2a−1)/(s−a))^n`.

use alloc::format;

use super::check_shift;
use crate::error::{Error, Result};
use crate::numerics::{binomial_row, integrate_half_line, BigReal, Ctx};

/// Quadrature against closed form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TestFunctionCheck {
    pub numeric: f64,
    pub closed_form: f64,
    /// Quadrature error estimate.
    pub error: f64,
    pub agree: bool,
}

pub fn test_function_check(n: u64, a: f64, s: f64, quad_tol: f64) -> Result<TestFunctionCheck> {
    test_function_check_bits(n, a, s, quad_tol, 128 + 2 * n as usize)
}

/// [`test_function_check`] at a chosen working width.
pub fn test_function_check_bits(n: u64, a: f64, s: f64, quad_tol: f64, bits: usize) -> Result<TestFunctionCheck> {
    check_shift(a)?;
    if n == 0 {
        return Err(Error::Domain("the coefficient index n must be at least 1".into()));
    }
    if !(s > 0.5 && s > a) || !s.is_finite() {
        return Err(Error::Domain(format!("the transform diverges unless s > max(1/2, a) (s = {s}, a = {a})")));
    }
    if !(quad_tol > 0.0) {
        return Err(Error::Domain(format!("quadrature tolerance must be positive (got {quad_tol})")));
    }
    let mut ctx = Ctx::new(bits)?;
    // Polynomial coefficients c_{l−1} = C(n,l)(1−2a)^l (−1)^{l−1}/(l−1)!.
    let binom = binomial_row(n);
    let c = ctx.real(1.0 - 2.0 * a);
    let mut coeffs = alloc::vec::Vec::with_capacity(n as usize);
    let mut cp = ctx.one();
    let mut fact = ctx.one();
    for l in 1..=n as usize {
        cp = &cp * &c;
        if l > 1 {
            fact = &fact * &ctx.int(l as i64 - 1);
        }
        let mut t = &(&cp * &BigReal::from_biguint(&binom[l], bits)) / &fact;
        if l % 2 == 0 {
            t = -t;
        }
        coeffs.push(t);
    }
    let rate = ctx.real(s - a);
    let q = integrate_half_line(
        |u, cx| {
            let mut poly = cx.zero();
            for co in coeffs.iter().rev() {
                poly = &(&poly * u) + co;
            }
            let w = cx.exp(&-(&rate * u));
            poly * w
        },
        quad_tol,
        &mut ctx,
    );
    let numeric = q.value.to_f64();
    let base = 1.0 + (2.0 * a - 1.0) / (s - a);
    let closed_form = 1.0 - libm::pow(base, n as f64);
    Ok(TestFunctionCheck { numeric, closed_form, error: q.err, agree: (numeric - closed_form).abs() <= quad_tol })
}
