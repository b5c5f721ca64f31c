//! Double-exponential quadrature on the half line.

use super::ctx::Ctx;
use super::real::BigReal;
use super::Approx;

/// `∫_0^∞ f(u) du` by the exp-sinh rule `u = exp(π/2 · sinh t)`.
///
/// The step is halved until two successive estimates agree to `tol`; the
/// reported error is the last difference plus the truncation threshold. Meant
/// for integrands that decay at least exponentially.
pub fn integrate_half_line(
    mut f: impl FnMut(&BigReal, &mut Ctx) -> BigReal,
    tol: f64,
    ctx: &mut Ctx,
) -> Approx<BigReal> {
    let half_pi = ctx.pi().mul_pow2(-1);
    let p = ctx.bits();
    let mut node = |t: &BigReal, c: &mut Ctx| -> BigReal {
        let et = c.exp(t);
        let emt = et.recip();
        let sinh = (&et - &emt).mul_pow2(-1);
        let cosh = (&et + &emt).mul_pow2(-1);
        let u = c.exp(&(&half_pi * &sinh));
        let w = &half_pi * &cosh * &u;
        let fu = f(&u, c);
        if fu.is_zero() || !fu.is_finite() {
            return BigReal::zero(p);
        }
        fu * w
    };

    // Level 0: h = 1, all integer nodes.
    let mut h = ctx.one();
    let mut sum = node(&ctx.zero(), ctx);
    for dir in [1i64, -1] {
        let mut small = 0;
        let mut k = 1i64;
        while small < 2 && k < 64 {
            let v = node(&ctx.int(dir * k), ctx);
            if v.is_zero() || v.abs().exponent() < sum.abs().exponent() - p as i32 - 8 {
                small += 1;
            } else {
                small = 0;
            }
            sum += v;
            k += 1;
        }
    }
    let mut estimate = &sum * &h;
    let mut last_diff = f64::INFINITY;
    for _level in 0..14 {
        h = h.mul_pow2(-1);
        // New nodes sit at odd multiples of h.
        let mut fresh = ctx.zero();
        for dir in [1i64, -1] {
            let mut small = 0;
            let mut k = 1i64;
            while small < 2 && k < 1 << 20 {
                let t = &h * &ctx.int(dir * k);
                let v = node(&t, ctx);
                if v.is_zero() || v.abs().exponent() < sum.abs().exponent() - p as i32 - 8 {
                    small += 1;
                } else {
                    small = 0;
                }
                fresh += v;
                k += 2;
            }
        }
        sum += fresh;
        let next = &sum * &h;
        last_diff = (&next - &estimate).abs().to_f64();
        estimate = next;
        if last_diff < tol * 1e-3 {
            break;
        }
    }
    let trunc = libm::ldexp(estimate.abs().to_f64().max(1.0), 8 - p as i32);
    Approx::new(estimate, last_diff + trunc)
}

/// `∫_lo^hi f(x) dx` in double precision by the tanh-sinh rule.
///
/// Nodes near the endpoints are formed from their distance to the endpoint,
/// so integrable endpoint singularities (`log x` at `x = 0`) are handled.
/// Returns the estimate and the difference of the last two levels.
pub(crate) fn tanh_sinh_f64(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    use core::f64::consts::FRAC_PI_2;
    let half = 0.5 * (hi - lo);
    let node = |t: f64| -> f64 {
        let s = FRAC_PI_2 * libm::sinh(t);
        let ch = libm::cosh(s);
        // Distance to the nearer endpoint, 1 − tanh|s| = e^{−|s|}/cosh s.
        let dist = half * libm::exp(-s.abs()) / ch;
        let x = if t < 0.0 { lo + dist } else { hi - dist };
        if dist == 0.0 || x <= lo || x >= hi {
            return 0.0;
        }
        let w = half * FRAC_PI_2 * libm::cosh(t) / (ch * ch);
        let v = f(x) * w;
        if v.is_finite() { v } else { 0.0 }
    };
    let t_max = 3.2;
    let mut h = 0.5;
    let mut sum = node(0.0);
    let mut k = 1;
    while k as f64 * h <= t_max {
        sum += node(k as f64 * h) + node(-(k as f64) * h);
        k += 1;
    }
    let mut est = sum * h;
    let mut diff = f64::INFINITY;
    for _ in 0..12 {
        h *= 0.5;
        let mut k = 1;
        while k as f64 * h <= t_max {
            sum += node(k as f64 * h) + node(-(k as f64) * h);
            k += 2;
        }
        let next = sum * h;
        diff = (next - est).abs();
        est = next;
        if diff <= tol * est.abs().max(1e-300) {
            break;
        }
    }
    (est, diff)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_moments() {
        // ∫ u^k e^{-2u} du = k!/2^{k+1}
        let mut c = Ctx::new(128).unwrap();
        for k in 0..5u64 {
            let r = integrate_half_line(
                |u, c| {
                    let e = c.exp(&(-u.mul_pow2(1)));
                    u.powi(k) * e
                },
                1e-20,
                &mut c,
            );
            let fact: f64 = (1..=k).map(|i| i as f64).product();
            let want = fact / libm::exp2(k as f64 + 1.0);
            assert!((r.value.to_f64() - want).abs() < 1e-18, "k={k}");
            assert!(r.err < 1e-18);
        }
    }

    #[test]
    fn tanh_sinh_log_singularity() {
        // ∫_0^1 −log x dx = 1, ∫_0^2 x² dx = 8/3
        let (v, _) = tanh_sinh_f64(|x| -libm::log(x), 0.0, 1.0, 1e-14);
        assert!((v - 1.0).abs() < 1e-12);
        let (v, _) = tanh_sinh_f64(|x| x * x, 0.0, 2.0, 1e-14);
        assert!((v - 8.0 / 3.0).abs() < 1e-12);
    }
}
