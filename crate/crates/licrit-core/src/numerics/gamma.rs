//! Log-gamma and polygamma functions by shifted Stirling series.

use alloc::format;

use super::ctx::Ctx;
use super::real::BigComplex;
use super::{pow2_bound, Approx};
use crate::error::{Error, Result};

const LOG2_2PI: f64 = 2.651496129472319;

/// `log2 |B_{2k}|` upper estimate from `|B_{2k}| ≤ 2 (2k)! ζ(2) / (2π)^{2k}`.
fn log2_bernoulli(k: usize) -> f64 {
    let two_k = 2.0 * k as f64;
    1.7184 + libm::lgamma(two_k + 1.0) / core::f64::consts::LN_2 - two_k * LOG2_2PI
}

fn log2_rising(x: f64, k: f64) -> f64 {
    (libm::lgamma(x + k) - libm::lgamma(x)) / core::f64::consts::LN_2
}

fn is_pole(z: &BigComplex) -> bool {
    if !z.im.is_zero() || !(z.re.is_negative() || z.re.is_zero()) {
        return false;
    }
    z.re.floor() == z.re
}

/// Shift `N` and term count `K` for an asymptotic series at `z + N`.
///
/// `log2_term(k, r, sec2)` estimates `log2` of the bound on the remainder
/// after `k` terms at `|w| = r` with `sec²(arg w / 2) = sec2`.
fn plan(
    z: (f64, f64),
    target_log2: f64,
    k_cap: usize,
    log2_term: impl Fn(usize, f64, f64) -> f64,
) -> (u64, usize) {
    let mut n: u64 = if z.0 < 1.0 { libm::ceil(1.0 - z.0) as u64 } else { 0 };
    loop {
        let re = z.0 + n as f64;
        let r = libm::hypot(re, z.1);
        let cos_t = re / r;
        let sec2 = 2.0 / (1.0 + cos_t);
        let mut best = f64::INFINITY;
        for k in 1..=k_cap {
            let b = log2_term(k, r, sec2);
            if b < target_log2 {
                return (n, k);
            }
            if b > best + 4.0 {
                break;
            }
            best = best.min(b);
        }
        n += 1 + n / 4;
    }
}

/// Sum of principal logs `Σ_{k<N} log(z+k)`, with the branch fixed by tracking
/// the argument in double precision.
fn log_shift_product(z: &BigComplex, n: u64, ctx: &mut Ctx) -> BigComplex {
    if n == 0 {
        return ctx.czero();
    }
    let (zr, zi) = z.to_f64();
    let mut prod = ctx.cone();
    let mut arg_sum = 0.0;
    for k in 0..n {
        let f = z.add_real(&ctx.int(k as i64));
        arg_sum += libm::atan2(zi, zr + k as f64);
        prod = &prod * &f;
    }
    let mut l = ctx.cln(&prod);
    let two_pi = 2.0 * core::f64::consts::PI;
    let wraps = libm::round((arg_sum - l.im.to_f64()) / two_pi);
    if wraps != 0.0 {
        let tp = ctx.pi().mul_pow2(1);
        l.im += tp.mul_f64(wraps);
    }
    l
}

/// Principal branch of `log Γ(z)`.
///
/// Continuous off the negative real axis and real on the positive axis. The
/// reported bound covers the Stirling remainder and accumulated rounding.
pub fn log_gamma(z: &BigComplex, ctx: &mut Ctx) -> Result<Approx<BigComplex>> {
    if is_pole(z) {
        return Err(Error::Domain(format!("log_gamma has a pole at {:?}", z.re)));
    }
    let p = ctx.bits();
    let zf = z.to_f64();
    let scale = libm::log2(libm::hypot(zf.0, zf.1) + 2.0) + libm::log2(libm::log(libm::hypot(zf.0, zf.1) + 3.0) + 1.0);
    let target = scale - p as f64 - 4.0;
    let (n, k_terms) = plan(zf, target, p / 3 + 40, |k, r, sec2| {
        let kk = (k + 1) as f64;
        log2_bernoulli(k + 1) - libm::log2((2.0 * kk) * (2.0 * kk - 1.0)) - (2.0 * kk - 1.0) * libm::log2(r)
            + kk * libm::log2(sec2)
    });

    let value = ctx.with_extra(32, |c| -> BigComplex {
        let w = z.with_bits(c.bits()).add_real(&c.int(n as i64));
        let lw = c.cln(&w);
        let half = c.real(0.5);
        let ln2pi = {
            let tp = c.pi().mul_pow2(1);
            c.ln(&tp)
        };
        let mut s = &(&w - &BigComplex::from_real(half.clone())) * &lw - &w;
        s = s.add_real(&(&ln2pi * &half));
        let inv = w.recip();
        let inv2 = inv.square();
        let mut pw = inv.clone();
        for k in 1..=k_terms {
            let b = c.bernoulli_2k(k);
            let d = c.int((2 * k * (2 * k - 1)) as i64);
            s += pw.scale(&(b / d));
            pw = &pw * &inv2;
        }
        let shift = log_shift_product(&z.with_bits(c.bits()), n, c);
        (&s - &shift).with_bits(p)
    });
    let mag = libm::hypot(value.re.to_f64(), value.im.to_f64()).max(1.0);
    let rounding = (n as f64 + k_terms as f64 + 8.0) * libm::ldexp(1.0, -(p as i32)) * mag.max(libm::exp2(scale));
    let err = pow2_bound(target) + rounding.max(f64::MIN_POSITIVE);
    Ok(Approx::new(value, err))
}

/// Polygamma `ψ^{(m)}(z)`; `m = 0` is the digamma function.
///
/// Evaluated by the asymptotic expansion of `ψ^{(m)}` at a shifted argument
/// and the recurrence `ψ^{(m)}(z+1) = ψ^{(m)}(z) + (−1)^m m! z^{−m−1}`.
pub fn polygamma(m: u32, z: &BigComplex, ctx: &mut Ctx) -> Result<Approx<BigComplex>> {
    if is_pole(z) {
        return Err(Error::Domain(format!("polygamma has a pole at {:?}", z.re)));
    }
    let p = ctx.bits();
    let zf = z.to_f64();
    let mf = m as f64;
    let r0 = libm::hypot(zf.0, zf.1).max(0.5);
    // Size of the result: about (m-1)!/|z|^m, or log|z| for digamma.
    let scale = if m == 0 {
        libm::log2(libm::log(r0 + 3.0) + 1.0)
    } else {
        libm::lgamma(mf) / core::f64::consts::LN_2 - mf * libm::log2(r0 + 1.0)
    };
    let target = scale - p as f64 - 4.0;
    let (n, k_terms) = plan(zf, target, p / 3 + 40 + m as usize, |k, r, sec2| {
        let kk = (k + 1) as f64;
        log2_bernoulli(k + 1) + log2_rising(2.0 * kk, mf) - libm::lgamma(2.0 * kk + 1.0) / core::f64::consts::LN_2
            + libm::lgamma(2.0 * kk) / core::f64::consts::LN_2
            - (2.0 * kk + mf) * libm::log2(r)
            + (kk + mf / 2.0 + 1.0) * libm::log2(sec2)
    });

    let value = ctx.with_extra(32, |c| -> BigComplex {
        let zz = z.with_bits(c.bits());
        let w = zz.add_real(&c.int(n as i64));
        let inv = w.recip();
        let inv2 = inv.square();
        let mut s;
        if m == 0 {
            s = c.cln(&w) - inv.scale(&c.real(0.5));
            let mut pw = inv2.clone();
            for k in 1..=k_terms {
                let b = c.bernoulli_2k(k) / c.int(2 * k as i64);
                s -= pw.scale(&b);
                pw = &pw * &inv2;
            }
            let mut shift = c.czero();
            for j in 0..n {
                shift += zz.add_real(&c.int(j as i64)).recip();
            }
            s - shift
        } else {
            // (m-1)!/w^m + m!/(2 w^{m+1}) + Σ B_{2k} (2k+m-1)!/(2k)! / w^{2k+m}
            let mut fact_m1 = c.one();
            for i in 1..m {
                fact_m1 = fact_m1 * c.int(i as i64);
            }
            let fact_m = &fact_m1 * &c.int(m as i64);
            let inv_m = inv.powu(m as u64);
            s = inv_m.scale(&fact_m1);
            let mut pw = &inv_m * &inv;
            s += pw.scale(&fact_m.mul_pow2(-1));
            pw = &pw * &inv;
            // ratio_k = (2k+m-1)!/(2k)!, starting at k=1: (m+1)!/2
            let mut ratio = (&fact_m * &c.int(m as i64 + 1)).mul_pow2(-1);
            for k in 1..=k_terms {
                let b = c.bernoulli_2k(k);
                s += pw.scale(&(&b * &ratio));
                pw = &pw * &inv2;
                let kk = k as i64;
                ratio = ratio * c.int((2 * kk + m as i64) * (2 * kk + m as i64 + 1))
                    / c.int((2 * kk + 1) * (2 * kk + 2));
            }
            if m % 2 == 0 {
                s = -s;
            }
            // ψ^{(m)}(z) = ψ^{(m)}(z+N) − (−1)^m m! Σ_{j<N} (z+j)^{−m−1}
            let mut shift = c.czero();
            for j in 0..n {
                shift += zz.add_real(&c.int(j as i64)).recip().powu(m as u64 + 1);
            }
            let shift = shift.scale(&fact_m);
            if m % 2 == 0 {
                s - shift
            } else {
                s + shift
            }
        }
        .with_bits(p)
    });
    let mag = libm::hypot(value.re.to_f64(), value.im.to_f64());
    let rounding = (n as f64 + k_terms as f64 + 8.0) * libm::ldexp(1.0, -(p as i32)) * mag.max(libm::exp2(scale));
    Ok(Approx::new(value, pow2_bound(target) + rounding.max(f64::MIN_POSITIVE)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn log_gamma_values() {
        let mut c = Ctx::new(128).unwrap();
        let v = log_gamma(&c.complex(1.0, 0.0), &mut c).unwrap();
        assert!(v.value.re.to_f64().abs() < 1e-30 && v.value.im.to_f64().abs() < 1e-30);
        let v = log_gamma(&c.complex(5.0, 0.0), &mut c).unwrap();
        assert!(close(v.value.re.to_f64(), libm::log(24.0), 1e-15));
        let v = log_gamma(&c.complex(0.5, 0.0), &mut c).unwrap();
        let pi = c.pi();
        let want = c.ln(&pi).mul_pow2(-1);
        assert!((&v.value.re - &want).abs().exponent() < -115);
        assert!(log_gamma(&c.complex(-3.0, 0.0), &mut c).is_err());
        assert!(log_gamma(&c.complex(0.0, 0.0), &mut c).is_err());
    }

    #[test]
    fn log_gamma_recurrence_complex() {
        // log Γ(z+1) = log Γ(z) + log z on the principal branch away from the cut.
        let mut c = Ctx::new(192).unwrap();
        for &(x, y) in &[(0.25, 30.0), (2.5, -7.0), (-3.5, 1.0), (0.1, 0.1), (12.0, 400.0)] {
            let z = c.complex(x, y);
            let a = log_gamma(&z, &mut c).unwrap().value;
            let b = log_gamma(&z.add_real(&c.one()), &mut c).unwrap().value;
            let lz = c.cln(&z);
            let d = &(&b - &a) - &lz;
            assert!(d.abs().exponent() < -170, "z = ({x},{y}) residual {:?}", d);
        }
    }

    #[test]
    fn log_gamma_reflection_magnitude() {
        // |Γ(1/2 + it)|² = π / cosh(πt)
        let mut c = Ctx::new(128).unwrap();
        for &t in &[1.0, 10.0, 50.0] {
            let v = log_gamma(&c.complex(0.5, t), &mut c).unwrap().value.re.to_f64();
            let want = 0.5 * (libm::log(core::f64::consts::PI) - libm::log(libm::cosh(core::f64::consts::PI * t)));
            assert!(close(v, want, 1e-13), "t={t}: {v} vs {want}");
        }
    }

    #[test]
    fn digamma_values() {
        let mut c = Ctx::new(128).unwrap();
        let g = c.euler_gamma();
        let v = polygamma(0, &c.complex(1.0, 0.0), &mut c).unwrap();
        assert!((&v.value.re + &g).abs().exponent() < -115);
        let v = polygamma(0, &c.complex(0.5, 0.0), &mut c).unwrap();
        let ln2 = c.ln2();
        let want = -(&g + &ln2.mul_pow2(1));
        assert!((&v.value.re - &want).abs().exponent() < -115);
        assert!(close(v.value.re.to_f64(), -1.9635100260214235, 1e-15));
    }

    #[test]
    fn trigamma_at_one() {
        let mut c = Ctx::new(128).unwrap();
        let v = polygamma(1, &c.complex(1.0, 0.0), &mut c).unwrap();
        let pi = c.pi();
        let want = &pi * &pi / c.int(6);
        assert!((&v.value.re - &want).abs().exponent() < -115);
    }

    #[test]
    fn polygamma_recurrence() {
        let mut c = Ctx::new(160).unwrap();
        for m in 0..6u32 {
            for &(x, y) in &[(0.3, 0.0), (1.7, 2.0), (0.5, -11.0)] {
                let z = c.complex(x, y);
                let a = polygamma(m, &z, &mut c).unwrap().value;
                let b = polygamma(m, &z.add_real(&c.one()), &mut c).unwrap().value;
                let mut f = c.one();
                for i in 1..=m {
                    f = f * c.int(i as i64);
                }
                let mut step = z.recip().powu(m as u64 + 1).scale(&f);
                if m % 2 == 1 {
                    step = -step;
                }
                let d = &(&b - &a) - &step;
                let rel = d.abs().to_f64() / a.abs().to_f64().max(1e-300);
                assert!(rel < 1e-40, "m={m} z=({x},{y}) rel {rel:e}");
            }
        }
    }
}
