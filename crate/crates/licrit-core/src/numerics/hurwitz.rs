//! Hurwitz zeta at integer arguments by Euler–Maclaurin summation.

use alloc::format;
use alloc::vec::Vec;

use super::ctx::Ctx;
use super::real::BigComplex;
use super::{pow2_bound, Approx};
use crate::error::{Error, Result};

const LN2: f64 = core::f64::consts::LN_2;
const LOG2_2PI: f64 = 2.651496129472319;

/// `log2` of the Euler–Maclaurin remainder bound after `k` correction terms:
/// `4 (s)_{2k} / ((2π)^{2k} (s+2k−1)) · x^{1−s−2k}` with `x = Re(q) + N`.
fn log2_remainder(s: f64, k: f64, x: f64) -> f64 {
    2.0 + (libm::lgamma(s + 2.0 * k) - libm::lgamma(s)) / LN2 - 2.0 * k * LOG2_2PI - libm::log2(s + 2.0 * k - 1.0)
        + (1.0 - s - 2.0 * k) * libm::log2(x)
}

/// Smallest number of correction terms meeting `target` at shift `x`, if any.
fn terms_needed(s: f64, x: f64, target: f64, k_cap: usize) -> Option<usize> {
    let mut best = f64::INFINITY;
    for k in 1..=k_cap {
        let b = log2_remainder(s, k as f64, x);
        if b < target {
            return Some(k);
        }
        if b > best + 4.0 {
            return None;
        }
        best = best.min(b);
    }
    None
}

/// `ζ(s, q)` for every integer `s` in `2..=s_max` at once.
///
/// Returns the values in order `s = 2, 3, ..., s_max`. Each carries its own
/// bound: the rigorous Euler–Maclaurin remainder plus rounding.
pub fn hurwitz_zeta_range(s_max: u32, q: &BigComplex, ctx: &mut Ctx) -> Result<Vec<Approx<BigComplex>>> {
    if s_max < 2 {
        return Err(Error::Domain(format!("Hurwitz zeta needs s ≥ 2 (got {s_max}); s = 1 diverges")));
    }
    let (qr, qi) = q.to_f64();
    if !(qr > 0.0) {
        return Err(Error::Domain("Hurwitz zeta needs Re(q) > 0".into()));
    }
    let p = ctx.bits();
    let qabs = libm::hypot(qr, qi);
    // Relative targets against the leading term |q|^{-s}.
    let target = |s: u32| -(s as f64) * libm::log2(qabs) - p as f64 - 6.0;
    let k_cap = p / 2 + s_max as usize + 60;

    let mut n: u64 = 0;
    let plan: Vec<usize> = loop {
        let x = qr + n as f64;
        let mut ks = Vec::with_capacity(s_max as usize - 1);
        let mut ok = true;
        for s in 2..=s_max {
            // Terms (q+j)^{-s} that are already below target are skipped
            // during summation, but the tail formula still needs x ≥ ~1.
            match terms_needed(s as f64, x, target(s), k_cap) {
                Some(k) => ks.push(k),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && x >= 1.0 {
            break ks;
        }
        n = (n + 1 + n / 4).max(libm::ceil(1.0 - qr) as u64);
    };
    let k_max = plan.iter().copied().max().unwrap_or(1);

    let values = ctx.with_extra(24, |c| -> Vec<BigComplex> {
        let qq = q.with_bits(c.bits());
        let mut acc: Vec<BigComplex> = (2..=s_max).map(|_| c.czero()).collect();
        // Direct part.
        for j in 0..n {
            let u = qq.add_real(&c.int(j as i64)).recip();
            let ulog = libm::log2(libm::hypot(qr + j as f64, qi));
            let mut pw = u.square();
            for s in 2..=s_max {
                // Stop once (q+j)^{-s} is negligible for this and larger s.
                if -(s as f64) * ulog < target(s) - 8.0 {
                    break;
                }
                acc[(s - 2) as usize] += &pw;
                pw = &pw * &u;
            }
        }
        // Tail: v = 1/w with w = q + N.
        let w = qq.add_real(&c.int(n as i64));
        let v = w.recip();
        let top = s_max as usize + 2 * k_max + 1;
        let mut pows = Vec::with_capacity(top + 1);
        pows.push(c.cone());
        for e in 1..=top {
            let next = &pows[e - 1] * &v;
            pows.push(next);
        }
        let bern: Vec<_> = (1..=k_max).map(|k| c.bernoulli_2k(k)).collect();
        for s in 2..=s_max {
            let si = s as usize;
            let a = &mut acc[si - 2];
            *a += pows[si - 1].scale(&c.int(s as i64 - 1).recip());
            *a += pows[si].scale(&c.real(0.5));
            // coef_k = B_{2k}/(2k)! · (s)_{2k-1}; coef_1 = B_2 · s / 2
            let mut rising = c.int(s as i64).mul_pow2(-1);
            for k in 1..=plan[si - 2] {
                *a += pows[si + 2 * k - 1].scale(&(&bern[k - 1] * &rising));
                let kk = k as i64;
                let sl = s as i64;
                rising = rising * c.int((sl + 2 * kk - 1) * (sl + 2 * kk)) / c.int((2 * kk + 1) * (2 * kk + 2));
            }
        }
        acc
    });

    Ok(values
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            let s = i as u32 + 2;
            let mag = libm::exp2(-(s as f64) * libm::log2(qabs)).max(libm::hypot(v.re.to_f64(), v.im.to_f64()));
            let err = pow2_bound(target(s) + 1.0)
                + ((n + plan[i] as u64 + 8) as f64 * libm::ldexp(1.0, -(p as i32)) * mag).max(f64::MIN_POSITIVE);
            Approx::new(v.with_bits(p), err)
        })
        .collect())
}

/// `ζ(s, q) = Σ_{m≥0} (m+q)^{−s}` for integer `s ≥ 2` and `Re(q) > 0`.
pub fn hurwitz_zeta(s: u32, q: &BigComplex, ctx: &mut Ctx) -> Result<Approx<BigComplex>> {
    if s < 2 {
        return Err(Error::Domain(format!("Hurwitz zeta needs s ≥ 2 (got {s}); s = 1 diverges")));
    }
    let mut all = hurwitz_zeta_range(s, q, ctx)?;
    Ok(all.pop().expect("nonempty range"))
}
