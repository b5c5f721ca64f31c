//! Riemann zeta through the alternating (eta) series with Borwein acceleration.

use alloc::vec;
use alloc::vec::Vec;

use super::ctx::Ctx;
use super::real::{BigComplex, BigReal};
use super::{pow2_bound, Approx};
use crate::error::{Error, Result};

const LOG2_3P8: f64 = 2.5431066063272239; // log2(3 + √8)

/// Powers `k^{−s}` for `k = 1..=n`, built multiplicatively from prime powers.
///
/// Only primes need a logarithm and an exponential; composites cost one
/// complex multiplication.
pub struct DirichletPowers {
    /// Smallest prime factor of each index (0 and 1 map to themselves).
    spf: Vec<u32>,
}

impl DirichletPowers {
    pub fn new(n: usize) -> Self {
        let mut spf: Vec<u32> = (0..=n as u32).collect();
        let mut i = 2usize;
        while i * i <= n {
            if spf[i] == i as u32 {
                let mut j = i * i;
                while j <= n {
                    if spf[j] == j as u32 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
            i += 1;
        }
        DirichletPowers { spf }
    }

    pub fn len(&self) -> usize {
        self.spf.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_prime(&self, k: usize) -> bool {
        k >= 2 && self.spf[k] as usize == k
    }

    pub fn smallest_factor(&self, k: usize) -> usize {
        self.spf[k] as usize
    }

    /// `[1^{−s}, 2^{−s}, ..., n^{−s}]`.
    pub fn powers(&self, s: &BigComplex, ctx: &mut Ctx) -> Vec<BigComplex> {
        let n = self.len();
        let mut out: Vec<BigComplex> = Vec::with_capacity(n);
        if n == 0 {
            return out;
        }
        out.push(ctx.cone());
        for k in 2..=n {
            let p = self.spf[k] as usize;
            let v = if p == k {
                let l = ctx.ln_u64(k as u64);
                let e = BigComplex::new(-(&s.re * &l), -(&s.im * &l));
                ctx.cexp(&e)
            } else {
                &out[p - 1] * &out[k / p - 1]
            };
            out.push(v);
        }
        out
    }
}

/// Borwein's weights `d_k / d_n` (`k = 0..n`) for the accelerated eta series.
pub(crate) fn borwein_weights(n: usize, bits: usize) -> Vec<BigReal> {
    // d_k = n Σ_{i≤k} (n+i−1)! 4^i / ((n−i)! (2i)!)
    let mut t = BigReal::one(bits) / BigReal::from_u64(n as u64, bits);
    let mut d = vec![BigReal::zero(bits); n + 1];
    let mut partial = BigReal::zero(bits);
    for (i, slot) in d.iter_mut().enumerate() {
        partial += &t;
        *slot = partial.clone();
        let ii = i as u64;
        let nn = n as u64;
        if i < n {
            let num = BigReal::from_u64(4 * (nn + ii) * (nn - ii), bits);
            let den = BigReal::from_u64((2 * ii + 1) * (2 * ii + 2), bits);
            t = t * num / den;
        }
    }
    let dn = d[n].clone();
    d.iter().map(|x| x / &dn).collect()
}

/// Number of eta-series terms for `2^{-target_bits}` absolute accuracy at height `t`.
pub(crate) fn borwein_terms(t: f64, target_bits: f64) -> usize {
    let growth = libm::log2(3.0 * (1.0 + 2.0 * t.abs())) + t.abs() * core::f64::consts::PI / 2.0 * core::f64::consts::LOG2_E;
    libm::ceil((growth + target_bits + 4.0) / LOG2_3P8) as usize + 2
}

/// `ζ(s)` for `Re(s) ≥ 1/2`, `s ≠ 1`, by the accelerated alternating series
/// `ζ(s) = η(s) / (1 − 2^{1−s})`.
pub fn zeta_alternating(s: &BigComplex, ctx: &mut Ctx) -> Result<Approx<BigComplex>> {
    let (sr, si) = s.to_f64();
    if sr < 0.5 {
        return Err(Error::Domain("alternating series used only for Re(s) ≥ 1/2".into()));
    }
    if sr == 1.0 && si == 0.0 {
        return Err(Error::Domain("ζ has a pole at s = 1".into()));
    }
    let p = ctx.bits();
    let n = borwein_terms(si, p as f64);
    let value = ctx.with_extra(32 + libm::log2(n as f64) as usize, |c| {
        let bits = c.bits();
        let w = borwein_weights(n, bits);
        let pw = DirichletPowers::new(n).powers(&s.with_bits(bits), c);
        // η(s) ≈ −Σ_{k<n} (−1)^k (d_k/d_n − 1) (k+1)^{−s}
        let mut acc = c.czero();
        let one = c.one();
        for k in 0..n {
            let coef = &one - &w[k];
            let term = pw[k].scale(&coef);
            if k % 2 == 0 {
                acc += term;
            } else {
                acc -= &term;
            }
        }
        // 1 − 2^{1−s}
        let ln2 = c.ln2();
        let e = BigComplex::new((&one - &s.re) * &ln2, -(&s.im * &ln2));
        let denom = c.cone() - c.cexp(&e);
        (&acc / &denom).with_bits(p)
    });
    let one_minus = {
        let m = libm::exp2(1.0 - sr);
        let ang = -si * core::f64::consts::LN_2;
        libm::hypot(1.0 - m * libm::cos(ang), -m * libm::sin(ang))
    };
    let err = pow2_bound(-(p as f64)) / one_minus.max(1e-300)
        + (n as f64 + 8.0) * libm::ldexp(1.0, -(p as i32)) / one_minus.max(1e-300);
    Ok(Approx::new(value, err))
}
