//! Evaluation context: working width, constant caches and elementary functions.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use astro_float::{BigFloat, Consts, Radix};
use num_bigint::BigUint;

use super::real::{BigComplex, BigReal, RM};
use crate::error::{Error, Result};

/// Cached constants at one width.
#[derive(Default)]
struct Tables {
    pi: Option<BigReal>,
    ln2: Option<BigReal>,
    euler: Option<BigReal>,
    /// `B_{2k}` for `k = 1, 2, ...` (index 0 holds `B_2`).
    bernoulli: Vec<BigReal>,
}

/// Numerical context.
///
/// Holds the working mantissa width and caches of constants that are
/// expensive to recompute. A context is cheap to create and is never shared
/// between threads; values produced by it are plain data.
pub struct Ctx {
    bits: usize,
    cc: Consts,
    tables: BTreeMap<usize, Tables>,
    tangent: Vec<BigUint>,
}

impl Ctx {
    pub fn new(bits: usize) -> Result<Self> {
        if bits < 53 {
            return Err(Error::Domain("mantissa width must be at least 53 bits".into()));
        }
        let cc = Consts::new().map_err(|_| Error::Numerical("constant cache allocation failed".into()))?;
        Ok(Ctx {
            bits: round_bits(bits),
            cc,
            tables: BTreeMap::new(),
            tangent: Vec::new(),
        })
    }

    /// Working width in bits.
    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn set_bits(&mut self, bits: usize) {
        self.bits = round_bits(bits.max(53));
    }

    /// Runs `f` with the width temporarily raised by `extra` bits.
    pub fn with_extra<T>(&mut self, extra: usize, f: impl FnOnce(&mut Ctx) -> T) -> T {
        let saved = self.bits;
        self.set_bits(saved + extra);
        let out = f(self);
        self.bits = saved;
        out
    }

    /// Unit roundoff `2^{1-p}` at the working width, as an `f64` (may underflow to 0).
    pub fn eps(&self) -> f64 {
        libm::ldexp(1.0, 1 - self.bits as i32)
    }

    pub fn real(&self, x: f64) -> BigReal {
        BigReal::from_f64(x, self.bits)
    }

    pub fn int(&self, x: i64) -> BigReal {
        BigReal::from_i64(x, self.bits)
    }

    pub fn zero(&self) -> BigReal {
        BigReal::zero(self.bits)
    }

    pub fn one(&self) -> BigReal {
        BigReal::one(self.bits)
    }

    pub fn czero(&self) -> BigComplex {
        BigComplex::zero(self.bits)
    }

    pub fn cone(&self) -> BigComplex {
        BigComplex::one(self.bits)
    }

    pub fn complex(&self, re: f64, im: f64) -> BigComplex {
        BigComplex::from_f64(re, im, self.bits)
    }

    /// Exact ratio `p/q` rounded to the working width.
    pub fn ratio(&self, p: i64, q: i64) -> BigReal {
        self.int(p) / self.int(q)
    }

    /// Parses a decimal literal at the working width.
    pub fn parse(&mut self, s: &str) -> Option<BigReal> {
        let v = BigFloat::parse(s.trim(), Radix::Dec, self.bits, RM, &mut self.cc);
        if v.is_nan() || v.is_inf() {
            None
        } else {
            Some(BigReal(v))
        }
    }

    fn tables(&mut self) -> &mut Tables {
        self.tables.entry(self.bits).or_default()
    }

    pub fn pi(&mut self) -> BigReal {
        if let Some(p) = &self.tables().pi {
            return p.clone();
        }
        let p = BigReal(self.cc.pi(self.bits, RM));
        self.tables().pi = Some(p.clone());
        p
    }

    pub fn ln2(&mut self) -> BigReal {
        if let Some(v) = &self.tables().ln2 {
            return v.clone();
        }
        let v = BigReal(self.cc.ln_2(self.bits, RM));
        self.tables().ln2 = Some(v.clone());
        v
    }

    pub fn ln(&mut self, x: &BigReal) -> BigReal {
        BigReal(x.raw().ln(self.bits, RM, &mut self.cc))
    }

    pub fn ln_u64(&mut self, n: u64) -> BigReal {
        let x = BigReal::from_u64(n, self.bits);
        self.ln(&x)
    }

    pub fn exp(&mut self, x: &BigReal) -> BigReal {
        BigReal(x.raw().exp(self.bits, RM, &mut self.cc))
    }

    pub fn sin(&mut self, x: &BigReal) -> BigReal {
        BigReal(x.raw().sin(self.bits, RM, &mut self.cc))
    }

    pub fn cos(&mut self, x: &BigReal) -> BigReal {
        BigReal(x.raw().cos(self.bits, RM, &mut self.cc))
    }

    pub fn atan(&mut self, x: &BigReal) -> BigReal {
        BigReal(x.raw().atan(self.bits, RM, &mut self.cc))
    }

    pub fn atanh(&mut self, x: &BigReal) -> BigReal {
        BigReal(x.raw().atanh(self.bits, RM, &mut self.cc))
    }

    pub fn sqrt(&self, x: &BigReal) -> BigReal {
        BigReal(x.raw().sqrt(self.bits, RM))
    }

    /// Four-quadrant arctangent with values in (−π, π].
    pub fn atan2(&mut self, y: &BigReal, x: &BigReal) -> BigReal {
        if x.is_zero() {
            if y.is_zero() {
                return self.zero();
            }
            let h = self.pi().mul_pow2(-1);
            return if y.is_negative() { -h } else { h };
        }
        // Reduce to |ratio| ≤ 1 for a well-conditioned series argument.
        if y.abs() <= x.abs() {
            let t = self.atan(&(y / x));
            if x.is_negative() {
                let pi = self.pi();
                if y.is_negative() {
                    t - pi
                } else {
                    t + pi
                }
            } else {
                t
            }
        } else {
            let t = self.atan(&(x / y));
            let h = self.pi().mul_pow2(-1);
            if y.is_negative() {
                -h - t
            } else {
                h - t
            }
        }
    }

    /// Principal logarithm.
    pub fn cln(&mut self, z: &BigComplex) -> BigComplex {
        let re = self.ln(&z.norm_sqr()).mul_pow2(-1);
        let im = self.atan2(&z.im, &z.re);
        BigComplex::new(re, im)
    }

    pub fn cexp(&mut self, z: &BigComplex) -> BigComplex {
        let r = self.exp(&z.re);
        let (s, c) = (self.sin(&z.im), self.cos(&z.im));
        BigComplex::new(&r * &c, &r * &s)
    }

    /// `e^{iφ}`.
    pub fn cis(&mut self, phi: &BigReal) -> BigComplex {
        BigComplex::new(self.cos(phi), self.sin(phi))
    }

    /// Principal square root.
    pub fn csqrt(&mut self, z: &BigComplex) -> BigComplex {
        let r = z.abs();
        if r.is_zero() {
            return self.czero();
        }
        let half = self.real(0.5);
        if !z.re.is_negative() {
            let t = ((&r + &z.re) * &half).sqrt();
            let im = &z.im / &(&t + &t);
            BigComplex::new(t, im)
        } else {
            let mut t = ((&r - &z.re) * &half).sqrt();
            if z.im.is_negative() {
                t = -t;
            }
            let re = &z.im / &(&t + &t);
            BigComplex::new(re, t)
        }
    }

    /// Euler–Mascheroni constant by the Brent–McMillan formula.
    pub fn euler_gamma(&mut self) -> BigReal {
        if let Some(g) = &self.tables().euler {
            return g.clone();
        }
        let target = self.bits;
        let g = self.with_extra(32, |c| {
            // Truncation error is O(e^{-4N}).
            let n = ((target as f64 + 16.0) * core::f64::consts::LN_2 / 4.0).ceil() as u64 + 1;
            let nn = c.int((n * n) as i64);
            let ln_n = c.ln_u64(n);
            let mut a = -&ln_n;
            let mut b = c.one();
            let mut u = a.clone();
            let mut v = b.clone();
            let mut k = 1u64;
            let stop = (target as i32) + 48;
            loop {
                let kr = c.int(k as i64);
                b = &b * &nn / (&kr * &kr);
                a = (&a * &nn / &kr + &b) / &kr;
                u += &a;
                v += &b;
                if k > n && b.exponent() < v.exponent() - stop && a.abs().exponent() < u.abs().exponent().max(v.exponent()) - stop {
                    break;
                }
                k += 1;
            }
            u / v
        });
        let g = g.with_bits(target);
        self.tables().euler = Some(g.clone());
        g
    }

    /// Bernoulli number `B_{2k}` for `k ≥ 1`, exact to the working width.
    pub fn bernoulli_2k(&mut self, k: usize) -> BigReal {
        assert!(k >= 1);
        let have = self.tables().bernoulli.len();
        if have < k {
            self.extend_bernoulli(k);
        }
        self.tables().bernoulli[k - 1].clone()
    }

    fn extend_bernoulli(&mut self, k: usize) {
        let want = (k + 16).max(2 * self.tables().bernoulli.len());
        if self.tangent.len() < want {
            self.tangent = tangent_numbers(want);
        }
        let bits = self.bits;
        let have = self.tables().bernoulli.len();
        let mut fresh = Vec::with_capacity(want - have);
        for j in (have + 1)..=want {
            // B_{2j} = (-1)^{j-1} 2j T_j / (4^j (4^j - 1))
            let num = &self.tangent[j - 1] * BigUint::from(2 * j as u64);
            let four_j = BigUint::from(1u8) << (2 * j as u32);
            let den = &four_j * (&four_j - BigUint::from(1u8));
            let wide = bits + 64;
            let mut b = BigReal::from_biguint(&num, wide) / BigReal::from_biguint(&den, wide);
            if j % 2 == 0 {
                b = -b;
            }
            fresh.push(b.with_bits(bits));
        }
        self.tables().bernoulli.extend(fresh);
    }
}

/// Tangent numbers `T_1..T_k` by the integer recurrence of Brent and Harvey.
fn tangent_numbers(k: usize) -> Vec<BigUint> {
    let mut t: Vec<BigUint> = Vec::with_capacity(k);
    t.push(BigUint::from(1u8));
    for j in 1..k {
        let prev = &t[j - 1] * BigUint::from(j as u64);
        t.push(prev);
    }
    for i in 1..k {
        for j in i..k {
            let a = &t[j - 1] * BigUint::from((j - i) as u64);
            let b = &t[j] * BigUint::from((j - i + 2) as u64);
            t[j] = a + b;
        }
    }
    t
}

fn round_bits(bits: usize) -> usize {
    bits.div_ceil(64) * 64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_small_values() {
        let mut c = Ctx::new(128).unwrap();
        let expect = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0];
        for (i, e) in expect.iter().enumerate() {
            let b = c.bernoulli_2k(i + 1).to_f64();
            assert!((b - e).abs() <= 1e-15 * e.abs(), "B_{} = {b}", 2 * (i + 1));
        }
        // B_40 = -261082718496449122051/13530
        let b40 = c.bernoulli_2k(20).to_f64();
        assert!((b40 / (-261082718496449122051.0 / 13530.0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn euler_constant_digits() {
        let mut c = Ctx::new(256).unwrap();
        let g = c.euler_gamma();
        let reference = c
            .parse("0.57721566490153286060651209008240243104215933593992359880576723488486772677766467")
            .unwrap();
        assert!((&g - &reference).abs().exponent() < -250);
    }

    #[test]
    fn atan2_quadrants() {
        let mut c = Ctx::new(128).unwrap();
        for &(y, x) in &[(1.0, 2.0), (2.0, 1.0), (1.0, -2.0), (-1.0, -0.5), (-3.0, 0.1), (0.0, -1.0), (5.0, 0.0)] {
            let v = c.atan2(&c.real(y), &c.real(x)).to_f64();
            assert!((v - libm::atan2(y, x)).abs() < 1e-15, "atan2({y},{x})");
        }
    }

    #[test]
    fn complex_log_exp_inverse() {
        let mut c = Ctx::new(192).unwrap();
        let z = c.complex(-1.25, 0.5);
        let w = c.cln(&z);
        let back = c.cexp(&w);
        assert!((&back - &z).abs().exponent() < -180);
        let r = c.csqrt(&z);
        assert!((&r.square() - &z).abs().exponent() < -180);
    }
}
