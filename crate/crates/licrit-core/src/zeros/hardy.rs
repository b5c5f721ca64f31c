//! Hardy's `Z` function and the critical-line zero finder.
//!
//! `ζ(1/2 + it)` comes from the Borwein-accelerated alternating series, whose
//! terms are bounded by one so that no precision is lost to cancellation; the
//! height only enters through the number of terms. On a scan grid the unit
//! powers `p^{−it}` of the primes are advanced by fixed rotations instead of
//! being recomputed.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::ZeroSet;
use crate::error::{Error, Result};
use crate::lfunc::builtin_zeta;
use crate::numerics::{borwein_terms, borwein_weights, log_gamma, Approx, BigComplex, BigReal, Ctx, DirichletPowers};
use crate::par::Parallel;

const MAX_BITS: usize = 4096;
/// Grid steps between fresh evaluations of the prime powers.
const REANCHOR: usize = 64;

/// `θ(t) = Im log Γ(1/4 + it/2) − (t/2) log π`.
pub fn riemann_siegel_theta(t: &BigReal, ctx: &mut Ctx) -> Result<Approx<BigReal>> {
    let z = BigComplex::new(ctx.real(0.25), t.mul_pow2(-1));
    let lg = log_gamma(&z, ctx)?;
    let pi = ctx.pi();
    let v = &lg.value.im - &(t.mul_pow2(-1) * ctx.ln(&pi));
    let err = lg.err + libm::ldexp(t.abs().to_f64().max(1.0) * 4.0, -(ctx.bits() as i32));
    Ok(Approx::new(v, err))
}

/// Precomputed data for evaluating `Z(t)` on `0 ≤ t ≤ t_max`.
pub struct HardyZ {
    bits: usize,
    t_max: f64,
    /// `(−1)^k (1 − d_k/d_n) (k+1)^{−1/2}`.
    weights: Vec<BigReal>,
    sieve: DirichletPowers,
    ln_primes: Vec<BigReal>,
}

impl HardyZ {
    pub fn new(t_max: f64, bits: usize) -> Result<Self> {
        if !(t_max >= 0.0 && t_max.is_finite()) {
            return Err(Error::Domain(format!("height {t_max} must be finite and nonnegative")));
        }
        let n = borwein_terms(t_max, bits as f64);
        let mut ctx = Ctx::new(bits)?;
        let bits = ctx.bits();
        let w = borwein_weights(n, bits);
        let one = ctx.one();
        let weights = (0..n)
            .map(|k| {
                let r = BigReal::from_u64(k as u64 + 1, bits).sqrt().recip();
                let c = (&one - &w[k]) * r;
                if k % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect();
        let sieve = DirichletPowers::new(n);
        let ln_primes = (2..=n).filter(|&k| sieve.is_prime(k)).map(|p| ctx.ln_u64(p as u64)).collect();
        Ok(HardyZ { bits, t_max, weights, sieve, ln_primes })
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn terms(&self) -> usize {
        self.weights.len()
    }

    /// `p^{−it}` for every prime `p ≤ n`.
    fn prime_units(&self, t: &BigReal, ctx: &mut Ctx) -> Vec<BigComplex> {
        self.ln_primes.iter().map(|l| ctx.cis(&-(t * l))).collect()
    }

    /// `Σ_k weight_k (k+1)^{−it}` from prime units.
    fn series(&self, units: &[BigComplex]) -> BigComplex {
        let n = self.weights.len();
        let mut pw: Vec<BigComplex> = Vec::with_capacity(n);
        pw.push(BigComplex::one(self.bits));
        let mut next_prime = 0usize;
        for k in 2..=n {
            let v = if self.sieve.is_prime(k) {
                let u = units[next_prime].clone();
                next_prime += 1;
                u
            } else {
                let p = self.sieve.smallest_factor(k);
                &pw[p - 1] * &pw[k / p - 1]
            };
            pw.push(v);
        }
        let mut acc = BigComplex::zero(self.bits);
        for (w, u) in self.weights.iter().zip(&pw) {
            acc += u.scale(w);
        }
        acc
    }

    /// `Z(t)` given the series value at `t`.
    fn finish(&self, t: &BigReal, series: &BigComplex, ctx: &mut Ctx) -> Result<Approx<BigReal>> {
        let ln2 = ctx.ln2();
        let rot = ctx.cis(&-(t * &ln2));
        let denom = ctx.cone() - rot.scale(&ctx.real(2.0).sqrt());
        let zeta = series / &denom;
        let theta = riemann_siegel_theta(t, ctx)?;
        let (s, c) = (ctx.sin(&theta.value), ctx.cos(&theta.value));
        let z = &c * &zeta.re - &s * &zeta.im;
        let zmag = zeta.abs().to_f64();
        let n = self.weights.len() as f64;
        // Truncation below 2^{-bits}, rounding of n terms, |1 − 2^{1/2−it}| ≥ √2 − 1.
        let err = (n + 16.0) * libm::ldexp(1.0, -(self.bits as i32)) / (core::f64::consts::SQRT_2 - 1.0) + theta.err * zmag;
        Ok(Approx::new(z, err))
    }

    pub fn eval_big(&self, t: &BigReal, ctx: &mut Ctx) -> Result<Approx<BigReal>> {
        let tf = t.to_f64();
        if !(tf >= 0.0 && tf <= self.t_max) {
            return Err(Error::Domain(format!("Z evaluator prepared for 0 ≤ t ≤ {}, got {tf}", self.t_max)));
        }
        let units = self.prime_units(t, ctx);
        let s = self.series(&units);
        self.finish(t, &s, ctx)
    }

    pub fn eval(&self, t: f64, ctx: &mut Ctx) -> Result<Approx<f64>> {
        let tb = BigReal::from_f64(t, self.bits);
        let z = self.eval_big(&tb, ctx)?;
        Ok(Approx::new(z.value.to_f64(), z.err))
    }

    /// Signs of `Z` at `t0 + j h`, `j = 0..steps`, with `|Z|` values.
    fn scan(&self, t0: f64, h: f64, steps: usize, ctx: &mut Ctx) -> Result<Vec<f64>> {
        let hb = BigReal::from_f64(h, self.bits);
        let step_units = self.prime_units(&hb, ctx);
        let mut out = Vec::with_capacity(steps);
        let mut units = Vec::new();
        for j in 0..steps {
            let t = BigReal::from_f64(t0, self.bits) + &hb * &BigReal::from_u64(j as u64, self.bits);
            if j % REANCHOR == 0 {
                units = self.prime_units(&t, ctx);
            } else {
                for (u, r) in units.iter_mut().zip(&step_units) {
                    *u = &*u * r;
                }
            }
            let s = self.series(&units);
            out.push(self.finish(&t, &s, ctx)?.value.to_f64());
        }
        Ok(out)
    }
}

/// `Z(t)` in double precision from the same weighted series.
///
/// The weights are bounded by `(k+1)^{−1/2}`, so the sum loses about
/// `log2(2√n)` bits. The phases `t log p` are reduced modulo `2π` in
/// double-double arithmetic, which keeps them accurate to a few ulps at any
/// height. An error in `θ` moves `Z` only in proportion to `|ζ|`, so it does
/// not move the zeros.
struct FastZ {
    t_max: f64,
    weights: Vec<f64>,
    sieve: DirichletPowers,
    /// `log p` split into leading and trailing doubles; index 0 holds `log 2`.
    ln_primes: Vec<(f64, f64)>,
    ln2: (f64, f64),
}

/// `2π` as a double plus its remainder.
const TWO_PI_HI: f64 = 6.283185307179586;
const TWO_PI_LO: f64 = 2.4492935982947064e-16;

/// `−t·(hi + lo)` reduced to `(−π, π]`.
fn neg_phase(t: f64, l: (f64, f64)) -> f64 {
    let p = t * l.0;
    let e = libm::fma(t, l.0, -p) + t * l.1;
    let k = libm::round(p / TWO_PI_HI);
    let r = libm::fma(-k, TWO_PI_HI, p) - k * TWO_PI_LO + e;
    -r
}

fn cis(phi: f64) -> (f64, f64) {
    (libm::cos(phi), libm::sin(phi))
}

fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

impl FastZ {
    fn new(t_max: f64) -> Result<Self> {
        let n = borwein_terms(t_max, 60.0);
        let mut ctx = Ctx::new(128)?;
        let w = borwein_weights(n, 128);
        let one = ctx.one();
        let weights = (0..n)
            .map(|k| {
                let c = (&one - &w[k]).to_f64() / libm::sqrt(k as f64 + 1.0);
                if k % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect();
        let sieve = DirichletPowers::new(n);
        let mut split = |p: u64| {
            let l = ctx.ln_u64(p);
            let hi = l.to_f64();
            (hi, (&l - &BigReal::from_f64(hi, 128)).to_f64())
        };
        let ln2 = split(2);
        let ln_primes = (2..=n).filter(|&k| sieve.is_prime(k)).map(|p| split(p as u64)).collect();
        Ok(FastZ { t_max, weights, sieve, ln_primes, ln2 })
    }

    /// Rounding bound on the series, before division by `|1 − 2^{1/2−it}| ≥ √2 − 1`.
    fn error(t_max: f64) -> f64 {
        let n = borwein_terms(t_max, 60.0) as f64;
        (2.0 * libm::sqrt(n) + 16.0) * libm::ldexp(1.0, -50) / (core::f64::consts::SQRT_2 - 1.0)
    }

    fn units(&self, t: f64) -> Vec<(f64, f64)> {
        self.ln_primes.iter().map(|&l| cis(neg_phase(t, l))).collect()
    }

    fn series(&self, units: &[(f64, f64)]) -> (f64, f64) {
        let n = self.weights.len();
        let mut pw: Vec<(f64, f64)> = Vec::with_capacity(n);
        pw.push((1.0, 0.0));
        let mut next = 0usize;
        for k in 2..=n {
            let v = if self.sieve.is_prime(k) {
                next += 1;
                units[next - 1]
            } else {
                let p = self.sieve.smallest_factor(k);
                cmul(pw[p - 1], pw[k / p - 1])
            };
            pw.push(v);
        }
        let (mut re, mut im) = (0.0, 0.0);
        for (w, u) in self.weights.iter().zip(&pw) {
            re += w * u.0;
            im += w * u.1;
        }
        (re, im)
    }

    fn theta(t: f64) -> Result<f64> {
        if t < 20.0 {
            let mut ctx = Ctx::new(64)?;
            return Ok(riemann_siegel_theta(&ctx.real(t), &mut ctx)?.value.to_f64());
        }
        let (t2, t3) = (t * t, t * t * t);
        Ok(0.5 * t * libm::log(t / (2.0 * PI)) - 0.5 * t - PI / 8.0
            + 1.0 / (48.0 * t)
            + 7.0 / (5760.0 * t3)
            + 31.0 / (80640.0 * t3 * t2))
    }

    fn finish(&self, t: f64, s: (f64, f64)) -> Result<f64> {
        let r = cis(neg_phase(t, self.ln2));
        let den = (1.0 - core::f64::consts::SQRT_2 * r.0, -core::f64::consts::SQRT_2 * r.1);
        let d2 = den.0 * den.0 + den.1 * den.1;
        let zeta = ((s.0 * den.0 + s.1 * den.1) / d2, (s.1 * den.0 - s.0 * den.1) / d2);
        let th = Self::theta(t)?;
        Ok(libm::cos(th) * zeta.0 - libm::sin(th) * zeta.1)
    }

    fn eval(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0 && t <= self.t_max) {
            return Err(Error::Domain(format!("Z evaluator prepared for 0 ≤ t ≤ {}, got {t}", self.t_max)));
        }
        self.finish(t, self.series(&self.units(t)))
    }

    fn scan(&self, t0: f64, h: f64, steps: usize) -> Result<Vec<f64>> {
        let step = self.units(h);
        let mut units = Vec::new();
        let mut out = Vec::with_capacity(steps);
        for j in 0..steps {
            let t = t0 + h * j as f64;
            if j % REANCHOR == 0 {
                units = self.units(t);
            } else {
                for (u, r) in units.iter_mut().zip(&step) {
                    *u = cmul(*u, *r);
                }
            }
            out.push(self.finish(t, self.series(&units))?);
        }
        Ok(out)
    }
}

fn bits_for(tol: f64, t: f64) -> Result<usize> {
    if !(tol > 0.0) {
        return Err(Error::Numerical(format!("tolerance {tol} cannot be met")));
    }
    let n = borwein_terms(t, 128.0) as f64;
    let need = -libm::log2(tol) + 32.0 + libm::log2(n + 16.0) + libm::log2(t + 2.0);
    let bits = (libm::ceil(need / 64.0) as usize * 64).max(128);
    if bits > MAX_BITS {
        return Err(Error::Numerical(format!("tolerance {tol} needs more than {MAX_BITS} bits")));
    }
    Ok(bits)
}

/// `Z(t)` within `tol`.
pub fn hardy_z(t: f64, tol: f64) -> Result<f64> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("Z(t) needs t ≥ 0 (got {t})")));
    }
    let bits = bits_for(tol, t)?;
    let hz = HardyZ::new(t, bits)?;
    let mut ctx = Ctx::new(bits)?;
    let z = hz.eval(t, &mut ctx)?;
    if z.err > tol {
        return Err(Error::Numerical(format!("Z({t}) error bound {:e} exceeds tolerance {tol:e}", z.err)));
    }
    Ok(z.value)
}

/// Settings for [`find_zeros`].
#[derive(Clone, Debug)]
pub struct FindOptions {
    /// Target accuracy of each ordinate and of `|Z|` at it.
    pub tol: f64,
    /// Allowed gap between the count and the main-term estimate before a
    /// warning; `None` means `2 + log T`.
    pub band: Option<f64>,
    /// Grid points per mean zero spacing `2π / log(T/2π)`.
    pub points_per_spacing: f64,
}

impl Default for FindOptions {
    fn default() -> Self {
        FindOptions { tol: 1e-10, band: None, points_per_spacing: 8.0 }
    }
}

#[derive(Clone, Debug)]
pub struct FoundZeros {
    pub zeros: ZeroSet,
    pub warnings: Vec<String>,
    /// Smooth count `θ(T)/π + 1`.
    pub smooth_count: f64,
    pub estimate: f64,
}

/// Refines a sign change of `Z` in `[lo, hi]` by the Illinois variant of false
/// position, falling back to bisection when it stalls.
fn refine(z: &mut dyn FnMut(f64) -> Result<f64>, mut lo: f64, mut hi: f64, mut zlo: f64, mut zhi: f64, tol: f64) -> Result<f64> {
    let mut side = 0i32;
    for it in 0..200 {
        let mid = if it % 4 == 3 {
            0.5 * (lo + hi)
        } else {
            let m = (lo * zhi - hi * zlo) / (zhi - zlo);
            if m > lo && m < hi {
                m
            } else {
                0.5 * (lo + hi)
            }
        };
        let zm = z(mid)?;
        if zm == 0.0 || (hi - lo <= tol && zm.abs() <= tol) {
            return Ok(mid);
        }
        if (zm < 0.0) == (zlo < 0.0) {
            lo = mid;
            zlo = zm;
            if side == -1 {
                zhi *= 0.5;
            }
            side = -1;
        } else {
            hi = mid;
            zhi = zm;
            if side == 1 {
                zlo *= 0.5;
            }
            side = 1;
        }
        if hi - lo <= tol {
            let m = 0.5 * (lo + hi);
            let zm = z(m)?;
            if zm.abs() <= tol || hi - lo <= libm::ldexp(hi.abs(), -50) {
                return Ok(m);
            }
        }
    }
    Err(Error::Numerical(format!("refinement in [{lo}, {hi}] did not converge")))
}

/// All zeros `1/2 + iγ` of `ζ` with `0 < γ ≤ T`, located by sign changes of
/// `Z` on a grid and refined to `opts.tol`.
pub fn find_zeros<P: Parallel>(t_max: f64, opts: &FindOptions, par: &P) -> Result<FoundZeros> {
    if !(t_max >= 10.0 && t_max.is_finite()) {
        return Err(Error::Domain(format!("zero search needs T ≥ 10 (got {t_max})")));
    }
    if !(opts.points_per_spacing >= 1.0) {
        return Err(Error::Domain("need at least one grid point per zero spacing".into()));
    }
    if opts.tol < libm::ldexp(t_max, -46) {
        return Err(Error::Numerical(format!(
            "tolerance {:e} is below the resolution of double-precision ordinates at height {t_max}",
            opts.tol
        )));
    }
    let spacing = 2.0 * PI / libm::log((t_max / (2.0 * PI)).max(core::f64::consts::E));
    let h = spacing / opts.points_per_spacing;
    let steps = libm::ceil(t_max / h) as usize;
    let h = t_max / steps as f64;
    let fast = FastZ::error(t_max) * 64.0 <= opts.tol;

    // Double-precision evaluators at halving heights, so that low blocks use
    // fewer series terms; the big-float evaluator serves tighter tolerances.
    let tiers: Vec<FastZ> = if fast {
        let mut hs = Vec::new();
        let mut top = t_max;
        while hs.len() < 6 {
            hs.push(top);
            if top < 40.0 {
                break;
            }
            top *= 0.5;
        }
        hs.into_iter().rev().map(FastZ::new).collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    let bits = bits_for(opts.tol.max(1e-300), t_max)?;
    let hz = if fast { None } else { Some(HardyZ::new(t_max, bits)?) };

    // Fixed-size blocks of grid intervals; each block also evaluates its right
    // endpoint so that blocks are independent.
    let block = 256usize;
    let blocks = steps.div_ceil(block);
    let results = par.map(blocks, &|b| -> Result<Vec<f64>> {
        let j0 = b * block;
        let j1 = ((b + 1) * block).min(steps);
        let top = if j1 == steps { t_max } else { j1 as f64 * h };
        // One grid point to the left as well, so every interior point has
        // both neighbours inside the block.
        let k0 = j0.saturating_sub(1);
        let t_at = |j: usize| if j == steps { t_max } else { j as f64 * h };
        let mut found = Vec::new();
        let mut bracket = |vals: &[f64], z: &mut dyn FnMut(f64) -> Result<f64>| -> Result<()> {
            for j in j0..j1 {
                let (za, zb) = (vals[j - k0], vals[j + 1 - k0]);
                if (za < 0.0) != (zb < 0.0) {
                    found.push(refine(z, t_at(j), t_at(j + 1), za, zb, opts.tol)?);
                }
            }
            // A dip of |Z| between samples of one sign may hide a close pair.
            for j in j0.max(1)..j1 {
                let (za, zb, zc) = (vals[j - 1 - k0], vals[j - k0], vals[j + 1 - k0]);
                if (za < 0.0) == (zb < 0.0) && (zb < 0.0) == (zc < 0.0) && zb.abs() < za.abs() && zb.abs() < zc.abs() {
                    let (lo, hi) = (t_at(j - 1), t_at(j + 1));
                    let m = 32;
                    let mut prev = (lo, za);
                    for i in 1..=m {
                        let t = if i == m { hi } else { lo + (hi - lo) * i as f64 / m as f64 };
                        let zt = if i == m { zc } else { z(t)? };
                        if (zt < 0.0) != (prev.1 < 0.0) {
                            found.push(refine(z, prev.0, t, prev.1, zt, opts.tol)?);
                        }
                        prev = (t, zt);
                    }
                }
            }
            Ok(())
        };
        match &hz {
            None => {
                let fz = tiers.iter().find(|f| f.t_max >= top).unwrap_or(&tiers[tiers.len() - 1]);
                let vals = fz.scan(k0 as f64 * h, h, j1 - k0 + 1)?;
                bracket(&vals, &mut |t| fz.eval(t.min(fz.t_max)))?;
            }
            Some(hz) => {
                let mut ctx = Ctx::new(bits)?;
                let vals = hz.scan(k0 as f64 * h, h, j1 - k0 + 1, &mut ctx)?;
                let mut c2 = Ctx::new(bits)?;
                bracket(&vals, &mut |t| Ok(hz.eval(t, &mut c2)?.value))?;
            }
        }
        found.sort_by(|a, b| a.total_cmp(b));
        Ok(found)
    });
    let mut gammas = Vec::new();
    for r in results {
        gammas.extend(r?);
    }

    let mut ctx = Ctx::new(128)?;
    let theta = riemann_siegel_theta(&BigReal::from_f64(t_max, 128), &mut ctx)?.value.to_f64();
    let smooth_count = theta / PI + 1.0;
    let estimate = super::count_estimate(&builtin_zeta(), t_max)?;
    let count = gammas.len() as f64;
    if count < smooth_count - 3.0 {
        return Err(Error::Numerical(format!(
            "found {count} zeros below {t_max} but the smooth count is {smooth_count:.1}; rerun with a finer grid"
        )));
    }
    let band = opts.band.unwrap_or(2.0 + libm::log(t_max));
    let mut warnings = Vec::new();
    if (count - estimate).abs() > band {
        warnings.push(format!(
            "found {count} zeros, main-term estimate {estimate:.2} differs by more than {band:.2}"
        ));
    }
    let zeros = ZeroSet::from_ordinates(&gammas, t_max, format!("hardy-z scan to T = {t_max}"))?;
    Ok(FoundZeros { zeros, warnings, smooth_count, estimate })
}
