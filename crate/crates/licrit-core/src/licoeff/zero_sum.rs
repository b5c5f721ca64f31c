//! Sums over zeros: the definition itself and its Chebyshev form.
//!
//! An on-line pair `1/2 ± iγ` contributes `4 sin²(nφ)` with
//! `φ = atan2(1/2 − a, γ)`, i.e. `2(1 − cos nθ)` with `θ = 2φ`. Powers of
//! `e^{iφ}` are formed by rotation, so no `1 − z^n` with `|z| = 1` is ever
//! evaluated.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::{check_shift, LiParams, LiResult, Route};
use crate::error::{Error, Result};
use crate::lfunc::{CoefficientSource, LFunctionDescriptor};
use crate::numerics::{tanh_sinh_f64, BigComplex, BigReal, Ctx};
use crate::par::Parallel;
use crate::zeros::{OfflineZero, OnlineZero, ZeroSet};

const CHUNK: usize = 512;

/// `θ = atan2((1−2a)γ, γ² − a² + a − 1/4)`, continuous in `γ`.
pub fn theta_angle(gamma: f64, a: f64) -> f64 {
    libm::atan2((1.0 - 2.0 * a) * gamma, gamma * gamma - a * a + a - 0.25)
}

pub fn theta_angle_big(gamma: &BigReal, a: f64, ctx: &mut Ctx) -> BigReal {
    let b = half_minus(a, ctx);
    let y = gamma * &b.mul_pow2(1);
    let x = gamma.square() - b.square();
    ctx.atan2(&y, &x)
}

fn half_minus(a: f64, ctx: &Ctx) -> BigReal {
    ctx.real(0.5) - ctx.real(a)
}

fn bitlen(n: u64) -> usize {
    64 - n.leading_zeros() as usize
}

/// Upper bound for the on-line pairs above height `t`.
///
/// Each pair contributes at most `n²(1−2a)²/γ²`. Against the zero density
/// `(d/2π)(log γ + 1) + c₁` (positive part) the main term integrates to
/// `(d/2π)(log T′ + 2)/T′ + c₁/T′`; the fluctuation of the counting function
/// is bounded by `d·(0.112 log T + 0.278 log log T + 3.39)` and enters twice
/// through integration by parts.
pub fn tail_estimate(n: u64, a: f64, t: f64, d: &LFunctionDescriptor) -> f64 {
    if !(t > 0.0) {
        return f64::INFINITY;
    }
    let sc = d.structural_constants();
    let deg = sc.degree;
    let nb = n as f64 * (1.0 - 2.0 * a);
    let gamma0 = libm::exp(-2.0 * PI * sc.c1 / deg - 1.0);
    let tp = t.max(gamma0);
    let main = (deg / (2.0 * PI) * (libm::log(tp) + 2.0) + sc.c1) / tp;
    let te = t.max(core::f64::consts::E);
    let s_max = deg * (0.112 * libm::log(te) + 0.278 * libm::log(libm::log(te)) + 3.39);
    let fluct = (2.0 * s_max + deg * (0.056 + 0.139 / libm::log(te))) / (t * t);
    nb * nb * (main.max(0.0) + fluct)
}

/// Smooth part of the omitted pairs, `∫_T^∞ 4 sin²(n·atan(b/γ))·ρ₊(γ) dγ`,
/// where `ρ₊` is the positive part of the zero density. It lies between 0
/// and [`tail_estimate`].
pub fn tail_correction(n: u64, a: f64, t: f64, d: &LFunctionDescriptor) -> f64 {
    if !(t > 0.0) || n == 0 {
        return 0.0;
    }
    let sc = d.structural_constants();
    let deg = sc.degree;
    let b = (0.5 - a).abs();
    let nf = n as f64;
    // In u = 1/γ on [0, 1/T]; the phase n·atan(b·u) is split into pieces of
    // at most π/2 so that each piece is smooth.
    let f = |u: f64| -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        let rho = deg / (2.0 * PI) * (1.0 - libm::log(u)) + sc.c1;
        if rho <= 0.0 {
            return 0.0;
        }
        let s = libm::sin(nf * libm::atan(b * u));
        4.0 * s * s * rho / (u * u)
    };
    let top = 1.0 / t;
    let pieces = libm::ceil(nf * libm::atan(b * top) / (PI / 2.0)).clamp(1.0, 1.0e5) as usize;
    let mut total = 0.0;
    for i in 0..pieces {
        // Equal steps in the phase.
        let lo = libm::tan(i as f64 / pieces as f64 * libm::atan(b * top)) / b;
        let hi = if i + 1 == pieces { top } else { libm::tan((i + 1) as f64 / pieces as f64 * libm::atan(b * top)) / b };
        total += tanh_sinh_f64(f, lo, hi, 1e-10).0;
    }
    total
}

fn resolve_height(z: &ZeroSet, p: &LiParams) -> Result<f64> {
    if z.is_empty() && z.complete_to() == 0.0 {
        return Err(Error::Domain("the zero set is empty and complete to height 0: nothing to sum".into()));
    }
    let t = p.t.unwrap_or(z.complete_to());
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Precondition(format!("zero height T must be positive (got {t})")));
    }
    if t > z.complete_to() {
        return Err(Error::Precondition(format!(
            "zeros are complete only to {}; cannot sum to T = {t}",
            z.complete_to()
        )));
    }
    Ok(t)
}

fn check_descriptor(d: &LFunctionDescriptor) -> Result<()> {
    if !d.is_self_conjugate() {
        return Err(Error::Precondition(format!(
            "{} is not self-conjugate; zero sets store γ > 0 with implicit conjugates",
            d.name
        )));
    }
    Ok(())
}

/// Per-`n` accumulators of one chunk: the sums and a magnitude for rounding.
struct Partial {
    sums: Vec<BigReal>,
    mags: Vec<f64>,
}

impl Partial {
    fn new(n_max: usize, bits: usize) -> Self {
        Partial { sums: (0..n_max).map(|_| BigReal::zero(bits)).collect(), mags: alloc::vec![0.0; n_max] }
    }

    fn absorb(&mut self, other: Partial) {
        for (s, o) in self.sums.iter_mut().zip(other.sums) {
            *s += o;
        }
        for (m, o) in self.mags.iter_mut().zip(other.mags) {
            *m += o;
        }
    }
}

enum Job<'a> {
    Online(&'a [OnlineZero]),
    Offline(&'a [OfflineZero]),
}

fn jobs<'a>(online: &'a [OnlineZero], offline: &'a [OfflineZero]) -> Vec<Job<'a>> {
    let mut v: Vec<Job<'a>> = online.chunks(CHUNK).map(Job::Online).collect();
    v.extend(offline.chunks(CHUNK).map(Job::Offline));
    v
}

/// `(ρ − a)/(ρ + a − 1)` for `ρ = β + iγ`.
fn ratio(beta: f64, gamma: f64, a: f64, ctx: &Ctx) -> BigComplex {
    let rho = BigComplex::new(ctx.real(beta), ctx.real(gamma));
    let num = rho.add_real(&-ctx.real(a));
    let den = rho.add_real(&(ctx.real(a) - ctx.one()));
    &num / &den
}

fn rotation_chunk(job: &Job<'_>, a: f64, n_max: usize, bits: usize) -> Result<Partial> {
    let mut ctx = Ctx::new(bits)?;
    let mut out = Partial::new(n_max, bits);
    match job {
        Job::Online(zs) => {
            let b = half_minus(a, &ctx);
            for z in zs.iter() {
                let g = z.gamma_big(&mut ctx);
                let r = ctx.sqrt(&(g.square() + b.square()));
                let (c1, s1) = (&g / &r, &b / &r);
                let (mut c, mut s) = (c1.clone(), s1.clone());
                let mult = BigReal::from_u64(z.multiplicity as u64, bits);
                for k in 0..n_max {
                    out.sums[k] += (s.square() * &mult).mul_pow2(2);
                    out.mags[k] += 4.0 * z.multiplicity as f64;
                    let cn = &c * &c1 - &s * &s1;
                    s = &s * &c1 + &c * &s1;
                    c = cn;
                }
            }
        }
        Job::Offline(zs) => {
            let two = ctx.int(2);
            for z in zs.iter() {
                let w = ratio(z.beta, z.gamma, a, &ctx);
                let wabs = w.abs().to_f64();
                let mult = BigReal::from_u64(z.multiplicity as u64, bits);
                let mut wp = w.clone();
                let mut mag = wabs;
                for k in 0..n_max {
                    // ρ and ρ̄ together: 2 − 2 Re w^k.
                    out.sums[k] += (&two - &wp.re.mul_pow2(1)) * &mult;
                    out.mags[k] += z.multiplicity as f64 * (2.0 + 2.0 * mag);
                    wp = &wp * &w;
                    mag *= wabs;
                }
            }
        }
    }
    Ok(out)
}

fn finish(
    d: &LFunctionDescriptor,
    z: &ZeroSet,
    t: f64,
    n: u64,
    a: f64,
    partial: BigReal,
    rounding: f64,
    route: Route,
    bits: usize,
) -> LiResult {
    let tail = tail_estimate(n, a, t, d);
    let corr = tail_correction(n, a, t, d).min(tail);
    let value = BigComplex::from_real(&partial + &BigReal::from_f64(corr, bits));
    let mut r = LiResult {
        n: n as i64,
        a,
        value,
        error_bound: tail + rounding,
        route,
        heuristic: !matches!(d.coefficients, CoefficientSource::RiemannZeta),
        bits,
        diagnostics: Default::default(),
    };
    r.diag("partial_sum", partial.to_f64());
    r.diag("tail_bound", tail);
    r.diag("tail_correction", corr);
    r.diag("rounding_bound", rounding);
    r.diag("height", t);
    r.diag("zeros_used", z.count() as f64);
    r
}

/// `λ_F(k, a)` for `k = 1, …, p.n` from the zeros up to height `T`, each with
/// the smooth tail added and the tail bound as error.
pub fn zero_sum_series<P: Parallel>(d: &LFunctionDescriptor, z: &ZeroSet, p: &LiParams, par: &P) -> Result<Vec<LiResult>> {
    p.validate()?;
    check_descriptor(d)?;
    let t = resolve_height(z, p)?;
    let z = z.truncated(t);
    let n_max = p.n as usize;
    let bits = p.precision.stable_bits(p.n);
    let jobs = jobs(z.online(), z.offline());
    let parts = par.map(jobs.len(), &|j| rotation_chunk(&jobs[j], p.a, n_max, bits));
    let mut acc = Partial::new(n_max, bits);
    for part in parts {
        acc.absorb(part?);
    }
    Ok(acc
        .sums
        .into_iter()
        .zip(acc.mags)
        .enumerate()
        .map(|(k, (s, m))| {
            let n = k as u64 + 1;
            let rounding = libm::ldexp(m, 6 + bitlen(n) as i32 - bits as i32);
            finish(d, &z, t, n, p.a, s, rounding, Route::ZeroSum, bits)
        })
        .collect())
}

/// `λ_F(n, a)` from the zeros up to height `T` for a single `n`, with powers
/// taken by repeated squaring.
pub fn zero_sum_route<P: Parallel>(d: &LFunctionDescriptor, z: &ZeroSet, p: &LiParams, par: &P) -> Result<LiResult> {
    p.validate()?;
    check_descriptor(d)?;
    let t = resolve_height(z, p)?;
    let z = z.truncated(t);
    let n = p.n;
    let bits = p.precision.stable_bits(n);
    let a = p.a;
    let jobs = jobs(z.online(), z.offline());
    let parts = par.map(jobs.len(), &|j| -> Result<(BigReal, f64)> {
        let mut ctx = Ctx::new(bits)?;
        let mut sum = ctx.zero();
        let mut mag = 0.0;
        match &jobs[j] {
            Job::Online(zs) => {
                let b = half_minus(a, &ctx);
                for zz in zs.iter() {
                    let g = zz.gamma_big(&mut ctx);
                    let r = ctx.sqrt(&(g.square() + b.square()));
                    let e = BigComplex::new(&g / &r, &b / &r).powu(n);
                    sum += (e.im.square() * BigReal::from_u64(zz.multiplicity as u64, bits)).mul_pow2(2);
                    mag += 4.0 * zz.multiplicity as f64;
                }
            }
            Job::Offline(zs) => {
                for zz in zs.iter() {
                    let w = ratio(zz.beta, zz.gamma, a, &ctx);
                    let wn = w.powu(n);
                    let m = zz.multiplicity as f64;
                    sum += (ctx.int(2) - wn.re.mul_pow2(1)) * BigReal::from_u64(zz.multiplicity as u64, bits);
                    mag += m * (2.0 + 2.0 * wn.abs().to_f64());
                }
            }
        }
        Ok((sum, mag))
    });
    let mut total = BigReal::zero(bits);
    let mut mag = 0.0;
    for part in parts {
        let (s, m) = part?;
        total += s;
        mag += m;
    }
    let rounding = libm::ldexp(mag, 6 + 2 * bitlen(n) as i32 - bits as i32);
    Ok(finish(d, &z, t, n, a, total, rounding, Route::ZeroSum, bits))
}

/// `Σ_ρ [1 − ((ρ−a)/(ρ+a−1))^n]` over every stored zero and its conjugate,
/// for any nonzero integer `n`, without tail or pairing shortcuts.
pub fn zero_sum_signed(z: &ZeroSet, n: i64, a: f64, bits: usize) -> Result<BigComplex> {
    check_shift(a)?;
    if n == 0 {
        return Err(Error::Domain("n must be nonzero".into()));
    }
    let ctx = Ctx::new(bits)?;
    let one = ctx.cone();
    let mut total = ctx.czero();
    let mut add = |beta: f64, gamma: f64, mult: u32| {
        for g in [gamma, -gamma] {
            let w = ratio(beta, g, a, &ctx);
            let term = &one - &w.powi(n);
            for _ in 0..mult {
                total += &term;
            }
        }
    };
    for zz in z.online() {
        add(0.5, zz.gamma, zz.multiplicity);
    }
    for zz in z.offline() {
        add(zz.beta, zz.gamma, zz.multiplicity);
    }
    Ok(total)
}

/// The `n = 1` value by its own closed form: `(1−2a)²/((a−1/2)² + γ²)` per
/// on-line pair and `2 Re((2a−1)/(ρ+a−1))` per off-line entry.
pub fn lambda_one_reduction(z: &ZeroSet, a: f64, bits: usize) -> Result<BigComplex> {
    check_shift(a)?;
    let ctx = Ctx::new(bits)?;
    let b = half_minus(a, &ctx);
    let num = b.square().mul_pow2(2);
    let mut total = ctx.zero();
    for zz in z.online() {
        let g = ctx.real(zz.gamma);
        total += &num / &(b.square() + g.square()) * BigReal::from_u64(zz.multiplicity as u64, bits);
    }
    let c = ctx.real(2.0 * a) - ctx.one();
    for zz in z.offline() {
        let den = BigComplex::new(ctx.real(zz.beta) + ctx.real(a) - ctx.one(), ctx.real(zz.gamma));
        let q = BigComplex::from_real(c.clone()) / den;
        total += q.re.mul_pow2(1) * BigReal::from_u64(zz.multiplicity as u64, bits);
    }
    Ok(BigComplex::from_real(total))
}

/// `λ_F(k, a)` for `k = 1, …, p.n` as `2 Σ α (1 − T_k(x))` with
/// `x = cos θ = (4γ² − 4a² + 4a − 1)/(4γ² + 4a² − 4a + 1)`. The recurrence is
/// run on `e_k = 1 − T_k(x)`, which avoids the cancellation in `1 − T_k`.
pub fn chebyshev_series<P: Parallel>(d: &LFunctionDescriptor, z: &ZeroSet, p: &LiParams, par: &P) -> Result<Vec<LiResult>> {
    p.validate()?;
    check_descriptor(d)?;
    if !z.offline().is_empty() {
        return Err(Error::Precondition("the Chebyshev form assumes every zero lies on the critical line".into()));
    }
    let t = resolve_height(z, p)?;
    let z = z.truncated(t);
    let n_max = p.n as usize;
    let bits = p.precision.stable_bits(p.n) + 2 * bitlen(p.n);
    let a = p.a;
    let online = z.online();
    let chunks: Vec<&[OnlineZero]> = online.chunks(CHUNK).collect();
    let parts = par.map(chunks.len(), &|j| -> Result<Partial> {
        let mut ctx = Ctx::new(bits)?;
        let mut out = Partial::new(n_max, bits);
        let b2 = half_minus(a, &ctx).square();
        let one = ctx.one();
        for zz in chunks[j] {
            let g = zz.gamma_big(&mut ctx);
            // 1 − x = 2b²/(γ² + b²)
            let delta = (&b2 / &(g.square() + &b2)).mul_pow2(1);
            let two_delta = delta.mul_pow2(1);
            let mult = BigReal::from_u64(zz.multiplicity as u64, bits);
            let mut prev = ctx.zero();
            let mut cur = delta.clone();
            for k in 0..n_max {
                out.sums[k] += (&cur * &mult).mul_pow2(1);
                out.mags[k] += 4.0 * zz.multiplicity as f64;
                let next = cur.mul_pow2(1) - &prev + &two_delta * &(&one - &cur);
                prev = cur;
                cur = next;
            }
        }
        Ok(out)
    });
    let mut acc = Partial::new(n_max, bits);
    for part in parts {
        acc.absorb(part?);
    }
    Ok(acc
        .sums
        .into_iter()
        .zip(acc.mags)
        .enumerate()
        .map(|(k, (s, m))| {
            let n = k as u64 + 1;
            let rounding = libm::ldexp(m, 8 + 2 * bitlen(n) as i32 - bits as i32);
            finish(d, &z, t, n, a, s, rounding, Route::Chebyshev, bits)
        })
        .collect())
}

/// The last entry of [`chebyshev_series`].
pub fn chebyshev_route<P: Parallel>(d: &LFunctionDescriptor, z: &ZeroSet, p: &LiParams, par: &P) -> Result<LiResult> {
    Ok(chebyshev_series(d, z, p, par)?.pop().expect("n ≥ 1"))
}
