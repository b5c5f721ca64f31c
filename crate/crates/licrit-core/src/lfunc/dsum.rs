//! Prime-power sums `Σ_{m ≤ M} Λ_F(m) (log m)^j m^{−s}`.
//!
//! The sums for all `j ≤ j_max` are produced together: one power `m^{−s}` and
//! one logarithm per prime power, then a running product by `log m`. The prime
//! powers are cut into fixed-size chunks whose partial sums are added in chunk
//! order, so the result does not depend on how the chunks were scheduled.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::sieve::{prime_powers_up_to, PrimePower};
use super::{CoefficientSource, LFunctionDescriptor};
use crate::error::{Error, Result};
use crate::numerics::{BigComplex, BigReal, Ctx};
use crate::par::Parallel;

const CHUNK: usize = 4096;
/// Primes between re-anchoring the logarithm chain with a direct `ln`.
const ANCHOR: usize = 512;
const GUARD: usize = 32;

/// Partial sums up to one cutoff, indexed by the power `j` of `log m`.
#[derive(Clone, Debug)]
pub struct PowerSums {
    pub s: f64,
    pub cutoff: u64,
    pub sums: Vec<BigComplex>,
}

#[derive(Clone, Debug)]
enum PowMode {
    Int(u64),
    /// `m^{−(int + num/2^levels)}`.
    Dyadic { int: u64, num: u64, levels: u32 },
    General(BigReal),
}

impl PowMode {
    fn new(s: f64, bits: usize) -> Self {
        for levels in 0..=4u32 {
            let scaled = s * (1u64 << levels) as f64;
            if scaled == libm::floor(scaled) && scaled < 1e6 {
                let scaled = scaled as u64;
                let den = 1u64 << levels;
                return if levels == 0 {
                    PowMode::Int(scaled)
                } else {
                    PowMode::Dyadic { int: scaled / den, num: scaled % den, levels }
                };
            }
        }
        PowMode::General(BigReal::from_f64(s, bits))
    }

    fn eval(&self, m: u64, ln_m: &BigReal, ctx: &mut Ctx) -> BigReal {
        let bits = ctx.bits();
        let mb = BigReal::from_u64(m, bits);
        match self {
            PowMode::Int(k) => mb.powi(*k).recip(),
            PowMode::Dyadic { int, num, levels } => {
                let mut root = mb.clone();
                for _ in 0..*levels {
                    root = root.sqrt();
                }
                (mb.powi(*int) * root.powi(*num)).recip()
            }
            PowMode::General(s) => ctx.exp(&-(s * ln_m)),
        }
    }
}

/// Logarithms of consecutive primes, each obtained from the previous one by
/// `log p₂ = log p₁ + 2 atanh((p₂ − p₁)/(p₂ + p₁))`.
struct LogChain {
    prev: Option<(u64, BigReal)>,
    since_anchor: usize,
    inv_odd: Vec<BigReal>,
}

impl LogChain {
    fn new() -> Self {
        LogChain { prev: None, since_anchor: 0, inv_odd: Vec::new() }
    }

    fn ln_prime(&mut self, p: u64, ctx: &mut Ctx) -> BigReal {
        let bits = ctx.bits();
        let chained = match &self.prev {
            Some((q, lq)) if self.since_anchor < ANCHOR && (p - q) * 64 <= p + q => {
                let x = BigReal::from_u64(p - q, bits) / BigReal::from_u64(p + q, bits);
                let x2 = x.square();
                let mut term = x.clone();
                let mut sum = x;
                let stop = -(bits as i32) - 4;
                let mut i = 1usize;
                loop {
                    term = &term * &x2;
                    if term.is_zero() || term.exponent() < stop {
                        break;
                    }
                    while self.inv_odd.len() <= i {
                        let k = 2 * self.inv_odd.len() as u64 + 1;
                        self.inv_odd.push(BigReal::from_u64(k, bits).recip());
                    }
                    sum += &term * &self.inv_odd[i];
                    i += 1;
                }
                Some(lq + &sum.mul_pow2(1))
            }
            _ => None,
        };
        let l = match chained {
            Some(l) => {
                self.since_anchor += 1;
                l
            }
            None => {
                self.since_anchor = 0;
                ctx.ln_u64(p)
            }
        };
        self.prev = Some((p, l.clone()));
        l
    }
}

fn has_coefficient(d: &LFunctionDescriptor, pp: &PrimePower) -> bool {
    match &d.coefficients {
        CoefficientSource::RiemannZeta => true,
        CoefficientSource::Dirichlet(chi) => chi.exponent(pp.p).is_some(),
        CoefficientSource::Table { .. } => d.von_mangoldt(pp.m) != (0.0, 0.0),
        CoefficientSource::Zero => false,
    }
}

fn chunk_sums(
    d: &LFunctionDescriptor,
    pps: &[PrimePower],
    mode: &PowMode,
    j_max: usize,
    bits: usize,
) -> Result<(Vec<BigReal>, Vec<BigReal>)> {
    let mut ctx = Ctx::new(bits + GUARD)?;
    let work = ctx.bits();
    let mut re = vec![BigReal::zero(work); j_max + 1];
    let mut im = vec![BigReal::zero(work); j_max + 1];
    let mut chain = LogChain::new();
    for pp in pps {
        if !has_coefficient(d, pp) {
            continue;
        }
        let ln_p = if pp.k == 1 { chain.ln_prime(pp.p, &mut ctx) } else { ctx.ln_u64(pp.p) };
        let Some(w) = d.von_mangoldt_big(pp.m, pp.p, pp.k, &ln_p, &mut ctx) else {
            continue;
        };
        let ln_m = if pp.k == 1 { ln_p } else { &ln_p * &BigReal::from_u64(pp.k as u64, work) };
        let v = mode.eval(pp.m, &ln_m, &mut ctx);
        let mut t_re = if w.re.is_zero() { None } else { Some(&w.re * &v) };
        let mut t_im = if w.im.is_zero() { None } else { Some(&w.im * &v) };
        for j in 0..=j_max {
            if let Some(t) = t_re.as_mut() {
                re[j] += &*t;
                if j < j_max {
                    *t = &*t * &ln_m;
                }
            }
            if let Some(t) = t_im.as_mut() {
                im[j] += &*t;
                if j < j_max {
                    *t = &*t * &ln_m;
                }
            }
        }
    }
    Ok((re, im))
}

/// `S_j(M) = Σ_{m ≤ M} Λ_F(m) (log m)^j m^{−s}` for `j = 0..=j_max` and every
/// cutoff `M` in `cutoffs` (ascending), computed at `bits` of mantissa.
pub fn power_sums<P: Parallel>(
    d: &LFunctionDescriptor,
    s: f64,
    j_max: usize,
    cutoffs: &[u64],
    bits: usize,
    par: &P,
) -> Result<Vec<PowerSums>> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::Domain(format!("power sums need s > 0 (got {s})")));
    }
    if cutoffs.is_empty() || cutoffs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition("cutoffs must be nonempty and strictly increasing".into()));
    }
    let top = *cutoffs.last().unwrap();
    if top > d.coefficients.limit() {
        return Err(Error::Precondition(format!(
            "cutoff {top} exceeds the coefficient table limit {}",
            d.coefficients.limit()
        )));
    }
    let pps = if matches!(d.coefficients, CoefficientSource::Zero) { Vec::new() } else { prime_powers_up_to(top) };
    let mode = PowMode::new(s, bits + GUARD);

    // Jobs never straddle a cutoff.
    let mut jobs: Vec<(usize, usize, usize)> = Vec::new();
    let mut lo = 0usize;
    for (ci, &c) in cutoffs.iter().enumerate() {
        let hi = pps.partition_point(|pp| pp.m <= c);
        let mut a = lo;
        while a < hi {
            let b = (a + CHUNK).min(hi);
            jobs.push((a, b, ci));
            a = b;
        }
        lo = hi;
    }
    let parts = par.map(jobs.len(), &|i| {
        let (a, b, _) = jobs[i];
        chunk_sums(d, &pps[a..b], &mode, j_max, bits)
    });

    let work = bits + GUARD;
    let mut acc_re = vec![BigReal::zero(work); j_max + 1];
    let mut acc_im = vec![BigReal::zero(work); j_max + 1];
    let mut out = Vec::with_capacity(cutoffs.len());
    let mut next_job = 0usize;
    for (ci, &c) in cutoffs.iter().enumerate() {
        while next_job < jobs.len() && jobs[next_job].2 == ci {
            let (re, im) = match &parts[next_job] {
                Ok(v) => v,
                Err(e) => return Err(e.clone()),
            };
            for j in 0..=j_max {
                acc_re[j] += &re[j];
                acc_im[j] += &im[j];
            }
            next_job += 1;
        }
        let sums = acc_re
            .iter()
            .zip(&acc_im)
            .map(|(r, i)| BigComplex::new(r.with_bits(bits), i.with_bits(bits)))
            .collect();
        out.push(PowerSums { s, cutoff: c, sums });
    }
    Ok(out)
}

/// Natural log of a majorant for `Σ_{m > M} (log m)^q m^{−s}`, `s > 1`:
/// `∫_M^∞ (log x)^q x^{−s} dx + max_{x ≥ M} (log x)^q x^{−s}`, where the integral
/// equals `Γ(q+1, (s−1) log M)/(s−1)^{q+1}`.
pub fn tail_majorant_ln(q: usize, s: f64, m: u64) -> f64 {
    if !(s > 1.0) {
        return f64::INFINITY;
    }
    let l = libm::log(m as f64);
    let y = (s - 1.0) * l;
    let qf = q as f64;
    // log Σ_{i ≤ q} y^i / i!
    let terms: Vec<f64> = (0..=q).map(|i| i as f64 * libm::log(y) - libm::lgamma(i as f64 + 1.0)).collect();
    let big = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lse = big + libm::log(terms.iter().map(|t| libm::exp(t - big)).sum::<f64>());
    let integral = libm::lgamma(qf + 1.0) - y + lse - (qf + 1.0) * libm::log(s - 1.0);
    let u = l.max(qf / s);
    let peak = if q == 0 { -s * u } else { qf * libm::log(u) - s * u };
    let hi = integral.max(peak);
    hi + libm::log1p(libm::exp(integral.min(peak) - hi))
}

/// `F′/F` and its derivatives at real `s > 1` from the truncated Dirichlet
/// series: entry `k` is `(−1)^{k+1} Σ_{m ≤ M} Λ_F(m)(log m)^k m^{−s}` together
/// with a bound on the omitted terms `m > M`.
pub fn logf_derivatives<P: Parallel>(
    d: &LFunctionDescriptor,
    s: f64,
    k_max: usize,
    m: u64,
    bits: usize,
    par: &P,
) -> Result<Vec<(BigComplex, f64)>> {
    if !(s > 1.0) {
        return Err(Error::Domain(format!("the Dirichlet series of F′/F converges only for s > 1 (got {s})")));
    }
    if m < 2 {
        return Err(Error::Precondition("truncation M must be at least 2".into()));
    }
    let sums = power_sums(d, s, k_max, &[m], bits, par)?.pop().expect("one cutoff");
    let c = d.coefficients.majorant_constant(d.degree());
    Ok(sums
        .sums
        .into_iter()
        .enumerate()
        .map(|(k, v)| {
            let v = if k % 2 == 0 { -v } else { v };
            let tail = if c == 0.0 { 0.0 } else { c * libm::exp(tail_majorant_ln(k + 1, s, m)) };
            (v, tail)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfunc::{builtin_zeta, kronecker_l, Conductor, GammaFactor};
    use crate::numerics::zeta_alternating;
    use crate::par::Serial;

    /// Independent path: direct logarithms and exponentials for every `m`.
    fn direct(d: &LFunctionDescriptor, s: f64, j_max: usize, m_max: u64, bits: usize) -> Vec<BigComplex> {
        let mut c = Ctx::new(bits + 64).unwrap();
        let sb = c.real(s);
        let mut out = vec![c.czero(); j_max + 1];
        for m in 2..=m_max {
            let (re, im) = d.von_mangoldt(m);
            if re == 0.0 && im == 0.0 {
                continue;
            }
            let (p, k) = super::super::sieve::as_prime_power(m).unwrap();
            let lp = c.ln_u64(p);
            let lam = match &d.coefficients {
                CoefficientSource::RiemannZeta => BigComplex::from_real(lp.clone()),
                _ => BigComplex::new(c.real(re.signum()) * &lp, c.zero()),
            };
            let lm = c.ln_u64(m);
            let _ = k;
            let w = c.exp(&-(&sb * &lm));
            let mut t = lam.scale(&w);
            for slot in out.iter_mut() {
                *slot += &t;
                t = t.scale(&lm);
            }
        }
        out
    }

    #[test]
    fn matches_direct_evaluation() {
        for (d, s) in [(builtin_zeta(), 2.0), (builtin_zeta(), 1.25), (kronecker_l(-4).unwrap(), 1.5), (builtin_zeta(), 1.3)] {
            let bits = 256;
            let got = power_sums(&d, s, 6, &[3000], bits, &Serial).unwrap().pop().unwrap();
            let want = direct(&d, s, 6, 3000, bits);
            for j in 0..=6 {
                let diff = (&got.sums[j] - &want[j]).abs();
                let scale = want[j].abs().exponent();
                assert!(diff.is_zero() || diff.exponent() < scale - 240, "s={s} j={j}");
            }
        }
    }

    #[test]
    fn zeta_log_derivative_values() {
        let z = builtin_zeta();
        let v2 = logf_derivatives(&z, 2.0, 0, 1_000_000, 128, &Serial).unwrap();
        assert!((v2[0].0.re.to_f64() + 0.5700).abs() < 1e-4);
        assert!((v2[0].0.re.to_f64() + 0.569_960_993_094_5).abs() < 3e-6);
        assert!(v2[0].1 < 1e-3);
        // Oracle: symmetric difference quotient of ζ from the eta series.
        let mut c = Ctx::new(256).unwrap();
        let h = c.one().mul_pow2(-40);
        let three = c.real(3.0);
        let up = zeta_alternating(&BigComplex::from_real(&three + &h), &mut c).unwrap().value.re;
        let dn = zeta_alternating(&BigComplex::from_real(&three - &h), &mut c).unwrap().value.re;
        let z3 = zeta_alternating(&BigComplex::from_real(three), &mut c).unwrap().value.re;
        let want = ((up - dn) / h.mul_pow2(1) / z3).to_f64();
        assert!((want + 0.1648).abs() < 1e-4);
        let v3 = logf_derivatives(&z, 3.0, 0, 1_000_000, 128, &Serial).unwrap();
        assert!((v3[0].0.re.to_f64() - want).abs() < 1e-9);
    }

    #[test]
    fn empty_source_is_zero() {
        let f = GammaFactor::new(0.5, 0.0, 0.0).unwrap();
        let d = LFunctionDescriptor::new("zero", 0, Conductor::Value(1.0), vec![f], (1.0, 0.0), CoefficientSource::Zero).unwrap();
        for (v, t) in logf_derivatives(&d, 1.5, 4, 1000, 128, &Serial).unwrap() {
            assert!(v.re.is_zero() && v.im.is_zero());
            assert_eq!(t, 0.0);
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let z = builtin_zeta();
        assert!(logf_derivatives(&z, 1.0, 0, 100, 128, &Serial).is_err());
        assert!(logf_derivatives(&z, 2.0, 0, 1, 128, &Serial).is_err());
        assert!(power_sums(&z, 2.0, 0, &[10, 5], 128, &Serial).is_err());
    }

    #[test]
    fn tails_are_honest() {
        let z = builtin_zeta();
        for s in [2.0, 1.5] {
            let sums = power_sums(&z, s, 6, &[20_000, 40_000], 128, &Serial).unwrap();
            for k in [0usize, 1, 3, 6] {
                let diff = (&sums[1].sums[k] - &sums[0].sums[k]).abs().to_f64();
                let bound = libm::exp(tail_majorant_ln(k + 1, s, 20_000));
                assert!(diff < bound, "s={s} k={k}: {diff} vs {bound}");
            }
        }
    }

    #[test]
    fn checkpoints_match_separate_runs() {
        let z = builtin_zeta();
        let both = power_sums(&z, 2.0, 3, &[5000, 12_000], 192, &Serial).unwrap();
        let alone = power_sums(&z, 2.0, 3, &[5000], 192, &Serial).unwrap();
        for j in 0..=3 {
            let diff = (&both[0].sums[j] - &alone[0].sums[j]).abs();
            assert!(diff.is_zero() || diff.exponent() < -180);
        }
        assert_eq!(both[1].cutoff, 12_000);
    }

    #[test]
    fn tail_majorant_closed_form() {
        // q = 0: ∫_M^∞ x^{−2} dx + M^{−2} = 1/M + 1/M².
        let want = libm::log(1e-3 + 1e-6);
        assert!((tail_majorant_ln(0, 2.0, 1000) - want).abs() < 1e-12);
        // q = 1, s = 2: ∫ log x / x² = (log M + 1)/M.
        let l = libm::log(1000.0f64);
        let peak = l / 1e6;
        let want = libm::log((l + 1.0) / 1000.0 + peak);
        assert!((tail_majorant_ln(1, 2.0, 1000) - want).abs() < 1e-12);
    }
}
