//! The arithmetic formula for `a < 0`.
//!
//! With `s₀ = 1 − a` inside the half plane of absolute convergence,
//!
//! ```text
//! λ_F(n, a) = m_F [2 − ((1−a)/a)^n − (a/(1−a))^n] + n(1−2a) log Q_F
//!           + Σ_k C(n,k) (1−2a)^k η_{k−1}
//!           + Σ_j Σ_k C(n,k) (1−2a)^k λ_j^k ψ^{(k−1)}(λ_j s₀ + μ_j)/(k−1)!
//! ```
//!
//! where `η_j = (F′/F)^{(j)}(s₀)/j!`. For `k ≥ 2` the polygamma values are
//! taken as `(−1)^k (k−1)! ζ(k, ·)`.
//!
//! The binomial sums cancel from size about `(1 + |1−2a|)^n` down to
//! `O(n log n)`, hence the width grows linearly in `n`.

use alloc::format;
use alloc::vec::Vec;

use super::{LiParams, LiResult, Route};
use crate::error::{Error, Result};
use crate::lfunc::{power_sums, tail_majorant_ln, CoefficientSource, LFunctionDescriptor};
use crate::numerics::{binomial_row, hurwitz_zeta_range, polygamma, BigComplex, BigReal, Ctx};
use crate::par::Parallel;

/// What goes into the error bound for the truncated Dirichlet series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailMode {
    /// Spread of the value over the cutoffs `M/2^i`, `i = 1..=ladder`.
    /// Realistic but not proven; results are flagged heuristic.
    Ladder,
    /// Termwise majorant `|Λ_F(m)| ≤ C log m` of every omitted term. Proven,
    /// but it grows like `C(n, k)·|1−2a|^k (log M)^k/(k−1)!` and is only
    /// useful for small `n`.
    Majorant,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArithmeticOptions {
    pub tail_mode: TailMode,
    /// Number of halvings of `M` in the ladder.
    pub ladder: u32,
    /// Add `m_F ∫_M^∞ (log x)^j x^{−s} dx`, the prime-number-theorem main term
    /// of the omitted terms, to every power sum.
    pub smooth_tail: bool,
}

impl Default for ArithmeticOptions {
    fn default() -> Self {
        ArithmeticOptions { tail_mode: TailMode::Ladder, ladder: 3, smooth_tail: true }
    }
}

fn log2_mag(z: &BigComplex) -> Option<f64> {
    let e = [&z.re, &z.im].iter().filter(|x| !x.is_zero()).map(|x| x.exponent()).max()?;
    Some(e as f64)
}

fn log2_binomial(n: u64, k: u64) -> f64 {
    let (n, k) = (n as f64, k as f64);
    (libm::lgamma(n + 1.0) - libm::lgamma(k + 1.0) - libm::lgamma(n - k + 1.0)) / core::f64::consts::LN_2
}

/// `log2 Σ 2^{x_i}` without overflow.
fn log2_sum(xs: &[f64]) -> f64 {
    let top = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return top;
    }
    top + libm::log2(xs.iter().map(|x| libm::exp2(x - top)).sum::<f64>())
}

/// Width used for indices up to `n`: the policy width, raised when the pole
/// terms `((1−a)/a)^n` are larger than the binomial sums.
fn width(p: &LiParams) -> usize {
    let base = p.precision.bits(p.n, p.a);
    if p.precision.override_bits.is_some() {
        return base;
    }
    let r = ((1.0 - p.a) / p.a).abs().max((p.a / (1.0 - p.a)).abs()).max(1.0);
    let pole = p.precision.base_bits + libm::ceil(p.n as f64 * libm::log2(r)) as usize + 32;
    base.max(pole * p.precision.multiplier.max(1))
}

/// `m_F Σ_{ρ ∈ {0, 1}} [1 − ((ρ−a)/(ρ+a−1))^n]`, the pole block through
/// complex arithmetic. Used to check the closed form at run time.
fn pole_by_definition(m: u32, n: u64, a: f64, ctx: &Ctx) -> BigReal {
    let mut acc = ctx.zero();
    for rho in [0.0, 1.0] {
        let num = ctx.complex(rho - a, 0.0);
        let den = BigComplex::new(ctx.real(rho) + ctx.real(a) - ctx.one(), ctx.zero());
        let w = (&num / &den).powu(n);
        acc += ctx.one() - w.re;
    }
    acc * ctx.int(m as i64)
}

struct Blocks {
    pole: Vec<BigReal>,
    /// `(1−2a)^k Σ_j λ_j^k ψ^{(k−1)}(x_j)/(k−1)!`, index `k − 1`.
    gamma: Vec<BigComplex>,
    gamma_err: Vec<f64>,
    /// `(1−2a)^k η_{k−1}`, one vector per ladder rung (last is `M`).
    dirichlet: Vec<Vec<BigComplex>>,
    /// `log2` of the proven bound on `|η_{k−1}|` error from truncation at `M`.
    majorant_log2: Vec<f64>,
    smooth: Vec<f64>,
    log_q: BigReal,
}

fn blocks<P: Parallel>(d: &LFunctionDescriptor, p: &LiParams, opts: &ArithmeticOptions, bits: usize, par: &P) -> Result<Blocks> {
    let n_max = p.n as usize;
    let a = p.a;
    let s0 = 1.0 - a;
    let mut ctx = Ctx::new(bits)?;
    let c = ctx.real(1.0) - ctx.real(2.0 * a);

    // Pole block with the run-time check of its closed form.
    let u = (ctx.one() - ctx.real(a)) / ctx.real(a);
    let v = ctx.real(a) / (ctx.one() - ctx.real(a));
    let m = ctx.int(d.m_f as i64);
    let mut pole = Vec::with_capacity(n_max);
    let (mut un, mut vn) = (ctx.one(), ctx.one());
    for _ in 0..p.n {
        un = &un * &u;
        vn = &vn * &v;
        pole.push((ctx.int(2) - &un - &vn) * &m);
    }
    for n in [1u64, p.n] {
        let closed = &pole[n as usize - 1];
        let direct = pole_by_definition(d.m_f, n, a, &ctx);
        let scale = closed.abs().to_f64().max(direct.abs().to_f64()).max(1.0);
        if (closed - &direct).abs().to_f64() > libm::ldexp(scale, 16 - bits as i32) {
            return Err(Error::SignConvention(format!(
                "pole block at n = {n} does not match the zeros ρ = 0, 1 of s^m (s−1)^m"
            )));
        }
    }

    // Gamma block.
    let mut gamma = alloc::vec![ctx.czero(); n_max];
    let mut gamma_err = alloc::vec![0.0; n_max];
    for g in &d.gamma_factors {
        let lam = ctx.real(g.lambda);
        let x = BigComplex::new(&lam * &ctx.real(s0) + ctx.real(g.mu.0), ctx.real(g.mu.1));
        let psi = polygamma(0, &x, &mut ctx)?;
        let cl = &c * &lam;
        gamma[0] += psi.value.scale(&cl);
        gamma_err[0] += psi.err * cl.abs().to_f64();
        if n_max >= 2 {
            let hz = hurwitz_zeta_range(p.n as u32, &x, &mut ctx)?;
            let neg = -&cl;
            let mut w = neg.clone();
            for (i, h) in hz.into_iter().enumerate() {
                let k = i + 2;
                w = &w * &neg;
                gamma[k - 1] += h.value.scale(&w);
                gamma_err[k - 1] += libm::exp2(w.abs().exponent() as f64 + libm::log2(h.err));
            }
        }
    }

    // Dirichlet block on the cutoff ladder.
    let log_q = d.conductor.ln(&mut ctx);
    let mut cutoffs: Vec<u64> = (0..=opts.ladder).rev().map(|i| p.m >> i).collect();
    cutoffs.dedup();
    if cutoffs[0] < 2 {
        return Err(Error::Precondition(format!("cutoff M = {} is too small for a ladder of {} halvings", p.m, opts.ladder)));
    }
    let zero_source = matches!(d.coefficients, CoefficientSource::Zero);
    let sums = if zero_source && d.m_f == 0 {
        Vec::new()
    } else {
        power_sums(d, s0, n_max - 1, &cutoffs, bits, par)?
    };
    let mut inv_fact = Vec::with_capacity(n_max);
    let mut f = ctx.one();
    for j in 0..n_max {
        if j > 0 {
            f = &f * &ctx.int(j as i64);
        }
        inv_fact.push(f.recip());
    }
    let sm1 = ctx.real(s0 - 1.0);
    let mut dirichlet = Vec::new();
    let mut smooth = Vec::new();
    for ps in &sums {
        // m e^{−y} Σ_{i ≤ j} y^i/i! / (s−1)^{j+1} with y = (s−1) log M is
        // m ∫_M^∞ (log x)^j x^{−s} dx / j!.
        let y = &sm1 * &ctx.ln_u64(ps.cutoff);
        let pref = &m * &ctx.exp(&-&y) / &sm1;
        let mut partial = ctx.zero();
        let mut term = ctx.one();
        let mut pow = pref;
        let mut ck = c.clone();
        let mut out = Vec::with_capacity(n_max);
        let mut smooth_total = 0.0;
        for j in 0..n_max {
            if j > 0 {
                term = &term * &y / &ctx.int(j as i64);
                pow = &pow / &sm1;
            }
            partial += &term;
            let mut eta = ps.sums[j].scale(&inv_fact[j]);
            if opts.smooth_tail && d.m_f > 0 {
                let corr = &pow * &partial;
                smooth_total += corr.to_f64();
                eta = eta.add_real(&corr);
            }
            if j % 2 == 0 {
                eta = -eta;
            }
            out.push(eta.scale(&ck));
            ck = &ck * &c;
        }
        dirichlet.push(out);
        smooth.push(smooth_total);
    }
    let cm = d.coefficients.majorant_constant(d.degree()) + if opts.smooth_tail { d.m_f as f64 } else { 0.0 };
    let majorant_log2 = (1..=n_max)
        .map(|k| {
            if cm == 0.0 {
                f64::NEG_INFINITY
            } else {
                (libm::log(cm) + tail_majorant_ln(k, s0, p.m) - libm::lgamma(k as f64)) / core::f64::consts::LN_2
            }
        })
        .collect();
    Ok(Blocks { pole, gamma, gamma_err, dirichlet, majorant_log2, smooth, log_q })
}

/// `λ_F(k, a)` for `k = 1, …, p.n` by the arithmetic formula, `a < 0`.
pub fn arithmetic_series<P: Parallel>(d: &LFunctionDescriptor, p: &LiParams, opts: &ArithmeticOptions, par: &P) -> Result<Vec<LiResult>> {
    p.validate()?;
    if !(p.a < 0.0) {
        return Err(Error::Domain(format!(
            "the arithmetic formula needs a < 0 (got {}); use the classical route for a = 0 or the zero sum for 0 < a < 1/2",
            p.a
        )));
    }
    let bits = width(p);
    let b = blocks(d, p, opts, bits, par)?;
    let ctx = Ctx::new(bits)?;
    let c = ctx.real(1.0) - ctx.real(2.0 * p.a);
    let log2_c = libm::log2((1.0 - 2.0 * p.a).abs());
    let rungs = b.dirichlet.len();
    let mut out = Vec::with_capacity(p.n as usize);
    for n in 1..=p.n {
        let row = binomial_row(n);
        let conductor = (&c * &b.log_q) * ctx.int(n as i64);
        let mut gamma_sum = ctx.czero();
        let mut mags = Vec::with_capacity(2 * n as usize + 2);
        let mut sf_err = 0.0;
        let mut majorant = Vec::with_capacity(n as usize);
        for k in 1..=n as usize {
            let binom = BigReal::from_biguint(&row[k], bits);
            let gk = b.gamma[k - 1].scale(&binom);
            if let Some(e) = log2_mag(&gk) {
                mags.push(e + 1.0);
            }
            gamma_sum += gk;
            sf_err += libm::exp2(log2_binomial(n, k as u64) + libm::log2(b.gamma_err[k - 1]));
            majorant.push(log2_binomial(n, k as u64) + k as f64 * log2_c + b.majorant_log2[k - 1]);
        }
        let mut dir_values = Vec::with_capacity(rungs);
        for (r, rung) in b.dirichlet.iter().enumerate() {
            let mut acc = ctx.czero();
            for k in 1..=n as usize {
                let t = rung[k - 1].scale(&BigReal::from_biguint(&row[k], bits));
                if r + 1 == rungs {
                    if let Some(e) = log2_mag(&t) {
                        mags.push(e + 1.0);
                    }
                }
                acc += t;
            }
            dir_values.push(acc);
        }
        let pole = &b.pole[n as usize - 1];
        if !pole.is_zero() {
            mags.push(pole.abs().exponent() as f64 + 1.0);
            mags.push(n as f64 * libm::log2(((1.0 - p.a) / p.a).abs()) + libm::log2(d.m_f as f64 + 1.0));
        }
        let fixed = gamma_sum.add_real(&(pole + &conductor));
        let dirichlet = dir_values.last().cloned().unwrap_or_else(|| ctx.czero());
        let value = &fixed + &dirichlet;
        let spread = dir_values
            .iter()
            .map(|v| (v - &dirichlet).abs().to_f64())
            .fold(0.0, f64::max);
        let majorant_bound = libm::exp2(log2_sum(&majorant));
        let rounding = libm::exp2(log2_sum(&mags) + 8.0 + libm::log2(n as f64 + 1.0) - bits as f64);
        let tail = match opts.tail_mode {
            TailMode::Ladder => spread,
            TailMode::Majorant => majorant_bound,
        };
        let mut r = LiResult {
            n: n as i64,
            a: p.a,
            value,
            error_bound: tail + sf_err + rounding,
            route: Route::Arithmetic,
            heuristic: opts.tail_mode == TailMode::Ladder,
            bits,
            diagnostics: Default::default(),
        };
        r.diag("pole_block", pole.to_f64());
        r.diag("conductor_block", conductor.to_f64());
        r.diag("gamma_block", gamma_sum.re.to_f64());
        r.diag("dirichlet_block", dirichlet.re.to_f64());
        r.diag("dirichlet_tail", tail);
        r.diag("ladder_spread", spread);
        r.diag("dirichlet_majorant", majorant_bound);
        r.diag("special_function_error", sf_err);
        r.diag("rounding_bound", rounding);
        r.diag("cutoff", p.m as f64);
        if let Some(sm) = b.smooth.last() {
            r.diag("smooth_tail_eta_sum", *sm);
        }
        out.push(r);
    }
    Ok(out)
}

/// `λ_F(n, a)` by the arithmetic formula, `a < 0`.
pub fn arithmetic_route<P: Parallel>(d: &LFunctionDescriptor, p: &LiParams, opts: &ArithmeticOptions, par: &P) -> Result<LiResult> {
    Ok(arithmetic_series(d, p, opts, par)?.pop().expect("n ≥ 1"))
}
