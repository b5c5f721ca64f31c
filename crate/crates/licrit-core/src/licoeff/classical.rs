//! The classical coefficients `λ_F(n) = λ_F(n, 0)` from the explicit formula
//!
//! ```text
//! λ_F(−n) = m_F + n(log Q_F − (d_F/2)γ)
//!         − Σ_l C(n,l) (−1)^{l−1}/(l−1)! · lim_X [Σ_{k≤X} Λ_F(k)(log k)^{l−1}/k − (m_F/l)(log X)^l]
//!         + n Σ_j λ_j (−1/q_j + Σ_{l≥1} q_j/(l(l+q_j)))
//!         + Σ_j Σ_{k≥2} C(n,k) (−λ_j)^k ζ(k, q_j),        q_j = λ_j + μ_j,
//! ```
//!
//! with the inner series summed as `ψ(1+q) + γ`. The limit is replaced by the
//! values at `X`, `2X`, `4X`; `λ_F(n)` is the conjugate of `λ_F(−n)`.

use alloc::format;
use alloc::vec::Vec;

use super::{LiParams, LiResult, Route};
use crate::error::{Error, Result};
use crate::lfunc::{power_sums, LFunctionDescriptor};
use crate::numerics::{binomial_row, hurwitz_zeta_range, polygamma, BigComplex, BigReal, Ctx};
use crate::par::Parallel;

fn width(p: &LiParams) -> usize {
    let base = p.precision.bits(p.n, 0.0);
    if p.precision.override_bits.is_some() {
        return base;
    }
    // Largest counterterm C(n,l)(log 4X)^l/(l−1)!.
    let ll = libm::log(4.0 * p.x as f64);
    let n = p.n as f64;
    let peak = (1..=p.n)
        .map(|l| {
            let l = l as f64;
            (libm::lgamma(n + 1.0) - libm::lgamma(l + 1.0) - libm::lgamma(n - l + 1.0) + l * libm::log(ll) - libm::lgamma(l))
                / core::f64::consts::LN_2
        })
        .fold(0.0, f64::max);
    base + libm::ceil(peak) as usize * p.precision.multiplier.max(1)
}

/// `λ_F(k)` for `k = 1, …, p.n` at cutoff ladder `p.x`, `2p.x`, `4p.x`.
pub fn classical_series<P: Parallel>(d: &LFunctionDescriptor, p: &LiParams, par: &P) -> Result<Vec<LiResult>> {
    p.validate()?;
    if p.a != 0.0 {
        return Err(Error::Domain(format!("the classical formula is the case a = 0 (got a = {})", p.a)));
    }
    if p.x < 100 {
        return Err(Error::Domain(format!("the classical route needs X ≥ 100 (got {})", p.x)));
    }
    let n_max = p.n as usize;
    let bits = width(p);
    let mut ctx = Ctx::new(bits)?;
    let m = ctx.int(d.m_f as i64);
    let euler = ctx.euler_gamma();
    let log_q = d.conductor.ln(&mut ctx);
    let deg_half = ctx.real(d.degree() / 2.0);

    // Gamma factors: first-order coefficient and ζ(k, q_j) terms by k.
    let mut first = ctx.czero();
    let mut higher = alloc::vec![ctx.czero(); n_max];
    let mut sf_err = alloc::vec![0.0; n_max];
    for g in &d.gamma_factors {
        let lam = ctx.real(g.lambda);
        let q = BigComplex::new(&lam + &ctx.real(g.mu.0), ctx.real(g.mu.1));
        let psi1 = polygamma(0, &q.add_real(&ctx.one()), &mut ctx)?;
        let inner = &(&psi1.value - &q.recip()) + &BigComplex::from_real(euler.clone());
        first += inner.scale(&lam);
        sf_err[0] += psi1.err * g.lambda;
        if n_max >= 2 {
            let neg = -&lam;
            let mut w = neg.clone();
            for (i, h) in hurwitz_zeta_range(p.n as u32, &q, &mut ctx)?.into_iter().enumerate() {
                w = &w * &neg;
                higher[i + 1] += h.value.scale(&w);
                sf_err[i + 1] += libm::exp2(w.abs().exponent() as f64 + libm::log2(h.err));
            }
        }
    }

    let cutoffs = [p.x, 2 * p.x, 4 * p.x];
    let sums = power_sums(d, 1.0, n_max - 1, &cutoffs, bits, par)?;
    // A_l = S_{l−1}(X) − (m/l)(log X)^l, scaled by (−1)^{l−1}/(l−1)!.
    let mut scaled: Vec<Vec<BigComplex>> = Vec::with_capacity(3);
    let mut counters: Vec<BigReal> = Vec::with_capacity(n_max);
    for ps in &sums {
        counters.clear();
        let lx = ctx.ln_u64(ps.cutoff);
        let mut pow = ctx.one();
        let mut fact = ctx.one();
        let mut row = Vec::with_capacity(n_max);
        for l in 1..=n_max {
            pow = &pow * &lx;
            if l > 1 {
                fact = &fact * &ctx.int(l as i64 - 1);
            }
            let counter = &(&m * &pow) / &ctx.int(l as i64);
            let a_l = ps.sums[l - 1].add_real(&-&counter);
            counters.push(if l % 2 == 0 { -(&counter / &fact) } else { &counter / &fact });
            let mut t = a_l.scale(&fact.recip());
            if l % 2 == 0 {
                t = -t;
            }
            row.push(t);
        }
        scaled.push(row);
    }

    let mut out = Vec::with_capacity(n_max);
    for n in 1..=p.n {
        let binom = binomial_row(n);
        let nn = ctx.int(n as i64);
        let mut fixed = BigComplex::from_real(&m + &(&nn * &(&log_q - &(&deg_half * &euler))));
        fixed += first.scale(&nn);
        let mut err = sf_err[0] * n as f64;
        for k in 2..=n as usize {
            let b = BigReal::from_biguint(&binom[k], bits);
            fixed += higher[k - 1].scale(&b);
            err += sf_err[k - 1] * b.to_f64();
        }
        let mut mag = fixed.abs().to_f64();
        let vals: Vec<BigComplex> = scaled
            .iter()
            .map(|row| {
                let mut acc = ctx.czero();
                for l in 1..=n as usize {
                    let t = row[l - 1].scale(&BigReal::from_biguint(&binom[l], bits));
                    mag = mag.max(t.abs().to_f64());
                    acc += t;
                }
                &fixed - &acc
            })
            .collect();
        let mut counterterm = ctx.zero();
        for l in 1..=n as usize {
            counterterm += &counters[l - 1] * &BigReal::from_biguint(&binom[l], bits);
        }
        let d1 = (&vals[1] - &vals[0]).abs().to_f64();
        let d2 = (&vals[2] - &vals[1]).abs().to_f64();
        if !(d2 <= d1) {
            return Err(Error::Numerical(format!(
                "cutoff ladder at X = {} does not contract for n = {n} (|Δ| {d1:.3e} then {d2:.3e}); increase X",
                p.x
            )));
        }
        let spread = d1.max(d2);
        let rounding = libm::ldexp(mag * (4 * n + 16) as f64, -(bits as i32) + 8);
        // (√2 − 1)^{−1}: extrapolation under X^{−1/2} decay, reported only.
        let richardson = &vals[2] + &(&vals[2] - &vals[1]).scale(&ctx.real(1.0 / (core::f64::consts::SQRT_2 - 1.0)));
        let mut r = LiResult {
            n: n as i64,
            a: 0.0,
            value: vals[2].conj(),
            error_bound: 2.0 * spread + err + rounding,
            route: Route::Classical,
            heuristic: true,
            bits,
            diagnostics: Default::default(),
        };
        r.diag("cutoff", (4 * p.x) as f64);
        r.diag("counterterm", counterterm.to_f64());
        r.diag("value_at_x", vals[0].re.to_f64());
        r.diag("value_at_2x", vals[1].re.to_f64());
        r.diag("ladder_spread", spread);
        r.diag("richardson_estimate", richardson.re.to_f64());
        r.diag("special_function_error", err);
        r.diag("rounding_bound", rounding);
        out.push(r);
    }
    Ok(out)
}

/// `λ_F(n)` by the classical explicit formula.
pub fn classical_route<P: Parallel>(d: &LFunctionDescriptor, p: &LiParams, par: &P) -> Result<LiResult> {
    Ok(classical_series(d, p, par)?.pop().expect("n ≥ 1"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfunc::{builtin_dirichlet, builtin_zeta};
    use crate::par::Serial;

    #[test]
    fn zeta_first_coefficient() {
        let euler = 0.5772156649015329;
        let want = 1.0 + euler / 2.0 - 0.5 * libm::log(4.0 * core::f64::consts::PI);
        assert!((want - 0.0230957).abs() < 1e-7);
        let p = LiParams::new(1, 0.0).unwrap().with_x(100_000);
        let r = classical_route(&builtin_zeta(), &p, &Serial).unwrap();
        assert!((r.re() - want).abs() < 5e-3, "{}", r.re());
        assert!((r.re() - want).abs() <= r.error_bound);
    }

    #[test]
    fn no_pole_no_counterterm() {
        // For m_F = 0 the values at X, 2X, 4X differ only through the prime sums.
        let d = builtin_dirichlet(4, &[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0), (-1.0, 0.0)]).unwrap();
        let p = LiParams::new(2, 0.0).unwrap().with_x(300_000);
        let r = classical_route(&d, &p, &Serial).unwrap();
        assert_eq!(r.diagnostics["counterterm"], 0.0);
        let z = classical_route(&builtin_zeta(), &p, &Serial).unwrap();
        assert!(z.diagnostics["counterterm"] != 0.0);
    }

    #[test]
    fn domain() {
        let d = builtin_zeta();
        assert!(classical_route(&d, &LiParams::new(1, -1.0).unwrap(), &Serial).is_err());
        assert!(classical_route(&d, &LiParams::new(1, 0.0).unwrap().with_x(50), &Serial).is_err());
    }
}
