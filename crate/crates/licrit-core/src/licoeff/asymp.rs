//! The large-`n` law
//!
//! ```text
//! λ_F(n, a) ≈ (1/2 − a) d_F n log n
//!           + n(1−2a) [(d_F/2)(γ − 1 − log(1−2a)) + (1/2) log(λ Q_F²) + C_F(a)]
//! ```
//!
//! with `λ = Π λ_j^{2λ_j}` and `C_F(a) = −Σ_j λ_j Σ_{k≥1} (aλ_j)^k ζ(k+1, λ_j+μ_j)`,
//! which sums to `Σ_j λ_j [ψ(λ_j(1−a)+μ_j) − ψ(λ_j+μ_j)]`.

use alloc::format;
use alloc::vec::Vec;

use super::{check_shift, LiParams, LiResult, Route};
use crate::error::{Error, Result};
use crate::lfunc::LFunctionDescriptor;
use crate::numerics::{hurwitz_zeta_range, polygamma, Approx, BigComplex, BigReal, Ctx};

/// `C_F(a)` from its power series in `a`, truncated after `k` terms.
///
/// The first few terms of each Hurwitz sum are split off and summed in closed
/// form, `Σ_{k≥1} r^k z^{−k−1} = r/(z(z−r))`, until the remaining series has
/// ratio at most 1/2. This keeps the result finite on and beyond the circle
/// `|aλ_j| = |λ_j+μ_j|` (zeta at `a = −1` sits exactly on it), where it agrees
/// with the digamma form.
pub fn cfa_constant(d: &LFunctionDescriptor, a: f64, k: usize, bits: usize) -> Result<Approx<BigComplex>> {
    check_shift(a)?;
    if k < 2 {
        return Err(Error::Domain(format!("C_F(a) needs at least two series terms (got {k})")));
    }
    let mut ctx = Ctx::new(bits + 32)?;
    let mut total = ctx.czero();
    let mut err = 0.0;
    if a == 0.0 {
        return Ok(Approx::new(total.with_bits(bits), 0.0));
    }
    for g in &d.gamma_factors {
        let lam = ctx.real(g.lambda);
        let q = BigComplex::new(&lam + &ctx.real(g.mu.0), ctx.real(g.mu.1));
        let r = &lam * &ctx.real(a);
        let rf = (a * g.lambda).abs();
        let mut peel = 0u64;
        while g.lambda + g.mu.0 + (peel as f64) < 2.0 * rf {
            peel += 1;
        }
        for i in 0..peel {
            let z = q.add_real(&ctx.int(i as i64));
            let zr = z.add_real(&-&r);
            if zr.abs().to_f64() < 1e-300 {
                return Err(Error::Domain(format!(
                    "λ_j(1−a)+μ_j + {i} vanishes: C_F(a) has a pole at a = {a}"
                )));
            }
            let term = BigComplex::from_real(r.clone()) / (&z * &zr);
            total -= term.scale(&lam);
        }
        let shifted = q.add_real(&ctx.int(peel as i64));
        let x = g.lambda + g.mu.0 + peel as f64;
        let hz = hurwitz_zeta_range(k as u32 + 1, &shifted, &mut ctx)?;
        let mut rk = ctx.one();
        for (i, h) in hz.iter().enumerate() {
            rk = &rk * &r;
            total -= h.value.scale(&(&rk * &lam));
            err += g.lambda * libm::pow(rf, (i + 1) as f64) * h.err;
        }
        // Σ_{k>K} λ|r|^k (x^{−k−1} + x^{−k}/k), ratio ρ = |r|/x ≤ 1/2.
        let rho = rf / x;
        err += g.lambda * libm::pow(rho, (k + 1) as f64) / (1.0 - rho) * (1.0 / x + 1.0 / (k as f64 + 1.0));
    }
    let rounding = libm::ldexp(total.abs().to_f64().max(1.0), 8 - bits as i32);
    Ok(Approx::new(total.with_bits(bits), err + rounding))
}

/// `Σ_j λ_j [ψ(λ_j(1−a)+μ_j) − ψ(λ_j+μ_j)]`, the closed form of `C_F(a)`.
pub fn cfa_digamma(d: &LFunctionDescriptor, a: f64, bits: usize) -> Result<Approx<BigComplex>> {
    check_shift(a)?;
    let mut ctx = Ctx::new(bits)?;
    let mut total = ctx.czero();
    let mut err = 0.0;
    for g in &d.gamma_factors {
        let lam = ctx.real(g.lambda);
        let q = BigComplex::new(&lam + &ctx.real(g.mu.0), ctx.real(g.mu.1));
        let shifted = q.add_real(&-(&lam * &ctx.real(a)));
        let p1 = polygamma(0, &shifted, &mut ctx)?;
        let p0 = polygamma(0, &q, &mut ctx)?;
        total += (&p1.value - &p0.value).scale(&lam);
        err += g.lambda * (p1.err + p0.err);
    }
    Ok(Approx::new(total, err))
}

/// `c_F = (d_F/2)(γ − 1) + (1/2) log(λ Q_F²)`, the linear coefficient at `a = 0`.
pub fn c_f_constant(d: &LFunctionDescriptor, bits: usize) -> Result<BigReal> {
    let mut ctx = Ctx::new(bits)?;
    let euler = ctx.euler_gamma();
    let deg_half = ctx.real(d.degree() / 2.0);
    Ok(&deg_half * &(euler - ctx.one()) + half_log_lambda_q2(d, &mut ctx))
}

/// `(1/2) log(Π λ_j^{2λ_j} · Q²) = Σ_j λ_j log λ_j + log Q`.
fn half_log_lambda_q2(d: &LFunctionDescriptor, ctx: &mut Ctx) -> BigReal {
    let mut acc = d.conductor.ln(ctx);
    for g in &d.gamma_factors {
        let lam = ctx.real(g.lambda);
        acc += &lam * &ctx.ln(&lam);
    }
    acc
}

/// `λ_F(n, a)` from the asymptotic law; the error bound is `√n·max(log n, 1)`
/// with unit constant and is always flagged heuristic.
pub fn asymptotic_route(d: &LFunctionDescriptor, p: &LiParams) -> Result<LiResult> {
    p.validate()?;
    let a = p.a;
    if !(a < 0.5) {
        return Err(Error::Domain(format!("the asymptotic law needs a < 1/2 (got {a})")));
    }
    let bits = p.precision.stable_bits(p.n);
    let mut ctx = Ctx::new(bits)?;
    let euler = ctx.euler_gamma();
    let deg = ctx.real(d.degree());
    let c = ctx.one() - ctx.real(2.0 * a);
    let log_c = ctx.ln(&c);
    let nn = ctx.int(p.n as i64);
    let log_n = ctx.ln(&nn);
    let cfa = cfa_constant(d, a, p.k, bits)?;
    let hl = half_log_lambda_q2(d, &mut ctx);

    let leading = &(&c.mul_pow2(-1) * &deg) * &(&nn * &log_n);
    let bracket = &deg.mul_pow2(-1) * &(&(&euler - &ctx.one()) - &log_c) + &hl;
    let stated = BigComplex::from_real(bracket.clone()) + cfa.value.clone();
    let value = &BigComplex::from_real(leading.clone()) + &stated.scale(&(&c * &nn));

    // Linear coefficient from a saddle-point evaluation of the gamma-factor
    // sums, reported next to the stated one.
    let derived = &deg.mul_pow2(-1) * &(&(&euler - &ctx.one()) + &log_c) + &hl;

    let nf = p.n as f64;
    let scale = libm::sqrt(nf) * libm::log(nf).max(1.0);
    let mut r = LiResult {
        n: p.n as i64,
        a,
        value,
        error_bound: scale + cfa.err * (1.0 - 2.0 * a) * nf,
        route: Route::Asymptotic,
        heuristic: true,
        bits,
        diagnostics: Default::default(),
    };
    r.diag("leading_term", leading.to_f64());
    r.diag("linear_coefficient", stated.re.to_f64());
    r.diag("linear_coefficient_derived", derived.to_f64());
    r.diag("cfa", cfa.value.re.to_f64());
    r.diag("cfa_tail", cfa.err);
    Ok(r)
}

/// Residual constants `|r_n|/(√n log n)` of a comparison against the
/// asymptotic law.
#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticFit {
    pub points: Vec<(u64, f64)>,
}

impl AsymptoticFit {
    /// From `(n, residual)` pairs with `n ≥ 2`.
    pub fn new(residuals: &[(u64, f64)]) -> Self {
        AsymptoticFit {
            points: residuals
                .iter()
                .filter(|(n, _)| *n >= 2)
                .map(|&(n, r)| (n, r.abs() / (libm::sqrt(n as f64) * libm::log(n as f64))))
                .collect(),
        }
    }

    pub fn constant_at(&self, n: u64) -> Option<f64> {
        self.points.iter().find(|p| p.0 == n).map(|p| p.1)
    }

    pub fn median(&self) -> f64 {
        let mut c: Vec<f64> = self.points.iter().map(|p| p.1).collect();
        if c.is_empty() {
            return f64::NAN;
        }
        c.sort_by(|x, y| x.total_cmp(y));
        let m = c.len() / 2;
        if c.len() % 2 == 1 { c[m] } else { 0.5 * (c[m - 1] + c[m]) }
    }

    /// Whether the constant fitted at the first point, times `factor`, bounds
    /// every later point.
    pub fn first_bounds_rest(&self, factor: f64) -> bool {
        match self.points.first() {
            Some(&(_, c0)) => self.points.iter().skip(1).all(|p| p.1 <= factor * c0),
            None => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfunc::{builtin_zeta, kronecker_l};

    #[test]
    fn zeta_at_zero_matches_classical_law() {
        let d = builtin_zeta();
        let cf = c_f_constant(&d, 128).unwrap().to_f64();
        assert!((cf + 1.13033).abs() < 1e-5);
        let r = asymptotic_route(&d, &LiParams::new(100, 0.0).unwrap()).unwrap();
        assert!((r.re() - 117.2252).abs() < 1e-3, "{}", r.re());
        // Term by term: (1/2) n log n + c_F n.
        let want = 50.0 * libm::log(100.0) + 100.0 * cf;
        assert!((r.re() - want).abs() < 1e-12);
        assert_eq!(r.diagnostics["cfa"], 0.0);
    }

    #[test]
    fn leading_coefficient() {
        let d = builtin_zeta();
        let r = asymptotic_route(&d, &LiParams::new(1000, -1.0).unwrap()).unwrap();
        assert!((r.diagnostics["leading_term"] - 1.5 * 1000.0 * libm::log(1000.0)).abs() < 1e-9);
    }

    #[test]
    fn cfa_series_matches_digamma() {
        let d = builtin_zeta();
        let s = cfa_constant(&d, -1.0, 64, 128).unwrap();
        let g = cfa_digamma(&d, -1.0, 128).unwrap();
        assert!((s.value.re.to_f64() - core::f64::consts::LN_2).abs() < 1e-15);
        assert!((&s.value - &g.value).abs().to_f64() <= s.err + g.err + 1e-30);
        for a in [-0.3, -2.5, 0.2] {
            let s = cfa_constant(&d, a, 80, 160).unwrap();
            let g = cfa_digamma(&d, a, 160).unwrap();
            assert!((&s.value - &g.value).abs().to_f64() <= s.err + g.err + 1e-35, "a = {a}");
        }
        let odd = kronecker_l(-4).unwrap();
        let s = cfa_constant(&odd, -1.0, 64, 128).unwrap();
        let g = cfa_digamma(&odd, -1.0, 128).unwrap();
        assert!((&s.value - &g.value).abs().to_f64() <= s.err + g.err);
        assert!(s.err < 1e-19);
        assert!(cfa_constant(&d, -1.0, 1, 128).is_err());
    }

    #[test]
    fn cfa_linear_near_zero() {
        let d = builtin_zeta();
        let c1 = cfa_constant(&d, -1e-4, 16, 128).unwrap().value.re.to_f64();
        let c2 = cfa_constant(&d, -2e-4, 16, 128).unwrap().value.re.to_f64();
        assert!((c2 / c1 - 2.0).abs() < 1e-3);
        // Slope −λ² ζ(2, 1/2) = −π²/8.
        assert!((c1 / -1e-4 + core::f64::consts::PI * core::f64::consts::PI / 8.0).abs() < 1e-3);
    }

    #[test]
    fn fit_helpers() {
        let f = AsymptoticFit::new(&[(100, 46.05), (200, 150.0), (400, -100.0)]);
        assert!((f.constant_at(100).unwrap() - 1.0).abs() < 1e-3);
        assert!(f.first_bounds_rest(4.0));
        assert!(!f.first_bounds_rest(1.0));
        assert!(f.median() > 0.9);
    }
}
