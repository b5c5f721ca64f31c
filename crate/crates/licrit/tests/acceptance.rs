//! Acceptance runs at desk scale. Each test prints one `PASS`/`FAIL` line
//! straight to stdout so the verdicts show up without `--nocapture`.

use std::f64::consts::PI;
use std::io::Write;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use licrit::threads::Threads;
use licrit_core::criterion::{verdict, Overall};
use licrit_core::lfunc::{builtin_zeta, kronecker_l, LFunctionDescriptor};
use licrit_core::licoeff::{
    arithmetic_series, asymptotic_route, c_f_constant, cfa_constant, classical_route, test_function_check_bits,
    zero_sum_route, zero_sum_series, zero_sum_signed, ArithmeticOptions, AsymptoticFit, LiParams, LiResult,
};
use licrit_core::numerics::{chebyshev, hurwitz_zeta, polygamma, ChebyshevKind, Ctx, PrecisionPolicy};
use licrit_core::zeros::{count_estimate, find_zeros, hardy_z, FindOptions, ZeroSet};
use rand::{Rng, SeedableRng};

const EULER: f64 = 0.577_215_664_901_532_9;
const TEN_MINUTES: Duration = Duration::from_secs(600);

fn report(pass: bool, title: &str, detail: &str) {
    let line = format!("{} {title}: {detail}\n", if pass { "PASS" } else { "FAIL" });
    let mut out = std::io::stdout().lock();
    out.write_all(line.as_bytes()).unwrap();
    out.flush().unwrap();
}

fn ldexp(x: f64, e: i32) -> f64 {
    x * 2f64.powi(e)
}

fn par() -> Threads {
    Threads::available()
}

/// The first 10⁴ zeros of ζ, located once per test binary.
fn zeros() -> &'static ZeroSet {
    static Z: OnceLock<ZeroSet> = OnceLock::new();
    Z.get_or_init(|| {
        let found = find_zeros(9878.0, &FindOptions { tol: 1e-9, ..Default::default() }, &par()).unwrap();
        assert_eq!(found.zeros.count(), 10_000, "{:?}", found.warnings);
        found.zeros
    })
}

#[test]
fn cross_route_agreement() {
    let start = Instant::now();
    let d = builtin_zeta();
    let z = zeros();
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    for a in [-1.0, -0.25] {
        let p = LiParams::new(30, a).unwrap().with_m(1_000_000);
        let zs = zero_sum_series(&d, z, &p, &par()).unwrap();
        let ar = arithmetic_series(&d, &p, &ArithmeticOptions::default(), &par()).unwrap();
        for (x, y) in zs.iter().zip(&ar) {
            let residual = (x.re() - y.re()).abs();
            let allowed = 2.0 * (x.error_bound + y.error_bound);
            worst = worst.max(residual / allowed);
            if residual > allowed {
                failures.push((a, x.n, residual, allowed));
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed < TEN_MINUTES;
    report(
        pass,
        "cross-route agreement (zeta, a ∈ {-1, -1/4}, n ≤ 30, 10⁴ zeros, M = 10⁶)",
        &format!("worst residual/allowed {worst:.3}, {} failures, {:.1?}", failures.len(), elapsed),
    );
    assert!(failures.is_empty(), "{failures:?}");
    assert!(elapsed < TEN_MINUTES);
}

#[test]
fn classical_anchor() {
    let want = 1.0 + EULER / 2.0 - 0.5 * (4.0 * PI).ln();
    let d = builtin_zeta();
    let cl = classical_route(&d, &LiParams::new(1, 0.0).unwrap().with_x(1_000_000), &par()).unwrap();
    let zs = zero_sum_route(&d, zeros(), &LiParams::new(1, 0.0).unwrap(), &par()).unwrap();
    let (dc, dz) = ((cl.re() - want).abs(), (zs.re() - want).abs());
    let pass = dc <= 5e-3 && dz <= 1e-3;
    report(
        pass,
        "classical anchor λ(1) = 1 + γ/2 − ½log 4π",
        &format!("closed {want:.7}, classical {:.7} (off {dc:.1e}), zero sum {:.7} (off {dz:.1e})", cl.re(), zs.re()),
    );
    assert!((want - 0.0230957).abs() < 1e-7);
    assert!(dc <= 5e-3 && dz <= 1e-3);
}

fn consistent(v: &[LiResult], a: f64) -> bool {
    verdict(v, a).unwrap().overall == Overall::ConsistentUpTo(v.len() as u64)
}

#[test]
fn positivity() {
    let d = builtin_zeta();
    let mut detail = Vec::new();
    let mut pass = true;
    for a in [-1.0, 0.0] {
        let p = LiParams::new(50, a).unwrap();
        let v = zero_sum_series(&d, zeros(), &p, &par()).unwrap();
        let ok = v.iter().all(|r| r.re() - r.error_bound > 0.0) && consistent(&v, a);
        detail.push(format!("zero sum a = {a}: {}", if ok { "all positive" } else { "not resolved" }));
        pass &= ok;
    }
    let p = LiParams::new(50, -1.0).unwrap().with_m(1_000_000);
    let v = arithmetic_series(&d, &p, &ArithmeticOptions::default(), &par()).unwrap();
    let ok = v.iter().all(|r| r.re() - r.error_bound > 0.0) && consistent(&v, -1.0);
    detail.push(format!("arithmetic a = -1: {}", if ok { "all positive" } else { "not resolved" }));
    pass &= ok;
    report(pass, "positivity Re λ(n, a) − bound > 0 for n ≤ 50", &detail.join(", "));
    assert!(pass);
}

#[test]
fn asymptotic_law() {
    // Sub-checks: a constant fitted at n = 100 bounds n = 200 and 400 within a
    // factor 4, the width at n = 400 is at least 1100 bits, and the run fits
    // in ten minutes; these are asserted. The remaining sub-check asks the
    // ratio to (3/2) n log n to be within 5% of 1 at n = 400. That ratio is
    // 1 + 2c/log n + O(n^{-1/2}) with c ≈ −0.58, about 0.81 at n = 400, so the
    // line reports the measured value and FAIL, and the test does not assert it.
    let start = Instant::now();
    let d = builtin_zeta();
    let p = LiParams::new(400, -1.0).unwrap().with_m(1_000_000);
    let ar = arithmetic_series(&d, &p, &ArithmeticOptions::default(), &par()).unwrap();
    let mut residuals = Vec::new();
    for n in [100u64, 200, 400] {
        let y = &ar[n as usize - 1];
        let x = asymptotic_route(&d, &p.clone().with_n(n)).unwrap();
        residuals.push((n, y.re() - x.re()));
    }
    let fit = AsymptoticFit::new(&residuals);
    let fit_ok = fit.first_bounds_rest(4.0);
    let bits = ar[399].bits;
    let n = 400.0f64;
    let ratio = ar[399].re() / (1.5 * n * n.ln());
    let ratio_ok = (ratio - 1.0).abs() <= 0.05;
    let elapsed = start.elapsed();
    let c: Vec<String> = fit.points.iter().map(|(n, c)| format!("C({n}) = {c:.3}")).collect();
    report(
        fit_ok && ratio_ok && bits >= 1100 && elapsed < TEN_MINUTES,
        "asymptotic law at a = -1, n ∈ {100, 200, 400}",
        &format!(
            "{}; C-fit within factor 4: {}; leading ratio at n = 400: {ratio:.4} (target within 5%: {}); {bits} bits; {:.1?}",
            c.join(", "),
            if fit_ok { "yes" } else { "no" },
            if ratio_ok { "yes" } else { "no" },
            elapsed
        ),
    );
    assert!(fit_ok, "{fit:?}");
    assert!(bits >= 1100);
    assert!(elapsed < TEN_MINUTES);
    assert!(ratio > 0.75 && ratio < 1.0, "ratio {ratio}");
}

/// Sign-change bisection on the big-float `Z` between 14 and 14.3.
fn first_zero_by_bisection() -> f64 {
    let (mut lo, mut hi) = (14.0, 14.3);
    let mut zlo = hardy_z(lo, 1e-15).unwrap();
    assert!(zlo * hardy_z(hi, 1e-15).unwrap() < 0.0);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        let zm = hardy_z(mid, 1e-15).unwrap();
        if zm * zlo > 0.0 {
            lo = mid;
            zlo = zm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn zero_count_law() {
    let d = builtin_zeta();
    let mut pass = true;
    let mut detail = Vec::new();
    let mut first = f64::NAN;
    for t in [50.0f64, 100.0, 200.0] {
        let found = find_zeros(t, &FindOptions::default(), &par()).unwrap();
        let count = found.zeros.count() as f64;
        let est = count_estimate(&d, t).unwrap();
        let ok = (count - est).abs() <= 2.0 + t.ln();
        pass &= ok;
        detail.push(format!("T = {t}: {count} vs {est:.2}"));
        first = found.zeros.online()[0].gamma;
    }
    let oracle = first_zero_by_bisection();
    let first_ok = (first - oracle).abs() <= 1e-6;
    pass &= first_ok;
    detail.push(format!("γ₁ = {first:.10} vs bisection {oracle:.10}"));
    report(pass, "zero-count law |N(T) − estimate| ≤ 2 + log T", &detail.join(", "));
    assert!(pass);
}

#[test]
fn violation_signature() {
    let d = builtin_zeta();
    let clean = zeros();
    let dirty = clean.inject_zero(0.8, 14.0).unwrap();
    let p = LiParams::new(2000, 0.0).unwrap();
    let rc = verdict(&zero_sum_series(&d, clean, &p, &par()).unwrap(), 0.0).unwrap();
    let rd = verdict(&zero_sum_series(&d, &dirty, &p, &par()).unwrap(), 0.0).unwrap();
    let (gc, gd) = (rc.growth.as_ref().unwrap(), rd.growth.as_ref().unwrap());
    let clean_positive = rc.overall == Overall::ConsistentUpTo(2000);
    let pass = gd.flagged && !gc.flagged && clean_positive;
    // |w| for the injected pair, |(ρ−a)/(ρ+a−1)| at ρ = 0.8 + 14i, a = 0.
    let w = ((0.8f64 * 0.8 + 196.0) / (0.2f64 * 0.2 + 196.0)).sqrt();
    report(
        pass,
        "violation signature with an injected pair 0.8 + 14i, a = 0, n ≤ 2000",
        &format!(
            "injected rate {:.5} flagged {} (|w| = {w:.5}), clean rate {:.5} flagged {}, clean all positive {}",
            gd.rate, gd.flagged, gc.rate, gc.flagged, clean_positive
        ),
    );
    assert!(pass, "{gd:?} {gc:?} {:?}", rc.overall);
}

/// Reported value at the default width and at twice that width.
struct Suite {
    name: &'static str,
    ok: bool,
    stable: bool,
    worst: f64,
}

fn widths() -> [usize; 2] {
    let p = PrecisionPolicy::default();
    [p.bits(0, 0.0), p.doubled().bits(0, 0.0)]
}

fn polygamma_suite() -> Suite {
    let mut ok = true;
    let mut stable = true;
    let mut worst: f64 = 0.0;
    let points = [(0.5, 0.0), (1.0, 0.0), (2.25, 0.0), (3.0, 4.0), (10.5, 0.5), (0.1, -2.0)];
    for m in 1..=6u32 {
        let mut fact = 1.0;
        for k in 1..=m {
            fact *= k as f64;
        }
        for &(re, im) in &points {
            let mut reported = Vec::new();
            for bits in widths() {
                let mut ctx = Ctx::new(bits).unwrap();
                let z = ctx.complex(re, im);
                let psi = polygamma(m, &z, &mut ctx).unwrap();
                let hz = hurwitz_zeta(m + 1, &z, &mut ctx).unwrap();
                let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
                let rhs = hz.value.scale(&ctx.real(sign * fact));
                let diff = (&psi.value - &rhs).abs().to_f64();
                let scale = psi.value.abs().to_f64().max(1.0);
                let tol = psi.err + fact * hz.err + ldexp(scale, 40 - bits as i32);
                worst = worst.max(diff / tol);
                ok &= diff <= tol;
                reported.push(psi.value.to_f64());
            }
            stable &= reported[0] == reported[1];
        }
    }
    Suite { name: "polygamma–Hurwitz", ok, stable, worst }
}

fn modulus_suite() -> Suite {
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x11_c0ef);
    let mut ok = true;
    let mut stable = true;
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let beta: f64 = rng.random_range(0.01..0.99);
        let gamma: f64 = rng.random_range(0.1..1000.0);
        let a: f64 = rng.random_range(-5.0..0.49);
        let mut reported = Vec::new();
        for bits in widths() {
            let ctx = Ctx::new(bits).unwrap();
            let rho = ctx.complex(beta, gamma);
            let ra = ctx.complex(a, 0.0);
            let den = &(&rho + &ra) - &ctx.cone();
            let w = &(&rho - &ra) / &den;
            let lhs = w.norm_sqr();
            let rhs = ctx.one() + &(&(ctx.one() - ctx.real(2.0 * a)) * &(ctx.real(2.0 * beta) - ctx.one())) / &den.norm_sqr();
            let diff = (&lhs - &rhs).abs().to_f64();
            let tol = ldexp(lhs.to_f64().max(1.0), 32 - bits as i32);
            worst = worst.max(diff / tol);
            ok &= diff <= tol;
            reported.push(lhs.to_f64());
        }
        stable &= reported[0] == reported[1];
    }
    Suite { name: "modulus identity (10⁴ random ρ, a)", ok, stable, worst }
}

fn chebyshev_suite() -> Suite {
    let mut ok = true;
    let mut stable = true;
    let mut worst: f64 = 0.0;
    for n in [0u64, 1, 2, 3, 10, 100, 1000] {
        for phi in [0.1, 1.0, 2.5, 3.0] {
            let mut reported = Vec::new();
            for bits in widths() {
                let mut ctx = Ctx::new(bits).unwrap();
                let f = ctx.real(phi);
                let x = ctx.cos(&f);
                let t = chebyshev(ChebyshevKind::First, n, &x);
                let want = ctx.cos(&(&f * &ctx.int(n as i64)));
                let diff = (&t - &want).abs().to_f64();
                let tol = ldexp(((n + 1) * (n + 1)) as f64, 20 - bits as i32);
                worst = worst.max(diff / tol);
                ok &= diff <= tol;
                reported.push(t.to_f64());
            }
            stable &= reported[0] == reported[1];
        }
    }
    Suite { name: "T_n(cos φ) = cos nφ", ok, stable, worst }
}

fn conjugation_suite() -> Suite {
    let z = zeros().first(100).inject_zero(0.8, 14.0).unwrap();
    let mut ok = true;
    let mut stable = true;
    let mut worst: f64 = 0.0;
    for a in [-1.0, 0.0, 0.25, 0.7] {
        for n in 1..=20i64 {
            let mut reported = Vec::new();
            for bits in widths() {
                let plus = zero_sum_signed(&z, n, a, bits).unwrap();
                let minus = zero_sum_signed(&z, -n, a, bits).unwrap();
                let diff = (&plus.conj() - &minus).abs().to_f64();
                let tol = ldexp(plus.abs().to_f64().max(1.0), 40 - bits as i32);
                worst = worst.max(diff / tol);
                ok &= diff <= tol;
                reported.push(plus.to_f64());
            }
            stable &= reported[0] == reported[1];
        }
    }
    Suite { name: "λ(−n, a) = conj λ(n, a)", ok, stable, worst }
}

fn test_function_suite() -> Suite {
    let mut ok = true;
    let mut stable = true;
    let mut worst: f64 = 0.0;
    for n in 1..=5u64 {
        for a in [-1.0, 0.0, 0.25] {
            for s in [1.0, 2.5] {
                let base = 128 + 2 * n as usize;
                let mut reported = Vec::new();
                for bits in [base, 2 * base] {
                    let c = test_function_check_bits(n, a, s, 1e-8, bits).unwrap();
                    let diff = (c.numeric - c.closed_form).abs();
                    worst = worst.max(diff / 1e-8);
                    ok &= c.agree && diff <= 1e-8;
                    reported.push(c.numeric);
                }
                stable &= reported[0] == reported[1];
            }
        }
    }
    Suite { name: "test-function transform (n ≤ 5, tol 1e-8)", ok, stable, worst }
}

#[test]
fn identity_suites() {
    let suites =
        [polygamma_suite(), modulus_suite(), chebyshev_suite(), conjugation_suite(), test_function_suite()];
    let pass = suites.iter().all(|s| s.ok && s.stable);
    let detail: Vec<String> = suites
        .iter()
        .map(|s| {
            format!(
                "{} {} (worst {:.2e} of tolerance{})",
                s.name,
                if s.ok { "ok" } else { "broken" },
                s.worst,
                if s.stable { "" } else { ", digits change when doubled" }
            )
        })
        .collect();
    report(pass, "identity suites at default and doubled precision", &detail.join("; "));
    for s in &suites {
        assert!(s.ok && s.stable, "{}", s.name);
    }
}

/// `(d/2) n log n + n [(d/2)(γ − 1) + Σ λ_j log λ_j + log Q]` from f64 inputs.
fn classical_law(d: &LFunctionDescriptor, n: u64) -> f64 {
    let deg: f64 = d.gamma_factors.iter().map(|g| 2.0 * g.lambda).sum();
    let hl: f64 = d.gamma_factors.iter().map(|g| g.lambda * g.lambda.ln()).sum::<f64>() + d.conductor.value().ln();
    let nf = n as f64;
    deg / 2.0 * nf * nf.ln() + nf * (deg / 2.0 * (EULER - 1.0) + hl)
}

#[test]
fn collapse_at_zero() {
    let mut pass = true;
    let mut detail = Vec::new();
    let c_zeta = c_f_constant(&builtin_zeta(), 256).unwrap().to_f64();
    let c_plug = 0.5 * (EULER - 1.0) + 0.5 * (0.5f64 / PI).ln();
    pass &= (c_zeta - c_plug).abs() < 1e-14 && (c_zeta + 1.13033).abs() < 5e-6;
    detail.push(format!("c_F(zeta) = {c_zeta:.6}"));
    for d in [builtin_zeta(), kronecker_l(-4).unwrap(), kronecker_l(5).unwrap()] {
        let cfa = cfa_constant(&d, 0.0, 64, 256).unwrap();
        let c_f = c_f_constant(&d, 256).unwrap().to_f64();
        let cfa0 = cfa.value.abs().to_f64();
        if cfa0 != 0.0 {
            detail.push(format!("{}: C_F(0) = {cfa0:e}", d.name));
        }
        pass &= cfa0 == 0.0;
        for n in [1u64, 10, 100, 1000] {
            let r = asymptotic_route(&d, &LiParams::new(n, 0.0).unwrap()).unwrap();
            let want = classical_law(&d, n);
            let lin = r.diagnostics["linear_coefficient"];
            let ok = lin == c_f
                && (r.re() - want).abs() <= 1e-12 * want.abs().max(1.0)
                && r.im() == 0.0;
            if !ok {
                detail.push(format!("{} n = {n}: linear {lin:e} vs {c_f:e}, value {} vs {want}, im {}", d.name, r.re(), r.im()));
            }
            pass &= ok;
        }
        detail.push(format!("{}: c_F = {c_f:.6}", d.name));
    }
    report(pass, "a = 0 collapse of the asymptotic law to (d/2) n log n + c_F n", &detail.join(", "));
    assert!(pass);
}
