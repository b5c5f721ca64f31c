//! Pairwise agreement of every applicable route for `n = 1, …, p.n`.

use alloc::format;
use alloc::vec::Vec;

use super::{
    arithmetic_series, asymptotic_route, chebyshev_series, classical_series, zero_sum_series, ArithmeticOptions, LiParams,
    LiResult, Route,
};
use crate::error::{Error, Result};
use crate::lfunc::LFunctionDescriptor;
use crate::par::Parallel;
use crate::zeros::ZeroSet;

/// Route selection for [`cross_validate`].
#[derive(Clone, Debug, PartialEq)]
pub struct CrossOptions {
    pub arithmetic: ArithmeticOptions,
    /// Gate the asymptotic law as well. Its bound is a growth estimate, not an
    /// accuracy bound, so by default it is only reported.
    pub gate_asymptotic: bool,
    /// Residuals may reach `safety × (sum of bounds)`.
    pub safety: f64,
}

impl Default for CrossOptions {
    fn default() -> Self {
        CrossOptions { arithmetic: ArithmeticOptions::default(), gate_asymptotic: false, safety: 2.0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairResidual {
    pub first: Route,
    pub second: Route,
    pub residual: f64,
    pub allowed: f64,
    pub pass: bool,
}

/// Results and pair residuals at one `n`.
#[derive(Clone, Debug)]
pub struct CrossRow {
    pub n: u64,
    pub results: Vec<LiResult>,
    pub pairs: Vec<PairResidual>,
    /// Present when the asymptotic law is reported but not gated.
    pub asymptotic: Option<LiResult>,
}

#[derive(Clone, Debug)]
pub struct CrossReport {
    pub a: f64,
    pub routes: Vec<Route>,
    pub rows: Vec<CrossRow>,
}

impl CrossReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pairs.iter().all(|p| p.pass))
    }

    /// Failing pairs with their `n`.
    pub fn failures(&self) -> Vec<(u64, &PairResidual)> {
        self.rows
            .iter()
            .flat_map(|r| r.pairs.iter().filter(|p| !p.pass).map(move |p| (r.n, p)))
            .collect()
    }

    /// Largest `residual / allowed` over all pairs.
    pub fn worst_ratio(&self) -> f64 {
        self.rows
            .iter()
            .flat_map(|r| r.pairs.iter())
            .map(|p| if p.allowed > 0.0 { p.residual / p.allowed } else { f64::INFINITY })
            .fold(0.0, f64::max)
    }
}

/// Runs every route that applies at `(p.n, p.a)` and compares all pairs.
///
/// Zero routes need `z` and a self-conjugate `d`; Chebyshev additionally needs
/// all zeros on the line. The arithmetic route covers `a < 0`, the classical
/// one `a = 0`. Fewer than two applicable routes is a precondition error.
pub fn cross_validate<P: Parallel>(
    d: &LFunctionDescriptor,
    z: Option<&ZeroSet>,
    p: &LiParams,
    opts: &CrossOptions,
    par: &P,
) -> Result<CrossReport> {
    p.validate()?;
    let mut series: Vec<Vec<LiResult>> = Vec::new();
    if let Some(z) = z.filter(|_| d.is_self_conjugate()) {
        series.push(zero_sum_series(d, z, p, par)?);
        if z.offline().is_empty() {
            series.push(chebyshev_series(d, z, p, par)?);
        }
    }
    if p.a < 0.0 {
        series.push(arithmetic_series(d, p, &opts.arithmetic, par)?);
    } else if p.a == 0.0 {
        series.push(classical_series(d, p, par)?);
    }
    let asym_ok = p.a < 0.5;
    let gated = series.len() + usize::from(opts.gate_asymptotic && asym_ok);
    if gated < 2 {
        return Err(Error::Precondition(format!(
            "only {gated} route applies at a = {}; supply zeros or choose a ≤ 0",
            p.a
        )));
    }
    let routes: Vec<Route> = series.iter().map(|s| s[0].route).collect();
    let mut rows = Vec::with_capacity(p.n as usize);
    for n in 1..=p.n {
        let mut results: Vec<LiResult> = series.iter().map(|s| s[n as usize - 1].clone()).collect();
        let asym = if asym_ok { Some(asymptotic_route(d, &p.clone().with_n(n))?) } else { None };
        let mut asymptotic = None;
        match asym {
            Some(r) if opts.gate_asymptotic => results.push(r),
            other => asymptotic = other,
        }
        let mut pairs = Vec::new();
        for i in 0..results.len() {
            for j in i + 1..results.len() {
                let (x, y) = (&results[i], &results[j]);
                let residual = (&x.value - &y.value).abs().to_f64();
                let allowed = opts.safety * (x.error_bound + y.error_bound);
                pairs.push(PairResidual { first: x.route, second: y.route, residual, allowed, pass: residual <= allowed });
            }
        }
        rows.push(CrossRow { n, results, pairs, asymptotic });
    }
    let mut routes = routes;
    if opts.gate_asymptotic && asym_ok {
        routes.push(Route::Asymptotic);
    }
    Ok(CrossReport { a: p.a, routes, rows })
}
