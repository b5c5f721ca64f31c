//! The modified Li coefficients `λ_F(n, a)` by several independent routes.
//!
//! * [`zero_sum_route`] and [`chebyshev_route`] sum over a [`ZeroSet`](crate::zeros::ZeroSet).
//! * [`arithmetic_route`] (`a < 0`) and [`classical_route`] (`a = 0`) use the
//!   explicit formulas in terms of `Λ_F`, `log Q_F` and polygamma values.
//! * [`asymptotic_route`] evaluates the large-`n` law.
//!
//! Every result carries an error bound; bounds that rest on heuristics rather
//! than majorants are flagged.

mod arith;
mod asymp;
mod classical;
mod cross;
mod testfn;
mod zero_sum;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;

pub use arith::{arithmetic_route, arithmetic_series, ArithmeticOptions, TailMode};
pub use asymp::{asymptotic_route, c_f_constant, cfa_constant, cfa_digamma, AsymptoticFit};
pub use classical::{classical_route, classical_series};
pub use cross::{cross_validate, CrossOptions, CrossReport, CrossRow, PairResidual};
pub use testfn::{test_function_check, test_function_check_bits, TestFunctionCheck};
pub use zero_sum::{
    chebyshev_route, chebyshev_series, lambda_one_reduction, tail_correction, tail_estimate, theta_angle, theta_angle_big,
    zero_sum_route, zero_sum_series, zero_sum_signed,
};

use crate::error::{Error, Result};
use crate::numerics::{BigComplex, PrecisionPolicy};

/// Which evaluation produced a [`LiResult`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Route {
    ZeroSum,
    Chebyshev,
    Arithmetic,
    Classical,
    Asymptotic,
}

impl Route {
    pub fn name(&self) -> &'static str {
        match self {
            Route::ZeroSum => "zero-sum",
            Route::Chebyshev => "chebyshev",
            Route::Arithmetic => "arithmetic",
            Route::Classical => "classical",
            Route::Asymptotic => "asymptotic",
        }
    }

    pub fn parse(s: &str) -> Option<Route> {
        Some(match s {
            "zero-sum" | "zero_sum" => Route::ZeroSum,
            "chebyshev" => Route::Chebyshev,
            "arithmetic" => Route::Arithmetic,
            "classical" => Route::Classical,
            "asymptotic" => Route::Asymptotic,
            _ => return None,
        })
    }
}

/// Inputs shared by the routes.
#[derive(Clone, Debug, PartialEq)]
pub struct LiParams {
    pub n: u64,
    pub a: f64,
    pub precision: PrecisionPolicy,
    /// Zero height; `None` uses the completeness height of the zero set.
    pub t: Option<f64>,
    /// Dirichlet-series cutoff for the arithmetic route.
    pub m: u64,
    /// Cutoff of the classical route (base of the `X, 2X, 4X` ladder).
    pub x: u64,
    /// Number of series terms for `C_F(a)`.
    pub k: usize,
}

impl LiParams {
    pub fn new(n: u64, a: f64) -> Result<Self> {
        let p = LiParams { n, a, precision: PrecisionPolicy::default(), t: None, m: 10_000_000, x: 1_000_000, k: 64 };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Domain("the coefficient index n must be at least 1".into()));
        }
        check_shift(self.a)
    }

    pub fn with_m(mut self, m: u64) -> Self {
        self.m = m;
        self
    }

    pub fn with_x(mut self, x: u64) -> Self {
        self.x = x;
        self
    }

    pub fn with_t(mut self, t: f64) -> Self {
        self.t = Some(t);
        self
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    pub fn with_precision(mut self, p: PrecisionPolicy) -> Self {
        self.precision = p;
        self
    }

    pub fn with_n(mut self, n: u64) -> Self {
        self.n = n;
        self
    }
}

pub(crate) fn check_shift(a: f64) -> Result<()> {
    if !a.is_finite() {
        return Err(Error::Domain(format!("shift a = {a} must be finite")));
    }
    if a == 0.5 {
        return Err(Error::Domain("the shift a must differ from 1/2".into()));
    }
    Ok(())
}

/// One value `λ_F(n, a)`.
#[derive(Clone, Debug)]
pub struct LiResult {
    /// Signed index; negative values come from `λ_F(−n, a)`.
    pub n: i64,
    pub a: f64,
    pub value: BigComplex,
    pub error_bound: f64,
    pub route: Route,
    /// Set when `error_bound` is an estimate rather than a proven bound.
    pub heuristic: bool,
    pub bits: usize,
    pub diagnostics: BTreeMap<String, f64>,
}

impl LiResult {
    pub fn re(&self) -> f64 {
        self.value.re.to_f64()
    }

    pub fn im(&self) -> f64 {
        self.value.im.to_f64()
    }

    pub(crate) fn diag(&mut self, key: &str, v: f64) {
        self.diagnostics.insert(key.into(), v);
    }
}
