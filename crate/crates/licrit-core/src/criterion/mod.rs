//! Verdicts on coefficient sequences: the sign test, the growth signature of
//! zeros off the line, and the monotonicity record.
//!
//! For `a < 1/2` all zeros lie on `Re s = 1/2` exactly when `Re λ_F(n, a) ≥ 0`
//! for every `n`. A verdict is only as strong as the error bounds behind it,
//! so each `n` gets one of three outcomes.

mod growth;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

pub use growth::{growth_detector, Growth};

use crate::error::{Error, Result};
use crate::licoeff::LiResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `Re λ − error_bound > 0`.
    Positive,
    /// `Re λ + error_bound < 0`.
    Negative,
    Indeterminate,
}

impl Verdict {
    pub fn of(re: f64, bound: f64) -> Verdict {
        if re - bound > 0.0 {
            Verdict::Positive
        } else if re + bound < 0.0 {
            Verdict::Negative
        } else {
            Verdict::Indeterminate
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Positive => "positive",
            Verdict::Negative => "negative",
            Verdict::Indeterminate => "indeterminate",
        }
    }
}

/// Which sign the hypothesis predicts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Semantics {
    /// `Re λ ≥ 0`, for `a < 1/2`.
    Nonnegative,
    /// `Re λ ≤ 0`, the stated form for `a > 1/2`.
    Nonpositive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Overall {
    /// Every `n ≤ N` has the predicted sign.
    ConsistentUpTo(u64),
    /// First `n` with the opposite sign.
    ViolationWitness(u64),
    /// No violation, but the sign at `first_indeterminate` is not resolved.
    Inconclusive { first_indeterminate: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Record {
    pub n: i64,
    pub re: f64,
    pub error_bound: f64,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionReport {
    pub a: f64,
    pub semantics: Semantics,
    pub records: Vec<Record>,
    pub overall: Overall,
    /// Present when the sequence is long enough for the detector.
    pub growth: Option<Growth>,
    pub warnings: Vec<String>,
}

/// Warning attached to every report with `a > 1/2`.
pub const NONPOSITIVE_WARNING: &str = "a > 1/2: the report applies the stated Re λ ≤ 0 form, but zeros on the line \
contribute 2(1 − cos nθ) ≥ 0 for every a ≠ 1/2, so a zero-free violation of that form is expected";

/// Sign verdicts for `values`, which must be `λ(1, a), λ(2, a), …` in order.
pub fn verdict(values: &[LiResult], a: f64) -> Result<CriterionReport> {
    if a == 0.5 || !a.is_finite() {
        return Err(Error::Domain(format!("the criterion needs a ≠ 1/2 (got {a})")));
    }
    if values.is_empty() {
        return Err(Error::Domain("no coefficients to judge".into()));
    }
    for (i, v) in values.iter().enumerate() {
        if v.n != i as i64 + 1 {
            return Err(Error::Precondition(format!("values must run over n = 1, 2, …; position {i} holds n = {}", v.n)));
        }
        if v.a != a {
            return Err(Error::Precondition(format!("value at n = {} was computed at a = {}, not {a}", v.n, v.a)));
        }
    }
    let semantics = if a < 0.5 { Semantics::Nonnegative } else { Semantics::Nonpositive };
    let (good, bad) = match semantics {
        Semantics::Nonnegative => (Verdict::Positive, Verdict::Negative),
        Semantics::Nonpositive => (Verdict::Negative, Verdict::Positive),
    };
    let records: Vec<Record> = values
        .iter()
        .map(|v| {
            let re = v.re();
            Record { n: v.n, re, error_bound: v.error_bound, verdict: Verdict::of(re, v.error_bound) }
        })
        .collect();
    let overall = if let Some(r) = records.iter().find(|r| r.verdict == bad) {
        Overall::ViolationWitness(r.n as u64)
    } else if let Some(r) = records.iter().find(|r| r.verdict != good) {
        Overall::Inconclusive { first_indeterminate: r.n as u64 }
    } else {
        Overall::ConsistentUpTo(records.len() as u64)
    };
    let growth = if values.len() >= growth::MIN_VALUES { Some(growth_detector(values)?) } else { None };
    let mut warnings = Vec::new();
    if semantics == Semantics::Nonpositive {
        warnings.push(NONPOSITIVE_WARNING.into());
    }
    if values.iter().any(|v| v.heuristic) {
        warnings.push("some error bounds are estimates, not proven bounds".into());
    }
    Ok(CriterionReport { a, semantics, records, overall, growth, warnings })
}

/// Longest strictly increasing prefix of `Re λ_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Monotonicity {
    /// Last `n` of the increasing prefix.
    pub increasing_up_to: u64,
    pub first_descent: Option<u64>,
}

pub fn monotonicity_report(values: &[f64]) -> Result<Monotonicity> {
    if values.len() < 2 {
        return Err(Error::Domain("monotonicity needs at least two values".into()));
    }
    let descent = values.windows(2).position(|w| !(w[1] > w[0]));
    Ok(match descent {
        Some(i) => Monotonicity { increasing_up_to: i as u64 + 1, first_descent: Some(i as u64 + 2) },
        None => Monotonicity { increasing_up_to: values.len() as u64, first_descent: None },
    })
}
