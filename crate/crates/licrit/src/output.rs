//! CSV and JSON emission.
//!
//! Coefficient rows use the fixed header `n,a,route,value_re,value_im,error_bound`.
//! JSON documents mirror the library structs field for field.

use std::collections::BTreeMap;

use licrit_core::criterion::{CriterionReport, Growth, Overall, Semantics};
use licrit_core::licoeff::{CrossReport, LiResult};
use serde::Serialize;

pub const CSV_HEADER: [&str; 6] = ["n", "a", "route", "value_re", "value_im", "error_bound"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, Serialize)]
pub struct LiResultJson {
    pub n: i64,
    pub a: f64,
    pub route: &'static str,
    pub value_re: f64,
    pub value_im: f64,
    pub error_bound: f64,
    pub heuristic: bool,
    pub bits: usize,
    pub diagnostics: BTreeMap<String, f64>,
}

impl From<&LiResult> for LiResultJson {
    fn from(r: &LiResult) -> Self {
        LiResultJson {
            n: r.n,
            a: r.a,
            route: r.route.name(),
            value_re: r.re(),
            value_im: r.im(),
            error_bound: r.error_bound,
            heuristic: r.heuristic,
            bits: r.bits,
            diagnostics: r.diagnostics.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }
}

pub fn results_csv(results: &[LiResult]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in results {
        w.write_record([
            r.n.to_string(),
            r.a.to_string(),
            r.route.name().to_string(),
            r.re().to_string(),
            r.im().to_string(),
            r.error_bound.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

pub fn results_json(results: &[LiResult]) -> String {
    let rows: Vec<LiResultJson> = results.iter().map(LiResultJson::from).collect();
    to_json(&rows)
}

pub fn results(results: &[LiResult], fmt: Format) -> String {
    match fmt {
        Format::Csv => results_csv(results),
        Format::Json => results_json(results),
    }
}

pub fn to_json<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthJson {
    pub rate: f64,
    pub slope: f64,
    pub stderr: f64,
    pub flagged: bool,
    pub n_from: u64,
    pub n_to: u64,
    pub windows: usize,
    pub note: String,
}

impl From<&Growth> for GrowthJson {
    fn from(g: &Growth) -> Self {
        GrowthJson {
            rate: g.rate,
            slope: g.slope,
            stderr: g.stderr,
            flagged: g.flagged,
            n_from: g.n_from,
            n_to: g.n_to,
            windows: g.windows,
            note: g.note.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RecordJson {
    pub n: i64,
    pub re: f64,
    pub error_bound: f64,
    pub verdict: &'static str,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OverallJson {
    ConsistentUpTo { n: u64 },
    ViolationWitness { n: u64 },
    Inconclusive { first_indeterminate: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReportJson {
    pub a: f64,
    pub semantics: &'static str,
    pub records: Vec<RecordJson>,
    pub overall: OverallJson,
    pub growth: Option<GrowthJson>,
    pub warnings: Vec<String>,
}

impl From<&CriterionReport> for CriterionReportJson {
    fn from(r: &CriterionReport) -> Self {
        CriterionReportJson {
            a: r.a,
            semantics: match r.semantics {
                Semantics::Nonnegative => "nonnegative",
                Semantics::Nonpositive => "nonpositive",
            },
            records: r
                .records
                .iter()
                .map(|x| RecordJson { n: x.n, re: x.re, error_bound: x.error_bound, verdict: x.verdict.name() })
                .collect(),
            overall: match r.overall {
                Overall::ConsistentUpTo(n) => OverallJson::ConsistentUpTo { n },
                Overall::ViolationWitness(n) => OverallJson::ViolationWitness { n },
                Overall::Inconclusive { first_indeterminate } => OverallJson::Inconclusive { first_indeterminate },
            },
            growth: r.growth.as_ref().map(GrowthJson::from),
            warnings: r.warnings.clone(),
        }
    }
}

/// Per-`n` records as CSV, for plotting.
pub fn criterion_csv(r: &CriterionReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "a", "re", "error_bound", "verdict"]).expect("in-memory write");
    for x in &r.records {
        w.write_record([x.n.to_string(), r.a.to_string(), x.re.to_string(), x.error_bound.to_string(), x.verdict.name().into()])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

#[derive(Clone, Debug, Serialize)]
pub struct PairJson {
    pub n: u64,
    pub first: &'static str,
    pub second: &'static str,
    pub residual: f64,
    pub allowed: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossReportJson {
    pub a: f64,
    pub routes: Vec<&'static str>,
    pub passed: bool,
    pub worst_ratio: f64,
    pub results: Vec<LiResultJson>,
    pub asymptotic: Vec<LiResultJson>,
    pub pairs: Vec<PairJson>,
}

impl From<&CrossReport> for CrossReportJson {
    fn from(r: &CrossReport) -> Self {
        CrossReportJson {
            a: r.a,
            routes: r.routes.iter().map(|x| x.name()).collect(),
            passed: r.passed(),
            worst_ratio: r.worst_ratio(),
            results: r.rows.iter().flat_map(|row| row.results.iter().map(LiResultJson::from)).collect(),
            asymptotic: r.rows.iter().filter_map(|row| row.asymptotic.as_ref().map(LiResultJson::from)).collect(),
            pairs: r
                .rows
                .iter()
                .flat_map(|row| {
                    row.pairs.iter().map(move |p| PairJson {
                        n: row.n,
                        first: p.first.name(),
                        second: p.second.name(),
                        residual: p.residual,
                        allowed: p.allowed,
                        pass: p.pass,
                    })
                })
                .collect(),
        }
    }
}

/// All gated results of a cross-validation in the coefficient CSV schema.
pub fn cross_csv(r: &CrossReport) -> String {
    let all: Vec<LiResult> = r.rows.iter().flat_map(|row| row.results.iter().cloned()).collect();
    results_csv(&all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use licrit_core::criterion::verdict;
    use licrit_core::licoeff::Route;
    use licrit_core::numerics::BigComplex;

    fn row(n: i64, re: f64) -> LiResult {
        LiResult {
            n,
            a: 0.0,
            value: BigComplex::from_f64(re, 0.0, 64),
            error_bound: 1e-3,
            route: Route::ZeroSum,
            heuristic: false,
            bits: 64,
            diagnostics: Default::default(),
        }
    }

    #[test]
    fn csv_header_and_rows() {
        let s = results_csv(&[row(1, 0.5), row(2, 1.25)]);
        let mut lines = s.lines();
        assert_eq!(lines.next(), Some("n,a,route,value_re,value_im,error_bound"));
        assert_eq!(lines.next(), Some("1,0,zero-sum,0.5,0,0.001"));
        assert_eq!(lines.next(), Some("2,0,zero-sum,1.25,0,0.001"));
        assert_eq!(lines.next(), None);
    }

    #[test]
    fn json_mirrors_fields() {
        let v: serde_json::Value = serde_json::from_str(&results_json(&[row(1, 0.5)])).unwrap();
        for key in ["n", "a", "route", "value_re", "value_im", "error_bound", "heuristic", "bits", "diagnostics"] {
            assert!(v[0].get(key).is_some(), "{key}");
        }
        let rep = verdict(&[row(1, 0.5), row(2, -1.0)], 0.0).unwrap();
        let v = serde_json::to_value(CriterionReportJson::from(&rep)).unwrap();
        assert_eq!(v["overall"]["kind"], "violation_witness");
        assert_eq!(v["overall"]["n"], 2);
        assert_eq!(v["records"][1]["verdict"], "negative");
        assert!(v["growth"].is_null());
    }
}
