//! JSON form of [`LFunctionDescriptor`] and the `--L` name resolver.
//!
//! ```json
//! {"name": "chi4", "m_F": 0, "Q": "sqrt(4/pi)",
//!  "gamma_factors": [{"lambda": 0.5, "mu_re": 0.5, "mu_im": 0.0}],
//!  "omega_re": 1.0, "omega_im": 0.0,
//!  "coefficients": {"kind": "kronecker", "discriminant": -4}}
//! ```
//!
//! `Q` is either a number or the string `sqrt(k/pi)`, which keeps `log Q`
//! exact for the built-ins.

use std::path::Path;

use licrit_core::lfunc::{builtin_zeta, kronecker_l, Character, CoefficientSource, Conductor, GammaFactor, LFunctionDescriptor};
use licrit_core::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DescriptorFile {
    pub name: String,
    #[serde(rename = "m_F")]
    pub m_f: u32,
    #[serde(rename = "Q")]
    pub q: QField,
    pub gamma_factors: Vec<GammaFile>,
    pub omega_re: f64,
    pub omega_im: f64,
    pub coefficients: CoefficientsFile,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QField {
    Number(f64),
    Symbolic(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaFile {
    pub lambda: f64,
    pub mu_re: f64,
    pub mu_im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoefficientsFile {
    Zeta,
    Kronecker { discriminant: i64 },
    /// Character values `χ(0), …, χ(q−1)` as `[re, im]` pairs.
    Dirichlet { modulus: u64, values: Vec<[f64; 2]> },
    Table { limit: u64, values: Vec<TableEntry> },
    Zero,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableEntry {
    pub n: u64,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

fn parse_q(q: &QField) -> Result<Conductor> {
    match q {
        QField::Number(v) => Ok(Conductor::Value(*v)),
        QField::Symbolic(s) => {
            let inner = s
                .trim()
                .strip_prefix("sqrt(")
                .and_then(|r| r.strip_suffix("/pi)"))
                .ok_or_else(|| Error::Domain(format!("Q must be a number or `sqrt(k/pi)`, not `{s}`")))?;
            let k: u64 = inner.trim().parse().map_err(|_| Error::Domain(format!("bad integer in Q = `{s}`")))?;
            if k == 0 {
                return Err(Error::Domain("Q = sqrt(0/pi) is not a conductor".into()));
            }
            Ok(Conductor::SqrtOverPi(k))
        }
    }
}

impl DescriptorFile {
    pub fn to_descriptor(&self) -> Result<LFunctionDescriptor> {
        let factors = self
            .gamma_factors
            .iter()
            .map(|g| GammaFactor::new(g.lambda, g.mu_re, g.mu_im))
            .collect::<Result<Vec<_>>>()?;
        let coefficients = match &self.coefficients {
            CoefficientsFile::Zeta => CoefficientSource::RiemannZeta,
            CoefficientsFile::Kronecker { discriminant } => CoefficientSource::Dirichlet(Character::kronecker(*discriminant)?),
            CoefficientsFile::Dirichlet { modulus, values } => {
                let table: Vec<(f64, f64)> = values.iter().map(|v| (v[0], v[1])).collect();
                CoefficientSource::Dirichlet(Character::from_table(*modulus, &table)?)
            }
            CoefficientsFile::Table { limit, values } => {
                CoefficientSource::table(values.iter().map(|e| (e.n, (e.re, e.im))).collect(), *limit)?
            }
            CoefficientsFile::Zero => CoefficientSource::Zero,
        };
        LFunctionDescriptor::new(
            self.name.clone(),
            self.m_f,
            parse_q(&self.q)?,
            factors,
            (self.omega_re, self.omega_im),
            coefficients,
        )
    }

    pub fn from_descriptor(d: &LFunctionDescriptor) -> Self {
        let q = match d.conductor {
            Conductor::Value(v) => QField::Number(v),
            Conductor::SqrtOverPi(k) => QField::Symbolic(format!("sqrt({k}/pi)")),
        };
        let coefficients = match &d.coefficients {
            CoefficientSource::RiemannZeta => CoefficientsFile::Zeta,
            CoefficientSource::Dirichlet(chi) => CoefficientsFile::Dirichlet {
                modulus: chi.modulus(),
                values: chi.table().into_iter().map(|(re, im)| [re, im]).collect(),
            },
            CoefficientSource::Table { values, limit } => CoefficientsFile::Table {
                limit: *limit,
                values: values.iter().map(|&(n, (re, im))| TableEntry { n, re, im }).collect(),
            },
            CoefficientSource::Zero => CoefficientsFile::Zero,
        };
        DescriptorFile {
            name: d.name.clone(),
            m_f: d.m_f,
            q,
            gamma_factors: d
                .gamma_factors
                .iter()
                .map(|g| GammaFile { lambda: g.lambda, mu_re: g.mu.0, mu_im: g.mu.1 })
                .collect(),
            omega_re: d.omega.0,
            omega_im: d.omega.1,
            coefficients,
        }
    }
}

pub fn parse_descriptor(json: &str) -> Result<LFunctionDescriptor> {
    let file: DescriptorFile = serde_json::from_str(json)
        .map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
    file.to_descriptor()
}

/// `zeta`, `kronecker:D`, or a path to a JSON descriptor.
pub fn resolve(spec: &str) -> Result<LFunctionDescriptor> {
    if spec == "zeta" {
        return Ok(builtin_zeta());
    }
    if let Some(d) = spec.strip_prefix("kronecker:") {
        let disc: i64 = d.parse().map_err(|_| Error::Domain(format!("`{d}` is not a discriminant")))?;
        return kronecker_l(disc);
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(Error::Domain(format!(
            "unknown L-function `{spec}`: use zeta, kronecker:D or a descriptor file"
        )));
    }
    let text = std::fs::read_to_string(path).map_err(|e| Error::Domain(format!("{spec}: {e}")))?;
    parse_descriptor(&text)
}
