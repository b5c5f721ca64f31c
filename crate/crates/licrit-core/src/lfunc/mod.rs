//! Selberg-class descriptors, the built-in zeta and Dirichlet L-functions, and
//! Dirichlet-series sums of `F′/F`.

mod character;
mod dsum;
pub mod sieve;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

pub use character::{kronecker_symbol, Character};
pub use dsum::{logf_derivatives, power_sums, tail_majorant_ln, PowerSums};

use crate::error::{Error, Result};
use crate::numerics::{BigComplex, BigReal, Ctx};
use sieve::as_prime_power;

/// One factor `Γ(λ s + μ)` of the functional equation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GammaFactor {
    pub lambda: f64,
    pub mu: (f64, f64),
}

impl GammaFactor {
    pub fn new(lambda: f64, mu_re: f64, mu_im: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::Domain(format!("gamma factor needs λ > 0 (got {lambda})")));
        }
        if !(mu_re >= 0.0 && mu_re.is_finite() && mu_im.is_finite()) {
            return Err(Error::Domain(format!("gamma factor needs Re μ ≥ 0 (got {mu_re})")));
        }
        Ok(GammaFactor { lambda, mu: (mu_re, mu_im) })
    }

    pub fn mu_complex(&self, ctx: &Ctx) -> BigComplex {
        ctx.complex(self.mu.0, self.mu.1)
    }
}

/// The conductor `Q` of the functional equation.
///
/// The built-ins have `Q = √(k/π)`, kept symbolic so that `log Q` is exact at
/// any width.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Conductor {
    Value(f64),
    SqrtOverPi(u64),
}

impl Conductor {
    pub fn value(&self) -> f64 {
        match *self {
            Conductor::Value(q) => q,
            Conductor::SqrtOverPi(k) => libm::sqrt(k as f64 / PI),
        }
    }

    pub fn ln(&self, ctx: &mut Ctx) -> BigReal {
        match *self {
            Conductor::Value(q) => {
                let q = ctx.real(q);
                ctx.ln(&q)
            }
            Conductor::SqrtOverPi(k) => {
                let pi = ctx.pi();
                let lk = ctx.ln_u64(k);
                (lk - ctx.ln(&pi)).mul_pow2(-1)
            }
        }
    }
}

/// Where the values `Λ_F(n)` come from.
#[derive(Clone, Debug, PartialEq)]
pub enum CoefficientSource {
    /// Classical von Mangoldt function.
    RiemannZeta,
    /// `Λ_F(p^k) = χ(p)^k log p`.
    Dirichlet(Character),
    /// Explicit values for `n ≤ limit`, zero at omitted `n ≤ limit`.
    /// Values beyond `limit` are unknown.
    Table { values: Vec<(u64, (f64, f64))>, limit: u64 },
    /// `Λ_F ≡ 0`.
    Zero,
}

impl CoefficientSource {
    /// Builds a table source, checking prime-power support and sorting entries.
    pub fn table(mut values: Vec<(u64, (f64, f64))>, limit: u64) -> Result<Self> {
        values.sort_by_key(|e| e.0);
        for w in values.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Domain(format!("duplicate coefficient for n = {}", w[0].0)));
            }
        }
        for &(n, (re, im)) in &values {
            if n > limit {
                return Err(Error::Domain(format!("coefficient for n = {n} exceeds the table limit {limit}")));
            }
            if !(re.is_finite() && im.is_finite()) {
                return Err(Error::Domain(format!("non-finite coefficient at n = {n}")));
            }
            if (re != 0.0 || im != 0.0) && as_prime_power(n).is_none() {
                return Err(Error::Domain(format!("Λ_F({n}) ≠ 0 but {n} is not a prime power")));
            }
        }
        Ok(CoefficientSource::Table { values, limit })
    }

    /// Largest `n` for which `Λ_F(n)` is known.
    pub fn limit(&self) -> u64 {
        match self {
            CoefficientSource::Table { limit, .. } => *limit,
            _ => u64::MAX,
        }
    }

    /// Constant `C` in `|Λ_F(n)| ≤ C log n`, or 0 when `Λ_F` vanishes.
    pub fn majorant_constant(&self, degree: f64) -> f64 {
        match self {
            CoefficientSource::RiemannZeta | CoefficientSource::Dirichlet(_) => 1.0,
            CoefficientSource::Table { .. } => degree.max(1.0),
            CoefficientSource::Zero => 0.0,
        }
    }

    pub fn is_real(&self) -> bool {
        match self {
            CoefficientSource::RiemannZeta | CoefficientSource::Zero => true,
            CoefficientSource::Dirichlet(chi) => chi.is_real(),
            CoefficientSource::Table { values, .. } => values.iter().all(|v| v.1 .1 == 0.0),
        }
    }
}

/// Functional-equation data of an L-function plus its coefficient source.
#[derive(Clone, Debug, PartialEq)]
pub struct LFunctionDescriptor {
    pub name: String,
    pub m_f: u32,
    pub conductor: Conductor,
    pub gamma_factors: Vec<GammaFactor>,
    pub omega: (f64, f64),
    pub coefficients: CoefficientSource,
}

/// `(d_F, q_F, Π λ_j^{2λ_j}, c_1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StructuralConstants {
    pub degree: f64,
    pub q_f: f64,
    pub lambda_product: f64,
    pub c1: f64,
}

impl LFunctionDescriptor {
    pub fn new(
        name: impl Into<String>,
        m_f: u32,
        conductor: Conductor,
        gamma_factors: Vec<GammaFactor>,
        omega: (f64, f64),
        coefficients: CoefficientSource,
    ) -> Result<Self> {
        if gamma_factors.is_empty() {
            return Err(Error::Domain("at least one gamma factor is required".into()));
        }
        if !(conductor.value() > 0.0 && conductor.value().is_finite()) {
            return Err(Error::Domain("conductor Q must be positive".into()));
        }
        if (libm::hypot(omega.0, omega.1) - 1.0).abs() > 1e-9 {
            return Err(Error::Domain("root number ω must have modulus 1".into()));
        }
        Ok(LFunctionDescriptor { name: name.into(), m_f, conductor, gamma_factors, omega, coefficients })
    }

    pub fn degree(&self) -> f64 {
        2.0 * self.gamma_factors.iter().map(|g| g.lambda).sum::<f64>()
    }

    /// Whether `Λ_F` and every `μ_j` are real, so that `λ_F(−n, a) = λ_F(n, a)`.
    pub fn is_self_conjugate(&self) -> bool {
        self.coefficients.is_real() && self.gamma_factors.iter().all(|g| g.mu.1 == 0.0)
    }

    /// Descriptor with `Λ_F` and `μ_j` conjugated (the dual L-function).
    pub fn conjugate(&self) -> Self {
        let coefficients = match &self.coefficients {
            CoefficientSource::Dirichlet(chi) => {
                let t: Vec<(f64, f64)> = chi.table().into_iter().map(|(re, im)| (re, -im)).collect();
                CoefficientSource::Dirichlet(Character::from_table(chi.modulus(), &t).expect("conjugate of a valid character"))
            }
            CoefficientSource::Table { values, limit } => CoefficientSource::Table {
                values: values.iter().map(|&(n, (re, im))| (n, (re, -im))).collect(),
                limit: *limit,
            },
            other => other.clone(),
        };
        LFunctionDescriptor {
            name: self.name.clone(),
            m_f: self.m_f,
            conductor: self.conductor,
            gamma_factors: self
                .gamma_factors
                .iter()
                .map(|g| GammaFactor { lambda: g.lambda, mu: (g.mu.0, -g.mu.1) })
                .collect(),
            omega: (self.omega.0, -self.omega.1),
            coefficients,
        }
    }

    /// `Λ_F(n)` as a double-precision complex number.
    pub fn von_mangoldt(&self, n: u64) -> (f64, f64) {
        let Some((p, k)) = as_prime_power(n) else {
            return match &self.coefficients {
                CoefficientSource::Table { values, .. } => lookup(values, n),
                _ => (0.0, 0.0),
            };
        };
        let lp = libm::log(p as f64);
        match &self.coefficients {
            CoefficientSource::RiemannZeta => (lp, 0.0),
            CoefficientSource::Dirichlet(chi) => match chi.exponent(p) {
                None => (0.0, 0.0),
                Some(e) => {
                    let ek = (e as u64 * k as u64 % chi.order() as u64) as u32;
                    let ang = 2.0 * PI * ek as f64 / chi.order() as f64;
                    let (c, s) = exact_unit(ek, chi.order()).unwrap_or((libm::cos(ang), libm::sin(ang)));
                    (c * lp, s * lp)
                }
            },
            CoefficientSource::Table { values, .. } => lookup(values, n),
            CoefficientSource::Zero => (0.0, 0.0),
        }
    }

    /// `Λ_F(p^k)` at the context width; `ln_p` is `log p` at that width.
    pub(crate) fn von_mangoldt_big(&self, m: u64, p: u64, k: u32, ln_p: &BigReal, ctx: &mut Ctx) -> Option<BigComplex> {
        match &self.coefficients {
            CoefficientSource::RiemannZeta => Some(BigComplex::from_real(ln_p.clone())),
            CoefficientSource::Dirichlet(chi) => {
                let c = chi.power_value(p, k, ctx)?;
                Some(c.scale(ln_p))
            }
            CoefficientSource::Table { values, .. } => {
                let (re, im) = lookup(values, m);
                if re == 0.0 && im == 0.0 {
                    None
                } else {
                    Some(ctx.complex(re, im))
                }
            }
            CoefficientSource::Zero => None,
        }
    }

    pub fn structural_constants(&self) -> StructuralConstants {
        let degree = self.degree();
        let lambda_product: f64 = self.gamma_factors.iter().map(|g| libm::pow(g.lambda, 2.0 * g.lambda)).product();
        let q = self.conductor.value();
        let q_f = libm::pow(2.0 * PI, degree) * q * q * lambda_product;
        let c1 = (libm::log(q_f) - degree * (libm::log(2.0 * PI) + 1.0)) / (2.0 * PI);
        StructuralConstants { degree, q_f, lambda_product, c1 }
    }

    /// `ψ_F(x) = Σ_{n ≤ x} Λ_F(n)`, summed with compensation.
    pub fn psi_counting(&self, x: f64) -> Result<(f64, f64)> {
        if !(x >= 1.0) {
            return Err(Error::Domain(format!("ψ_F(x) needs x ≥ 1 (got {x})")));
        }
        let n = libm::floor(x) as u64;
        if n > self.coefficients.limit() {
            return Err(Error::Precondition(format!(
                "coefficients are only known up to {}",
                self.coefficients.limit()
            )));
        }
        let mut re = Neumaier::default();
        let mut im = Neumaier::default();
        for pp in sieve::prime_powers_up_to(n) {
            let v = self.von_mangoldt(pp.m);
            re.add(v.0);
            im.add(v.1);
        }
        Ok((re.sum(), im.sum()))
    }
}

fn lookup(values: &[(u64, (f64, f64))], n: u64) -> (f64, f64) {
    match values.binary_search_by_key(&n, |e| e.0) {
        Ok(i) => values[i].1,
        Err(_) => (0.0, 0.0),
    }
}

fn exact_unit(e: u32, order: u32) -> Option<(f64, f64)> {
    let (e, o) = (4 * e as u64, order as u64);
    if e == 0 {
        Some((1.0, 0.0))
    } else if e == o {
        Some((0.0, 1.0))
    } else if e == 2 * o {
        Some((-1.0, 0.0))
    } else if e == 3 * o {
        Some((0.0, -1.0))
    } else {
        None
    }
}

#[derive(Default)]
struct Neumaier {
    s: f64,
    c: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
    }

    fn sum(&self) -> f64 {
        self.s + self.c
    }
}

/// The Riemann zeta function.
pub fn builtin_zeta() -> LFunctionDescriptor {
    LFunctionDescriptor {
        name: "zeta".into(),
        m_f: 1,
        conductor: Conductor::SqrtOverPi(1),
        gamma_factors: alloc::vec![GammaFactor { lambda: 0.5, mu: (0.0, 0.0) }],
        omega: (1.0, 0.0),
        coefficients: CoefficientSource::RiemannZeta,
    }
}

/// `L(s, χ)` for a primitive nonprincipal character given by its value table.
pub fn builtin_dirichlet(modulus: u64, table: &[(f64, f64)]) -> Result<LFunctionDescriptor> {
    let chi = Character::from_table(modulus, table)?;
    Ok(dirichlet_descriptor(chi, format!("dirichlet:{modulus}")))
}

/// `L(s, (D/·))` for a fundamental discriminant `D`.
pub fn kronecker_l(disc: i64) -> Result<LFunctionDescriptor> {
    let chi = Character::kronecker(disc)?;
    Ok(dirichlet_descriptor(chi, format!("kronecker:{disc}")))
}

fn dirichlet_descriptor(chi: Character, name: String) -> LFunctionDescriptor {
    let parity = chi.parity();
    LFunctionDescriptor {
        name,
        m_f: 0,
        conductor: Conductor::SqrtOverPi(chi.modulus()),
        gamma_factors: alloc::vec![GammaFactor { lambda: 0.5, mu: (parity as f64 / 2.0, 0.0) }],
        omega: (1.0, 0.0),
        coefficients: CoefficientSource::Dirichlet(chi),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chi4() -> LFunctionDescriptor {
        builtin_dirichlet(4, &[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0), (-1.0, 0.0)]).unwrap()
    }

    #[test]
    fn zeta_constants() {
        let z = builtin_zeta();
        let c = z.structural_constants();
        assert_eq!(c.degree, 1.0);
        assert!((c.q_f - 1.0).abs() < 1e-15);
        assert_eq!(c.lambda_product, 0.5);
        let want = -(libm::log(2.0 * PI) + 1.0) / (2.0 * PI);
        assert!((c.c1 - want).abs() < 1e-15);
        assert!((c.c1 + 0.4516).abs() < 1e-3);
    }

    #[test]
    fn two_factor_degree() {
        let f = GammaFactor::new(0.5, 0.0, 0.0).unwrap();
        let d = LFunctionDescriptor::new("x", 0, Conductor::Value(1.0), alloc::vec![f, f], (1.0, 0.0), CoefficientSource::Zero).unwrap();
        assert_eq!(d.degree(), 2.0);
        assert!(GammaFactor::new(0.0, 0.0, 0.0).is_err());
        assert!(GammaFactor::new(0.5, -0.1, 0.0).is_err());
        assert!(LFunctionDescriptor::new("x", 0, Conductor::Value(1.0), alloc::vec![f], (0.5, 0.0), CoefficientSource::Zero).is_err());
    }

    #[test]
    fn von_mangoldt_values() {
        let z = builtin_zeta();
        assert_eq!(z.von_mangoldt(8), (libm::log(2.0), 0.0));
        assert_eq!(z.von_mangoldt(4), (libm::log(2.0), 0.0));
        assert_eq!(z.von_mangoldt(6), (0.0, 0.0));
        assert_eq!(z.von_mangoldt(1), (0.0, 0.0));
        let l = chi4();
        assert_eq!(l.von_mangoldt(9), (libm::log(3.0), 0.0));
        assert_eq!(l.von_mangoldt(3), (-libm::log(3.0), 0.0));
        assert_eq!(l.von_mangoldt(2), (0.0, 0.0));
        assert_eq!(l.degree(), 1.0);
        assert_eq!(l.m_f, 0);
        assert_eq!(l.gamma_factors[0].mu, (0.5, 0.0));
    }

    #[test]
    fn support_and_twist() {
        let z = builtin_zeta();
        let l = kronecker_l(-3).unwrap();
        for n in 1..=100_000u64 {
            let v = z.von_mangoldt(n);
            let w = l.von_mangoldt(n);
            if v != (0.0, 0.0) {
                assert!(as_prime_power(n).is_some());
            }
            let chi = kronecker_symbol(-3, n) as f64;
            assert!((w.0 - chi * v.0).abs() < 1e-12 && w.1 == 0.0, "n = {n}");
        }
    }

    #[test]
    fn psi_values() {
        let z = builtin_zeta();
        assert_eq!(z.psi_counting(1.0).unwrap(), (0.0, 0.0));
        let want = 3.0 * libm::log(2.0) + 2.0 * libm::log(3.0) + libm::log(5.0) + libm::log(7.0);
        assert!((z.psi_counting(10.0).unwrap().0 - want).abs() < 1e-12);
        assert!((z.psi_counting(10.0).unwrap().0 - 7.8320).abs() < 1e-4);
        let big = z.psi_counting(1e6).unwrap().0;
        assert!((big / 1e6 - 1.0).abs() < 3e-3);
        assert!(z.psi_counting(0.5).is_err());
    }

    #[test]
    fn table_source_rules() {
        assert!(CoefficientSource::table(alloc::vec![(6, (1.0, 0.0))], 10).is_err());
        assert!(CoefficientSource::table(alloc::vec![(11, (1.0, 0.0))], 10).is_err());
        let t = CoefficientSource::table(alloc::vec![(4, (0.5, 0.0)), (2, (0.7, 0.1))], 10).unwrap();
        let f = GammaFactor::new(0.5, 0.0, 0.0).unwrap();
        let d = LFunctionDescriptor::new("t", 0, Conductor::Value(2.0), alloc::vec![f], (1.0, 0.0), t).unwrap();
        assert_eq!(d.von_mangoldt(2), (0.7, 0.1));
        assert_eq!(d.von_mangoldt(3), (0.0, 0.0));
        assert!(d.psi_counting(11.0).is_err());
        let c = d.conjugate();
        assert_eq!(c.von_mangoldt(2), (0.7, -0.1));
    }

    #[test]
    fn conductor_logs() {
        let mut c = Ctx::new(192).unwrap();
        let l = Conductor::SqrtOverPi(1).ln(&mut c).to_f64();
        assert!((l + 0.5 * libm::log(PI)).abs() < 1e-15);
        let l = Conductor::Value(3.0).ln(&mut c).to_f64();
        assert!((l - libm::log(3.0)).abs() < 1e-15);
    }
}
