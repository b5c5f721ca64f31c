//! Non-trivial zeros: zero sets, the plain-text ordinate format, the Hardy `Z`
//! function and a critical-line zero finder for `ζ`.

mod hardy;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::PI;

pub use hardy::{find_zeros, hardy_z, riemann_siegel_theta, FindOptions, FoundZeros, HardyZ};

use crate::error::{Error, Result};
use crate::lfunc::LFunctionDescriptor;
use crate::numerics::{BigReal, Ctx};

/// A zero `1/2 + iγ`, stored with `γ > 0`; its conjugate is implicit.
#[derive(Clone, Debug, PartialEq)]
pub struct OnlineZero {
    pub gamma: f64,
    pub multiplicity: u32,
    /// Original decimal text, kept so that tables round-trip exactly and can
    /// be read at more than double precision.
    pub text: Option<String>,
}

impl OnlineZero {
    pub fn new(gamma: f64) -> Self {
        OnlineZero { gamma, multiplicity: 1, text: None }
    }

    /// The ordinate at the context width, from the original text when present.
    pub fn gamma_big(&self, ctx: &mut Ctx) -> BigReal {
        match &self.text {
            Some(t) => ctx.parse(t).unwrap_or_else(|| ctx.real(self.gamma)),
            None => ctx.real(self.gamma),
        }
    }
}

/// A zero `β + iγ` off the critical line, `γ > 0`; its conjugate is implicit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OfflineZero {
    pub beta: f64,
    pub gamma: f64,
    pub multiplicity: u32,
}

/// An ordered multiset of non-trivial zeros in the upper half plane.
///
/// On-line ordinates are strictly increasing. Off-line zeros always come in
/// pairs `β + iγ`, `(1−β) + iγ`. The set claims to contain every zero with
/// `0 < γ ≤ complete_to`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroSet {
    online: Vec<OnlineZero>,
    offline: Vec<OfflineZero>,
    complete_to: f64,
    source: String,
}

impl ZeroSet {
    pub fn new(online: Vec<OnlineZero>, offline: Vec<OfflineZero>, complete_to: f64, source: impl Into<String>) -> Result<Self> {
        for (i, z) in online.iter().enumerate() {
            if !(z.gamma > 0.0 && z.gamma.is_finite()) {
                return Err(Error::Domain(format!("ordinate {} must be positive", z.gamma)));
            }
            if z.multiplicity == 0 {
                return Err(Error::Domain("multiplicities must be at least 1".into()));
            }
            if i > 0 && online[i - 1].gamma >= z.gamma {
                return Err(Error::Domain(format!("ordinates not strictly increasing at {}", z.gamma)));
            }
        }
        for z in &offline {
            check_offline(z.beta, z.gamma)?;
            if z.multiplicity == 0 {
                return Err(Error::Domain("multiplicities must be at least 1".into()));
            }
            let partner = offline.iter().filter(|w| w.gamma == z.gamma && w.beta == 1.0 - z.beta).map(|w| w.multiplicity).sum::<u32>();
            let same = offline.iter().filter(|w| w.gamma == z.gamma && w.beta == z.beta).map(|w| w.multiplicity).sum::<u32>();
            if partner != same {
                return Err(Error::Domain(format!(
                    "off-line zero {}+{}i lacks its partner {}+{}i",
                    z.beta,
                    z.gamma,
                    1.0 - z.beta,
                    z.gamma
                )));
            }
        }
        if !(complete_to >= 0.0 && complete_to.is_finite()) {
            return Err(Error::Domain("completeness height must be a finite nonnegative number".into()));
        }
        Ok(ZeroSet { online, offline, complete_to, source: source.into() })
    }

    /// On-line zeros with multiplicity 1 at the given ordinates.
    pub fn from_ordinates(gammas: &[f64], complete_to: f64, source: impl Into<String>) -> Result<Self> {
        Self::new(gammas.iter().map(|&g| OnlineZero::new(g)).collect(), Vec::new(), complete_to, source)
    }

    pub fn online(&self) -> &[OnlineZero] {
        &self.online
    }

    pub fn offline(&self) -> &[OfflineZero] {
        &self.offline
    }

    pub fn complete_to(&self) -> f64 {
        self.complete_to
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn is_empty(&self) -> bool {
        self.online.is_empty() && self.offline.is_empty()
    }

    /// Zeros in the upper half plane counted with multiplicity.
    pub fn count(&self) -> u64 {
        self.online.iter().map(|z| z.multiplicity as u64).sum::<u64>() + self.offline.iter().map(|z| z.multiplicity as u64).sum::<u64>()
    }

    /// Zeros with `γ ≤ t`; the completeness height drops to `min(t, complete_to)`.
    pub fn truncated(&self, t: f64) -> ZeroSet {
        ZeroSet {
            online: self.online.iter().filter(|z| z.gamma <= t).cloned().collect(),
            offline: self.offline.iter().filter(|z| z.gamma <= t).cloned().collect(),
            complete_to: self.complete_to.min(t),
            source: self.source.clone(),
        }
    }

    /// The first `k` on-line zeros; completeness moves to the last kept ordinate.
    pub fn first(&self, k: usize) -> ZeroSet {
        let online: Vec<OnlineZero> = self.online.iter().take(k).cloned().collect();
        let top = if k < self.online.len() { online.last().map_or(0.0, |z| z.gamma) } else { self.complete_to };
        self.truncated(top).with_online(online)
    }

    fn with_online(mut self, online: Vec<OnlineZero>) -> ZeroSet {
        self.online = online;
        self
    }

    /// Adds the symmetric off-line pair `β + iγ`, `(1−β) + iγ`.
    pub fn inject_zero(&self, beta: f64, gamma: f64) -> Result<ZeroSet> {
        check_offline(beta, gamma)?;
        let mut out = self.clone();
        out.offline.push(OfflineZero { beta, gamma, multiplicity: 1 });
        out.offline.push(OfflineZero { beta: 1.0 - beta, gamma, multiplicity: 1 });
        out.source = format!("{} + injected {}+{}i", self.source, beta, gamma);
        Ok(out)
    }

    /// Reads one ordinate per line; blank lines and lines starting with `#`
    /// are skipped. The completeness height is the last ordinate.
    pub fn parse(text: &str, source: impl Into<String>) -> Result<Self> {
        let mut online: Vec<OnlineZero> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let tok = tokens.next().unwrap_or("");
            if tokens.next().is_some() {
                return Err(Error::Parse { line: i + 1, msg: format!("expected one ordinate, found `{line}`") });
            }
            let gamma: f64 = tok
                .parse()
                .map_err(|_| Error::Parse { line: i + 1, msg: format!("`{tok}` is not a number") })?;
            if !(gamma > 0.0 && gamma.is_finite()) {
                return Err(Error::Parse { line: i + 1, msg: format!("ordinate {tok} must be positive and finite") });
            }
            if let Some(prev) = online.last() {
                if prev.gamma >= gamma {
                    return Err(Error::Parse {
                        line: i + 1,
                        msg: format!("ordinates must increase strictly ({} then {tok})", prev.gamma),
                    });
                }
            }
            online.push(OnlineZero { gamma, multiplicity: 1, text: Some(tok.to_string()) });
        }
        let complete_to = online.last().map_or(0.0, |z| z.gamma);
        Ok(ZeroSet { online, offline: Vec::new(), complete_to, source: source.into() })
    }

    /// Writes the on-line ordinates in the format read by [`ZeroSet::parse`],
    /// one line per unit of multiplicity. Ordinates read from text are written
    /// back verbatim; computed ones use the shortest exact decimal form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for z in &self.online {
            let t = z.text.clone().unwrap_or_else(|| format!("{}", z.gamma));
            for _ in 0..z.multiplicity {
                out.push_str(&t);
                out.push('\n');
            }
        }
        out
    }
}

fn check_offline(beta: f64, gamma: f64) -> Result<()> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::Domain(format!("β = {beta} must lie in (0, 1)")));
    }
    if beta == 0.5 {
        return Err(Error::Domain("β = 1/2 is on the critical line, not an off-line zero".into()));
    }
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::Domain(format!("γ = {gamma} must be positive")));
    }
    Ok(())
}

/// `(d_F/2π) T log T + c_1 T`, the main terms of the zero-counting function.
pub fn count_estimate(d: &LFunctionDescriptor, t: f64) -> Result<f64> {
    if !(t > 1.0) {
        return Err(Error::Domain(format!("count estimate needs T > 1 (got {t})")));
    }
    let c = d.structural_constants();
    Ok(c.degree / (2.0 * PI) * t * libm::log(t) + c.c1 * t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfunc::{builtin_zeta, Conductor, CoefficientSource, GammaFactor};

    #[test]
    fn parse_examples() {
        let z = ZeroSet::parse("14.134725\n21.022040\n", "t").unwrap();
        assert_eq!(z.online().len(), 2);
        assert_eq!(z.complete_to(), 21.022040);
        let z = ZeroSet::parse("# header\n14.134725\n", "t").unwrap();
        assert_eq!(z.online().len(), 1);
        match ZeroSet::parse("21.0\n14.0\n", "t") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(ZeroSet::parse("14.1\nabc\n", "t"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(ZeroSet::parse("14.1\n14.1\n", "t"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(ZeroSet::parse("-3\n", "t"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn text_round_trip() {
        let src = "14.134725141734693790\n21.02204\n25.010857580145688763\n";
        let z = ZeroSet::parse(&alloc::format!("# c\n{src}\n"), "t").unwrap();
        assert_eq!(z.to_text(), src);
        let again = ZeroSet::parse(&z.to_text(), "t").unwrap();
        assert_eq!(again.online(), z.online());
        let computed = ZeroSet::from_ordinates(&[14.134725141734694, 21.022039638771556], 22.0, "f").unwrap();
        let back = ZeroSet::parse(&computed.to_text(), "t").unwrap();
        assert_eq!(back.online()[0].gamma, 14.134725141734694);
        assert_eq!(back.online()[1].gamma, 21.022039638771556);
    }

    #[test]
    fn high_precision_ordinates() {
        let z = ZeroSet::parse("14.134725141734693790457251983562\n", "t").unwrap();
        let mut c = Ctx::new(192).unwrap();
        let g = z.online()[0].gamma_big(&mut c);
        let f = c.real(z.online()[0].gamma);
        let d = (&g - &f).abs().to_f64();
        assert!(d > 0.0 && d < 2e-15);
    }

    #[test]
    fn injection() {
        let z = ZeroSet::from_ordinates(&[], 100.0, "empty").unwrap();
        let w = z.inject_zero(0.8, 14.0).unwrap();
        assert_eq!(w.offline().len(), 2);
        assert!(w.offline().contains(&OfflineZero { beta: 0.8, gamma: 14.0, multiplicity: 1 }));
        assert!(w.offline().iter().any(|o| (o.beta - 0.2).abs() < 1e-15 && o.gamma == 14.0));
        assert!(z.inject_zero(0.5, 14.0).is_err());
        assert!(z.inject_zero(1.2, 14.0).is_err());
        assert!(z.inject_zero(0.0, 14.0).is_err());
        // A lone off-line zero breaks the symmetry invariant.
        assert!(ZeroSet::new(Vec::new(), alloc::vec![OfflineZero { beta: 0.7, gamma: 3.0, multiplicity: 1 }], 5.0, "x").is_err());
    }

    #[test]
    fn invariants_on_construction() {
        assert!(ZeroSet::from_ordinates(&[2.0, 1.0], 3.0, "x").is_err());
        assert!(ZeroSet::from_ordinates(&[1.0, 1.0], 3.0, "x").is_err());
        let mut z = OnlineZero::new(3.0);
        z.multiplicity = 0;
        assert!(ZeroSet::new(alloc::vec![z], Vec::new(), 3.0, "x").is_err());
    }

    #[test]
    fn first_and_truncate() {
        let z = ZeroSet::from_ordinates(&[1.0, 2.0, 3.0], 3.5, "x").unwrap();
        let f = z.first(2);
        assert_eq!(f.online().len(), 2);
        assert_eq!(f.complete_to(), 2.0);
        assert_eq!(z.first(5).complete_to(), 3.5);
        assert_eq!(z.truncated(2.5).online().len(), 2);
    }

    #[test]
    fn count_estimates() {
        let z = builtin_zeta();
        let c100 = count_estimate(&z, 100.0).unwrap();
        assert!((c100 - 28.1).abs() < 0.05);
        // Independent evaluation of the same main terms at T = 50.
        let want = 50.0 * libm::log(50.0) / (2.0 * PI) - 50.0 * (libm::log(2.0 * PI) + 1.0) / (2.0 * PI);
        assert!((count_estimate(&z, 50.0).unwrap() - want).abs() < 1e-12);
        let f = GammaFactor::new(0.5, 0.0, 0.0).unwrap();
        let d2 = LFunctionDescriptor::new("d2", 0, Conductor::Value(1.0), alloc::vec![f, f], (1.0, 0.0), CoefficientSource::Zero).unwrap();
        let t = 300.0;
        let lead = |d: &LFunctionDescriptor| d.degree() / (2.0 * PI) * t * libm::log(t);
        assert_eq!(lead(&d2), 2.0 * lead(&z));
        assert!(count_estimate(&z, 1.0).is_err());
    }
}
