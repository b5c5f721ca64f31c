//! Exponential growth of `λ_n`, the signature of zeros off the line.
//!
//! Every zero contributes `1 − w^n` with `w = (ρ−a)/(ρ+a−1)`; `|w| = 1` on the
//! line and `|w| > 1` off it (for `a < 1/2`). Second differences remove the
//! smooth polynomial trend of the sequence but keep `(w−1)² w^n`, so the
//! envelope of `|Δ²λ_n|` grows like `|w|^n` exactly when an off-line zero is
//! present and stays bounded or decays otherwise.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::licoeff::LiResult;

pub(crate) const MIN_VALUES: usize = 20;
const WINDOWS: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub struct Growth {
    /// `exp(slope)`, an estimate of `lim sup |λ_n|^{1/n}` when it exceeds one.
    pub rate: f64,
    pub slope: f64,
    pub stderr: f64,
    /// `slope > 3·stderr` and `slope > 0`.
    pub flagged: bool,
    /// Range of `n` the fit used.
    pub n_from: u64,
    pub n_to: u64,
    pub windows: usize,
    pub note: String,
}

/// Least-squares slope of the log-envelope of `|Δ²Re λ_n|` over the upper half
/// of the range, from the maxima of up to 16 equal windows.
pub fn growth_detector(values: &[LiResult]) -> Result<Growth> {
    let re: Vec<f64> = values.iter().map(|v| v.re()).collect();
    growth_of(&re, values.first().map_or(1, |v| v.n))
}

pub(crate) fn growth_of(re: &[f64], n0: i64) -> Result<Growth> {
    if re.len() < MIN_VALUES {
        return Err(Error::Domain(format!(
            "growth detection needs at least {MIN_VALUES} consecutive values (got {})",
            re.len()
        )));
    }
    if re.iter().any(|x| !x.is_finite()) {
        return Err(Error::Numerical("non-finite coefficient in the sequence".into()));
    }
    // Δ² at index i is centred on re[i + 1].
    let half = re.len() / 2;
    let d2: Vec<(f64, f64)> = (half.max(1)..re.len() - 1)
        .map(|i| ((n0 + i as i64) as f64, libm::fabs(re[i + 1] - 2.0 * re[i] + re[i - 1])))
        .collect();
    let w = (d2.len() / WINDOWS).max(1);
    let mut pts: Vec<(f64, f64)> = Vec::new();
    for chunk in d2.chunks_exact(w) {
        let peak = chunk.iter().map(|p| p.1).fold(0.0, f64::max);
        // Windows where the sequence is exactly linear carry no information.
        if peak > 0.0 {
            let centre = chunk.iter().map(|p| p.0).sum::<f64>() / chunk.len() as f64;
            pts.push((centre, libm::log(peak)));
        }
    }
    let (n_from, n_to) = (d2[0].0 as u64, d2[d2.len() - 1].0 as u64);
    if pts.len() < 3 {
        return Ok(Growth {
            rate: 1.0,
            slope: 0.0,
            stderr: f64::INFINITY,
            flagged: false,
            n_from,
            n_to,
            windows: pts.len(),
            note: "sequence is linear over the fitted range; no growth signal".into(),
        });
    }
    let (slope, stderr) = fit_slope(&pts);
    let flagged = slope > 0.0 && slope > 3.0 * stderr;
    let note = format!(
        "slope {slope:.3e} ± {stderr:.1e} of log max|Δ²λ| over n ∈ [{n_from}, {n_to}] in {} windows; {}",
        pts.len(),
        if flagged { "exponential growth beyond 3σ" } else { "no growth beyond 3σ" }
    );
    Ok(Growth { rate: libm::exp(slope), slope, stderr, flagged, n_from, n_to, windows: pts.len(), note })
}

fn fit_slope(pts: &[(f64, f64)]) -> (f64, f64) {
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let rss: f64 = pts.iter().map(|p| libm::pow(p.1 - my - slope * (p.0 - mx), 2.0)).sum();
    (slope, libm::sqrt(rss / (k - 2.0) / sxx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criterion::tests::seq;

    #[test]
    fn geometric_is_flagged() {
        let g = growth_detector(&seq(0.0, |n| -libm::pow(1.001, n as f64), 0.0, 400)).unwrap();
        assert!((g.rate - 1.001).abs() < 1e-6, "{g:?}");
        assert!(g.flagged);
        let g = growth_detector(&seq(0.0, |n| -libm::pow(1.001, n as f64), 0.0, 20)).unwrap();
        assert!(g.flagged && (g.rate - 1.001).abs() < 1e-4);
    }

    #[test]
    fn polynomial_is_not() {
        for len in [20u64, 100, 2000] {
            let g = growth_detector(&seq(0.0, |n| n as f64 * libm::log(n as f64), 0.0, len)).unwrap();
            assert!(!g.flagged, "{len}: {g:?}");
            assert!(g.rate <= 1.0);
        }
        let g = growth_detector(&seq(0.0, |n| n as f64 * libm::log(n as f64), 0.0, 2000)).unwrap();
        assert!((g.rate - 1.0).abs() < 1e-3);
        // Linear and constant sequences have no second differences at all.
        let g = growth_detector(&seq(0.0, |n| 3.0 * n as f64 + 1.0, 0.0, 64)).unwrap();
        assert!(!g.flagged);
    }

    #[test]
    fn growing_oscillation_under_a_trend() {
        // n log n plus a slowly growing rotation, too small to change the sign.
        let osc = |n: u64| n as f64 * libm::log(n as f64) + 5.0 * libm::pow(1.002, n as f64) * libm::cos(0.07 * n as f64);
        let g = growth_detector(&seq(0.0, osc, 0.0, 2000)).unwrap();
        assert!(g.flagged, "{g:?}");
        assert!((g.rate - 1.002).abs() < 5e-4);
    }

    #[test]
    fn short_input() {
        assert!(growth_detector(&seq(0.0, |n| n as f64, 0.0, 19)).is_err());
    }
}
