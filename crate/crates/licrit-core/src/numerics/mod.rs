//! Arbitrary-precision arithmetic and the special functions built on it.

mod binomial;
mod chebyshev;
mod ctx;
mod eta;
mod gamma;
mod hurwitz;
mod quad;
mod real;

pub use binomial::{binomial, binomial_real, binomial_row};
pub use chebyshev::{chebyshev, ChebyshevKind};
pub use ctx::Ctx;
pub use eta::{zeta_alternating, DirichletPowers};
pub(crate) use eta::{borwein_terms, borwein_weights};
pub use gamma::{log_gamma, polygamma};
pub use hurwitz::{hurwitz_zeta, hurwitz_zeta_range};
pub use quad::integrate_half_line;
pub(crate) use quad::tanh_sinh_f64;
pub use real::{BigComplex, BigReal};

/// A computed value together with an absolute error bound.
#[derive(Clone, Debug)]
pub struct Approx<T> {
    pub value: T,
    pub err: f64,
}

impl<T> Approx<T> {
    pub fn new(value: T, err: f64) -> Self {
        Approx { value, err }
    }
}

/// `2^e` as an upper bound that never underflows to zero.
pub(crate) fn pow2_bound(e: f64) -> f64 {
    libm::exp2(e).max(f64::MIN_POSITIVE)
}

/// Mantissa width as a function of the coefficient index and shift.
///
/// The binomial sums behind the arithmetic formula have terms as large as
/// `C(n, n/2)·|1−2a|^{n/2}` that cancel down to `O(n log n)`, so the default
/// width grows linearly in `n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrecisionPolicy {
    /// Guard bits added to every width.
    pub base_bits: usize,
    /// Fixed width that replaces the formula when set.
    pub override_bits: Option<usize>,
    /// Multiplier applied last; 2 gives the doubled-precision rerun.
    pub multiplier: usize,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy { base_bits: 128, override_bits: None, multiplier: 1 }
    }
}

impl PrecisionPolicy {
    pub fn fixed(bits: usize) -> Self {
        PrecisionPolicy { override_bits: Some(bits), ..Self::default() }
    }

    /// Same policy at twice the width.
    pub fn doubled(self) -> Self {
        PrecisionPolicy { multiplier: self.multiplier * 2, ..self }
    }

    /// `128 + ceil(n·(1 + log2(1 + |1−2a|)))` unless overridden.
    pub fn bits(&self, n: u64, a: f64) -> usize {
        let raw = match self.override_bits {
            Some(b) => b,
            None => {
                let growth = 1.0 + libm::log2(1.0 + libm::fabs(1.0 - 2.0 * a));
                self.base_bits + libm::ceil(n as f64 * growth) as usize
            }
        };
        raw.max(self.base_bits.min(128)).max(64) * self.multiplier.max(1)
    }

    /// Width for evaluations without cancellation (sums of `4 sin²` terms and
    /// of powers of single complex numbers), where only rounding drift that
    /// grows with `n` has to be absorbed.
    pub fn stable_bits(&self, n: u64) -> usize {
        let raw = match self.override_bits {
            Some(b) => b,
            None => self.base_bits + 2 * (64 - (n + 1).leading_zeros() as usize) + 16,
        };
        raw.max(64) * self.multiplier.max(1)
    }
}
