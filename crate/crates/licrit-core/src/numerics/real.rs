//! Multiprecision real and complex scalars.
//!
//! Every value carries its own mantissa width. Binary operations round to the
//! wider of the two operands, so mixing widths never silently loses bits.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use astro_float::{BigFloat, RoundingMode, Sign, Word};
use num_bigint::BigUint;

pub(crate) const RM: RoundingMode = RoundingMode::ToEven;

/// Real number with a run-time mantissa width.
#[derive(Clone)]
pub struct BigReal(pub(crate) BigFloat);

impl BigReal {
    pub fn zero(bits: usize) -> Self {
        BigReal(BigFloat::from_u64(0, bits))
    }

    pub fn one(bits: usize) -> Self {
        BigReal(BigFloat::from_u64(1, bits))
    }

    /// Exact conversion; every finite `f64` is representable at any width ≥ 53.
    pub fn from_f64(x: f64, bits: usize) -> Self {
        BigReal(BigFloat::from_f64(x, bits.max(64)))
    }

    pub fn from_i64(x: i64, bits: usize) -> Self {
        BigReal(BigFloat::from_i64(x, bits.max(64)))
    }

    pub fn from_u64(x: u64, bits: usize) -> Self {
        BigReal(BigFloat::from_u64(x, bits.max(64)))
    }

    /// Rounds a big integer to `bits` (exact when it fits).
    pub fn from_biguint(x: &BigUint, bits: usize) -> Self {
        let words: Vec<Word> = if Word::BITS == 64 {
            x.to_u64_digits().into_iter().map(|d| d as Word).collect()
        } else {
            x.to_u32_digits().into_iter().map(|d| d as Word).collect()
        };
        if words.is_empty() {
            return Self::zero(bits);
        }
        let e = (words.len() as u64 * Word::BITS as u64) as i32;
        let mut f = BigFloat::from_words(&words, Sign::Pos, e);
        f.set_precision(bits.max(64), RM).expect("precision change");
        BigReal(f)
    }

    /// Mantissa width in bits (rounded up to a whole word by the backend).
    pub fn bits(&self) -> usize {
        // Zeros produced by arithmetic carry no mantissa and report width 0.
        self.0.precision().filter(|&p| p > 0).unwrap_or(64)
    }

    /// Same value rounded to a new width.
    pub fn with_bits(&self, bits: usize) -> Self {
        let mut f = self.0.clone();
        if f.is_nan() || f.is_inf() {
            return BigReal(f);
        }
        f.set_precision(bits.max(64), RM).expect("precision change");
        BigReal(f)
    }

    /// Nearest `f64` (truncated to the leading word, then rounded by the cast).
    pub fn to_f64(&self) -> f64 {
        if self.0.is_nan() {
            return f64::NAN;
        }
        if self.0.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.0.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        if self.0.is_zero() {
            return 0.0;
        }
        let Some((words, _, sign, exp, _)) = self.0.as_raw_parts() else {
            return f64::NAN;
        };
        let Some(&top) = words.last() else {
            return 0.0;
        };
        if top == 0 {
            return 0.0;
        }
        let mut m = top as u64 as f64;
        if Word::BITS == 32 && words.len() > 1 {
            m = m * 4294967296.0 + words[words.len() - 2] as u64 as f64;
            let v = libm::ldexp(m, exp - 64);
            return if sign == Sign::Neg { -v } else { v };
        }
        if Word::BITS == 64 && words.len() > 1 {
            // Fold in the next word so the cast rounds correctly at ties.
            let next = words[words.len() - 2] as u64;
            if next != 0 {
                m += (next as f64) * libm::ldexp(1.0, -64);
            }
        }
        let v = libm::ldexp(m, exp - Word::BITS as i32);
        if sign == Sign::Neg {
            -v
        } else {
            v
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        !self.0.is_zero() && self.0.is_negative()
    }

    pub fn is_finite(&self) -> bool {
        !(self.0.is_nan() || self.0.is_inf())
    }

    /// Binary exponent `e` with `2^(e-1) ≤ |x| < 2^e`; `i32::MIN` for zero.
    pub fn exponent(&self) -> i32 {
        if self.0.is_zero() {
            i32::MIN
        } else {
            self.0.exponent().unwrap_or(i32::MAX)
        }
    }

    pub fn abs(&self) -> Self {
        BigReal(self.0.abs())
    }

    pub fn sqrt(&self) -> Self {
        BigReal(self.0.sqrt(self.bits(), RM))
    }

    pub fn recip(&self) -> Self {
        BigReal(self.0.reciprocal(self.bits(), RM))
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn powi(&self, n: u64) -> Self {
        BigReal(self.0.powi(n as usize, self.bits(), RM))
    }

    pub fn floor(&self) -> Self {
        BigReal(self.0.floor())
    }

    /// `self · 2^k`, exact.
    pub fn mul_pow2(&self, k: i32) -> Self {
        let mut f = self.0.clone();
        if let Some(e) = f.exponent() {
            if !f.is_zero() {
                f.set_exponent(e + k);
            }
        }
        BigReal(f)
    }

    pub fn mul_f64(&self, x: f64) -> Self {
        self * &BigReal::from_f64(x, self.bits())
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    pub(crate) fn raw(&self) -> &BigFloat {
        &self.0
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}@{}b", self.to_f64(), self.bits())
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_f64(), f)
    }
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

fn wider(a: &BigReal, b: &BigReal) -> usize {
    a.bits().max(b.bits())
}

macro_rules! real_binop {
    ($tr:ident, $m:ident, $op:ident) => {
        impl $tr<&BigReal> for &BigReal {
            type Output = BigReal;
            fn $m(self, rhs: &BigReal) -> BigReal {
                BigReal(self.0.$op(&rhs.0, wider(self, rhs), RM))
            }
        }
        impl $tr<BigReal> for BigReal {
            type Output = BigReal;
            fn $m(self, rhs: BigReal) -> BigReal {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&BigReal> for BigReal {
            type Output = BigReal;
            fn $m(self, rhs: &BigReal) -> BigReal {
                (&self).$m(rhs)
            }
        }
        impl $tr<BigReal> for &BigReal {
            type Output = BigReal;
            fn $m(self, rhs: BigReal) -> BigReal {
                self.$m(&rhs)
            }
        }
    };
}

real_binop!(Add, add, add);
real_binop!(Sub, sub, sub);
real_binop!(Mul, mul, mul);
real_binop!(Div, div, div);

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal(self.0.neg())
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal(self.0.clone().neg())
    }
}

impl AddAssign<&BigReal> for BigReal {
    fn add_assign(&mut self, rhs: &BigReal) {
        *self = &*self + rhs;
    }
}

impl AddAssign<BigReal> for BigReal {
    fn add_assign(&mut self, rhs: BigReal) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&BigReal> for BigReal {
    fn sub_assign(&mut self, rhs: &BigReal) {
        *self = &*self - rhs;
    }
}

impl SubAssign<BigReal> for BigReal {
    fn sub_assign(&mut self, rhs: BigReal) {
        *self = &*self - &rhs;
    }
}

impl MulAssign<&BigReal> for BigReal {
    fn mul_assign(&mut self, rhs: &BigReal) {
        *self = &*self * rhs;
    }
}

/// Complex number as an ordered pair of [`BigReal`].
#[derive(Clone, PartialEq)]
pub struct BigComplex {
    pub re: BigReal,
    pub im: BigReal,
}

impl BigComplex {
    pub fn new(re: BigReal, im: BigReal) -> Self {
        BigComplex { re, im }
    }

    pub fn zero(bits: usize) -> Self {
        BigComplex::new(BigReal::zero(bits), BigReal::zero(bits))
    }

    pub fn one(bits: usize) -> Self {
        BigComplex::new(BigReal::one(bits), BigReal::zero(bits))
    }

    pub fn from_real(re: BigReal) -> Self {
        let bits = re.bits();
        BigComplex::new(re, BigReal::zero(bits))
    }

    pub fn from_f64(re: f64, im: f64, bits: usize) -> Self {
        BigComplex::new(BigReal::from_f64(re, bits), BigReal::from_f64(im, bits))
    }

    pub fn bits(&self) -> usize {
        self.re.bits().max(self.im.bits())
    }

    pub fn with_bits(&self, bits: usize) -> Self {
        BigComplex::new(self.re.with_bits(bits), self.im.with_bits(bits))
    }

    pub fn conj(&self) -> Self {
        BigComplex::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> BigReal {
        self.re.square() + self.im.square()
    }

    pub fn abs(&self) -> BigReal {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, k: &BigReal) -> Self {
        BigComplex::new(&self.re * k, &self.im * k)
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        BigComplex::new(&self.re / &d, -(&self.im / &d))
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Integer power by repeated squaring.
    pub fn powu(&self, mut n: u64) -> Self {
        let mut acc = BigComplex::one(self.bits());
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Integer power; negative exponents go through the reciprocal.
    pub fn powi(&self, n: i64) -> Self {
        if n >= 0 {
            self.powu(n as u64)
        } else {
            self.recip().powu(n.unsigned_abs())
        }
    }

    pub fn add_real(&self, x: &BigReal) -> Self {
        BigComplex::new(&self.re + x, self.im.clone())
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}i)", self.re, self.im)
    }
}

macro_rules! complex_forward {
    ($tr:ident, $m:ident) => {
        impl $tr<BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, rhs: BigComplex) -> BigComplex {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, rhs: &BigComplex) -> BigComplex {
                (&self).$m(rhs)
            }
        }
        impl $tr<BigComplex> for &BigComplex {
            type Output = BigComplex;
            fn $m(self, rhs: BigComplex) -> BigComplex {
                self.$m(&rhs)
            }
        }
    };
}

impl Add<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &BigComplex) -> BigComplex {
        BigComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &BigComplex) -> BigComplex {
        BigComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &BigComplex) -> BigComplex {
        BigComplex::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn div(self, rhs: &BigComplex) -> BigComplex {
        let d = rhs.norm_sqr();
        BigComplex::new(
            (&self.re * &rhs.re + &self.im * &rhs.im) / &d,
            (&self.im * &rhs.re - &self.re * &rhs.im) / &d,
        )
    }
}

complex_forward!(Add, add);
complex_forward!(Sub, sub);
complex_forward!(Mul, mul);
complex_forward!(Div, div);

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex::new(-self.re, -self.im)
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex::new(-&self.re, -&self.im)
    }
}

impl AddAssign<&BigComplex> for BigComplex {
    fn add_assign(&mut self, rhs: &BigComplex) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl AddAssign<BigComplex> for BigComplex {
    fn add_assign(&mut self, rhs: BigComplex) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl SubAssign<&BigComplex> for BigComplex {
    fn sub_assign(&mut self, rhs: &BigComplex) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl SubAssign<BigComplex> for BigComplex {
    fn sub_assign(&mut self, rhs: BigComplex) {
        self.re -= rhs.re;
        self.im -= rhs.im;
    }
}

impl MulAssign<&BigComplex> for BigComplex {
    fn mul_assign(&mut self, rhs: &BigComplex) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_round_trip() {
        for x in [1.0, -2.5, 0.1, 1e-300, 6.02e23, -7.0e-5] {
            assert_eq!(BigReal::from_f64(x, 256).to_f64(), x);
        }
        assert_eq!(BigReal::zero(128).to_f64(), 0.0);
        let x = BigReal::from_f64(3.5, 160);
        assert_eq!((&BigReal::zero(128) * &x).to_f64(), 0.0);
        assert_eq!((&x - &x).with_bits(256).to_f64(), 0.0);
        let c = BigComplex::from_real(&BigReal::zero(128) * &x);
        assert_eq!(c.to_f64(), (0.0, 0.0));
    }

    #[test]
    fn operations_use_wider_operand() {
        let a = BigReal::one(128);
        let b = BigReal::from_u64(3, 512);
        let q = &a / &b;
        assert!(q.bits() >= 512);
        let back = &q * &b;
        assert!((back - BigReal::one(512)).abs().exponent() < -500);
    }

    #[test]
    fn widening_keeps_value() {
        let x = BigReal::from_u64(1, 128) / BigReal::from_u64(7, 128);
        let y = x.with_bits(1024);
        assert!(x == y);
    }

    #[test]
    fn biguint_conversion() {
        let big = BigUint::from(1u8) << 200u32;
        let r = BigReal::from_biguint(&(big + 5u32), 256);
        let expect = BigReal::from_u64(2, 256).powi(200) + BigReal::from_u64(5, 256);
        assert!(r == expect);
    }

    #[test]
    fn complex_division_inverts_multiplication() {
        let z = BigComplex::from_f64(1.5, -2.25, 192);
        let w = BigComplex::from_f64(-0.75, 3.0, 192);
        let q = &(&z * &w) / &w;
        assert!((&q - &z).abs().exponent() < -180);
        assert_eq!(z.powi(-2).to_f64().0, (&z * &z).recip().to_f64().0);
    }
}
