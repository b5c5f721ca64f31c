use super::real::BigReal;

/// Which Chebyshev family to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChebyshevKind {
    First,
    Second,
}

/// `T_n(x)` or `U_n(x)` by the three-term recurrence at the width of `x`.
pub fn chebyshev(kind: ChebyshevKind, n: u64, x: &BigReal) -> BigReal {
    let bits = x.bits();
    let one = BigReal::one(bits);
    if n == 0 {
        return one;
    }
    let two_x = x.mul_pow2(1);
    let mut prev = one;
    let mut cur = match kind {
        ChebyshevKind::First => x.clone(),
        ChebyshevKind::Second => two_x.clone(),
    };
    for _ in 1..n {
        let next = &two_x * &cur - &prev;
        prev = cur;
        cur = next;
    }
    cur
}
