use alloc::vec::Vec;

use num_bigint::BigUint;

use super::real::BigReal;
use crate::error::{Error, Result};

/// Exact binomial coefficient `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> Result<BigUint> {
    if k > n {
        return Err(Error::Domain(alloc::format!("binomial({n}, {k}) needs k ≤ n")));
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u8);
    // Each partial product C(n-k+i, i) is an integer, so the division is exact.
    for i in 1..=k {
        acc *= BigUint::from(n - k + i);
        acc /= BigUint::from(i);
    }
    Ok(acc)
}

/// Row `C(n, 0..=n)` of Pascal's triangle, exact.
pub fn binomial_row(n: u64) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(n as usize + 1);
    row.push(BigUint::from(1u8));
    for k in 0..n {
        let next = &row[k as usize] * BigUint::from(n - k) / BigUint::from(k + 1);
        row.push(next);
    }
    row
}

/// `C(n, k)` rounded to `bits` (exact whenever it fits).
pub fn binomial_real(n: u64, k: u64, bits: usize) -> Result<BigReal> {
    Ok(BigReal::from_biguint(&binomial(n, k)?, bits))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pascal(n: usize) -> Vec<Vec<u128>> {
        let mut t = alloc::vec![alloc::vec![1u128]];
        for i in 1..=n {
            let prev = &t[i - 1];
            let mut row = alloc::vec![1u128; i + 1];
            for j in 1..i {
                row[j] = prev[j - 1] + prev[j];
            }
            t.push(row);
        }
        t
    }

    #[test]
    fn small_cases() {
        assert_eq!(binomial(0, 0).unwrap(), BigUint::from(1u8));
        assert_eq!(binomial(5, 2).unwrap(), BigUint::from(10u8));
        assert_eq!(binomial(50, 25).unwrap(), BigUint::from(126410606437752u64));
        assert!(binomial(3, 4).is_err());
    }

    #[test]
    fn agrees_with_pascal_triangle() {
        let t = pascal(120);
        for n in 0..=120u64 {
            let row = binomial_row(n);
            for k in 0..=n {
                let want = BigUint::from(t[n as usize][k as usize]);
                assert_eq!(binomial(n, k).unwrap(), want);
                assert_eq!(row[k as usize], want);
            }
        }
    }

    #[test]
    fn large_row_sums_to_power_of_two() {
        let row = binomial_row(400);
        let sum: BigUint = row.iter().sum();
        assert_eq!(sum, BigUint::from(1u8) << 400u32);
    }
}
