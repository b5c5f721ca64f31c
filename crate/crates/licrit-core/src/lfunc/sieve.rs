//! Segmented sieve of Eratosthenes and prime-power enumeration.

use alloc::vec;
use alloc::vec::Vec;

const SEGMENT: usize = 1 << 16;

/// All primes `≤ n` in increasing order.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let root = libm::sqrt(n as f64) as u64 + 1;
    let base = small_primes(root);
    let mut out = Vec::with_capacity(estimate_count(n));
    let mut low = 2u64;
    let mut flags = vec![true; SEGMENT];
    while low <= n {
        let high = (low + SEGMENT as u64 - 1).min(n);
        let len = (high - low + 1) as usize;
        flags[..len].fill(true);
        for &p in &base {
            if p * p > high {
                break;
            }
            let start = (p * p).max(low.div_ceil(p) * p);
            let mut m = start;
            while m <= high {
                flags[(m - low) as usize] = false;
                m += p;
            }
        }
        for (i, &f) in flags[..len].iter().enumerate() {
            if f {
                out.push(low + i as u64);
            }
        }
        low = high + 1;
    }
    out
}

fn small_primes(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut is = vec![true; n + 1];
    is[0] = false;
    if n >= 1 {
        is[1] = false;
    }
    let mut i = 2;
    while i * i <= n {
        if is[i] {
            let mut j = i * i;
            while j <= n {
                is[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    is.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as u64).collect()
}

fn estimate_count(n: u64) -> usize {
    let x = n as f64;
    if x < 17.0 {
        8
    } else {
        (1.3 * x / libm::log(x)) as usize
    }
}

/// A prime power `m = p^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PrimePower {
    pub m: u64,
    pub p: u64,
    pub k: u32,
}

/// All prime powers `p^k ≤ n` (`k ≥ 1`), sorted by value.
pub fn prime_powers_up_to(n: u64) -> Vec<PrimePower> {
    let primes = primes_up_to(n);
    let mut out: Vec<PrimePower> = primes.iter().map(|&p| PrimePower { m: p, p, k: 1 }).collect();
    for &p in &primes {
        if p.saturating_mul(p) > n {
            break;
        }
        let mut m = p * p;
        let mut k = 2;
        while m <= n {
            out.push(PrimePower { m, p, k });
            match m.checked_mul(p) {
                Some(next) => m = next,
                None => break,
            }
            k += 1;
        }
    }
    out.sort_unstable();
    out
}

/// `Some((p, k))` when `n = p^k` with `k ≥ 1`.
pub fn as_prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 0;
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            p = d;
            break;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if p == 0 {
        return Some((n, 1));
    }
    let mut m = n;
    let mut k = 0;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    if m == 1 {
        Some((p, k))
    } else {
        None
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(primes_up_to(1), Vec::<u64>::new());
        assert_eq!(primes_up_to(30), alloc::vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(primes_up_to(1_000_000).len(), 78_498);
        assert_eq!(primes_up_to(200_003).last(), Some(&200_003));
    }

    #[test]
    fn segment_boundaries() {
        // Compare with trial division across several segment edges.
        let ps = primes_up_to(3 * SEGMENT as u64 + 17);
        let mut want = Vec::new();
        for n in 2..=(3 * SEGMENT as u64 + 17) {
            if as_prime_power(n) == Some((n, 1)) {
                want.push(n);
            }
        }
        assert_eq!(ps, want);
    }

    #[test]
    fn prime_powers() {
        let pp = prime_powers_up_to(30);
        let ms: Vec<u64> = pp.iter().map(|x| x.m).collect();
        assert_eq!(ms, alloc::vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29]);
        assert_eq!(as_prime_power(8), Some((2, 3)));
        assert_eq!(as_prime_power(6), None);
        assert_eq!(as_prime_power(1), None);
        assert_eq!(as_prime_power(97), Some((97, 1)));
    }
}
