//! Dirichlet characters given by value tables.

use alloc::format;
use alloc::vec::Vec;

use super::sieve::gcd;
use crate::error::{Error, Result};
use crate::numerics::{BigComplex, Ctx};

const TOL: f64 = 1e-9;

/// A validated primitive, nonprincipal Dirichlet character.
///
/// Values are stored as exponents `e` with `χ(n) = exp(2πi e/N)` for the
/// character order `N`, so they can be rebuilt at any width.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    modulus: u64,
    order: u32,
    exps: Vec<Option<u32>>,
}

fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn near(a: (f64, f64), b: (f64, f64)) -> bool {
    libm::hypot(a.0 - b.0, a.1 - b.1) < TOL
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl Character {
    /// Validates a table `χ(0), χ(1), ..., χ(q−1)`.
    pub fn from_table(modulus: u64, table: &[(f64, f64)]) -> Result<Self> {
        if modulus < 3 {
            return Err(Error::Domain(format!("character modulus must be ≥ 3 (got {modulus})")));
        }
        if table.len() as u64 != modulus {
            return Err(Error::Domain(format!(
                "character table has {} entries, expected {modulus}",
                table.len()
            )));
        }
        let q = modulus as usize;
        for (n, &v) in table.iter().enumerate() {
            let coprime = gcd(n as u64, modulus) == 1;
            let mag = libm::hypot(v.0, v.1);
            if coprime && (mag - 1.0).abs() > TOL {
                return Err(Error::Domain(format!("|χ({n})| = {mag}, expected 1")));
            }
            if !coprime && mag > TOL {
                return Err(Error::Domain(format!("χ({n}) must vanish since gcd({n}, {modulus}) > 1")));
            }
        }
        for a in 1..q {
            if gcd(a as u64, modulus) != 1 {
                continue;
            }
            for b in a..q {
                if gcd(b as u64, modulus) != 1 {
                    continue;
                }
                if !near(table[(a * b) % q], cmul(table[a], table[b])) {
                    return Err(Error::Domain(format!("table is not multiplicative at {a}·{b}")));
                }
            }
        }
        if (1..q).all(|n| gcd(n as u64, modulus) != 1 || near(table[n], (1.0, 0.0))) {
            return Err(Error::Domain("principal character rejected".into()));
        }
        // Induced from modulus d | q when trivial on residues ≡ 1 (mod d).
        for d in 1..modulus {
            if modulus % d != 0 {
                continue;
            }
            let trivial = (1..q)
                .filter(|&n| gcd(n as u64, modulus) == 1 && (n as u64) % d == 1 % d)
                .all(|n| near(table[n], (1.0, 0.0)));
            if trivial {
                return Err(Error::Domain(format!("character is imprimitive (induced from modulus {d})")));
            }
        }
        // Order and exponents.
        let mut order = 1u64;
        for (n, &v) in table.iter().enumerate() {
            if gcd(n as u64, modulus) != 1 {
                continue;
            }
            let ang = libm::atan2(v.1, v.0) / (2.0 * core::f64::consts::PI);
            let mut found = None;
            for k in 1..=modulus {
                let x = ang * k as f64;
                if (x - libm::round(x)).abs() < 1e-7 {
                    found = Some(k);
                    break;
                }
            }
            let k = found.ok_or_else(|| Error::Domain(format!("χ({n}) is not a root of unity")))?;
            order = lcm(order, k);
        }
        let exps = table
            .iter()
            .enumerate()
            .map(|(n, &v)| {
                if gcd(n as u64, modulus) != 1 {
                    None
                } else {
                    let ang = libm::atan2(v.1, v.0) / (2.0 * core::f64::consts::PI);
                    let e = libm::round(ang * order as f64) as i64;
                    Some(e.rem_euclid(order as i64) as u32)
                }
            })
            .collect();
        Ok(Character { modulus, order: order as u32, exps })
    }

    /// Real primitive character `n ↦ (D/n)` for a fundamental discriminant `D`.
    pub fn kronecker(disc: i64) -> Result<Self> {
        let q = disc.unsigned_abs();
        if q < 3 {
            return Err(Error::Domain(format!("{disc} is not a usable fundamental discriminant")));
        }
        let table: Vec<(f64, f64)> = (0..q).map(|n| (kronecker_symbol(disc, n) as f64, 0.0)).collect();
        Self::from_table(q, &table)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `0` for even characters, `1` for odd ones.
    pub fn parity(&self) -> u32 {
        let e = self.exps[(self.modulus - 1) as usize].expect("−1 is a unit");
        if e == 0 {
            0
        } else {
            1
        }
    }

    /// Exponent of `χ(n)`, or `None` when `χ(n) = 0`.
    pub fn exponent(&self, n: u64) -> Option<u32> {
        self.exps[(n % self.modulus) as usize]
    }

    pub fn value(&self, n: u64) -> (f64, f64) {
        match self.exponent(n) {
            None => (0.0, 0.0),
            Some(e) => {
                let ang = 2.0 * core::f64::consts::PI * e as f64 / self.order as f64;
                if 4 * e == self.order {
                    (0.0, 1.0)
                } else if 2 * e == self.order {
                    (-1.0, 0.0)
                } else if 4 * e == 3 * self.order {
                    (0.0, -1.0)
                } else if e == 0 {
                    (1.0, 0.0)
                } else {
                    (libm::cos(ang), libm::sin(ang))
                }
            }
        }
    }

    /// `χ(n)^k` at the context width.
    pub fn power_value(&self, n: u64, k: u32, ctx: &mut Ctx) -> Option<BigComplex> {
        let e = self.exponent(n)?;
        let ek = (e as u64 * k as u64 % self.order as u64) as u32;
        let n4 = 4 * ek as u64;
        let ord = self.order as u64;
        let exact = if ek == 0 {
            Some((1.0, 0.0))
        } else if n4 == ord {
            Some((0.0, 1.0))
        } else if n4 == 2 * ord {
            Some((-1.0, 0.0))
        } else if n4 == 3 * ord {
            Some((0.0, -1.0))
        } else {
            None
        };
        Some(match exact {
            Some((re, im)) => ctx.complex(re, im),
            None => {
                let ang = ctx.pi().mul_pow2(1) * ctx.int(ek as i64) / ctx.int(self.order as i64);
                ctx.cis(&ang)
            }
        })
    }

    pub fn is_real(&self) -> bool {
        self.order <= 2
    }

    pub fn table(&self) -> Vec<(f64, f64)> {
        (0..self.modulus).map(|n| self.value(n)).collect()
    }
}

/// Kronecker symbol `(D/n)`.
pub fn kronecker_symbol(d: i64, n: u64) -> i32 {
    if n == 0 {
        return if d == 1 || d == -1 { 1 } else { 0 };
    }
    let mut n = n;
    let mut result = 1i32;
    // Factor out 2s.
    let mut twos = 0;
    while n % 2 == 0 {
        n /= 2;
        twos += 1;
    }
    if twos > 0 {
        if d % 2 == 0 {
            return 0;
        }
        let r = d.rem_euclid(8);
        if twos % 2 == 1 && (r == 3 || r == 5) {
            result = -result;
        }
    }
    // Jacobi symbol (d/n) for odd n, extended to negative d.
    let mut a = d.rem_euclid(n as i64) as u64;
    let mut m = n;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = m % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        core::mem::swap(&mut a, &mut m);
        if a % 4 == 3 && m % 4 == 3 {
            result = -result;
        }
        a %= m;
    }
    if m == 1 {
        result
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_four() {
        let chi = Character::from_table(4, &[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0), (-1.0, 0.0)]).unwrap();
        assert_eq!(chi.parity(), 1);
        assert_eq!(chi.order(), 2);
        assert_eq!(chi.value(9), (1.0, 0.0));
        assert_eq!(chi.value(2), (0.0, 0.0));
        assert_eq!(Character::kronecker(-4).unwrap(), chi);
    }

    #[test]
    fn rejects_bad_tables() {
        let principal = [(0.0, 0.0), (1.0, 0.0), (0.0, 0.0), (1.0, 0.0)];
        assert!(Character::from_table(4, &principal).is_err());
        // χ mod 8 induced from χ_4 is imprimitive.
        let induced: Vec<(f64, f64)> =
            (0..8).map(|n| if n % 2 == 0 { (0.0, 0.0) } else if n % 4 == 1 { (1.0, 0.0) } else { (-1.0, 0.0) }).collect();
        assert!(Character::from_table(8, &induced).is_err());
        let not_mult = [(0.0, 0.0), (1.0, 0.0), (1.0, 0.0), (-1.0, 0.0), (-1.0, 0.0)];
        assert!(Character::from_table(5, &not_mult).is_err());
        assert!(Character::from_table(4, &[(0.0, 0.0), (1.0, 0.0)]).is_err());
    }

    #[test]
    fn complex_character_mod_five() {
        // Generator 2: χ(2) = i.
        let t = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (0.0, -1.0), (-1.0, 0.0)];
        let chi = Character::from_table(5, &t).unwrap();
        assert_eq!(chi.order(), 4);
        assert_eq!(chi.parity(), 1);
        let mut c = Ctx::new(128).unwrap();
        let v = chi.power_value(2, 3, &mut c).unwrap();
        assert_eq!(v.to_f64(), (0.0, -1.0));
    }

    #[test]
    fn kronecker_discriminants() {
        for d in [5i64, -3, -4, 8, -8, 12, -7, 13] {
            let chi = Character::kronecker(d).unwrap();
            assert_eq!(chi.parity(), if d < 0 { 1 } else { 0 }, "D = {d}");
        }
        assert_eq!(kronecker_symbol(5, 2), -1);
        assert_eq!(kronecker_symbol(-3, 2), -1);
        assert_eq!(kronecker_symbol(8, 3), -1);
    }
}
