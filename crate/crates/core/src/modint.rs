//! Exact residue arithmetic with canonical representatives.
//!
//! Every residue is kept in canonical form `0 <= value < modulus` at all
//! times. Wherever a residue is consumed as an integer (a matrix exponent, a
//! binomial argument, a summation bound) the canonical lift to `[0, m)` is
//! used; the well-definedness of that convention is asserted by tests, not
//! assumed.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModIntError {
    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u64, modulus: u64 },
}

/// An integer residue in canonical form: `0 <= value < modulus`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

// Arithmetic stays as named methods rather than operator impls: every
// operation asserts the two moduli agree, and `a.add(b)` keeps that check
// visible at call sites.
#[allow(clippy::should_implement_trait)]
impl Residue {
    /// Canonicalizes any signed integer into `[0, modulus)`.
    pub fn new(value: i64, modulus: u64) -> Residue {
        assert!(modulus > 0, "modulus must be positive");
        let m = modulus as i64;
        Residue {
            value: value.rem_euclid(m) as u64,
            modulus,
        }
    }

    pub fn from_u64(value: u64, modulus: u64) -> Residue {
        assert!(modulus > 0, "modulus must be positive");
        Residue {
            value: value % modulus,
            modulus,
        }
    }

    pub fn zero(modulus: u64) -> Residue {
        Residue::from_u64(0, modulus)
    }

    pub fn one(modulus: u64) -> Residue {
        Residue::from_u64(1, modulus)
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn check_same_modulus(self, other: Residue) {
        assert_eq!(
            self.modulus, other.modulus,
            "mixed moduli: {} vs {}",
            self.modulus, other.modulus
        );
    }

    pub fn add(self, other: Residue) -> Residue {
        self.check_same_modulus(other);
        Residue::from_u64(self.value + other.value, self.modulus)
    }

    pub fn sub(self, other: Residue) -> Residue {
        self.check_same_modulus(other);
        Residue::from_u64(self.value + self.modulus - other.value, self.modulus)
    }

    pub fn neg(self) -> Residue {
        Residue::from_u64(self.modulus - self.value, self.modulus)
    }

    pub fn mul(self, other: Residue) -> Residue {
        self.check_same_modulus(other);
        Residue::from_u64(self.value * other.value, self.modulus)
    }

    /// Multiplies by a plain integer (scaling, not a residue of the same modulus).
    pub fn scale(self, k: u64) -> Residue {
        Residue::from_u64(self.value * (k % self.modulus), self.modulus)
    }

    pub fn pow(self, mut n: u64) -> Residue {
        let mut base = self;
        let mut acc = Residue::one(self.modulus);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            n >>= 1;
        }
        acc
    }

    /// Modular inverse by extended Euclid; errors on non-units.
    pub fn inverse(self) -> Result<Residue, ModIntError> {
        let (g, x, _) = ext_gcd(self.value as i64, self.modulus as i64);
        if g != 1 {
            return Err(ModIntError::NotAUnit {
                value: self.value,
                modulus: self.modulus,
            });
        }
        Ok(Residue::new(x, self.modulus))
    }

    pub fn is_unit(self) -> bool {
        gcd(self.value, self.modulus) == 1
    }
}

impl fmt::Debug for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// The canonical representative of `r` in `[0, m)`.
///
/// This is the single lift convention used everywhere a residue appears as a
/// matrix exponent, binomial argument or summation bound.
pub fn lift(r: Residue) -> u64 {
    r.value
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Returns (g, x, y) with a*x + b*y = g = gcd(a, b).
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Exact binomial coefficient, with the convention `binom(n, m) = 0` for `n < m`.
pub fn binom(n: u64, m: u64) -> u64 {
    if n < m {
        return 0;
    }
    let m = m.min(n - m);
    let mut acc: u128 = 1;
    for i in 0..m {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflow")
}

/// The triangular sum `Σ_{i=1}^{y-1} i` (empty for y in {0, 1}); equals `binom(y, 2)`.
pub fn tri_sum(y: u64) -> u64 {
    if y < 2 {
        0
    } else {
        y * (y - 1) / 2
    }
}

/// Trial-division primality test for the small parameters used throughout.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binom_below_diagonal_is_zero() {
        assert_eq!(binom(1, 2), 0);
        assert_eq!(binom(0, 1), 0);
    }

    #[test]
    fn binom_small_values() {
        assert_eq!(binom(4, 2), 6);
        assert_eq!(binom(5, 0), 1);
        assert_eq!(binom(7, 7), 1);
    }

    #[test]
    fn binom_p_2_vanishes_mod_odd_p() {
        for p in [3u64, 5, 7, 11, 13] {
            assert_eq!(binom(p, 2) % p, 0, "C({p},2) mod {p}");
        }
    }

    #[test]
    fn tri_sum_matches_binomial() {
        assert_eq!(tri_sum(0), 0);
        assert_eq!(tri_sum(1), 0);
        assert_eq!(tri_sum(3), 3);
        for y in 0..=100 {
            assert_eq!(tri_sum(y), binom(y, 2));
        }
    }

    #[test]
    fn primality_by_trial_division() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(104729)); // the 10000th prime
        assert!(!is_prime(341)); // Fermat pseudoprime base 2
    }

    #[test]
    fn lift_is_canonical_representative() {
        assert_eq!(lift(Residue::new(3, 4)), 3);
        assert_eq!(lift(Residue::new(0, 9)), 0);
        assert_eq!(lift(Residue::new(-1, 9)), 8);
        assert_eq!(lift(Residue::new(13, 4)), 1);
    }

    #[test]
    fn inverse_of_units() {
        for m in [2u64, 3, 4, 8, 9, 25, 27] {
            for v in 0..m {
                let r = Residue::from_u64(v, m);
                match r.inverse() {
                    Ok(inv) => {
                        assert!(r.is_unit());
                        assert_eq!(r.mul(inv), Residue::one(m));
                    }
                    Err(_) => assert!(!r.is_unit()),
                }
            }
        }
    }

    #[test]
    fn exponent_lift_well_defined_for_binomials() {
        // binom(y+p, 2) ≡ binom(y, 2) (mod p) for odd p: shifting an exponent
        // lift by the modulus never changes a reduced C(·,2) coefficient.
        for p in [3u64, 5, 7] {
            for y in 0..3 * p {
                assert_eq!(binom(y + p, 2) % p, binom(y, 2) % p, "p={p} y={y}");
            }
        }
    }

    #[test]
    fn scaled_binomial_well_defined_mod_p_squared() {
        // p·C(a+p, 2) ≡ p·C(a, 2) (mod p²) for odd p: catalog formulas using
        // p·C(y,2) are well defined on residues mod p.
        for p in [3u64, 5, 7] {
            for a in 0..3 * p {
                assert_eq!(
                    p * binom(a + p, 2) % (p * p),
                    p * binom(a, 2) % (p * p),
                    "p={p} a={a}"
                );
            }
        }
    }
}
