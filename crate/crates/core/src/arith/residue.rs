use std::fmt;

use super::primes::{euler_phi, factor, gcd, mul_mod, pow_mod};
use crate::{Error, Result};

/// An element of Z/mZ, always stored reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(value: i64, modulus: u64) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        let v = value.rem_euclid(modulus as i64) as u64;
        Self { value: v, modulus }
    }

    pub fn from_u64(value: u64, modulus: u64) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        Self { value: value % modulus, modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    /// Representative in `{1, ..., m}`: zero maps to `m`.
    pub fn rep_one_based(self) -> u64 {
        if self.value == 0 {
            self.modulus
        } else {
            self.value
        }
    }

    pub fn is_unit(self) -> bool {
        gcd(self.value, self.modulus) == 1
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Self::from_u64(((self.value as u128 + other.value as u128) % self.modulus as u128) as u64, self.modulus)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Self {
        Self::from_u64(self.modulus - self.value, self.modulus)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Self::from_u64(mul_mod(self.value, other.value, self.modulus), self.modulus)
    }

    pub fn pow(self, exp: u64) -> Self {
        Self::from_u64(pow_mod(self.value, exp, self.modulus), self.modulus)
    }

    pub fn inverse(self) -> Result<Self> {
        let (g, x) = ext_gcd(self.value as i128, self.modulus as i128);
        if g != 1 {
            return Err(Error::NotInvertible { value: self.value, modulus: self.modulus });
        }
        Ok(Self::from_u64(x.rem_euclid(self.modulus as i128) as u64, self.modulus))
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0, s0)
}

/// Multiplicative order of a unit, found by factoring the group order
/// φ(m) and stripping prime factors while the power stays trivial.
pub fn residue_order(x: Residue) -> Result<u64> {
    if !x.is_unit() {
        return Err(Error::NotInvertible { value: x.value, modulus: x.modulus });
    }
    if x.modulus == 1 {
        return Ok(1);
    }
    let mut order = euler_phi(x.modulus);
    for (p, e) in factor(order) {
        for _ in 0..e {
            if x.pow(order / p).value == 1 {
                order /= p;
            } else {
                break;
            }
        }
    }
    Ok(order)
}

/// Order of `base` modulo `modulus` (shorthand for the common call).
pub fn multiplicative_order(base: u64, modulus: u64) -> Result<u64> {
    residue_order(Residue::from_u64(base, modulus))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_order(x: u64, m: u64) -> u64 {
        let mut acc = x % m;
        let mut r = 1;
        while acc != 1 % m {
            acc = acc * x % m;
            r += 1;
        }
        r
    }

    #[test]
    fn worked_orders() {
        assert_eq!(residue_order(Residue::new(3, 205)).unwrap(), 8);
        assert_eq!(residue_order(Residue::new(1, 7)).unwrap(), 1);
        assert_eq!(residue_order(Residue::new(2, 7)).unwrap(), 3);
    }

    #[test]
    fn non_unit_rejected() {
        let err = residue_order(Residue::new(5, 205)).unwrap_err();
        assert!(err.to_string().contains("not invertible"));
    }

    #[test]
    fn orders_agree_with_repeated_multiplication() {
        for m in (2..=10_000u64).step_by(7).chain(9_990..=10_000) {
            for x in [2u64, 3, 10, m - 1] {
                if gcd(x, m) != 1 {
                    continue;
                }
                let r = residue_order(Residue::from_u64(x, m)).unwrap();
                assert_eq!(r, brute_order(x, m), "x = {x}, m = {m}");
                assert_eq!(Residue::from_u64(x, m).pow(r).value(), 1 % m);
            }
        }
    }

    #[test]
    fn one_based_representative() {
        assert_eq!(Residue::new(0, 5).rep_one_based(), 5);
        assert_eq!(Residue::new(-1, 5).rep_one_based(), 4);
        assert_eq!(Residue::new(6, 5).rep_one_based(), 1);
    }

    #[test]
    fn inverse_roundtrip() {
        let x = Residue::new(7, 40);
        assert_eq!(x.mul(x.inverse().unwrap()).value(), 1);
        assert!(Residue::new(4, 40).inverse().is_err());
    }
}
