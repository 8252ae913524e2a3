use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::arith::primes::is_prime;
use crate::{Error, Result};

/// Largest prime accepted by the naive counter.
pub const MAX_COUNT_PRIME: u64 = 1_000_000;

/// y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6 over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticCurveQ {
    pub a: [i64; 5],
    pub discriminant: BigInt,
}

impl EllipticCurveQ {
    pub fn new(a1: i64, a2: i64, a3: i64, a4: i64, a6: i64) -> Result<Self> {
        let [b2, b4, b6, b8] = b_invariants(&[a1, a2, a3, a4, a6]);
        let disc = -(&b2 * &b2 * &b8) - BigInt::from(8) * &b4 * &b4 * &b4 - BigInt::from(27) * &b6 * &b6
            + BigInt::from(9) * &b2 * &b4 * &b6;
        if disc.is_zero() {
            return Err(Error::InvalidParameter("singular curve: discriminant 0".into()));
        }
        Ok(Self { a: [a1, a2, a3, a4, a6], discriminant: disc })
    }

    pub fn from_slice(a: &[i64]) -> Result<Self> {
        match a {
            &[a1, a2, a3, a4, a6] => Self::new(a1, a2, a3, a4, a6),
            _ => Err(Error::InvalidParameter(format!("expected 5 coefficients, got {}", a.len()))),
        }
    }

    /// Twist of a curve with a1 = a3 = 0 by d:
    /// y² = x³ + d·a2·x² + d²·a4·x + d³·a6.
    pub fn quadratic_twist(&self, d: i64) -> Result<Self> {
        let [a1, a2, a3, a4, a6] = self.a;
        if a1 != 0 || a3 != 0 {
            return Err(Error::InvalidParameter("twist needs a1 = a3 = 0".into()));
        }
        Self::new(0, a2 * d, 0, a4 * d * d, a6 * d * d * d)
    }

    pub fn has_good_reduction(&self, p: u64) -> bool {
        p != 2 && !(&self.discriminant % p).is_zero()
    }
}

fn b_invariants(a: &[i64; 5]) -> [BigInt; 4] {
    let [a1, a2, a3, a4, a6] = a.map(BigInt::from);
    let b2 = &a1 * &a1 + 4 * &a2;
    let b4 = 2 * &a4 + &a1 * &a3;
    let b6 = &a3 * &a3 + 4 * &a6;
    let b8 = &a1 * &a1 * &a6 + 4 * &a2 * &a6 - &a1 * &a3 * &a4 + &a2 * &a3 * &a3 - &a4 * &a4;
    [b2, b4, b6, b8]
}

/// a_p = p + 1 − #E(F_p), counting x-values through the quadratic character
/// of the completed-square right-hand side 4x³ + b2·x² + 2b4·x + b6.
pub fn count_points_ap(curve: &EllipticCurveQ, p: u64) -> Result<i64> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not an odd prime")));
    }
    if p > MAX_COUNT_PRIME {
        return Err(Error::InvalidParameter(format!("{p} exceeds the naive-count limit")));
    }
    if !curve.has_good_reduction(p) {
        return Err(Error::BadReduction(p));
    }
    let [b2, b4, b6, _] = b_invariants(&curve.a);
    let pb = BigInt::from(p);
    let red = |x: &BigInt| {
        let r = x % &pb;
        (if r < BigInt::zero() { r + &pb } else { r }).to_u64().unwrap()
    };
    let (b2, b4, b6) = (red(&b2), red(&b4), red(&b6));
    let mut chi = vec![-1i8; p as usize];
    chi[0] = 0;
    for y in 1..=p / 2 {
        chi[(y * y % p) as usize] = 1;
    }
    let mut count: i64 = 1;
    for x in 0..p {
        let x2 = x * x % p;
        let f = (4 * (x2 * x % p) + b2 * x2 + 2 * b4 % p * x + b6) % p;
        count += 1 + chi[f as usize] as i64;
    }
    let ap = p as i64 + 1 - count;
    debug_assert!((ap * ap) as u64 <= 4 * p, "Hasse bound violated");
    Ok(ap)
}

/// Good reduction is ordinary exactly when p ∤ a_p.
pub fn is_ordinary(ap: i64, p: u64) -> bool {
    ap.rem_euclid(p as i64) != 0
}
