use crate::arith::primes::is_prime;
use crate::{Error, Result};

use super::elliptic::{count_points_ap, is_ordinary, EllipticCurveQ, MAX_COUNT_PRIME};

/// Conditions that the search cannot decide and reports as assumed.
pub const UNVERIFIED_CONDITIONS: [&str; 3] = [
    "l' unramified in F",
    "mod-l' image of E is all of GL_2 over the normal closure of F",
    "some sigma outside G_F(zeta_l') acts by a scalar",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LPrimeCondition {
    AboveBound,
    GoodReduction,
    Ordinary,
}

impl LPrimeCondition {
    pub fn name(self) -> &'static str {
        match self {
            LPrimeCondition::AboveBound => "l' > 2ln+5",
            LPrimeCondition::GoodReduction => "good reduction",
            LPrimeCondition::Ordinary => "ordinary (a_l' != 0 mod l')",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    pub candidate: u64,
    pub failed: Vec<LPrimeCondition>,
    pub ap: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPrimeReport {
    pub l_prime: u64,
    pub ap: i64,
    pub bound: u64,
    pub rejected: Vec<Rejection>,
    pub unverified: Vec<&'static str>,
}

/// Smallest prime l′ ≤ budget with l′ ≡ 1 (mod N), l′ > 2ln + 5, good and
/// ordinary reduction of `curve` at l′. Candidates are the primes ≡ 1 (mod N)
/// in increasing order; each rejected one records the conditions it failed.
pub fn find_l_prime(modulus: u64, l: u64, n: u64, curve: &EllipticCurveQ, budget: u64) -> Result<LPrimeReport> {
    if !is_prime(l) {
        return Err(Error::NotPrime(l));
    }
    if modulus == 0 {
        return Err(Error::InvalidParameter("N must be positive".into()));
    }
    let bound = 2 * l * n + 5;
    let mut rejected = Vec::new();
    let mut last = None;
    let mut cand = 1 + modulus;
    while cand <= budget {
        if cand % 2 == 1 && is_prime(cand) {
            last = Some(cand);
            let mut failed = Vec::new();
            if cand <= bound {
                failed.push(LPrimeCondition::AboveBound);
            }
            let mut ap = None;
            if !curve.has_good_reduction(cand) {
                failed.push(LPrimeCondition::GoodReduction);
            } else if cand <= MAX_COUNT_PRIME {
                let a = count_points_ap(curve, cand)?;
                ap = Some(a);
                if !is_ordinary(a, cand) {
                    failed.push(LPrimeCondition::Ordinary);
                }
            } else {
                return Err(Error::BudgetExceeded(format!("candidate {cand} is beyond the naive point-count limit")));
            }
            if failed.is_empty() {
                return Ok(LPrimeReport {
                    l_prime: cand,
                    ap: ap.unwrap(),
                    bound,
                    rejected,
                    unverified: UNVERIFIED_CONDITIONS.to_vec(),
                });
            }
            rejected.push(Rejection { candidate: cand, failed, ap });
        }
        cand += modulus;
    }
    Err(Error::BudgetExceeded(match last {
        Some(c) => format!("no l' <= {budget}; last candidate {c}"),
        None => format!("no prime candidate = 1 mod {modulus} up to {budget}"),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_ordinary_prime_for_37a() {
        let e = EllipticCurveQ::new(0, 0, 1, -1, 0).unwrap();
        let r = find_l_prime(5, 3, 2, &e, 10_000).unwrap();
        assert_eq!(r.l_prime, 31);
        assert_eq!(r.ap, -4);
        assert_eq!(r.bound, 17);
        assert_eq!(r.rejected.len(), 1);
        assert_eq!(r.rejected[0].candidate, 11);
        assert_eq!(r.rejected[0].failed, vec![LPrimeCondition::AboveBound]);
    }

    #[test]
    fn budget_exhaustion_names_last_candidate() {
        let e = EllipticCurveQ::new(0, 0, 1, -1, 0).unwrap();
        let err = find_l_prime(5, 3, 2, &e, 20).unwrap_err();
        assert!(err.to_string().contains("last candidate 11"), "{err}");
    }
}
