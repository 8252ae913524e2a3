use crate::arith::primes::gcd;
use crate::arith::FiniteField;
use crate::{Error, Result};

use super::classify::{ImageClassification, Verdict};

/// |SL_n(q)| = q^{n(n−1)/2} ∏_{i=2..n} (q^i − 1), or `None` on overflow.
pub fn sl_order(n: u32, q: u64) -> Option<u128> {
    let q = q as u128;
    let mut order = q.checked_pow(n * (n - 1) / 2)?;
    for i in 2..=n {
        order = order.checked_mul(q.checked_pow(i)? - 1)?;
    }
    Some(order)
}

/// |PSL_n(q)| = |SL_n(q)| / gcd(n, q − 1).
pub fn psl_order(n: u32, q: u64) -> Option<u128> {
    Some(sl_order(n, q)? / gcd(n as u64, q - 1) as u128)
}

/// Isomorphisms between PSL groups of equal order, as (n, q) pairs.
type Coincidence = ((u32, u64), (u32, u64), &'static str);

const EXCEPTIONAL: [Coincidence; 2] =
    [((2, 4), (2, 5), "PSL_2(4) = PSL_2(5) = A_5"), ((2, 7), (3, 2), "PSL_2(7) = PSL_3(2)")];

/// Further coincidences with alternating groups, listed for reports.
pub const ALTERNATING_COINCIDENCES: [&str; 2] = ["PSL_2(9) = A_6", "PSL_4(2) = A_8"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoursatVerdict {
    /// True when the two simple quotients are non-isomorphic, so the
    /// diagonal image is the full product.
    pub surjective: bool,
    pub psl_orders: (u128, u128),
    pub note: String,
}

/// Decides whether SL_n(q1) × SL_n(q2) has no common nontrivial simple
/// quotient, which forces a subgroup surjecting onto both factors to be
/// everything.
pub fn product_goursat_check(
    n: u32,
    c1: &ImageClassification,
    f1: &FiniteField,
    c2: &ImageClassification,
    f2: &FiniteField,
) -> Result<GoursatVerdict> {
    if c1.verdict != Verdict::FullSl || c2.verdict != Verdict::FullSl {
        return Err(Error::Hypothesis(format!(
            "both images must be full SL (got {} and {})",
            c1.verdict.as_str(),
            c2.verdict.as_str()
        )));
    }
    let (l1, l2) = (f1.characteristic(), f2.characteristic());
    if l1 == l2 {
        return Err(Error::Hypothesis(format!("characteristics must differ (both {l1})")));
    }
    if l1.max(l2) <= 10 {
        return Err(Error::Hypothesis(format!("max(l1, l2) = {} must exceed 10", l1.max(l2))));
    }
    let (q1, q2) = (f1.order(), f2.order());
    let o1 = psl_order(n, q1).ok_or_else(|| Error::InvalidParameter("group order overflow".into()))?;
    let o2 = psl_order(n, q2).ok_or_else(|| Error::InvalidParameter("group order overflow".into()))?;
    let exceptional =
        EXCEPTIONAL.iter().find(|(a, b, _)| (*a == (n, q1) && *b == (n, q2)) || (*a == (n, q2) && *b == (n, q1)));
    let (surjective, note) = match exceptional {
        Some((_, _, name)) => (false, format!("exceptional isomorphism {name}")),
        None if o1 == o2 => (false, "equal PSL orders".to_string()),
        None => (true, format!("|PSL_{n}({q1})| = {o1} != |PSL_{n}({q2})| = {o2}")),
    };
    Ok(GoursatVerdict { surjective, psl_orders: (o1, o2), note })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monodromy::classify::{Certificate, Method};

    fn full(order: u64) -> ImageClassification {
        ImageClassification {
            verdict: Verdict::FullSl,
            method: Method::BfsOrder,
            certificate: Certificate::Order(order),
            bfs: None,
            notes: vec![],
        }
    }

    #[test]
    fn orders() {
        assert_eq!(sl_order(2, 11), Some(1320));
        assert_eq!(sl_order(2, 29), Some(24360));
        assert_eq!(sl_order(3, 8), Some(16_482_816));
        assert_eq!(psl_order(2, 7), psl_order(3, 2));
        assert_eq!(psl_order(2, 4), psl_order(2, 5));
    }

    #[test]
    fn sl2_11_vs_31() {
        let f11 = FiniteField::build(11, 1).unwrap();
        let f31 = FiniteField::build(31, 1).unwrap();
        let v = product_goursat_check(2, &full(1320), &f11, &full(29760), &f31).unwrap();
        assert!(v.surjective);
        assert_eq!(v.psl_orders, (660, 14880));
    }

    #[test]
    fn hypotheses_enforced() {
        let f11 = FiniteField::build(11, 1).unwrap();
        let f121 = FiniteField::build(11, 2).unwrap();
        assert!(product_goursat_check(2, &full(1), &f11, &full(1), &f121).is_err());
        let f5 = FiniteField::build(5, 1).unwrap();
        let f7 = FiniteField::build(7, 1).unwrap();
        assert!(product_goursat_check(2, &full(1), &f5, &full(1), &f7).is_err());
    }
}
