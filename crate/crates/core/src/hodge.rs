//! Hodge graded-piece positions for twisted eigenspaces, and the ordinarity
//! predicate comparing Frobenius valuations with Hodge–Tate weights.

use std::collections::BTreeMap;

use num_rational::Rational64;

use crate::arith::primes::gcd;
use crate::params::{CharacterExponents, EigenvalueSet};
use crate::{Error, Result};

/// Representative of x mod N in {1, …, N}.
pub fn rep(x: i64, modulus: u64) -> u64 {
    let r = x.rem_euclid(modulus as i64) as u64;
    if r == 0 {
        modulus
    } else {
        r
    }
}

fn check_twist(modulus: u64, a: u64) -> Result<()> {
    if gcd(a % modulus, modulus) != 1 {
        return Err(Error::InvalidParameter(format!("twist {a} is not a unit mod {modulus}")));
    }
    Ok(())
}

/// j(d) = (Σ_i rep(a·a_i + d)) / N − 1 for d = 1..N.
pub fn j_profile(exp: &CharacterExponents, a: u64) -> Result<Vec<i64>> {
    let n = exp.modulus;
    check_twist(n, a)?;
    (1..=n)
        .map(|d| {
            let s: u64 = exp.entries.iter().map(|&ai| rep((a * ai + d) as i64, n)).sum();
            if !s.is_multiple_of(n) {
                return Err(Error::MalformedExponents(format!(
                    "representative sum {s} at d = {d} is not divisible by {n}"
                )));
            }
            Ok((s / n) as i64 - 1)
        })
        .collect()
}

/// The same sequence from j(1) by stepping: each d raises j by one, minus the
/// number of entries with a·a_i + d ≡ 0.
pub fn j_recursion(exp: &CharacterExponents, a: u64, start: i64) -> Vec<i64> {
    let n = exp.modulus;
    let mut out = vec![start];
    for d in 1..n {
        let wraps = exp.entries.iter().filter(|&&ai| (a * ai + d).is_multiple_of(n)).count() as i64;
        out.push(out.last().unwrap() + 1 - wraps);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistProfile {
    pub twist: u64,
    pub base: i64,
    /// Eigenvalue i ↦ graded position j.
    pub positions: BTreeMap<u64, i64>,
    pub j: Vec<i64>,
}

impl TwistProfile {
    /// Σ (position − M), which is n(n−1)/2 for a permutation of 0..n−1.
    pub fn offset_sum(&self) -> i64 {
        self.positions.values().map(|p| p - self.base).sum()
    }
}

pub fn hodge_positions(exp: &CharacterExponents, b: &EigenvalueSet, a: u64) -> Result<TwistProfile> {
    let n = exp.modulus;
    if b.modulus() != n {
        return Err(Error::InvalidParameter("exponents and eigenvalues disagree on N".into()));
    }
    let j = j_profile(exp, a)?;
    let base = j[0];
    if j_recursion(exp, a, base) != j {
        return Err(Error::CheckFailed(format!("j recursion disagrees with the direct formula at twist {a}")));
    }
    let ab: Vec<u64> = b.members().iter().map(|&x| rep((a * x) as i64, n)).collect();
    for d in 1..n {
        let up = j[d as usize] == j[d as usize - 1] + 1;
        if up != ab.contains(&d) {
            return Err(Error::CheckFailed(format!("j steps by one at d = {d} only if d is in a·b (twist {a})")));
        }
    }
    let mut positions = BTreeMap::new();
    for (&i, &ai) in b.members().iter().zip(&ab) {
        let count = ab.iter().filter(|&&x| x < ai).count() as i64;
        let pos = base + count;
        if j[ai as usize - 1] != pos {
            return Err(Error::CheckFailed(format!(
                "position of {i} is {pos} by counting but j({ai}) = {}",
                j[ai as usize - 1]
            )));
        }
        positions.insert(i, pos);
    }
    let mut sorted: Vec<i64> = positions.values().copied().collect();
    sorted.sort_unstable();
    if sorted != (0..b.len() as i64).map(|k| base + k).collect::<Vec<_>>() {
        return Err(Error::CheckFailed(format!("positions {sorted:?} are not consecutive from {base}")));
    }
    Ok(TwistProfile { twist: a, base, positions, j })
}

/// Whether the multisets of positions for a and −a coincide.
pub fn duality_positions_match(exp: &CharacterExponents, b: &EigenvalueSet, a: u64) -> Result<bool> {
    let n = exp.modulus;
    let p = hodge_positions(exp, b, a)?;
    let q = hodge_positions(exp, b, n - a % n)?;
    let mut x: Vec<i64> = p.positions.values().copied().collect();
    let mut y: Vec<i64> = q.positions.values().copied().collect();
    x.sort_unstable();
    y.sort_unstable();
    Ok(x == y)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdinarityInstance {
    /// One row per embedding, each non-increasing.
    pub weights: Vec<Vec<i64>>,
    /// Non-increasing.
    pub valuations: Vec<Rational64>,
}

/// True iff val_i = Σ_τ (a_{τ,i} + n − i) for every i.
pub fn ordinary_predicate(inst: &OrdinarityInstance) -> Result<bool> {
    let n = inst.valuations.len();
    if inst.valuations.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidParameter("valuations must be sorted non-increasing".into()));
    }
    for row in &inst.weights {
        if row.len() != n {
            return Err(Error::InvalidParameter(format!("weight row has length {}, expected {n}", row.len())));
        }
        if row.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter("weight rows must be non-increasing".into()));
        }
    }
    Ok((0..n).all(|i| {
        let target: i64 = inst.weights.iter().map(|row| row[i] + (n - 1 - i) as i64).sum();
        inst.valuations[i] == Rational64::from_integer(target)
    }))
}
