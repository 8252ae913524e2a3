use std::collections::BTreeSet;
use std::fmt;

use crate::arith::primes::gcd;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityCase {
    NEquals2,
    OddN,
    EvenN,
}

impl fmt::Display for ParityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParityCase::NEquals2 => "n-equals-2",
            ParityCase::OddN => "odd-n",
            ParityCase::EvenN => "even-n",
        })
    }
}

/// The exponent vector (a_1, ..., a_N) of the character χ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterExponents {
    pub n: u64,
    pub modulus: u64,
    pub entries: Vec<u64>,
    pub case: ParityCase,
    /// Set when N ≤ 100n + 100, where α-stability is not guaranteed a priori.
    pub small_n_warning: bool,
}

/// A set of distinct nonzero residues mod N, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EigenvalueSet {
    modulus: u64,
    members: Vec<u64>,
}

impl EigenvalueSet {
    /// Validates distinctness, nonzero members and Σ b ≡ 0 (mod N).
    pub fn new(modulus: u64, members: &[i64]) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidParameter(format!("modulus {modulus} too small")));
        }
        let set: BTreeSet<u64> = members.iter().map(|&b| b.rem_euclid(modulus as i64) as u64).collect();
        if set.len() != members.len() {
            return Err(Error::InvalidParameter("eigenvalue residues must be distinct".into()));
        }
        if set.contains(&0) {
            return Err(Error::InvalidParameter("eigenvalue residues must be nonzero".into()));
        }
        if set.iter().sum::<u64>() % modulus != 0 {
            return Err(Error::InvalidParameter(format!("eigenvalue residues must sum to 0 mod {modulus}")));
        }
        Ok(Self { modulus, members: set.into_iter().collect() })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, b: u64) -> bool {
        self.members.binary_search(&(b % self.modulus)).is_ok()
    }

    /// Whether {−b} = {b}.
    pub fn is_minus_stable(&self) -> bool {
        self.scaled(self.modulus - 1) == self.members
    }

    /// Sorted {α·b}.
    pub fn scaled(&self, alpha: u64) -> Vec<u64> {
        let mut v: Vec<u64> = self.members.iter().map(|&b| b * alpha % self.modulus).collect();
        v.sort_unstable();
        v
    }
}

fn case_of(n: u64) -> ParityCase {
    match n {
        2 => ParityCase::NEquals2,
        _ if n % 2 == 1 => ParityCase::OddN,
        _ => ParityCase::EvenN,
    }
}

/// Closed-form eigenvalue set for the case of `n`, as a list (may contain
/// collisions when N is too small; callers validate).
pub fn closed_form_b_set(n: u64, modulus: u64) -> Vec<u64> {
    let big = modulus;
    match case_of(n) {
        ParityCase::NEquals2 => vec![(big - 1) / 2, big.div_ceil(2)],
        ParityCase::OddN => {
            let mut v = vec![1, 2];
            v.extend((big + 4).saturating_sub(n) / 2..=(big + n).saturating_sub(4) / 2);
            v.push(big.saturating_sub(3));
            v
        }
        ParityCase::EvenN => {
            let mut v = vec![1, 2, 3];
            v.extend((big + 5).saturating_sub(n) / 2..=(big + n).saturating_sub(5) / 2);
            v.push(big.saturating_sub(6));
            v
        }
    }
}

/// Lexicographically first n-subset of {1, …, N−1} summing to 0 mod N.
/// Stands in for the closed form where the exponent construction is invalid.
pub fn first_balanced_subset(n: usize, modulus: u64) -> Option<EigenvalueSet> {
    fn go(start: u64, left: usize, sum: u64, modulus: u64, acc: &mut Vec<i64>) -> bool {
        if left == 0 {
            return sum.is_multiple_of(modulus);
        }
        for x in start..modulus {
            acc.push(x as i64);
            if go(x + 1, left - 1, sum + x, modulus, acc) {
                return true;
            }
            acc.pop();
        }
        false
    }
    let mut acc = Vec::new();
    go(1, n, 0, modulus, &mut acc).then(|| EigenvalueSet::new(modulus, &acc).ok()).flatten()
}

/// The derived eigenvalue set when the exponents are valid, else the
/// balanced fallback; the flag says which one was used.
pub fn grid_b_set(n: u64, modulus: u64) -> Option<(EigenvalueSet, bool)> {
    match build_exponents(n, modulus).and_then(|e| derive_b_set(&e)) {
        Ok(b) => Some((b, true)),
        Err(_) => first_balanced_subset(n as usize, modulus).map(|b| (b, false)),
    }
}

fn too_small(n: u64, modulus: u64, why: &str) -> Error {
    Error::NTooSmall(format!("n = {n}, N = {modulus}: {why}"))
}

/// Builds the exponent vector for `(n, N)`.
///
/// For n = 2 the entries are listed in the natural order
/// 1, ..., (N−3)/2, 0, 0, 0, (N+3)/2, ..., N−1; otherwise the sorted nonzero
/// entries come first, followed by the n + 1 zeros.
pub fn build_exponents(n: u64, modulus: u64) -> Result<CharacterExponents> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n = {n} must be at least 2")));
    }
    if modulus.is_multiple_of(2) {
        return Err(Error::NTooSmall(format!("N = {modulus} must be odd")));
    }
    if gcd(modulus, n) != 1 {
        return Err(Error::InvalidParameter(format!("gcd(N, n) must be 1 (N = {modulus}, n = {n})")));
    }
    if modulus < n + 3 {
        return Err(too_small(n, modulus, "fewer residues than the case needs"));
    }
    let big = modulus;
    let case = case_of(n);
    let entries: Vec<u64> = match case {
        ParityCase::NEquals2 => (1..=(big - 3) / 2).chain([0, 0, 0]).chain((big + 3) / 2..big).collect(),
        ParityCase::OddN | ParityCase::EvenN => {
            let (top, skip, lo, hi) = if case == ParityCase::OddN {
                (big - 3, 3, (big + 4 - n) / 2, (big + n - 4) / 2)
            } else {
                if big < 10 {
                    return Err(too_small(n, modulus, "range 1..N−4 does not contain 6"));
                }
                (big - 4, 6, (big + 5 - n) / 2, (big + n - 5) / 2)
            };
            if skip > top || (lo..=hi).contains(&skip) {
                return Err(too_small(n, modulus, "excluded residue collides with the middle gap"));
            }
            if hi > top {
                return Err(too_small(n, modulus, "middle gap leaves the range"));
            }
            (1..=top)
                .filter(|&x| x != skip && !(lo..=hi).contains(&x))
                .chain(std::iter::repeat_n(0, n as usize + 1))
                .collect()
        }
    };
    let exp = CharacterExponents { n, modulus, entries, case, small_n_warning: modulus <= 100 * n + 100 };
    validate(&exp)?;
    Ok(exp)
}

fn validate(exp: &CharacterExponents) -> Result<()> {
    let (n, big) = (exp.n, exp.modulus);
    if exp.entries.len() as u64 != big {
        return Err(too_small(n, big, "wrong number of entries"));
    }
    let zeros = exp.entries.iter().filter(|&&a| a == 0).count() as u64;
    let want = if n == 2 { 3 } else { n + 1 };
    if zeros != want {
        return Err(too_small(n, big, "wrong number of zero entries"));
    }
    let nonzero: BTreeSet<u64> = exp.entries.iter().copied().filter(|&a| a != 0).collect();
    if nonzero.len() as u64 != big - zeros {
        return Err(too_small(n, big, "repeated nonzero entries"));
    }
    if exp.entries.iter().sum::<u64>() % big != 0 {
        return Err(too_small(n, big, "entries do not sum to 0 mod N"));
    }
    let closed: BTreeSet<u64> = closed_form_b_set(n, big).into_iter().collect();
    if closed.len() as u64 != n || closed.contains(&0) {
        return Err(too_small(n, big, "closed-form eigenvalue set degenerates"));
    }
    if scan_b_set(exp) != closed.into_iter().collect::<Vec<_>>() {
        return Err(too_small(n, big, "eigenvalue scan disagrees with the closed form"));
    }
    Ok(())
}

fn scan_b_set(exp: &CharacterExponents) -> Vec<u64> {
    let big = exp.modulus;
    (1..big).filter(|&i| exp.entries.iter().all(|&a| (i + a) % big != 0)).collect()
}

/// Residues i with i + a_j ≢ 0 for every j, by direct scan of Z/NZ.
pub fn derive_b_set(exp: &CharacterExponents) -> Result<EigenvalueSet> {
    let big = exp.modulus;
    let found: Vec<u64> = (0..big).filter(|&i| exp.entries.iter().all(|&a| (i + a) % big != 0)).collect();
    if found.len() as u64 != exp.n {
        return Err(Error::MalformedExponents(format!("expected {} eigenvalues, found {}", exp.n, found.len())));
    }
    let mut closed = closed_form_b_set(exp.n, big);
    closed.sort_unstable();
    if found != closed {
        return Err(Error::MalformedExponents(format!("scan {found:?} differs from closed form {closed:?}")));
    }
    let members: Vec<i64> = found.iter().map(|&b| b as i64).collect();
    EigenvalueSet::new(big, &members).map_err(|e| Error::MalformedExponents(e.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphaStability {
    /// Only α = 1 fixes the set.
    StableOnlyByOne,
    /// Smallest α ≠ 1 with α·b = b.
    Witness(u64),
}

/// Exhaustive scan over (Z/NZ)^× in increasing order.
pub fn check_alpha_stability(b: &EigenvalueSet) -> AlphaStability {
    let big = b.modulus();
    (2..big)
        .filter(|&a| gcd(a, big) == 1)
        .find(|&a| b.scaled(a) == b.members())
        .map_or(AlphaStability::StableOnlyByOne, AlphaStability::Witness)
}
