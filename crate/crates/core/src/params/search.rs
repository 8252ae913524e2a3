//! Construction of an integer N with prescribed divisibility of the order of l.
//!
//! N is a product of pairwise coprime pieces M_0, M_1, ..., one per prime
//! power of s. M_0 = A·B with A | l^{2^{t_0−2}} + 1 and B | l^{2^{t_0−1}} + 1
//! forces the 2-part of the order; each later M_i is a prime dividing
//! (l^{p^t} − 1)/(l^{p^{t−1}} − 1), forcing the p_i-part. Every choice is the
//! smallest admissible one, and the final claims are re-derived from scratch.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::primes::{big_prime_divisors_rho, factor, is_prime};
use crate::arith::residue::multiplicative_order;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct FindNOptions {
    /// Trial-division limit before the cofactor goes to rho.
    pub trial_bound: u64,
    /// Rho iterations allowed per composite cofactor.
    pub rho_iterations: u64,
    /// Largest exponent t tried for any prime of s.
    pub max_t: u32,
}

impl Default for FindNOptions {
    fn default() -> Self {
        Self { trial_bound: 1_000_000, rho_iterations: 4_000_000, max_t: 40 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorStep {
    /// The prime of s handled by this step (2 for M_0).
    pub p: u64,
    /// Its exponent in s.
    pub a: u32,
    pub t: u32,
    pub m: BigUint,
    /// Prime factors of M (A and B for the first step).
    pub primes: Vec<BigUint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NSearchReport {
    pub l: u64,
    pub s: u64,
    pub avoid: Vec<u64>,
    pub n: BigUint,
    pub r: u64,
    pub steps: Vec<FactorStep>,
    pub transcript: Vec<String>,
}

pub fn find_n(l: u64, s: u64, avoid: &[u64]) -> Result<NSearchReport> {
    find_n_with(l, s, avoid, &FindNOptions::default())
}

/// Order of l modulo q, or `None` when q = l.
fn order_mod(l: u64, q: u64) -> Option<u64> {
    if q == l {
        None
    } else if q == 2 {
        Some(1)
    } else {
        multiplicative_order(l, q).ok()
    }
}

fn is_power_of(x: u64, p: u64) -> bool {
    let mut x = x;
    while x.is_multiple_of(p) {
        x /= p;
    }
    x == 1
}

/// For every q in `set`: either ord_q(l) is not a power of p (this includes
/// q = l, which never divides l^k − 1), or ord_q(l) divides p^e.
fn exponent_admissible(l: u64, p: u64, e: u32, set: &BTreeSet<u64>) -> bool {
    set.iter().all(|&q| match order_mod(l, q) {
        None => true,
        Some(o) => !is_power_of(o, p) || p.checked_pow(e).is_some_and(|pe| pe % o == 0),
    })
}

/// Smallest prime divisor of `n` accepted by `ok`, using that every prime
/// divisor of `n` other than those in `strip` is ≡ 1 (mod `step`).
fn smallest_qualifying_prime(
    n: &BigUint,
    strip: &[u64],
    step: u64,
    ok: impl Fn(&BigUint) -> bool,
    opts: &FindNOptions,
) -> Result<Option<BigUint>> {
    let mut rest = n.clone();
    // Stripped primes never qualify for the callers (2 is even, p is not > p).
    for &q in strip {
        while !rest.is_zero() && (&rest % q).is_zero() {
            rest /= q;
        }
    }
    let mut d = step + 1;
    while d <= opts.trial_bound {
        let db = BigUint::from(d);
        if &db * &db > rest {
            break;
        }
        if (&rest % d).is_zero() {
            // d is prime: smaller prime factors were already divided out.
            if ok(&db) {
                return Ok(Some(db));
            }
            while (&rest % d).is_zero() {
                rest /= d;
            }
        }
        d += step;
    }
    if rest.is_one() {
        return Ok(None);
    }
    let rest_primes = big_prime_divisors_rho(&rest, opts.rho_iterations).ok_or_else(|| {
        Error::BudgetExceeded(format!(
            "composite cofactor of {} bits resisted trial division to {} and {} rho steps",
            rest.bits(),
            opts.trial_bound,
            opts.rho_iterations
        ))
    })?;
    Ok(rest_primes.into_iter().find(|q| ok(q)))
}

pub fn find_n_with(l: u64, s: u64, avoid: &[u64], opts: &FindNOptions) -> Result<NSearchReport> {
    if !is_prime(l) {
        return Err(Error::NotPrime(l));
    }
    if s == 0 {
        return Err(Error::InvalidParameter("s must be positive".into()));
    }
    if let Some(&q) = avoid.iter().find(|&&q| !is_prime(q)) {
        return Err(Error::NotPrime(q));
    }
    if avoid.contains(&l) {
        return Err(Error::InvalidParameter(format!(
            "l = {l} in the avoid set: the construction's conditions can conflict"
        )));
    }
    let avoid_set: BTreeSet<u64> = avoid.iter().copied().collect();
    let lb = BigUint::from(l);
    let mut transcript = Vec::new();
    let mut steps = Vec::new();

    let fact = factor(s);
    let a0 = fact.iter().find(|&&(p, _)| p == 2).map_or(0, |&(_, e)| e);

    // Step 0: the 2-part.
    let mut s0 = avoid_set.clone();
    s0.insert(2);
    let t0 = (a0.max(2) + 1..=opts.max_t)
        .find(|&t| exponent_admissible(l, 2, t - 3, &s0))
        .ok_or_else(|| Error::BudgetExceeded(format!("no admissible t_0 <= {}", opts.max_t)))?;
    let e_a = 1u32 << (t0 - 2);
    let e_b = 1u32 << (t0 - 1);
    let val_a = lb.pow(e_a) + 1u32;
    let val_b = lb.pow(e_b) + 1u32;
    let odd = |q: &BigUint| q.is_odd();
    let a = smallest_qualifying_prime(&val_a, &[2], 1u64 << (t0 - 1), odd, opts)?
        .ok_or_else(|| Error::CheckFailed(format!("{l}^{e_a}+1 has no odd prime divisor")))?;
    let b = smallest_qualifying_prime(&val_b, &[2], 1u64 << t0, odd, opts)?
        .ok_or_else(|| Error::CheckFailed(format!("{l}^{e_b}+1 has no odd prime divisor")))?;
    transcript.push(format!("t_0 = {t0}"));
    transcript.push(format!("A = {a} divides {l}^{e_a} + 1"));
    transcript.push(format!("B = {b} divides {l}^{e_b} + 1"));
    let m0 = &a * &b;
    let mut used: BTreeSet<BigUint> = [a.clone(), b.clone()].into_iter().collect();
    steps.push(FactorStep { p: 2, a: a0, t: t0, m: m0.clone(), primes: vec![a, b] });
    let mut n = m0;
    let mut r: u64 = 1 << t0;

    // Steps i ≥ 1: odd primes of s.
    for &(p, ai) in fact.iter().filter(|&&(p, _)| p != 2) {
        let mut si: BTreeSet<u64> = avoid_set.clone();
        si.extend([p, l, 2]);
        // Earlier pieces are primes we chose; those beyond u64 have order far
        // above any power of p we try, so they satisfy the first alternative.
        si.extend(used.iter().filter_map(|q| q.to_u64()));
        let t = ((ai + 1).max(2)..=opts.max_t)
            .find(|&t| {
                let big_enough = p.checked_pow(t - 2).map(|e| lb.pow(e as u32) > BigUint::from(p)).unwrap_or(true);
                big_enough && exponent_admissible(l, p, t - 2, &si)
            })
            .ok_or_else(|| Error::BudgetExceeded(format!("no admissible t for p = {p}")))?;
        let hi = p
            .checked_pow(t)
            .filter(|&e| e <= u32::MAX as u64)
            .ok_or_else(|| Error::BudgetExceeded(format!("exponent {p}^{t} too large")))? as u32;
        let lo = hi / p as u32;
        let quotient = (lb.pow(hi) - 1u32) / (lb.pow(lo) - 1u32);
        let si_big: BTreeSet<BigUint> = si.iter().map(|&q| BigUint::from(q)).collect();
        let pb = BigUint::from(p);
        let admissible = |q: &BigUint| q.is_odd() && q > &pb && !si_big.contains(q) && !used.contains(q);
        let mi = smallest_qualifying_prime(&quotient, &[p], p.pow(t), admissible, opts)?
            .ok_or_else(|| Error::CheckFailed(format!("no admissible prime divisor for p = {p}, t = {t}")))?;
        transcript.push(format!("t for p = {p}: {t}"));
        transcript.push(format!("M = {mi} divides ({l}^{hi} - 1)/({l}^{lo} - 1)"));
        used.insert(mi.clone());
        n *= &mi;
        r = r.checked_mul(p.pow(t)).ok_or_else(|| Error::BudgetExceeded("order exceeds 64 bits".into()))?;
        steps.push(FactorStep { p, a: ai, t, m: mi.clone(), primes: vec![mi] });
    }

    let report = NSearchReport { l, s, avoid: avoid.to_vec(), n, r, steps, transcript };
    let verified = verify_report(&report)?;
    Ok(NSearchReport { transcript: verified, ..report })
}

/// Independent re-derivation of the postconditions; returns the transcript
/// extended with the certifying facts.
fn verify_report(rep: &NSearchReport) -> Result<Vec<String>> {
    let mut out = rep.transcript.clone();
    let n = &rep.n;
    let lb = BigUint::from(rep.l);
    let order = match n.to_u64() {
        Some(small) => multiplicative_order(rep.l, small)?,
        None => big_order(&lb, n, rep.r)?,
    };
    if order != rep.r {
        return Err(Error::CheckFailed(format!("order of {} mod {n} is {order}, not {}", rep.l, rep.r)));
    }
    out.push(format!("ord_{n}({}) = {order}", rep.l));
    if order % rep.s != 0 {
        return Err(Error::CheckFailed(format!("{} does not divide {order}", rep.s)));
    }
    out.push(format!("{} | {order}", rep.s));
    if (n % rep.l).is_zero() {
        return Err(Error::CheckFailed(format!("{} divides N", rep.l)));
    }
    for &q in &rep.avoid {
        if (n % q).is_zero() {
            return Err(Error::CheckFailed(format!("avoided prime {q} divides N")));
        }
    }
    if order % 2 == 0 {
        let half = lb.modpow(&BigUint::from(order / 2), n);
        if (half + 1u32) % n == BigUint::zero() {
            return Err(Error::CheckFailed(format!("N divides {}^{} + 1", rep.l, order / 2)));
        }
        out.push(format!("{n} does not divide {}^{} + 1", rep.l, order / 2));
    }
    Ok(out)
}

/// Order of l modulo a big N, given a multiple `r` of it.
fn big_order(l: &BigUint, n: &BigUint, r: u64) -> Result<u64> {
    if l.modpow(&BigUint::from(r), n) != BigUint::one() {
        return Err(Error::CheckFailed(format!("l^{r} is not 1 mod N")));
    }
    let mut ord = r;
    for (p, _) in factor(r) {
        while ord.is_multiple_of(p) && l.modpow(&BigUint::from(ord / p), n).is_one() {
            ord /= p;
        }
    }
    Ok(ord)
}
