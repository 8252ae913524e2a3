//! Gauss sums in Z[ζ_{Np}] and the exact identities they satisfy.
//!
//! With g the canonical generator of F_q^×, the multiplicative character is
//! pinned by t(g^{(q−1)/N}) = ζ_N and the additive one by ψ(x) = ζ_p^{c·Tr x}.
//! Then g(a) = −Σ_k ζ_N^{−ak} ψ(g^k). Every identity is checked after
//! clearing denominators, so no fractions appear.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::One;

use crate::arith::primes::{gcd, is_prime, lcm};
use crate::arith::residue::multiplicative_order;
use crate::arith::{CyclotomicInt, Fe, FiniteField};
use crate::params::{CharacterExponents, EigenvalueSet};
use crate::{Error, Result};

pub struct GaussSumContext {
    field: FiniteField,
    modulus: u64,
    c: u64,
    traces: Vec<u64>,
    cache: Vec<OnceLock<CyclotomicInt>>,
}

impl GaussSumContext {
    /// Context for F_{p^f}, characters of order dividing N, ψ-exponent c.
    pub fn new(p: u64, f: u32, modulus: u64, c: u64) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::InvalidParameter(format!("characteristic {p} must be an odd prime")));
        }
        if c.is_multiple_of(p) {
            return Err(Error::InvalidParameter(format!("additive exponent {c} is 0 mod {p}")));
        }
        let field = FiniteField::build(p, f)?;
        let q = field.order();
        if modulus == 0 || (q - 1) % modulus != 0 {
            return Err(Error::NoRootsOfUnity { n: modulus, order: q });
        }
        let g = field.generator();
        let mut traces = Vec::with_capacity((q - 1) as usize);
        let mut x = Fe(1);
        for _ in 0..q - 1 {
            traces.push(field.trace_to_prime(x));
            x = field.mul(x, g);
        }
        let cache = (0..modulus).map(|_| OnceLock::new()).collect();
        Ok(Self { field, modulus, c, traces, cache })
    }

    /// Context for a prime power q given directly.
    pub fn for_order(q: u64, modulus: u64, c: u64) -> Result<Self> {
        let (p, f) = prime_power(q).ok_or_else(|| Error::InvalidParameter(format!("{q} is not a prime power")))?;
        Self::new(p, f, modulus, c)
    }

    pub fn with_additive_exponent(&self, c: u64) -> Result<Self> {
        Self::new(self.p(), self.field.degree(), self.modulus, c)
    }

    pub fn q(&self) -> u64 {
        self.field.order()
    }

    pub fn p(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn conductor(&self) -> u64 {
        self.modulus * self.p()
    }

    pub fn additive_exponent(&self) -> u64 {
        self.c
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn q_big(&self) -> BigInt {
        BigInt::from(self.q())
    }

    /// g(a); a is read mod N.
    pub fn gauss_sum(&self, a: i64) -> CyclotomicInt {
        let n = self.modulus;
        let a = a.rem_euclid(n as i64) as u64;
        self.cache[a as usize]
            .get_or_init(|| {
                let p = self.p();
                let m = n * p;
                let mut counts = vec![0i64; m as usize];
                for (k, &tr) in self.traces.iter().enumerate() {
                    let u = (n - a * (k as u64 % n) % n) % n;
                    let w = self.c % p * tr % p;
                    counts[((p * u + n * w) % m) as usize] -= 1;
                }
                CyclotomicInt::from_exponent_counts(m, &counts).expect("conductor within limits")
            })
            .clone()
    }

    pub fn one(&self) -> CyclotomicInt {
        CyclotomicInt::one(self.conductor()).unwrap()
    }

    /// The automorphism of Z[ζ_{Np}] with ζ_N ↦ ζ_N^α, ζ_p ↦ ζ_p^β.
    pub fn automorphism(&self, x: &CyclotomicInt, alpha: i64, beta: i64) -> Result<CyclotomicInt> {
        let (n, p) = (self.modulus as i64, self.p() as i64);
        // s ≡ α (mod N), s ≡ β (mod p)
        let s = (0..n * p).find(|s| (s - alpha).rem_euclid(n) == 0 && (s - beta).rem_euclid(p) == 0).unwrap();
        x.galois(s)
    }
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    let fs = crate::arith::primes::factor(q);
    match fs.as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

fn product(ctx: &GaussSumContext, xs: impl IntoIterator<Item = CyclotomicInt>) -> CyclotomicInt {
    let mut items: Vec<CyclotomicInt> = xs.into_iter().collect();
    if items.is_empty() {
        return ctx.one();
    }
    // Pairwise tree keeps operand sizes balanced and the order fixed.
    while items.len() > 1 {
        let mut next = Vec::with_capacity(items.len().div_ceil(2));
        for pair in items.chunks(2) {
            next.push(match pair {
                [a, b] => a * b,
                [a] => a.clone(),
                _ => unreachable!(),
            });
        }
        items = next;
    }
    items.pop().unwrap()
}

/// Sign ε with g(a)·g(−a) = ε·q, or an error if the product is not ±q.
pub fn pairing_sign(ctx: &GaussSumContext, a: i64) -> Result<i8> {
    let prod = &ctx.gauss_sum(a) * &ctx.gauss_sum(-a);
    match prod.as_integer() {
        Some(v) if v == ctx.q_big() => Ok(1),
        Some(v) if v == -ctx.q_big() => Ok(-1),
        _ => Err(Error::CheckFailed(format!("g({a})·g({}) is not ±{}", -a, ctx.q()))),
    }
}

/// Predicted pairing sign (−1)^{a(q−1)/N}.
pub fn predicted_pairing_sign(ctx: &GaussSumContext, a: i64) -> i8 {
    let e = (a.rem_euclid(ctx.modulus as i64) as u64) * ((ctx.q() - 1) / ctx.modulus);
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductIdentity {
    /// ε in ∏_{s≠0} g(s) = ε·q^{(N−1)/2}; `None` when neither sign fits.
    pub sign: Option<i8>,
    /// (∏_{s≠0} g(s))² = q^{N−1}.
    pub square_holds: bool,
}

pub fn full_product_identity(ctx: &GaussSumContext) -> ProductIdentity {
    let n = ctx.modulus;
    let prod = product(ctx, (1..n as i64).map(|s| ctx.gauss_sum(s)));
    let target = ctx.q_big().pow(((n - 1) / 2) as u32);
    let sign = match prod.as_integer() {
        Some(v) if n % 2 == 1 && v == target => Some(1),
        Some(v) if n % 2 == 1 && v == -target.clone() => Some(-1),
        _ => None,
    };
    let sq = &prod * &prod;
    let square_holds = sq.as_integer() == Some(ctx.q_big().pow((n - 1) as u32));
    ProductIdentity { sign, square_holds }
}

#[derive(Clone, Debug)]
pub struct IntegralProductReport {
    pub holds: bool,
    pub lhs: CyclotomicInt,
    pub rhs: CyclotomicInt,
}

fn check_consistent(ctx: &GaussSumContext, exp: &CharacterExponents, b: &EigenvalueSet) -> Result<()> {
    if exp.modulus != ctx.modulus || b.modulus() != ctx.modulus {
        return Err(Error::InvalidParameter("exponents, eigenvalues and context disagree on N".into()));
    }
    Ok(())
}

/// (∏_j ∏_i g(a_i + b_j))·q^{n(n−1)/2} = (∏_j g(b_j))^n · q^{n(N−1)/2}.
pub fn integral_product_check(
    ctx: &GaussSumContext,
    exp: &CharacterExponents,
    b: &EigenvalueSet,
) -> Result<IntegralProductReport> {
    check_consistent(ctx, exp, b)?;
    let n = b.len() as u32;
    let big_n = ctx.modulus as u32;
    let q = ctx.q_big();
    let lhs_prod = product(
        ctx,
        b.members()
            .iter()
            .flat_map(|&bj| exp.entries.iter().map(move |&ai| (ai + bj) as i64))
            .map(|s| ctx.gauss_sum(s)),
    );
    let lhs = lhs_prod.scale(&q.pow(n * (n - 1) / 2));
    let pb = product(ctx, b.members().iter().map(|&bj| ctx.gauss_sum(bj as i64)));
    let rhs = pb.pow(n as u64).scale(&q.pow(n * (big_n - 1) / 2));
    Ok(IntegralProductReport { holds: lhs == rhs, lhs, rhs })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisReport {
    /// Values of β (ζ_p ↦ ζ_p^β) tested, all with ζ_N fixed.
    pub checked: Vec<u64>,
    pub failures: Vec<u64>,
    /// For n = 2: whether {b} = {−b} and ζ_N ↦ ζ_N^{−1} fixes the product.
    pub conjugation: Option<(bool, bool)>,
}

impl GaloisReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty() && self.conjugation.is_none_or(|(stable, fixed)| !stable || fixed)
    }
}

/// ∏_j g(b_j) is fixed by every ζ_p ↦ ζ_p^β (ζ_N fixed); for n = 2 also by
/// ζ_N ↦ ζ_N^{−1}.
pub fn galois_invariance(ctx: &GaussSumContext, b: &EigenvalueSet) -> Result<GaloisReport> {
    if b.members().iter().sum::<u64>() % ctx.modulus != 0 {
        return Err(Error::InvalidParameter("eigenvalues must sum to 0 mod N".into()));
    }
    let prod = product(ctx, b.members().iter().map(|&x| ctx.gauss_sum(x as i64)));
    let mut checked = Vec::new();
    let mut failures = Vec::new();
    for beta in 1..ctx.p() {
        checked.push(beta);
        if ctx.automorphism(&prod, 1, beta as i64)? != prod {
            failures.push(beta);
        }
    }
    let conjugation = if b.len() == 2 {
        let stable = b.is_minus_stable();
        let fixed = ctx.automorphism(&prod, -1, 1)? == prod;
        Some((stable, fixed))
    } else {
        None
    };
    Ok(GaloisReport { checked, failures, conjugation })
}

/// ζ_N ↦ ζ_N^α sends g(a) to g(αa) for every unit α and every a.
pub fn galois_permutes_gauss_sums(ctx: &GaussSumContext) -> Result<bool> {
    let n = ctx.modulus as i64;
    for alpha in (1..n).filter(|&a| gcd(a as u64, n as u64) == 1) {
        for a in 0..n {
            if ctx.automorphism(&ctx.gauss_sum(a), alpha, 1)? != ctx.gauss_sum(alpha * a) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// S_i = ∏_j g(a_j + i), together with S_i / q.
fn eigen_scalars(
    ctx: &GaussSumContext,
    exp: &CharacterExponents,
    b: &EigenvalueSet,
) -> Result<Vec<(u64, CyclotomicInt, CyclotomicInt)>> {
    let q = ctx.q_big();
    b.members()
        .iter()
        .map(|&i| {
            let s = product(ctx, exp.entries.iter().map(|&a| ctx.gauss_sum((a + i) as i64)));
            let scalar = s
                .exact_div(&q)
                .ok_or_else(|| Error::IntegralityViolated(format!("q does not divide the eigenvalue-{i} product")))?;
            Ok((i, s, scalar))
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct FrobeniusScalarReport {
    /// (i, ∏_j g(a_j + i), power of q to divide by).
    pub per_eigenvalue: Vec<(u64, CyclotomicInt, u32)>,
    /// The determinant q^{−n}·∏∏ g, as an element of Z[ζ_N].
    pub determinant: CyclotomicInt,
    /// Whether ∏_i (S_i / q) equals the determinant computed in one pass.
    pub orders_agree: bool,
    pub l: u64,
    /// Degree L of the target field F_{l^L}, L = lcm(2, ord_N(l)).
    pub target_degree: u32,
    pub image: Fe,
    pub member: bool,
    pub interpretation: &'static str,
}

pub const MEMBERSHIP_READING: &str =
    "target group read as the n-th powers of the multiplicative group of F_{l^lcm(2,r)}";

pub fn frobenius_det_membership(
    ctx: &GaussSumContext,
    exp: &CharacterExponents,
    b: &EigenvalueSet,
    l: u64,
) -> Result<FrobeniusScalarReport> {
    check_consistent(ctx, exp, b)?;
    if !is_prime(l) {
        return Err(Error::NotPrime(l));
    }
    if l == ctx.p() || ctx.conductor().is_multiple_of(l) {
        return Err(Error::InvalidParameter(format!("l = {l} must not divide N·p = {}", ctx.conductor())));
    }
    let n = b.len() as u64;
    let q = ctx.q_big();
    let scalars = eigen_scalars(ctx, exp, b)?;
    let full = product(ctx, scalars.iter().map(|(_, s, _)| s.clone()));
    let det = full
        .exact_div(&q.pow(n as u32))
        .ok_or_else(|| Error::IntegralityViolated("q^n does not divide the full product".into()))?;
    let by_parts = product(ctx, scalars.iter().map(|(_, _, sc)| sc.clone()));
    let orders_agree = by_parts == det;
    let det_n = det.descend(ctx.modulus)?;
    let r = multiplicative_order(l, ctx.modulus)?;
    let big_l = lcm(2, r) as u32;
    let target = FiniteField::build(l, big_l)?;
    let image = det_n.reduce_mod_prime(&target)?;
    let order = target.order() - 1;
    let member = image != Fe(0) && target.pow(image, order / gcd(n, order)) == Fe(1);
    Ok(FrobeniusScalarReport {
        per_eigenvalue: scalars.into_iter().map(|(i, s, _)| (i, s, 1)).collect(),
        determinant: det_n,
        orders_agree,
        l,
        target_degree: big_l,
        image,
        member,
        interpretation: MEMBERSHIP_READING,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiReport {
    pub scalars_agree: bool,
    /// Whether g(1) itself changes between the two additive characters.
    pub single_sum_differs: bool,
    pub exponents: (u64, u64),
}

/// The per-eigenvalue scalars q^{−1}∏_j g(a_j + i) for ψ-exponents c and 2c.
pub fn psi_independence(ctx: &GaussSumContext, exp: &CharacterExponents, b: &EigenvalueSet) -> Result<PsiReport> {
    check_consistent(ctx, exp, b)?;
    let other_c = if (2 * ctx.c).is_multiple_of(ctx.p()) { ctx.c + 1 } else { 2 * ctx.c };
    let other = ctx.with_additive_exponent(other_c)?;
    let s1 = eigen_scalars(ctx, exp, b)?;
    let s2 = eigen_scalars(&other, exp, b)?;
    let scalars_agree = s1.iter().zip(&s2).all(|(x, y)| x.2 == y.2);
    Ok(PsiReport {
        scalars_agree,
        single_sum_differs: ctx.gauss_sum(1) != other.gauss_sum(1),
        exponents: (ctx.c, other_c),
    })
}

/// Convenience: BigInt q^e.
pub fn q_power(ctx: &GaussSumContext, e: u32) -> BigInt {
    if e == 0 {
        BigInt::one()
    } else {
        ctx.q_big().pow(e)
    }
}
