//! Finite fields F_{p^k} with a deterministic defining polynomial.
//!
//! Elements are packed into a `u64` as Σ c_i p^i where c_0 + c_1 X + ... is the
//! reduced representative. That packing is also the canonical total order on
//! elements: "smallest element" always means smallest packed integer.
//!
//! The defining polynomial is the lexicographically smallest monic irreducible
//! of degree k, comparing coefficient vectors from the constant term upwards.

use std::fmt;
use std::sync::Arc;

use super::primes::{self, is_prime, mul_mod, pow_mod};
use crate::{Error, Result};

/// Field element in packed form. Only meaningful together with its field.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(pub u64);

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

const TABLE_LIMIT: u64 = 1 << 20;
const ORDER_LIMIT: u64 = 1 << 62;

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct Inner {
    p: u64,
    k: u32,
    order: u64,
    modulus: Vec<u64>,
    powers: Vec<u64>,
    generator: Fe,
    unit_order_primes: Vec<u64>,
    tables: Option<Tables>,
}

/// A finite field. Cloning is cheap; clones share the same tables.
#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<Inner>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} (modulus {:?})", self.inner.p, self.inner.k, self.inner.modulus)
    }
}

// ---- dense polynomials over F_p on raw coefficient vectors ----

fn fp_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    fp_trim(&mut out);
    out
}

/// Remainder modulo a monic polynomial.
fn fp_rem_monic(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let sub = mul_mod(lead, c, p);
                a[shift + i] = (a[shift + i] + p - sub) % p;
            }
        }
        a.pop();
        fp_trim(&mut a);
    }
    fp_trim(&mut a);
    a
}

fn fp_inv(x: u64, p: u64) -> u64 {
    pow_mod(x, p - 2, p)
}

fn fp_rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let inv = fp_inv(*b.last().unwrap(), p);
    let monic: Vec<u64> = b.iter().map(|&c| mul_mod(c, inv, p)).collect();
    fp_trim(&mut a);
    fp_rem_monic(a, &monic, p)
}

fn fp_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    fp_trim(&mut a);
    fp_trim(&mut b);
    while !b.is_empty() {
        let r = fp_rem(a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn fp_powmod_x(exp_p_power: u32, m: &[u64], p: u64) -> Vec<u64> {
    // X^(p^e) mod m by repeated p-th powering.
    let mut x = fp_rem_monic(vec![0, 1], m, p);
    for _ in 0..exp_p_power {
        let mut acc = vec![1u64];
        let mut base = x.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = fp_rem_monic(fp_mul(&acc, &base, p), m, p);
            }
            base = fp_rem_monic(fp_mul(&base, &base, p), m, p);
            e >>= 1;
        }
        x = acc;
    }
    x
}

/// Ben-Or irreducibility test for a monic polynomial over F_p.
pub(crate) fn is_irreducible_fp(m: &[u64], p: u64) -> bool {
    let d = m.len() - 1;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    for i in 1..=d / 2 {
        let mut h = fp_powmod_x(i as u32, m, p);
        // h - X
        if h.len() < 2 {
            h.resize(2, 0);
        }
        h[1] = (h[1] + p - 1) % p;
        fp_trim(&mut h);
        let g = fp_gcd(m.to_vec(), h, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

impl FiniteField {
    /// Builds F_{p^k}; deterministic in `(p, k)`.
    pub fn build(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidParameter("field degree must be at least 1".into()));
        }
        let order = p
            .checked_pow(k)
            .filter(|&q| q < ORDER_LIMIT)
            .ok_or_else(|| Error::InvalidParameter(format!("field order {p}^{k} too large")))?;
        let modulus = smallest_irreducible(p, k);
        let powers: Vec<u64> = (0..k).map(|i| p.pow(i)).collect();
        let unit_order_primes = primes::prime_divisors(order - 1);
        let mut inner = Inner { p, k, order, modulus, powers, generator: Fe(1), unit_order_primes, tables: None };
        let field = FiniteField { inner: Arc::new(Inner { ..clone_inner(&inner) }) };
        let generator = (1..order).map(Fe).find(|&x| field.is_generator(x)).expect("multiplicative group is cyclic");
        inner.generator = generator;
        if order <= TABLE_LIMIT {
            let n = (order - 1) as usize;
            let mut exp = vec![0u32; 2 * n.max(1)];
            let mut log = vec![0u32; order as usize];
            let mut x = Fe(1);
            for i in 0..n {
                exp[i] = x.0 as u32;
                exp[i + n] = x.0 as u32;
                log[x.0 as usize] = i as u32;
                x = field.mul(x, generator);
            }
            inner.tables = Some(Tables { exp, log });
        }
        Ok(FiniteField { inner: Arc::new(inner) })
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        Self::build(p, 1)
    }

    pub fn characteristic(&self) -> u64 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.k
    }

    pub fn order(&self) -> u64 {
        self.inner.order
    }

    /// Monic defining polynomial, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    /// Smallest generator of the multiplicative group.
    pub fn generator(&self) -> Fe {
        self.inner.generator
    }

    pub fn zero(&self) -> Fe {
        Fe(0)
    }

    pub fn one(&self) -> Fe {
        Fe(1)
    }

    pub fn from_int(&self, x: i64) -> Fe {
        Fe(x.rem_euclid(self.inner.p as i64) as u64)
    }

    pub fn from_u64(&self, x: u64) -> Fe {
        Fe(x % self.inner.p)
    }

    pub fn from_digits(&self, digits: &[u64]) -> Fe {
        debug_assert!(digits.len() <= self.inner.k as usize);
        Fe(digits.iter().zip(&self.inner.powers).map(|(&d, &pw)| (d % self.inner.p) * pw).sum())
    }

    pub fn digits(&self, x: Fe) -> Vec<u64> {
        let p = self.inner.p;
        let mut v = x.0;
        (0..self.inner.k)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.inner.order).map(Fe)
    }

    pub fn is_valid(&self, x: Fe) -> bool {
        x.0 < self.inner.order
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let p = self.inner.p;
        if self.inner.k == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= p { s - p } else { s });
        }
        if p == 2 {
            return Fe(a.0 ^ b.0);
        }
        let (mut x, mut y, mut out) = (a.0, b.0, 0u64);
        for &pw in &self.inner.powers {
            let d = (x % p + y % p) % p;
            out += d * pw;
            x /= p;
            y /= p;
        }
        Fe(out)
    }

    pub fn neg(&self, a: Fe) -> Fe {
        let p = self.inner.p;
        if self.inner.k == 1 {
            return Fe(if a.0 == 0 { 0 } else { p - a.0 });
        }
        if p == 2 {
            return a;
        }
        let (mut x, mut out) = (a.0, 0u64);
        for &pw in &self.inner.powers {
            let d = x % p;
            out += ((p - d) % p) * pw;
            x /= p;
        }
        Fe(out)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe(0);
        }
        if let Some(t) = &self.inner.tables {
            let i = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
            return Fe(t.exp[i] as u64);
        }
        let p = self.inner.p;
        if self.inner.k == 1 {
            return Fe(mul_mod(a.0, b.0, p));
        }
        let prod = fp_mul(&self.digits(a), &self.digits(b), p);
        let r = fp_rem_monic(prod, &self.inner.modulus, p);
        self.from_digits(&r)
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        if let Some(t) = &self.inner.tables {
            if a.0 == 0 {
                return if e == 0 { Fe(1) } else { Fe(0) };
            }
            let n = self.inner.order - 1;
            let l = (t.log[a.0 as usize] as u128 * (e % n) as u128 % n as u128) as usize;
            return Fe(t.exp[l] as u64);
        }
        let mut acc = Fe(1);
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.0 == 0 {
            return None;
        }
        if let Some(t) = &self.inner.tables {
            let n = (self.inner.order - 1) as usize;
            let l = t.log[a.0 as usize] as usize;
            return Some(Fe(t.exp[(n - l) % n.max(1)] as u64));
        }
        Some(self.pow(a, self.inner.order - 2))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Option<Fe> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// x ↦ x^(p^e).
    pub fn frobenius(&self, x: Fe, e: u32) -> Fe {
        let mut y = x;
        for _ in 0..e {
            y = self.pow(y, self.inner.p);
        }
        y
    }

    /// Absolute trace down to F_p, returned as an integer in [0, p).
    pub fn trace_to_prime(&self, x: Fe) -> u64 {
        let mut acc = Fe(0);
        let mut y = x;
        for _ in 0..self.inner.k {
            acc = self.add(acc, y);
            y = self.pow(y, self.inner.p);
        }
        debug_assert!(acc.0 < self.inner.p);
        acc.0
    }

    /// Whether `x` lies in the subfield F_{p^d}; `d` must divide the degree.
    pub fn in_subfield(&self, x: Fe, d: u32) -> bool {
        self.frobenius(x, d) == x
    }

    pub fn is_generator(&self, x: Fe) -> bool {
        if x.0 == 0 {
            return false;
        }
        let n = self.inner.order - 1;
        self.inner.unit_order_primes.iter().all(|&r| self.pow(x, n / r) != Fe(1))
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, x: Fe) -> Option<u64> {
        if x.0 == 0 {
            return None;
        }
        let mut ord = self.inner.order - 1;
        for &r in &self.inner.unit_order_primes {
            while ord.is_multiple_of(r) && self.pow(x, ord / r) == Fe(1) {
                ord /= r;
            }
        }
        Some(ord)
    }

    /// The fixed primitive n-th root of unity g^((q-1)/n), g the canonical generator.
    pub fn root_of_unity(&self, n: u64) -> Result<Fe> {
        let q1 = self.inner.order - 1;
        if n == 0 || !q1.is_multiple_of(n) {
            return Err(Error::NoRootsOfUnity { n, order: self.inner.order });
        }
        let z = self.pow(self.inner.generator, q1 / n);
        assert_eq!(self.element_order(z), Some(n));
        Ok(z)
    }

    /// All elements of exact multiplicative order n, in canonical order.
    pub fn primitive_roots_of_unity(&self, n: u64) -> Result<Vec<Fe>> {
        let z = self.root_of_unity(n)?;
        let mut out: Vec<Fe> = (1..=n).filter(|&j| primes::gcd(j, n) == 1).map(|j| self.pow(z, j)).collect();
        out.sort();
        Ok(out)
    }
}

fn clone_inner(src: &Inner) -> Inner {
    Inner {
        p: src.p,
        k: src.k,
        order: src.order,
        modulus: src.modulus.clone(),
        powers: src.powers.clone(),
        generator: src.generator,
        unit_order_primes: src.unit_order_primes.clone(),
        tables: None,
    }
}

/// Lexicographically smallest monic irreducible polynomial of degree k over F_p,
/// comparing `(c_0, c_1, ..., c_{k-1})` with c_0 most significant.
fn smallest_irreducible(p: u64, k: u32) -> Vec<u64> {
    if k == 1 {
        return vec![0, 1];
    }
    let total = p.pow(k);
    // t < p^{k-1} means c_0 = 0, divisible by X
    for t in p.pow(k - 1)..total {
        let mut coeffs = vec![0u64; k as usize + 1];
        let mut v = t;
        for i in (0..k as usize).rev() {
            coeffs[i] = v % p;
            v /= p;
        }
        coeffs[k as usize] = 1;
        if is_irreducible_fp(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
