//! Cyclotomic integers Z[ζ_m], stored as the canonical remainder modulo Φ_m.
//!
//! Multiplication packs both operands into single big integers (Kronecker
//! substitution), multiplies once, and unpacks balanced digits before the
//! reduction by Φ_m.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{Fe, FiniteField};
use super::primes::gcd;
use super::residue::Residue;
use crate::{Error, Result};

/// Largest conductor accepted by the constructors.
pub const MAX_CONDUCTOR: u64 = 10_000;

#[derive(Debug)]
struct CycloRing {
    m: u64,
    /// Φ_m, constant term first, monic.
    phi: Vec<i64>,
}

impl CycloRing {
    fn degree(&self) -> usize {
        self.phi.len() - 1
    }
}

fn ring_cache() -> &'static Mutex<HashMap<u64, Arc<CycloRing>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycloRing>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn ring(m: u64) -> Result<Arc<CycloRing>> {
    if m == 0 || m > MAX_CONDUCTOR {
        return Err(Error::InvalidParameter(format!("conductor {m} outside 1..={MAX_CONDUCTOR}")));
    }
    if let Some(r) = ring_cache().lock().unwrap().get(&m) {
        return Ok(r.clone());
    }
    let phi = cyclotomic_polynomial(m);
    let r = Arc::new(CycloRing { m, phi });
    ring_cache().lock().unwrap().entry(m).or_insert(r.clone());
    Ok(r)
}

/// Φ_m with integer coefficients, constant term first: X^m − 1 divided
/// exactly by Φ_d for every proper divisor d of m.
pub fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    assert!(m >= 1);
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        num = exact_div_monic(&num, &cyclotomic_polynomial(d));
    }
    cache.lock().unwrap().insert(m, num.clone());
    num
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut q = vec![0i64; dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let c = rem[k + dd];
        q[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0), "inexact cyclotomic division");
    q
}

/// Element of Z[ζ_m] in canonical form: exactly φ(m) coefficients on the
/// power basis 1, ζ, ..., ζ^{φ(m)−1}.
#[derive(Clone)]
pub struct CyclotomicInt {
    ring: Arc<CycloRing>,
    coeffs: Vec<BigInt>,
}

impl PartialEq for CyclotomicInt {
    fn eq(&self, other: &Self) -> bool {
        self.ring.m == other.ring.m && self.coeffs == other.coeffs
    }
}

impl Eq for CyclotomicInt {}

impl CyclotomicInt {
    pub fn zero(m: u64) -> Result<Self> {
        let ring = ring(m)?;
        let coeffs = vec![BigInt::zero(); ring.degree()];
        Ok(Self { ring, coeffs })
    }

    pub fn one(m: u64) -> Result<Self> {
        Self::from_int(m, BigInt::one())
    }

    pub fn from_int(m: u64, v: impl Into<BigInt>) -> Result<Self> {
        let mut z = Self::zero(m)?;
        z.coeffs[0] = v.into();
        Ok(z)
    }

    /// ζ_m^k for any integer k.
    pub fn zeta_pow(m: u64, k: i64) -> Result<Self> {
        let mut counts = vec![0i64; m as usize];
        counts[k.rem_euclid(m as i64) as usize] = 1;
        Self::from_exponent_counts(m, &counts)
    }

    /// Σ counts[k]·ζ_m^k, with `counts` indexed by exponent mod m.
    pub fn from_exponent_counts(m: u64, counts: &[i64]) -> Result<Self> {
        assert_eq!(counts.len(), m as usize);
        let ring = ring(m)?;
        let raw: Vec<BigInt> = counts.iter().map(|&c| BigInt::from(c)).collect();
        Ok(Self::reduce(ring, raw))
    }

    /// From coefficients on the power basis (any length; reduced here).
    pub fn from_coeffs(m: u64, coeffs: Vec<BigInt>) -> Result<Self> {
        let ring = ring(m)?;
        let mut folded = vec![BigInt::zero(); m as usize];
        for (i, c) in coeffs.into_iter().enumerate() {
            folded[i % m as usize] += c;
        }
        Ok(Self::reduce(ring, folded))
    }

    /// Remainder of a polynomial (degree < 2m is enough) modulo Φ_m.
    fn reduce(ring: Arc<CycloRing>, mut a: Vec<BigInt>) -> Self {
        let deg = ring.degree();
        for k in (deg..a.len()).rev() {
            if a[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut a[k]);
            let base = k - deg;
            for (i, &p) in ring.phi[..deg].iter().enumerate() {
                if p != 0 {
                    a[base + i] -= &c * p;
                }
            }
        }
        a.resize(deg, BigInt::zero());
        Self { ring, coeffs: a }
    }

    pub fn conductor(&self) -> u64 {
        self.ring.m
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The integer value when the element lies in Z.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.ring.m != other.ring.m {
            return Err(Error::ConductorMismatch(self.ring.m, other.ring.m));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { ring: self.ring.clone(), coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self { ring: self.ring.clone(), coeffs })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let prod = kronecker_mul(&self.coeffs, &other.coeffs);
        Ok(Self::reduce(self.ring.clone(), prod))
    }

    pub fn checked_eq(&self, other: &Self) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.coeffs == other.coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.ring.m).unwrap();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Division by a nonzero integer when every coefficient is divisible.
    pub fn exact_div(&self, d: &BigInt) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            coeffs.push(q);
        }
        Some(Self { ring: self.ring.clone(), coeffs })
    }

    /// The automorphism ζ_m ↦ ζ_m^a.
    pub fn galois(&self, a: i64) -> Result<Self> {
        let m = self.ring.m;
        let a = a.rem_euclid(m as i64) as u64;
        if gcd(a, m) != 1 {
            return Err(Error::NotInvertible { value: a, modulus: m });
        }
        let mut lifted = vec![BigInt::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            lifted[(i as u64 * a % m) as usize] = c.clone();
        }
        Ok(Self::reduce(self.ring.clone(), lifted))
    }

    /// Image under ζ_d ↦ ζ_m^{m/d} for a multiple m of the conductor d.
    pub fn embed(&self, m: u64) -> Result<Self> {
        let d = self.ring.m;
        if !m.is_multiple_of(d) {
            return Err(Error::InvalidParameter(format!("{d} does not divide {m}")));
        }
        let step = (m / d) as usize;
        let mut lifted = vec![BigInt::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            lifted[i * step] = c.clone();
        }
        Ok(Self::reduce(ring(m)?, lifted))
    }

    /// Writes the element in Z[ζ_d] ⊗ Z[ζ_e] (m = d·e, coprime) and returns it
    /// as an element of Z[ζ_d] when it has no ζ_e-component.
    pub fn descend(&self, d: u64) -> Result<Self> {
        let m = self.ring.m;
        if d == 0 || !m.is_multiple_of(d) || gcd(d, m / d) != 1 {
            return Err(Error::InvalidParameter(format!("{d} is not a unitary divisor of the conductor {m}")));
        }
        let e = m / d;
        let rd = ring(d)?;
        let re = ring(e)?;
        let u = Residue::from_u64(e, d).inverse().map(|r| r.value()).unwrap_or(0);
        let v = Residue::from_u64(d, e).inverse().map(|r| r.value()).unwrap_or(0);
        // grid[t][s] is the coefficient of y^s z^t.
        let mut grid = vec![vec![BigInt::zero(); d as usize]; e as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = k as u64;
            let s = (k * u % d) as usize;
            let t = (k * v % e) as usize;
            grid[t][s] += c;
        }
        // Reduce in z for each y-power.
        let mut zred = vec![vec![BigInt::zero(); d as usize]; re.degree()];
        for s in 0..d as usize {
            let col: Vec<BigInt> = grid.iter().map(|row| row[s].clone()).collect();
            let r = Self::reduce(re.clone(), col);
            for (t, c) in r.coeffs.into_iter().enumerate() {
                zred[t][s] = c;
            }
        }
        let mut parts: Vec<Self> = zred.into_iter().map(|row| Self::reduce(rd.clone(), row)).collect();
        if parts[1..].iter().any(|p| !p.is_zero()) {
            return Err(Error::NotInSubfield(format!("element of Z[ζ_{m}] not in Z[ζ_{d}]")));
        }
        Ok(parts.swap_remove(0))
    }

    /// The image of ζ_m fixed by the deterministic root assignment: among the
    /// elements of exact order m, the root r whose linear factor X − r is
    /// lexicographically smallest (constant coefficient compared first).
    pub fn assigned_root(m: u64, field: &FiniteField) -> Result<Fe> {
        let l = field.characteristic();
        if m.is_multiple_of(l) {
            return Err(Error::RamifiedReduction { p: l, m });
        }
        let roots = field.primitive_roots_of_unity(m)?;
        Ok(roots.into_iter().min_by_key(|&r| field.neg(r)).unwrap())
    }

    /// Ring homomorphism into `field` with ζ_m ↦ `root`.
    pub fn reduce_mod_prime_with(&self, field: &FiniteField, root: Fe) -> Result<Fe> {
        let l = field.characteristic();
        if self.ring.m.is_multiple_of(l) {
            return Err(Error::RamifiedReduction { p: l, m: self.ring.m });
        }
        if field.element_order(root) != Some(self.ring.m) {
            return Err(Error::InvalidParameter(format!("root {root} does not have exact order {}", self.ring.m)));
        }
        let lb = BigInt::from(l);
        let mut acc = Fe(0);
        for c in self.coeffs.iter().rev() {
            let r = c.mod_floor(&lb).to_u64().unwrap();
            acc = field.add(field.mul(acc, root), field.from_u64(r));
        }
        Ok(acc)
    }

    /// Reduction modulo the prime fixed by [`Self::assigned_root`].
    pub fn reduce_mod_prime(&self, field: &FiniteField) -> Result<Fe> {
        let root = Self::assigned_root(self.ring.m, field)?;
        self.reduce_mod_prime_with(field, root)
    }

    /// Coefficients as decimal strings, for reports.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }

    /// Largest coefficient bit length.
    pub fn height_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }
}

fn kronecker_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let len = a.len().min(b.len()).max(1) as u64;
    let bits_a = a.iter().map(|c| c.bits()).max().unwrap_or(0);
    let bits_b = b.iter().map(|c| c.bits()).max().unwrap_or(0);
    if bits_a == 0 || bits_b == 0 {
        return vec![BigInt::zero(); a.len() + b.len()];
    }
    let need = bits_a + bits_b + (64 - len.leading_zeros() as u64) + 2;
    let w = need.div_ceil(32) * 32;
    let pa = pack(a, w);
    let pb = pack(b, w);
    unpack(&(pa * pb), w, a.len() + b.len() - 1)
}

fn pack(a: &[BigInt], w: u64) -> BigInt {
    let mut acc = BigInt::zero();
    for c in a.iter().rev() {
        acc <<= w;
        acc += c;
    }
    acc
}

/// Splits a packed product into `count` signed slots of width `w` bits.
fn unpack(p: &BigInt, w: u64, count: usize) -> Vec<BigInt> {
    // Adding 2^{w-1} to every slot makes all digits nonnegative, so the slot
    // words can be read straight off the magnitude.
    let half = BigInt::one() << (w - 1);
    let mut bias = BigInt::zero();
    for _ in 0..count {
        bias <<= w;
        bias += &half;
    }
    let shifted = (p + &bias).to_biguint().expect("bias dominates the packed value");
    let words = shifted.to_u32_digits();
    let per = (w / 32) as usize;
    (0..count)
        .map(|i| {
            let lo = (i * per).min(words.len());
            let hi = ((i + 1) * per).min(words.len());
            let slot = BigUint::from_slice(&words[lo..hi]);
            BigInt::from_biguint(Sign::Plus, slot) - &half
        })
        .collect()
}

impl Add for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn add(self, rhs: Self) -> CyclotomicInt {
        self.checked_add(rhs).expect("conductor mismatch")
    }
}

impl Sub for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn sub(self, rhs: Self) -> CyclotomicInt {
        self.checked_sub(rhs).expect("conductor mismatch")
    }
}

impl Mul for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn mul(self, rhs: Self) -> CyclotomicInt {
        self.checked_mul(rhs).expect("conductor mismatch")
    }
}

impl Neg for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn neg(self) -> CyclotomicInt {
        CyclotomicInt { ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Debug for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.ring.m;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => write!(f, "z{m}^{i}")?,
                _ => write!(f, "{mag}*z{m}^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
