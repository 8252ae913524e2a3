//! Primality and factoring for machine-size integers.
//!
//! Miller–Rabin with the first thirteen prime bases is deterministic below
//! 3.3·10^24, which covers every `u64` and the `u128` range this crate needs.
//! Factoring is trial division followed by Brent's variant of Pollard rho.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller–Rabin on arbitrary-size input. Deterministic below 3.3·10^24.
pub fn is_prime_big(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime(small);
    }
    let one = BigUint::one();
    if n.is_even() {
        return false;
    }
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    // Deterministic sequence of (seed, constant) pairs.
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, m) = (2u64, 128u64);
        let (mut g, mut r, mut q) = (1u64, 1u64, 1u64);
        let (mut x, mut ys) = (0u64, 0u64);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

/// Prime factorization as sorted `(prime, exponent)` pairs.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    if n <= 1 {
        return Vec::new();
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        while n.is_multiple_of(p) {
            primes.push(p);
            n /= p;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            primes.push(m);
            continue;
        }
        let d = pollard_brent(m);
        stack.push(d);
        stack.push(m / d);
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

pub fn euler_phi(n: u64) -> u64 {
    factor(n).into_iter().fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// All prime powers p^k below `limit`, as (p, k), sorted by p^k.
pub fn prime_powers_below(limit: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u64, u32)> = Vec::new();
    for p in (2..limit).filter(|&p| is_prime(p)) {
        let (mut q, mut k) = (p, 1);
        while q < limit {
            out.push((q, p, k));
            match q.checked_mul(p) {
                Some(next) => q = next,
                None => break,
            }
            k += 1;
        }
    }
    out.sort_unstable();
    out.into_iter().map(|(_, p, k)| (p, k)).collect()
}

/// Smallest prime `>= n`.
pub fn next_prime(mut n: u64) -> u64 {
    if n <= 2 {
        return 2;
    }
    if n.is_multiple_of(2) {
        n += 1;
    }
    while !is_prime(n) {
        n += 2;
    }
    n
}

/// Distinct prime divisors of a big integer, or `None` when the cofactor left
/// after trial division is composite and larger than 2^63.
pub fn big_prime_divisors(n: &BigUint, trial_bound: u64) -> Option<Vec<BigUint>> {
    let mut out = Vec::new();
    let mut rest = n.clone();
    if rest.is_zero() {
        return None;
    }
    let mut d = 2u64;
    while d <= trial_bound && rest > BigUint::one() {
        if (&rest % d).is_zero() {
            out.push(BigUint::from(d));
            while (&rest % d).is_zero() {
                rest /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest == BigUint::one() {
        return Some(out);
    }
    if let Some(small) = rest.to_u64() {
        if small < (1u64 << 63) {
            out.extend(prime_divisors(small).into_iter().map(BigUint::from));
            out.sort();
            out.dedup();
            return Some(out);
        }
    }
    if is_prime_big(&rest) {
        out.push(rest);
        return Some(out);
    }
    None
}

/// Brent's rho on a big odd composite, giving up after `max_iters` steps.
pub fn pollard_brent_big(n: &BigUint, max_iters: u64) -> Option<BigUint> {
    let one = BigUint::one();
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    for c in 1u32..=8 {
        let f = |x: &BigUint| (x * x + c) % n;
        let (mut y, m) = (BigUint::from(2u32), 128u64);
        let (mut g, mut r, mut q) = (one.clone(), 1u64, one.clone());
        let (mut x, mut ys) = (BigUint::zero(), BigUint::zero());
        let mut spent = 0u64;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            spent += r;
            r *= 2;
            if spent > max_iters {
                return None;
            }
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}

/// Distinct prime divisors of `n` (no trial division), splitting composites
/// with rho; `None` when some composite resists `max_iters` rho steps.
pub fn big_prime_divisors_rho(n: &BigUint, max_iters: u64) -> Option<Vec<BigUint>> {
    let mut out = Vec::new();
    let mut stack = vec![n.clone()];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if let Some(small) = m.to_u64() {
            out.extend(prime_divisors(small).into_iter().map(BigUint::from));
            continue;
        }
        if is_prime_big(&m) {
            out.push(m);
            continue;
        }
        let d = pollard_brent_big(&m, max_iters)?;
        stack.push(&m / &d);
        stack.push(d);
    }
    out.sort();
    out.dedup();
    Some(out)
}
