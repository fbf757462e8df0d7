//! Exact integer primitives: roots, perfect powers, primes and valuations.
//!
//! Everything here is integer arithmetic; nothing rounds through floats.

use num_bigint::BigUint;
use num_integer::{Integer, Roots};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Floor of the square root.
pub fn isqrt(x: &BigUint) -> BigUint {
    x.sqrt()
}

pub fn isqrt_u128(x: u128) -> u128 {
    x.sqrt()
}

// Bit r is set when r is not a square mod 64 (only 12 residues are).
const NON_SQUARE_MOD_64: u64 = 0xfdfd_fded_fdfc_fdec;

/// Returns `Some(r)` when `x == r * r`.
pub fn exact_sqrt(x: &BigUint) -> Option<BigUint> {
    let low = x.iter_u64_digits().next().unwrap_or(0) & 63;
    if (NON_SQUARE_MOD_64 >> low) & 1 == 1 {
        return None;
    }
    let r = x.sqrt();
    (&r * &r == *x).then_some(r)
}

pub fn exact_sqrt_u128(x: u128) -> Option<u128> {
    if (NON_SQUARE_MOD_64 >> (x & 63)) & 1 == 1 {
        return None;
    }
    let r = x.sqrt();
    (r * r == x).then_some(r)
}

/// Floor of the `k`-th root together with a flag telling whether it is exact.
///
/// # Panics
///
/// If `k < 2`.
pub fn kth_root(x: &BigUint, k: u32) -> (BigUint, bool) {
    assert!(k >= 2, "kth_root needs k >= 2, got {k}");
    let r = x.nth_root(k);
    let exact = num_traits::pow(r.clone(), k as usize) == *x;
    (r, exact)
}

/// Writes `x = base^k` with `k >= 2` maximal, or returns `None` when `x` is
/// not a non-trivial perfect power. `1` is not a perfect power.
pub fn perfect_power(x: &BigUint) -> Option<(BigUint, u32)> {
    if x <= &BigUint::one() {
        return None;
    }
    let mut base = x.clone();
    let mut exponent = 1u32;
    let exponents = small_primes(x.bits() as u32);
    'peel: loop {
        let bits = base.bits();
        for &k in &exponents {
            if u64::from(k) >= bits {
                break;
            }
            let (r, exact) = kth_root(&base, k);
            if exact {
                base = r;
                exponent *= k;
                continue 'peel;
            }
        }
        break;
    }
    (exponent > 1).then_some((base, exponent))
}

fn small_primes(limit: u32) -> Vec<u32> {
    Sieve::new(u64::from(limit.max(2)))
        .primes()
        .iter()
        .map(|&p| p as u32)
        .collect()
}

/// `b = d·s²` with `d` squarefree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SquarefreeDecomposition {
    pub b: u64,
    pub d: u64,
    pub s: u64,
}

impl SquarefreeDecomposition {
    pub fn is_squarefree(&self) -> bool {
        self.s == 1
    }
}

pub fn squarefree_decompose(b: u64) -> SquarefreeDecomposition {
    assert!(b >= 1, "squarefree_decompose needs b >= 1");
    let mut d = 1u64;
    let mut s = 1u64;
    for &(p, e) in factor_u64(b).entries() {
        s *= p.pow((e / 2) as u32);
        if e % 2 == 1 {
            d *= p;
        }
    }
    SquarefreeDecomposition { b, d, s }
}

/// Sparse prime factorization, primes strictly increasing, exponents positive.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PrimeFactorization {
    entries: Vec<(u64, u64)>,
}

impl PrimeFactorization {
    /// Builds a factorization from `(prime, exponent)` pairs, dropping zero
    /// exponents.
    ///
    /// # Panics
    ///
    /// If the primes are not strictly increasing.
    pub fn from_entries<I: IntoIterator<Item = (u64, u64)>>(entries: I) -> Self {
        let entries: Vec<_> = entries.into_iter().filter(|&(_, e)| e > 0).collect();
        assert!(
            entries.windows(2).all(|w| w[0].0 < w[1].0),
            "primes must be strictly increasing"
        );
        Self { entries }
    }

    pub fn entries(&self) -> &[(u64, u64)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn exponent_of(&self, p: u64) -> u64 {
        self.entries
            .binary_search_by_key(&p, |&(q, _)| q)
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    pub fn value(&self) -> BigUint {
        self.entries.iter().fold(BigUint::one(), |acc, &(p, e)| {
            acc * num_traits::pow(BigUint::from(p), e as usize)
        })
    }

    /// Gcd of the exponents; 0 for the empty factorization (the value 1).
    pub fn exponent_gcd(&self) -> u64 {
        self.entries.iter().fold(0, |g, &(_, e)| g.gcd(&e))
    }

    pub fn largest_prime(&self) -> Option<u64> {
        self.entries.last().map(|&(p, _)| p)
    }
}

/// Trial-division factorization of a machine integer.
pub fn factor_u64(mut n: u64) -> PrimeFactorization {
    let mut entries = Vec::new();
    if n <= 1 {
        return PrimeFactorization { entries };
    }
    for p in [2u64, 3, 5] {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            entries.push((p, e));
        }
    }
    // Wheel mod 30 over candidates coprime to 2, 3, 5.
    const STEPS: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut p = 7u64;
    let mut i = 0;
    while p.saturating_mul(p) <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            entries.push((p, e));
        }
        p += STEPS[i];
        i = (i + 1) % 8;
    }
    if n > 1 {
        entries.push((n, 1));
    }
    PrimeFactorization { entries }
}

/// Largest prime dividing `x`.
///
/// # Panics
///
/// If `x < 2`.
pub fn greatest_prime_factor(x: u64) -> u64 {
    assert!(x >= 2, "greatest_prime_factor needs x >= 2, got {x}");
    factor_u64(x)
        .largest_prime()
        .expect("x >= 2 has a prime factor")
}

/// The exponent of `p` in `x`.
pub fn vp(x: &BigUint, p: u64) -> u64 {
    assert!(!x.is_zero(), "vp of zero is undefined");
    let p_big = BigUint::from(p);
    let mut x = x.clone();
    let mut h = 0;
    loop {
        let (q, r) = x.div_rem(&p_big);
        if !r.is_zero() {
            return h;
        }
        x = q;
        h += 1;
    }
}

pub fn vp_u64(mut x: u64, p: u64) -> u64 {
    assert!(x != 0, "vp of zero is undefined");
    let mut h = 0;
    while x.is_multiple_of(p) {
        x /= p;
        h += 1;
    }
    h
}

/// Legendre's formula: the exponent of `p` in `n!`.
pub fn vp_factorial(n: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut n = n;
    while n > 0 {
        n /= p;
        total += n;
    }
    total
}

/// Deterministic primality for every `u64` (Miller-Rabin with the first
/// twelve prime bases).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
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

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
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

/// Largest prime strictly below `n`.
pub fn prev_prime(n: u64) -> Result<u64> {
    if n <= 2 {
        return Err(Error::NoSmallerPrime(n));
    }
    let mut c = n - 1;
    while !is_prime(c) {
        c -= 1;
    }
    Ok(c)
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    Sieve::new(n).primes
}

/// Primes `p` with `lo <= p <= hi`, by a segmented sieve.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || lo > hi {
        return Vec::new();
    }
    let lo = lo.max(2);
    let base = Sieve::new(hi.sqrt());
    let len = (hi - lo + 1) as usize;
    let mut composite = vec![false; len];
    for &p in base.primes() {
        let first = (p * p).max(lo.div_ceil(p) * p);
        let mut m = first;
        while m <= hi {
            composite[(m - lo) as usize] = true;
            m += p;
        }
    }
    composite
        .iter()
        .enumerate()
        .filter(|(_, &c)| !c)
        .map(|(i, _)| lo + i as u64)
        .collect()
}

/// Sieve of Eratosthenes over odd numbers. Immutable once built, so it can be
/// shared freely between threads.
#[derive(Debug, Clone)]
pub struct Sieve {
    limit: u64,
    primes: Vec<u64>,
}

impl Sieve {
    pub fn new(limit: u64) -> Self {
        let mut primes = Vec::new();
        if limit >= 2 {
            primes.push(2);
        }
        if limit >= 3 {
            // slot i stands for 2i + 3
            let slots = ((limit - 1) / 2) as usize;
            let mut composite = vec![false; slots];
            let mut i = 0usize;
            loop {
                let p = 2 * i as u64 + 3;
                if p * p > limit {
                    break;
                }
                if !composite[i] {
                    let mut j = ((p * p - 3) / 2) as usize;
                    while j < slots {
                        composite[j] = true;
                        j += p as usize;
                    }
                }
                i += 1;
            }
            primes.extend(
                composite
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| !c)
                    .map(|(i, _)| 2 * i as u64 + 3),
            );
        }
        Self { limit, primes }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// All sieved primes `<= n`.
    pub fn primes_up_to(&self, n: u64) -> &[u64] {
        &self.primes[..self.primes.partition_point(|&p| p <= n)]
    }

    pub fn is_prime(&self, n: u64) -> bool {
        if n <= self.limit {
            self.primes.binary_search(&n).is_ok()
        } else {
            is_prime(n)
        }
    }

    pub fn prev_prime(&self, n: u64) -> Result<u64> {
        if n > self.limit + 1 {
            return prev_prime(n);
        }
        let below = self.primes.partition_point(|&p| p < n);
        below
            .checked_sub(1)
            .map(|i| self.primes[i])
            .ok_or(Error::NoSmallerPrime(n))
    }
}

/// Serializes big integers as decimal strings so JSON consumers never lose
/// precision.
pub(crate) fn serialize_decimal<S: serde::Serializer>(
    x: &BigUint,
    s: S,
) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}
