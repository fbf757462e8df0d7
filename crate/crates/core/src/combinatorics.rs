//! Binomial, Catalan and Narayana numbers, exactly and as prime factorizations.
//!
//! Factorizations are assembled from factorial valuations (Legendre), so they
//! never touch the value itself. That is what makes `N(435483, 28)`-sized
//! numbers cheap to reason about.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{vp_factorial, vp_u64, PrimeFactorization, Sieve};
use crate::error::{Error, Result};

/// Exact binomial coefficient; zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc is binom(n, i) here; the division below is exact
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn catalan(n: u64) -> BigUint {
    let (q, r) = binomial(2 * n, n as i64).div_rem(&BigUint::from(n + 1));
    debug_assert!(r.is_zero());
    q
}

/// Index pair of a Narayana number `N(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NarayanaIndex {
    pub a: u64,
    pub b: u64,
}

impl NarayanaIndex {
    pub fn new(a: u64, b: u64) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidArgument(format!(
                "Narayana index needs a, b >= 1, got ({a}, {b})"
            )));
        }
        Ok(Self { a, b })
    }

    /// `a > b > 1`: the only indices whose value can be a perfect power.
    pub fn is_nontrivial(&self) -> bool {
        self.a > self.b && self.b > 1
    }

    pub fn mirror(&self) -> Self {
        Self {
            a: self.a,
            b: self.a + 1 - self.b,
        }
    }
}

/// `N(a, b) = binom(a, b)·binom(a, b - 1) / a`.
pub fn narayana(idx: NarayanaIndex) -> BigUint {
    let NarayanaIndex { a, b } = idx;
    if a < b {
        return BigUint::zero();
    }
    let product = binomial(a, b as i64) * binomial(a, b as i64 - 1);
    let (q, r) = product.div_rem(&BigUint::from(a));
    assert!(
        r.is_zero(),
        "binom({a},{b})·binom({a},{}) not divisible by {a}",
        b - 1
    );
    q
}

/// Exponent of `p` in `binom(n, k)`, for `0 <= k <= n`.
pub fn binomial_vp(n: u64, k: u64, p: u64) -> u64 {
    vp_factorial(n, p) - vp_factorial(k, p) - vp_factorial(n - k, p)
}

/// Exponent of `p` in `C_n`.
pub fn catalan_vp(n: u64, p: u64) -> u64 {
    binomial_vp(2 * n, n, p) - vp_u64(n + 1, p)
}

/// Exponent of `p` in `N(a, b)`, for `1 <= b <= a`.
pub fn narayana_vp(a: u64, b: u64, p: u64) -> u64 {
    let top = binomial_vp(a, b, p) + binomial_vp(a, b - 1, p);
    let bottom = vp_u64(a, p);
    top.checked_sub(bottom)
        .unwrap_or_else(|| panic!("negative valuation of N({a},{b}) at {p}"))
}

/// Factorization of `N(a, b)` for `a >= b >= 1`, primes taken from `sieve`.
///
/// # Panics
///
/// If the sieve does not reach `a`.
pub fn narayana_factorization_with(
    sieve: &Sieve,
    idx: NarayanaIndex,
) -> Result<PrimeFactorization> {
    let NarayanaIndex { a, b } = idx;
    if a < b {
        return Err(Error::InvalidArgument(format!(
            "N({a},{b}) = 0 has no factorization"
        )));
    }
    assert!(
        sieve.limit() >= a,
        "sieve limit {} below {a}",
        sieve.limit()
    );
    Ok(PrimeFactorization::from_entries(
        sieve
            .primes_up_to(a)
            .iter()
            .map(|&p| (p, narayana_vp(a, b, p))),
    ))
}

pub fn narayana_factorization(idx: NarayanaIndex) -> Result<PrimeFactorization> {
    narayana_factorization_with(&Sieve::new(idx.a), idx)
}

pub fn catalan_factorization(n: u64) -> PrimeFactorization {
    let sieve = Sieve::new(2 * n);
    PrimeFactorization::from_entries(sieve.primes().iter().map(|&p| (p, catalan_vp(n, p))))
}

/// `Σ_k N(n, k)`, which is the Catalan number `C_n`.
pub fn narayana_row_sum(n: u64) -> BigUint {
    (1..=n)
        .map(|k| narayana(NarayanaIndex { a: n, b: k }))
        .sum()
}
