//! Pairs `(a, b)` with `N(a, b)` a perfect square.
//!
//! `N(a, b) = b/(a(a − b + 1))·binom(a, b)²`, so `N(a, b)` is a square exactly
//! when `a·b·(a − b + 1)` is. Writing `b = d·s²`, those `a` correspond to the
//! solutions of `n² − d·m² = (b − 1)²` with `m` even through
//! `n = 2a + 1 − b`, and then `N(a, b) = (2s/m·binom(a, b))²`.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{exact_sqrt, exact_sqrt_u128, serialize_decimal, squarefree_decompose};
use crate::combinatorics::{binomial, narayana, NarayanaIndex};
use crate::error::{Error, Result};
use crate::pell::{solutions_even_m, PellInstance, PellSolution};

/// `a·b·(a − b + 1)` is a perfect square, equivalently `N(a, b)` is.
pub fn is_square_pair(a: u64, b: u64) -> bool {
    assert!(
        a >= b && b >= 1,
        "is_square_pair needs a >= b >= 1, got ({a}, {b})"
    );
    let c = a - b + 1;
    match (a as u128)
        .checked_mul(b as u128)
        .and_then(|ab| ab.checked_mul(c as u128))
    {
        Some(x) => exact_sqrt_u128(x).is_some(),
        None => exact_sqrt(&(BigUint::from(a) * b * c)).is_some(),
    }
}

/// A certified `N(a, b) = root²` together with the Pell solution behind it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SquareHit {
    pub a: u64,
    pub b: u64,
    #[serde(serialize_with = "serialize_decimal")]
    pub root: BigUint,
    pub witness: PellSolution,
    pub s: u64,
}

/// All `a` with `b < a <= a_limit` and `N(a, b)` a square, increasing.
///
/// Each hit is checked twice: by the exact square root of `N(a, b)` and by
/// `root·m = 2s·binom(a, b)`.
pub fn squares_for_b(b: u64, a_limit: u64) -> Result<Vec<SquareHit>> {
    if b < 2 {
        return Err(Error::InvalidArgument(format!("need b > 1, got {b}")));
    }
    if a_limit <= b {
        return Ok(Vec::new());
    }
    let dec = squarefree_decompose(b);
    let z = b - 1;
    let inst = PellInstance::new(dec.d, z)?;
    let n_limit = BigUint::from(2 * a_limit + 1 - b);
    let mut hits = Vec::new();
    for sol in solutions_even_m(&inst, &n_limit) {
        let twice_a = &sol.n + z;
        // m even forces n ≡ b − 1 (mod 2)
        assert!(!twice_a.bit(0), "n = {} has the wrong parity", sol.n);
        let a = u64::try_from(twice_a >> 1u32).expect("a <= a_limit fits in u64");
        if a <= b || a > a_limit {
            continue;
        }
        let value = narayana(NarayanaIndex { a, b });
        let root =
            exact_sqrt(&value).unwrap_or_else(|| panic!("N({a},{b}) from {sol:?} is not a square"));
        assert_eq!(
            &root * &sol.m,
            binomial(a, b as i64) * (2 * dec.s),
            "root·m = 2s·binom(a, b) fails at a = {a}"
        );
        hits.push(SquareHit {
            a,
            b,
            root,
            witness: sol,
            s: dec.s,
        });
    }
    Ok(hits)
}

/// The forward map `a ↦ (2a + 1 − b, 2s·c'/b)` where `a·b·(a − b + 1) = c'²`.
pub fn pell_point_for(a: u64, b: u64) -> Option<(BigUint, BigUint)> {
    let dec = squarefree_decompose(b);
    let c_prime = exact_sqrt(&(BigUint::from(a) * b * (a - b + 1)))?;
    let m = c_prime * (2 * dec.s) / b;
    Some((BigUint::from(2 * a + 1 - b), m))
}

fn require(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(what()))
    }
}

/// `(n², (n² + 1)/2)` for odd `n >= 3`.
pub fn family_odd(n: u64) -> Result<(u64, u64)> {
    require(n >= 3 && n % 2 == 1, || {
        format!("family_odd needs odd n >= 3, got {n}")
    })?;
    let sq = n * n;
    Ok((sq, sq.div_ceil(2)))
}

/// `(n² − 2, (n² − 2)/2)` for even `n >= 4`.
pub fn family_even(n: u64) -> Result<(u64, u64)> {
    require(n >= 4 && n.is_multiple_of(2), || {
        format!("family_even needs even n >= 4, got {n}")
    })?;
    let sq = n * n;
    Ok((sq - 2, (sq - 2) / 2))
}

/// `(n²(n² + 1), n² + 1)` for `n >= 2`.
pub fn family_poly(n: u64) -> Result<(u64, u64)> {
    require(n >= 2, || format!("family_poly needs n >= 2, got {n}"))?;
    let sq = n * n;
    Ok((sq * (sq + 1), sq + 1))
}

/// `a(a − b + 1)/b` when the division is exact.
pub fn family_quotient(a: u64, b: u64) -> Option<u128> {
    let num = a as u128 * (a - b + 1) as u128;
    (num.is_multiple_of(b as u128)).then(|| num / b as u128)
}

/// Whether `(a, b)` lies in the half of the row kept by the figure and scan:
/// `1 < b` and `2b <= a + 1`. The centre `b = (a + 1)/2` of an odd row is its
/// own mirror and is kept.
pub fn in_half_row(a: u64, b: u64) -> bool {
    b > 1 && b < a && 2 * b <= a + 1
}

/// Pairs in the half rows `a <= a_max` with `N(a, b)` a square, sorted by `(a, b)`.
pub fn figure1_data(a_max: u64) -> Vec<(u64, u64)> {
    (3..=a_max)
        .into_par_iter()
        .flat_map_iter(|a| {
            (2..=a.div_ceil(2))
                .filter(move |&b| in_half_row(a, b) && is_square_pair(a, b))
                .map(move |b| (a, b))
        })
        .collect()
}

/// Pell route versus brute force for one `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub b: u64,
    pub a_limit: u64,
    pub pell: Vec<u64>,
    pub oracle: Vec<u64>,
    pub only_pell: Vec<u64>,
    pub only_oracle: Vec<u64>,
}

impl CrosscheckReport {
    pub fn agrees(&self) -> bool {
        self.only_pell.is_empty() && self.only_oracle.is_empty()
    }
}

/// Compares [`squares_for_b`] with a scan of [`is_square_pair`] over
/// `b < a <= a_limit`. A disagreement is reported, not raised.
pub fn crosscheck(b: u64, a_limit: u64) -> Result<CrosscheckReport> {
    let pell: Vec<u64> = squares_for_b(b, a_limit)?
        .into_iter()
        .map(|h| h.a)
        .collect();
    let oracle: Vec<u64> = ((b + 1)..=a_limit.max(b))
        .into_par_iter()
        .filter(|&a| is_square_pair(a, b))
        .collect();
    let (ps, os): (BTreeSet<_>, BTreeSet<_>) = (pell.iter().collect(), oracle.iter().collect());
    Ok(CrosscheckReport {
        b,
        a_limit,
        only_pell: ps.difference(&os).map(|&&a| a).collect(),
        only_oracle: os.difference(&ps).map(|&&a| a).collect(),
        pell,
        oracle,
    })
}
