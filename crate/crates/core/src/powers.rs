//! Exponent bounds for `C_n = m^k` and `N(a, b) = m^k`.
//!
//! Each certificate re-derives its argument numerically: it names a prime `p`
//! and the exact valuation of the value at `p`, computed with Legendre's
//! formula. A valuation `v` means `k` divides `v`, which bounds `k`.
//!
//! The constant `1.95` is the rational `39/20` throughout, and `√a` never
//! appears unsquared.

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{is_prime, perfect_power, prev_prime, primes_in, vp_u64, Sieve};
use crate::combinatorics::{binomial_vp, catalan, catalan_vp, narayana_vp};
use crate::error::{Error, Result};
use crate::squares::in_half_row;

/// 1.95 = 39/20
const RATIO_NUM: u64 = 39;
const RATIO_DEN: u64 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    CatalanRamanujan,
    PropAPrime,
    PropAPrimeSquare,
    Thm1,
    Thm2,
    ExponentGcd,
}

impl Rule {
    pub fn as_str(&self) -> &'static str {
        match self {
            Rule::CatalanRamanujan => "catalan-ramanujan",
            Rule::PropAPrime => "prop-a-prime",
            Rule::PropAPrimeSquare => "prop-a-prime-square",
            Rule::Thm1 => "thm1",
            Rule::Thm2 => "thm2",
            Rule::ExponentGcd => "exponent-gcd",
        }
    }
}

impl std::fmt::Display for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `value = m^k` forces `k <= k_bound`, because `p` divides `value` exactly
/// `valuation` times.
///
/// For Catalan certificates `a` holds `n` and `b` is `None`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerCertificate {
    pub rule: Rule,
    pub a: u64,
    pub b: Option<u64>,
    pub p: u64,
    pub valuation: u64,
    pub k_bound: u32,
}

impl PowerCertificate {
    pub const CSV_HEADER: &'static str = "rule,a,b,p,valuation,k_bound";

    pub fn to_csv_record(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.rule,
            self.a,
            self.b.map(|b| b.to_string()).unwrap_or_default(),
            self.p,
            self.valuation,
            self.k_bound
        )
    }

    /// JSON object with keys in sorted order.
    pub fn to_json(&self) -> serde_json::Value {
        // serde_json's default map is ordered by key
        serde_json::to_value(self).expect("certificate serializes")
    }
}

/// At least two primes in `(n, 2n]`. Holds for every `n >= 6`.
pub fn ramanujan_check(n: u64) -> Result<bool> {
    if n < 6 {
        return Err(Error::Precondition(format!(
            "ramanujan_check needs n >= 6, got {n}"
        )));
    }
    Ok(primes_in(n + 1, 2 * n).len() >= 2)
}

/// A prime in `[n + 2, 2n]` dividing `C_n` exactly once (the largest such).
pub fn catalan_witness(n: u64) -> Result<PowerCertificate> {
    if n < 6 {
        return Err(Error::Precondition(format!(
            "catalan_witness needs n >= 6, got {n}"
        )));
    }
    let p = prev_prime(2 * n + 1)?;
    if p < n + 2 {
        return Err(Error::FalsifiedStep(format!(
            "no prime in [{}, {}]",
            n + 2,
            2 * n
        )));
    }
    let valuation = catalan_vp(n, p);
    if valuation != 1 {
        return Err(Error::FalsifiedStep(format!(
            "v_{p}(C_{n}) = {valuation}, expected 1"
        )));
    }
    Ok(PowerCertificate {
        rule: Rule::CatalanRamanujan,
        a: n,
        b: None,
        p,
        valuation,
        k_bound: 1,
    })
}

/// `C_n` is not a non-trivial perfect power: directly for `n <= 5`, by a
/// witness prime otherwise.
pub fn catalan_not_power(n: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::Precondition("catalan_not_power needs n >= 1".into()));
    }
    if n <= 5 {
        return Ok(perfect_power(&catalan(n)).is_none());
    }
    catalan_witness(n).map(|_| true)
}

/// Gcd of the exponents of `N(a, b)`'s factorization, stopping as soon as it
/// reaches 1. Zero when `N(a, b) = 1`.
pub fn exponent_gcd_with(sieve: &Sieve, a: u64, b: u64) -> u64 {
    let mut g = 0u64;
    for &p in sieve.primes_up_to(a) {
        let e = narayana_vp(a, b, p);
        if e > 0 {
            g = g.gcd(&e);
            if g == 1 {
                break;
            }
        }
    }
    g
}

pub fn exponent_gcd(a: u64, b: u64) -> Result<u64> {
    if !(a > b && b > 1) {
        return Err(Error::Precondition(format!(
            "exponent_gcd needs a > b > 1, got ({a}, {b})"
        )));
    }
    Ok(exponent_gcd_with(&Sieve::new(a), a, b))
}

/// The prime or prime-square cases for `a`.
pub fn prop_bound(a: u64, b: u64) -> Result<Option<PowerCertificate>> {
    if !(b >= 2 && 2 * b <= a) {
        return Err(Error::Precondition(format!(
            "prop_bound needs 2 <= b <= a/2, got ({a}, {b})"
        )));
    }
    if is_prime(a) {
        let valuation = narayana_vp(a, b, a);
        if valuation != 1 {
            return Err(Error::FalsifiedStep(format!(
                "v_{a}(N({a},{b})) = {valuation}, expected 1"
            )));
        }
        return Ok(Some(PowerCertificate {
            rule: Rule::PropAPrime,
            a,
            b: Some(b),
            p: a,
            valuation,
            k_bound: 1,
        }));
    }
    let r = crate::arith::isqrt_u128(a as u128) as u64;
    if r * r == a && is_prime(r) {
        let p = r;
        let valuation = narayana_vp(a, b, p);
        // v_p(binom(p², t)) = 2 − v_p(t)
        let by_formula = -2 + (2 - vp_u64(b, p) as i64) + (2 - vp_u64(b - 1, p) as i64);
        if valuation as i64 != by_formula || !(1..=2).contains(&valuation) {
            return Err(Error::FalsifiedStep(format!(
                "v_{p}(N({a},{b})) = {valuation}, formula gives {by_formula}"
            )));
        }
        return Ok(Some(PowerCertificate {
            rule: Rule::PropAPrimeSquare,
            a,
            b: Some(b),
            p,
            valuation,
            k_bound: 2,
        }));
    }
    Ok(None)
}

/// `(p, a − p + 1)` with `p` the largest prime below `a`.
pub fn thm1_threshold(a: u64) -> Result<(u64, u64)> {
    if a < 4 {
        return Err(Error::Precondition(format!(
            "thm1_threshold needs a >= 4, got {a}"
        )));
    }
    let p = prev_prime(a)?;
    Ok((p, a - p + 1))
}

/// Certificate for `a/2 >= b > a − p + 1`, `p` the largest prime below `a`.
pub fn thm1_certify(a: u64, b: u64) -> Result<PowerCertificate> {
    let (p, threshold) = thm1_threshold(a)?;
    if !(2 * b <= a && b > threshold) {
        return Err(Error::Precondition(format!(
            "thm1 needs a/2 >= b > {threshold} for a = {a}, got b = {b}"
        )));
    }
    if a.is_multiple_of(p) || b.is_multiple_of(p) {
        return Err(Error::FalsifiedStep(format!(
            "{p} divides a = {a} or b = {b}"
        )));
    }
    let fail = |what: String| {
        Err(Error::FalsifiedStep(format!(
            "thm1 at ({a}, {b}), p = {p}: {what}"
        )))
    };
    let (valuation, k_bound) = if p == a - b + 1 {
        // p·binom(a, p)² = a·b·m^k with p ∤ binom(a, p)
        let vb = binomial_vp(a, p, p);
        if vb != 0 {
            return fail(format!("v_p(binom(a, p)) = {vb}, expected 0"));
        }
        let v = 1 + 2 * vb - vp_u64(a, p) - vp_u64(b, p);
        (v, 1)
    } else {
        // b·binom(a, b)² = a(a − b + 1)·m^k with p dividing binom(a, b) once
        let vb = binomial_vp(a, b, p);
        if vb != 1 {
            return fail(format!("v_p(binom(a, b)) = {vb}, expected 1"));
        }
        if (a - b + 1).is_multiple_of(p) {
            return fail("p divides a − b + 1".into());
        }
        let v = vp_u64(b, p) + 2 * vb - vp_u64(a, p) - vp_u64(a - b + 1, p);
        (v, 2)
    };
    let direct = narayana_vp(a, b, p);
    if valuation != direct || !(1..=2).contains(&valuation) {
        return fail(format!(
            "valuation {valuation} (direct {direct}) outside {{1, 2}}"
        ));
    }
    Ok(PowerCertificate {
        rule: Rule::Thm1,
        a,
        b: Some(b),
        p,
        valuation,
        k_bound,
    })
}

/// `b >= √a/1.95`, i.e. `39²·b² >= 20²·a`.
pub fn thm2_applies(a: u64, b: u64) -> bool {
    let lhs = (RATIO_NUM * b) as u128;
    let rhs = (RATIO_DEN * RATIO_DEN) as u128 * a as u128;
    lhs * lhs >= rhs
}

/// Largest prime dividing `binom(n, k)`, read off Legendre valuations.
pub fn binomial_greatest_prime(sieve: &Sieve, n: u64, k: u64) -> Option<u64> {
    sieve
        .primes_up_to(n)
        .iter()
        .rev()
        .copied()
        .find(|&p| binomial_vp(n, k, p) > 0)
}

/// Certificate for `a/2 >= b >= √a/1.95` from the largest prime of `binom(a, b)`.
pub fn thm2_certify(a: u64, b: u64) -> Result<PowerCertificate> {
    thm2_certify_with(&Sieve::new(a), a, b)
}

pub fn thm2_certify_with(sieve: &Sieve, a: u64, b: u64) -> Result<PowerCertificate> {
    if !(b >= 1 && 2 * b <= a && thm2_applies(a, b)) {
        return Err(Error::Precondition(format!(
            "thm2 needs a/2 >= b >= √a/1.95, got ({a}, {b})"
        )));
    }
    let fail = |what: String| Err(Error::FalsifiedStep(format!("thm2 at ({a}, {b}): {what}")));
    let Some(p) = binomial_greatest_prime(sieve, a, b) else {
        return fail("binom(a, b) has no prime factor".into());
    };
    if RATIO_DEN * p <= RATIO_NUM * b {
        return fail(format!("P(binom(a, b)) = {p} is not above 1.95·b"));
    }
    if (p as u128) * (p as u128) <= a as u128 {
        return fail(format!("p² = {} is not above a", p * p));
    }
    let vb = binomial_vp(a, b, p);
    if vb != 1 {
        return fail(format!("v_{p}(binom(a, b)) = {vb}, expected 1"));
    }
    // b·binom(a, b)² = a(a − b + 1)·m^k
    let lhs = vp_u64(b, p) + 2 * vb;
    let rhs_known = vp_u64(a, p) + vp_u64(a - b + 1, p);
    let valuation = lhs - rhs_known;
    if valuation != narayana_vp(a, b, p) || !(1..=2).contains(&valuation) {
        return fail(format!("v_{p}(m^k) = {valuation} outside {{1, 2}}"));
    }
    Ok(PowerCertificate {
        rule: Rule::Thm2,
        a,
        b: Some(b),
        p,
        valuation,
        k_bound: 2,
    })
}

/// Every certificate that applies to `(a, b)`, in the order prop, thm1, thm2.
/// `b` is folded into the half row first since `N(a, b) = N(a, a − b + 1)`.
pub fn certify(a: u64, b: u64) -> Result<Vec<PowerCertificate>> {
    if !(a > b && b > 1) {
        return Err(Error::Precondition(format!(
            "certify needs a > b > 1, got ({a}, {b})"
        )));
    }
    let b = b.min(a + 1 - b);
    let mut out = Vec::new();
    if 2 * b <= a {
        if let Some(c) = prop_bound(a, b)? {
            out.push(c);
        }
        if let Ok((_, threshold)) = thm1_threshold(a) {
            if b > threshold {
                out.push(thm1_certify(a, b)?);
            }
        }
        if thm2_applies(a, b) {
            out.push(thm2_certify(a, b)?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub a_max: u64,
    /// Half-row pairs with even exponent gcd, i.e. `N(a, b)` a square.
    pub square_hits: Vec<(u64, u64)>,
    /// `(a, b, gcd)` with gcd >= 3.
    pub higher_power_hits: Vec<(u64, u64, u64)>,
}

impl ScanReport {
    pub fn square_hit_count(&self) -> usize {
        self.square_hits.len()
    }
}

type RowHits = (Vec<(u64, u64)>, Vec<(u64, u64, u64)>);

/// Exponent gcd of every half-row pair with `a <= a_max`.
pub fn conjecture_scan(a_max: u64) -> ScanReport {
    let sieve = Sieve::new(a_max.max(2));
    let rows: Vec<RowHits> = (3..=a_max)
        .into_par_iter()
        .map(|a| {
            let mut squares = Vec::new();
            let mut higher = Vec::new();
            for b in (2..=a.div_ceil(2)).filter(|&b| in_half_row(a, b)) {
                let g = exponent_gcd_with(&sieve, a, b);
                if g >= 2 && g.is_multiple_of(2) {
                    squares.push((a, b));
                }
                if g >= 3 {
                    higher.push((a, b, g));
                }
            }
            (squares, higher)
        })
        .collect();
    let mut report = ScanReport {
        a_max,
        square_hits: Vec::new(),
        higher_power_hits: Vec::new(),
    };
    for (s, h) in rows {
        report.square_hits.extend(s);
        report.higher_power_hits.extend(h);
    }
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stronger {
    Thm1,
    Thm2,
}

impl std::fmt::Display for Stronger {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Stronger::Thm1 => "thm1",
            Stronger::Thm2 => "thm2",
        })
    }
}

/// One row of the comparison between the two thresholds on `b`.
///
/// The second threshold is `√a/1.95`, carried as its exact square
/// `sq_num/sq_den = 400a/1521` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ThresholdRow {
    pub a: u64,
    pub thm1_threshold: u64,
    pub thm2_threshold_sq_num: u64,
    pub thm2_threshold_sq_den: u64,
    pub stronger: Stronger,
}

impl ThresholdRow {
    pub fn for_a(a: u64) -> Result<Self> {
        let (_, t1) = thm1_threshold(a)?;
        let num = RATIO_DEN * RATIO_DEN * a;
        let den = RATIO_NUM * RATIO_NUM;
        let g = num.gcd(&den);
        // t1 < √a/1.95 ⇔ 1521·t1² < 400·a; a tie goes to thm2
        let stronger = if (den as u128) * (t1 as u128) * (t1 as u128) < num as u128 {
            Stronger::Thm1
        } else {
            Stronger::Thm2
        };
        Ok(Self {
            a,
            thm1_threshold: t1,
            thm2_threshold_sq_num: num / g,
            thm2_threshold_sq_den: den / g,
            stronger,
        })
    }
}

pub fn figure2_data(a_max: u64) -> Vec<ThresholdRow> {
    (4..=a_max)
        .into_par_iter()
        .map(|a| ThresholdRow::for_a(a).expect("a >= 4"))
        .collect()
}

/// `N(a, 3)` in the form `((2(a − 1)² − 1)² − 1)/48`, for the b = 3 reduction.
pub fn b3_identity_holds(a: u64) -> bool {
    use crate::combinatorics::{narayana, NarayanaIndex};
    use num_bigint::BigUint;
    let t = BigUint::from(a - 1);
    let u = &t * &t * 2u32 - 1u32;
    let lhs = &u * &u - 1u32;
    lhs == narayana(NarayanaIndex { a, b: 3 }) * 48u32
}
