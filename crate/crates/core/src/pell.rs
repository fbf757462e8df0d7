//! Solutions of `n² − d·m² = z²` with `m` even.
//!
//! The fundamental unit `n₁ + m₁√d` comes from the continued fraction of `√d`.
//! Every positive solution is `|(n' + m'√d)(n₁ + m₁√d)^k|` for some `k ∈ ℤ` and
//! a representative `(n', m')` inside an explicit box, so the solutions up to
//! any bound are a finite, exact enumeration.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{exact_sqrt, factor_u64, isqrt_u128, serialize_decimal, squarefree_decompose};
use crate::error::{Error, Result};

/// The equation `n² − d·m² = z²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PellInstance {
    d: u64,
    z: u64,
}

impl PellInstance {
    /// `d` must be squarefree (`d = 1` is allowed and handled by
    /// [`solve_degenerate`]) and `z >= 1`.
    pub fn new(d: u64, z: u64) -> Result<Self> {
        if d == 0 || z == 0 {
            return Err(Error::InvalidArgument(format!(
                "need d >= 1 and z >= 1, got d = {d}, z = {z}"
            )));
        }
        let dec = squarefree_decompose(d);
        if !dec.is_squarefree() {
            return Err(Error::NotSquarefree {
                d,
                core: dec.d,
                square_root: dec.s,
            });
        }
        Ok(Self { d, z })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn z(&self) -> u64 {
        self.z
    }

    pub fn is_degenerate(&self) -> bool {
        self.d == 1
    }

    /// `n² − d·m² == z²`.
    pub fn is_solution(&self, n: &BigUint, m: &BigUint) -> bool {
        let z = BigUint::from(self.z);
        n * n == &z * &z + m * m * self.d
    }
}

/// Periodic continued fraction `√d = [a0; period, period, ...]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurdExpansion {
    pub a0: u64,
    pub period: Vec<u64>,
}

pub fn sqrt_cf(d: u64) -> Result<SurdExpansion> {
    let a0 = isqrt_u128(d as u128) as u64;
    if a0 * a0 == d {
        return Err(Error::DegenerateSurd(d));
    }
    let (d, a0w) = (d as u128, a0 as u128);
    // (√d + num) / den, the usual complete-quotient recurrence
    let (mut num, mut den, mut a) = (0u128, 1u128, a0w);
    let mut period = Vec::new();
    loop {
        num = den * a - num;
        den = (d - num * num) / den;
        a = (a0w + num) / den;
        period.push(a as u64);
        if a == 2 * a0w {
            break;
        }
    }
    Ok(SurdExpansion { a0, period })
}

/// Minimal `(n₁, m₁)` with `n₁² − d·m₁² = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalSolution {
    pub d: u64,
    pub n1: BigUint,
    pub m1: BigUint,
}

impl FundamentalSolution {
    /// Coefficients of `(n₁ + m₁√d)^k`; negative `k` uses the conjugate unit.
    pub fn power(&self, k: i64) -> (BigInt, BigInt) {
        let sign = if k < 0 { Sign::Minus } else { Sign::Plus };
        let mut base = (
            BigInt::from(self.n1.clone()),
            BigInt::from_biguint(sign, self.m1.clone()),
        );
        let mut acc = (BigInt::one(), BigInt::zero());
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_surd(&acc, &base, self.d);
            }
            base = mul_surd(&base, &base, self.d);
            e >>= 1;
        }
        acc
    }

    fn unit(&self, inverse: bool) -> (BigInt, BigInt) {
        let m = BigInt::from(self.m1.clone());
        (BigInt::from(self.n1.clone()), if inverse { -m } else { m })
    }
}

fn mul_surd(x: &(BigInt, BigInt), y: &(BigInt, BigInt), d: u64) -> (BigInt, BigInt) {
    (&x.0 * &y.0 + &x.1 * &y.1 * d, &x.0 * &y.1 + &x.1 * &y.0)
}

/// Reads the fundamental unit off the convergent that ends the first period
/// (even period length) or the second one (odd length).
pub fn fundamental_solution(d: u64) -> Result<FundamentalSolution> {
    let cf = sqrt_cf(d)?;
    let r = cf.period.len();
    let terms = if r.is_multiple_of(2) { r } else { 2 * r };
    let quotients = std::iter::once(cf.a0).chain(cf.period.iter().copied().cycle().take(terms - 1));
    let (mut p_prev, mut p) = (BigUint::zero(), BigUint::one());
    let (mut q_prev, mut q) = (BigUint::one(), BigUint::zero());
    for a in quotients {
        let p_next = &p * a + &p_prev;
        let q_next = &q * a + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
    assert!(
        &p * &p == &q * &q * d + 1u32,
        "convergent {p}/{q} does not solve the Pell equation for d = {d}"
    );
    Ok(FundamentalSolution { d, n1: p, m1: q })
}

pub fn unit_power(d: u64, k: i64) -> Result<(BigInt, BigInt)> {
    Ok(fundamental_solution(d)?.power(k))
}

/// Which unit exponents `k` turn a representative into solutions with `m` even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParityClass {
    AllK,
    EvenK,
    OddK,
    None,
}

pub fn classify_parity(nprime: &BigUint, mprime: &BigUint, d: u64, n1: &BigUint) -> ParityClass {
    let (n_even, m_even) = (nprime.is_even(), mprime.is_even());
    if d.is_multiple_of(2) || (n_even && m_even) {
        return ParityClass::AllK;
    }
    if n1.is_odd() {
        // d odd and n₁ odd: every m_k is even and every n_k odd, so m ≡ m'.
        return if m_even {
            ParityClass::AllK
        } else {
            ParityClass::None
        };
    }
    match (n_even, m_even) {
        (false, true) => ParityClass::EvenK,
        (true, false) => ParityClass::OddK,
        _ => ParityClass::None,
    }
}

/// A particular solution `(n', m')` with `n', m' >= 0` inside the box
/// `n' < z·√(n₁ + m₁√d)`, `m' < z·√((n₁ + m₁√d)/d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Representative {
    #[serde(serialize_with = "serialize_decimal")]
    pub nprime: BigUint,
    #[serde(serialize_with = "serialize_decimal")]
    pub mprime: BigUint,
    pub parity_class: ParityClass,
}

/// `lhs < a + b·√d`, decided on integers.
fn below_surd(lhs: &BigUint, a: &BigUint, b: &BigUint, d: u64) -> bool {
    if lhs < a {
        return true;
    }
    let t = lhs - a;
    &t * &t < b * b * d
}

pub fn representatives(inst: &PellInstance) -> Result<Vec<Representative>> {
    let unit = fundamental_solution(inst.d)?;
    Ok(representatives_with(inst, &unit))
}

fn representatives_with(inst: &PellInstance, unit: &FundamentalSolution) -> Vec<Representative> {
    let d = inst.d;
    let z_sq = BigUint::from(inst.z) * inst.z;
    let a = &z_sq * &unit.n1;
    let b = &z_sq * &unit.m1;
    let mut reps = Vec::new();
    let mut m = BigUint::zero();
    let mut dm_sq = BigUint::zero();
    // d·m'² < z²n₁ + z²m₁√d bounds m'; the left side grows with m'.
    while below_surd(&dm_sq, &a, &b, d) {
        let n_sq = &z_sq + &dm_sq;
        if below_surd(&n_sq, &a, &b, d) {
            if let Some(n) = exact_sqrt(&n_sq) {
                let parity_class = classify_parity(&n, &m, d, &unit.n1);
                reps.push(Representative {
                    nprime: n,
                    mprime: m.clone(),
                    parity_class,
                });
            }
        }
        // d(m+1)² = dm² + d(2m + 1)
        dm_sq += (&m * 2u32 + 1u32) * d;
        m += 1u32;
    }
    reps
}

/// Signed coefficients `(x_k, y_k)` of `(n' + m'√d)·ε^k` for every `k` whose
/// `x_k` stays within `limit`, walking away from `k = 0` in both directions.
///
/// `x_k = (αε^k + ᾱε^{-k})/2` with `αᾱ = z² > 0`, so `x_k` is positive and
/// unimodal in `k`. A direction is finished once `x_k` exceeds the limit while
/// increasing.
fn orbit_within(
    nprime: &BigUint,
    mprime: &BigUint,
    unit: &FundamentalSolution,
    limit: &BigUint,
) -> Vec<(i64, BigUint, BigUint)> {
    let mut out = Vec::new();
    let start = (BigInt::from(nprime.clone()), BigInt::from(mprime.clone()));
    let limit = BigInt::from(limit.clone());
    if start.0 <= limit {
        out.push((0, nprime.clone(), mprime.clone()));
    }
    for inverse in [false, true] {
        let step = unit.unit(inverse);
        let dir = if inverse { -1 } else { 1 };
        let mut cur = start.clone();
        let mut k = 0i64;
        loop {
            let next = mul_surd(&cur, &step, unit.d);
            k += dir;
            assert!(next.0.is_positive(), "orbit left the positive half-plane");
            let rising = next.0 > cur.0;
            if next.0 <= limit {
                out.push((k, next.0.magnitude().clone(), next.1.magnitude().clone()));
            } else if rising {
                break;
            }
            cur = next;
        }
    }
    out
}

/// Drops representatives lying in the orbit (up to conjugation) of an earlier
/// one, keeping the first of each class.
pub fn dedup_representatives(
    reps: &[Representative],
    unit: &FundamentalSolution,
) -> Vec<Representative> {
    let Some(limit) = reps.iter().map(|r| &r.nprime).max() else {
        return Vec::new();
    };
    let mut covered = vec![false; reps.len()];
    let mut kept = Vec::new();
    for (i, rep) in reps.iter().enumerate() {
        if covered[i] {
            continue;
        }
        kept.push(rep.clone());
        for (_, n, m) in orbit_within(&rep.nprime, &rep.mprime, unit, limit) {
            for (j, other) in reps.iter().enumerate().skip(i) {
                if other.nprime == n && other.mprime == m {
                    covered[j] = true;
                }
            }
        }
    }
    kept
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum SolutionSource {
    /// `|(n' + m'√d)·ε^k|` for the representative at this index.
    Orbit { representative: usize, k: i64 },
    /// `z² = (n − m)(n + m)` with `n − m` equal to `small` (the `d = 1` case).
    DivisorPair { small: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PellSolution {
    #[serde(serialize_with = "serialize_decimal")]
    pub n: BigUint,
    #[serde(serialize_with = "serialize_decimal")]
    pub m: BigUint,
    pub source: SolutionSource,
}

/// Solutions in strictly increasing `n`.
#[derive(Debug, Clone)]
pub struct PellSolutions {
    inner: std::vec::IntoIter<PellSolution>,
}

impl Iterator for PellSolutions {
    type Item = PellSolution;

    fn next(&mut self) -> Option<PellSolution> {
        self.inner.next()
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.inner.size_hint()
    }
}

impl ExactSizeIterator for PellSolutions {}

/// Every positive solution with `m` even, `m > 0` and `n <= n_limit`, each once,
/// ordered by `n`.
pub fn solutions_even_m(inst: &PellInstance, n_limit: &BigUint) -> PellSolutions {
    let solutions = if inst.is_degenerate() {
        solve_degenerate(inst.z)
            .into_iter()
            .filter(|s| &s.n <= n_limit)
            .collect()
    } else {
        let unit = fundamental_solution(inst.d).expect("squarefree d > 1 is not a square");
        orbit_solutions(inst, &unit, n_limit)
    };
    PellSolutions {
        inner: solutions.into_iter(),
    }
}

fn orbit_solutions(
    inst: &PellInstance,
    unit: &FundamentalSolution,
    n_limit: &BigUint,
) -> Vec<PellSolution> {
    let reps = representatives_with(inst, unit);
    let mut found: BTreeMap<BigUint, PellSolution> = BTreeMap::new();
    for (i, rep) in reps.iter().enumerate() {
        if rep.parity_class == ParityClass::None {
            continue;
        }
        for (k, n, m) in orbit_within(&rep.nprime, &rep.mprime, unit, n_limit) {
            // The parity class says which k qualify; checking m itself is
            // enough and also covers overlaps between orbits.
            if m.is_zero() || m.is_odd() {
                continue;
            }
            assert!(
                inst.is_solution(&n, &m),
                "({n}, {m}) does not solve {inst:?}"
            );
            found.entry(n.clone()).or_insert(PellSolution {
                n,
                m,
                source: SolutionSource::Orbit {
                    representative: i,
                    k,
                },
            });
        }
    }
    found.into_values().collect()
}

/// `n² − m² = z²` by splitting `z² = u·v` with `u < v` of equal parity,
/// keeping even `m = (v − u)/2 > 0`. Finite.
pub fn solve_degenerate(z: u64) -> Vec<PellSolution> {
    let z_sq = z as u128 * z as u128;
    let mut divisors = vec![1u128];
    for &(p, e) in factor_u64(z).entries() {
        let base = divisors.clone();
        let mut pk = 1u128;
        for _ in 0..2 * e {
            pk *= p as u128;
            divisors.extend(base.iter().map(|&x| x * pk));
        }
    }
    let mut out: Vec<PellSolution> = divisors
        .into_iter()
        .filter(|&u| u < z as u128)
        .filter_map(|u| {
            let v = z_sq / u;
            if !(v - u).is_multiple_of(4) {
                return None;
            }
            Some(PellSolution {
                n: BigUint::from((u + v) / 2),
                m: BigUint::from((v - u) / 2),
                source: SolutionSource::DivisorPair { small: u as u64 },
            })
        })
        .collect();
    out.sort_by(|x, y| x.n.cmp(&y.n));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn pairs(reps: &[Representative]) -> Vec<(u64, u64)> {
        reps.iter()
            .map(|r| {
                (
                    u64::try_from(&r.nprime).unwrap(),
                    u64::try_from(&r.mprime).unwrap(),
                )
            })
            .collect()
    }

    #[test]
    fn below_surd_decides_exactly() {
        // 4 + 1·√2 ≈ 5.414
        assert!(below_surd(&big(5), &big(4), &big(1), 2));
        assert!(!below_surd(&big(6), &big(4), &big(1), 2));
        assert!(below_surd(&big(3), &big(4), &big(0), 2));
        assert!(!below_surd(&big(4), &big(4), &big(0), 2));
    }

    #[test]
    fn sqrt_cf_examples() {
        assert_eq!(
            sqrt_cf(7).unwrap(),
            SurdExpansion {
                a0: 2,
                period: vec![1, 1, 1, 4]
            }
        );
        assert_eq!(
            sqrt_cf(2).unwrap(),
            SurdExpansion {
                a0: 1,
                period: vec![2]
            }
        );
        assert_eq!(sqrt_cf(4), Err(Error::DegenerateSurd(4)));
        assert_eq!(sqrt_cf(1), Err(Error::DegenerateSurd(1)));
    }

    #[test]
    fn sqrt2_convergents_approach_root() {
        // [1; 2, 2, ...] convergents p/q satisfy p² − 2q² = ±1
        let cf = sqrt_cf(2).unwrap();
        let (mut p0, mut p1) = (1i64, cf.a0 as i64);
        let (mut q0, mut q1) = (0i64, 1i64);
        for _ in 0..20 {
            assert_eq!((p1 * p1 - 2 * q1 * q1).abs(), 1);
            let a = cf.period[0] as i64;
            (p0, p1) = (p1, a * p1 + p0);
            (q0, q1) = (q1, a * q1 + q0);
        }
    }

    #[test]
    fn period_ends_in_twice_a0() {
        for d in 2..=1000u64 {
            if let Ok(cf) = sqrt_cf(d) {
                assert_eq!(*cf.period.last().unwrap(), 2 * cf.a0, "d = {d}");
            }
        }
    }

    fn brute_fundamental(d: u64) -> (u64, u64) {
        (1u64..)
            .find_map(|m| {
                let n_sq = d as u128 * (m as u128) * (m as u128) + 1;
                let n = isqrt_u128(n_sq);
                (n * n == n_sq).then_some((n as u64, m))
            })
            .unwrap()
    }

    #[test]
    fn fundamental_examples() {
        let f = fundamental_solution(7).unwrap();
        assert_eq!((f.n1, f.m1), (big(8), big(3)));
        assert_eq!(brute_fundamental(2), (3, 2));
        assert_eq!(brute_fundamental(3), (2, 1));
        for d in [2, 3] {
            let f = fundamental_solution(d).unwrap();
            let (n, m) = brute_fundamental(d);
            assert_eq!((f.n1, f.m1), (big(n), big(m)));
        }
        assert_eq!(fundamental_solution(9), Err(Error::DegenerateSurd(9)));
        // odd period: √13 = [3; 1,1,1,1,6]
        let f = fundamental_solution(13).unwrap();
        assert_eq!((f.n1, f.m1), (big(649), big(180)));
    }

    #[test]
    fn fundamental_is_minimal() {
        for d in 2..=100u64 {
            if sqrt_cf(d).is_err() {
                continue;
            }
            let f = fundamental_solution(d).unwrap();
            let n1: u64 = (&f.n1).try_into().unwrap_or(u64::MAX);
            if n1 > 100_000 {
                // brute force over m instead
                let (bn, bm) = brute_fundamental(d);
                assert_eq!((f.n1.clone(), f.m1.clone()), (big(bn), big(bm)), "d = {d}");
                continue;
            }
            for n in 1..n1 {
                let rest = (n as u128 * n as u128).saturating_sub(1);
                if rest.is_multiple_of(d as u128) && n > 1 {
                    let m_sq = rest / d as u128;
                    let m = isqrt_u128(m_sq);
                    assert_ne!(m * m, m_sq, "smaller solution n = {n} for d = {d}");
                }
            }
        }
    }

    #[test]
    fn unit_power_examples() {
        let f = fundamental_solution(7).unwrap();
        let int = |x: i64| BigInt::from(x);
        assert_eq!(f.power(0), (int(1), int(0)));
        assert_eq!(f.power(2), (int(127), int(48)));
        assert_eq!(f.power(4), (int(32257), int(12192)));
        assert_eq!(f.power(-1), (int(8), int(-3)));
        assert_eq!(f.power(-2), (int(127), int(-48)));
        assert_eq!(unit_power(7, 4).unwrap(), (int(32257), int(12192)));
    }

    #[test]
    fn representatives_d7_z27() {
        let inst = PellInstance::new(7, 27).unwrap();
        let reps = representatives(&inst).unwrap();
        assert_eq!(
            pairs(&reps),
            vec![(27, 0), (29, 4), (36, 9), (48, 15), (69, 24), (99, 36)]
        );
        let classes: Vec<_> = reps.iter().map(|r| r.parity_class).collect();
        assert_eq!(classes[0], ParityClass::EvenK);
        assert_eq!(classes[2], ParityClass::OddK);
        let unit = fundamental_solution(7).unwrap();
        assert_eq!(
            pairs(&dedup_representatives(&reps, &unit)),
            vec![(27, 0), (29, 4), (36, 9), (48, 15)]
        );
    }

    #[test]
    fn representatives_d2_z1() {
        let inst = PellInstance::new(2, 1).unwrap();
        assert_eq!(pairs(&representatives(&inst).unwrap()), vec![(1, 0)]);
        // exhaustive over the box 3 + 2√2 ≈ 5.83: n' <= 2, m' <= 1
        let brute: Vec<_> = (0u64..=2)
            .flat_map(|n| (0u64..=1).map(move |m| (n, m)))
            .filter(|&(n, m)| n * n == 2 * m * m + 1)
            .collect();
        assert_eq!(brute, vec![(1, 0)]);
    }

    #[test]
    fn parity_examples() {
        let n1 = big(8);
        assert_eq!(
            classify_parity(&big(27), &big(0), 7, &n1),
            ParityClass::EvenK
        );
        assert_eq!(
            classify_parity(&big(36), &big(9), 7, &n1),
            ParityClass::OddK
        );
        assert_eq!(classify_parity(&big(5), &big(3), 7, &n1), ParityClass::None);
        assert_eq!(classify_parity(&big(4), &big(2), 7, &n1), ParityClass::AllK);
        for (n, m) in [(1, 0), (3, 1), (4, 3), (6, 6)] {
            assert_eq!(
                classify_parity(&big(n), &big(m), 2, &big(3)),
                ParityClass::AllK
            );
        }
        // d = 3: n₁ = 2 even; d = 15: n₁ = 4; d = 5: n₁ = 9 odd
        assert_eq!(
            classify_parity(&big(3), &big(1), 5, &big(9)),
            ParityClass::None
        );
        assert_eq!(
            classify_parity(&big(3), &big(2), 5, &big(9)),
            ParityClass::AllK
        );
    }

    #[test]
    fn stream_d7_z27() {
        let inst = PellInstance::new(7, 27).unwrap();
        let sols: Vec<_> = solutions_even_m(&inst, &big(1_000_000))
            .map(|s| (u64::try_from(&s.n).unwrap(), u64::try_from(&s.m).unwrap()))
            .collect();
        for want in [(99, 36), (477, 180), (3429, 1296), (870939, 329184)] {
            assert!(sols.contains(&want), "missing {want:?} in {sols:?}");
        }
        assert!(sols.windows(2).all(|w| w[0].0 < w[1].0));
        assert!(sols.iter().all(|&(_, m)| m.is_multiple_of(2) && m > 0));
    }

    #[test]
    fn degenerate_examples() {
        let got = |z| -> Vec<(u64, u64)> {
            solve_degenerate(z)
                .into_iter()
                .map(|s| ((&s.n).try_into().unwrap(), (&s.m).try_into().unwrap()))
                .collect()
        };
        assert_eq!(got(3), vec![(5, 4)]);
        assert_eq!(got(1), vec![]);
        // 64 = 4·16 gives (10, 6); 2·32 gives (17, 15) with m odd
        assert_eq!(got(8), vec![(10, 6)]);
        let inst = PellInstance::new(1, 8).unwrap();
        assert_eq!(solutions_even_m(&inst, &big(9)).count(), 0);
        assert_eq!(solutions_even_m(&inst, &big(10)).count(), 1);
    }

    #[test]
    fn instance_validation() {
        assert_eq!(
            PellInstance::new(12, 1),
            Err(Error::NotSquarefree {
                d: 12,
                core: 3,
                square_root: 2
            })
        );
        assert!(PellInstance::new(7, 0).is_err());
        assert!(PellInstance::new(1, 5).unwrap().is_degenerate());
    }

    fn brute_even_m(d: u64, z: u64, n_max: u64) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        let z_sq = z as u128 * z as u128;
        let mut m = 2u64;
        // n² = z² + dm² > n_max² once dm² > n_max²
        while d as u128 * m as u128 * m as u128 <= n_max as u128 * n_max as u128 {
            let n_sq = z_sq + d as u128 * m as u128 * m as u128;
            let n = isqrt_u128(n_sq);
            if n * n == n_sq && n <= n_max as u128 {
                out.push((n as u64, m));
            }
            m += 2;
        }
        out.sort();
        out
    }

    #[test]
    fn stream_is_complete_against_direct_search() {
        for d in 1..=20u64 {
            if !squarefree_decompose(d).is_squarefree() {
                continue;
            }
            for z in 1..=30u64 {
                let inst = PellInstance::new(d, z).unwrap();
                let got: Vec<(u64, u64)> = solutions_even_m(&inst, &big(10_000))
                    .map(|s| ((&s.n).try_into().unwrap(), (&s.m).try_into().unwrap()))
                    .collect();
                assert_eq!(got, brute_even_m(d, z, 10_000), "d = {d}, z = {z}");
            }
        }
    }

    #[test]
    fn stream_is_closed_under_the_unit() {
        let limit = big(10_000_000);
        for (d, z) in [(2, 7), (7, 27), (13, 12), (15, 9), (5, 4), (3, 20)] {
            let inst = PellInstance::new(d, z).unwrap();
            let unit = fundamental_solution(d).unwrap();
            let sols: Vec<_> = solutions_even_m(&inst, &limit).collect();
            for s in &sols {
                let here = (BigInt::from(s.n.clone()), BigInt::from(s.m.clone()));
                for inverse in [false, true] {
                    let (n, m) = mul_surd(&here, &unit.unit(inverse), d);
                    let (n, m) = (n.magnitude().clone(), m.magnitude().clone());
                    if n <= limit && m.is_even() && !m.is_zero() {
                        assert!(
                            sols.iter().any(|t| t.n == n && t.m == m),
                            "({n}, {m}) missing for d = {d}, z = {z}"
                        );
                    }
                }
            }
        }
    }
}
