//! One test per acceptance criterion. Each prints a single `PASS`/`FAIL` line
//! (visible with `--nocapture`) and fails when the criterion or its time
//! limit is missed.

use std::process::Command;
use std::time::{Duration, Instant};

use narayana::arith::{isqrt, squarefree_decompose};
use narayana::combinatorics::{catalan, catalan_vp, narayana, narayana_row_sum, NarayanaIndex};
use narayana::pell::{fundamental_solution, representatives, sqrt_cf, unit_power, PellInstance};
use narayana::powers::{
    catalan_not_power, catalan_witness, conjecture_scan, thm1_threshold, Stronger, ThresholdRow,
};
use narayana::squares::{
    crosscheck, family_even, family_odd, family_poly, family_quotient, figure1_data, is_square_pair,
};
use num_bigint::{BigInt, BigUint};

fn report(id: u32, what: &str, started: Instant, limit: Duration, failures: Vec<String>) {
    let elapsed = started.elapsed();
    let mut failures = failures;
    if elapsed > limit {
        failures.push(format!("took {elapsed:.2?}, limit {limit:?}"));
    }
    if failures.is_empty() {
        println!("PASS criterion {id}: {what} ({elapsed:.2?})");
    } else {
        println!(
            "FAIL criterion {id}: {what} ({elapsed:.2?}): {}",
            failures.join("; ")
        );
        panic!("criterion {id} failed: {}", failures.join("; "));
    }
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl FnOnce() -> String) {
    if !ok {
        failures.push(what());
    }
}

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_narayana"));
    c.env_remove("NARAYANA_WORKERS");
    c
}

#[test]
fn criterion_01_b28_reproduction() {
    let t = Instant::now();
    let out = bin()
        .args(["squares", "--b", "28", "--a-max", "500000"])
        .output()
        .expect("binary runs");
    let mut f = Vec::new();
    check(&mut f, out.status.success(), || {
        format!("exit {:?}", out.status.code())
    });
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<(u64, String)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let cols: Vec<&str> = l.split(',').collect();
            (cols[0].parse().unwrap(), cols[2].to_string())
        })
        .collect();
    let a_set: Vec<u64> = rows.iter().map(|r| r.0).collect();
    check(&mut f, a_set == [63, 252, 1728, 435483], || {
        format!("a-set is {a_set:?}, expected exactly [63, 252, 1728, 435483]")
    });
    let root_of = |a: u64| rows.iter().find(|r| r.0 == a).map(|r| r.1.as_str());
    check(&mut f, root_of(63) == Some("69923143311577493"), || {
        format!("root(63) = {:?}", root_of(63))
    });
    check(
        &mut f,
        root_of(252) == Some("266280675495914347757098255444196475"),
        || format!("root(252) = {:?}", root_of(252)),
    );
    report(
        1,
        "b = 28 hits up to 500000 and roots",
        t,
        Duration::from_secs(10),
        f,
    );
}

#[test]
fn criterion_02_pell_golden_values() {
    let t = Instant::now();
    let mut f = Vec::new();
    let cf = sqrt_cf(7).unwrap();
    check(&mut f, cf.a0 == 2 && cf.period == [1, 1, 1, 4], || {
        format!("sqrt_cf(7) = {cf:?}")
    });
    let u = fundamental_solution(7).unwrap();
    check(
        &mut f,
        (u.n1.clone(), u.m1.clone()) == (BigUint::from(8u32), BigUint::from(3u32)),
        || format!("fundamental(7) = ({}, {})", u.n1, u.m1),
    );
    let p2 = unit_power(7, 2).unwrap();
    check(&mut f, p2 == (BigInt::from(127), BigInt::from(48)), || {
        format!("unit^2 = {p2:?}")
    });
    let p4 = unit_power(7, 4).unwrap();
    check(
        &mut f,
        p4 == (BigInt::from(32257), BigInt::from(12192)),
        || format!("unit^4 = {p4:?}"),
    );
    let reps: Vec<(u64, u64)> = representatives(&PellInstance::new(7, 27).unwrap())
        .unwrap()
        .iter()
        .map(|r| {
            (
                u64::try_from(&r.nprime).unwrap(),
                u64::try_from(&r.mprime).unwrap(),
            )
        })
        .collect();
    let expected = [(27, 0), (29, 4), (36, 9), (48, 15), (69, 24), (99, 36)];
    check(&mut f, reps == expected, || {
        format!("representatives(7, 27) = {reps:?}")
    });
    report(
        2,
        "Pell golden values for d = 7",
        t,
        Duration::from_secs(1),
        f,
    );
}

#[test]
fn criterion_03_giant_root() {
    let t = Instant::now();
    let root = isqrt(&narayana(NarayanaIndex { a: 1728, b: 28 }));
    let expected = "36393925811128600489003879513323005869574641433293468096956";
    let mut f = Vec::new();
    check(&mut f, root.to_string() == expected, || {
        format!("isqrt = {root}")
    });
    check(
        &mut f,
        &root * &root == narayana(NarayanaIndex { a: 1728, b: 28 }),
        || "N(1728, 28) is not a perfect square".into(),
    );
    report(3, "isqrt(N(1728, 28))", t, Duration::from_secs(1), f);
}

#[test]
fn criterion_04_oracle_equivalence() {
    let t = Instant::now();
    let mut f = Vec::new();
    let mut checked = 0;
    for b in 2..=60u64 {
        if squarefree_decompose(b).d < 2 {
            continue;
        }
        checked += 1;
        let r = crosscheck(b, 5000).unwrap();
        check(&mut f, r.agrees(), || {
            format!(
                "b = {b}: only-pell {:?} only-oracle {:?}",
                r.only_pell, r.only_oracle
            )
        });
    }
    report(
        4,
        &format!("Pell vs brute force for {checked} values of b, a <= 5000"),
        t,
        Duration::from_secs(60),
        f,
    );
}

#[test]
fn criterion_05_catalan_audit() {
    let t = Instant::now();
    let mut f = Vec::new();
    for n in 1..=2000 {
        let ok = catalan_not_power(n);
        check(&mut f, ok == Ok(true), || format!("n = {n}: {ok:?}"));
    }
    for n in 6..=5000 {
        match catalan_witness(n) {
            Ok(c) => check(
                &mut f,
                c.p >= n + 2 && c.p <= 2 * n && catalan_vp(n, c.p) == 1,
                || format!("n = {n}: witness {c:?}"),
            ),
            Err(e) => f.push(format!("n = {n}: {e}")),
        }
    }
    check(&mut f, catalan(5) == BigUint::from(42u32), || {
        "C_5 != 42".into()
    });
    report(
        5,
        "Catalan numbers are not perfect powers",
        t,
        Duration::from_secs(30),
        f,
    );
}

#[test]
fn criterion_06_conjecture_scan() {
    let t = Instant::now();
    let report_ = conjecture_scan(1000);
    let mut f = Vec::new();
    check(&mut f, report_.higher_power_hits.is_empty(), || {
        format!("higher powers {:?}", report_.higher_power_hits)
    });
    let fig = figure1_data(1000);
    check(&mut f, report_.square_hits == fig, || {
        format!(
            "{} even-gcd pairs vs {} figure pairs",
            report_.square_hits.len(),
            fig.len()
        )
    });
    report(
        6,
        &format!("exponent-gcd scan to 1000 ({} square pairs)", fig.len()),
        t,
        Duration::from_secs(300),
        f,
    );
}

#[test]
fn criterion_07_family_suite() {
    let t = Instant::now();
    let mut f = Vec::new();
    for n in 2..=99u64 {
        let n2 = (n * n) as u128;
        let mut cases = vec![(family_poly(n).unwrap(), n2 * n2 * n2, "poly")];
        if n % 2 == 1 && n >= 3 {
            cases.push((family_odd(n).unwrap(), n2, "odd"));
        }
        if n % 2 == 0 && n >= 4 {
            cases.push((family_even(n).unwrap(), n2, "even"));
        }
        for ((a, b), quotient, name) in cases {
            check(&mut f, is_square_pair(a, b), || {
                format!("{name} n = {n}: ({a}, {b}) not square")
            });
            let q = family_quotient(a, b);
            check(&mut f, q == Some(quotient), || {
                format!("{name} n = {n}: quotient {q:?}")
            });
        }
    }
    report(7, "three square families for n <= 99", t, Duration::MAX, f);
}

#[test]
fn criterion_08_threshold_remark() {
    let t = Instant::now();
    let mut f = Vec::new();
    let t1362 = thm1_threshold(1362).unwrap();
    let t1360 = thm1_threshold(1360).unwrap();
    check(&mut f, t1362 == (1361, 2), || {
        format!("thm1_threshold(1362) = {t1362:?}")
    });
    check(&mut f, t1360 == (1327, 34), || {
        format!("thm1_threshold(1360) = {t1360:?}")
    });
    let s1360 = ThresholdRow::for_a(1360).unwrap().stronger;
    let s1362 = ThresholdRow::for_a(1362).unwrap().stronger;
    check(&mut f, s1360 == Stronger::Thm2, || {
        format!("a = 1360: {s1360}")
    });
    check(&mut f, s1362 == Stronger::Thm1, || {
        format!("a = 1362: {s1362}")
    });
    // b = 19 clears √1360/1.95 and b = 18 does not: 1521·19² >= 400·1360 > 1521·18²
    check(
        &mut f,
        1521 * 19 * 19 >= 400 * 1360 && 1521 * 18 * 18 < 400 * 1360,
        || "exact threshold comparison at 1360".into(),
    );
    report(
        8,
        "threshold comparison at a = 1360, 1362",
        t,
        Duration::MAX,
        f,
    );
}

#[test]
fn criterion_09_identities() {
    let t = Instant::now();
    let mut f = Vec::new();
    for n in 1..=100u64 {
        for k in 1..=n {
            let idx = NarayanaIndex { a: n, b: k };
            check(&mut f, narayana(idx) == narayana(idx.mirror()), || {
                format!("N({n},{k}) asymmetric")
            });
        }
        check(&mut f, narayana_row_sum(n) == catalan(n), || {
            format!("row {n} does not sum to C_{n}")
        });
    }
    report(9, "symmetry and row sums for n <= 100", t, Duration::MAX, f);
}

#[test]
fn criterion_10_determinism() {
    let t = Instant::now();
    let max = std::thread::available_parallelism()
        .map_or(4, |n| n.get())
        .to_string();
    let mut f = Vec::new();
    for fig in ["1", "2"] {
        let outputs: Vec<Vec<u8>> = ["1", "2", "8", max.as_str()]
            .iter()
            .map(|w| {
                let out = bin()
                    .args(["--workers", w, "figure", fig, "--a-max", "2000"])
                    .output()
                    .expect("binary runs");
                assert!(out.status.success());
                out.stdout
            })
            .collect();
        check(&mut f, outputs.windows(2).all(|w| w[0] == w[1]), || {
            format!("figure {fig} differs across worker counts")
        });
    }
    report(
        10,
        &format!("figure CSV identical with 1, 2, 8, {max} workers"),
        t,
        Duration::MAX,
        f,
    );
}
