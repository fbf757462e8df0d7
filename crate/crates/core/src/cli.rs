//! The `narayana` command line.
//!
//! [`run`] parses arguments, builds a [`RunConfig`] and dispatches on it,
//! writing to the supplied streams, so the binary is a thin wrapper.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{exact_sqrt, squarefree_decompose};
use crate::combinatorics::{catalan, catalan_factorization, narayana, NarayanaIndex};
use crate::error::Error;
use crate::pell::{
    dedup_representatives, fundamental_solution, representatives, solutions_even_m, PellInstance,
    PellSolution, Representative,
};
use crate::powers::{
    catalan_not_power, catalan_witness, certify, conjecture_scan, figure2_data, PowerCertificate,
    ThresholdRow,
};
use crate::squares::{crosscheck, figure1_data, squares_for_b, SquareHit};

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum Exit {
    Ok = 0,
    Usage = 1,
    Falsified = 2,
    Io = 3,
    Uncertified = 4,
}

impl Exit {
    pub fn code(self) -> u8 {
        self as u8
    }
}

impl From<Exit> for std::process::ExitCode {
    fn from(e: Exit) -> Self {
        std::process::ExitCode::from(e.code())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Parser)]
#[command(
    name = "narayana",
    version,
    about = "Perfect powers among Catalan and Narayana numbers"
)]
struct Cli {
    /// Worker threads for scans [default: available parallelism]
    #[arg(long, global = true, env = "NARAYANA_WORKERS")]
    workers: Option<usize>,

    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Debug, Subcommand)]
enum CliCommand {
    /// Check that C_1..C_n are not perfect powers, printing a witness per n
    CatalanAudit {
        #[arg(long)]
        n_max: u64,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Every a <= a-max with N(a, b) a perfect square
    Squares {
        #[arg(long)]
        b: u64,
        #[arg(long)]
        a_max: u64,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Re-check each row with an exact square root of N(a, b)
        #[arg(long)]
        verify: bool,
        /// Compare against a brute-force scan over a
        #[arg(long)]
        crosscheck: bool,
    },
    /// Solve n^2 - d m^2 = z^2 with m even
    Pell {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        z: u64,
        #[arg(long, default_value_t = 1_000_000)]
        n_limit: u64,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Data behind the square-pair plot (1) or the threshold comparison (2)
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
        #[arg(long)]
        a_max: u64,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exponent gcd of every N(a, b) with a <= a-max
    Scan {
        #[arg(long)]
        a_max: u64,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certificates bounding k in N(a, b) = m^k
    Certify {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    CatalanAudit {
        n_max: u64,
    },
    Squares {
        b: u64,
        a_max: u64,
        verify: bool,
        crosscheck: bool,
    },
    Pell {
        d: u64,
        z: u64,
        n_limit: u64,
    },
    Figure {
        which: u8,
        a_max: u64,
    },
    Scan {
        a_max: u64,
    },
    Certify {
        a: u64,
        b: u64,
    },
}

/// A validated invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub workers: usize,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn positive(name: &str, v: u64) -> Result<u64, Error> {
    if v == 0 {
        return Err(usage(format!("--{name} must be positive")));
    }
    Ok(v)
}

impl RunConfig {
    fn from_cli(cli: Cli) -> Result<Self, Error> {
        let workers = match cli.workers {
            Some(0) => return Err(usage("--workers must be positive")),
            Some(w) => w,
            None => std::thread::available_parallelism().map_or(1, |n| n.get()),
        };
        let (command, format, out) = match cli.command {
            CliCommand::CatalanAudit { n_max, format, out } => (
                Command::CatalanAudit {
                    n_max: positive("n-max", n_max)?,
                },
                format,
                out,
            ),
            CliCommand::Squares {
                b,
                a_max,
                format,
                out,
                verify,
                crosscheck,
            } => {
                if b < 2 {
                    return Err(usage(format!("--b must be at least 2, got {b}")));
                }
                let a_max = positive("a-max", a_max)?;
                (
                    Command::Squares {
                        b,
                        a_max,
                        verify,
                        crosscheck,
                    },
                    format,
                    out,
                )
            }
            CliCommand::Pell {
                d,
                z,
                n_limit,
                format,
                out,
            } => {
                let d = positive("d", d)?;
                let dec = squarefree_decompose(d);
                if !dec.is_squarefree() {
                    return Err(Error::NotSquarefree {
                        d,
                        core: dec.d,
                        square_root: dec.s,
                    });
                }
                let z = positive("z", z)?;
                let n_limit = positive("n-limit", n_limit)?;
                (Command::Pell { d, z, n_limit }, format, out)
            }
            CliCommand::Figure {
                which,
                a_max,
                format,
                out,
            } => (
                Command::Figure {
                    which,
                    a_max: positive("a-max", a_max)?,
                },
                format,
                out,
            ),
            CliCommand::Scan { a_max, format, out } => {
                if a_max < 4 {
                    return Err(usage(format!("--a-max must be at least 4, got {a_max}")));
                }
                (Command::Scan { a_max }, format, out)
            }
            CliCommand::Certify { a, b, format, out } => {
                if !(a > b && b > 1) {
                    return Err(usage(format!(
                        "certify needs a > b > 1, got a = {a}, b = {b}"
                    )));
                }
                (Command::Certify { a, b }, format, out)
            }
        };
        let default = match command {
            Command::Certify { .. } => Format::Json,
            _ => Format::Csv,
        };
        let format = format.unwrap_or(default);
        if format == Format::Svg && !matches!(command, Command::Figure { .. }) {
            return Err(usage("--format svg is only available for figure"));
        }
        Ok(Self {
            command,
            format,
            out,
            workers,
        })
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Exit
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(shown.as_bytes());
                    Exit::Ok
                }
                _ => {
                    let _ = stderr.write_all(shown.as_bytes());
                    Exit::Usage
                }
            };
        }
    };
    match RunConfig::from_cli(cli) {
        Ok(config) => execute(&config, stdout, stderr),
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            Exit::Usage
        }
    }
}

/// Runs a validated configuration on a pool of `config.workers` threads.
pub fn execute(config: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Exit {
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot start workers: {e}");
            return Exit::Io;
        }
    };
    let mut notes = Vec::new();
    let outcome = pool.install(|| dispatch(config, &mut notes));
    let _ = stderr.write_all(&notes);
    let (body, exit) = match outcome {
        Ok(pair) => pair,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return match e {
                Error::FalsifiedStep(_) => Exit::Falsified,
                _ => Exit::Usage,
            };
        }
    };
    let written = match &config.out {
        Some(path) => std::fs::write(path, &body),
        None => stdout.write_all(&body).and_then(|_| stdout.flush()),
    };
    if let Err(e) = written {
        let target = config
            .out
            .as_ref()
            .map_or("stdout".into(), |p| p.display().to_string());
        let _ = writeln!(stderr, "error: writing {target}: {e}");
        return Exit::Io;
    }
    exit
}

type Outcome = Result<(Vec<u8>, Exit), Error>;

fn dispatch(config: &RunConfig, stderr: &mut Vec<u8>) -> Outcome {
    let format = config.format;
    match config.command {
        Command::CatalanAudit { n_max } => catalan_audit(n_max, format, stderr),
        Command::Squares {
            b,
            a_max,
            verify,
            crosscheck,
        } => squares(b, a_max, verify, crosscheck, format, stderr),
        Command::Pell { d, z, n_limit } => pell(d, z, n_limit, format),
        Command::Figure { which: 1, a_max } => Ok((figure1(a_max, format), Exit::Ok)),
        Command::Figure { a_max, .. } => Ok((figure2(a_max, format), Exit::Ok)),
        Command::Scan { a_max } => scan(a_max, format),
        Command::Certify { a, b } => certify_cmd(a, b, format, stderr),
    }
}

fn json_line(v: &impl Serialize) -> Vec<u8> {
    let mut s = serde_json::to_string(v).expect("plain data serializes");
    s.push('\n');
    s.into_bytes()
}

#[derive(Debug, Serialize)]
struct AuditRow {
    n: u64,
    #[serde(serialize_with = "crate::arith::serialize_decimal")]
    catalan: BigUint,
    p: Option<u64>,
    valuation: Option<u64>,
    pass: bool,
}

fn audit_row(n: u64) -> (AuditRow, Option<Error>) {
    let pass = catalan_not_power(n);
    let (p, valuation) = if n >= 6 {
        catalan_witness(n).map_or((None, None), |c| (Some(c.p), Some(c.valuation)))
    } else {
        let f = catalan_factorization(n);
        f.largest_prime()
            .map_or((None, None), |p| (Some(p), Some(f.exponent_of(p))))
    };
    let row = AuditRow {
        n,
        catalan: catalan(n),
        p,
        valuation,
        pass: matches!(pass, Ok(true)),
    };
    (row, pass.err())
}

fn catalan_audit(n_max: u64, format: Format, stderr: &mut dyn Write) -> Outcome {
    use rayon::prelude::*;
    let rows: Vec<(AuditRow, Option<Error>)> = (1..=n_max).into_par_iter().map(audit_row).collect();
    let mut failed = 0usize;
    for (row, err) in &rows {
        if !row.pass {
            failed += 1;
            let why = err
                .as_ref()
                .map_or("perfect power".to_string(), |e| e.to_string());
            let _ = writeln!(stderr, "falsified at n = {}: {why}", row.n);
        }
    }
    let rows: Vec<AuditRow> = rows.into_iter().map(|(r, _)| r).collect();
    let body = match format {
        Format::Json => json_line(&rows),
        _ => {
            let mut s = String::from("n,catalan,p,valuation,pass\n");
            for r in &rows {
                let opt = |v: Option<u64>| v.map_or(String::new(), |v| v.to_string());
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    r.n,
                    r.catalan,
                    opt(r.p),
                    opt(r.valuation),
                    r.pass
                );
            }
            s.into_bytes()
        }
    };
    Ok((
        body,
        if failed == 0 {
            Exit::Ok
        } else {
            Exit::Falsified
        },
    ))
}

fn squares(
    b: u64,
    a_max: u64,
    verify: bool,
    check: bool,
    format: Format,
    stderr: &mut dyn Write,
) -> Outcome {
    let dec = squarefree_decompose(b);
    if dec.d == 1 {
        let _ = writeln!(
            stderr,
            "note: b = {b} = {}^2 is a square, so d = 1 and the Pell equation degenerates; \
             hits come from the finitely many divisor pairs of (b - 1)^2",
            dec.s
        );
    }
    let hits = squares_for_b(b, a_max)?;
    let mut exit = Exit::Ok;
    if verify {
        for h in &hits {
            let value = narayana(NarayanaIndex { a: h.a, b: h.b });
            if exact_sqrt(&value).as_ref() != Some(&h.root) {
                let _ = writeln!(
                    stderr,
                    "verify failed: N({}, {}) is not {}^2",
                    h.a, h.b, h.root
                );
                exit = Exit::Falsified;
            }
        }
    }
    let report = if check {
        let r = crosscheck(b, a_max)?;
        let _ = writeln!(
            stderr,
            "crosscheck b = {b}, a <= {a_max}: pell {} oracle {} only-pell {:?} only-oracle {:?} {}",
            r.pell.len(),
            r.oracle.len(),
            r.only_pell,
            r.only_oracle,
            if r.agrees() { "agree" } else { "DISAGREE" }
        );
        if !r.agrees() {
            exit = Exit::Falsified;
        }
        Some(r)
    } else {
        None
    };
    let body = match format {
        Format::Json => {
            let rows: Vec<Value> = hits.iter().map(hit_json).collect();
            match report {
                Some(r) => json_line(&json!({ "hits": rows, "crosscheck": r })),
                None => json_line(&rows),
            }
        }
        _ => {
            let mut s = String::from("a,b,root\n");
            for h in &hits {
                let _ = writeln!(s, "{},{},{}", h.a, h.b, h.root);
            }
            s.into_bytes()
        }
    };
    Ok((body, exit))
}

fn hit_json(h: &SquareHit) -> Value {
    json!({ "a": h.a, "b": h.b, "root": h.root.to_string() })
}

fn pair(n: &impl std::fmt::Display, m: &impl std::fmt::Display) -> String {
    format!("({n},{m})")
}

fn rep_list(reps: &[Representative]) -> String {
    reps.iter()
        .map(|r| pair(&r.nprime, &r.mprime))
        .collect::<Vec<_>>()
        .join(" ")
}

fn pell(d: u64, z: u64, n_limit: u64, format: Format) -> Outcome {
    let inst = PellInstance::new(d, z)?;
    let stream: Vec<PellSolution> = solutions_even_m(&inst, &BigUint::from(n_limit)).collect();
    let (unit, raw, kept) = if inst.is_degenerate() {
        (None, Vec::new(), Vec::new())
    } else {
        let unit = fundamental_solution(d)?;
        let raw = representatives(&inst)?;
        let kept = dedup_representatives(&raw, &unit);
        (Some(unit), raw, kept)
    };
    let body = match format {
        Format::Json => json_line(&json!({
            "d": d,
            "z": z,
            "n_limit": n_limit,
            "fundamental": unit.as_ref().map(|u| json!({ "n": u.n1.to_string(), "m": u.m1.to_string() })),
            "representatives": raw,
            "deduplicated": kept,
            "solutions": stream,
        })),
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "d = {d}, z = {z}, n <= {n_limit}");
            match &unit {
                Some(u) => {
                    let _ = writeln!(s, "fundamental: {}", pair(&u.n1, &u.m1));
                    let _ = writeln!(s, "representatives: {}", rep_list(&raw));
                    let _ = writeln!(s, "deduplicated: {}", rep_list(&kept));
                }
                None => {
                    let _ = writeln!(s, "degenerate: d = 1, solutions from divisor pairs of z^2");
                }
            }
            s.push_str("n,m\n");
            for sol in &stream {
                let _ = writeln!(s, "{},{}", sol.n, sol.m);
            }
            s.into_bytes()
        }
    };
    Ok((body, Exit::Ok))
}

fn figure1(a_max: u64, format: Format) -> Vec<u8> {
    let data = if a_max >= 3 {
        figure1_data(a_max)
    } else {
        Vec::new()
    };
    match format {
        Format::Json => {
            let rows: Vec<Value> = data
                .iter()
                .map(|&(a, b)| json!({ "a": a, "b": b }))
                .collect();
            json_line(&rows)
        }
        Format::Svg => {
            let points: Vec<(f64, f64)> = data.iter().map(|&(a, b)| (a as f64, b as f64)).collect();
            svg::scatter(&points, a_max as f64, (a_max as f64 / 2.0).max(1.0), None).into_bytes()
        }
        Format::Csv => {
            let mut s = String::from("a,b\n");
            for (a, b) in data {
                let _ = writeln!(s, "{a},{b}");
            }
            s.into_bytes()
        }
    }
}

fn figure2(a_max: u64, format: Format) -> Vec<u8> {
    let rows: Vec<ThresholdRow> = if a_max >= 4 {
        figure2_data(a_max)
    } else {
        Vec::new()
    };
    match format {
        Format::Json => json_line(&rows),
        Format::Svg => {
            let points: Vec<(f64, f64)> = rows
                .iter()
                .map(|r| (r.a as f64, r.thm1_threshold as f64))
                .collect();
            let curve_top = (a_max as f64).sqrt() / 1.95;
            let y_max = points
                .iter()
                .map(|p| p.1)
                .fold(curve_top, f64::max)
                .max(1.0);
            let curve: Vec<(f64, f64)> = (0..=200)
                .map(|i| {
                    let x = a_max as f64 * i as f64 / 200.0;
                    (x, x.sqrt() / 1.95)
                })
                .collect();
            svg::scatter(&points, a_max as f64, y_max, Some(&curve)).into_bytes()
        }
        Format::Csv => {
            let mut s = String::from(
                "a,thm1_threshold,thm2_threshold_sq_num,thm2_threshold_sq_den,stronger\n",
            );
            for r in rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    r.a,
                    r.thm1_threshold,
                    r.thm2_threshold_sq_num,
                    r.thm2_threshold_sq_den,
                    r.stronger
                );
            }
            s.into_bytes()
        }
    }
}

fn scan(a_max: u64, format: Format) -> Outcome {
    let report = conjecture_scan(a_max);
    let exit = if report.higher_power_hits.is_empty() {
        Exit::Ok
    } else {
        Exit::Falsified
    };
    let body = match format {
        Format::Json => json_line(&json!({
            "a_max": report.a_max,
            "square_hit_count": report.square_hit_count(),
            "square_hits": report.square_hits,
            "higher_power_hits": report.higher_power_hits,
        })),
        _ => {
            let mut s = String::from("a_max,square_hits,higher_power_hits\n");
            let _ = writeln!(
                s,
                "{},{},{}",
                report.a_max,
                report.square_hit_count(),
                report.higher_power_hits.len()
            );
            if !report.higher_power_hits.is_empty() {
                s.push_str("a,b,exponent_gcd\n");
                for (a, b, g) in &report.higher_power_hits {
                    let _ = writeln!(s, "{a},{b},{g}");
                }
            }
            s.into_bytes()
        }
    };
    Ok((body, exit))
}

fn certify_cmd(a: u64, b: u64, format: Format, stderr: &mut dyn Write) -> Outcome {
    let certs = certify(a, b)?;
    let body = match format {
        Format::Csv => {
            let mut s = format!("{}\n", PowerCertificate::CSV_HEADER);
            for c in &certs {
                s.push_str(&c.to_csv_record());
                s.push('\n');
            }
            s.into_bytes()
        }
        _ => certs.iter().flat_map(|c| json_line(&c.to_json())).collect(),
    };
    if certs.is_empty() {
        let _ = writeln!(stderr, "no rule bounds k for N({a}, {b})");
        return Ok((body, Exit::Uncertified));
    }
    Ok((body, Exit::Ok))
}

mod svg {
    use std::fmt::Write as _;

    const WIDTH: f64 = 640.0;
    const HEIGHT: f64 = 480.0;
    const MARGIN: f64 = 40.0;

    /// A bare scatter plot with optional reference polyline, in user units
    /// `[0, x_max] × [0, y_max]`.
    pub fn scatter(
        points: &[(f64, f64)],
        x_max: f64,
        y_max: f64,
        curve: Option<&[(f64, f64)]>,
    ) -> String {
        let x_max = x_max.max(1.0);
        let sx = |x: f64| MARGIN + x / x_max * (WIDTH - 2.0 * MARGIN);
        let sy = |y: f64| HEIGHT - MARGIN - y / y_max * (HEIGHT - 2.0 * MARGIN);
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let (x0, y0, x1, y1) = (sx(0.0), sy(0.0), sx(x_max), sy(y_max));
        let _ = writeln!(
            s,
            r#"<path d="M{x0:.2},{y1:.2} L{x0:.2},{y0:.2} L{x1:.2},{y0:.2}" stroke="black" fill="none"/>"#
        );
        let _ = writeln!(
            s,
            r#"<text x="{x0:.2}" y="{:.2}" font-size="12">0</text>"#,
            y0 + 16.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{x1:.2}" y="{:.2}" font-size="12" text-anchor="end">{x_max}</text>"#,
            y0 + 16.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{y1:.2}" font-size="12" text-anchor="end">{y_max:.2}</text>"#,
            x0 - 4.0
        );
        if let Some(curve) = curve {
            let pts: Vec<String> = curve
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                .collect();
            let _ = writeln!(
                s,
                r#"<polyline points="{}" stroke="green" fill="none"/>"#,
                pts.join(" ")
            );
        }
        for &(x, y) in points {
            let _ = writeln!(
                s,
                r#"<circle cx="{:.2}" cy="{:.2}" r="2" fill="red"/>"#,
                sx(x),
                sy(y)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}
