//! C ABI over the `narayana` library.
//!
//! Every function returns a [`NarayanaStatus`]; results come back through out
//! pointers. Collections are opaque handles released with their `_free`
//! function, and strings handed out by the library are released with
//! [`narayana_string_free`]. After a non-`Ok` status,
//! [`narayana_last_error_message`] describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use narayana::combinatorics::{narayana, NarayanaIndex};
use narayana::pell::{solutions_even_m, PellInstance, PellSolution};
use narayana::powers::{self, PowerCertificate, Rule};
use narayana::squares::{self, SquareHit};
use narayana::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NarayanaStatus {
    Ok = 0,
    InvalidArgument = 1,
    Precondition = 2,
    FalsifiedStep = 3,
    NullPointer = 4,
    OutOfRange = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NarayanaRule {
    CatalanRamanujan = 0,
    PropAPrime = 1,
    PropAPrimeSquare = 2,
    Thm1 = 3,
    Thm2 = 4,
    ExponentGcd = 5,
}

impl From<Rule> for NarayanaRule {
    fn from(r: Rule) -> Self {
        match r {
            Rule::CatalanRamanujan => Self::CatalanRamanujan,
            Rule::PropAPrime => Self::PropAPrime,
            Rule::PropAPrimeSquare => Self::PropAPrimeSquare,
            Rule::Thm1 => Self::Thm1,
            Rule::Thm2 => Self::Thm2,
            Rule::ExponentGcd => Self::ExponentGcd,
        }
    }
}

/// A certificate; `b` is 0 for Catalan certificates, where `a` holds `n`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NarayanaCertificate {
    pub rule: NarayanaRule,
    pub a: u64,
    pub b: u64,
    pub p: u64,
    pub valuation: u64,
    pub k_bound: u32,
}

impl From<&PowerCertificate> for NarayanaCertificate {
    fn from(c: &PowerCertificate) -> Self {
        Self {
            rule: c.rule.into(),
            a: c.a,
            b: c.b.unwrap_or(0),
            p: c.p,
            valuation: c.valuation,
            k_bound: c.k_bound,
        }
    }
}

pub struct NarayanaSquareHits(Vec<SquareHit>);
pub struct NarayanaPellSolutions(Vec<PellSolution>);
pub struct NarayanaCertificates(Vec<NarayanaCertificate>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: NarayanaStatus, msg: impl Into<String>) -> NarayanaStatus {
    set_last_error(msg.into());
    status
}

fn from_error(e: Error) -> NarayanaStatus {
    let status = match e {
        Error::Precondition(_) => NarayanaStatus::Precondition,
        Error::FalsifiedStep(_) => NarayanaStatus::FalsifiedStep,
        _ => NarayanaStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> NarayanaStatus) -> NarayanaStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|payload| {
        let msg = payload
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        fail(NarayanaStatus::Panic, msg)
    })
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("decimal digits").into_raw()
}

/// Writes `value` through `out`, or reports a null out pointer.
///
/// # Safety
///
/// `out` must be null or valid for writes.
unsafe fn put<T>(out: *mut T, value: T) -> NarayanaStatus {
    if out.is_null() {
        return fail(NarayanaStatus::NullPointer, "null out pointer");
    }
    out.write(value);
    NarayanaStatus::Ok
}

/// Copy of the last error message on this thread, or null if there is none.
/// Release it with [`narayana_string_free`].
#[no_mangle]
pub extern "C" fn narayana_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(ptr::null_mut(), |c| c.clone().into_raw())
    })
}

/// # Safety
///
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn narayana_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `N(a, b)` in decimal.
///
/// # Safety
///
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn narayana_value_decimal(
    a: u64,
    b: u64,
    out: *mut *mut c_char,
) -> NarayanaStatus {
    guard(|| match NarayanaIndex::new(a, b) {
        Ok(idx) => put(out, into_c_string(narayana(idx).to_string())),
        Err(e) => from_error(e),
    })
}

/// Whether `N(a, b)` is a perfect square, for `a >= b >= 1`.
///
/// # Safety
///
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn narayana_is_square_pair(a: u64, b: u64, out: *mut bool) -> NarayanaStatus {
    guard(|| {
        if !(a >= b && b >= 1) {
            return fail(
                NarayanaStatus::InvalidArgument,
                format!("need a >= b >= 1, got ({a}, {b})"),
            );
        }
        put(out, squares::is_square_pair(a, b))
    })
}

/// Whether `C_n` is not a perfect power, for `n >= 1`.
///
/// # Safety
///
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn narayana_catalan_not_power(n: u64, out: *mut bool) -> NarayanaStatus {
    guard(|| match powers::catalan_not_power(n) {
        Ok(v) => put(out, v),
        Err(e) => from_error(e),
    })
}

/// All `a <= a_limit` with `N(a, b)` a square.
///
/// # Safety
///
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn narayana_squares_for_b(
    b: u64,
    a_limit: u64,
    out: *mut *mut NarayanaSquareHits,
) -> NarayanaStatus {
    guard(|| match squares::squares_for_b(b, a_limit) {
        Ok(hits) => put(out, Box::into_raw(Box::new(NarayanaSquareHits(hits)))),
        Err(e) => from_error(e),
    })
}

/// # Safety
///
/// `hits` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn narayana_square_hits_len(hits: *const NarayanaSquareHits) -> usize {
    hits.as_ref().map_or(0, |h| h.0.len())
}

/// The `index`-th hit: its `a` and the decimal square root of `N(a, b)`.
///
/// # Safety
///
/// `hits` must be a live handle and the out pointers valid for writes.
#[no_mangle]
pub unsafe extern "C" fn narayana_square_hits_get(
    hits: *const NarayanaSquareHits,
    index: usize,
    out_a: *mut u64,
    out_root: *mut *mut c_char,
) -> NarayanaStatus {
    guard(|| {
        let Some(hits) = hits.as_ref() else {
            return fail(NarayanaStatus::NullPointer, "null handle");
        };
        let Some(hit) = hits.0.get(index) else {
            return fail(
                NarayanaStatus::OutOfRange,
                format!("index {index} of {}", hits.0.len()),
            );
        };
        if out_a.is_null() || out_root.is_null() {
            return fail(NarayanaStatus::NullPointer, "null out pointer");
        }
        put(out_a, hit.a);
        put(out_root, into_c_string(hit.root.to_string()))
    })
}

/// # Safety
///
/// `hits` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn narayana_square_hits_free(hits: *mut NarayanaSquareHits) {
    if !hits.is_null() {
        drop(Box::from_raw(hits));
    }
}

/// Solutions of `n² − d·m² = z²` with `m > 0` even and `n <= n_limit`.
///
/// # Safety
///
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn narayana_pell_solve(
    d: u64,
    z: u64,
    n_limit: u64,
    out: *mut *mut NarayanaPellSolutions,
) -> NarayanaStatus {
    guard(|| match PellInstance::new(d, z) {
        Ok(inst) => {
            let sols = solutions_even_m(&inst, &n_limit.into()).collect();
            put(out, Box::into_raw(Box::new(NarayanaPellSolutions(sols))))
        }
        Err(e) => from_error(e),
    })
}

/// # Safety
///
/// `sols` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn narayana_pell_solutions_len(sols: *const NarayanaPellSolutions) -> usize {
    sols.as_ref().map_or(0, |s| s.0.len())
}

/// The `index`-th solution as decimal strings.
///
/// # Safety
///
/// `sols` must be a live handle and the out pointers valid for writes.
#[no_mangle]
pub unsafe extern "C" fn narayana_pell_solutions_get(
    sols: *const NarayanaPellSolutions,
    index: usize,
    out_n: *mut *mut c_char,
    out_m: *mut *mut c_char,
) -> NarayanaStatus {
    guard(|| {
        let Some(sols) = sols.as_ref() else {
            return fail(NarayanaStatus::NullPointer, "null handle");
        };
        let Some(sol) = sols.0.get(index) else {
            return fail(
                NarayanaStatus::OutOfRange,
                format!("index {index} of {}", sols.0.len()),
            );
        };
        if out_n.is_null() || out_m.is_null() {
            return fail(NarayanaStatus::NullPointer, "null out pointer");
        }
        put(out_n, into_c_string(sol.n.to_string()));
        put(out_m, into_c_string(sol.m.to_string()))
    })
}

/// # Safety
///
/// `sols` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn narayana_pell_solutions_free(sols: *mut NarayanaPellSolutions) {
    if !sols.is_null() {
        drop(Box::from_raw(sols));
    }
}

/// Every certificate bounding `k` in `N(a, b) = m^k`, for `a > b > 1`. An
/// empty handle means no rule applies.
///
/// # Safety
///
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn narayana_certify(
    a: u64,
    b: u64,
    out: *mut *mut NarayanaCertificates,
) -> NarayanaStatus {
    guard(|| match powers::certify(a, b) {
        Ok(certs) => {
            let certs = certs.iter().map(NarayanaCertificate::from).collect();
            put(out, Box::into_raw(Box::new(NarayanaCertificates(certs))))
        }
        Err(e) => from_error(e),
    })
}

/// # Safety
///
/// `certs` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn narayana_certificates_len(certs: *const NarayanaCertificates) -> usize {
    certs.as_ref().map_or(0, |c| c.0.len())
}

/// # Safety
///
/// `certs` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn narayana_certificates_get(
    certs: *const NarayanaCertificates,
    index: usize,
    out: *mut NarayanaCertificate,
) -> NarayanaStatus {
    guard(|| {
        let Some(certs) = certs.as_ref() else {
            return fail(NarayanaStatus::NullPointer, "null handle");
        };
        match certs.0.get(index) {
            Some(c) => put(out, *c),
            None => fail(
                NarayanaStatus::OutOfRange,
                format!("index {index} of {}", certs.0.len()),
            ),
        }
    })
}

/// # Safety
///
/// `certs` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn narayana_certificates_free(certs: *mut NarayanaCertificates) {
    if !certs.is_null() {
        drop(Box::from_raw(certs));
    }
}
