//! C ABI over the `multider` engine.
//!
//! Handles are opaque and owned by the caller once returned; free them with
//! the matching `*_free`. Strings returned through out-parameters are owned
//! by the caller and released with `md_string_free`. Every fallible call
//! returns an `MdStatus` and records a message readable via
//! `md_last_error` on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use multider::cli::Limits;
use multider::coxeter::lookup;
use multider::multider::{run_checks, CheckKind, DerivationBasis, Pipeline};
use multider::serial::poly_matrix_record;
use multider::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MdStatus {
    Ok = 0,
    InvalidArgument = 1,
    UnknownSystem = 2,
    LimitExceeded = 3,
    TheoremViolation = 4,
    Internal = 5,
    Panic = 6,
}

/// A catalog system together with its computation cache.
pub struct MdSystem {
    pipe: Pipeline,
}

/// A computed basis `P_m`.
pub struct MdBasis {
    basis: DerivationBasis,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> MdStatus {
    match e {
        Error::UnknownSystem(_) | Error::UnsupportedSystem(_) => MdStatus::UnknownSystem,
        Error::LimitExceeded(_) => MdStatus::LimitExceeded,
        Error::TheoremViolation { .. } => MdStatus::TheoremViolation,
        Error::Parse(_) | Error::Dimension(_) | Error::IndexOutOfRange { .. } => MdStatus::InvalidArgument,
        _ => MdStatus::Internal,
    }
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), (MdStatus, String)>) -> MdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            MdStatus::Ok
        }
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("panic: {msg}"));
            MdStatus::Panic
        }
    }
}

fn check_m(m: usize) -> Result<(), (MdStatus, String)> {
    let max = Limits::default().max_m;
    if m > max {
        return Err((MdStatus::LimitExceeded, format!("m = {m} exceeds {max}")));
    }
    Ok(())
}

fn lift(e: Error) -> (MdStatus, String) {
    (status_of(&e), e.to_string())
}

fn invalid(msg: &str) -> (MdStatus, String) {
    (MdStatus::InvalidArgument, msg.to_string())
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (MdStatus, String)> {
    if s.is_null() {
        return Err(invalid(&format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| invalid(&format!("{what} is not UTF-8")))
}

fn to_c(s: String) -> Result<*mut c_char, (MdStatus, String)> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| (MdStatus::Internal, "string contains NUL".into()))
}

/// Message for the last failed call on this thread; empty after success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn md_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn md_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Looks up a catalog system such as "B3" or "I2(5)". Ranks above 5 and
/// `m` above 8 are refused with `LimitExceeded`.
///
/// # Safety
/// `key` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn md_system_new(key: *const c_char, out: *mut *mut MdSystem) -> MdStatus {
    guard(|| {
        if out.is_null() {
            return Err(invalid("out is null"));
        }
        *out = ptr::null_mut();
        let key = read_str(key, "key")?;
        let s = lookup(key).map_err(lift)?;
        let max = Limits::default().max_rank;
        if s.rank() > max {
            return Err((MdStatus::LimitExceeded, format!("rank {} exceeds {max}", s.rank())));
        }
        *out = Box::into_raw(Box::new(MdSystem { pipe: Pipeline::new(s) }));
        Ok(())
    })
}

/// # Safety
/// `sys` must be null or a handle from `md_system_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn md_system_free(sys: *mut MdSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// Rank and Coxeter number.
///
/// # Safety
/// `sys` must be a live handle; `rank` and `h` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn md_system_info(sys: *const MdSystem, rank: *mut usize, h: *mut u32) -> MdStatus {
    guard(|| {
        let sys = sys.as_ref().ok_or_else(|| invalid("sys is null"))?;
        if rank.is_null() || h.is_null() {
            return Err(invalid("out pointer is null"));
        }
        *rank = sys.pipe.system().rank();
        *h = sys.pipe.system().coxeter_number();
        Ok(())
    })
}

/// Copies the exponents into `buf` (capacity `cap`); `len` receives the rank.
///
/// # Safety
/// `sys` must be a live handle; `buf` must hold `cap` values; `len` valid.
#[no_mangle]
pub unsafe extern "C" fn md_system_exponents(
    sys: *const MdSystem,
    buf: *mut u32,
    cap: usize,
    len: *mut usize,
) -> MdStatus {
    guard(|| {
        let sys = sys.as_ref().ok_or_else(|| invalid("sys is null"))?;
        if len.is_null() {
            return Err(invalid("len is null"));
        }
        let ex = sys.pipe.system().exponents();
        *len = ex.len();
        if cap < ex.len() || buf.is_null() {
            return Err(invalid("buffer too small"));
        }
        ptr::copy_nonoverlapping(ex.as_ptr(), buf, ex.len());
        Ok(())
    })
}

/// Computes `P_m`. Results for `D^k x` are cached in `sys`.
///
/// # Safety
/// `sys` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn md_basis_new(sys: *const MdSystem, m: usize, out: *mut *mut MdBasis) -> MdStatus {
    guard(|| {
        let sys = sys.as_ref().ok_or_else(|| invalid("sys is null"))?;
        if out.is_null() {
            return Err(invalid("out is null"));
        }
        *out = ptr::null_mut();
        check_m(m)?;
        let basis = sys.pipe.p_matrix(m).map_err(lift)?;
        *out = Box::into_raw(Box::new(MdBasis { basis }));
        Ok(())
    })
}

/// # Safety
/// `b` must be null or a handle from `md_basis_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn md_basis_free(b: *mut MdBasis) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Degree of column `j` (0-based).
///
/// # Safety
/// `b` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn md_basis_degree(b: *const MdBasis, j: usize, out: *mut u32) -> MdStatus {
    guard(|| {
        let b = b.as_ref().ok_or_else(|| invalid("basis is null"))?;
        let d = b.basis.degrees.get(j).ok_or_else(|| invalid("column out of range"))?;
        if out.is_null() {
            return Err(invalid("out is null"));
        }
        *out = *d;
        Ok(())
    })
}

/// Entry `(i, j)` (0-based) as text, e.g. "-1/3*x1^5 + 5/3*x1^3*x2^2".
///
/// # Safety
/// `b` must be a live handle; `out` a valid pointer. Free the result with
/// `md_string_free`.
#[no_mangle]
pub unsafe extern "C" fn md_basis_entry(b: *const MdBasis, i: usize, j: usize, out: *mut *mut c_char) -> MdStatus {
    guard(|| {
        let b = b.as_ref().ok_or_else(|| invalid("basis is null"))?;
        if out.is_null() {
            return Err(invalid("out is null"));
        }
        *out = ptr::null_mut();
        let p = &b.basis.p;
        if i >= p.rows() || j >= p.cols() {
            return Err(invalid("entry out of range"));
        }
        *out = to_c(p.get(i, j).to_string())?;
        Ok(())
    })
}

/// The whole matrix as JSON: rows of lists of `{coefficient, exponents}`.
///
/// # Safety
/// `b` must be a live handle; `out` a valid pointer. Free the result with
/// `md_string_free`.
#[no_mangle]
pub unsafe extern "C" fn md_basis_json(b: *const MdBasis, out: *mut *mut c_char) -> MdStatus {
    guard(|| {
        let b = b.as_ref().ok_or_else(|| invalid("basis is null"))?;
        if out.is_null() {
            return Err(invalid("out is null"));
        }
        *out = ptr::null_mut();
        let json = serde_json::to_string(&poly_matrix_record(&b.basis.p))
            .map_err(|e| (MdStatus::Internal, e.to_string()))?;
        *out = to_c(json)?;
        Ok(())
    })
}

/// Runs checks (comma-separated names, or "all") for `P_m`. `passed` is set
/// to whether every check passed; `report`, if non-null, receives the JSON
/// report. A failing check is not an error.
///
/// # Safety
/// `sys` must be a live handle; `checks` a NUL-terminated string; `passed`
/// valid; `report` null or valid.
#[no_mangle]
pub unsafe extern "C" fn md_verify(
    sys: *const MdSystem,
    m: usize,
    checks: *const c_char,
    passed: *mut bool,
    report: *mut *mut c_char,
) -> MdStatus {
    guard(|| {
        let sys = sys.as_ref().ok_or_else(|| invalid("sys is null"))?;
        if passed.is_null() {
            return Err(invalid("passed is null"));
        }
        check_m(m)?;
        let names = read_str(checks, "checks")?;
        let kinds: Vec<CheckKind> = if names.trim() == "all" {
            CheckKind::ALL.to_vec()
        } else {
            names
                .split(',')
                .map(|c| c.trim().parse())
                .collect::<Result<_, Error>>()
                .map_err(lift)?
        };
        let r = run_checks(&sys.pipe, m, &kinds);
        *passed = r.all_pass();
        if !report.is_null() {
            *report = ptr::null_mut();
            let json = serde_json::to_string(&r).map_err(|e| (MdStatus::Internal, e.to_string()))?;
            *report = to_c(json)?;
        }
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn md_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
