//! C ABI over `formdepth`.
//!
//! Handles are opaque and owned by the caller, who releases them with the
//! matching `*_free`. Fallible calls return an [`FdStatus`]; the message of the
//! most recent failure on the calling thread is available from
//! [`fd_last_error`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use formdepth::cli::{run_json, Command, Overrides, Report};
use formdepth::planeclassify::is_free_divisor;
use formdepth::productforms::{is_smooth_form, rty_check, FormSystem};
use formdepth::{Error, Field, Polynomial, Ring};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Spec = 4,
    RingMismatch = 5,
    Hypothesis = 6,
    Characteristic = 7,
    NotHomogeneous = 8,
    BoundExceeded = 9,
    TableViolation = 10,
    Inconsistent = 11,
    Panic = 12,
}

impl From<&Error> for FdStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse { .. } => FdStatus::Parse,
            Error::Spec(_) => FdStatus::Spec,
            Error::RingMismatch => FdStatus::RingMismatch,
            Error::Hypothesis(_) => FdStatus::Hypothesis,
            Error::Characteristic { .. } => FdStatus::Characteristic,
            Error::NotHomogeneous(_) => FdStatus::NotHomogeneous,
            Error::BoundExceeded(_) => FdStatus::BoundExceeded,
            Error::TableViolation(_) => FdStatus::TableViolation,
            Error::Inconsistent(_) => FdStatus::Inconsistent,
        }
    }
}

/// A polynomial ring over ℚ or 𝔽_p.
pub struct FdRing {
    inner: Arc<Ring>,
}

/// A polynomial in some [`FdRing`].
pub struct FdPoly {
    inner: Polynomial,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: FdStatus, msg: impl Into<String>) -> FdStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> FdStatus {
    fail((&e).into(), e.to_string())
}

/// Runs `f`, turning panics into [`FdStatus::Panic`].
fn guarded(f: impl FnOnce() -> FdStatus) -> FdStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == FdStatus::Ok {
                set_error("");
            }
            s
        }
        Err(_) => fail(FdStatus::Panic, "internal panic"),
    }
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn str_arg<'a>(s: *const c_char) -> Result<&'a str, FdStatus> {
    if s.is_null() {
        return Err(fail(FdStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(FdStatus::InvalidUtf8, "argument is not UTF-8"))
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Creates a ring. `p = 0` selects ℚ; otherwise `p` must be prime.
/// `variables` is a comma-separated list such as `"x,y,z"`.
///
/// # Safety
/// `variables` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fd_ring_new(p: u64, variables: *const c_char, out: *mut *mut FdRing) -> FdStatus {
    guarded(|| {
        if out.is_null() {
            return fail(FdStatus::NullPointer, "null output pointer");
        }
        let vars = match str_arg(variables) {
            Ok(v) => v,
            Err(s) => return s,
        };
        let field = if p == 0 { Ok(Field::Rational) } else { Field::prime(p) };
        let names = vars.split(',').map(|v| v.trim().to_string()).collect();
        match field.and_then(|f| Ring::new(f, names)) {
            Ok(r) => {
                *out = boxed(FdRing { inner: r });
                FdStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `ring` must be null or a handle from [`fd_ring_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fd_ring_free(ring: *mut FdRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// # Safety
/// `ring` must be a live ring handle, `text` a valid C string, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fd_poly_parse(ring: *const FdRing, text: *const c_char, out: *mut *mut FdPoly) -> FdStatus {
    guarded(|| {
        if ring.is_null() || out.is_null() {
            return fail(FdStatus::NullPointer, "null argument");
        }
        let text = match str_arg(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match Polynomial::parse(&(*ring).inner, text) {
            Ok(p) => {
                *out = boxed(FdPoly { inner: p });
                FdStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `poly` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fd_poly_free(poly: *mut FdPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Product of two polynomials in the same ring.
///
/// # Safety
/// `a` and `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fd_poly_mul(a: *const FdPoly, b: *const FdPoly, out: *mut *mut FdPoly) -> FdStatus {
    guarded(|| {
        if a.is_null() || b.is_null() || out.is_null() {
            return fail(FdStatus::NullPointer, "null argument");
        }
        match (*a).inner.multiply(&(*b).inner) {
            Ok(p) => {
                *out = boxed(FdPoly { inner: p });
                FdStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Canonical text form; release with [`fd_string_free`]. Null on a null handle.
///
/// # Safety
/// `poly` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fd_poly_to_string(poly: *const FdPoly) -> *mut c_char {
    if poly.is_null() {
        return ptr::null_mut();
    }
    c_string((*poly).inner.to_string())
}

/// # Safety
/// `poly` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fd_is_smooth(poly: *const FdPoly, out: *mut bool) -> FdStatus {
    guarded(|| {
        if poly.is_null() || out.is_null() {
            return fail(FdStatus::NullPointer, "null argument");
        }
        match is_smooth_form(&(*poly).inner) {
            Ok(b) => {
                *out = b;
                FdStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `poly` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fd_is_free_divisor(poly: *const FdPoly, out: *mut bool) -> FdStatus {
    guarded(|| {
        if poly.is_null() || out.is_null() {
            return fail(FdStatus::NullPointer, "null argument");
        }
        match is_free_divisor(&(*poly).inner) {
            Ok(b) => {
                *out = b;
                FdStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Whether `R/J_F` has depth zero for `F = f_1 ⋯ f_len`.
///
/// # Safety
/// `forms` must point to `len` live handles sharing one ring; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn fd_rty(forms: *const *const FdPoly, len: usize, out: *mut bool) -> FdStatus {
    guarded(|| {
        if forms.is_null() || out.is_null() || len == 0 {
            return fail(FdStatus::NullPointer, "null or empty argument");
        }
        let handles = std::slice::from_raw_parts(forms, len);
        if handles.iter().any(|h| h.is_null()) {
            return fail(FdStatus::NullPointer, "null form handle");
        }
        let polys: Vec<Polynomial> = handles.iter().map(|h| (**h).inner.clone()).collect();
        let ring = polys[0].ring().clone();
        match FormSystem::new(&ring, polys).and_then(|s| rty_check(&s)) {
            Ok(r) => {
                *out = r.rty;
                FdStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Runs a JSON job document, as the `formdepth` command line does, and stores
/// the JSON report in `*report` (release with [`fd_string_free`]); the report
/// is always set unless −1 is returned. `command`
/// may be null to use the job's own command. Returns the process exit status
/// the command line would use, or −1 on invalid arguments.
///
/// # Safety
/// `job` must be a valid C string, `command` null or a valid C string, and
/// `report` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fd_run_job(job: *const c_char, command: *const c_char, report: *mut *mut c_char) -> i32 {
    let result = catch_unwind(AssertUnwindSafe(|| {
        if report.is_null() {
            set_error("null output pointer");
            return -1;
        }
        let Ok(job) = str_arg(job) else { return -1 };
        let cmd = if command.is_null() {
            None
        } else {
            match str_arg(command).map(Command::parse) {
                Ok(Ok(c)) => Some(c),
                Ok(Err(e)) => {
                    set_error(e.to_string());
                    let mut r = Report::new("unknown");
                    r.error = Some((&e).into());
                    *report = c_string(r.to_json());
                    return e.exit_code();
                }
                Err(_) => return -1,
            }
        };
        let outcome = run_json(job, cmd, &Overrides::default());
        set_error(outcome.report.error.as_ref().map(|e| e.message.clone()).unwrap_or_default());
        *report = c_string(outcome.report.to_json());
        outcome.exit_code
    }));
    result.unwrap_or_else(|_| {
        set_error("internal panic");
        -1
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread; empty after a success. The
/// pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn fd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
