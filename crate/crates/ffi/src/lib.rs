//! C ABI for `bggc`.
//!
//! Diagrams are opaque handles created by `bggc_named_diagram` or
//! `bggc_altij_diagram` and released with `bggc_diagram_free`. Every call
//! returns a `BggcStatus`; on failure a message is kept per thread and can be
//! fetched with `bggc_last_error`. Strings handed out by the library must be
//! released with `bggc_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bggc::bgg::family::alt_diagram;
use bggc::bgg::{Bgg, BggError};
use bggc::cli::{run_suite, Suite, Target};
use bggc::exactla::map_to_json;
use bggc::proxies::{named_bgg, NamedError, VALID_NAMED};

/// Result of every exported call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BggcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnknownName = 3,
    DegreeTooSmall = 4,
    NoValidJ = 5,
    AnticommutativityViolation = 6,
    ValidationFailed = 7,
    IndexOutOfRange = 8,
    VerificationFailed = 9,
    Panic = 10,
}

/// Opaque handle to a validated diagram and its output complex.
pub struct BggcDiagram {
    bgg: Bgg,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: BggcStatus, msg: impl Into<String>) -> BggcStatus {
    set_error(msg);
    status
}

fn bgg_status(e: &BggError) -> BggcStatus {
    match e {
        BggError::NoValidJ { .. } => BggcStatus::NoValidJ,
        BggError::AnticommutativityViolation { .. } => BggcStatus::AnticommutativityViolation,
        _ => BggcStatus::ValidationFailed,
    }
}

fn named_status(e: &NamedError) -> BggcStatus {
    match e {
        NamedError::UnknownName(_) => BggcStatus::UnknownName,
        NamedError::DegreeTooSmall(..) => BggcStatus::DegreeTooSmall,
        NamedError::Proxy(_) => BggcStatus::InvalidArgument,
        NamedError::Invalid(b) => bgg_status(b),
    }
}

/// Runs `f`, turning a panic into `BggcStatus::Panic`.
fn guard(f: impl FnOnce() -> BggcStatus) -> BggcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(BggcStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, BggcStatus> {
    if p.is_null() {
        return Err(fail(BggcStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(BggcStatus::InvalidArgument, "string is not UTF-8"))
}

fn give_string(s: String, out: *mut *mut c_char) -> BggcStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            BggcStatus::Ok
        }
        Err(_) => fail(BggcStatus::InvalidArgument, "output contains a nul byte"),
    }
}

fn store(bgg: Bgg, out: *mut *mut BggcDiagram) -> BggcStatus {
    unsafe { *out = Box::into_raw(Box::new(BggcDiagram { bgg })) };
    BggcStatus::Ok
}

/// Builds and validates a named diagram at degree cap `degree`.
///
/// # Safety
/// `name` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bggc_named_diagram(name: *const c_char, degree: i64, out: *mut *mut BggcDiagram) -> BggcStatus {
    guard(|| {
        if out.is_null() {
            return fail(BggcStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let name = match read_str(name) {
            Ok(s) => s,
            Err(s) => return s,
        };
        match named_bgg(name, degree) {
            Ok(b) => store(b, out),
            Err(e) => fail(named_status(&e), e.to_string()),
        }
    })
}

/// Builds and validates rows `J`, `J+1` of the `Alt^{i,J}`-valued de Rham
/// diagram in dimension `n`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bggc_altij_diagram(n: usize, j: usize, degree: i64, out: *mut *mut BggcDiagram) -> BggcStatus {
    guard(|| {
        if out.is_null() {
            return fail(BggcStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        if !(1..=6).contains(&n) || j >= n || degree < 0 {
            return fail(BggcStatus::InvalidArgument, format!("need 1 <= n <= 6, J < n, degree >= 0; got {n}, {j}, {degree}"));
        }
        match alt_diagram(n, j, degree).validate() {
            Ok(b) => store(b, out),
            Err(e) => fail(bgg_status(&e), e.to_string()),
        }
    })
}

/// Releases a diagram. Null is ignored.
///
/// # Safety
/// `d` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bggc_diagram_free(d: *mut BggcDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

unsafe fn diagram<'a>(d: *const BggcDiagram) -> Result<&'a BggcDiagram, BggcStatus> {
    d.as_ref().ok_or_else(|| fail(BggcStatus::NullPointer, "null diagram"))
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// The index `J` at which the two rows are joined.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bggc_diagram_j(d: *const BggcDiagram, out: *mut usize) -> BggcStatus {
    guard(|| {
        let d = try_status!(diagram(d));
        if out.is_null() {
            return fail(BggcStatus::NullPointer, "null output pointer");
        }
        *out = d.bgg.j;
        BggcStatus::Ok
    })
}

/// Number of spaces in the output complex.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bggc_output_len(d: *const BggcDiagram, out: *mut usize) -> BggcStatus {
    guard(|| {
        let d = try_status!(diagram(d));
        if out.is_null() {
            return fail(BggcStatus::NullPointer, "null output pointer");
        }
        *out = d.bgg.output_complex().len();
        BggcStatus::Ok
    })
}

/// Dimension of output space `index` and of its cohomology.
///
/// # Safety
/// `d` must be a live handle; `dim` and `cohomology` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn bggc_output_dims(
    d: *const BggcDiagram,
    index: usize,
    dim: *mut usize,
    cohomology: *mut usize,
) -> BggcStatus {
    guard(|| {
        let d = try_status!(diagram(d));
        if dim.is_null() || cohomology.is_null() {
            return fail(BggcStatus::NullPointer, "null output pointer");
        }
        let c = d.bgg.output_complex();
        if index >= c.len() {
            return fail(BggcStatus::IndexOutOfRange, format!("space {index} of {}", c.len()));
        }
        *dim = c.dims()[index];
        *cohomology = c.cohomology_dims()[index];
        BggcStatus::Ok
    })
}

/// Output operator `index` in the bases of its spaces, as JSON with `"p/q"`
/// entries. Free the string with `bggc_string_free`.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bggc_operator_json(d: *const BggcDiagram, index: usize, out: *mut *mut c_char) -> BggcStatus {
    guard(|| {
        let d = try_status!(diagram(d));
        if out.is_null() {
            return fail(BggcStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let c = d.bgg.output_complex();
        if index >= c.diffs.len() {
            return fail(BggcStatus::IndexOutOfRange, format!("operator {index} of {}", c.diffs.len()));
        }
        let json = serde_json::to_string(&map_to_json(&c.operator_in_basis(index))).expect("serializable");
        give_string(json, out)
    })
}

/// Runs a verification suite over every valid named diagram and writes the
/// JSON report. Returns `VerificationFailed` if any case fails; the report
/// is written either way.
///
/// # Safety
/// `suite` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bggc_verify_json(
    suite: *const c_char,
    degree: i64,
    max_dim: usize,
    out: *mut *mut c_char,
) -> BggcStatus {
    guard(|| {
        if out.is_null() {
            return fail(BggcStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let suite = match try_status!(read_str(suite)) {
            "appendix1" => Suite::Appendix1,
            "homotopy" => Suite::Homotopy,
            "lemma8" => Suite::Lemma8,
            "projection" => Suite::Projection,
            "exactness" => Suite::Exactness,
            "dimension" => Suite::Dimension,
            "all" => Suite::All,
            other => return fail(BggcStatus::InvalidArgument, format!("unknown suite {other:?}")),
        };
        let targets: Vec<Target> = VALID_NAMED.iter().map(|n| Target::named(n)).collect();
        let report = match run_suite(suite, degree, max_dim, &targets, true) {
            Ok(r) => r,
            Err(e) => return fail(BggcStatus::InvalidArgument, e.0),
        };
        let status = give_string(serde_json::to_string_pretty(&report).expect("serializable"), out);
        if status == BggcStatus::Ok && !report.passed {
            return fail(BggcStatus::VerificationFailed, "some checks failed");
        }
        status
    })
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bggc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Copy of the calling thread's last error message, or null if none. Free
/// it with `bggc_string_free`.
#[no_mangle]
pub extern "C" fn bggc_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn bggc_status_name(status: BggcStatus) -> *const c_char {
    let s: &'static CStr = match status {
        BggcStatus::Ok => c"ok",
        BggcStatus::NullPointer => c"null pointer",
        BggcStatus::InvalidArgument => c"invalid argument",
        BggcStatus::UnknownName => c"unknown name",
        BggcStatus::DegreeTooSmall => c"degree too small",
        BggcStatus::NoValidJ => c"no valid J",
        BggcStatus::AnticommutativityViolation => c"anticommutativity violation",
        BggcStatus::ValidationFailed => c"validation failed",
        BggcStatus::IndexOutOfRange => c"index out of range",
        BggcStatus::VerificationFailed => c"verification failed",
        BggcStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}
