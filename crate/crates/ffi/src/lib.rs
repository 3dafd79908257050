//! C ABI over nucleus-kit.
//!
//! Objects cross the boundary as opaque handles freed by their `_free`
//! function. Every call returns an [`NkStatus`]; on failure the message is
//! available from [`nk_last_error`] on the same thread. Strings returned
//! through out-parameters are owned by the caller and released with
//! [`nk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nucleus_kit::cases::zp::{zp_hom_count, ZpVector};
use nucleus_kit::context::{nucleus, FormalContext};
use nucleus_kit::cxt::read_cxt;
use nucleus_kit::order::{dm_completion, FinPoset};
use nucleus_kit::verify::{run_suite, VerifyConfig};
use nucleus_kit::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NkStatus {
    Ok = 0,
    /// A verification ran and some claim failed.
    VerificationFailed = 1,
    InvalidInput = 2,
    CapExceeded = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    Internal = 6,
}

/// A formal context.
pub struct NkContext(FormalContext);

/// A finite poset.
pub struct NkPoset(FinPoset);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn from_error(e: &Error) -> NkStatus {
    set_error(e.to_string());
    match e.exit_code() {
        3 => NkStatus::CapExceeded,
        2 => NkStatus::InvalidInput,
        _ => NkStatus::VerificationFailed,
    }
}

fn guard(f: impl FnOnce() -> NkStatus) -> NkStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| {
        set_error("internal panic");
        NkStatus::Internal
    })
}

unsafe fn c_str<'a>(s: *const c_char) -> Result<&'a str, NkStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(NkStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("argument is not UTF-8");
        NkStatus::InvalidUtf8
    })
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> NkStatus {
    if out.is_null() {
        set_error("null output pointer");
        return NkStatus::NullPointer;
    }
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            NkStatus::Ok
        }
        Err(_) => {
            set_error("output contains a nul byte");
            NkStatus::Internal
        }
    }
}

unsafe fn put<T>(out: *mut T, v: T) -> NkStatus {
    if out.is_null() {
        set_error("null output pointer");
        return NkStatus::NullPointer;
    }
    *out = v;
    NkStatus::Ok
}

macro_rules! try_nk {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

fn lib<T>(r: nucleus_kit::Result<T>) -> Result<T, NkStatus> {
    r.map_err(|e| from_error(&e))
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn nk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn nk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn nk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a context in Burmeister `.cxt` format.
///
/// # Safety
/// `text` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn nk_context_from_cxt(
    text: *const c_char,
    out: *mut *mut NkContext,
) -> NkStatus {
    guard(|| {
        let s = try_nk!(c_str(text));
        let c = try_nk!(lib(read_cxt(s)));
        put(out, Box::into_raw(Box::new(NkContext(c))))
    })
}

/// Parses a context from JSON.
///
/// # Safety
/// As for [`nk_context_from_cxt`].
#[no_mangle]
pub unsafe extern "C" fn nk_context_from_json(
    text: *const c_char,
    out: *mut *mut NkContext,
) -> NkStatus {
    guard(|| {
        let s = try_nk!(c_str(text));
        let v = try_nk!(lib(serde_json_value(s)));
        let c = try_nk!(lib(FormalContext::from_json(&v)));
        put(out, Box::into_raw(Box::new(NkContext(c))))
    })
}

fn serde_json_value(s: &str) -> nucleus_kit::Result<serde_json::Value> {
    serde_json::from_str(s).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// # Safety
/// `c` is null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn nk_context_free(c: *mut NkContext) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of formal concepts.
///
/// # Safety
/// `c` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn nk_context_concept_count(
    c: *const NkContext,
    out: *mut usize,
) -> NkStatus {
    guard(|| match c.as_ref() {
        Some(c) => put(out, nucleus(&c.0).len()),
        None => {
            set_error("null context");
            NkStatus::NullPointer
        }
    })
}

/// The concept lattice as JSON.
///
/// # Safety
/// `c` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn nk_context_nucleus_json(
    c: *const NkContext,
    out: *mut *mut c_char,
) -> NkStatus {
    guard(|| match c.as_ref() {
        Some(c) => put_string(out, nucleus(&c.0).to_json().to_string()),
        None => {
            set_error("null context");
            NkStatus::NullPointer
        }
    })
}

/// Parses a poset from JSON.
///
/// # Safety
/// `text` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn nk_poset_from_json(
    text: *const c_char,
    out: *mut *mut NkPoset,
) -> NkStatus {
    guard(|| {
        let s = try_nk!(c_str(text));
        let v = try_nk!(lib(serde_json_value(s)));
        let p = try_nk!(lib(FinPoset::from_json(&v)));
        put(out, Box::into_raw(Box::new(NkPoset(p))))
    })
}

/// # Safety
/// `p` is null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn nk_poset_free(p: *mut NkPoset) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of cuts in the Dedekind-MacNeille completion.
///
/// # Safety
/// `p` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn nk_poset_cut_count(p: *const NkPoset, out: *mut usize) -> NkStatus {
    guard(|| match p.as_ref() {
        Some(p) => put(out, dm_completion(&p.0).len()),
        None => {
            set_error("null poset");
            NkStatus::NullPointer
        }
    })
}

/// The completion as JSON.
///
/// # Safety
/// `p` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn nk_poset_dm_json(p: *const NkPoset, out: *mut *mut c_char) -> NkStatus {
    guard(|| match p.as_ref() {
        Some(p) => put_string(out, dm_completion(&p.0).to_json().to_string()),
        None => {
            set_error("null poset");
            NkStatus::NullPointer
        }
    })
}

/// Number of equivariant maps between two Z/p-sets, each given by its
/// number of fixed points and of free orbits, as a decimal string.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn nk_zp_hom_count(
    p: usize,
    x_fixed: usize,
    x_free: usize,
    y_fixed: usize,
    y_free: usize,
    out: *mut *mut c_char,
) -> NkStatus {
    guard(|| {
        let x = try_nk!(lib(ZpVector::new(p, x_fixed, x_free)));
        let y = try_nk!(lib(ZpVector::new(p, y_fixed, y_free)));
        let n = try_nk!(lib(zp_hom_count(&x, &y)));
        put_string(out, n.to_string())
    })
}

/// Runs a verification suite. The JSON report is written to `out` in every
/// case where the suite ran; the status is `VerificationFailed` when some
/// claim failed.
///
/// # Safety
/// `suite` is a nul-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn nk_verify(
    suite: *const c_char,
    max_size: usize,
    budget: u64,
    out: *mut *mut c_char,
) -> NkStatus {
    guard(|| {
        let name = try_nk!(c_str(suite));
        if max_size == 0 || budget == 0 {
            set_error("max_size and budget must be positive");
            return NkStatus::InvalidInput;
        }
        let cfg = VerifyConfig {
            max_size,
            budget,
            ..VerifyConfig::default()
        };
        let report = try_nk!(lib(run_suite(name, &cfg)));
        let pass = report.pass();
        let s = put_string(out, report.without_witnesses().to_json().to_string());
        if s != NkStatus::Ok {
            return s;
        }
        if pass {
            NkStatus::Ok
        } else {
            set_error(format!("suite {name}: some claims failed"));
            NkStatus::VerificationFailed
        }
    })
}
