//! C ABI over the `diffalg` crate.
//!
//! Presentations cross the boundary as opaque `DiffalgPresentation`
//! handles. Every fallible call returns a `DiffalgStatus`; on failure the
//! message is available from `diffalg_last_error` until the next call on the
//! same thread. Strings returned through `char **` out-parameters are owned by
//! the caller and must be released with `diffalg_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use diffalg::classify::{check_physical, classify_family};
use diffalg::report::{classification_report, Format};
use diffalg::rewrite::{is_pbw, normalize};
use diffalg::{transform, Error, Presentation, Word};

/// Result code of every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiffalgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    IndexOutOfRange = 4,
    NotPbw = 5,
    Domain = 6,
    Panic = 7,
}

/// Opaque presentation handle.
pub struct DiffalgPresentation {
    inner: Presentation,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> DiffalgStatus {
    match e {
        Error::ScalarSyntax(_) | Error::ZeroDenominator(_) | Error::Parse { .. } => DiffalgStatus::Parse,
        Error::IndexOutOfRange { .. } => DiffalgStatus::IndexOutOfRange,
        Error::NotPbw => DiffalgStatus::NotPbw,
        _ => DiffalgStatus::Domain,
    }
}

/// Runs `f`, converting errors and panics into a status and a stored
/// message.
fn guard<F>(f: F) -> DiffalgStatus
where
    F: FnOnce() -> Result<(), (DiffalgStatus, String)>,
{
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DiffalgStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".to_string());
            DiffalgStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (DiffalgStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (DiffalgStatus, String) {
    (DiffalgStatus::NullPointer, format!("{what} is null"))
}

unsafe fn handle<'a>(p: *const DiffalgPresentation) -> Result<&'a Presentation, (DiffalgStatus, String)> {
    p.as_ref().map(|h| &h.inner).ok_or_else(|| null("presentation"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (DiffalgStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|_| (DiffalgStatus::Domain, "output contains NUL".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn write_handle(out: *mut *mut DiffalgPresentation, p: Presentation) -> Result<(), (DiffalgStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(DiffalgPresentation { inner: p }));
    Ok(())
}

/// Parses a presentation in the text format and stores a new handle in
/// `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn diffalg_presentation_parse(
    text: *const c_char,
    out: *mut *mut DiffalgPresentation,
) -> DiffalgStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| (DiffalgStatus::InvalidUtf8, e.to_string()))?;
        let p = Presentation::parse(s).map_err(lib_err)?;
        write_handle(out, p)
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `p` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn diffalg_presentation_free(p: *mut DiffalgPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of generators, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn diffalg_presentation_generators(p: *const DiffalgPresentation) -> usize {
    p.as_ref().map_or(0, |h| h.inner.n())
}

/// Canonical text of a presentation.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn diffalg_presentation_to_text(
    p: *const DiffalgPresentation,
    out: *mut *mut c_char,
) -> DiffalgStatus {
    guard(|| {
        let p = handle(p)?;
        write_string(out, p.to_text())
    })
}

/// Runs the diamond check. `*passed` receives the verdict and, when
/// non-null, `*failing_triples` the number of failing triples.
///
/// # Safety
/// `p` must be a live handle; `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn diffalg_is_pbw(
    p: *const DiffalgPresentation,
    passed: *mut bool,
    failing_triples: *mut usize,
) -> DiffalgStatus {
    guard(|| {
        let p = handle(p)?;
        if passed.is_null() {
            return Err(null("passed"));
        }
        let report = is_pbw(p);
        *passed = report.passed;
        if !failing_triples.is_null() {
            *failing_triples = report.failures.len();
        }
        Ok(())
    })
}

/// Normal form of the word `letters[0..len]` (1-based generator indices),
/// written as text.
///
/// # Safety
/// `p` must be a live handle; `letters` must point to `len` values (it may
/// be null when `len` is 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn diffalg_normalize(
    p: *const DiffalgPresentation,
    letters: *const usize,
    len: usize,
    out: *mut *mut c_char,
) -> DiffalgStatus {
    guard(|| {
        let p = handle(p)?;
        let letters = if len == 0 {
            Vec::new()
        } else if letters.is_null() {
            return Err(null("letters"));
        } else {
            std::slice::from_raw_parts(letters, len).to_vec()
        };
        let word = Word::new(letters);
        word.check_range(p.n()).map_err(lib_err)?;
        let nf = normalize(p, &word).map_err(lib_err)?;
        write_string(out, nf.to_string())
    })
}

/// Classification report; `structured` selects the `key: value` layout.
/// Returns `DIFFALG_STATUS_NOT_PBW` for presentations without the PBW
/// property.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn diffalg_classify(
    p: *const DiffalgPresentation,
    structured: bool,
    out: *mut *mut c_char,
) -> DiffalgStatus {
    guard(|| {
        let p = handle(p)?;
        let a = classify_family(p).map_err(lib_err)?;
        let phys = check_physical(p, &a.decomposition);
        let format = if structured { Format::Structured } else { Format::Text };
        write_string(out, classification_report(&a, &phys, format))
    })
}

/// Mirror image of a presentation as a new handle.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn diffalg_mirror(
    p: *const DiffalgPresentation,
    out: *mut *mut DiffalgPresentation,
) -> DiffalgStatus {
    guard(|| {
        let p = handle(p)?;
        write_handle(out, transform::mirror(p))
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn diffalg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn diffalg_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
