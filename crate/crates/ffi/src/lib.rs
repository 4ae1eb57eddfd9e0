//! C ABI over `tvlab`.
//!
//! Every entry point returns a [`TvlabStatus`]; on failure the message is
//! available from [`tvlab_last_error`] on the same thread. Strings handed out
//! by the library are NUL-terminated JSON and must be released with
//! [`tvlab_string_free`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tvlab::complexes::SizeCaps;
use tvlab::homology::{homology, knk_complex};
use tvlab::instance::InstanceFile;
use tvlab::morse::lemma8_matching;
use tvlab::tverberg::{check_colorful_intersection, find_tverberg, theorem1_experiment, ColorSystem};
use tvlab::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TvlabStatus {
    Ok = 0,
    InputError = 1,
    PreconditionError = 2,
    SizeCapError = 3,
    InternalError = 4,
    NullPointer = 5,
    Panic = 6,
}

/// Opaque handle to a validated color system.
pub struct TvlabSystem {
    inner: ColorSystem,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> TvlabStatus {
    match err {
        Error::Input(_) => TvlabStatus::InputError,
        Error::Precondition(_) => TvlabStatus::PreconditionError,
        Error::SizeCap(_) => TvlabStatus::SizeCapError,
        Error::Internal(_) => TvlabStatus::InternalError,
    }
}

/// Run `f`, translating errors and panics into status codes.
fn guard<F: FnOnce() -> Result<(), (TvlabStatus, String)>>(f: F) -> TvlabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TvlabStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside tvlab".into());
            TvlabStatus::Panic
        }
    }
}

fn lib(err: Error) -> (TvlabStatus, String) {
    (status_of(&err), err.to_string())
}

fn null(name: &str) -> (TvlabStatus, String) {
    (TvlabStatus::NullPointer, format!("{name} is null"))
}

fn json_out(value: &serde_json::Value, out: *mut *mut c_char) -> Result<(), (TvlabStatus, String)> {
    let text = serde_json::to_string(value).map_err(|e| (TvlabStatus::InternalError, e.to_string()))?;
    let c = CString::new(text).map_err(|e| (TvlabStatus::InternalError, e.to_string()))?;
    // SAFETY: caller checked `out` for null.
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tvlab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn tvlab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse an instance in the JSON file format.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tvlab_system_from_json(json: *const c_char, out: *mut *mut TvlabSystem) -> TvlabStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|_| (TvlabStatus::InputError, "json is not UTF-8".to_string()))?;
        let system = InstanceFile::from_json(text).and_then(|f| f.to_system()).map_err(lib)?;
        *out = Box::into_raw(Box::new(TvlabSystem { inner: system }));
        Ok(())
    })
}

/// Release a system. Null is ignored.
///
/// # Safety
/// `system` must come from [`tvlab_system_from_json`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn tvlab_system_free(system: *mut TvlabSystem) {
    if !system.is_null() {
        drop(Box::from_raw(system));
    }
}

/// Dimension, family count and sets per family.
///
/// # Safety
/// `system` must be a live handle; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn tvlab_system_shape(
    system: *const TvlabSystem,
    dimension: *mut usize,
    families: *mut usize,
    sets: *mut usize,
) -> TvlabStatus {
    guard(|| {
        let s = system.as_ref().ok_or_else(|| null("system"))?;
        if dimension.is_null() || families.is_null() || sets.is_null() {
            return Err(null("output"));
        }
        *dimension = s.inner.dimension();
        *families = s.inner.m();
        *sets = s.inner.n();
        Ok(())
    })
}

/// Whether every colorful choice of sets has a common point.
///
/// # Safety
/// `system` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tvlab_colorful_check(system: *const TvlabSystem, out: *mut bool) -> TvlabStatus {
    guard(|| {
        let s = system.as_ref().ok_or_else(|| null("system"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = check_colorful_intersection(&s.inner).map_err(lib)?.is_none();
        Ok(())
    })
}

/// First Tverberg `k`-partition of family `family`. On success `*found`
/// says whether one exists and, if so, `*witness_json` holds the witness.
///
/// # Safety
/// `system` must be a live handle; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn tvlab_find_tverberg(
    system: *const TvlabSystem,
    family: usize,
    k: usize,
    found: *mut bool,
    witness_json: *mut *mut c_char,
) -> TvlabStatus {
    guard(|| {
        let s = system.as_ref().ok_or_else(|| null("system"))?;
        if found.is_null() || witness_json.is_null() {
            return Err(null("output"));
        }
        let f = s
            .inner
            .families()
            .get(family)
            .ok_or_else(|| (TvlabStatus::InputError, format!("no family {family}")))?;
        *witness_json = ptr::null_mut();
        match find_tverberg(f, k).map_err(lib)? {
            Some(w) => {
                *found = true;
                let value = serde_json::to_value(w.view()).expect("witness serializes");
                json_out(&value, witness_json)
            }
            None => {
                *found = false;
                Ok(())
            }
        }
    })
}

/// Full verdict report as JSON.
///
/// # Safety
/// `system` must be a live handle; `report_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tvlab_theorem1(
    system: *const TvlabSystem,
    k: usize,
    report_json: *mut *mut c_char,
) -> TvlabStatus {
    guard(|| {
        let s = system.as_ref().ok_or_else(|| null("system"))?;
        if report_json.is_null() {
            return Err(null("report_json"));
        }
        let r = theorem1_experiment(&s.inner, k).map_err(lib)?;
        json_out(&serde_json::to_value(r).expect("report serializes"), report_json)
    })
}

/// Critical-cell count of the recursive matching on `C(n,k)`, and whether
/// the matching is acyclic.
///
/// # Safety
/// The out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn tvlab_morse_critical_count(
    n: usize,
    k: usize,
    critical: *mut usize,
    acyclic: *mut bool,
) -> TvlabStatus {
    guard(|| {
        if critical.is_null() || acyclic.is_null() {
            return Err(null("output"));
        }
        let (_, _, r) = lemma8_matching(n, k).map_err(lib)?;
        *critical = r.critical.len();
        *acyclic = r.acyclic;
        Ok(())
    })
}

/// Betti numbers of `K(n,k)` through `max_degree` (all degrees when
/// negative) as a JSON report. Enumeration caps come from `TVLAB_SIZE_CAP`.
///
/// # Safety
/// `report_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tvlab_knk_homology(
    n: usize,
    k: usize,
    max_degree: i32,
    report_json: *mut *mut c_char,
) -> TvlabStatus {
    guard(|| {
        if report_json.is_null() {
            return Err(null("report_json"));
        }
        let caps = SizeCaps::from_env().map_err(lib)?;
        let x = knk_complex(n, k, caps).map_err(lib)?;
        let top = usize::try_from(max_degree).ok();
        let r = homology(&x, top).map_err(lib)?;
        json_out(&serde_json::to_value(r).expect("report serializes"), report_json)
    })
}
