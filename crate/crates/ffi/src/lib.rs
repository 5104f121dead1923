//! C interface to girylab.
//!
//! Every call returns a [`GirylabStatus`]. Results come back as NUL-terminated JSON
//! strings owned by the caller and released with [`girylab_string_free`]. The
//! message for the most recent failure on the calling thread is available from
//! [`girylab_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use girylab::cli::{
    cmd_barycenter, cmd_check, cmd_compose, cmd_separate, list_suites, CheckOptions,
};
use girylab::finmeas::{max_enum, set_max_enum};
use girylab::model::Model;
use girylab::Error;

/// Outcome of a call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GirylabStatus {
    /// Success; for checks, every law held.
    Ok = 0,
    /// A check ran and at least one law failed.
    CheckFailed = 1,
    /// Malformed model, unknown name or unusable argument.
    Input = 2,
    /// A required pointer was null.
    NullPointer = 3,
    /// A string argument was not valid UTF-8.
    Utf8 = 4,
    /// An enumeration would exceed the configured cap.
    EnumerationCap = 5,
    /// A law-checked constructor rejected its input.
    Consistency = 6,
    /// The library panicked; this is a bug.
    Internal = 7,
}

/// A parsed and validated model file.
pub struct GirylabModel {
    model: Model,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> GirylabStatus {
    match e {
        Error::EnumerationCap { .. } => GirylabStatus::EnumerationCap,
        Error::Consistency(_) => GirylabStatus::Consistency,
        _ => GirylabStatus::Input,
    }
}

struct Fail(GirylabStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Run `f`, recording any failure and turning panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<GirylabStatus, Fail>) -> GirylabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => {
            if s == GirylabStatus::Ok {
                set_error("");
            }
            s
        }
        Ok(Err(Fail(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            GirylabStatus::Internal
        }
    }
}

unsafe fn arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(
            GirylabStatus::NullPointer,
            format!("`{name}` is null"),
        ));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(GirylabStatus::Utf8, format!("`{name}` is not UTF-8")))
}

unsafe fn model<'a>(m: *const GirylabModel) -> Result<&'a Model, Fail> {
    m.as_ref()
        .map(|m| &m.model)
        .ok_or_else(|| Fail(GirylabStatus::NullPointer, "`model` is null".into()))
}

unsafe fn give(out: *mut *mut c_char, text: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(GirylabStatus::NullPointer, "`out` is null".into()));
    }
    let c = CString::new(text)
        .map_err(|_| Fail(GirylabStatus::Internal, "result contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn give_model(
    out: *mut *mut GirylabModel,
    loaded: Result<Model, Error>,
) -> Result<GirylabStatus, Fail> {
    if out.is_null() {
        return Err(Fail(GirylabStatus::NullPointer, "`out` is null".into()));
    }
    *out = ptr::null_mut();
    *out = Box::into_raw(Box::new(GirylabModel { model: loaded? }));
    Ok(GirylabStatus::Ok)
}

/// Parse a model from JSON text. On success `*out` holds a handle to release
/// with [`girylab_model_free`].
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn girylab_model_from_json(
    json: *const c_char,
    out: *mut *mut GirylabModel,
) -> GirylabStatus {
    guard(|| {
        let text = arg(json, "json")?;
        give_model(out, Model::from_json(text))
    })
}

/// Load a model from a file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn girylab_model_load(
    path: *const c_char,
    out: *mut *mut GirylabModel,
) -> GirylabStatus {
    guard(|| {
        let p = arg(path, "path")?;
        give_model(out, Model::load(Path::new(p)))
    })
}

/// Release a model handle. Null is ignored.
///
/// # Safety
/// `model` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn girylab_model_free(model: *mut GirylabModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Run a suite (or `"all"`) and write the JSON report to `*out`. Returns
/// `CheckFailed` when the report contains a failing law; the report is written
/// either way.
///
/// # Safety
/// Pointers must be valid; `suite` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn girylab_check(
    model: *const GirylabModel,
    suite: *const c_char,
    seed: u64,
    timings: bool,
    out: *mut *mut c_char,
) -> GirylabStatus {
    guard(|| {
        let m = self::model(model)?;
        let suite = arg(suite, "suite")?.to_owned();
        let outcome = cmd_check(
            m,
            &CheckOptions {
                suite,
                seed,
                timings,
            },
        )?;
        give(out, outcome.text)?;
        if outcome.passed {
            Ok(GirylabStatus::Ok)
        } else {
            set_error("at least one law failed");
            Ok(GirylabStatus::CheckFailed)
        }
    })
}

/// Compose two named kernels, first `k1` then `k2`.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn girylab_compose(
    model: *const GirylabModel,
    k1: *const c_char,
    k2: *const c_char,
    out: *mut *mut c_char,
) -> GirylabStatus {
    guard(|| {
        let text = cmd_compose(self::model(model)?, arg(k1, "k1")?, arg(k2, "k2")?)?;
        give(out, text)?;
        Ok(GirylabStatus::Ok)
    })
}

/// Barycenter of a named measure on a named convex space.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn girylab_barycenter(
    model: *const GirylabModel,
    convex: *const c_char,
    measure: *const c_char,
    out: *mut *mut c_char,
) -> GirylabStatus {
    guard(|| {
        let text = cmd_barycenter(
            self::model(model)?,
            arg(convex, "convex")?,
            arg(measure, "measure")?,
        )?;
        give(out, text)?;
        Ok(GirylabStatus::Ok)
    })
}

/// Separation quotient of a named space.
///
/// # Safety
/// Pointers must be valid; `space` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn girylab_separate(
    model: *const GirylabModel,
    space: *const c_char,
    out: *mut *mut c_char,
) -> GirylabStatus {
    guard(|| {
        let text = cmd_separate(self::model(model)?, arg(space, "space")?)?;
        give(out, text)?;
        Ok(GirylabStatus::Ok)
    })
}

/// The available suites as JSON.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn girylab_list_suites(out: *mut *mut c_char) -> GirylabStatus {
    guard(|| {
        give(out, list_suites())?;
        Ok(GirylabStatus::Ok)
    })
}

/// Set the cap on candidates visited by exhaustive enumerations (process-wide).
#[no_mangle]
pub extern "C" fn girylab_set_max_enum(cap: u64) {
    set_max_enum(cap);
}

/// The current enumeration cap.
#[no_mangle]
pub extern "C" fn girylab_max_enum() -> u64 {
    max_enum()
}

/// Message for the last failure on this thread; empty after a success. The
/// pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn girylab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn girylab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn girylab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
