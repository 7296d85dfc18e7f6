//! C interface to `qmut`.
//!
//! Quivers cross the boundary as opaque `QmutQuiver` handles; everything
//! else is JSON text in the same shapes the command line uses. Every call
//! returns a `QmutStatus`. On failure, `qmut_last_error_message` gives a
//! description that stays valid until the next call on the same thread.
//!
//! Strings returned through out-parameters are owned by the caller and
//! must be released with `qmut_string_free`; handles with
//! `qmut_quiver_free`.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;

use qmut::families::{make_family, FamilyError, FamilyName, FamilySpec};
use qmut::interface::json::{parse_quiver, quiver_to_json};
use qmut::{check_sequence, find_reddening, Mode, MutationSequence, Quiver, QuiverError, SearchOutcome, TowerError, VertexId};

/// Result of every `qmut_*` call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QmutStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed JSON or sequence text.
    Parse = 3,
    /// Well-formed input describing an invalid quiver.
    InvalidQuiver = 4,
    UnknownVertex = 5,
    FrozenVertex = 6,
    Overflow = 7,
    /// A search finished without a result.
    NotFound = 8,
    /// Bad family name, parameters or level.
    InvalidArgument = 9,
    /// A panic was caught at the boundary.
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QmutMode {
    Reddening = 0,
    MaximalGreen = 1,
}

impl From<QmutMode> for Mode {
    fn from(m: QmutMode) -> Mode {
        match m {
            QmutMode::Reddening => Mode::Reddening,
            QmutMode::MaximalGreen => Mode::MaximalGreen,
        }
    }
}

/// Opaque quiver handle.
pub struct QmutQuiver {
    inner: Quiver,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(QmutStatus, String);

impl Failure {
    fn new(status: QmutStatus, msg: impl ToString) -> Self {
        Failure(status, msg.to_string())
    }
}

impl From<QuiverError> for Failure {
    fn from(e: QuiverError) -> Self {
        let status = match e {
            QuiverError::UnknownVertex(_) => QmutStatus::UnknownVertex,
            QuiverError::FrozenVertexMutation(_) | QuiverError::FrozenVertexQuery(_) => QmutStatus::FrozenVertex,
            QuiverError::ArithmeticOverflow => QmutStatus::Overflow,
            _ => QmutStatus::InvalidQuiver,
        };
        Failure::new(status, e)
    }
}

impl From<qmut::interface::Error> for Failure {
    fn from(e: qmut::interface::Error) -> Self {
        match e {
            qmut::interface::Error::Quiver(q) => q.into(),
            qmut::interface::Error::Json(j) => Failure::new(QmutStatus::Parse, j),
            other => Failure::new(QmutStatus::InvalidArgument, other),
        }
    }
}

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Self {
        Failure::new(QmutStatus::InvalidArgument, e)
    }
}

impl From<TowerError> for Failure {
    fn from(e: TowerError) -> Self {
        match e {
            TowerError::Quiver(q) => q.into(),
            other => Failure::new(QmutStatus::InvalidArgument, other),
        }
    }
}

fn set_error(msg: Option<String>) {
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = msg.map(|m| CString::new(m.replace('\0', " ")).expect("no interior nul"));
    });
}

/// Runs `f`, records its error message and converts panics.
fn guard<F>(f: F) -> QmutStatus
where
    F: FnOnce() -> Result<(), Failure> + UnwindSafe,
{
    match catch_unwind(f) {
        Ok(Ok(())) => {
            set_error(None);
            QmutStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(Some(msg));
            status
        }
        Err(_) => {
            set_error(Some("panic in qmut".into()));
            QmutStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(QmutStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure::new(QmutStatus::InvalidUtf8, e))
}

unsafe fn handle<'a>(q: *const QmutQuiver) -> Result<&'a Quiver, Failure> {
    q.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| Failure::new(QmutStatus::NullPointer, "null quiver handle"))
}

fn check_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure::new(QmutStatus::NullPointer, "null output pointer"))
    } else {
        Ok(())
    }
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s).expect("JSON output has no nul bytes").into_raw()
}

fn boxed(q: Quiver) -> *mut QmutQuiver {
    Box::into_raw(Box::new(QmutQuiver { inner: q }))
}

/// Parses a quiver document into a new handle.
///
/// # Safety
/// `json` must be a valid nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qmut_quiver_from_json(json: *const c_char, out: *mut *mut QmutQuiver) -> QmutStatus {
    guard(|| {
        check_out(out)?;
        let q = parse_quiver(read_str(json)?)?;
        *out = boxed(q);
        Ok(())
    })
}

/// Serializes a quiver to a newly allocated JSON string.
///
/// # Safety
/// `q` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qmut_quiver_to_json(q: *const QmutQuiver, out: *mut *mut c_char) -> QmutStatus {
    guard(|| {
        check_out(out)?;
        *out = to_c(quiver_to_json(handle(q)?));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `q` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qmut_quiver_free(q: *mut QmutQuiver) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Mutates the quiver in place at `vertex`. On error the quiver is unchanged.
///
/// # Safety
/// `q` must be a live handle; `vertex` a valid nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn qmut_quiver_mutate(q: *mut QmutQuiver, vertex: *const c_char) -> QmutStatus {
    guard(|| {
        let h = q
            .as_mut()
            .ok_or_else(|| Failure::new(QmutStatus::NullPointer, "null quiver handle"))?;
        let k = VertexId::from(read_str(vertex)?);
        h.inner = h.inner.mutate(&k)?;
        Ok(())
    })
}

/// Checks a comma-separated sequence against the framed quiver.
///
/// `accepted` receives whether the verdict satisfies `mode`; if
/// `verdict_json` is non-null it receives the verdict document.
///
/// # Safety
/// Pointers must be valid as described; `verdict_json` may be null.
#[no_mangle]
pub unsafe extern "C" fn qmut_check_sequence(
    q: *const QmutQuiver,
    sequence: *const c_char,
    mode: QmutMode,
    accepted: *mut bool,
    verdict_json: *mut *mut c_char,
) -> QmutStatus {
    guard(|| {
        check_out(accepted)?;
        let s: MutationSequence = read_str(sequence)?
            .parse()
            .map_err(|e| Failure::new(QmutStatus::Parse, e))?;
        let v = check_sequence(handle(q)?, &s)?;
        *accepted = Mode::from(mode).accepts(v.kind);
        if !verdict_json.is_null() {
            *verdict_json = to_c(serde_json::to_string(&v).expect("verdict serializes"));
        }
        Ok(())
    })
}

/// Shortest reddening (or maximal green) sequence up to `max_len`,
/// written comma-separated to `out`. Returns `QMUT_STATUS_NOT_FOUND`
/// when there is none within the bound.
///
/// # Safety
/// `q` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qmut_find_reddening(
    q: *const QmutQuiver,
    max_len: usize,
    mode: QmutMode,
    out: *mut *mut c_char,
) -> QmutStatus {
    guard(|| {
        check_out(out)?;
        match find_reddening(handle(q)?, max_len, mode.into())? {
            SearchOutcome::Found(s) => {
                *out = to_c(s.to_string());
                Ok(())
            }
            SearchOutcome::NoneUpTo(n) => {
                *out = ptr::null_mut();
                Err(Failure::new(QmutStatus::NotFound, format!("NoneUpTo({n})")))
            }
        }
    })
}

/// Level `level` of a built-in family. `params_json` is an object of
/// integer parameters such as `{"p": 3}`, or null for the defaults.
///
/// # Safety
/// `name` must be a valid string, `params_json` valid or null, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qmut_family_level(
    name: *const c_char,
    params_json: *const c_char,
    level: usize,
    out: *mut *mut QmutQuiver,
) -> QmutStatus {
    guard(|| {
        check_out(out)?;
        let name: FamilyName = read_str(name)?.parse()?;
        let params: BTreeMap<String, i64> = if params_json.is_null() {
            BTreeMap::new()
        } else {
            serde_json::from_str(read_str(params_json)?).map_err(|e| Failure::new(QmutStatus::Parse, e))?
        };
        let q = make_family(&FamilySpec { name, params })?.level(level)?;
        *out = boxed((*q).clone());
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qmut_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null after a
/// successful one. Owned by the library.
#[no_mangle]
pub extern "C" fn qmut_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
