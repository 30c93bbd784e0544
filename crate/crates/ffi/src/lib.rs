//! C interface to `tautrel`.
//!
//! Tables are built once into an opaque [`TautrelTables`] handle and shared
//! by the query functions. Queries return a [`TautrelStatus`]; on success
//! the result is written through an out-pointer, strings are owned by the
//! caller and released with [`tautrel_string_free`]. On failure,
//! [`tautrel_last_error`] describes the error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tautrel::coeffs::{build_c_table, build_q_table, CTable, QTable};
use tautrel::relations::{faber_json, faber_solve, scan_nonvanishing};
use tautrel::tautring::{extract_psi_relation, extract_relation};
use tautrel::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TautrelStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// The handle's tables are too small for the request.
    OutOfRange = 3,
    /// An identity that must hold exactly failed.
    ConsistencyFailure = 4,
    Internal = 5,
}

/// Coefficient tables `q` and `c` up to a fixed index.
pub struct TautrelTables {
    q: QTable,
    c: CTable,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> TautrelStatus {
    match e {
        Error::TableTooSmall { .. } => TautrelStatus::OutOfRange,
        Error::Consistency(_) => TautrelStatus::ConsistencyFailure,
        Error::RelationOutOfRange { .. } | Error::InvalidArgument(_) | Error::Inadmissible(_) => {
            TautrelStatus::InvalidArgument
        }
        _ => TautrelStatus::Internal,
    }
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), (TautrelStatus, String)>) -> TautrelStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TautrelStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            TautrelStatus::Internal
        }
    }
}

fn lib_err(e: Error) -> (TautrelStatus, String) {
    (status_of(&e), e.to_string())
}

fn null_err(name: &str) -> (TautrelStatus, String) {
    (TautrelStatus::NullPointer, format!("{name} is null"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (TautrelStatus, String)> {
    let c = CString::new(s).map_err(|_| (TautrelStatus::Internal, "output contains nul".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn tables_ref<'a>(t: *const TautrelTables) -> Result<&'a TautrelTables, (TautrelStatus, String)> {
    t.as_ref().ok_or_else(|| null_err("tables"))
}

/// Builds `q` and `c` for `1 <= k <= k_max` and stores a new handle in `*out`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tautrel_tables_new(k_max: u32, out: *mut *mut TautrelTables) -> TautrelStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        if k_max == 0 {
            return Err((TautrelStatus::InvalidArgument, "k_max must be >= 1".into()));
        }
        let q = build_q_table(k_max as usize);
        let c = build_c_table(&q).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(TautrelTables { q, c }));
        Ok(())
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `tables` must come from [`tautrel_tables_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tautrel_tables_free(tables: *mut TautrelTables) {
    if !tables.is_null() {
        drop(Box::from_raw(tables));
    }
}

/// Largest index covered by the handle, or 0 for null.
///
/// # Safety
/// `tables` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tautrel_tables_k_max(tables: *const TautrelTables) -> u32 {
    tables.as_ref().map_or(0, |t| t.q.k_max() as u32)
}

/// `q[k][j]` as a decimal string.
///
/// # Safety
/// `tables` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tautrel_q_entry(
    tables: *const TautrelTables,
    k: u32,
    j: u32,
    out: *mut *mut c_char,
) -> TautrelStatus {
    guard(|| {
        let t = tables_ref(tables)?;
        if out.is_null() {
            return Err(null_err("out"));
        }
        let v = t.q.get(k as usize, j as usize).map_err(lib_err)?;
        write_string(out, v.to_string())
    })
}

/// `c[k][j]` as a rational string `"n"` or `"n/d"`.
///
/// # Safety
/// `tables` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tautrel_c_entry(
    tables: *const TautrelTables,
    k: u32,
    j: u32,
    out: *mut *mut c_char,
) -> TautrelStatus {
    guard(|| {
        let t = tables_ref(tables)?;
        if out.is_null() {
            return Err(null_err("out"));
        }
        let v = t.c.get(k as usize, j as usize).map_err(lib_err)?;
        write_string(out, v.to_string())
    })
}

/// The relation for `(g, d, b)`, or the ψ-κ relation for `(g, d)` when
/// `psi` is set, as canonical JSON.
///
/// # Safety
/// `tables` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tautrel_relation_json(
    tables: *const TautrelTables,
    g: i64,
    d: i64,
    b: i64,
    psi: bool,
    out: *mut *mut c_char,
) -> TautrelStatus {
    guard(|| {
        let t = tables_ref(tables)?;
        if out.is_null() {
            return Err(null_err("out"));
        }
        let rel = if psi {
            extract_psi_relation(g, d, &t.q, &t.c)
        } else {
            extract_relation(g, d, b, &t.q, &t.c)
        }
        .map_err(lib_err)?;
        write_string(out, rel.to_json())
    })
}

/// Expressions for `κ_a`, `[g/3] < a <= g-2`, as a JSON array; with
/// `rewrite` every expression uses only `κ_1 ... κ_[g/3]`.
///
/// # Safety
/// `tables` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tautrel_faber_json(
    tables: *const TautrelTables,
    g: i64,
    rewrite: bool,
    out: *mut *mut c_char,
) -> TautrelStatus {
    guard(|| {
        let t = tables_ref(tables)?;
        if out.is_null() {
            return Err(null_err("out"));
        }
        let exprs = faber_solve(g, &t.q, &t.c).map_err(lib_err)?;
        write_string(out, faber_json(&exprs, rewrite))
    })
}

/// Nonvanishing scan for `a <= a_max` as JSON. A report with failures is
/// still returned with status `Ok`; inspect its `"failures"` array.
///
/// # Safety
/// `tables` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tautrel_scan_json(
    tables: *const TautrelTables,
    a_max: u32,
    out: *mut *mut c_char,
) -> TautrelStatus {
    guard(|| {
        let t = tables_ref(tables)?;
        if out.is_null() {
            return Err(null_err("out"));
        }
        let report = scan_nonvanishing(a_max as usize, &t.q, &t.c).map_err(lib_err)?;
        write_string(out, report.to_json())
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tautrel_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tautrel_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Reads a string returned by this library; for tests and Rust callers.
///
/// # Safety
/// `s` must be a valid nul-terminated string.
pub unsafe fn read_c_str(s: *const c_char) -> String {
    CStr::from_ptr(s).to_string_lossy().into_owned()
}
