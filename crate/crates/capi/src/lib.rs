//! C ABI for the toolkit.
//!
//! Conventions:
//! - Algebras are opaque handles created from JSON or the catalog and freed
//!   with [`liesym_algebra_free`].
//! - Every analysis returns a JSON report through an out-parameter; strings
//!   returned by the library are freed with [`liesym_string_free`].
//! - Status codes mirror the CLI exit codes: 0 ok, 2 domain validation
//!   failure (a witness report is still produced when available), 3 input
//!   or parse failure. [`liesym_last_error`] describes the most recent
//!   failure on the calling thread.

use liesym::catalog::catalog_get;
use liesym::cli;
use liesym::lie::LieAlgebra;
use liesym::report;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

/// Status codes mirroring the CLI exit-code contract.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiesymStatus {
    Ok = 0,
    DomainError = 2,
    InputError = 3,
}

/// Opaque algebra handle.
pub struct LiesymAlgebra {
    inner: LieAlgebra,
    catalog_entry: Option<liesym::catalog::CatalogEntry>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_last_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|e| {
        *e.borrow_mut() = CString::new(sanitized).unwrap();
    });
}

fn take_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, LiesymStatus> {
    if ptr.is_null() {
        set_last_error(&format!("{what} is NULL"));
        return Err(LiesymStatus::InputError);
    }
    unsafe { CStr::from_ptr(ptr) }.to_str().map_err(|_| {
        set_last_error(&format!("{what} is not valid UTF-8"));
        LiesymStatus::InputError
    })
}

fn opt_str<'a>(ptr: *const c_char, what: &str) -> Result<Option<&'a str>, LiesymStatus> {
    if ptr.is_null() {
        Ok(None)
    } else {
        take_str(ptr, what).map(Some)
    }
}

fn emit_string(out: *mut *mut c_char, text: String) -> LiesymStatus {
    if out.is_null() {
        set_last_error("output pointer is NULL");
        return LiesymStatus::InputError;
    }
    let c = CString::new(text.replace('\0', " ")).unwrap();
    unsafe { *out = c.into_raw() };
    LiesymStatus::Ok
}

fn status_of(code: i32) -> LiesymStatus {
    match code {
        2 => LiesymStatus::DomainError,
        _ => LiesymStatus::InputError,
    }
}

fn emit_result(
    result: Result<serde_json::Value, cli::Failure>,
    out_json: *mut *mut c_char,
) -> LiesymStatus {
    match result {
        Ok(report) => emit_string(out_json, report.to_string()),
        Err(f) => {
            set_last_error(&f.message);
            if let Some(report) = f.report {
                if !out_json.is_null() {
                    let _ = emit_string(out_json, report.to_string());
                }
            } else if !out_json.is_null() {
                unsafe { *out_json = ptr::null_mut() };
            }
            status_of(f.code)
        }
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn liesym_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr() as *const c_char
}

/// Message describing the most recent failure on this thread.
#[no_mangle]
pub extern "C" fn liesym_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must have been returned by a liesym call (or be NULL).
#[no_mangle]
pub unsafe extern "C" fn liesym_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an algebra file (JSON) into a handle; NULL on failure.
///
/// # Safety
/// `json` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn liesym_algebra_from_json(json: *const c_char) -> *mut LiesymAlgebra {
    let Ok(text) = take_str(json, "algebra JSON") else {
        return ptr::null_mut();
    };
    match report::algebra_from_str(text) {
        Ok(alg) => Box::into_raw(Box::new(LiesymAlgebra {
            inner: alg,
            catalog_entry: None,
        })),
        Err(e) => {
            set_last_error(&e.to_string());
            ptr::null_mut()
        }
    }
}

/// Loads a catalog entry (e.g. "n23", "h1", "abelian:3") into a handle;
/// NULL on failure.
///
/// # Safety
/// `name` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn liesym_algebra_from_catalog(name: *const c_char) -> *mut LiesymAlgebra {
    let Ok(name) = take_str(name, "catalog name") else {
        return ptr::null_mut();
    };
    match catalog_get(name) {
        Ok(entry) => Box::into_raw(Box::new(LiesymAlgebra {
            inner: entry.algebra.clone(),
            catalog_entry: Some(entry),
        })),
        Err(e) => {
            set_last_error(&e.to_string());
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `alg` must come from a liesym constructor (or be NULL).
#[no_mangle]
pub unsafe extern "C" fn liesym_algebra_free(alg: *mut LiesymAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Dimension of the algebra; −1 on NULL.
///
/// # Safety
/// `alg` must be a valid handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn liesym_algebra_dim(alg: *const LiesymAlgebra) -> i32 {
    if alg.is_null() {
        set_last_error("algebra handle is NULL");
        return -1;
    }
    (*alg).inner.dim() as i32
}

/// Serializes the algebra back to its JSON file format.
///
/// # Safety
/// `alg` must be a valid handle; `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn liesym_algebra_to_json(
    alg: *const LiesymAlgebra,
    out_json: *mut *mut c_char,
) -> LiesymStatus {
    if alg.is_null() {
        set_last_error("algebra handle is NULL");
        return LiesymStatus::InputError;
    }
    emit_string(out_json, report::algebra_to_json(&(*alg).inner).to_string())
}

/// Structural report: central series, growth degree, optional weighted
/// basis ("X1:1,X2:1,...") and grading ("1,1,2,...").
///
/// # Safety
/// `alg` must be a valid handle; string arguments NULL or NUL-terminated;
/// `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn liesym_analyze(
    alg: *const LiesymAlgebra,
    weights: *const c_char,
    grading: *const c_char,
    out_json: *mut *mut c_char,
) -> LiesymStatus {
    if alg.is_null() {
        set_last_error("algebra handle is NULL");
        return LiesymStatus::InputError;
    }
    let handle = &*alg;
    let weights = match opt_str(weights, "weights") {
        Ok(w) => w,
        Err(s) => return s,
    };
    let grading = match opt_str(grading, "grading") {
        Ok(g) => g,
        Err(s) => return s,
    };
    emit_result(
        cli::analyze_body(
            &handle.inner,
            handle.catalog_entry.as_ref(),
            weights,
            grading,
        ),
        out_json,
    )
}

/// Validates a commuting system given as newline-separated operator
/// expressions; optional grading and derivation (catalog:NAME).
///
/// # Safety
/// As for [`liesym_analyze`]; `ops` must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn liesym_check_system(
    alg: *const LiesymAlgebra,
    ops: *const c_char,
    grading: *const c_char,
    derivation: *const c_char,
    out_json: *mut *mut c_char,
) -> LiesymStatus {
    if alg.is_null() {
        set_last_error("algebra handle is NULL");
        return LiesymStatus::InputError;
    }
    let handle = &*alg;
    let ops: Vec<String> = match opt_str(ops, "operators") {
        Ok(Some(text)) => text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(String::from)
            .collect(),
        Ok(None) => Vec::new(),
        Err(s) => return s,
    };
    let grading = match opt_str(grading, "grading") {
        Ok(g) => g,
        Err(s) => return s,
    };
    let derivation = match opt_str(derivation, "derivation") {
        Ok(d) => d,
        Err(s) => return s,
    };
    emit_result(
        cli::check_system_body(
            &handle.inner,
            handle.catalog_entry.as_ref(),
            &ops,
            grading,
            derivation,
        ),
        out_json,
    )
}

/// Contracts the algebra along a weighted basis ("EXPR:WEIGHT,...", or the
/// catalog entry's basis when NULL).
///
/// # Safety
/// As for [`liesym_analyze`].
#[no_mangle]
pub unsafe extern "C" fn liesym_contract(
    alg: *const LiesymAlgebra,
    weights: *const c_char,
    out_json: *mut *mut c_char,
) -> LiesymStatus {
    if alg.is_null() {
        set_last_error("algebra handle is NULL");
        return LiesymStatus::InputError;
    }
    let handle = &*alg;
    let weights = match opt_str(weights, "weights") {
        Ok(w) => w,
        Err(s) => return s,
    };
    emit_result(
        cli::contract_body(&handle.inner, handle.catalog_entry.as_ref(), weights),
        out_json,
    )
}

/// Runs any CLI command from a JSON argv array (without the program name),
/// e.g. ["spectrum","plancherel","--op","-(X1^2)","--f","exp(-lambda)"].
/// The report is returned instead of printed; `--out`/`--points` files are
/// still written.
///
/// # Safety
/// `argv_json` must be NUL-terminated; `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn liesym_run(
    argv_json: *const c_char,
    out_json: *mut *mut c_char,
) -> LiesymStatus {
    let Ok(text) = take_str(argv_json, "argv JSON") else {
        return LiesymStatus::InputError;
    };
    let argv: Vec<String> = match serde_json::from_str::<Vec<String>>(text) {
        Ok(v) => v,
        Err(e) => {
            set_last_error(&format!("argv must be a JSON array of strings: {e}"));
            return LiesymStatus::InputError;
        }
    };
    let full_argv = std::iter::once("liesym".to_string()).chain(argv);
    match cli::execute(full_argv) {
        Ok((result, _out)) => emit_result(result, out_json),
        Err(usage) => {
            set_last_error(&usage);
            LiesymStatus::InputError
        }
    }
}
