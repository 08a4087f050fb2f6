//! C ABI for the k3cone library: opaque lattice handles, status codes, and
//! JSON string payloads for the structured results.
//!
//! Conventions: every function returning `K3cStatus` reports failure detail
//! through [`k3c_last_error_message`]; strings returned through `char**`
//! output parameters are owned by the caller and must be released with
//! [`k3c_string_free`]; lattice handles must be released with
//! [`k3c_lattice_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};

use num_bigint::BigInt;

use k3cone::lattice::GramLattice;
use k3cone::linalg::IntVector;
use k3cone::roots;
use k3cone::vinberg::{run_vinberg, VinbergBudget};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum K3cStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    ComputationError = 4,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

/// Detail message for the most recent failure on this thread. The pointer is
/// valid until the next failing call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn k3c_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn k3c_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Opaque lattice handle.
pub struct K3cLattice {
    inner: GramLattice,
}

unsafe fn read_utf8<'a>(ptr: *const c_char) -> Result<&'a str, K3cStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(K3cStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        K3cStatus::InvalidUtf8
    })
}

fn parse_csv(text: &str) -> Result<IntVector, K3cStatus> {
    text.split(',')
        .map(|t| {
            t.trim().parse::<BigInt>().map_err(|_| {
                set_error(&format!("not an integer: `{t}`"));
                K3cStatus::InvalidArgument
            })
        })
        .collect()
}

fn write_handle(out: *mut *mut K3cLattice, lattice: GramLattice) -> K3cStatus {
    if out.is_null() {
        set_error("null output pointer");
        return K3cStatus::NullPointer;
    }
    unsafe {
        *out = Box::into_raw(Box::new(K3cLattice { inner: lattice }));
    }
    K3cStatus::Ok
}

fn write_string(out: *mut *mut c_char, text: String) -> K3cStatus {
    if out.is_null() {
        set_error("null output pointer");
        return K3cStatus::NullPointer;
    }
    match CString::new(text) {
        Ok(s) => {
            unsafe { *out = s.into_raw() };
            K3cStatus::Ok
        }
        Err(_) => {
            set_error("output contained an interior NUL byte");
            K3cStatus::ComputationError
        }
    }
}

/// Parses a lattice definition document (JSON with `label` plus one of
/// `blocks`/`gram`) into a new handle.
///
/// # Safety
/// `definition_json` must be a NUL-terminated string; `out` must be a valid
/// pointer to receive the handle.
#[no_mangle]
pub unsafe extern "C" fn k3c_lattice_parse(
    definition_json: *const c_char,
    out: *mut *mut K3cLattice,
) -> K3cStatus {
    let text = match read_utf8(definition_json) {
        Ok(t) => t,
        Err(status) => return status,
    };
    match GramLattice::from_definition_str(text) {
        Ok(lattice) => write_handle(out, lattice),
        Err(e) => {
            set_error(&e.to_string());
            K3cStatus::InvalidArgument
        }
    }
}

/// Builds a lattice from whitespace-separated block tokens, e.g.
/// `"DIAG(-4) U E8MINUS E8MINUS"`.
///
/// # Safety
/// `blocks` must be a NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn k3c_lattice_from_blocks(
    blocks: *const c_char,
    out: *mut *mut K3cLattice,
) -> K3cStatus {
    let text = match read_utf8(blocks) {
        Ok(t) => t,
        Err(status) => return status,
    };
    let tokens: Vec<String> = text.split_whitespace().map(|s| s.to_string()).collect();
    match GramLattice::from_blocks(&tokens, None) {
        Ok(lattice) => write_handle(out, lattice),
        Err(e) => {
            set_error(&e.to_string());
            K3cStatus::InvalidArgument
        }
    }
}

/// Releases a lattice handle. Passing NULL is a no-op.
///
/// # Safety
/// `lattice` must be a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn k3c_lattice_free(lattice: *mut K3cLattice) {
    if !lattice.is_null() {
        drop(Box::from_raw(lattice));
    }
}

/// Rank of the lattice; 0 for a NULL handle.
///
/// # Safety
/// `lattice` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn k3c_lattice_rank(lattice: *const K3cLattice) -> usize {
    match lattice.as_ref() {
        Some(l) => l.inner.rank(),
        None => 0,
    }
}

/// Signature (positive, negative inertia counts).
///
/// # Safety
/// All pointers must be valid; `lattice` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn k3c_lattice_signature(
    lattice: *const K3cLattice,
    positive: *mut usize,
    negative: *mut usize,
) -> K3cStatus {
    let Some(l) = lattice.as_ref() else {
        set_error("null lattice handle");
        return K3cStatus::NullPointer;
    };
    if positive.is_null() || negative.is_null() {
        set_error("null output pointer");
        return K3cStatus::NullPointer;
    }
    let sig = l.inner.signature();
    *positive = sig.positive;
    *negative = sig.negative;
    K3cStatus::Ok
}

/// Determinant as a decimal string (arbitrary precision).
///
/// # Safety
/// `lattice` must be a live handle; `out` must be valid. Free the result
/// with [`k3c_string_free`].
#[no_mangle]
pub unsafe extern "C" fn k3c_lattice_determinant(
    lattice: *const K3cLattice,
    out: *mut *mut c_char,
) -> K3cStatus {
    let Some(l) = lattice.as_ref() else {
        set_error("null lattice handle");
        return K3cStatus::NullPointer;
    };
    write_string(out, l.inner.determinant().to_string())
}

/// Inner product of two vectors given as comma-separated integers, returned
/// as a decimal string.
///
/// # Safety
/// `lattice` must be a live handle; strings NUL-terminated; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn k3c_lattice_inner(
    lattice: *const K3cLattice,
    x_csv: *const c_char,
    y_csv: *const c_char,
    out: *mut *mut c_char,
) -> K3cStatus {
    let Some(l) = lattice.as_ref() else {
        set_error("null lattice handle");
        return K3cStatus::NullPointer;
    };
    let x = match read_utf8(x_csv).and_then(parse_csv) {
        Ok(v) => v,
        Err(status) => return status,
    };
    let y = match read_utf8(y_csv).and_then(parse_csv) {
        Ok(v) => v,
        Err(status) => return status,
    };
    match l.inner.inner(&x, &y) {
        Ok(value) => write_string(out, value.to_string()),
        Err(e) => {
            set_error(&e.to_string());
            K3cStatus::InvalidArgument
        }
    }
}

/// All roots with the given pairing against `v0`, as a JSON array of integer
/// vectors (sorted lexicographically).
///
/// # Safety
/// `lattice` must be a live handle; `v0_csv` NUL-terminated; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn k3c_roots_at_level(
    lattice: *const K3cLattice,
    v0_csv: *const c_char,
    level: u64,
    out: *mut *mut c_char,
) -> K3cStatus {
    let Some(l) = lattice.as_ref() else {
        set_error("null lattice handle");
        return K3cStatus::NullPointer;
    };
    let v0 = match read_utf8(v0_csv).and_then(parse_csv) {
        Ok(v) => v,
        Err(status) => return status,
    };
    match roots::enumerate_roots_at_level(&l.inner, &v0, &BigInt::from(level)) {
        Ok(found) => {
            let coords: Vec<IntVector> = found.into_iter().map(|r| r.into_coords()).collect();
            let json = k3cone::cone::vectors_to_json(&coords).to_string();
            write_string(out, json)
        }
        Err(e) => {
            set_error(&e.to_string());
            K3cStatus::ComputationError
        }
    }
}

/// Runs the 2-reflectivity decision. `v0_csv` may be NULL to use the default
/// controlling-vector search; zero budget fields select the defaults
/// (64 walls, level 20, 10^6 candidates). The result is the same JSON
/// document the CLI emits for `vinberg run --json`.
///
/// # Safety
/// `lattice` must be a live handle; `out` valid; `v0_csv` NULL or
/// NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn k3c_vinberg_run(
    lattice: *const K3cLattice,
    v0_csv: *const c_char,
    max_walls: usize,
    max_level: u64,
    max_candidates: u64,
    out: *mut *mut c_char,
) -> K3cStatus {
    let Some(l) = lattice.as_ref() else {
        set_error("null lattice handle");
        return K3cStatus::NullPointer;
    };
    let v0 = if v0_csv.is_null() {
        None
    } else {
        match read_utf8(v0_csv).and_then(parse_csv) {
            Ok(v) => Some(v),
            Err(status) => return status,
        }
    };
    let defaults = VinbergBudget::default();
    let budget = VinbergBudget {
        max_walls: if max_walls == 0 {
            defaults.max_walls
        } else {
            max_walls
        },
        max_level: if max_level == 0 {
            defaults.max_level
        } else {
            max_level
        },
        max_candidates: if max_candidates == 0 {
            defaults.max_candidates
        } else {
            max_candidates
        },
    };
    match run_vinberg(&l.inner, v0.as_deref(), &budget) {
        Ok(result) => write_string(out, result.to_value().to_string()),
        Err(e) => {
            set_error(&e.to_string());
            K3cStatus::ComputationError
        }
    }
}

/// Releases a string returned by this library. Passing NULL is a no-op.
///
/// # Safety
/// `s` must originate from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn k3c_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
