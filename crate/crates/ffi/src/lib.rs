//! C interface to `groupcode`.
//!
//! Groups and codes are opaque handles created by `gc_*` constructors and
//! released with the matching `_free` function. Every fallible call returns
//! a `GcStatus`; on failure `gc_last_error_message` describes what went
//! wrong on the calling thread. Strings handed out by the library are
//! NUL-terminated JSON or decimal text and must be released with
//! `gc_string_free`. Panics never cross the boundary; they surface as
//! `GC_STATUS_INTERNAL`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use groupcode::cyclic::{interleave, is_cyclic};
use groupcode::decompose::{decompose_with, is_decomposable_with, DecomposeOptions, DEFAULT_MAX_PARTITION_BITS};
use groupcode::isomorphy::{code_aut_group, DEFAULT_MAX_SEARCH_NODES};
use groupcode::json::{code_to_string, decomposition_to_value, parse_code, LoadedCode};
use groupcode::report::{self, ReportOptions};
use groupcode::{aut_group, code_isomorphic, gc_isomorphic, Category, Elem, Error, FiniteGroup, GroupCode, SearchOptions, Word};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GcStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    InvalidInput = 2,
    /// A table or code failed a group axiom or closure.
    NotAGroup = 3,
    /// A search cap was hit before an answer was found.
    ResourceLimit = 4,
    /// Malformed JSON; the message carries line and column.
    Parse = 5,
    /// Internal failure, including a caught panic.
    Internal = 6,
}

/// A finite group given by its Cayley table.
pub struct GcGroup {
    inner: Arc<FiniteGroup>,
}

/// A code, either plain or a group code.
pub struct GcCode {
    inner: LoadedCode,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(GcStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::NotAGroup { .. } | Error::ClosureViolation { .. } => GcStatus::NotAGroup,
            Error::ResourceLimit { .. } => GcStatus::ResourceLimit,
            Error::Parse { .. } => GcStatus::Parse,
            Error::TheoremViolation(_) => GcStatus::Internal,
            _ => GcStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: &str) {
    let text = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> GcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            GcStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal error: {msg}"));
            GcStatus::Internal
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(GcStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON output has no NUL bytes").into_raw()
}

fn search(max_nodes: u64) -> SearchOptions {
    SearchOptions {
        max_nodes: if max_nodes == 0 { DEFAULT_MAX_SEARCH_NODES } else { max_nodes },
    }
}

fn decompose_options(max_partition_bits: usize) -> DecomposeOptions {
    DecomposeOptions {
        max_partition_bits: if max_partition_bits == 0 {
            DEFAULT_MAX_PARTITION_BITS
        } else {
            max_partition_bits
        },
        ..Default::default()
    }
}

fn category(code: &LoadedCode) -> Category {
    match code {
        LoadedCode::Group(_) => Category::Group,
        LoadedCode::Plain(_) => Category::Plain,
    }
}

fn new_code(inner: LoadedCode) -> *mut GcCode {
    Box::into_raw(Box::new(GcCode { inner }))
}

/// Message for the last failed call on this thread; empty after a
/// successful call. Valid until the next `gc_*` call on the same thread.
#[no_mangle]
pub extern "C" fn gc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn gc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The cyclic group `Z/order`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gc_group_cyclic(order: usize, out: *mut *mut GcGroup) -> GcStatus {
    guard(|| {
        let g = FiniteGroup::cyclic(order)?;
        write(out, Box::into_raw(Box::new(GcGroup { inner: Arc::new(g) })))
    })
}

/// A group from a row-major `order × order` multiplication table over
/// `0..order`. Identity and inverses are inferred; all axioms are checked.
///
/// # Safety
/// `table` must point to `order * order` readable values and `out` must be
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gc_group_from_table(table: *const u32, order: usize, out: *mut *mut GcGroup) -> GcStatus {
    guard(|| {
        if table.is_null() {
            return Err(null("table"));
        }
        let cells = order
            .checked_mul(order)
            .ok_or_else(|| Failure(GcStatus::InvalidInput, "table size overflows".into()))?;
        let flat = std::slice::from_raw_parts(table, cells);
        let rows: Vec<Vec<Elem>> = flat.chunks(order.max(1)).map(<[Elem]>::to_vec).collect();
        let g = FiniteGroup::from_table(&rows, "table")?;
        write(out, Box::into_raw(Box::new(GcGroup { inner: Arc::new(g) })))
    })
}

/// # Safety
/// `group` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gc_group_order(group: *const GcGroup, out: *mut usize) -> GcStatus {
    guard(|| write(out, deref(group, "group")?.inner.order()))
}

/// Releases a group. Codes built from it stay valid. Null is ignored.
///
/// # Safety
/// `group` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn gc_group_free(group: *mut GcGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Parses a code file (the JSON format read by the command-line tool).
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gc_code_from_json(json: *const c_char, out: *mut *mut GcCode) -> GcStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Failure(GcStatus::InvalidInput, format!("input is not UTF-8: {e}")))?;
        write(out, new_code(parse_code(text)?))
    })
}

/// The group code of length `length` generated by `count` words, stored
/// row-major in `generators`.
///
/// # Safety
/// `group` must be a live handle, `generators` must point to
/// `count * length` readable values (it may be null when `count` is 0) and
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gc_code_generate(
    group: *const GcGroup,
    length: usize,
    generators: *const u32,
    count: usize,
    out: *mut *mut GcCode,
) -> GcStatus {
    guard(|| {
        let g = deref(group, "group")?;
        let words: Vec<Word> = if count == 0 {
            Vec::new()
        } else {
            if generators.is_null() {
                return Err(null("generators"));
            }
            let cells = count
                .checked_mul(length)
                .ok_or_else(|| Failure(GcStatus::InvalidInput, "generator array size overflows".into()))?;
            let flat = std::slice::from_raw_parts(generators, cells);
            flat.chunks(length.max(1)).map(|w| Word::new(w.to_vec())).collect()
        };
        let code = GroupCode::generate(g.inner.clone(), length, &words)?;
        write(out, new_code(LoadedCode::Group(code)))
    })
}

/// Releases a code. Null is ignored.
///
/// # Safety
/// `code` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn gc_code_free(code: *mut GcCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// The code as a code-file JSON string.
///
/// # Safety
/// `code` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gc_code_to_json(code: *const GcCode, out: *mut *mut c_char) -> GcStatus {
    guard(|| {
        let c = &deref(code, "code")?.inner;
        write(out, into_c_string(code_to_string(c.code(), c.group().is_some())))
    })
}

/// # Safety
/// `code` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gc_code_length(code: *const GcCode, out: *mut usize) -> GcStatus {
    guard(|| write(out, deref(code, "code")?.inner.code().length()))
}

/// Number of codewords.
///
/// # Safety
/// `code` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gc_code_cardinality(code: *const GcCode, out: *mut usize) -> GcStatus {
    guard(|| write(out, deref(code, "code")?.inner.code().len()))
}

/// Minimum distance; `length + 1` for a single-word code.
///
/// # Safety
/// `code` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gc_code_min_distance(code: *const GcCode, out: *mut usize) -> GcStatus {
    guard(|| write(out, deref(code, "code")?.inner.code().min_distance()))
}

/// Whether the handle holds a group code.
///
/// # Safety
/// `code` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gc_code_is_group(code: *const GcCode, out: *mut bool) -> GcStatus {
    guard(|| write(out, deref(code, "code")?.inner.group().is_some()))
}

/// Invariance under the cyclic shift.
///
/// # Safety
/// `code` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gc_code_is_cyclic(code: *const GcCode, out: *mut bool) -> GcStatus {
    guard(|| write(out, is_cyclic(deref(code, "code")?.inner.code())))
}

/// Whether the code is a nontrivial product. `max_partition_bits` caps the
/// exhaustive split search; 0 selects the default.
///
/// # Safety
/// `code` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gc_code_is_decomposable(code: *const GcCode, max_partition_bits: usize, out: *mut bool) -> GcStatus {
    guard(|| {
        let c = deref(code, "code")?.inner.code();
        let split = is_decomposable_with(c, &decompose_options(max_partition_bits))?;
        write(out, split.is_some())
    })
}

/// The finest decomposition as JSON: 1-based blocks, components, isotypes
/// and the witness isometry.
///
/// # Safety
/// `code` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gc_code_decompose_json(code: *const GcCode, max_partition_bits: usize, out: *mut *mut c_char) -> GcStatus {
    guard(|| {
        let c = &deref(code, "code")?.inner;
        let dec = decompose_with(c.code(), category(c), &decompose_options(max_partition_bits))?;
        let value = decomposition_to_value(&dec, c.group().is_some());
        write(out, into_c_string(value.to_string()))
    })
}

/// The full analysis report as JSON, identical to `groupcode analyze`.
/// A report cut short by a cap is still returned, with status
/// `GC_STATUS_RESOURCE_LIMIT` and an `incomplete` field.
///
/// # Safety
/// `code` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gc_code_analyze_json(code: *const GcCode, out: *mut *mut c_char) -> GcStatus {
    guard(|| {
        let c = &deref(code, "code")?.inner;
        let outcome = report::analyze(c, &ReportOptions::default())?;
        write(out, into_c_string(outcome.value.to_string()))?;
        match outcome.partial {
            Some(p) => Err(Failure(GcStatus::ResourceLimit, p)),
            None => Ok(()),
        }
    })
}

/// Isomorphism test. Two group codes are compared as group codes (local
/// maps are group isomorphisms); otherwise as plain codes. `max_nodes`
/// caps the search; 0 selects the default.
///
/// # Safety
/// `a` and `b` must be live handles and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gc_codes_isomorphic(a: *const GcCode, b: *const GcCode, max_nodes: u64, out: *mut bool) -> GcStatus {
    guard(|| {
        let (a, b) = (&deref(a, "a")?.inner, &deref(b, "b")?.inner);
        let opts = search(max_nodes);
        let iso = match (a.group(), b.group()) {
            (Some(c), Some(d)) => gc_isomorphic(c, d, &opts)?.is_some(),
            _ => code_isomorphic(a.code(), b.code(), &opts)?.is_some(),
        };
        write(out, iso)
    })
}

/// Order of the automorphism group as a decimal string.
///
/// # Safety
/// `code` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gc_code_aut_order(code: *const GcCode, max_nodes: u64, out: *mut *mut c_char) -> GcStatus {
    guard(|| {
        let c = &deref(code, "code")?.inner;
        let opts = search(max_nodes);
        let report = match c.group() {
            Some(g) => aut_group(g, &opts)?,
            None => code_aut_group(c.code(), &opts)?,
        };
        let order = report
            .order
            .ok_or_else(|| Failure(GcStatus::ResourceLimit, format!("automorphism search stopped after {} nodes", report.nodes)))?;
        write(out, into_c_string(order.to_string()))
    })
}

/// Interleaves `copies` copies of a cyclic group code.
///
/// # Safety
/// `code` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gc_code_interleave(code: *const GcCode, copies: usize, out: *mut *mut GcCode) -> GcStatus {
    guard(|| {
        let g = deref(code, "code")?
            .inner
            .group()
            .ok_or_else(|| Failure(GcStatus::InvalidInput, "interleaving needs a group code".into()))?;
        let result = interleave(g, copies)?;
        write(out, new_code(LoadedCode::Group(result.code)))
    })
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn gc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
