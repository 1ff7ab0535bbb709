//! C ABI for hyperkit.
//!
//! Objects are opaque handles created by `hk_*_builtin` / `hk_*_parse` and
//! released with the matching `hk_*_free`. Every fallible call returns an
//! [`HkStatus`]; on failure `hk_last_error` describes the problem. Strings
//! returned through out-pointers are owned by the caller and must be released
//! with [`hk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hyperkit::constructions::{fusion_realizable_two_element, two_element};
use hyperkit::io::registry::{builtin_groupoid, builtin_table};
use hyperkit::io::{parse_document, CharacterAnalysis, Document, DualOutcome, StateDocument, StateRecord};
use hyperkit::quantize::enumerate_admissible_tol;
use hyperkit::reprs::{characters_seeded, dual_from_characters, orthogonality_from};
use hyperkit::{HyperError, HypergroupTable, Hypergroupoid};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Axiom = 4,
    Numerical = 5,
    Precondition = 6,
    Mismatch = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

/// Opaque hypergroup table.
pub struct HkHypergroup(HypergroupTable);

/// Opaque hypergroupoid.
pub struct HkGroupoid(Hypergroupoid);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn fail(status: HkStatus, msg: impl Into<String>) -> HkStatus {
    set_error(msg);
    status
}

fn status_of(err: &HyperError) -> HkStatus {
    match err {
        HyperError::Axiom(_) => HkStatus::Axiom,
        HyperError::Parse(_) | HyperError::Io(_) => HkStatus::Parse,
        HyperError::Numerical(_) => HkStatus::Numerical,
        HyperError::Precondition(_) => HkStatus::Precondition,
        HyperError::Mismatch(_) | HyperError::DualNotHypergroup { .. } => HkStatus::Mismatch,
        HyperError::Structural(_) | HyperError::IndexOutOfRange { .. } => HkStatus::InvalidArgument,
    }
}

fn from_error(err: HyperError) -> HkStatus {
    let status = status_of(&err);
    fail(status, err.to_string())
}

fn guard(f: impl FnOnce() -> HkStatus) -> HkStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(HkStatus::Panic, "internal panic"))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, HkStatus> {
    if s.is_null() {
        return Err(fail(HkStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(HkStatus::InvalidArgument, "string argument is not UTF-8"))
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> HkStatus {
    match CString::new(text) {
        Ok(c) => {
            *out = c.into_raw();
            HkStatus::Ok
        }
        Err(_) => fail(HkStatus::InvalidArgument, "output contains a NUL byte"),
    }
}

unsafe fn write_slice(values: &[f64], out: *mut f64, capacity: usize) -> HkStatus {
    if out.is_null() {
        return fail(HkStatus::NullPointer, "null output buffer");
    }
    if capacity < values.len() {
        return fail(
            HkStatus::BufferTooSmall,
            format!("buffer holds {capacity} values, {} needed", values.len()),
        );
    }
    ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    HkStatus::Ok
}

unsafe fn table<'a>(h: *const HkHypergroup) -> Result<&'a HypergroupTable, HkStatus> {
    h.as_ref()
        .map(|h| &h.0)
        .ok_or_else(|| fail(HkStatus::NullPointer, "null hypergroup handle"))
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

macro_rules! lib {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => return from_error(err),
        }
    };
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn hk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Loads a builtin table such as `"ghj"` or `"conj-s3"`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hk_hypergroup_builtin(name: *const c_char, out: *mut *mut HkHypergroup) -> HkStatus {
    guard(|| {
        if out.is_null() {
            return fail(HkStatus::NullPointer, "null output handle");
        }
        let name = tri!(read_str(name));
        let t = lib!(builtin_table(name));
        *out = Box::into_raw(Box::new(HkHypergroup(t)));
        HkStatus::Ok
    })
}

/// Parses and validates a hypergroup JSON document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hk_hypergroup_parse(json: *const c_char, tol: f64, out: *mut *mut HkHypergroup) -> HkStatus {
    guard(|| {
        if out.is_null() {
            return fail(HkStatus::NullPointer, "null output handle");
        }
        let text = tri!(read_str(json));
        let t = match lib!(parse_document(text, tol)) {
            Document::Hypergroup(t) => t,
            other => return fail(HkStatus::Mismatch, format!("expected a hypergroup, found {}", other.kind())),
        };
        *out = Box::into_raw(Box::new(HkHypergroup(t)));
        HkStatus::Ok
    })
}

/// Two-element hypergroup `k1^2 = lambda k0 + (1 - lambda) k1`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hk_hypergroup_two_element(lambda: f64, out: *mut *mut HkHypergroup) -> HkStatus {
    guard(|| {
        if out.is_null() {
            return fail(HkStatus::NullPointer, "null output handle");
        }
        let t = lib!(two_element(lambda));
        *out = Box::into_raw(Box::new(HkHypergroup(t)));
        HkStatus::Ok
    })
}

/// # Safety
/// `h` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn hk_hypergroup_free(h: *mut HkHypergroup) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Number of basis elements, or 0 for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hk_hypergroup_size(h: *const HkHypergroup) -> usize {
    h.as_ref().map_or(0, |h| h.0.size())
}

/// Checks every axiom; `passed` receives the verdict and `report_json`, if
/// non-null, a validation-report document.
///
/// # Safety
/// `h` must be a live handle, `passed` valid, `report_json` null or valid.
#[no_mangle]
pub unsafe extern "C" fn hk_hypergroup_validate(
    h: *const HkHypergroup,
    tol: f64,
    passed: *mut bool,
    report_json: *mut *mut c_char,
) -> HkStatus {
    guard(|| {
        let t = tri!(table(h));
        if passed.is_null() {
            return fail(HkStatus::NullPointer, "null output flag");
        }
        let report = t.validate(tol);
        *passed = report.passed();
        if report_json.is_null() {
            HkStatus::Ok
        } else {
            write_string(report_json, Document::ValidationReport(report).to_canonical_string())
        }
    })
}

/// Coefficients of `k_a k_b`, written to `out[0..size]`.
///
/// # Safety
/// `h` must be a live handle and `out` hold `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn hk_hypergroup_multiply(
    h: *const HkHypergroup,
    a: usize,
    b: usize,
    out: *mut f64,
    capacity: usize,
) -> HkStatus {
    guard(|| {
        let t = tri!(table(h));
        let m = lib!(t.multiply(a, b));
        write_slice(m.coeffs(), out, capacity)
    })
}

/// Weights `1 / lambda[i][i*][unit]`.
///
/// # Safety
/// `h` must be a live handle and `out` hold `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn hk_hypergroup_weights(
    h: *const HkHypergroup,
    tol: f64,
    out: *mut f64,
    capacity: usize,
) -> HkStatus {
    guard(|| {
        let t = tri!(table(h));
        let w = lib!(t.weights(tol));
        write_slice(&w, out, capacity)
    })
}

/// Normalized Haar measure.
///
/// # Safety
/// `h` must be a live handle and `out` hold `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn hk_hypergroup_haar(h: *const HkHypergroup, tol: f64, out: *mut f64, capacity: usize) -> HkStatus {
    guard(|| {
        let t = tri!(table(h));
        let haar = lib!(t.haar(tol));
        write_slice(haar.coeffs(), out, capacity)
    })
}

/// # Safety
/// `h` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn hk_hypergroup_is_commutative(h: *const HkHypergroup, tol: f64, out: *mut bool) -> HkStatus {
    guard(|| {
        let t = tri!(table(h));
        if out.is_null() {
            return fail(HkStatus::NullPointer, "null output flag");
        }
        *out = t.is_commutative(tol);
        HkStatus::Ok
    })
}

/// Canonical JSON document of the table.
///
/// # Safety
/// `h` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn hk_hypergroup_serialize(h: *const HkHypergroup, out: *mut *mut c_char) -> HkStatus {
    guard(|| {
        let t = tri!(table(h));
        if out.is_null() {
            return fail(HkStatus::NullPointer, "null output string");
        }
        write_string(out, Document::Hypergroup(t.clone()).to_canonical_string())
    })
}

/// Character analysis document: characters, weights, orthogonality defect
/// and the dual hypergroup (or the offending coefficient).
///
/// # Safety
/// `h` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn hk_hypergroup_characters(
    h: *const HkHypergroup,
    tol: f64,
    seed: u64,
    out: *mut *mut c_char,
) -> HkStatus {
    guard(|| {
        let t = tri!(table(h));
        if out.is_null() {
            return fail(HkStatus::NullPointer, "null output string");
        }
        let ct = lib!(characters_seeded(t, tol, seed));
        let defect = orthogonality_from(&ct).unitarity_defect;
        let dual = match dual_from_characters(&ct, tol) {
            Ok(d) => DualOutcome::Hypergroup(d),
            Err(HyperError::DualNotHypergroup { triple, value }) => DualOutcome::Failure { triple, value },
            Err(e) => return from_error(e),
        };
        let analysis = CharacterAnalysis {
            characters: ct,
            unitarity_defect: defect,
            dual,
        };
        write_string(out, Document::CharacterAnalysis(analysis).to_canonical_string())
    })
}

/// Searches fusion rules `f1^2 = f0 + n f1`, `n <= bound`, whose rescaling
/// is the two-element hypergroup with parameter `lambda`. On a match
/// `found` is set and `n11_0`, `n11_1` receive the coefficients.
///
/// # Safety
/// The output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hk_fusion_realizable_two_element(
    lambda: f64,
    bound: u64,
    found: *mut bool,
    n11_0: *mut u64,
    n11_1: *mut u64,
) -> HkStatus {
    guard(|| {
        if found.is_null() || n11_0.is_null() || n11_1.is_null() {
            return fail(HkStatus::NullPointer, "null output pointer");
        }
        match fusion_realizable_two_element(lambda, bound) {
            Some((a, b)) => {
                *found = true;
                *n11_0 = a;
                *n11_1 = b;
            }
            None => *found = false,
        }
        HkStatus::Ok
    })
}

/// Loads a builtin hypergroupoid such as `"ising"` or `"s3-cosets"`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hk_groupoid_builtin(name: *const c_char, out: *mut *mut HkGroupoid) -> HkStatus {
    guard(|| {
        if out.is_null() {
            return fail(HkStatus::NullPointer, "null output handle");
        }
        let name = tri!(read_str(name));
        let g = lib!(builtin_groupoid(name));
        *out = Box::into_raw(Box::new(HkGroupoid(g)));
        HkStatus::Ok
    })
}

/// One-object hypergroupoid of a hypergroup.
///
/// # Safety
/// `h` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn hk_groupoid_from_hypergroup(h: *const HkHypergroup, out: *mut *mut HkGroupoid) -> HkStatus {
    guard(|| {
        let t = tri!(table(h));
        if out.is_null() {
            return fail(HkStatus::NullPointer, "null output handle");
        }
        *out = Box::into_raw(Box::new(HkGroupoid(Hypergroupoid::from_hypergroup(t))));
        HkStatus::Ok
    })
}

/// # Safety
/// `g` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn hk_groupoid_free(g: *mut HkGroupoid) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Juxtaposes the arrows named by `labels[0..count]` from left to right and
/// returns a boundary-state document with every partial product.
///
/// # Safety
/// `g` must be a live handle, `labels` point to `count` NUL-terminated
/// strings and `out` be valid.
#[no_mangle]
pub unsafe extern "C" fn hk_groupoid_juxtapose(
    g: *const HkGroupoid,
    labels: *const *const c_char,
    count: usize,
    out: *mut *mut c_char,
) -> HkStatus {
    guard(|| {
        let Some(g) = g.as_ref().map(|g| &g.0) else {
            return fail(HkStatus::NullPointer, "null groupoid handle");
        };
        if labels.is_null() || out.is_null() {
            return fail(HkStatus::NullPointer, "null argument");
        }
        if count == 0 {
            return fail(HkStatus::InvalidArgument, "empty chain");
        }
        let mut states = Vec::with_capacity(count);
        for k in 0..count {
            let label = tri!(read_str(*labels.add(k)));
            states.push(lib!(g.state_for(label)));
        }
        let partials = lib!(g.juxtapose_steps(&states));
        let steps: Vec<StateRecord> = partials.iter().map(|s| StateRecord::from_state(g, s)).collect();
        let result = steps.last().cloned().expect("chain is nonempty");
        write_string(out, Document::BoundaryState(StateDocument { result, steps }).to_canonical_string())
    })
}

/// Admissible-indices document for values `1 + sum 4cos^2(pi/n)` up to
/// `bound` with `3 <= n <= n_max`.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hk_enumerate_admissible(bound: f64, n_max: u32, tol: f64, out: *mut *mut c_char) -> HkStatus {
    guard(|| {
        if out.is_null() {
            return fail(HkStatus::NullPointer, "null output string");
        }
        let set = lib!(enumerate_admissible_tol(bound, n_max, tol));
        write_string(out, Document::AdmissibleIndices(set).to_canonical_string())
    })
}
