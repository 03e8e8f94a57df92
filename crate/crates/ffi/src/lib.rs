//! C ABI over the polyvenn verifier.
//!
//! Objects are opaque handles created by `pv_*_from_*` or `pv_verify` and
//! released with the matching `pv_*_free`. Every function returns a
//! [`PvStatus`]; on failure `pv_last_error` describes the problem. Strings
//! returned through out-parameters are owned by the caller and released
//! with `pv_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;

use polyvenn::arrangement::{ArrangementError, PolygonFamily};
use polyvenn::bounds;
use polyvenn::format::FamilyDocument;
use polyvenn::report::{verify_family, ReportDocument};

/// Result code of every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    Degenerate = 4,
    OutOfRange = 5,
    Internal = 6,
    Panic = 7,
}

/// A validated family of convex polygons.
pub struct PvFamily {
    family: PolygonFamily,
}

/// The classification of one family.
pub struct PvReport {
    report: ReportDocument,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<Vec<u8>>) {
    let mut bytes = message.into();
    bytes.retain(|&b| b != 0);
    let text = CString::new(bytes).expect("interior nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = text);
}

fn fail(status: PvStatus, message: impl Into<Vec<u8>>) -> PvStatus {
    set_error(message);
    status
}

fn guard(body: impl FnOnce() -> PvStatus + UnwindSafe) -> PvStatus {
    set_error("");
    match catch_unwind(body) {
        Ok(status) => status,
        Err(_) => fail(PvStatus::Panic, "internal panic"),
    }
}

unsafe fn text<'a>(ptr: *const c_char) -> Result<&'a str, PvStatus> {
    if ptr.is_null() {
        return Err(fail(PvStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|e| fail(PvStatus::InvalidUtf8, e.to_string()))
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(PvStatus::NullPointer, concat!("`", stringify!($p), "` is null"));
        })+
    };
}

/// Message describing the most recent failure on this thread, or an empty
/// string. Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn pv_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn pv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parse a family document (JSON text) into a new handle.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pv_family_from_json(
    json: *const c_char,
    out: *mut *mut PvFamily,
) -> PvStatus {
    guard(|| {
        non_null!(out);
        *out = ptr::null_mut();
        let json = match text(json) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match FamilyDocument::parse(json).and_then(|d| d.to_family()) {
            Ok(family) => {
                *out = Box::into_raw(Box::new(PvFamily { family }));
                PvStatus::Ok
            }
            Err(e) => fail(PvStatus::ParseError, e.to_string()),
        }
    })
}

/// # Safety
/// `family` must come from `pv_family_from_json` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pv_family_free(family: *mut PvFamily) {
    if !family.is_null() {
        drop(Box::from_raw(family));
    }
}

/// # Safety
/// `family` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pv_family_curve_count(
    family: *const PvFamily,
    out: *mut usize,
) -> PvStatus {
    guard(|| {
        non_null!(family, out);
        *out = (*family).family.n();
        PvStatus::Ok
    })
}

/// Serialize a family back to its document form.
///
/// # Safety
/// `family` must be a live handle and `out` a valid pointer. Release the
/// string with `pv_string_free`.
#[no_mangle]
pub unsafe extern "C" fn pv_family_to_json(
    family: *const PvFamily,
    out: *mut *mut c_char,
) -> PvStatus {
    guard(|| {
        non_null!(family, out);
        *out = owned_string(FamilyDocument::from_family(&(*family).family).to_json());
        PvStatus::Ok
    })
}

/// Build and classify the arrangement. With `audit` set and a Venn
/// diagram, the report also carries the per-pair corner audit. Degenerate
/// geometry returns `PV_STATUS_DEGENERATE`.
///
/// # Safety
/// `family` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pv_verify(
    family: *const PvFamily,
    audit: bool,
    out: *mut *mut PvReport,
) -> PvStatus {
    guard(|| {
        non_null!(family, out);
        *out = ptr::null_mut();
        match verify_family(&(*family).family, audit) {
            Ok((report, _)) => {
                *out = Box::into_raw(Box::new(PvReport { report }));
                PvStatus::Ok
            }
            Err(e @ ArrangementError::Degenerate(_)) => fail(PvStatus::Degenerate, e.to_string()),
            Err(e) => fail(PvStatus::Internal, e.to_string()),
        }
    })
}

/// # Safety
/// `report` must come from `pv_verify` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pv_report_free(report: *mut PvReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pv_report_is_venn(report: *const PvReport, out: *mut bool) -> PvStatus {
    guard(|| {
        non_null!(report, out);
        *out = (*report).report.verdict.is_venn;
        PvStatus::Ok
    })
}

/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pv_report_is_simple(report: *const PvReport, out: *mut bool) -> PvStatus {
    guard(|| {
        non_null!(report, out);
        *out = (*report).report.verdict.is_simple;
        PvStatus::Ok
    })
}

/// Vertex, edge and face counts of the arrangement, the outer face included.
///
/// # Safety
/// `report` must be a live handle and the out-pointers valid.
#[no_mangle]
pub unsafe extern "C" fn pv_report_counts(
    report: *const PvReport,
    vertices: *mut usize,
    edges: *mut usize,
    faces: *mut usize,
) -> PvStatus {
    guard(|| {
        non_null!(report, vertices, edges, faces);
        let counts = &(*report).report.counts;
        *vertices = counts.vertices;
        *edges = counts.edges;
        *faces = counts.faces;
        PvStatus::Ok
    })
}

/// Number of sign vectors with no face.
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pv_report_missing_regions(
    report: *const PvReport,
    out: *mut u64,
) -> PvStatus {
    guard(|| {
        non_null!(report, out);
        *out = (*report).report.census.missing_count;
        PvStatus::Ok
    })
}

/// # Safety
/// `report` must be a live handle and `out` a valid pointer. Release the
/// string with `pv_string_free`.
#[no_mangle]
pub unsafe extern "C" fn pv_report_to_json(
    report: *const PvReport,
    out: *mut *mut c_char,
) -> PvStatus {
    guard(|| {
        non_null!(report, out);
        *out = owned_string((*report).report.to_json());
        PvStatus::Ok
    })
}

fn owned_string(text: String) -> *mut c_char {
    CString::new(text)
        .expect("JSON has no nul bytes")
        .into_raw()
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn narrow(value: Result<u128, bounds::BoundsError>, out: *mut u64) -> PvStatus {
    match value {
        Ok(v) => match u64::try_from(v) {
            Ok(v) => {
                unsafe { *out = v };
                PvStatus::Ok
            }
            Err(_) => fail(PvStatus::OutOfRange, format!("{v} does not fit in 64 bits")),
        },
        Err(e) => fail(PvStatus::OutOfRange, e.to_string()),
    }
}

/// Smallest corner count allowed by the vertex-count argument alone.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pv_bounds_lemma2_min_k(n: u32, out: *mut u64) -> PvStatus {
    guard(|| {
        non_null!(out);
        narrow(bounds::lemma2_min_k(n), out)
    })
}

/// Smallest corner count allowed by the corner-counting argument.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pv_bounds_theorem_min_k(n: u32, out: *mut u64) -> PvStatus {
    guard(|| {
        non_null!(out);
        narrow(bounds::theorem_min_k(n), out)
    })
}

/// Largest corner count needed by a known construction.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pv_bounds_upper_k(n: u32, out: *mut u64) -> PvStatus {
    guard(|| {
        non_null!(out);
        narrow(bounds::known_upper_k(n), out)
    })
}

/// Most vertices `n` convex `k`-gons can have pairwise.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pv_bounds_max_vertices(n: u32, k: u32, out: *mut u64) -> PvStatus {
    guard(|| {
        non_null!(out);
        narrow(bounds::lemma1_max_vertices(n, k), out)
    })
}

/// Most vertices a simple Venn diagram of `n` convex `k`-gons can have.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pv_bounds_vertex_cap(n: u32, k: u32, out: *mut u64) -> PvStatus {
    guard(|| {
        non_null!(out);
        narrow(bounds::theorem_vertex_cap(n, k), out)
    })
}
