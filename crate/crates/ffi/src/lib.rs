//! C ABI for polyassign.
//!
//! Polytopes and certificates are opaque handles created by `pa_*` functions
//! and released with the matching `*_free`. Every fallible call returns a
//! [`PaStatus`]; on failure the message is available from [`pa_last_error`]
//! until the next call on the same thread. Strings handed out by the library
//! must be released with [`pa_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use polyassign::check::{run_check, CheckOptions};
use polyassign::{
    decide_assignment, decide_incident_assignment, parse_construction, Error, MatchingCertificate,
    Outcome, PolytopeDocument, PolytopeSpec, Side,
};

/// Status codes. Codes 2 and 3 agree with the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PaStatus {
    Ok = 0,
    InputError = 2,
    Inconsistency = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    OutOfRange = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PaMode {
    /// Match vertices with non-incident facets.
    NonIncident = 0,
    /// Match vertices injectively with incident facets.
    Incident = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PaOutcome {
    Assigned = 0,
    NoAssignment = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PaSide {
    Vertices = 0,
    Facets = 1,
}

/// Report flag: decide the incident variant.
pub const PA_FLAG_INCIDENT: u32 = 1;
/// Report flag: also run the exhaustive facet-subset check.
pub const PA_FLAG_ORACLE: u32 = 2;

/// Opaque polytope handle.
pub struct PaPolytope {
    spec: PolytopeSpec,
}

/// Opaque matching certificate handle.
pub struct PaCertificate {
    inner: MatchingCertificate,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: PaStatus, message: impl Into<String>) -> PaStatus {
    set_error(message);
    status
}

fn from_error(err: Error) -> PaStatus {
    let status = match err {
        Error::Inconsistency(_) => PaStatus::Inconsistency,
        _ => PaStatus::InputError,
    };
    fail(status, err.to_string())
}

/// Runs `body` with panics turned into [`PaStatus::Panic`].
fn guarded(body: impl FnOnce() -> PaStatus) -> PaStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(PaStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, PaStatus> {
    if text.is_null() {
        return Err(fail(PaStatus::NullPointer, "string argument is null"));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|_| fail(PaStatus::InvalidUtf8, "string argument is not UTF-8"))
}

unsafe fn hand_out_string(text: String, out: *mut *mut c_char) -> PaStatus {
    match CString::new(text) {
        Ok(c) => {
            *out = c.into_raw();
            PaStatus::Ok
        }
        Err(_) => fail(PaStatus::InputError, "output contains a NUL byte"),
    }
}

/// Message of the last failed call on this thread, or NULL. Owned by the library.
#[no_mangle]
pub extern "C" fn pa_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `text` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pa_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// Builds a polytope from a construction expression such as `join(cube(3),cross(3))`.
///
/// # Safety
/// `expr` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pa_polytope_from_expr(expr: *const c_char, out: *mut *mut PaPolytope) -> PaStatus {
    guarded(|| {
        if out.is_null() {
            return fail(PaStatus::NullPointer, "out is null");
        }
        let text = match read_str(expr) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_construction(text) {
            Ok(spec) => {
                *out = Box::into_raw(Box::new(PaPolytope { spec }));
                PaStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Builds a polytope from a JSON polytope document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pa_polytope_from_document(json: *const c_char, out: *mut *mut PaPolytope) -> PaStatus {
    guarded(|| {
        if out.is_null() {
            return fail(PaStatus::NullPointer, "out is null");
        }
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match PolytopeDocument::from_json(text).and_then(|d| d.to_spec()) {
            Ok(spec) => {
                *out = Box::into_raw(Box::new(PaPolytope { spec }));
                PaStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `polytope` must come from a `pa_polytope_from_*` call and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pa_polytope_free(polytope: *mut PaPolytope) {
    if !polytope.is_null() {
        drop(Box::from_raw(polytope));
    }
}

/// Dimension, or 0 for NULL.
///
/// # Safety
/// `polytope` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pa_polytope_dim(polytope: *const PaPolytope) -> usize {
    polytope.as_ref().map_or(0, |p| p.spec.dim())
}

/// # Safety
/// `polytope` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pa_polytope_n_vertices(polytope: *const PaPolytope) -> usize {
    polytope.as_ref().map_or(0, |p| p.spec.n_vertices())
}

/// # Safety
/// `polytope` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pa_polytope_n_facets(polytope: *const PaPolytope) -> usize {
    polytope.as_ref().map_or(0, |p| p.spec.n_facets())
}

/// Writes the polytope document as JSON; release with [`pa_string_free`].
///
/// # Safety
/// `polytope` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pa_polytope_document(polytope: *const PaPolytope, out: *mut *mut c_char) -> PaStatus {
    guarded(|| {
        let Some(p) = polytope.as_ref() else {
            return fail(PaStatus::NullPointer, "polytope is null");
        };
        if out.is_null() {
            return fail(PaStatus::NullPointer, "out is null");
        }
        hand_out_string(PolytopeDocument::from_spec(&p.spec).to_json(), out)
    })
}

/// Full check report as JSON (see `PA_FLAG_*`); release with [`pa_string_free`].
///
/// # Safety
/// `polytope` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pa_report_json(polytope: *const PaPolytope, flags: u32, out: *mut *mut c_char) -> PaStatus {
    guarded(|| {
        let Some(p) = polytope.as_ref() else {
            return fail(PaStatus::NullPointer, "polytope is null");
        };
        if out.is_null() {
            return fail(PaStatus::NullPointer, "out is null");
        }
        let options = CheckOptions {
            incident: flags & PA_FLAG_INCIDENT != 0,
            oracle: flags & PA_FLAG_ORACLE != 0,
        };
        match run_check(&p.spec, options) {
            Ok(report) => hand_out_string(report.to_json(), out),
            Err(e) => from_error(e),
        }
    })
}

/// Decides the assignment question in `mode` and returns a certificate handle.
///
/// # Safety
/// `polytope` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pa_decide(polytope: *const PaPolytope, mode: PaMode, out: *mut *mut PaCertificate) -> PaStatus {
    guarded(|| {
        let Some(p) = polytope.as_ref() else {
            return fail(PaStatus::NullPointer, "polytope is null");
        };
        if out.is_null() {
            return fail(PaStatus::NullPointer, "out is null");
        }
        let inner = match mode {
            PaMode::NonIncident => decide_assignment(p.spec.matrix()),
            PaMode::Incident => decide_incident_assignment(p.spec.matrix()),
        };
        *out = Box::into_raw(Box::new(PaCertificate { inner }));
        PaStatus::Ok
    })
}

/// # Safety
/// `certificate` must come from [`pa_decide`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pa_certificate_free(certificate: *mut PaCertificate) {
    if !certificate.is_null() {
        drop(Box::from_raw(certificate));
    }
}

/// # Safety
/// `certificate` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pa_certificate_outcome(certificate: *const PaCertificate, out: *mut PaOutcome) -> PaStatus {
    guarded(|| {
        let Some(c) = certificate.as_ref() else {
            return fail(PaStatus::NullPointer, "certificate is null");
        };
        if out.is_null() {
            return fail(PaStatus::NullPointer, "out is null");
        }
        *out = match c.inner.outcome {
            Outcome::Assigned => PaOutcome::Assigned,
            Outcome::NoAssignment => PaOutcome::NoAssignment,
        };
        PaStatus::Ok
    })
}

/// Number of matched pairs, or 0 for NULL.
///
/// # Safety
/// `certificate` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pa_certificate_matching_len(certificate: *const PaCertificate) -> usize {
    certificate.as_ref().map_or(0, |c| c.inner.matching.len())
}

/// Reads matched pair `index` as (vertex, facet).
///
/// # Safety
/// `certificate` must be a live handle; `vertex` and `facet` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn pa_certificate_pair(
    certificate: *const PaCertificate,
    index: usize,
    vertex: *mut usize,
    facet: *mut usize,
) -> PaStatus {
    guarded(|| {
        let Some(c) = certificate.as_ref() else {
            return fail(PaStatus::NullPointer, "certificate is null");
        };
        if vertex.is_null() || facet.is_null() {
            return fail(PaStatus::NullPointer, "output pointer is null");
        }
        match c.inner.matching.get(index) {
            Some(&(v, f)) => {
                *vertex = v;
                *facet = f;
                PaStatus::Ok
            }
            None => fail(
                PaStatus::OutOfRange,
                format!("pair {index} out of range ({} pairs)", c.inner.matching.len()),
            ),
        }
    })
}

/// Size of the Hall witness, 0 when the assignment exists.
///
/// # Safety
/// `certificate` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pa_certificate_witness_len(certificate: *const PaCertificate) -> usize {
    certificate
        .as_ref()
        .and_then(|c| c.inner.hall_witness.as_ref())
        .map_or(0, |w| w.members.len())
}

/// Size of the witness neighborhood, 0 when the assignment exists.
///
/// # Safety
/// `certificate` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pa_certificate_neighborhood_len(certificate: *const PaCertificate) -> usize {
    certificate
        .as_ref()
        .and_then(|c| c.inner.hall_witness.as_ref())
        .map_or(0, |w| w.neighborhood.len())
}

/// Copies the witness members into `buffer` (capacity `len`) and reports their side.
///
/// # Safety
/// `certificate` must be a live handle, `buffer` valid for `len` writes, `side` valid.
#[no_mangle]
pub unsafe extern "C" fn pa_certificate_witness(
    certificate: *const PaCertificate,
    buffer: *mut usize,
    len: usize,
    side: *mut PaSide,
) -> PaStatus {
    guarded(|| {
        let Some(c) = certificate.as_ref() else {
            return fail(PaStatus::NullPointer, "certificate is null");
        };
        let Some(w) = c.inner.hall_witness.as_ref() else {
            return fail(PaStatus::OutOfRange, "certificate has no Hall witness");
        };
        if buffer.is_null() || side.is_null() {
            return fail(PaStatus::NullPointer, "output pointer is null");
        }
        if len < w.members.len() {
            return fail(
                PaStatus::OutOfRange,
                format!("buffer holds {len}, witness has {}", w.members.len()),
            );
        }
        ptr::copy_nonoverlapping(w.members.as_ptr(), buffer, w.members.len());
        *side = match w.side {
            Side::Vertices => PaSide::Vertices,
            Side::Facets => PaSide::Facets,
        };
        PaStatus::Ok
    })
}
