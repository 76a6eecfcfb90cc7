use std::ffi::{CStr, CString};
use std::ptr;

use polyassign_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = pa_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn polytope(expr: &str) -> *mut PaPolytope {
    let mut p = ptr::null_mut();
    let e = cstr(expr);
    assert_eq!(unsafe { pa_polytope_from_expr(e.as_ptr(), &mut p) }, PaStatus::Ok);
    assert!(!p.is_null());
    p
}

#[test]
fn counts_and_verdicts() {
    let p = polytope("join(cube(3),cross(3))");
    unsafe {
        assert_eq!(pa_polytope_dim(p), 7);
        assert_eq!(pa_polytope_n_vertices(p), 14);
        assert_eq!(pa_polytope_n_facets(p), 14);

        let mut c = ptr::null_mut();
        assert_eq!(pa_decide(p, PaMode::NonIncident, &mut c), PaStatus::Ok);
        let mut outcome = PaOutcome::Assigned;
        assert_eq!(pa_certificate_outcome(c, &mut outcome), PaStatus::Ok);
        assert_eq!(outcome, PaOutcome::NoAssignment);
        let n = pa_certificate_witness_len(c);
        assert!(n > pa_certificate_neighborhood_len(c));
        let mut buf = vec![usize::MAX; n];
        let mut side = PaSide::Facets;
        assert_eq!(pa_certificate_witness(c, buf.as_mut_ptr(), n, &mut side), PaStatus::Ok);
        assert!(buf.iter().all(|&x| x < 14));
        assert_eq!(
            pa_certificate_witness(c, buf.as_mut_ptr(), n - 1, &mut side),
            PaStatus::OutOfRange
        );
        pa_certificate_free(c);
        pa_polytope_free(p);
    }
}

#[test]
fn matching_pairs() {
    let p = polytope("cube(3)");
    unsafe {
        let mut c = ptr::null_mut();
        assert_eq!(pa_decide(p, PaMode::NonIncident, &mut c), PaStatus::Ok);
        assert_eq!(pa_certificate_matching_len(c), 6);
        assert_eq!(pa_certificate_witness_len(c), 0);
        let (mut v, mut f) = (0usize, 0usize);
        for i in 0..6 {
            assert_eq!(pa_certificate_pair(c, i, &mut v, &mut f), PaStatus::Ok);
            assert!(v < 8 && f < 6);
        }
        assert_eq!(pa_certificate_pair(c, 6, &mut v, &mut f), PaStatus::OutOfRange);
        assert!(last_error().contains("out of range"));
        pa_certificate_free(c);

        assert_eq!(pa_decide(p, PaMode::Incident, &mut c), PaStatus::Ok);
        assert_eq!(pa_certificate_witness_len(c), 7);
        assert_eq!(pa_certificate_neighborhood_len(c), 6);
        pa_certificate_free(c);
        pa_polytope_free(p);
    }
}

#[test]
fn report_and_document_round_trip() {
    let p = polytope("cross(3)");
    unsafe {
        let mut doc = ptr::null_mut();
        assert_eq!(pa_polytope_document(p, &mut doc), PaStatus::Ok);
        let mut q = ptr::null_mut();
        assert_eq!(pa_polytope_from_document(doc, &mut q), PaStatus::Ok);
        assert_eq!(pa_polytope_n_facets(q), 8);
        pa_string_free(doc);

        let mut report = ptr::null_mut();
        assert_eq!(pa_report_json(q, PA_FLAG_ORACLE, &mut report), PaStatus::Ok);
        let text = CStr::from_ptr(report).to_str().unwrap().to_owned();
        assert!(text.contains("\"verdict\": \"ASSIGNED\""));
        assert!(text.contains("facet_subset_oracle"));
        pa_string_free(report);
        pa_polytope_free(q);
        pa_polytope_free(p);
    }
}

#[test]
fn errors_are_reported() {
    let mut p = ptr::null_mut();
    unsafe {
        let bad = cstr("cube(3");
        assert_eq!(pa_polytope_from_expr(bad.as_ptr(), &mut p), PaStatus::InputError);
        assert!(p.is_null());
        assert!(last_error().contains("position 6"));

        assert_eq!(pa_polytope_from_expr(ptr::null(), &mut p), PaStatus::NullPointer);
        let ok = cstr("cube(2)");
        assert_eq!(pa_polytope_from_expr(ok.as_ptr(), ptr::null_mut()), PaStatus::NullPointer);

        let invalid = [0xffu8, 0];
        assert_eq!(
            pa_polytope_from_expr(invalid.as_ptr().cast(), &mut p),
            PaStatus::InvalidUtf8
        );

        let doc = cstr(r#"{"name":"x","dim":2,"vertices":["a"],"facets":[[0]]}"#);
        assert_eq!(pa_polytope_from_document(doc.as_ptr(), &mut p), PaStatus::InputError);

        let mut out = ptr::null_mut();
        assert_eq!(pa_report_json(ptr::null(), 0, &mut out), PaStatus::NullPointer);
        assert_eq!(pa_polytope_dim(ptr::null()), 0);
        pa_polytope_free(ptr::null_mut());
        pa_string_free(ptr::null_mut());

        // A successful call clears the message.
        let q = polytope("simplex(2)");
        assert!(pa_last_error().is_null());
        pa_polytope_free(q);
    }
}

#[test]
fn header_declares_the_api() {
    let header = include_str!("../include/polyassign.h");
    for name in [
        "typedef struct PaPolytope PaPolytope;",
        "PA_STATUS_INPUT_ERROR = 2",
        "pa_polytope_from_expr",
        "pa_report_json",
        "pa_certificate_witness",
        "pa_string_free",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
