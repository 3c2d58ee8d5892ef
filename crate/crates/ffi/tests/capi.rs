use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use qgraph_ffi::*;

fn named(name: &str) -> *mut QgGraph {
    let name = CString::new(name).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { qg_graph_named(name.as_ptr(), &mut g) }, QgStatus::Ok);
    g
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(qg_last_error_message()) }.to_str().unwrap().to_string()
}

#[test]
fn parse_and_count() {
    let text = CString::new("vertices 3\nedge a 0 1\n").unwrap();
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(qg_graph_parse(text.as_ptr(), &mut g), QgStatus::Ok);
        let mut n = 0usize;
        assert_eq!(qg_graph_vertex_count(g, &mut n), QgStatus::Ok);
        assert_eq!(n, 3);
        qg_graph_free(g);
    }
}

#[test]
fn parse_errors_report_the_line() {
    let text = CString::new("vertices 2\nedge a 0 7\n").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { qg_graph_parse(text.as_ptr(), &mut g) }, QgStatus::ParseError);
    assert!(g.is_null());
    assert!(last_error().contains("line 2"), "{}", last_error());
}

#[test]
fn unknown_names_and_nulls() {
    let name = CString::new("nonsense").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { qg_graph_named(name.as_ptr(), &mut g) }, QgStatus::UnknownName);
    assert_eq!(unsafe { qg_graph_named(ptr::null(), &mut g) }, QgStatus::NullPointer);
    assert_eq!(unsafe { qg_graph_vertex_count(ptr::null(), ptr::null_mut()) }, QgStatus::NullPointer);
    unsafe { qg_graph_free(ptr::null_mut()) };
    unsafe { qg_string_free(ptr::null_mut()) };
}

#[test]
fn closure_dims_of_the_pentagon() {
    let g = named("pentagon");
    let mut dims = [0u64; 5];
    unsafe {
        assert_eq!(qg_closure_dims(g, 4, 1, dims.as_mut_ptr(), dims.len()), QgStatus::Ok);
        assert_eq!(dims, [1, 1, 3, 13, 63]);
        assert_eq!(qg_closure_dims(g, 4, 1, dims.as_mut_ptr(), 4), QgStatus::BufferTooSmall);
        assert_eq!(qg_closure_dims(g, 1, 1, dims.as_mut_ptr(), 5), QgStatus::InvalidArgument);
        qg_graph_free(g);
    }
}

#[test]
fn analysis_json() {
    let g = named("cube");
    let mut json = ptr::null_mut();
    unsafe {
        assert_eq!(qg_analyze_json(g, 0, 0, false, &mut json), QgStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_string();
        qg_string_free(json);
        qg_graph_free(g);
        assert!(text.starts_with('{'));
        assert!(text.contains("\"schema\": \"qgraph.analysis/1\""));
        assert!(text.contains("\"class\": \"tensor-product\""));
    }
}

#[test]
fn series_coefficients() {
    let mut c = [0u64; 5];
    unsafe {
        assert_eq!(qg_series_coefficients(QgSeriesKind::Fc, 2, 4, c.as_mut_ptr(), 5), QgStatus::Ok);
        assert_eq!(c, [1, 1, 3, 12, 55]);
        assert_eq!(qg_series_coefficients(QgSeriesKind::Cube, 0, 4, c.as_mut_ptr(), 5), QgStatus::Ok);
        assert_eq!(c, [1, 1, 4, 20, 112]);
        assert_eq!(qg_series_coefficients(QgSeriesKind::Tl, 0, 4, c.as_mut_ptr(), 5), QgStatus::InvalidArgument);
        let mut big = vec![0u64; 41];
        assert_eq!(qg_series_coefficients(QgSeriesKind::Cyclic, 9, 40, big.as_mut_ptr(), 41), QgStatus::Overflow);
    }
}

#[test]
fn header_declares_the_interface() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/qgraph.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for symbol in [
        "typedef struct QgGraph QgGraph",
        "QG_STATUS_OK = 0",
        "QG_SERIES_KIND_CUBE",
        "qg_graph_parse",
        "qg_graph_named",
        "qg_graph_free",
        "qg_graph_vertex_count",
        "qg_analyze_json",
        "qg_closure_dims",
        "qg_series_coefficients",
        "qg_string_free",
        "qg_last_error_message",
    ] {
        assert!(text.contains(symbol), "header lacks {symbol}");
    }
    // the header must be valid C where a compiler is available
    if let Ok(status) = Command::new("cc").args(["-fsyntax-only", "-x", "c"]).arg(&header).status() {
        assert!(status.success());
    }
}
