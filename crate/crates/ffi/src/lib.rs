//! C interface. Graphs are opaque handles; every call returns a [`QgStatus`]
//! and leaves a message for [`qg_last_error_message`] on failure.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qgraph::graph::{named_graph, parse_graph, ColoredGraph};
use qgraph::planar::{closure_dims, ClosureConfig};
use qgraph::report::{analyze, series_table, to_canonical_json, AnalyzeOptions, SeriesKind};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    UnknownName = 4,
    InvalidArgument = 5,
    BufferTooSmall = 6,
    Overflow = 7,
    /// Closure stopped at a basis cap; outputs are lower bounds.
    Capped = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QgSeriesKind {
    Tl = 0,
    Fc = 1,
    Dihedral = 2,
    Cyclic = 3,
    Cube = 4,
}

/// Opaque graph handle.
pub struct QgGraph {
    graph: ColoredGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: QgStatus, msg: impl Into<String>) -> QgStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> QgStatus) -> QgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(QgStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, QgStatus> {
    if p.is_null() {
        return Err(fail(QgStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(QgStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

unsafe fn store_graph(out: *mut *mut QgGraph, graph: ColoredGraph) -> QgStatus {
    *out = Box::into_raw(Box::new(QgGraph { graph }));
    QgStatus::Ok
}

fn closure_config(max_level: u32, buffer: u32) -> Result<ClosureConfig, QgStatus> {
    let cfg = ClosureConfig { max_level: max_level as usize, buffer: buffer as usize, ..ClosureConfig::default() };
    cfg.validate().map_err(|e| fail(QgStatus::InvalidArgument, e.to_string()))?;
    Ok(cfg)
}

/// Parse a graph from the text format.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qg_graph_parse(text: *const c_char, out: *mut *mut QgGraph) -> QgStatus {
    guard(|| {
        if out.is_null() {
            return fail(QgStatus::NullPointer, "null output pointer");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_graph(text) {
            Ok(g) => store_graph(out, g),
            Err(e) => fail(QgStatus::ParseError, e.to_string()),
        }
    })
}

/// Look up a built-in graph such as `"cube"` or `"ngon-5"`.
///
/// # Safety
/// `name` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qg_graph_named(name: *const c_char, out: *mut *mut QgGraph) -> QgStatus {
    guard(|| {
        if out.is_null() {
            return fail(QgStatus::NullPointer, "null output pointer");
        }
        let name = match read_str(name) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match named_graph(name) {
            Some(g) => store_graph(out, g),
            None => fail(QgStatus::UnknownName, format!("unknown graph name {name:?}")),
        }
    })
}

/// Release a graph; null is ignored.
///
/// # Safety
/// `graph` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qg_graph_free(graph: *mut QgGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qg_graph_vertex_count(graph: *const QgGraph, out: *mut usize) -> QgStatus {
    if graph.is_null() || out.is_null() {
        return fail(QgStatus::NullPointer, "null argument");
    }
    *out = (*graph).graph.n;
    QgStatus::Ok
}

/// Full analysis as canonical JSON, released with [`qg_string_free`]. With
/// `run_closure` false the level arguments are ignored.
///
/// # Safety
/// `graph` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qg_analyze_json(
    graph: *const QgGraph,
    max_level: u32,
    buffer: u32,
    run_closure: bool,
    out_json: *mut *mut c_char,
) -> QgStatus {
    guard(|| {
        if graph.is_null() || out_json.is_null() {
            return fail(QgStatus::NullPointer, "null argument");
        }
        *out_json = ptr::null_mut();
        let closure = if run_closure {
            match closure_config(max_level, buffer) {
                Ok(c) => Some(c),
                Err(s) => return s,
            }
        } else {
            None
        };
        let report = match analyze(&(*graph).graph, &AnalyzeOptions { closure, timings: false }) {
            Ok(r) => r,
            Err(e) => return fail(QgStatus::InvalidArgument, e.to_string()),
        };
        let json = match to_canonical_json(&report) {
            Ok(j) => j,
            Err(e) => return fail(QgStatus::InvalidArgument, e.to_string()),
        };
        *out_json = CString::new(json).expect("json has no nul bytes").into_raw();
        if report.capped() {
            fail(QgStatus::Capped, "basis cap reached")
        } else {
            QgStatus::Ok
        }
    })
}

/// Closure dimensions `c_0..c_max_level` into `out`, which must hold
/// `max_level + 1` entries.
///
/// # Safety
/// `graph` must be a live handle and `out` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn qg_closure_dims(
    graph: *const QgGraph,
    max_level: u32,
    buffer: u32,
    out: *mut u64,
    len: usize,
) -> QgStatus {
    guard(|| {
        if graph.is_null() || out.is_null() {
            return fail(QgStatus::NullPointer, "null argument");
        }
        if len < max_level as usize + 1 {
            return fail(QgStatus::BufferTooSmall, format!("need {} entries, got {len}", max_level + 1));
        }
        let cfg = match closure_config(max_level, buffer) {
            Ok(c) => c,
            Err(s) => return s,
        };
        let run = match closure_dims(&(*graph).graph, &cfg) {
            Ok(r) => r,
            Err(e) => return fail(QgStatus::InvalidArgument, e.to_string()),
        };
        for (k, &d) in run.dims.dims.iter().enumerate() {
            *out.add(k) = d as u64;
        }
        QgStatus::Ok
    })
}

/// Coefficients `c_0..c_terms` of a closed-form series into `out`, which
/// must hold `terms + 1` entries. `parameter` is ignored for the cube.
///
/// # Safety
/// `out` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn qg_series_coefficients(
    kind: QgSeriesKind,
    parameter: u64,
    terms: usize,
    out: *mut u64,
    len: usize,
) -> QgStatus {
    guard(|| {
        if out.is_null() {
            return fail(QgStatus::NullPointer, "null output buffer");
        }
        if len < terms.saturating_add(1) {
            return fail(QgStatus::BufferTooSmall, format!("need {} entries, got {len}", terms.saturating_add(1)));
        }
        let (kind, parameter) = match kind {
            QgSeriesKind::Tl => (SeriesKind::Tl, Some(parameter)),
            QgSeriesKind::Fc => (SeriesKind::Fc, Some(parameter)),
            QgSeriesKind::Dihedral => (SeriesKind::Dihedral, Some(parameter)),
            QgSeriesKind::Cyclic => (SeriesKind::Cyclic, Some(parameter)),
            QgSeriesKind::Cube => (SeriesKind::Cube, None),
        };
        let table = match series_table(kind, parameter, terms) {
            Ok(t) => t,
            Err(e) => return fail(QgStatus::InvalidArgument, e.to_string()),
        };
        for (k, c) in table.coefficients.iter().enumerate() {
            match c.parse::<u64>() {
                Ok(v) => *out.add(k) = v,
                Err(_) => return fail(QgStatus::Overflow, format!("coefficient {k} exceeds 64 bits")),
            }
        }
        QgStatus::Ok
    })
}

/// Release a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread; valid until the next call
/// that fails on the same thread. Never null.
#[no_mangle]
pub extern "C" fn qg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
