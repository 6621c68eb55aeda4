//! C ABI for the moduli library.
//!
//! Conventions:
//!
//! * Handles (`MdlGraph`, `MdlPoints`) are opaque; create them through the
//!   constructors and release them with the matching `_free` function.
//! * Every fallible call returns an [`MdlStatus`]; outputs go through
//!   pointers that are written only on `Ok`.
//! * Strings returned through `char**` are UTF-8, NUL-terminated, owned by
//!   the caller and released with `mdl_string_free`.
//! * On failure, `mdl_last_error_message` returns a thread-local description
//!   of the most recent error.
//!
//! Vertices are 1-based, matching the JSON encodings:
//! graphs `{"n":..,"edges":[[i,j],..]}`, point sets
//! `{"d":..,"points":[[..],..]}`, sign vectors `{"n":..,"signs":[..]}`.

#![allow(clippy::missing_safety_doc)]

use moduli_core::graphs::{
    discriminant_margin, geometric_graph, sign_condition, LabeledGraph, PointConfig,
    SignCondition,
};
use moduli_core::quadrics::{index_value_census, QuadricFamily};
use moduli_core::realize::{isotopy_witness, realize};
use moduli_core::verify::{run_verify, VerifyLevel};
use moduli_core::{bounds, euler, family, line, poincare, series};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status codes shared by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MdlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Degenerate = 3,
    NumericFailure = 4,
    BudgetExceeded = 5,
    Inconsistent = 6,
    BadEncoding = 7,
    VerificationFailed = 8,
    InternalPanic = 9,
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

fn fail(status: MdlStatus, message: &str) -> MdlStatus {
    set_error(message);
    status
}

/// Description of the most recent error on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mdl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn mdl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Opaque labeled graph handle.
pub struct MdlGraph(LabeledGraph);

/// Opaque point-configuration handle.
pub struct MdlPoints(PointConfig);

fn guard(body: impl FnOnce() -> MdlStatus) -> MdlStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(MdlStatus::InternalPanic, "internal panic"),
    }
}

unsafe fn write_out<T>(out: *mut T, value: T) -> MdlStatus {
    if out.is_null() {
        return fail(MdlStatus::NullPointer, "output pointer is null");
    }
    unsafe { out.write(value) };
    MdlStatus::Ok
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, MdlStatus> {
    if ptr.is_null() {
        return Err(fail(MdlStatus::NullPointer, "string pointer is null"));
    }
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map_err(|_| fail(MdlStatus::BadEncoding, "string is not UTF-8"))
}

unsafe fn out_string(out: *mut *mut c_char, text: String) -> MdlStatus {
    match CString::new(text) {
        Ok(cstring) => unsafe { write_out(out, cstring.into_raw()) },
        Err(_) => fail(MdlStatus::BadEncoding, "output contained a NUL byte"),
    }
}

/// Release a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn mdl_string_free(ptr: *mut c_char) {
    if !ptr.is_null() {
        drop(unsafe { CString::from_raw(ptr) });
    }
}

// ---------------------------------------------------------------------------
// Graph handles

/// New graph on `n` vertices with no edges.
#[no_mangle]
pub unsafe extern "C" fn mdl_graph_new(n: usize, out: *mut *mut MdlGraph) -> MdlStatus {
    guard(|| match LabeledGraph::empty(n) {
        Ok(g) => unsafe { write_out(out, Box::into_raw(Box::new(MdlGraph(g)))) },
        Err(e) => fail(MdlStatus::InvalidArgument, &e.to_string()),
    })
}

#[no_mangle]
pub unsafe extern "C" fn mdl_graph_free(graph: *mut MdlGraph) {
    if !graph.is_null() {
        drop(unsafe { Box::from_raw(graph) });
    }
}

#[no_mangle]
pub unsafe extern "C" fn mdl_graph_set_edge(
    graph: *mut MdlGraph,
    i: usize,
    j: usize,
    present: bool,
) -> MdlStatus {
    guard(|| {
        let Some(graph) = (unsafe { graph.as_mut() }) else {
            return fail(MdlStatus::NullPointer, "graph handle is null");
        };
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        match graph.0.set_edge(a, b, present) {
            Ok(()) => MdlStatus::Ok,
            Err(e) => fail(MdlStatus::InvalidArgument, &e.to_string()),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn mdl_graph_has_edge(
    graph: *const MdlGraph,
    i: usize,
    j: usize,
    out: *mut bool,
) -> MdlStatus {
    guard(|| {
        let Some(graph) = (unsafe { graph.as_ref() }) else {
            return fail(MdlStatus::NullPointer, "graph handle is null");
        };
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        match graph.0.has_edge(a, b) {
            Ok(present) => unsafe { write_out(out, present) },
            Err(e) => fail(MdlStatus::InvalidArgument, &e.to_string()),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn mdl_graph_vertex_count(
    graph: *const MdlGraph,
    out: *mut usize,
) -> MdlStatus {
    guard(|| {
        let Some(graph) = (unsafe { graph.as_ref() }) else {
            return fail(MdlStatus::NullPointer, "graph handle is null");
        };
        unsafe { write_out(out, graph.0.n()) }
    })
}

#[no_mangle]
pub unsafe extern "C" fn mdl_graph_edge_count(
    graph: *const MdlGraph,
    out: *mut usize,
) -> MdlStatus {
    guard(|| {
        let Some(graph) = (unsafe { graph.as_ref() }) else {
            return fail(MdlStatus::NullPointer, "graph handle is null");
        };
        unsafe { write_out(out, graph.0.edge_count()) }
    })
}

#[no_mangle]
pub unsafe extern "C" fn mdl_graph_from_json(
    json: *const c_char,
    out: *mut *mut MdlGraph,
) -> MdlStatus {
    guard(|| {
        let text = match unsafe { read_str(json) } {
            Ok(t) => t,
            Err(status) => return status,
        };
        match serde_json::from_str::<LabeledGraph>(text) {
            Ok(g) => unsafe { write_out(out, Box::into_raw(Box::new(MdlGraph(g)))) },
            Err(e) => fail(MdlStatus::InvalidArgument, &e.to_string()),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn mdl_graph_to_json(
    graph: *const MdlGraph,
    out: *mut *mut c_char,
) -> MdlStatus {
    guard(|| {
        let Some(graph) = (unsafe { graph.as_ref() }) else {
            return fail(MdlStatus::NullPointer, "graph handle is null");
        };
        match serde_json::to_string(&graph.0) {
            Ok(json) => unsafe { out_string(out, json) },
            Err(e) => fail(MdlStatus::BadEncoding, &e.to_string()),
        }
    })
}

// ---------------------------------------------------------------------------
// Point-configuration handles

/// New configuration of `n` points in `R^d` from a row-major coordinate
/// buffer of length `n * d`.
#[no_mangle]
pub unsafe extern "C" fn mdl_points_new(
    d: usize,
    n: usize,
    coords: *const f64,
    out: *mut *mut MdlPoints,
) -> MdlStatus {
    guard(|| {
        if coords.is_null() {
            return fail(MdlStatus::NullPointer, "coordinate buffer is null");
        }
        let slice = unsafe { std::slice::from_raw_parts(coords, n.saturating_mul(d)) };
        match PointConfig::from_flat(d, n, slice.to_vec()) {
            Ok(p) => unsafe { write_out(out, Box::into_raw(Box::new(MdlPoints(p)))) },
            Err(e) => fail(MdlStatus::InvalidArgument, &e.to_string()),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn mdl_points_free(points: *mut MdlPoints) {
    if !points.is_null() {
        drop(unsafe { Box::from_raw(points) });
    }
}

#[no_mangle]
pub unsafe extern "C" fn mdl_points_from_json(
    json: *const c_char,
    out: *mut *mut MdlPoints,
) -> MdlStatus {
    guard(|| {
        let text = match unsafe { read_str(json) } {
            Ok(t) => t,
            Err(status) => return status,
        };
        match serde_json::from_str::<PointConfig>(text) {
            Ok(p) => unsafe { write_out(out, Box::into_raw(Box::new(MdlPoints(p)))) },
            Err(e) => fail(MdlStatus::InvalidArgument, &e.to_string()),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn mdl_points_to_json(
    points: *const MdlPoints,
    out: *mut *mut c_char,
) -> MdlStatus {
    guard(|| {
        let Some(points) = (unsafe { points.as_ref() }) else {
            return fail(MdlStatus::NullPointer, "points handle is null");
        };
        match serde_json::to_string(&points.0) {
            Ok(json) => unsafe { out_string(out, json) },
            Err(e) => fail(MdlStatus::BadEncoding, &e.to_string()),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn mdl_points_dimension(
    points: *const MdlPoints,
    out: *mut usize,
) -> MdlStatus {
    guard(|| {
        let Some(points) = (unsafe { points.as_ref() }) else {
            return fail(MdlStatus::NullPointer, "points handle is null");
        };
        unsafe { write_out(out, points.0.d()) }
    })
}

#[no_mangle]
pub unsafe extern "C" fn mdl_points_count(
    points: *const MdlPoints,
    out: *mut usize,
) -> MdlStatus {
    guard(|| {
        let Some(points) = (unsafe { points.as_ref() }) else {
            return fail(MdlStatus::NullPointer, "points handle is null");
        };
        unsafe { write_out(out, points.0.n()) }
    })
}

// ---------------------------------------------------------------------------
// Geometry

/// Geometric graph of a configuration. `out_degenerate` reports whether some
/// pair sits within `tol` of squared distance 1.
#[no_mangle]
pub unsafe extern "C" fn mdl_geometric_graph(
    points: *const MdlPoints,
    tol: f64,
    out_graph: *mut *mut MdlGraph,
    out_degenerate: *mut bool,
) -> MdlStatus {
    guard(|| {
        let Some(points) = (unsafe { points.as_ref() }) else {
            return fail(MdlStatus::NullPointer, "points handle is null");
        };
        if tol.is_nan() || tol < 0.0 {
            return fail(MdlStatus::InvalidArgument, "tol must be nonnegative");
        }
        let gg = geometric_graph(&points.0, tol);
        if !out_degenerate.is_null() {
            unsafe { out_degenerate.write(gg.degenerate) };
        }
        unsafe { write_out(out_graph, Box::into_raw(Box::new(MdlGraph(gg.graph)))) }
    })
}

/// Minimum over pairs of `| squared distance - 1 |`.
#[no_mangle]
pub unsafe extern "C" fn mdl_discriminant_margin(
    points: *const MdlPoints,
    out: *mut f64,
) -> MdlStatus {
    guard(|| {
        let Some(points) = (unsafe { points.as_ref() }) else {
            return fail(MdlStatus::NullPointer, "points handle is null");
        };
        unsafe { write_out(out, discriminant_margin(&points.0)) }
    })
}

/// Sign vector of a nondegenerate configuration, written as `+1`/`-1` into a
/// caller buffer of length `n (n - 1) / 2` (canonical pair order).
#[no_mangle]
pub unsafe extern "C" fn mdl_sign_condition(
    points: *const MdlPoints,
    tol: f64,
    out_signs: *mut i8,
    len: usize,
) -> MdlStatus {
    guard(|| {
        let Some(points) = (unsafe { points.as_ref() }) else {
            return fail(MdlStatus::NullPointer, "points handle is null");
        };
        if out_signs.is_null() {
            return fail(MdlStatus::NullPointer, "sign buffer is null");
        }
        match sign_condition(&points.0, tol) {
            Ok(sigma) => {
                if sigma.signs().len() != len {
                    return fail(
                        MdlStatus::InvalidArgument,
                        &format!("sign buffer length {len} != {}", sigma.signs().len()),
                    );
                }
                unsafe {
                    std::ptr::copy_nonoverlapping(sigma.signs().as_ptr(), out_signs, len);
                }
                MdlStatus::Ok
            }
            Err(e) => fail(MdlStatus::Degenerate, &e.to_string()),
        }
    })
}

/// Realize a labeled graph as a nondegenerate geometric graph in `R^dim`.
#[no_mangle]
pub unsafe extern "C" fn mdl_realize(
    graph: *const MdlGraph,
    dim: usize,
    eps: f64,
    out: *mut *mut MdlPoints,
) -> MdlStatus {
    guard(|| {
        let Some(graph) = (unsafe { graph.as_ref() }) else {
            return fail(MdlStatus::NullPointer, "graph handle is null");
        };
        match realize(&graph.0, dim, eps) {
            Ok(p) => unsafe { write_out(out, Box::into_raw(Box::new(MdlPoints(p)))) },
            Err(e) => fail(MdlStatus::NumericFailure, &e.to_string()),
        }
    })
}

/// Rigid-isotopy witness between two realizations of one graph; writes the
/// minimum discriminant margin seen along the verified path.
#[no_mangle]
pub unsafe extern "C" fn mdl_isotopy_witness(
    p0: *const MdlPoints,
    p1: *const MdlPoints,
    r: *const MdlPoints,
    steps: usize,
    out_min_margin: *mut f64,
) -> MdlStatus {
    guard(|| {
        let (Some(p0), Some(p1), Some(r)) =
            (unsafe { p0.as_ref() }, unsafe { p1.as_ref() }, unsafe { r.as_ref() })
        else {
            return fail(MdlStatus::NullPointer, "points handle is null");
        };
        match isotopy_witness(&p0.0, &p1.0, &r.0, steps) {
            Ok(report) => unsafe { write_out(out_min_margin, report.min_margin) },
            Err(e) => fail(MdlStatus::NumericFailure, &e.to_string()),
        }
    })
}

// ---------------------------------------------------------------------------
// Counting

/// Number of labeled semiorders of `[n]` as a decimal string.
#[no_mangle]
pub unsafe extern "C" fn mdl_semiorder_count(n: usize, out: *mut *mut c_char) -> MdlStatus {
    guard(|| match series::semiorder_count(n, n) {
        Ok(value) => unsafe { out_string(out, value.to_string()) },
        Err(e) => fail(MdlStatus::NumericFailure, &e.to_string()),
    })
}

/// Number of labeled unit interval graphs on `n` vertices as a decimal
/// string.
#[no_mangle]
pub unsafe extern "C" fn mdl_uig_count(n: usize, out: *mut *mut c_char) -> MdlStatus {
    guard(|| match series::uig_count(n, n) {
        Ok(value) => unsafe { out_string(out, value.to_string()) },
        Err(e) => fail(MdlStatus::NumericFailure, &e.to_string()),
    })
}

/// Chamber count of the line arrangement by strict-inequality enumeration.
#[no_mangle]
pub unsafe extern "C" fn mdl_line_chamber_count(n: usize, out: *mut u64) -> MdlStatus {
    guard(|| match line::enumerate_chambers(n) {
        Ok(chambers) => unsafe { write_out(out, chambers.len() as u64) },
        Err(e) => fail(MdlStatus::BudgetExceeded, &e.to_string()),
    })
}

/// Chamber count recovered from the Euler characteristic of the compactified
/// discriminant; also writes the Euler characteristic itself.
#[no_mangle]
pub unsafe extern "C" fn mdl_euler_chamber_count(
    n: usize,
    out_chambers: *mut u64,
    out_chi: *mut i64,
) -> MdlStatus {
    guard(|| match euler::euler_report(n) {
        Ok(report) => {
            if !out_chi.is_null() {
                unsafe { out_chi.write(report.chi) };
            }
            unsafe { write_out(out_chambers, report.chambers) }
        }
        Err(e) => fail(MdlStatus::BudgetExceeded, &e.to_string()),
    })
}

/// Floer number of a graph on at most four vertices.
#[no_mangle]
pub unsafe extern "C" fn mdl_floer_number(graph: *const MdlGraph, out: *mut i64) -> MdlStatus {
    guard(|| {
        let Some(graph) = (unsafe { graph.as_ref() }) else {
            return fail(MdlStatus::NullPointer, "graph handle is null");
        };
        match poincare::floer_number(&graph.0) {
            Ok(value) => unsafe { write_out(out, value) },
            Err(e) => fail(MdlStatus::InvalidArgument, &e.to_string()),
        }
    })
}

/// Aggregated Poincare polynomial of the complement (n = 3 or 4) as a JSON
/// term list.
#[no_mangle]
pub unsafe extern "C" fn mdl_complement_poincare_json(
    n: usize,
    out: *mut *mut c_char,
) -> MdlStatus {
    guard(|| match poincare::complement_poincare(n) {
        Ok(poly) => match serde_json::to_string(&poly) {
            Ok(json) => unsafe { out_string(out, json) },
            Err(e) => fail(MdlStatus::BadEncoding, &e.to_string()),
        },
        Err(e) => fail(MdlStatus::Inconsistent, &e.to_string()),
    })
}

/// Index-decomposition census for a sign condition (JSON report), sampling
/// `samples` covectors with the given seed.
#[no_mangle]
pub unsafe extern "C" fn mdl_index_census_json(
    d: usize,
    sigma_json: *const c_char,
    epsilon: f64,
    samples: usize,
    seed: u64,
    out: *mut *mut c_char,
) -> MdlStatus {
    guard(|| {
        let text = match unsafe { read_str(sigma_json) } {
            Ok(t) => t,
            Err(status) => return status,
        };
        let sigma: SignCondition = match serde_json::from_str(text) {
            Ok(s) => s,
            Err(e) => return fail(MdlStatus::InvalidArgument, &e.to_string()),
        };
        let fam = match QuadricFamily::new(d, sigma, epsilon) {
            Ok(f) => f,
            Err(e) => return fail(MdlStatus::InvalidArgument, &e.to_string()),
        };
        let report = index_value_census(&fam, samples, seed);
        match serde_json::to_string(&report) {
            Ok(json) => unsafe { out_string(out, json) },
            Err(e) => fail(MdlStatus::BadEncoding, &e.to_string()),
        }
    })
}

/// Grow the lower-bound family (JSON lines, one member per line).
#[no_mangle]
pub unsafe extern "C" fn mdl_family_jsonl(
    d: usize,
    n: usize,
    seed: u64,
    out: *mut *mut c_char,
) -> MdlStatus {
    guard(|| {
        let members = match family::FamilyConfig::new(d, n, seed)
            .and_then(|cfg| family::generate_family(&cfg))
        {
            Ok(m) => m,
            Err(e) => return fail(MdlStatus::NumericFailure, &e.to_string()),
        };
        let mut text = String::new();
        for member in &members {
            match serde_json::to_string(member) {
                Ok(json) => {
                    text.push_str(&json);
                    text.push('\n');
                }
                Err(e) => return fail(MdlStatus::BadEncoding, &e.to_string()),
            }
        }
        unsafe { out_string(out, text) }
    })
}

/// Log-scale bounds; hypotheses are checked and reported as
/// `InvalidArgument`.
#[no_mangle]
pub unsafe extern "C" fn mdl_warren_bound_log(n: u64, d: u64, out: *mut f64) -> MdlStatus {
    guard(|| match bounds::warren_bound_log(n, d) {
        Ok(v) => unsafe { write_out(out, v) },
        Err(e) => fail(MdlStatus::InvalidArgument, &e.to_string()),
    })
}

#[no_mangle]
pub unsafe extern "C" fn mdl_isotopy_upper_log(n: u64, d: u64, out: *mut f64) -> MdlStatus {
    guard(|| match bounds::isotopy_upper_log(n, d) {
        Ok(v) => unsafe { write_out(out, v) },
        Err(e) => fail(MdlStatus::InvalidArgument, &e.to_string()),
    })
}

#[no_mangle]
pub unsafe extern "C" fn mdl_isomorphism_lower_log(n: u64, d: u64, out: *mut f64) -> MdlStatus {
    guard(|| match bounds::isomorphism_lower_log(n, d) {
        Ok(v) => unsafe { write_out(out, v) },
        Err(e) => fail(MdlStatus::InvalidArgument, &e.to_string()),
    })
}

/// Run the cross-module oracle equivalences: `level` 0 = quick, 1 = full.
/// Writes the JSON report and returns `VerificationFailed` on any mismatch.
#[no_mangle]
pub unsafe extern "C" fn mdl_verify(
    level: u32,
    seed: u64,
    out_report: *mut *mut c_char,
) -> MdlStatus {
    guard(|| {
        let level = match level {
            0 => VerifyLevel::Quick,
            1 => VerifyLevel::Full,
            _ => return fail(MdlStatus::InvalidArgument, "level must be 0 or 1"),
        };
        let report = run_verify(level, seed);
        let json = match serde_json::to_string(&report) {
            Ok(json) => json,
            Err(e) => return fail(MdlStatus::BadEncoding, &e.to_string()),
        };
        if !out_report.is_null() {
            let status = unsafe { out_string(out_report, json) };
            if status != MdlStatus::Ok {
                return status;
            }
        }
        if report.ok {
            MdlStatus::Ok
        } else {
            fail(MdlStatus::VerificationFailed, "oracle mismatch; see report")
        }
    })
}
