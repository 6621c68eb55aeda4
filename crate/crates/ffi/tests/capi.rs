//! Drive the C ABI the way a foreign binding would: through raw pointers,
//! status codes and owned strings.

use moduli_ffi::*;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

fn last_error() -> String {
    unsafe { CStr::from_ptr(mdl_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

fn take_string(ptr: *mut c_char) -> String {
    assert!(!ptr.is_null());
    let text = unsafe { CStr::from_ptr(ptr) }.to_string_lossy().into_owned();
    unsafe { mdl_string_free(ptr) };
    text
}

#[test]
fn graph_handle_round_trip() {
    unsafe {
        let mut graph = ptr::null_mut();
        assert_eq!(mdl_graph_new(4, &mut graph), MdlStatus::Ok);
        assert_eq!(mdl_graph_set_edge(graph, 1, 2, true), MdlStatus::Ok);
        assert_eq!(mdl_graph_set_edge(graph, 4, 2, true), MdlStatus::Ok);
        let mut present = false;
        assert_eq!(mdl_graph_has_edge(graph, 2, 4, &mut present), MdlStatus::Ok);
        assert!(present);
        let mut edges = 0usize;
        assert_eq!(mdl_graph_edge_count(graph, &mut edges), MdlStatus::Ok);
        assert_eq!(edges, 2);

        let mut json = ptr::null_mut();
        assert_eq!(mdl_graph_to_json(graph, &mut json), MdlStatus::Ok);
        let text = take_string(json);
        assert_eq!(text, r#"{"n":4,"edges":[[1,2],[2,4]]}"#);

        let cstring = CString::new(text).unwrap();
        let mut parsed = ptr::null_mut();
        assert_eq!(mdl_graph_from_json(cstring.as_ptr(), &mut parsed), MdlStatus::Ok);
        let mut n = 0usize;
        assert_eq!(mdl_graph_vertex_count(parsed, &mut n), MdlStatus::Ok);
        assert_eq!(n, 4);

        mdl_graph_free(graph);
        mdl_graph_free(parsed);
    }
}

#[test]
fn geometry_flow() {
    unsafe {
        // Realize a path on four vertices and read its graph back.
        let mut graph = ptr::null_mut();
        assert_eq!(mdl_graph_new(4, &mut graph), MdlStatus::Ok);
        for (i, j) in [(1, 2), (2, 3), (3, 4)] {
            assert_eq!(mdl_graph_set_edge(graph, i, j, true), MdlStatus::Ok);
        }
        let mut points = ptr::null_mut();
        assert_eq!(mdl_realize(graph, 4, 0.1, &mut points), MdlStatus::Ok);

        let mut margin = 0.0f64;
        assert_eq!(mdl_discriminant_margin(points, &mut margin), MdlStatus::Ok);
        assert!(margin >= 0.05);

        let mut recovered = ptr::null_mut();
        let mut degenerate = true;
        assert_eq!(
            mdl_geometric_graph(points, 1e-9, &mut recovered, &mut degenerate),
            MdlStatus::Ok
        );
        assert!(!degenerate);
        let mut json_a = ptr::null_mut();
        let mut json_b = ptr::null_mut();
        assert_eq!(mdl_graph_to_json(graph, &mut json_a), MdlStatus::Ok);
        assert_eq!(mdl_graph_to_json(recovered, &mut json_b), MdlStatus::Ok);
        assert_eq!(take_string(json_a), take_string(json_b));

        let mut signs = [0i8; 6];
        assert_eq!(
            mdl_sign_condition(points, 1e-9, signs.as_mut_ptr(), 6),
            MdlStatus::Ok
        );
        assert_eq!(signs, [-1, 1, 1, -1, 1, -1]);

        // A witness between the realization and itself.
        let mut min_margin = 0.0f64;
        assert_eq!(
            mdl_isotopy_witness(points, points, points, 64, &mut min_margin),
            MdlStatus::Ok
        );
        assert!(min_margin > 0.0);

        mdl_graph_free(graph);
        mdl_graph_free(recovered);
        mdl_points_free(points);
    }
}

#[test]
fn degenerate_configuration_is_reported() {
    unsafe {
        let coords = [0.0f64, 1.0];
        let mut points = ptr::null_mut();
        assert_eq!(mdl_points_new(1, 2, coords.as_ptr(), &mut points), MdlStatus::Ok);
        let mut signs = [0i8; 1];
        let status = mdl_sign_condition(points, 1e-9, signs.as_mut_ptr(), 1);
        assert_eq!(status, MdlStatus::Degenerate);
        assert!(last_error().contains("squared distance"));
        mdl_points_free(points);
    }
}

#[test]
fn counting_functions() {
    unsafe {
        let mut text = ptr::null_mut();
        assert_eq!(mdl_semiorder_count(5, &mut text), MdlStatus::Ok);
        assert_eq!(take_string(text), "2371");

        let mut text = ptr::null_mut();
        assert_eq!(mdl_uig_count(5, &mut text), MdlStatus::Ok);
        assert_eq!(take_string(text), "637");

        let mut chambers = 0u64;
        assert_eq!(mdl_line_chamber_count(4, &mut chambers), MdlStatus::Ok);
        assert_eq!(chambers, 183);

        let mut chi = 0i64;
        assert_eq!(mdl_euler_chamber_count(4, &mut chambers, &mut chi), MdlStatus::Ok);
        assert_eq!((chambers, chi), (183, -181));

        assert_eq!(mdl_line_chamber_count(9, &mut chambers), MdlStatus::BudgetExceeded);
    }
}

#[test]
fn invariant_functions() {
    unsafe {
        let mut graph = ptr::null_mut();
        assert_eq!(mdl_graph_new(4, &mut graph), MdlStatus::Ok);
        let mut floer = 0i64;
        assert_eq!(mdl_floer_number(graph, &mut floer), MdlStatus::Ok);
        assert_eq!(floer, 24);
        mdl_graph_free(graph);

        let mut json = ptr::null_mut();
        assert_eq!(mdl_complement_poincare_json(4, &mut json), MdlStatus::Ok);
        let value: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(value["terms"].as_array().unwrap().len(), 6);

        let sigma = CString::new(r#"{"n":3,"signs":[1,-1,1]}"#).unwrap();
        let mut json = ptr::null_mut();
        assert_eq!(
            mdl_index_census_json(2, sigma.as_ptr(), 1e-3, 800, 7, &mut json),
            MdlStatus::Ok
        );
        let value: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(value["violations"], 0);

        let mut lower = 0.0f64;
        let mut upper = 0.0f64;
        assert_eq!(mdl_isomorphism_lower_log(100, 2, &mut lower), MdlStatus::Ok);
        assert_eq!(mdl_isotopy_upper_log(100, 2, &mut upper), MdlStatus::Ok);
        assert!(lower <= upper);
        assert_eq!(
            mdl_isotopy_upper_log(5, 2, &mut upper),
            MdlStatus::InvalidArgument
        );
    }
}

#[test]
fn family_and_null_handling() {
    unsafe {
        let mut jsonl = ptr::null_mut();
        assert_eq!(mdl_family_jsonl(2, 7, 1, &mut jsonl), MdlStatus::Ok);
        let text = take_string(jsonl);
        assert_eq!(text.lines().count(), 32);

        assert_eq!(mdl_line_chamber_count(3, ptr::null_mut()), MdlStatus::NullPointer);
        assert_eq!(
            mdl_graph_has_edge(ptr::null(), 1, 2, ptr::null_mut()),
            MdlStatus::NullPointer
        );
    }
}

#[test]
fn verify_through_ffi() {
    unsafe {
        let mut report = ptr::null_mut();
        assert_eq!(mdl_verify(0, 7, &mut report), MdlStatus::Ok);
        let value: serde_json::Value = serde_json::from_str(&take_string(report)).unwrap();
        assert_eq!(value["ok"], true);
        assert_eq!(mdl_verify(9, 7, ptr::null_mut()), MdlStatus::InvalidArgument);
    }
}
