//! Exercises the C ABI from Rust: handle lifecycle, error codes, and the
//! headline numeric results through the foreign interface.

use std::ffi::{CStr, CString};
use std::ptr;

use tracecode_ffi::*;

fn last_error() -> String {
    let ptr = tc_last_error_message();
    assert!(!ptr.is_null(), "expected an error message");
    let msg = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string();
    unsafe { tc_string_free(ptr) };
    msg
}

#[test]
fn tower_lifecycle_and_trace() {
    unsafe {
        let mut tower: *mut TcTower = ptr::null_mut();
        assert_eq!(tc_tower_new(2, 1, 2, &mut tower), TcStatus::Ok);
        assert_eq!(tc_tower_q(tower), 2);
        assert_eq!(tc_tower_order(tower), 4);
        // tr over GF(4)/GF(2): 0,1 -> 0 and ω, ω+1 -> 1.
        let mut tr = 99u64;
        assert_eq!(tc_trace(tower, 2, &mut tr), TcStatus::Ok);
        assert_eq!(tr, 1);
        assert_eq!(tc_trace(tower, 1, &mut tr), TcStatus::Ok);
        assert_eq!(tr, 0);
        // Out-of-range encodings are invalid parameters.
        assert_eq!(tc_trace(tower, 7, &mut tr), TcStatus::InvalidParameter);
        assert!(last_error().contains("out of range"));
        tc_tower_free(tower);
    }
}

#[test]
fn tower_rejects_bad_parameters() {
    unsafe {
        let mut tower: *mut TcTower = ptr::null_mut();
        assert_eq!(tc_tower_new(6, 1, 2, &mut tower), TcStatus::InvalidParameter);
        assert!(last_error().contains("not prime"));
        assert_eq!(tc_tower_new(2, 1, 2, ptr::null_mut()), TcStatus::NullArgument);
    }
}

#[test]
fn counterexample_family_has_zero_probability() {
    unsafe {
        let mut tower: *mut TcTower = ptr::null_mut();
        assert_eq!(tc_tower_new(2, 1, 3, &mut tower), TcStatus::Ok);
        let mut code: *mut TcCode = ptr::null_mut();
        assert_eq!(tc_code_counterexample(tower, 2, &mut code), TcStatus::Ok);
        assert_eq!(tc_code_length(code), 6);
        assert_eq!(tc_code_dimension(code), 2);

        let mut d = 0usize;
        assert_eq!(tc_code_min_distance(code, tc_default_cap(), &mut d), TcStatus::Ok);
        assert_eq!(d, 2);

        let (mut successes, mut total) = (1u64, 0u64);
        assert_eq!(
            tc_exact_pc(code, 1 << 21, &mut successes, &mut total),
            TcStatus::Ok
        );
        assert_eq!((successes, total), (0, 117_649));

        tc_code_free(code);
        tc_tower_free(tower);
    }
}

#[test]
fn repetition_code_round_trips_and_measures() {
    unsafe {
        let mut tower: *mut TcTower = ptr::null_mut();
        assert_eq!(tc_tower_new(2, 1, 2, &mut tower), TcStatus::Ok);
        let mut code: *mut TcCode = ptr::null_mut();
        assert_eq!(tc_code_repetition(tower, 2, &mut code), TcStatus::Ok);

        let text_ptr = tc_code_to_text(code);
        assert!(!text_ptr.is_null());
        let text = CStr::from_ptr(text_ptr).to_str().unwrap().to_string();
        assert_eq!(text, "p=2 s=1 m=2 n=2 k=1\n1 1\n");

        let mut reparsed: *mut TcCode = ptr::null_mut();
        let ctext = CString::new(text).unwrap();
        assert_eq!(tc_code_from_text(ctext.as_ptr(), &mut reparsed), TcStatus::Ok);
        assert_eq!(tc_code_length(reparsed), 2);
        tc_string_free(text_ptr);

        // Exact P_C = 6/9; maximum trace dimension fails for the identity
        // multiplier, so the unscaled code reports 0.
        let (mut successes, mut total) = (0u64, 0u64);
        assert_eq!(
            tc_exact_pc(code, tc_default_cap(), &mut successes, &mut total),
            TcStatus::Ok
        );
        assert_eq!((successes, total), (6, 9));
        let mut is_max = 1i32;
        assert_eq!(tc_has_max_trace_dimension(code, &mut is_max), TcStatus::Ok);
        assert_eq!(is_max, 0);
        let mut dim = 0usize;
        assert_eq!(tc_trace_dimension(code, &mut dim), TcStatus::Ok);
        assert_eq!(dim, 1);

        // Monte Carlo through the ABI is deterministic.
        let mut mc1 = 0u64;
        let mut mc2 = 0u64;
        assert_eq!(tc_monte_carlo_pc(code, 300, 11, &mut mc1), TcStatus::Ok);
        assert_eq!(tc_monte_carlo_pc(code, 300, 11, &mut mc2), TcStatus::Ok);
        assert_eq!(mc1, mc2);

        tc_code_free(reparsed);
        tc_code_free(code);
        tc_tower_free(tower);
    }
}

#[test]
fn lambda_strings_agree_across_methods() {
    unsafe {
        let mut tower: *mut TcTower = ptr::null_mut();
        assert_eq!(tc_tower_new(3, 1, 2, &mut tower), TcStatus::Ok);
        let support = [0u64, 1, 2, 3, 4, 5];
        let multiplier = [2u64, 5, 1, 7, 3, 8];
        let mut code: *mut TcCode = ptr::null_mut();
        assert_eq!(
            tc_code_generalized_reed_solomon(
                tower,
                2,
                support.as_ptr(),
                support.len(),
                multiplier.as_ptr(),
                multiplier.len(),
                &mut code
            ),
            TcStatus::Ok
        );
        let mut rendered = Vec::new();
        for method in [
            TcLambdaMethod::Weight,
            TcLambdaMethod::Average,
            TcLambdaMethod::SubmatrixRank,
        ] {
            let mut out: *mut std::ffi::c_char = ptr::null_mut();
            assert_eq!(tc_lambda(code, method, tc_default_cap(), &mut out), TcStatus::Ok);
            rendered.push(CStr::from_ptr(out).to_str().unwrap().to_string());
            tc_string_free(out);
        }
        assert_eq!(rendered[0], rendered[1]);
        assert_eq!(rendered[1], rendered[2]);
        assert!(rendered[0].contains('/'));
        tc_code_free(code);
        tc_tower_free(tower);
    }
}

#[test]
fn bounds_and_tables_through_the_abi() {
    unsafe {
        let mut out: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(tc_bound(2, 2, 1, 0, 4, &mut out), TcStatus::Ok);
        assert_eq!(CStr::from_ptr(out).to_str().unwrap(), "13/16");
        tc_string_free(out);

        let mut ag: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(tc_bound_ag(2, 4, 16, 1, &mut ag), TcStatus::Ok);
        assert_eq!(CStr::from_ptr(ag).to_str().unwrap(), "65281/65536");
        tc_string_free(ag);

        assert_eq!(
            tc_bound_ag(2, 4, 4, 3, &mut ag),
            TcStatus::InvalidParameter
        );
        assert_eq!(tc_bound(1, 2, 1, 0, 4, &mut ag), TcStatus::InvalidParameter);
    }
    assert!((tc_s1(5, 2) - 0.298004150390625).abs() < 1e-15);
    assert!((tc_s2(5, 3) - 0.572973321315295).abs() < 1e-12);
    assert!((tc_s1(50, 2) - tc_s_limit(2)).abs() < 1e-12);
    assert!(tc_s1(0, 2).is_nan());
    assert!(tc_s_limit(1).is_nan());
}

#[test]
fn cap_breaches_surface_as_their_own_status() {
    unsafe {
        let mut tower: *mut TcTower = ptr::null_mut();
        assert_eq!(tc_tower_new(2, 1, 2, &mut tower), TcStatus::Ok);
        let mut code: *mut TcCode = ptr::null_mut();
        assert_eq!(tc_code_repetition(tower, 8, &mut code), TcStatus::Ok);
        let (mut s, mut t) = (0u64, 0u64);
        assert_eq!(tc_exact_pc(code, 100, &mut s, &mut t), TcStatus::CapExceeded);
        assert!(last_error().contains("cap"));
        tc_code_free(code);
        tc_tower_free(tower);
    }
}

#[test]
fn malformed_text_reports_parse_status() {
    unsafe {
        let mut code: *mut TcCode = ptr::null_mut();
        let text = CString::new("p=2 s=1 m=2 n=2\n1 1\n").unwrap();
        assert_eq!(
            tc_code_from_text(text.as_ptr(), &mut code),
            TcStatus::MalformedCodeFile
        );
        assert_eq!(tc_code_from_text(ptr::null(), &mut code), TcStatus::NullArgument);
    }
}
