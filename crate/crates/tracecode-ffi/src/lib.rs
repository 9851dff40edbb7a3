//! C ABI for the tracecode library: opaque handles, integer status codes,
//! and caller-freed strings, so other languages can bind the exact
//! trace-code machinery.
//!
//! Conventions:
//! - Every fallible function returns a [`TcStatus`]; outputs go through
//!   out-pointers that are written only on `TC_STATUS_OK`.
//! - `tc_last_error_message` returns the message of the most recent error
//!   on the calling thread (caller frees with `tc_string_free`).
//! - Handles are freed exactly once with their matching `_free` function;
//!   strings returned by this library are freed with `tc_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use tracecode::codes::DEFAULT_ENUMERATION_CAP;
use tracecode::lambda::{
    bound_from_defect, bound_from_divisor_degree, format_rational, lambda_average_form, lambda_ng_form,
    lambda_weight_form,
};
use tracecode::probability::{exact_pc, monte_carlo_pc, s1, s2, s_limit};
use tracecode::tracedim::{has_max_trace_dimension, trace_dimension};
use tracecode::{Error, FieldTower, LinearCode, Multiplier, ProbabilityResult, RngSpec, Support};

/// Status code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TcStatus {
    /// Success; out-parameters are valid.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Parameters violate a precondition.
    InvalidParameter = 2,
    /// A code file string could not be parsed.
    MalformedCodeFile = 3,
    /// An enumeration would exceed the configured cap.
    CapExceeded = 4,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 5,
    /// An internal invariant failed.
    InternalError = 6,
}

/// Which λ formula to evaluate.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TcLambdaMethod {
    /// Dual weight-distribution sum.
    Weight = 0,
    /// Exhaustive average over all multipliers.
    Average = 1,
    /// Column-submatrix rank form.
    SubmatrixRank = 2,
}

/// Opaque handle to a field tower GF(p) ⊂ GF(q) ⊂ GF(q^m).
pub struct TcTower(Arc<FieldTower>);

/// Opaque handle to a linear code over GF(q^m).
pub struct TcCode(LinearCode);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: &str) {
    let cstring = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(cstring));
}

fn status_of(err: &Error) -> TcStatus {
    match err {
        Error::MalformedCodeFile(_) => TcStatus::MalformedCodeFile,
        Error::CapExceeded { .. } => TcStatus::CapExceeded,
        _ => TcStatus::InvalidParameter,
    }
}

fn fail(err: Error) -> TcStatus {
    set_error(&err.to_string());
    status_of(&err)
}

/// Runs a closure, translating panics into `InternalError`.
fn guarded(f: impl FnOnce() -> TcStatus) -> TcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            TcStatus::InternalError
        }
    }
}

fn null_argument() -> TcStatus {
    set_error("null pointer argument");
    TcStatus::NullArgument
}

unsafe fn slice_arg<'a>(ptr: *const u64, len: usize) -> Option<&'a [u64]> {
    if len == 0 {
        Some(&[])
    } else if ptr.is_null() {
        None
    } else {
        Some(unsafe { std::slice::from_raw_parts(ptr, len) })
    }
}

/// Message of the most recent error on this thread, or null if none.
/// The caller owns the returned string and frees it with `tc_string_free`.
#[no_mangle]
pub extern "C" fn tc_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(msg) => msg.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// Frees a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must have been returned by a tracecode function and not freed yet.
#[no_mangle]
pub unsafe extern "C" fn tc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Builds the canonical tower for (p, s, m) and stores the handle in `out`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tc_tower_new(p: u64, s: u32, m: u32, out: *mut *mut TcTower) -> TcStatus {
    guarded(|| {
        if out.is_null() {
            return null_argument();
        }
        match FieldTower::new(p, s, m) {
            Ok(tower) => {
                unsafe { *out = Box::into_raw(Box::new(TcTower(tower))) };
                TcStatus::Ok
            }
            Err(err) => fail(err),
        }
    })
}

/// Frees a tower handle. Null is a no-op.
///
/// # Safety
/// `tower` must come from `tc_tower_new` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn tc_tower_free(tower: *mut TcTower) {
    if !tower.is_null() {
        drop(unsafe { Box::from_raw(tower) });
    }
}

/// Size q of the field of definition; 0 on null.
///
/// # Safety
/// `tower` must be a live handle from `tc_tower_new`.
#[no_mangle]
pub unsafe extern "C" fn tc_tower_q(tower: *const TcTower) -> u64 {
    if tower.is_null() {
        return 0;
    }
    unsafe { &*tower }.0.q()
}

/// Size q^m of the extension field; 0 on null.
///
/// # Safety
/// `tower` must be a live handle from `tc_tower_new`.
#[no_mangle]
pub unsafe extern "C" fn tc_tower_order(tower: *const TcTower) -> u64 {
    if tower.is_null() {
        return 0;
    }
    unsafe { &*tower }.0.qm()
}

/// Trace of the element with the given encoding down to GF(q).
///
/// # Safety
/// `tower` must be a live handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn tc_trace(tower: *const TcTower, element: u64, out: *mut u64) -> TcStatus {
    guarded(|| {
        if tower.is_null() || out.is_null() {
            return null_argument();
        }
        let tower = &unsafe { &*tower }.0;
        match tower
            .element(tracecode::Level::Ext, element)
            .and_then(|x| tower.trace_to_subfield(x))
        {
            Ok(tr) => {
                unsafe { *out = tr.code() };
                TcStatus::Ok
            }
            Err(err) => fail(err),
        }
    })
}

fn emit_code(out: *mut *mut TcCode, result: Result<LinearCode, Error>) -> TcStatus {
    match result {
        Ok(code) => {
            unsafe { *out = Box::into_raw(Box::new(TcCode(code))) };
            TcStatus::Ok
        }
        Err(err) => fail(err),
    }
}

/// Parses the code file text format.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn tc_code_from_text(text: *const c_char, out: *mut *mut TcCode) -> TcStatus {
    guarded(|| {
        if text.is_null() || out.is_null() {
            return null_argument();
        }
        let Ok(text) = unsafe { CStr::from_ptr(text) }.to_str() else {
            set_error("code text is not valid UTF-8");
            return TcStatus::InvalidUtf8;
        };
        emit_code(out, LinearCode::from_text(text))
    })
}

/// Serializes a code to the code file text format.
/// Returns null on a null handle; free with `tc_string_free`.
///
/// # Safety
/// `code` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tc_code_to_text(code: *const TcCode) -> *mut c_char {
    if code.is_null() {
        return std::ptr::null_mut();
    }
    let text = unsafe { &*code }.0.to_text();
    CString::new(text)
        .map(CString::into_raw)
        .unwrap_or(std::ptr::null_mut())
}

/// Frees a code handle. Null is a no-op.
///
/// # Safety
/// `code` must come from a tracecode constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn tc_code_free(code: *mut TcCode) {
    if !code.is_null() {
        drop(unsafe { Box::from_raw(code) });
    }
}

/// Length n of the code; 0 on null.
///
/// # Safety
/// `code` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tc_code_length(code: *const TcCode) -> usize {
    if code.is_null() {
        return 0;
    }
    unsafe { &*code }.0.n()
}

/// Dimension k of the code; 0 on null.
///
/// # Safety
/// `code` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn tc_code_dimension(code: *const TcCode) -> usize {
    if code.is_null() {
        return 0;
    }
    unsafe { &*code }.0.k()
}

/// Builds the power-row code over the given support encodings.
///
/// # Safety
/// `tower` must be live; `support` must point to `support_len` u64 values
/// (or be null when the length is 0); `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn tc_code_reed_solomon(
    tower: *const TcTower,
    k: usize,
    support: *const u64,
    support_len: usize,
    out: *mut *mut TcCode,
) -> TcStatus {
    guarded(|| {
        if tower.is_null() || out.is_null() {
            return null_argument();
        }
        let Some(support) = (unsafe { slice_arg(support, support_len) }) else {
            return null_argument();
        };
        let tower = unsafe { &*tower }.0.clone();
        let result = Support::from_codes(&tower, support.to_vec())
            .and_then(|sup| LinearCode::reed_solomon(tower, k, &sup));
        emit_code(out, result)
    })
}

/// Builds the multiplier-scaled power-row code.
///
/// # Safety
/// As `tc_code_reed_solomon`, plus `multiplier` points to `multiplier_len`
/// values.
#[no_mangle]
pub unsafe extern "C" fn tc_code_generalized_reed_solomon(
    tower: *const TcTower,
    k: usize,
    support: *const u64,
    support_len: usize,
    multiplier: *const u64,
    multiplier_len: usize,
    out: *mut *mut TcCode,
) -> TcStatus {
    guarded(|| {
        if tower.is_null() || out.is_null() {
            return null_argument();
        }
        let support = unsafe { slice_arg(support, support_len) };
        let multiplier = unsafe { slice_arg(multiplier, multiplier_len) };
        let (Some(support), Some(multiplier)) = (support, multiplier) else {
            return null_argument();
        };
        let tower = unsafe { &*tower }.0.clone();
        let result = Support::from_codes(&tower, support.to_vec()).and_then(|sup| {
            let mult = Multiplier::from_codes(&tower, multiplier.to_vec())?;
            LinearCode::generalized_reed_solomon(tower, k, &sup, &mult)
        });
        emit_code(out, result)
    })
}

/// Builds the [n, 1, n] repetition code.
///
/// # Safety
/// `tower` must be live; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn tc_code_repetition(
    tower: *const TcTower,
    n: usize,
    out: *mut *mut TcCode,
) -> TcStatus {
    guarded(|| {
        if tower.is_null() || out.is_null() {
            return null_argument();
        }
        emit_code(out, LinearCode::repetition(unsafe { &*tower }.0.clone(), n))
    })
}

/// Builds the zero-probability [mk, k] family member over the canonical
/// support 0, 1, …, mk-1.
///
/// # Safety
/// `tower` must be live; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn tc_code_counterexample(
    tower: *const TcTower,
    k: usize,
    out: *mut *mut TcCode,
) -> TcStatus {
    guarded(|| {
        if tower.is_null() || out.is_null() {
            return null_argument();
        }
        let tower = unsafe { &*tower }.0.clone();
        let n = tower.m() as usize * k;
        let result = Support::canonical(&tower, n)
            .and_then(|sup| LinearCode::counterexample(tower, k, &sup));
        emit_code(out, result)
    })
}

/// The dual code.
///
/// # Safety
/// `code` must be live; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn tc_code_dual(code: *const TcCode, out: *mut *mut TcCode) -> TcStatus {
    guarded(|| {
        if code.is_null() || out.is_null() {
            return null_argument();
        }
        emit_code(out, Ok(unsafe { &*code }.0.dual()))
    })
}

/// Minimum distance by brute-force enumeration, bounded by `cap`.
///
/// # Safety
/// `code` must be live; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn tc_code_min_distance(
    code: *const TcCode,
    cap: u64,
    out: *mut usize,
) -> TcStatus {
    guarded(|| {
        if code.is_null() || out.is_null() {
            return null_argument();
        }
        match unsafe { &*code }.0.min_distance(cap) {
            Ok(d) => {
                unsafe { *out = d };
                TcStatus::Ok
            }
            Err(err) => fail(err),
        }
    })
}

/// dim tr(C) over GF(q).
///
/// # Safety
/// `code` must be live; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn tc_trace_dimension(code: *const TcCode, out: *mut usize) -> TcStatus {
    guarded(|| {
        if code.is_null() || out.is_null() {
            return null_argument();
        }
        unsafe { *out = trace_dimension(&(*code).0) };
        TcStatus::Ok
    })
}

/// Whether dim tr(C) attains the ceiling m·k (1 or 0).
///
/// # Safety
/// `code` must be live; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn tc_has_max_trace_dimension(
    code: *const TcCode,
    out: *mut i32,
) -> TcStatus {
    guarded(|| {
        if code.is_null() || out.is_null() {
            return null_argument();
        }
        unsafe { *out = has_max_trace_dimension(&(*code).0) as i32 };
        TcStatus::Ok
    })
}

/// Exact P_C: counts multipliers reaching maximum trace dimension over all
/// (q^m - 1)^n of them. The exact probability is successes/total.
///
/// # Safety
/// `code` must be live; the out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn tc_exact_pc(
    code: *const TcCode,
    cap: u64,
    out_successes: *mut u64,
    out_total: *mut u64,
) -> TcStatus {
    guarded(|| {
        if code.is_null() || out_successes.is_null() || out_total.is_null() {
            return null_argument();
        }
        match exact_pc(&unsafe { &*code }.0, cap) {
            Ok(ProbabilityResult::Exact {
                successes, total, ..
            }) => {
                unsafe {
                    *out_successes = successes;
                    *out_total = total;
                }
                TcStatus::Ok
            }
            Ok(_) => unreachable!("exact_pc returns exact results"),
            Err(err) => fail(err),
        }
    })
}

/// Monte Carlo estimate of P_C with the given trial count and seed
/// (ChaCha12 substreams; deterministic). The estimate is successes/trials.
///
/// # Safety
/// `code` must be live; `out_successes` must be valid.
#[no_mangle]
pub unsafe extern "C" fn tc_monte_carlo_pc(
    code: *const TcCode,
    trials: u64,
    seed: u64,
    out_successes: *mut u64,
) -> TcStatus {
    guarded(|| {
        if code.is_null() || out_successes.is_null() {
            return null_argument();
        }
        match monte_carlo_pc(&unsafe { &*code }.0, trials, &RngSpec::new(seed)) {
            Ok(result) => {
                unsafe { *out_successes = result.successes() };
                TcStatus::Ok
            }
            Err(err) => fail(err),
        }
    })
}

/// λ(C) by the chosen formula, rendered as "num/den".
/// Free the string with `tc_string_free`.
///
/// # Safety
/// `code` must be live; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn tc_lambda(
    code: *const TcCode,
    method: TcLambdaMethod,
    cap: u64,
    out: *mut *mut c_char,
) -> TcStatus {
    guarded(|| {
        if code.is_null() || out.is_null() {
            return null_argument();
        }
        let code = &unsafe { &*code }.0;
        let result = match method {
            TcLambdaMethod::Weight => lambda_weight_form(code, cap),
            TcLambdaMethod::Average => lambda_average_form(code, cap),
            TcLambdaMethod::SubmatrixRank => lambda_ng_form(code, cap),
        };
        match result {
            Ok(value) => {
                unsafe {
                    *out = CString::new(format_rational(&value.value))
                        .expect("rational text has no NUL")
                        .into_raw();
                }
                TcStatus::Ok
            }
            Err(err) => fail(err),
        }
    })
}

/// The closed-form bound 1 - (1 - q^{-m(h+k)})/((q-1) q^{n-m(h+k)}) as a
/// "num/den" string. Free with `tc_string_free`.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn tc_bound(
    q: u64,
    m: u32,
    k: u64,
    h: u64,
    n: u64,
    out: *mut *mut c_char,
) -> TcStatus {
    guarded(|| {
        if out.is_null() {
            return null_argument();
        }
        if q < 2 || m == 0 || k == 0 || n == 0 {
            set_error("need q >= 2, m >= 1, k >= 1, n >= 1");
            return TcStatus::InvalidParameter;
        }
        let value = bound_from_defect(q, m, k, h, n);
        unsafe {
            *out = CString::new(format_rational(&value))
                .expect("rational text has no NUL")
                .into_raw();
        }
        TcStatus::Ok
    })
}

/// The evaluation-code form of the bound, parameterized by the divisor
/// degree. Free the string with `tc_string_free`.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn tc_bound_ag(
    q: u64,
    m: u32,
    n: u64,
    deg_g: u64,
    out: *mut *mut c_char,
) -> TcStatus {
    guarded(|| {
        if out.is_null() {
            return null_argument();
        }
        if q < 2 || n == 0 {
            set_error("need q >= 2 and n >= 1");
            return TcStatus::InvalidParameter;
        }
        match bound_from_divisor_degree(q, m, n, deg_g) {
            Ok(value) => {
                unsafe {
                    *out = CString::new(format_rational(&value))
                        .expect("rational text has no NUL")
                        .into_raw();
                }
                TcStatus::Ok
            }
            Err(err) => fail(err),
        }
    })
}

/// S₁(n, q): probability that a uniform n×n matrix over GF(q) is invertible.
/// NaN on invalid parameters.
#[no_mangle]
pub extern "C" fn tc_s1(n: u32, q: u64) -> f64 {
    if n == 0 || q < 2 {
        return f64::NAN;
    }
    s1(n, q)
}

/// S₂(n, q): probability that n uniform nonzero vectors in GF(q)^n are
/// linearly independent. NaN on invalid parameters.
#[no_mangle]
pub extern "C" fn tc_s2(n: u32, q: u64) -> f64 {
    if n == 0 || q < 2 {
        return f64::NAN;
    }
    s2(n, q)
}

/// S(q): the common n → ∞ limit of S₁ and S₂. NaN on invalid parameters.
#[no_mangle]
pub extern "C" fn tc_s_limit(q: u64) -> f64 {
    if q < 2 {
        return f64::NAN;
    }
    s_limit(q)
}

/// Default enumeration cap used by the Rust toolkit.
#[no_mangle]
pub extern "C" fn tc_default_cap() -> u64 {
    DEFAULT_ENUMERATION_CAP
}
