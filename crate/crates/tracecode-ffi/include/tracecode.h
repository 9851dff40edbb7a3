#ifndef TRACECODE_H
#define TRACECODE_H

/* This file is generated by cbindgen from tracecode-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Which λ formula to evaluate.
typedef enum {
  // Dual weight-distribution sum.
  TC_LAMBDA_METHOD_WEIGHT = 0,
  // Exhaustive average over all multipliers.
  TC_LAMBDA_METHOD_AVERAGE = 1,
  // Column-submatrix rank form.
  TC_LAMBDA_METHOD_SUBMATRIX_RANK = 2,
} TcLambdaMethod;

// Status code of every fallible call.
typedef enum {
  // Success; out-parameters are valid.
  TC_STATUS_OK = 0,
  // A required pointer argument was null.
  TC_STATUS_NULL_ARGUMENT = 1,
  // Parameters violate a precondition.
  TC_STATUS_INVALID_PARAMETER = 2,
  // A code file string could not be parsed.
  TC_STATUS_MALFORMED_CODE_FILE = 3,
  // An enumeration would exceed the configured cap.
  TC_STATUS_CAP_EXCEEDED = 4,
  // A string argument was not valid UTF-8.
  TC_STATUS_INVALID_UTF8 = 5,
  // An internal invariant failed.
  TC_STATUS_INTERNAL_ERROR = 6,
} TcStatus;

// Opaque handle to a linear code over GF(q^m).
typedef struct TcCode TcCode;

// Opaque handle to a field tower GF(p) ⊂ GF(q) ⊂ GF(q^m).
typedef struct TcTower TcTower;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the most recent error on this thread, or null if none.
// The caller owns the returned string and frees it with `tc_string_free`.
char *tc_last_error_message(void);

// Frees a string returned by this library. Null is a no-op.
//
// # Safety
// `s` must have been returned by a tracecode function and not freed yet.
void tc_string_free(char *s);

// Builds the canonical tower for (p, s, m) and stores the handle in `out`.
//
// # Safety
// `out` must be a valid pointer.
TcStatus tc_tower_new(uint64_t p, uint32_t s, uint32_t m, TcTower **out);

// Frees a tower handle. Null is a no-op.
//
// # Safety
// `tower` must come from `tc_tower_new` and not be freed twice.
void tc_tower_free(TcTower *tower);

// Size q of the field of definition; 0 on null.
//
// # Safety
// `tower` must be a live handle from `tc_tower_new`.
uint64_t tc_tower_q(const TcTower *tower);

// Size q^m of the extension field; 0 on null.
//
// # Safety
// `tower` must be a live handle from `tc_tower_new`.
uint64_t tc_tower_order(const TcTower *tower);

// Trace of the element with the given encoding down to GF(q).
//
// # Safety
// `tower` must be a live handle; `out` must be valid.
TcStatus tc_trace(const TcTower *tower, uint64_t element, uint64_t *out);

// Parses the code file text format.
//
// # Safety
// `text` must be a valid NUL-terminated string; `out` must be valid.
TcStatus tc_code_from_text(const char *text, TcCode **out);

// Serializes a code to the code file text format.
// Returns null on a null handle; free with `tc_string_free`.
//
// # Safety
// `code` must be a live handle.
char *tc_code_to_text(const TcCode *code);

// Frees a code handle. Null is a no-op.
//
// # Safety
// `code` must come from a tracecode constructor and not be freed twice.
void tc_code_free(TcCode *code);

// Length n of the code; 0 on null.
//
// # Safety
// `code` must be a live handle.
size_t tc_code_length(const TcCode *code);

// Dimension k of the code; 0 on null.
//
// # Safety
// `code` must be a live handle.
size_t tc_code_dimension(const TcCode *code);

// Builds the power-row code over the given support encodings.
//
// # Safety
// `tower` must be live; `support` must point to `support_len` u64 values
// (or be null when the length is 0); `out` must be valid.
TcStatus tc_code_reed_solomon(const TcTower *tower,
                              size_t k,
                              const uint64_t *support,
                              size_t support_len,
                              TcCode **out);

// Builds the multiplier-scaled power-row code.
//
// # Safety
// As `tc_code_reed_solomon`, plus `multiplier` points to `multiplier_len`
// values.
TcStatus tc_code_generalized_reed_solomon(const TcTower *tower,
                                          size_t k,
                                          const uint64_t *support,
                                          size_t support_len,
                                          const uint64_t *multiplier,
                                          size_t multiplier_len,
                                          TcCode **out);

// Builds the [n, 1, n] repetition code.
//
// # Safety
// `tower` must be live; `out` must be valid.
TcStatus tc_code_repetition(const TcTower *tower, size_t n, TcCode **out);

// Builds the zero-probability [mk, k] family member over the canonical
// support 0, 1, …, mk-1.
//
// # Safety
// `tower` must be live; `out` must be valid.
TcStatus tc_code_counterexample(const TcTower *tower, size_t k, TcCode **out);

// The dual code.
//
// # Safety
// `code` must be live; `out` must be valid.
TcStatus tc_code_dual(const TcCode *code, TcCode **out);

// Minimum distance by brute-force enumeration, bounded by `cap`.
//
// # Safety
// `code` must be live; `out` must be valid.
TcStatus tc_code_min_distance(const TcCode *code, uint64_t cap, size_t *out);

// dim tr(C) over GF(q).
//
// # Safety
// `code` must be live; `out` must be valid.
TcStatus tc_trace_dimension(const TcCode *code, size_t *out);

// Whether dim tr(C) attains the ceiling m·k (1 or 0).
//
// # Safety
// `code` must be live; `out` must be valid.
TcStatus tc_has_max_trace_dimension(const TcCode *code, int32_t *out);

// Exact P_C: counts multipliers reaching maximum trace dimension over all
// (q^m - 1)^n of them. The exact probability is successes/total.
//
// # Safety
// `code` must be live; the out-pointers must be valid.
TcStatus tc_exact_pc(const TcCode *code,
                     uint64_t cap,
                     uint64_t *out_successes,
                     uint64_t *out_total);

// Monte Carlo estimate of P_C with the given trial count and seed
// (ChaCha12 substreams; deterministic). The estimate is successes/trials.
//
// # Safety
// `code` must be live; `out_successes` must be valid.
TcStatus tc_monte_carlo_pc(const TcCode *code,
                           uint64_t trials,
                           uint64_t seed,
                           uint64_t *out_successes);

// λ(C) by the chosen formula, rendered as "num/den".
// Free the string with `tc_string_free`.
//
// # Safety
// `code` must be live; `out` must be valid.
TcStatus tc_lambda(const TcCode *code, TcLambdaMethod method, uint64_t cap, char **out);

// The closed-form bound 1 - (1 - q^{-m(h+k)})/((q-1) q^{n-m(h+k)}) as a
// "num/den" string. Free with `tc_string_free`.
//
// # Safety
// `out` must be valid.
TcStatus tc_bound(uint64_t q, uint32_t m, uint64_t k, uint64_t h, uint64_t n, char **out);

// The evaluation-code form of the bound, parameterized by the divisor
// degree. Free the string with `tc_string_free`.
//
// # Safety
// `out` must be valid.
TcStatus tc_bound_ag(uint64_t q, uint32_t m, uint64_t n, uint64_t deg_g, char **out);

// S₁(n, q): probability that a uniform n×n matrix over GF(q) is invertible.
// NaN on invalid parameters.
double tc_s1(uint32_t n, uint64_t q);

// S₂(n, q): probability that n uniform nonzero vectors in GF(q)^n are
// linearly independent. NaN on invalid parameters.
double tc_s2(uint32_t n, uint64_t q);

// S(q): the common n → ∞ limit of S₁ and S₂. NaN on invalid parameters.
double tc_s_limit(uint64_t q);

// Default enumeration cap used by the Rust toolkit.
uint64_t tc_default_cap(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRACECODE_H */
