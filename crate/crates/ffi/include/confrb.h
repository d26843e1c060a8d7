#ifndef CONFRB_H
#define CONFRB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ConfrbStatus {
  CONFRB_STATUS_OK = 0,
  CONFRB_STATUS_NULL_POINTER = 1,
  CONFRB_STATUS_INVALID_UTF8 = 2,
  CONFRB_STATUS_PARSE = 3,
  CONFRB_STATUS_SIZE = 4,
  CONFRB_STATUS_RANK = 5,
  CONFRB_STATUS_WEIGHT = 6,
  CONFRB_STATUS_CATALOG = 7,
  CONFRB_STATUS_INVALID_ALGEBRA = 8,
  CONFRB_STATUS_UNSUPPORTED_ALGEBRA = 9,
  CONFRB_STATUS_FORM = 10,
  CONFRB_STATUS_FAMILY = 11,
  CONFRB_STATUS_SINGULAR_MAP = 12,
  CONFRB_STATUS_ALPHABET = 13,
  CONFRB_STATUS_SPLIT = 14,
  CONFRB_STATUS_RESOURCE_CAP = 15,
  CONFRB_STATUS_PANIC = 16,
} ConfrbStatus;

// A Lie conformal algebra given by its λ-bracket table.
typedef struct ConfrbAlgebra ConfrbAlgebra;

// A ∂-linear operator, column `j` being the image of generator `j`.
typedef struct ConfrbOperator ConfrbOperator;

// A rank-2 or rank-3 tensor together with the generator names it was
// read with.
typedef struct ConfrbTensor ConfrbTensor;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version, a static string.
const char *confrb_version(void);

// Message of the last failed call on this thread, or null. Valid until the
// next call into the library from this thread.
const char *confrb_last_error(void);

// # Safety
// `s` must be null or a string returned by this library.
void confrb_string_free(char *s);

// Builds a compiled-in algebra: `cur-sl2`, `cur-sl2x2`, `vir` or
// `rank2-example`.
//
// # Safety
// `name` must be a nul-terminated string and `out` writable.
enum ConfrbStatus confrb_algebra_preset(const char *name, struct ConfrbAlgebra **out);

// Reads an algebra from its JSON table.
//
// # Safety
// `json` must be a nul-terminated string and `out` writable.
enum ConfrbStatus confrb_algebra_from_json(const char *json, struct ConfrbAlgebra **out);

// # Safety
// `alg` must be null or a handle from this library, not freed before.
void confrb_algebra_free(struct ConfrbAlgebra *alg);

// # Safety
// `alg` must be a live handle and `out` writable.
enum ConfrbStatus confrb_algebra_rank(const struct ConfrbAlgebra *alg, uintptr_t *out);

// Checks conformal anticommutativity and Jacobi on generators. `out_ok`
// receives whether both hold; `out_report` (may be null) receives the
// defect report as JSON.
//
// # Safety
// `alg` must be a live handle, `out_ok` writable, `out_report` null or
// writable.
enum ConfrbStatus confrb_algebra_check_axioms(const struct ConfrbAlgebra *alg,
                                              bool *out_ok,
                                              char **out_report);

// Reads an operator from its JSON matrix (list of images).
//
// # Safety
// `json` must be a nul-terminated string and `out` writable.
enum ConfrbStatus confrb_operator_from_json(const char *json, struct ConfrbOperator **out);

// A Cur(sl₂) catalog operator by name (`R1`, `R2`, `Q1`, `R_1`…`R_4`,
// `ext-a`, …) at weight 0 or 1, with symbolic parameters.
//
// # Safety
// `name` must be a nul-terminated string and `out` writable.
enum ConfrbStatus confrb_operator_catalog(const char *name,
                                          int64_t weight,
                                          struct ConfrbOperator **out);

// # Safety
// `op` must be a live handle and `out` writable.
enum ConfrbStatus confrb_operator_to_json(const struct ConfrbOperator *op, char **out);

// # Safety
// `op` must be null or a handle from this library, not freed before.
void confrb_operator_free(struct ConfrbOperator *op);

// Conformal Rota–Baxter check of weight `weight` (a polynomial in the
// text syntax, e.g. `"0"` or `"k"`). `out_defects` (may be null) receives
// the nonzero defects as a JSON list.
//
// # Safety
// Handles must be live, `weight` a nul-terminated string, `out_is_rb`
// writable, `out_defects` null or writable.
enum ConfrbStatus confrb_check_rb(const struct ConfrbAlgebra *alg,
                                  const struct ConfrbOperator *op,
                                  const char *weight,
                                  bool *out_is_rb,
                                  char **out_defects);

// Reads a tensor `{"rank": n, "terms": {"e,f": poly, …}}` over the
// generators of `alg`.
//
// # Safety
// `alg` must be a live handle, `json` a nul-terminated string and `out`
// writable.
enum ConfrbStatus confrb_tensor_from_json(const struct ConfrbAlgebra *alg,
                                          const char *json,
                                          struct ConfrbTensor **out);

// # Safety
// `t` must be a live handle and `out` writable.
enum ConfrbStatus confrb_tensor_to_json(const struct ConfrbTensor *t, char **out);

// # Safety
// `t` must be null or a handle from this library, not freed before.
void confrb_tensor_free(struct ConfrbTensor *t);

// # Safety
// `t` must be a live handle and `out` writable.
enum ConfrbStatus confrb_tensor_is_skew(const struct ConfrbTensor *t, bool *out);

// Whether `⟦r, r⟧` vanishes modulo `∂^{⊗3}`; with `weak` set, the weak
// form is checked instead.
//
// # Safety
// Handles must be live and `out` writable.
enum ConfrbStatus confrb_tensor_check_ccybe(const struct ConfrbAlgebra *alg,
                                            const struct ConfrbTensor *t,
                                            bool weak,
                                            bool *out);

// The operator `P(u) = Σ A_ij(-∂, ∂) K(i, u) j` of a rank-2 tensor, with
// `K` the Killing form of the underlying Lie algebra.
//
// # Safety
// Handles must be live and `out` writable.
enum ConfrbStatus confrb_rb_from_solution(const struct ConfrbAlgebra *alg,
                                          const struct ConfrbTensor *t,
                                          struct ConfrbOperator **out);

// Runs a command-line invocation (`argv` without the program name) and
// returns its JSON report and exit code. Errors raised by the command
// itself are reported through the status and [`confrb_last_error`], with
// `out_exit_code` set to the CLI's exit code.
//
// # Safety
// `argv` must point to `argc` nul-terminated strings (or be null when
// `argc` is 0); `out_report` null or writable; `out_exit_code` writable.
enum ConfrbStatus confrb_run(const char *const *argv,
                             uintptr_t argc,
                             char **out_report,
                             int32_t *out_exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CONFRB_H */
