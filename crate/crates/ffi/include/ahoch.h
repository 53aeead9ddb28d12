#ifndef AHOCH_H
#define AHOCH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum AhochStatus {
  /**
   * Success; out-parameters are set.
   */
  AhochStatus_Ok = 0,
  /**
   * A verification suite or bracket comparison found failures; the
   * report string is still set and contains the counterexamples.
   */
  AhochStatus_VerifyFailed = 1,
  /**
   * Malformed input (expression syntax, bad characteristic, ...).
   */
  AhochStatus_ParseError = 2,
  /**
   * Mathematically invalid request (e.g. bracket against trivial HH^2).
   */
  AhochStatus_DomainError = 3,
  /**
   * A required pointer argument was null.
   */
  AhochStatus_NullArgument = 4,
  /**
   * Internal panic; a bug in the library.
   */
  AhochStatus_InternalError = 5,
} AhochStatus;

/**
 * The algebra A_h together with the field and optional factored input;
 * opaque to C callers.
 */
typedef struct AhochAlgebra AhochAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Create an algebra handle for A_h over Q (characteristic 0) or F_p.
 * `h_expr` uses the expression grammar (integers, rationals a/b, x,
 * + - * ^, parentheses). On success writes the handle to `out`.
 *
 * # Safety
 * `h_expr` must be a valid NUL-terminated string and `out` a valid
 * pointer; the returned handle must be released with
 * [`ahoch_algebra_free`].
 */
enum AhochStatus ahoch_algebra_new(uint64_t characteristic,
                                   const char *h_expr,
                                   struct AhochAlgebra **out);

/**
 * Like [`ahoch_algebra_new`], but `h_expr` is a factored polynomial:
 * comma-separated `factor^multiplicity` terms, e.g. `x^3,(x-1)^2`.
 *
 * # Safety
 * Same contract as [`ahoch_algebra_new`].
 */
enum AhochStatus ahoch_algebra_new_factored(uint64_t characteristic,
                                            const char *h_expr,
                                            struct AhochAlgebra **out);

/**
 * Release a handle created by the constructors. Null is a no-op.
 *
 * # Safety
 * `alg` must be null or a pointer previously returned by a constructor,
 * not yet freed.
 */
void ahoch_algebra_free(struct AhochAlgebra *alg);

/**
 * HH^0/HH^1/HH^2 summary (characteristic 0) as one JSON record.
 *
 * # Safety
 * `alg` must be a live handle; `out` a valid pointer. The string written
 * to `out` must be freed with [`ahoch_string_free`].
 */
enum AhochStatus ahoch_report_json(const struct AhochAlgebra *alg, char **out);

/**
 * Composition series of HH^2 as a Lie module over HH^1 (characteristic 0),
 * as one JSON record.
 *
 * # Safety
 * Same contract as [`ahoch_report_json`].
 */
enum AhochStatus ahoch_series_json(const struct AhochAlgebra *alg, char **out);

/**
 * HH^2 structure over the center in characteristic p, as one JSON record.
 *
 * # Safety
 * Same contract as [`ahoch_report_json`].
 */
enum AhochStatus ahoch_charp_json(const struct AhochAlgebra *alg, char **out);

/**
 * Gerstenhaber bracket of a derivation against an HH^2 class, evaluated
 * through both routes. `derivation` uses the spec mini-language
 * (`dg:g=...`, `ad:g=...,n=...`, `general:dx=...,dyhat=...`); `class` is
 * an element expression in x and yh.
 *
 * # Safety
 * Same contract as [`ahoch_report_json`]; the two extra strings must be
 * valid NUL-terminated strings.
 */
enum AhochStatus ahoch_bracket_json(const struct AhochAlgebra *alg,
                                    const char *derivation,
                                    const char *class_,
                                    char **out);

/**
 * Run a named verification suite (`homotopy`, `chain`,
 * `bracket-agreement`, `lie-module`, `witt-rep`) with the given seed,
 * trials per identity, and sampling degree bounds. The report is
 * line-delimited JSON; returns `VerifyFailed` when any identity failed.
 *
 * # Safety
 * `suite` must be a valid NUL-terminated string; `out` a valid pointer.
 */
enum AhochStatus ahoch_verify_json(const char *suite,
                                   uint64_t seed,
                                   uintptr_t trials,
                                   uintptr_t max_x_deg,
                                   uintptr_t max_yh_deg,
                                   char **out);

/**
 * Release a string returned by this library. Null is a no-op.
 *
 * # Safety
 * `s` must be null or a pointer previously written by one of the
 * `_json` functions or [`ahoch_last_error_message`], not yet freed.
 */
void ahoch_string_free(char *s);

/**
 * The last error message recorded on this thread, or null if none.
 * The caller owns the returned string and frees it with
 * [`ahoch_string_free`].
 */
char *ahoch_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AHOCH_H */
