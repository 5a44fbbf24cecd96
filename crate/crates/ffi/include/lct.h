#ifndef LCT_H
#define LCT_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LctMethod {
  LCT_METHOD_RAYS = 0,
  LCT_METHOD_RESOLUTION = 1,
  LCT_METHOD_HOWALD_STAR = 2,
} LctMethod;

typedef enum LctStatus {
  LCT_STATUS_OK = 0,
  LCT_STATUS_NULL_POINTER = 1,
  LCT_STATUS_INVALID_UTF8 = 2,
  LCT_STATUS_PARSE_ERROR = 3,
  LCT_STATUS_INVALID_ARGUMENT = 4,
  LCT_STATUS_ORACLE_MISMATCH = 5,
  LCT_STATUS_PANIC = 6,
} LctStatus;

/**
 * Parsed ideal.
 */
typedef struct LctIdeal LctIdeal;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses ideal text (a `vars` header line, then one generator per line).
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum LctStatus lct_ideal_parse(const char *text, struct LctIdeal **out);

/**
 * Releases a handle from [`lct_ideal_parse`]. Null is ignored.
 *
 * # Safety
 * `ideal` must be null or a handle not yet freed.
 */
void lct_ideal_free(struct LctIdeal *ideal);

/**
 * # Safety
 * `ideal` must be a live handle and `out` writable.
 */
enum LctStatus lct_ideal_num_vars(const struct LctIdeal *ideal, size_t *out);

/**
 * # Safety
 * `ideal` must be a live handle and `out` writable.
 */
enum LctStatus lct_ideal_num_generators(const struct LctIdeal *ideal, size_t *out);

/**
 * Log canonical threshold as `"p/q"`, `"p"` or `"inf"`.
 *
 * # Safety
 * `ideal` must be a live handle and `out` writable. The string written to
 * `out` is released with [`lct_string_free`].
 */
enum LctStatus lct_ideal_global_lct(const struct LctIdeal *ideal, char **out);

/**
 * Value of the lct function at the direction `v[0..len]`.
 *
 * # Safety
 * `v` must point to `len` readable integers; `ideal` and `out` as for
 * [`lct_ideal_global_lct`].
 */
enum LctStatus lct_ideal_eval(const struct LctIdeal *ideal,
                              const int64_t *v,
                              size_t len,
                              char **out);

/**
 * Full JSON report, the same record the CLI prints with `--json`.
 *
 * # Safety
 * As for [`lct_ideal_global_lct`].
 */
enum LctStatus lct_ideal_report_json(const struct LctIdeal *ideal,
                                     enum LctMethod method,
                                     bool with_star,
                                     char **out);

/**
 * Recomputes the threshold through the pseudo-resolution (and Howald's
 * formula for monomial ideals). Returns `LCT_STATUS_ORACLE_MISMATCH` when
 * the computations disagree.
 *
 * # Safety
 * `ideal` must be a live handle.
 */
enum LctStatus lct_ideal_verify(const struct LctIdeal *ideal);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void lct_string_free(char *s);

/**
 * Message for the last failed call on this thread, or an empty string.
 * The pointer stays valid until the next library call on the same thread.
 */
const char *lct_last_error_message(void);

const char *lct_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LCT_H */
