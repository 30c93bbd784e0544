#ifndef TAUTREL_H
#define TAUTREL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum TautrelStatus {
  TAUTREL_STATUS_OK = 0,
  TAUTREL_STATUS_NULL_POINTER = 1,
  TAUTREL_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The handle's tables are too small for the request.
   */
  TAUTREL_STATUS_OUT_OF_RANGE = 3,
  /**
   * An identity that must hold exactly failed.
   */
  TAUTREL_STATUS_CONSISTENCY_FAILURE = 4,
  TAUTREL_STATUS_INTERNAL = 5,
} TautrelStatus;

/**
 * Coefficient tables `q` and `c` up to a fixed index.
 */
typedef struct TautrelTables TautrelTables;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds `q` and `c` for `1 <= k <= k_max` and stores a new handle in `*out`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum TautrelStatus tautrel_tables_new(uint32_t k_max, struct TautrelTables **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `tables` must come from [`tautrel_tables_new`] and not be used afterwards.
 */
void tautrel_tables_free(struct TautrelTables *tables);

/**
 * Largest index covered by the handle, or 0 for null.
 *
 * # Safety
 * `tables` must be null or a live handle.
 */
uint32_t tautrel_tables_k_max(const struct TautrelTables *tables);

/**
 * `q[k][j]` as a decimal string.
 *
 * # Safety
 * `tables` must be a live handle and `out` valid for writes.
 */
enum TautrelStatus tautrel_q_entry(const struct TautrelTables *tables,
                                   uint32_t k,
                                   uint32_t j,
                                   char **out);

/**
 * `c[k][j]` as a rational string `"n"` or `"n/d"`.
 *
 * # Safety
 * `tables` must be a live handle and `out` valid for writes.
 */
enum TautrelStatus tautrel_c_entry(const struct TautrelTables *tables,
                                   uint32_t k,
                                   uint32_t j,
                                   char **out);

/**
 * The relation for `(g, d, b)`, or the ψ-κ relation for `(g, d)` when
 * `psi` is set, as canonical JSON.
 *
 * # Safety
 * `tables` must be a live handle and `out` valid for writes.
 */
enum TautrelStatus tautrel_relation_json(const struct TautrelTables *tables,
                                         int64_t g,
                                         int64_t d,
                                         int64_t b,
                                         bool psi,
                                         char **out);

/**
 * Expressions for `κ_a`, `[g/3] < a <= g-2`, as a JSON array; with
 * `rewrite` every expression uses only `κ_1 ... κ_[g/3]`.
 *
 * # Safety
 * `tables` must be a live handle and `out` valid for writes.
 */
enum TautrelStatus tautrel_faber_json(const struct TautrelTables *tables,
                                      int64_t g,
                                      bool rewrite,
                                      char **out);

/**
 * Nonvanishing scan for `a <= a_max` as JSON. A report with failures is
 * still returned with status `Ok`; inspect its `"failures"` array.
 *
 * # Safety
 * `tables` must be a live handle and `out` valid for writes.
 */
enum TautrelStatus tautrel_scan_json(const struct TautrelTables *tables,
                                     uint32_t a_max,
                                     char **out);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void tautrel_string_free(char *s);

/**
 * Message for the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *tautrel_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TAUTREL_H */
