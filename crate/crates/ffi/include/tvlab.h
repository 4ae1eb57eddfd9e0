#ifndef TVLAB_H
#define TVLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum TvlabStatus {
  TVLAB_STATUS_OK = 0,
  TVLAB_STATUS_INPUT_ERROR = 1,
  TVLAB_STATUS_PRECONDITION_ERROR = 2,
  TVLAB_STATUS_SIZE_CAP_ERROR = 3,
  TVLAB_STATUS_INTERNAL_ERROR = 4,
  TVLAB_STATUS_NULL_POINTER = 5,
  TVLAB_STATUS_PANIC = 6,
} TvlabStatus;

/**
 * Opaque handle to a validated color system.
 */
typedef struct TvlabSystem TvlabSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *tvlab_last_error(void);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void tvlab_string_free(char *s);

/**
 * Parse an instance in the JSON file format.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum TvlabStatus tvlab_system_from_json(const char *json, struct TvlabSystem **out);

/**
 * Release a system. Null is ignored.
 *
 * # Safety
 * `system` must come from [`tvlab_system_from_json`] and not have been freed.
 */
void tvlab_system_free(struct TvlabSystem *system);

/**
 * Dimension, family count and sets per family.
 *
 * # Safety
 * `system` must be a live handle; the out pointers must be writable.
 */
enum TvlabStatus tvlab_system_shape(const struct TvlabSystem *system,
                                    size_t *dimension,
                                    size_t *families,
                                    size_t *sets);

/**
 * Whether every colorful choice of sets has a common point.
 *
 * # Safety
 * `system` must be a live handle; `out` must be writable.
 */
enum TvlabStatus tvlab_colorful_check(const struct TvlabSystem *system, bool *out);

/**
 * First Tverberg `k`-partition of family `family`. On success `*found`
 * says whether one exists and, if so, `*witness_json` holds the witness.
 *
 * # Safety
 * `system` must be a live handle; the out pointers must be writable.
 */
enum TvlabStatus tvlab_find_tverberg(const struct TvlabSystem *system,
                                     size_t family,
                                     size_t k,
                                     bool *found,
                                     char **witness_json);

/**
 * Full verdict report as JSON.
 *
 * # Safety
 * `system` must be a live handle; `report_json` must be writable.
 */
enum TvlabStatus tvlab_theorem1(const struct TvlabSystem *system, size_t k, char **report_json);

/**
 * Critical-cell count of the recursive matching on `C(n,k)`, and whether
 * the matching is acyclic.
 *
 * # Safety
 * The out pointers must be writable.
 */
enum TvlabStatus tvlab_morse_critical_count(size_t n, size_t k, size_t *critical, bool *acyclic);

/**
 * Betti numbers of `K(n,k)` through `max_degree` (all degrees when
 * negative) as a JSON report. Enumeration caps come from `TVLAB_SIZE_CAP`.
 *
 * # Safety
 * `report_json` must be writable.
 */
enum TvlabStatus tvlab_knk_homology(size_t n, size_t k, int32_t max_degree, char **report_json);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* TVLAB_H */
