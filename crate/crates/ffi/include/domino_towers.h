#ifndef DOMINO_TOWERS_H
#define DOMINO_TOWERS_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

#define DT_FAMILY_G 0

#define DT_FAMILY_H 1

#define DT_FAMILY_R 2

#define DT_FAMILY_C 3

#define DT_CLASS_STACK 0

#define DT_CLASS_RIGHT_SKEWED 1

#define DT_CLASS_LEFT_SKEWED 2

#define DT_CLASS_SUPPORTING 3

#define DT_CLASS_CONVEX_OTHER 4

#define DT_CLASS_NON_CONVEX 5

typedef enum {
  DT_OK = 0,
  /**
   * The enumerator has no more towers.
   */
  DT_DONE = 1,
  DT_INVALID_ARGUMENT = 2,
  DT_NULL_POINTER = 3,
  DT_BUFFER_TOO_SMALL = 4,
  DT_CAP_EXCEEDED = 5,
  DT_UNSUPPORTED_K = 6,
  DT_UNSUPPORTED_B = 7,
  DT_PANIC = 8,
  DT_INTERNAL = 9,
} DtStatus;

/**
 * Memoized counter for one block length.
 */
typedef struct DtCounter DtCounter;

/**
 * Stream of towers with `n` dominoes.
 */
typedef struct DtEnumerator DtEnumerator;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a counter for blocks of length `k >= 2`.
 *
 * # Safety
 * `out` must be writable.
 */
DtStatus dt_counter_new(uint32_t k, DtCounter **out);

/**
 * Releases a counter; null is ignored.
 *
 * # Safety
 * `counter` must come from [`dt_counter_new`] and not be used afterwards.
 */
void dt_counter_free(DtCounter *counter);

/**
 * Writes the count for `family` (a `DT_FAMILY_*` code) at `(b, n)` in
 * decimal.
 *
 * # Safety
 * `counter` must be a live handle; see the module notes for buffers.
 */
DtStatus dt_counter_count(DtCounter *counter,
                          uint32_t family_code,
                          uint32_t b,
                          uint32_t n,
                          char *buf,
                          uintptr_t len,
                          uintptr_t *required);

/**
 * Writes `θ_b` as an exact fraction `numerator/denominator`.
 *
 * # Safety
 * See the module notes for buffers.
 */
DtStatus dt_theta(uint32_t b, char *buf, uintptr_t len, uintptr_t *required);

/**
 * Writes `θ_b` rounded half-up to `decimals` places.
 *
 * # Safety
 * See the module notes for buffers.
 */
DtStatus dt_theta_decimal(uint32_t b,
                          uint32_t decimals,
                          char *buf,
                          uintptr_t len,
                          uintptr_t *required);

/**
 * Starts enumerating towers of `n` dominoes on a base of `b` (0 for every
 * base). Sizes above the default cap are rejected.
 *
 * # Safety
 * `out` must be writable.
 */
DtStatus dt_enumerator_new(uint32_t n, uint32_t b, DtEnumerator **out);

/**
 * Writes the next tower as `x0, y0, x1, y1, ...` cell coordinates into
 * `cells` (capacity `cap` integers), its cell count into `cell_count` and
 * its `DT_CLASS_*` code into `class_out`. Returns `DT_DONE` at the end.
 *
 * If `cap` is too small the tower is kept, `cell_count` says how many cells
 * it has, and the next call returns it again.
 *
 * # Safety
 * `enumerator` must be live; `cells` valid for `cap` integers;
 * `cell_count` and `class_out` writable or null.
 */
DtStatus dt_enumerator_next(DtEnumerator *enumerator,
                            int32_t *cells,
                            uintptr_t cap,
                            uintptr_t *cell_count,
                            uint32_t *class_out);

/**
 * Releases an enumerator; null is ignored.
 *
 * # Safety
 * `enumerator` must come from [`dt_enumerator_new`] and not be used
 * afterwards.
 */
void dt_enumerator_free(DtEnumerator *enumerator);

/**
 * Message for the last failure on this thread, empty after a success.
 * Valid until the next call on the same thread.
 */
const char *dt_last_error(void);

/**
 * Library version, static storage.
 */
const char *dt_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DOMINO_TOWERS_H */
