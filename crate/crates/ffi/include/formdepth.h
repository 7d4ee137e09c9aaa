#ifndef FORMDEPTH_H
#define FORMDEPTH_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FdStatus {
  FD_STATUS_OK = 0,
  FD_STATUS_NULL_POINTER = 1,
  FD_STATUS_INVALID_UTF8 = 2,
  FD_STATUS_PARSE = 3,
  FD_STATUS_SPEC = 4,
  FD_STATUS_RING_MISMATCH = 5,
  FD_STATUS_HYPOTHESIS = 6,
  FD_STATUS_CHARACTERISTIC = 7,
  FD_STATUS_NOT_HOMOGENEOUS = 8,
  FD_STATUS_BOUND_EXCEEDED = 9,
  FD_STATUS_TABLE_VIOLATION = 10,
  FD_STATUS_INCONSISTENT = 11,
  FD_STATUS_PANIC = 12,
} FdStatus;

/**
 * A polynomial in some [`FdRing`].
 */
typedef struct FdPoly FdPoly;

/**
 * A polynomial ring over ℚ or 𝔽_p.
 */
typedef struct FdRing FdRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a ring. `p = 0` selects ℚ; otherwise `p` must be prime.
 * `variables` is a comma-separated list such as `"x,y,z"`.
 *
 * # Safety
 * `variables` must be a valid C string and `out` a valid pointer.
 */
enum FdStatus fd_ring_new(uint64_t p, const char *variables, struct FdRing **out);

/**
 * # Safety
 * `ring` must be null or a handle from [`fd_ring_new`] not yet freed.
 */
void fd_ring_free(struct FdRing *ring);

/**
 * # Safety
 * `ring` must be a live ring handle, `text` a valid C string, `out` a valid pointer.
 */
enum FdStatus fd_poly_parse(const struct FdRing *ring, const char *text, struct FdPoly **out);

/**
 * # Safety
 * `poly` must be null or a handle not yet freed.
 */
void fd_poly_free(struct FdPoly *poly);

/**
 * Product of two polynomials in the same ring.
 *
 * # Safety
 * `a` and `b` must be live handles and `out` a valid pointer.
 */
enum FdStatus fd_poly_mul(const struct FdPoly *a, const struct FdPoly *b, struct FdPoly **out);

/**
 * Canonical text form; release with [`fd_string_free`]. Null on a null handle.
 *
 * # Safety
 * `poly` must be null or a live handle.
 */
char *fd_poly_to_string(const struct FdPoly *poly);

/**
 * # Safety
 * `poly` must be a live handle and `out` a valid pointer.
 */
enum FdStatus fd_is_smooth(const struct FdPoly *poly, bool *out);

/**
 * # Safety
 * `poly` must be a live handle and `out` a valid pointer.
 */
enum FdStatus fd_is_free_divisor(const struct FdPoly *poly, bool *out);

/**
 * Whether `R/J_F` has depth zero for `F = f_1 ⋯ f_len`.
 *
 * # Safety
 * `forms` must point to `len` live handles sharing one ring; `out` must be valid.
 */
enum FdStatus fd_rty(const struct FdPoly *const *forms, size_t len, bool *out);

/**
 * Runs a JSON job document, as the `formdepth` command line does, and stores
 * the JSON report in `*report` (release with [`fd_string_free`]); the report
 * is always set unless −1 is returned. `command`
 * may be null to use the job's own command. Returns the process exit status
 * the command line would use, or −1 on invalid arguments.
 *
 * # Safety
 * `job` must be a valid C string, `command` null or a valid C string, and
 * `report` a valid pointer.
 */
int32_t fd_run_job(const char *job, const char *command, char **report);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void fd_string_free(char *s);

/**
 * Message of the last failure on this thread; empty after a success. The
 * pointer stays valid until the next call into this library on the same thread.
 */
const char *fd_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FORMDEPTH_H */
