#ifndef DIOPHLAB_H
#define DIOPHLAB_H

#pragma once

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DlStatus {
  DL_STATUS_OK = 0,
  DL_STATUS_NULL_POINTER = 1,
  DL_STATUS_INVALID_UTF8 = 2,
  DL_STATUS_PRECONDITION = 3,
  DL_STATUS_PARSE = 4,
  DL_STATUS_MIXED_FIELDS = 5,
  DL_STATUS_PRECISION_EXHAUSTED = 6,
  DL_STATUS_RESOURCE_CAP = 7,
  DL_STATUS_OPPONENT_FORFEIT = 8,
  DL_STATUS_GAME_ABORTED = 9,
  DL_STATUS_IO = 10,
  DL_STATUS_PANIC = 11,
} DlStatus;

/**
 * A finished command run.
 */
typedef struct DlReport DlReport;

/**
 * A linear subspace of R^d with an exact basis.
 */
typedef struct DlSubspace DlSubspace;

/**
 * Bound constants; `big_w` and `frak_w` are midpoints of certified enclosures.
 */
typedef struct DlBounds {
  double w;
  double big_w;
  double frak_w;
  bool big_w_degenerate;
  bool frak_w_degenerate;
} DlBounds;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into this library on the same thread.
 */
const char *dl_last_error(void);

/**
 * Library version as a static string.
 */
const char *dl_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void dl_string_free(char *s);

/**
 * Builds a subspace from basis rows in matrix text form ("1, 0+1*sqrt(2); 0, 1").
 *
 * # Safety
 * `basis` must be a nul-terminated string; `out` must be writable.
 */
enum DlStatus dl_subspace_from_basis(const char *basis, struct DlSubspace **out);

/**
 * Builds the graph subspace {(x, Theta x)} from `Theta` in matrix text form.
 *
 * # Safety
 * As for [`dl_subspace_from_basis`].
 */
enum DlStatus dl_subspace_from_theta(const char *theta, struct DlSubspace **out);

/**
 * # Safety
 * `h` must be null or a handle from this library, freed once.
 */
void dl_subspace_free(struct DlSubspace *h);

/**
 * # Safety
 * `h` must be a live handle; `d` and `n` must be writable.
 */
enum DlStatus dl_subspace_dims(const struct DlSubspace *h, size_t *d, size_t *n);

/**
 * Dimension over Q of the span of the Plücker coordinates.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum DlStatus dl_subspace_rational_dimension(const struct DlSubspace *h, size_t *out);

/**
 * Irrationality profile as a JSON string (free with [`dl_string_free`]).
 *
 * # Safety
 * `h` must be a live handle; `out_json` must be writable.
 */
enum DlStatus dl_subspace_profile_json(const struct DlSubspace *h,
                                       uint64_t height,
                                       uint64_t cap,
                                       char **out_json);

/**
 * # Safety
 * `out` must be writable.
 */
enum DlStatus dl_bound_constants(size_t n, size_t d, struct DlBounds *out);

/**
 * Runs a command line (without the program name), e.g.
 * `{"bounds", "--n", "2", "--d", "4"}`.
 *
 * # Safety
 * `argv` must point to `argc` nul-terminated strings; `out` must be writable.
 */
enum DlStatus dl_run(size_t argc, const char *const *argv, struct DlReport **out);

/**
 * The report as pretty JSON (free with [`dl_string_free`]).
 *
 * # Safety
 * `h` must be a live report handle; `out_json` must be writable.
 */
enum DlStatus dl_report_json(const struct DlReport *h, char **out_json);

/**
 * # Safety
 * `h` must be null or a handle from this library, freed once.
 */
void dl_report_free(struct DlReport *h);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIOPHLAB_H */
