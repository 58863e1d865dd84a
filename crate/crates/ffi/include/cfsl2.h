#ifndef CFSL2_H
#define CFSL2_H

#pragma once

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum Cfsl2Status {
  CFSL2_STATUS_OK = 0,
  CFSL2_STATUS_NULL_POINTER = 1,
  CFSL2_STATUS_INVALID_ARGUMENT = 2,
  CFSL2_STATUS_PARSE = 3,
  CFSL2_STATUS_CONFIG = 4,
  CFSL2_STATUS_PRECISION = 5,
  CFSL2_STATUS_UNSUPPORTED_RING = 6,
  CFSL2_STATUS_OUT_OF_RANGE = 7,
  CFSL2_STATUS_BUDGET = 8,
  CFSL2_STATUS_INSUFFICIENT_DATA = 9,
  CFSL2_STATUS_DOMAIN = 10,
  CFSL2_STATUS_IO = 11,
  CFSL2_STATUS_PANIC = 12,
} Cfsl2Status;

/**
 * A continued fraction expansion.
 */
typedef struct Cfsl2Expansion Cfsl2Expansion;

/**
 * The matrices produced by an orbit run, sorted by `(k, j)`.
 */
typedef struct Cfsl2Orbit Cfsl2Orbit;

/**
 * One orbit matrix. `j` is `-1` for targets without a second expansion.
 */
typedef struct Cfsl2OrbitRecord {
  uint64_t k;
  int64_t j;
  double height;
  double err;
  double predicted_bound;
  double measured_constant;
} Cfsl2OrbitRecord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, a static nul-terminated string.
 */
const char *cfsl2_version(void);

/**
 * Message of the last failed call on this thread, empty after a success.
 * Valid until the next call into the library on the same thread.
 */
const char *cfsl2_last_error(void);

/**
 * Expands the expression `expr` (e.g. `"sqrt(2) + i/3"`) over the ring of
 * discriminant `d` for at most `terms` partial quotients.
 *
 * # Safety
 * `expr` must be a valid C string and `out` a valid pointer.
 */
enum Cfsl2Status cfsl2_expand(uint32_t d,
                              const char *expr,
                              size_t terms,
                              struct Cfsl2Expansion **out);

/**
 * # Safety
 * `h` must come from [`cfsl2_expand`] and not be used afterwards.
 */
void cfsl2_expansion_free(struct Cfsl2Expansion *h);

/**
 * Number of partial quotients, 0 for a null handle.
 *
 * # Safety
 * `h` must be null or a live expansion handle.
 */
size_t cfsl2_expansion_len(const struct Cfsl2Expansion *h);

/**
 * Whether the expansion stopped because the value is in the field.
 *
 * # Safety
 * `h` must be null or a live expansion handle.
 */
bool cfsl2_expansion_terminated(const struct Cfsl2Expansion *h);

/**
 * Partial quotient `a_n`.
 *
 * # Safety
 * `h` must be a live expansion handle, `a` and `b` valid pointers.
 */
enum Cfsl2Status cfsl2_expansion_quotient(const struct Cfsl2Expansion *h,
                                          size_t n,
                                          int64_t *a,
                                          int64_t *b);

/**
 * Convergent `p_n / q_n`; `n` may be `-1` or `-2`.
 *
 * # Safety
 * `h` must be a live expansion handle and the four outputs valid pointers.
 */
enum Cfsl2Status cfsl2_expansion_convergent(const struct Cfsl2Expansion *h,
                                            int64_t n,
                                            int64_t *p_a,
                                            int64_t *p_b,
                                            int64_t *q_a,
                                            int64_t *q_b);

/**
 * `|q_n z − p_n|` to double precision.
 *
 * # Safety
 * `h` must be a live expansion handle and `out` a valid pointer.
 */
enum Cfsl2Status cfsl2_expansion_error(const struct Cfsl2Expansion *h, int64_t n, double *out);

/**
 * Runs the orbit experiment described by `config`, written in the same
 * `key = value` form as the `orbit` command's config file (no `include`).
 *
 * # Safety
 * `config` must be a valid C string and `out` a valid pointer.
 */
enum Cfsl2Status cfsl2_orbit_run(const char *config, struct Cfsl2Orbit **out);

/**
 * # Safety
 * `h` must come from [`cfsl2_orbit_run`] and not be used afterwards.
 */
void cfsl2_orbit_free(struct Cfsl2Orbit *h);

/**
 * Number of records, 0 for a null handle.
 *
 * # Safety
 * `h` must be null or a live orbit handle.
 */
size_t cfsl2_orbit_len(const struct Cfsl2Orbit *h);

/**
 * Record `i` of the run.
 *
 * # Safety
 * `h` must be a live orbit handle and `out` a valid pointer.
 */
enum Cfsl2Status cfsl2_orbit_record(const struct Cfsl2Orbit *h,
                                    size_t i,
                                    struct Cfsl2OrbitRecord *out);

/**
 * Matrix of record `i` as four ring elements `v1, u1, v2, u2` (row major),
 * each written as two coefficients: `out[2m]`, `out[2m + 1]`.
 *
 * # Safety
 * `h` must be a live orbit handle and `out` point to 8 writable `int64_t`.
 */
enum Cfsl2Status cfsl2_orbit_matrix(const struct Cfsl2Orbit *h, size_t i, int64_t *out);

/**
 * Runs a CLI command (`"expand"`, `"orbit"`, `"exponent"`, `"dirichlet"`,
 * `"embed-check"`, `"floor-check"`) on config text and returns its main
 * output. Release the string with [`cfsl2_string_free`].
 *
 * # Safety
 * `command` and `config` must be valid C strings and `out` a valid pointer.
 */
enum Cfsl2Status cfsl2_run_command(const char *command, const char *config, char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void cfsl2_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CFSL2_H */
