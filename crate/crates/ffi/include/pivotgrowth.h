#ifndef PIVOTGROWTH_H
#define PIVOTGROWTH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define PG_OK 0

#define PG_NULL_POINTER 1

#define PG_INVALID_ARGUMENT 2

#define PG_DIMENSION 3

#define PG_NON_FINITE 4

#define PG_SINGULAR 5

#define PG_ZERO_PIVOT 6

#define PG_NO_CONVERGENCE 7

#define PG_OVERFLOW 8

#define PG_BUFFER_TOO_SMALL 9

#define PG_INTERNAL 10

#define PG_PANIC 11

#define PG_PIVOT_NONE 0

#define PG_PIVOT_PARTIAL 1

#define PG_PIVOT_COMPLETE 2

/**
 * Dense real matrix.
 */
typedef struct PgMatrix PgMatrix;

/**
 * Record of one pivoted LU run, together with its input.
 */
typedef struct PgTrace PgTrace;

typedef struct PgGrowthReport {
  double rho_max;
  double rho_two;
  /**
   * 0-based elimination step attaining `rho_max`.
   */
  size_t arg_step;
  size_t arg_row;
  size_t arg_col;
} PgGrowthReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code. Never null.
 */
const char *pg_error_string(int32_t code);

/**
 * Message for the last failure on this thread; valid until the next failing call.
 */
const char *pg_last_error(void);

/**
 * Copies `rows * cols` row-major values into a new matrix.
 *
 * # Safety
 * `data` must point to `rows * cols` readable doubles; `out` must be writable.
 */
int32_t pg_matrix_new(size_t rows, size_t cols, const double *data, struct PgMatrix **out);

/**
 * # Safety
 * `m` must be null or a handle from this library not yet freed.
 */
void pg_matrix_free(struct PgMatrix *m);

/**
 * # Safety
 * `m` must be null or a live handle. Returns 0 for null.
 */
size_t pg_matrix_rows(const struct PgMatrix *m);

/**
 * # Safety
 * `m` must be null or a live handle. Returns 0 for null.
 */
size_t pg_matrix_cols(const struct PgMatrix *m);

/**
 * Copies the entries in row-major order into `buf`, which holds `len` doubles.
 *
 * # Safety
 * `m` must be a live handle and `buf` must point to `len` writable doubles.
 */
int32_t pg_matrix_copy(const struct PgMatrix *m, double *buf, size_t len);

/**
 * Builds a named matrix family member (for example `"wilkinsonA"`, `"qn"`, `"b3"`).
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
int32_t pg_model(const char *name, size_t n, struct PgMatrix **out);

/**
 * Haar-distributed orthogonal matrix from the stream `(seed, stream)`.
 *
 * # Safety
 * `out` must be writable.
 */
int32_t pg_haar_orthogonal(size_t n, uint64_t seed, uint64_t stream, struct PgMatrix **out);

/**
 * Max-norm growth factor under `strategy` (one of `PG_PIVOT_*`).
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
int32_t pg_growth_factor(const struct PgMatrix *m, uint32_t strategy_code, double *out);

/**
 * Max-norm and L² growth factors with the attaining step and entry (0-based
 * entry indices in the frame of `P A Q`).
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
int32_t pg_growth_report(const struct PgMatrix *m,
                         uint32_t strategy_code,
                         struct PgGrowthReport *out);

/**
 * Factorizes `P A Q = L U` and returns the trace handle.
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
int32_t pg_factorize(const struct PgMatrix *m, uint32_t strategy_code, struct PgTrace **out);

/**
 * # Safety
 * `t` must be null or a trace handle not yet freed.
 */
void pg_trace_free(struct PgTrace *t);

/**
 * # Safety
 * `t` must be null or a live handle. Returns 0 for null.
 */
size_t pg_trace_order(const struct PgTrace *t);

/**
 * Copies the `n` pivots (diagonal of `U`) into `buf`.
 *
 * # Safety
 * `t` must be a live handle and `buf` must point to `len` writable doubles.
 */
int32_t pg_trace_pivots(const struct PgTrace *t, double *buf, size_t len);

/**
 * Copies the row and column permutations (`perm[k]` is the original index
 * placed at position `k`). Either buffer may be null to skip it.
 *
 * # Safety
 * `t` must be a live handle; non-null buffers must hold `len` writable entries.
 */
int32_t pg_trace_permutations(const struct PgTrace *t, size_t *rows, size_t *cols, size_t len);

/**
 * JSON dump of the trace with both growth factors. Free the string with
 * [`pg_string_free`].
 *
 * # Safety
 * `t` must be a live handle and `out` writable.
 */
int32_t pg_trace_to_json(const struct PgTrace *t, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void pg_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PIVOTGROWTH_H */
