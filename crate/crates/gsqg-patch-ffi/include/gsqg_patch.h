#ifndef GSQG_PATCH_H
#define GSQG_PATCH_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum GsqgStatus {
  GSQG_STATUS_OK = 0,
  GSQG_STATUS_NULL_POINTER = 1,
  GSQG_STATUS_DOMAIN = 2,
  GSQG_STATUS_ALIASING = 3,
  GSQG_STATUS_DEGENERATE_BOUNDARY = 4,
  GSQG_STATUS_DIVERGENCE = 5,
  GSQG_STATUS_SINGULAR_SYSTEM = 6,
  GSQG_STATUS_OUT_OF_RANGE = 7,
  GSQG_STATUS_BUFFER_TOO_SMALL = 8,
  GSQG_STATUS_INTERNAL = 9,
} GsqgStatus;

// Opaque continuation result.
typedef struct GsqgBranch GsqgBranch;

// Opaque table of `β_j`, `γ_j`.
typedef struct GsqgMultipliers GsqgMultipliers;

// Solver settings; obtain defaults from [`gsqg_solver_config_default`].
typedef struct GsqgSolverConfig {
  // Truncation; unknowns are `a_2..a_J`.
  size_t j;
  // Outer grid size.
  size_t n;
  // Inner grid size.
  size_t m;
  double tol;
  size_t max_iter;
  double fd_step;
  // `true` selects the corrected self-interaction window.
  bool corrected;
} GsqgSolverConfig;

// One converged point of a branch.
typedef struct GsqgRecord {
  double eps;
  double speed;
  double residual;
  size_t iters;
  // Number of coefficients `a_2..a_J`.
  size_t n_coeffs;
} GsqgRecord;

// Message of the last failed call on this thread; empty after a success.
//
// The pointer stays valid until the next call into this library on the same thread.
const char *gsqg_last_error_message(void);

// Co-rotating point-vortex angular velocity for `m` vortices at distance `d`.
//
// # Safety
// `out` must be null or valid for a write of one `double`.
enum GsqgStatus gsqg_omega_star(double alpha, double d, size_t m, double *out);

// Travelling point-vortex pair speed.
//
// # Safety
// `out` must be null or valid for a write of one `double`.
enum GsqgStatus gsqg_w_star(double alpha, double d, double *out);

// Riesz constant `C_α`.
//
// # Safety
// `out` must be null or valid for a write of one `double`.
enum GsqgStatus gsqg_riesz_constant(double alpha, double *out);

// Builds the multiplier table for `j = 1..=jmax`.
//
// # Safety
// `out` must be null or valid for a write of one pointer. The handle written
// there must be released with [`gsqg_multipliers_free`].
enum GsqgStatus gsqg_multipliers_new(double alpha, size_t jmax, struct GsqgMultipliers **out);

// Largest index held by the table, or 0 for a null handle.
//
// # Safety
// `table` must be null or a live handle from [`gsqg_multipliers_new`].
size_t gsqg_multipliers_jmax(const struct GsqgMultipliers *table);

// `β_j` for `1 <= j <= jmax`.
//
// # Safety
// `table` must be null or a live handle; `out` must be null or writable.
enum GsqgStatus gsqg_multipliers_beta(const struct GsqgMultipliers *table, size_t j, double *out);

// `γ_j` for `1 <= j <= jmax`; only defined for `α ∈ [1, 2)`.
//
// # Safety
// `table` must be null or a live handle; `out` must be null or writable.
enum GsqgStatus gsqg_multipliers_gamma(const struct GsqgMultipliers *table, size_t j, double *out);

// Releases a table. Null is ignored.
//
// # Safety
// `table` must be null or a handle from [`gsqg_multipliers_new`] not yet freed.
void gsqg_multipliers_free(struct GsqgMultipliers *table);

// Library defaults.
struct GsqgSolverConfig gsqg_solver_config_default(void);

// Continues a branch over `schedule[0..len]`. `m = 0` selects the travelling pair,
// otherwise `m` co-rotating patches.
//
// A branch that stops early is still returned with status `Ok`; inspect
// [`gsqg_branch_terminated`].
//
// # Safety
// `config` must point to a valid config, `schedule` must be valid for `len`
// reads, and `out` must be writable. Release the handle with [`gsqg_branch_free`].
enum GsqgStatus gsqg_branch_solve(double alpha,
                                  double d,
                                  size_t m,
                                  const struct GsqgSolverConfig *config,
                                  const double *schedule,
                                  size_t len,
                                  struct GsqgBranch **out);

// Number of converged records, or 0 for a null handle.
//
// # Safety
// `branch` must be null or a live handle.
size_t gsqg_branch_len(const struct GsqgBranch *branch);

// Whether the continuation stopped before the end of its schedule.
//
// # Safety
// `branch` must be null or a live handle.
bool gsqg_branch_terminated(const struct GsqgBranch *branch);

// Scalar data of record `index`.
//
// # Safety
// `branch` must be null or a live handle; `out` must be null or writable.
enum GsqgStatus gsqg_branch_record(const struct GsqgBranch *branch,
                                   size_t index,
                                   struct GsqgRecord *out);

// Copies `a_2..a_J` of record `index` into `buf`, which holds `cap` doubles.
//
// # Safety
// `branch` must be null or a live handle; `buf` must be valid for `cap` writes.
enum GsqgStatus gsqg_branch_coeffs(const struct GsqgBranch *branch,
                                   size_t index,
                                   double *buf,
                                   size_t cap);

// Releases a branch. Null is ignored.
//
// # Safety
// `branch` must be null or a handle from [`gsqg_branch_solve`] not yet freed.
void gsqg_branch_free(struct GsqgBranch *branch);

#endif  /* GSQG_PATCH_H */
