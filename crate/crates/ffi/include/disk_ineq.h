#ifndef DISK_INEQ_H
#define DISK_INEQ_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes shared by every entry point.
 */
typedef enum DiskIneqStatus {
  DISK_INEQ_STATUS_OK = 0,
  DISK_INEQ_STATUS_NULL_POINTER = 1,
  DISK_INEQ_STATUS_INVALID_UTF8 = 2,
  DISK_INEQ_STATUS_PARSE_ERROR = 3,
  DISK_INEQ_STATUS_OUT_OF_RANGE = 4,
  DISK_INEQ_STATUS_NOT_REAL_VALUED = 5,
  DISK_INEQ_STATUS_NON_FINITE_SAMPLE = 6,
  DISK_INEQ_STATUS_NO_CONVERGENCE = 7,
  DISK_INEQ_STATUS_PRECONDITION_FAILED = 8,
  DISK_INEQ_STATUS_DEGENERATE_ZERO = 9,
  DISK_INEQ_STATUS_NOT_HOLOMORPHIC = 10,
  DISK_INEQ_STATUS_UNKNOWN_THEOREM = 11,
  DISK_INEQ_STATUS_PANIC = 12,
} DiskIneqStatus;

/**
 * Opaque handle to a harmonic function.
 */
typedef struct DiskIneqFunction DiskIneqFunction;

/**
 * Norm value with its error estimate and the node counts used.
 */
typedef struct DiskIneqNorm {
  double value;
  double err_est;
  /**
   * Angular nodes.
   */
  uintptr_t n;
  /**
   * Radial nodes; zero for Hardy norms.
   */
  uintptr_t m;
  bool converged;
} DiskIneqNorm;

/**
 * Closed-form constant table at one exponent. `m_p` is NaN when p ≤ 2.
 */
typedef struct DiskIneqConstants {
  double p;
  double r_p;
  double l_p;
  double m_p;
  double c_p;
  double e4;
  double pbar;
  double newt;
  double p1;
} DiskIneqConstants;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *disk_ineq_version(void);

/**
 * Parses a JSON function descriptor into a handle.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum DiskIneqStatus disk_ineq_function_parse(const char *json, struct DiskIneqFunction **out);

/**
 * Releases a handle returned by [`disk_ineq_function_parse`].
 *
 * # Safety
 * `f` must be a pointer previously returned by this library, not yet freed.
 */
void disk_ineq_function_free(struct DiskIneqFunction *f);

/**
 * Serializes a handle back to its JSON descriptor (caller frees via
 * [`disk_ineq_string_free`]).
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
enum DiskIneqStatus disk_ineq_function_to_json(const struct DiskIneqFunction *f, char **out);

/**
 * Frees a string allocated by this library.
 *
 * # Safety
 * `s` must originate from this library and not have been freed already.
 */
void disk_ineq_string_free(char *s);

/**
 * Evaluates a function at `z = r e^{i theta}`.
 *
 * # Safety
 * `f`, `out_re`, `out_im` must be valid pointers.
 */
enum DiskIneqStatus disk_ineq_eval(const struct DiskIneqFunction *f,
                                   double r,
                                   double theta,
                                   double *out_re,
                                   double *out_im);

/**
 * Writes whether the function is real-valued.
 *
 * # Safety
 * `f` and `out` must be valid pointers.
 */
enum DiskIneqStatus disk_ineq_is_real(const struct DiskIneqFunction *f, bool *out);

/**
 * Hardy norm with error estimate. On `DISK_INEQ_STATUS_NO_CONVERGENCE` the
 * out-struct still carries the partial value with `converged = false`.
 *
 * # Safety
 * `f` and `out` must be valid pointers.
 */
enum DiskIneqStatus disk_ineq_hardy_norm(const struct DiskIneqFunction *f,
                                         double p,
                                         double tol,
                                         struct DiskIneqNorm *out);

/**
 * Bergman norm; same contract as [`disk_ineq_hardy_norm`].
 *
 * # Safety
 * `f` and `out` must be valid pointers.
 */
enum DiskIneqStatus disk_ineq_bergman_norm(const struct DiskIneqFunction *f,
                                           double p,
                                           double tol,
                                           struct DiskIneqNorm *out);

/**
 * Fills the constant table at exponent `p` (`p > 1`).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum DiskIneqStatus disk_ineq_constants(double p, struct DiskIneqConstants *out);

/**
 * The crossover root of the split-norm constant against the Riesz bound.
 */
double disk_ineq_p1_root(void);

/**
 * Runs one theorem checker on a function and returns the reports as a JSON
 * array (caller frees via [`disk_ineq_string_free`]). `thm` accepts the
 * same names as the CLI: isoper, carleman-exp, cp, c4, riesz, hed, newt,
 * ipl, lemma-new, green, abx. For ipl/abx the handle must be a taylor_pair
 * whose g and h are the two analytic functions.
 *
 * # Safety
 * `thm`, `f`, `out_json` must be valid pointers.
 */
enum DiskIneqStatus disk_ineq_check(const char *thm,
                                    const struct DiskIneqFunction *f,
                                    double p,
                                    double eps,
                                    double tol,
                                    char **out_json);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* DISK_INEQ_H */
