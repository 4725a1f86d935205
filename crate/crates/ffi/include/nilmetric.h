#ifndef NILMETRIC_H
#define NILMETRIC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NmStatus {
  NM_OK = 0,
  NM_NULL_POINTER = 1,
  NM_UNKNOWN_ALGEBRA = 2,
  NM_INVALID_INPUT = 3,
  NM_UNSOLVABLE = 4,
  NM_UNKNOWN_COEFFICIENT = 5,
  NM_PANIC = 6,
} NmStatus;

/**
 * Milnor frame of a metric.
 */
typedef struct NmMilnorFrame NmMilnorFrame;

/**
 * Verified solution of a prescribed Ricci problem.
 */
typedef struct NmSolution NmSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or NULL. Valid until the
 * next call into this library on the same thread.
 */
const char *nm_last_error(void);

/**
 * Number of algebras in the catalog.
 */
size_t nm_algebra_count(void);

/**
 * Display name of the `index`-th algebra (static string), or NULL.
 */
const char *nm_algebra_name(size_t index);

/**
 * Builds the Milnor frame of the Gram matrix `gram` for algebra `id`.
 *
 * # Safety
 * `id` must be a NUL-terminated string, `gram` must point to 25 doubles and
 * `out` must be a valid pointer.
 */
enum NmStatus nm_milnor_frame_new(const char *id, const double *gram, struct NmMilnorFrame **out);

/**
 * # Safety
 * `frame` must come from [`nm_milnor_frame_new`] and not be used afterwards.
 */
void nm_milnor_frame_free(struct NmMilnorFrame *frame);

/**
 * Scale `eta` with `Vᵀ(eta·S)V = I`.
 *
 * # Safety
 * `frame` must be a live handle and `eta` a valid pointer.
 */
enum NmStatus nm_milnor_frame_eta(const struct NmMilnorFrame *frame, double *eta);

/**
 * Frame vectors as the columns of a row-major 5×5 matrix.
 *
 * # Safety
 * `frame` must be a live handle and `out` must point to 25 doubles.
 */
enum NmStatus nm_milnor_frame_vectors(const struct NmMilnorFrame *frame, double *out);

/**
 * Value of a named coefficient (`alpha`, …, `sigma`); absent ones read 0.
 *
 * # Safety
 * `frame` must be a live handle, `name` NUL-terminated, `value` valid.
 */
enum NmStatus nm_milnor_frame_coefficient(const struct NmMilnorFrame *frame,
                                          const char *name,
                                          double *value);

/**
 * Ricci matrix of the metric `gram` in its canonical orthonormal frame.
 *
 * # Safety
 * `id` NUL-terminated; `gram` and `out` must point to 25 doubles.
 */
enum NmStatus nm_ricci_from_gram(const char *id, const double *gram, double *out);

/**
 * Solves `Ric = t²T`. Returns `NmUnsolvable` (with a reason) when no
 * verified solution exists; `tolerance <= 0` selects the default 1e-8.
 *
 * # Safety
 * `id` NUL-terminated; `tensor` must point to 25 doubles; `out` valid.
 */
enum NmStatus nm_solve(const char *id,
                       const double *tensor,
                       double tolerance,
                       struct NmSolution **out);

/**
 * # Safety
 * `sol` must come from [`nm_solve`] and not be used afterwards.
 */
void nm_solution_free(struct NmSolution *sol);

/**
 * Coefficient of the solution (`t = 1` normalization).
 *
 * # Safety
 * `sol` live, `name` NUL-terminated, `value` valid.
 */
enum NmStatus nm_solution_coefficient(const struct NmSolution *sol,
                                      const char *name,
                                      double *value);

/**
 * `t`, verification residual and whether only sufficiency is claimed.
 *
 * # Safety
 * `sol` live; each non-NULL output pointer is written.
 */
enum NmStatus nm_solution_info(const struct NmSolution *sol,
                               double *t,
                               double *residual,
                               bool *sufficiency_only);

/**
 * Recomputes `‖Ric(coeffs) − t²T‖∞` for `sol` against `tensor`.
 *
 * # Safety
 * `sol` live; `tensor` must point to 25 doubles; `residual` valid.
 */
enum NmStatus nm_solution_verify(const struct NmSolution *sol,
                                 const double *tensor,
                                 double *residual);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NILMETRIC_H */
