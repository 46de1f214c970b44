#ifndef PTHERMIT_H
#define PTHERMIT_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PthPhase {
  PTH_PHASE_UNBROKEN = 0,
  PTH_PHASE_BOUNDARY = 1,
  PTH_PHASE_BROKEN = 2,
} PthPhase;

/**
 * Result of every fallible call.
 */
typedef enum PthStatus {
  PTH_STATUS_OK = 0,
  PTH_STATUS_NULL_POINTER = 1,
  PTH_STATUS_INVALID_ARGUMENT = 2,
  PTH_STATUS_UNSUPPORTED_DIMENSION = 3,
  PTH_STATUS_BUFFER_TOO_SMALL = 4,
  PTH_STATUS_BROKEN_PHASE = 5,
  PTH_STATUS_BOUNDARY_PHASE = 6,
  PTH_STATUS_OUT_OF_DOMAIN = 7,
  PTH_STATUS_NON_CONVERGENCE = 8,
  PTH_STATUS_IO = 9,
  PTH_STATUS_PANIC = 10,
} PthStatus;

typedef enum PthSuite {
  PTH_SUITE_OPERATORS = 0,
  PTH_SUITE_DESITTER = 1,
  PTH_SUITE_MASSDOMAIN = 2,
  PTH_SUITE_ALL = 3,
} PthSuite;

/**
 * `H = Σ αᵢpᵢ + β(s1·m1 + s2·m2·γ5)` sign choice.
 */
typedef enum PthVariant {
  PTH_VARIANT_MINUS_MINUS = 0,
  PTH_VARIANT_PLUS_MINUS = 1,
  PTH_VARIANT_MINUS_PLUS = 2,
  PTH_VARIANT_PLUS_PLUS = 3,
} PthVariant;

/**
 * Opaque Hamiltonian handle.
 */
typedef struct PthHamiltonian PthHamiltonian;

/**
 * A point of the mass domain: `(m1, m2)` lower pair, `(m3, m4)` upper pair.
 */
typedef struct PthBranchPoint {
  double m;
  double m_max;
  double m1;
  double m2;
  double m3;
  double m4;
  double alpha;
  double theta;
  /**
   * Non-zero when the point was produced on the upper branch.
   */
  uint8_t upper;
} PthBranchPoint;

/**
 * Summary of a verification run.
 */
typedef struct PthVerifySummary {
  size_t checks;
  size_t failed;
  uint8_t passed;
} PthVerifySummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or NULL. The pointer stays
 * valid until the next library call on the same thread.
 */
const char *pth_last_error(void);

/**
 * Builds `H(p; m1, m2)` in spacetime dimension `dim` (2 or 4). `p` holds
 * `dim − 1` momentum components. On success `*out` receives a new handle.
 *
 * # Safety
 * `p` must point to `p_len` readable doubles and `out` must be writable.
 */
enum PthStatus pth_hamiltonian_new(size_t dim,
                                   const double *p,
                                   size_t p_len,
                                   double m1,
                                   double m2,
                                   uint32_t variant,
                                   struct PthHamiltonian **out);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `h` must be NULL or a handle from [`pth_hamiltonian_new`] not yet freed.
 */
void pth_hamiltonian_free(struct PthHamiltonian *h);

/**
 * Spinor dimension of the matrix (2 or 4), or 0 for NULL.
 *
 * # Safety
 * `h` must be NULL or a live handle.
 */
size_t pth_hamiltonian_dim(const struct PthHamiltonian *h);

/**
 * Writes the row-major matrix into `re`/`im`, each of length `len ≥ dim²`.
 *
 * # Safety
 * `h` must be a live handle; `re` and `im` must hold `len` writable doubles.
 */
enum PthStatus pth_hamiltonian_matrix(const struct PthHamiltonian *h,
                                      double *re,
                                      double *im,
                                      size_t len);

/**
 * Writes the sorted eigenvalues into `re`/`im`, each of length `len ≥ dim`.
 *
 * # Safety
 * `h` must be a live handle; `re` and `im` must hold `len` writable doubles.
 */
enum PthStatus pth_hamiltonian_eigenvalues(const struct PthHamiltonian *h,
                                           double *re,
                                           double *im,
                                           size_t len);

/**
 * Writes the PT phase and the physical mass `√(m1² − m2²)` (complex when broken).
 *
 * # Safety
 * `h` must be a live handle; the output pointers must be writable.
 */
enum PthStatus pth_hamiltonian_phase(const struct PthHamiltonian *h,
                                     enum PthPhase *phase,
                                     double *mass_re,
                                     double *mass_im);

/**
 * Writes the row-major matrix part of `C` for the handle's effective masses.
 * Fails with `BrokenPhase` or `BoundaryPhase` where `C` is undefined.
 *
 * # Safety
 * `h` must be a live handle; `re` and `im` must hold `len` writable doubles.
 */
enum PthStatus pth_c_operator(const struct PthHamiltonian *h, double *re, double *im, size_t len);

/**
 * Mass-domain point at hyperbolic angle `alpha ≥ 0`.
 *
 * # Safety
 * `out` must be writable.
 */
enum PthStatus pth_from_alpha(double alpha, double m_max, struct PthBranchPoint *out);

/**
 * Both branch pairs at physical mass `m ∈ [0, m_max]`; `upper` selects the pair.
 *
 * # Safety
 * `out` must be writable.
 */
enum PthStatus pth_branch_masses(double m, double m_max, uint8_t upper, struct PthBranchPoint *out);

/**
 * Mass-domain point at `theta ∈ [0, π/2]`; `exotic` selects the family.
 *
 * # Safety
 * `out` must be writable.
 */
enum PthStatus pth_from_theta(double theta,
                              double m_max,
                              uint8_t exotic,
                              struct PthBranchPoint *out);

/**
 * Runs a verification suite. `summary` must be non-NULL; when `json` is
 * non-NULL it receives the full report, to be freed with [`pth_string_free`].
 *
 * # Safety
 * `summary` must be writable; `json` must be NULL or writable.
 */
enum PthStatus pth_verify(enum PthSuite suite,
                          size_t samples,
                          uint64_t seed,
                          struct PthVerifySummary *summary,
                          char **json);

/**
 * Writes `fig1.csv` … `fig4.csv` into the UTF-8 directory path `dir`.
 *
 * # Safety
 * `dir` must be a NUL-terminated string.
 */
enum PthStatus pth_write_figures(const char *dir, double m_max, size_t points);

/**
 * Releases a string returned by the library. NULL is ignored.
 *
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void pth_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PTHERMIT_H */
