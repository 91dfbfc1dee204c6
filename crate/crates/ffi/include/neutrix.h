#ifndef NEUTRIX_H
#define NEUTRIX_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Outcome of a call.
typedef enum NeutrixStatus {
  NEUTRIX_STATUS_OK = 0,
  // The argument is a pole of a path with no regularized value.
  NEUTRIX_STATUS_POLE = 1,
  // Argument outside the supported domain.
  NEUTRIX_STATUS_DOMAIN = 2,
  // The expansion remainder is not known to vanish.
  NEUTRIX_STATUS_UNCONTROLLED_REMAINDER = 3,
  // A series could not be truncated within tolerance.
  NEUTRIX_STATUS_SERIES_TAIL = 4,
  // Quadrature did not converge.
  NEUTRIX_STATUS_QUADRATURE = 5,
  // Too few samples for the fit basis.
  NEUTRIX_STATUS_UNDERDETERMINED = 6,
  // Bad ε grid or sample values.
  NEUTRIX_STATUS_INVALID_GRID = 7,
  // The least-squares system is singular.
  NEUTRIX_STATUS_SINGULAR = 8,
  // A required pointer argument was null.
  NEUTRIX_STATUS_NULL_POINTER = 9,
  // An index was out of range.
  NEUTRIX_STATUS_OUT_OF_RANGE = 10,
  // Unknown enum value passed in.
  NEUTRIX_STATUS_INVALID_ARGUMENT = 11,
  // Internal error; the library state is unaffected.
  NEUTRIX_STATUS_PANIC = 12,
} NeutrixStatus;

// How a value was obtained.
typedef enum NeutrixMethod {
  NEUTRIX_METHOD_CLOSED_FORM = 0,
  NEUTRIX_METHOD_SYMBOLIC_FP = 1,
  NEUTRIX_METHOD_NUMERIC_FIT = 2,
} NeutrixMethod;

// Integrand families. Fields a family does not use are ignored.
typedef enum NeutrixIntegralKind {
  // t^x ln^n t on (ε, 1).
  NEUTRIX_INTEGRAL_KIND_POWER_LOG_UNIT = 0,
  // t^x ln^n t ln^r(1-t) on (ε, 1/2).
  NEUTRIX_INTEGRAL_KIND_MIXED_HALF = 1,
  // t^(-m-1) e^(-t) on (ε, ∞).
  NEUTRIX_INTEGRAL_KIND_GAMMA_TAIL = 2,
  // t^(-m-1) ln^n t / (1-t) on (ε, 1).
  NEUTRIX_INTEGRAL_KIND_POLYGAMMA_FULL = 3,
} NeutrixIntegralKind;

// Opaque ε-expansion.
typedef struct NeutrixExpansion NeutrixExpansion;

// Opaque least-squares fit report.
typedef struct NeutrixFitReport NeutrixFitReport;

typedef struct NeutrixValue {
  double value;
  double err_estimate;
  enum NeutrixMethod method;
} NeutrixValue;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static description of a status code (a `NeutrixStatus` value). Never null.
const char *neutrix_status_message(int32_t status);

// Γ(-m) = (-1)^m/m! (φ(m) - γ).
//
// # Safety
// `out` must be null or writable.
enum NeutrixStatus neutrix_gamma_neg_closed(uint32_t m, struct NeutrixValue *out);

// Γ(-m) from the regularized integral, by quadrature.
//
// # Safety
// `out` must be null or writable.
enum NeutrixStatus neutrix_gamma_neg_finite_part(uint32_t m, struct NeutrixValue *out);

// ψ(-m) = -γ + φ(m).
//
// # Safety
// `out` must be null or writable.
enum NeutrixStatus neutrix_digamma_neg(uint32_t m, struct NeutrixValue *out);

// ψ⁽ⁿ⁾(-m) in closed form, n ≥ 1.
//
// # Safety
// `out` must be null or writable.
enum NeutrixStatus neutrix_polygamma_neg_closed(uint32_t n, uint32_t m, struct NeutrixValue *out);

// ψ⁽ⁿ⁾(-m) assembled from the integral decomposition, n ≥ 1.
//
// # Safety
// `out` must be null or writable.
enum NeutrixStatus neutrix_polygamma_decomposition(uint32_t n,
                                                   uint32_t m,
                                                   struct NeutrixValue *out);

// ψ⁽ⁿ⁾(x) for x > 0.
//
// # Safety
// `out` must be null or writable.
enum NeutrixStatus neutrix_polygamma_pos(uint32_t n, double x, struct NeutrixValue *out);

// ψ⁽ⁿ⁾(x) at any real x that is not a pole (n = 0 is ψ).
//
// # Safety
// `out` must be null or writable.
enum NeutrixStatus neutrix_polygamma_nonint(uint32_t n, double x, struct NeutrixValue *out);

// Classical Γ(x) away from the poles.
//
// # Safety
// `out` must be null or writable.
enum NeutrixStatus neutrix_gamma_classical(double x, struct NeutrixValue *out);

// ζ(s) for integer s ≥ 2.
//
// # Safety
// `out` must be null or writable.
enum NeutrixStatus neutrix_zeta_int(uint32_t s, double *out);

// Exact expansion of the truncated integral of a family member; `kind`
// is a `NeutrixIntegralKind` value.
//
// # Safety
// `out` must be null or writable.
enum NeutrixStatus neutrix_integral_expansion(uint32_t kind,
                                              double x,
                                              uint32_t n,
                                              uint32_t r,
                                              uint32_t m,
                                              struct NeutrixExpansion **out);

// Number of terms in an expansion; 0 for a null handle.
//
// # Safety
// `e` must be null or a live handle from this library.
size_t neutrix_expansion_len(const struct NeutrixExpansion *e);

// Term `i` as `coeff · ε^lambda · ln^logpow ε`, in canonical order.
//
// # Safety
// `e` must be null or a live handle; the out-pointers must be null or writable.
enum NeutrixStatus neutrix_expansion_term(const struct NeutrixExpansion *e,
                                          size_t i,
                                          double *coeff,
                                          double *lambda,
                                          uint32_t *logpow);

// 1 if the remainder is known to vanish as ε → 0, else 0.
//
// # Safety
// `e` must be null or a live handle.
int32_t neutrix_expansion_remainder_is_o1(const struct NeutrixExpansion *e);

// The neutrix limit (coefficient of ε⁰ ln⁰ ε).
//
// # Safety
// `e` must be null or a live handle; `out` must be null or writable.
enum NeutrixStatus neutrix_expansion_neutrix_limit(const struct NeutrixExpansion *e, double *out);

// Releases an expansion. Null is ignored.
//
// # Safety
// `e` must be null or a handle not yet freed.
void neutrix_expansion_free(struct NeutrixExpansion *e);

// Fits the finite part of a family member (`kind` is a
// `NeutrixIntegralKind` value) from quadrature samples on `grid`
// (`grid_len = 0` for the default grid).
//
// # Safety
// `grid` must point to `grid_len` doubles; `out` must be null or writable.
enum NeutrixStatus neutrix_fit_integral(uint32_t kind,
                                        double x,
                                        uint32_t n,
                                        uint32_t r,
                                        uint32_t m,
                                        const double *grid,
                                        size_t grid_len,
                                        struct NeutrixFitReport **out);

// Fits the Laurent constant of ψ⁽ⁿ⁾(-m + ε) (`grid_len = 0` for the default grid).
//
// # Safety
// `grid` must point to `grid_len` doubles; `out` must be null or writable.
enum NeutrixStatus neutrix_shifted_argument_constant(uint32_t n,
                                                     uint32_t m,
                                                     const double *grid,
                                                     size_t grid_len,
                                                     struct NeutrixFitReport **out);

// Scalar summary of a fit report. Any out-pointer may be null.
//
// # Safety
// `f` must be a live handle; non-null out-pointers must be writable.
enum NeutrixStatus neutrix_fit_summary(const struct NeutrixFitReport *f,
                                       double *finite_part,
                                       double *std_error,
                                       double *residual_norm,
                                       double *condition_estimate,
                                       int32_t *unreliable);

// Number of basis columns (equal to the number of coefficients).
//
// # Safety
// `f` must be null or a live handle.
size_t neutrix_fit_basis_len(const struct NeutrixFitReport *f);

// Basis column `i` (`ε^lambda ln^logpow ε`) and its fitted coefficient.
//
// # Safety
// `f` must be a live handle; the out-pointers must be writable.
enum NeutrixStatus neutrix_fit_basis_term(const struct NeutrixFitReport *f,
                                          size_t i,
                                          double *lambda,
                                          uint32_t *logpow,
                                          double *coefficient);

// Number of (ε, value) samples.
//
// # Safety
// `f` must be null or a live handle.
size_t neutrix_fit_sample_count(const struct NeutrixFitReport *f);

// Sample `i`.
//
// # Safety
// `f` must be a live handle; the out-pointers must be writable.
enum NeutrixStatus neutrix_fit_sample(const struct NeutrixFitReport *f,
                                      size_t i,
                                      double *eps,
                                      double *value);

// Releases a fit report. Null is ignored.
//
// # Safety
// `f` must be null or a handle not yet freed.
void neutrix_fit_free(struct NeutrixFitReport *f);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NEUTRIX_H */
