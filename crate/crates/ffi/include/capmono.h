#ifndef CAPMONO_H
#define CAPMONO_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CapmonoStatus {
  CAPMONO_STATUS_OK = 0,
  CAPMONO_STATUS_NULL_POINTER = 1,
  CAPMONO_STATUS_INVALID_ARGUMENT = 2,
  CAPMONO_STATUS_CONFIG = 3,
  CAPMONO_STATUS_GEOMETRY = 4,
  CAPMONO_STATUS_NUMERIC = 5,
  CAPMONO_STATUS_PANIC = 6,
} CapmonoStatus;

/**
 * Sampled surface with its wetted region.
 */
typedef struct CapmonoSurface CapmonoSurface;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success. Valid until the next call.
 */
const char *capmono_last_error(void);

/**
 * Samples a generator. `param` is the cap radius R for "cap" and "hemisphere", the contact
 * latitude for "cap-ball", and ignored for "flat-disk-ball".
 *
 * # Safety
 * `generator` must be a NUL-terminated string and `out` a valid pointer.
 */
enum CapmonoStatus capmono_surface_generate(const char *generator,
                                            double theta,
                                            double param,
                                            double amplitude,
                                            uint32_t mode,
                                            size_t nu,
                                            size_t nv,
                                            struct CapmonoSurface **out);

/**
 * # Safety
 * `h` must come from `capmono_surface_generate` and not be freed twice. Null is ignored.
 */
void capmono_surface_free(struct CapmonoSurface *h);

/**
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum CapmonoStatus capmono_surface_area(const struct CapmonoSurface *h, double *out);

/**
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum CapmonoStatus capmono_boundary_length(const struct CapmonoSurface *h, double *out);

/**
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum CapmonoStatus capmono_contact_check(const struct CapmonoSurface *h, double *out);

/**
 * Capillary Willmore energy of the surface's ambient.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum CapmonoStatus capmono_willmore(const struct CapmonoSurface *h, double *out);

/**
 * Energy report as a JSON string; release it with `capmono_string_free`.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum CapmonoStatus capmono_energy_report_json(const struct CapmonoSurface *h, char **out);

/**
 * # Safety
 * `s` must come from this library. Null is ignored.
 */
void capmono_string_free(char *s);

/**
 * Normalized half-space identity residual between radii σ < ρ about `a` (3 doubles).
 *
 * # Safety
 * `h` must be a live handle, `a` point to 3 doubles and `out` be valid.
 */
enum CapmonoStatus capmono_simon_residual(const struct CapmonoSurface *h,
                                          const double *a,
                                          double sigma,
                                          double rho,
                                          double *out);

/**
 * Normalized ball identity residual between radii σ < ρ about `x0` (3 doubles).
 *
 * # Safety
 * `h` must be a live handle, `x0` point to 3 doubles and `out` be valid.
 */
enum CapmonoStatus capmono_ball_identity_residual(const struct CapmonoSurface *h,
                                                  const double *x0,
                                                  double sigma,
                                                  double rho,
                                                  double *out);

/**
 * Pointwise identity for two points of S² (3 doubles each).
 *
 * # Safety
 * `x` and `x0` must point to 3 doubles and `out` be valid.
 */
enum CapmonoStatus capmono_sphere_point_identity(const double *x, const double *x0, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CAPMONO_H */
