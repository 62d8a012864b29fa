#ifndef SL21_H
#define SL21_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum {
  SL21_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  SL21_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8 or did not parse.
   */
  SL21_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The characteristic is not an odd prime below 2^16.
   */
  SL21_STATUS_BAD_CHARACTERISTIC = 3,
  /**
   * The weight does not satisfy the p-character compatibility equations.
   */
  SL21_STATUS_INADMISSIBLE_WEIGHT = 4,
  /**
   * The two cohomology routes disagreed (library bug; cannot happen on
   * a healthy build).
   */
  SL21_STATUS_INTERNAL_INCONSISTENCY = 5,
  /**
   * A panic was caught at the boundary.
   */
  SL21_STATUS_PANIC = 6,
} Sl21Status;

/**
 * Orbit class of the p-character.
 */
typedef enum {
  SL21_CHI_KIND_ZERO = 0,
  SL21_CHI_KIND_SEMISIMPLE = 1,
  SL21_CHI_KIND_NILPOTENT = 2,
} Sl21ChiKind;

/**
 * Which module family to build.
 */
typedef enum {
  SL21_MODULE_KIND_KAC = 0,
  SL21_MODULE_KIND_SIMPLE = 1,
} Sl21ModuleKind;

/**
 * Opaque result of one computed instance.
 */
typedef struct Sl21Instance Sl21Instance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *sl21_version(void);

/**
 * Compute one instance and hand back an opaque handle through `out`.
 *
 * `lambda1` and `lambda2` are field-element literals: integers for the
 * prime subfield, or `a+b*t` forms over the Artin-Schreier extension
 * (which is selected automatically when the character needs it). `r` and
 * `s` are integer parameters of the character; `s` is ignored unless the
 * kind is semisimple.
 *
 * # Safety
 * `lambda1`, `lambda2` must be valid NUL-terminated strings and `out` a
 * valid pointer; the handle must be released with [`sl21_instance_free`].
 */
Sl21Status sl21_instance_compute(uint16_t p,
                                 Sl21ChiKind chi_kind,
                                 int64_t r,
                                 int64_t s,
                                 const char *lambda1,
                                 const char *lambda2,
                                 Sl21ModuleKind kind,
                                 Sl21Instance **out);

/**
 * Total dimension of H^1 for a computed instance.
 *
 * # Safety
 * `instance` must be a live handle from [`sl21_instance_compute`].
 */
uint32_t sl21_instance_dim_h1(const Sl21Instance *instance);

/**
 * Even-parity dimension of H^1.
 *
 * # Safety
 * `instance` must be a live handle from [`sl21_instance_compute`].
 */
uint32_t sl21_instance_dim_even(const Sl21Instance *instance);

/**
 * Odd-parity dimension of H^1.
 *
 * # Safety
 * `instance` must be a live handle from [`sl21_instance_compute`].
 */
uint32_t sl21_instance_dim_odd(const Sl21Instance *instance);

/**
 * Dimension of the underlying module.
 *
 * # Safety
 * `instance` must be a live handle from [`sl21_instance_compute`].
 */
uint32_t sl21_instance_module_dim(const Sl21Instance *instance);

/**
 * The predicted dimension from the closed-form table, or -1 when no
 * prediction applies (p = 3).
 *
 * # Safety
 * `instance` must be a live handle from [`sl21_instance_compute`].
 */
int32_t sl21_instance_predicted(const Sl21Instance *instance);

/**
 * 1 when the computed dimension matches the prediction, 0 when it does
 * not, -1 when no prediction applies.
 *
 * # Safety
 * `instance` must be a live handle from [`sl21_instance_compute`].
 */
int32_t sl21_instance_matched(const Sl21Instance *instance);

/**
 * Release a handle. Null is allowed.
 *
 * # Safety
 * `instance` must be null or a handle from [`sl21_instance_compute`] that
 * has not been freed yet.
 */
void sl21_instance_free(Sl21Instance *instance);

/**
 * Sweep every admissible weight for the character and module kind and
 * return the JSON table (schema as in the `sl21` command-line tool)
 * through `out_json`. Free the string with [`sl21_string_free`].
 *
 * # Safety
 * `out_json` must be a valid pointer.
 */
Sl21Status sl21_sweep_json(uint16_t p,
                           Sl21ChiKind chi_kind,
                           int64_t r,
                           int64_t s,
                           Sl21ModuleKind kind,
                           bool show_cocycles,
                           char **out_json);

/**
 * Free a string returned by [`sl21_sweep_json`]. Null is allowed.
 *
 * # Safety
 * `s` must be null or a pointer produced by this library and not yet
 * freed.
 */
void sl21_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SL21_H */
