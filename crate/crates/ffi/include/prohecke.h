#ifndef PROHECKE_H
#define PROHECKE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ProheckeStatus {
  PROHECKE_STATUS_OK = 0,
  PROHECKE_STATUS_USAGE = 1,
  PROHECKE_STATUS_PARSE = 2,
  PROHECKE_STATUS_NON_INVERTIBLE = 3,
  PROHECKE_STATUS_DATUM = 4,
  PROHECKE_STATUS_GROUP_TOO_LARGE = 5,
  PROHECKE_STATUS_BOUND = 6,
  PROHECKE_STATUS_VALIDATION = 7,
  PROHECKE_STATUS_INTERNAL = 8,
  PROHECKE_STATUS_NULL_POINTER = 9,
  PROHECKE_STATUS_INVALID_UTF8 = 10,
  PROHECKE_STATUS_CHECK_FAILED = 11,
  PROHECKE_STATUS_PANIC = 12,
} ProheckeStatus;

// Opaque algebra handle.
typedef struct ProheckeAlgebra ProheckeAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds an algebra from a preset string such as `gln:3:a1`.
//
// # Safety
// `preset` must be a NUL-terminated string and `out` a valid pointer.
enum ProheckeStatus prohecke_algebra_new(const char *preset, struct ProheckeAlgebra **out);

// # Safety
// `alg` must come from [`prohecke_algebra_new`] and not be used afterwards.
void prohecke_algebra_free(struct ProheckeAlgebra *alg);

// # Safety
// `s` must come from this library, or be null.
void prohecke_string_free(char *s);

// Message of the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on this thread.
const char *prohecke_last_error(void);

// Library version, a static string.
const char *prohecke_version(void);

// Product of two elements given as JSON.
//
// # Safety
// Pointers must be valid; strings NUL-terminated.
enum ProheckeStatus prohecke_mul(const struct ProheckeAlgebra *alg,
                                 const char *a,
                                 const char *b,
                                 char **out);

// θ̂_o(g). A null `orientation` means the dominant spherical one.
//
// # Safety
// Pointers must be valid; strings NUL-terminated.
enum ProheckeStatus prohecke_theta_hat(const struct ProheckeAlgebra *alg,
                                       const char *orientation,
                                       const char *g,
                                       char **out);

// θ_o(g), for Laurent contexts.
//
// # Safety
// Pointers must be valid; strings NUL-terminated.
enum ProheckeStatus prohecke_theta(const struct ProheckeAlgebra *alg,
                                   const char *orientation,
                                   const char *g,
                                   char **out);

// z_γ for the orbit of `x`, as JSON. Returns `CheckFailed` if the
// centrality certificate fails.
//
// # Safety
// Pointers must be valid; strings NUL-terminated.
enum ProheckeStatus prohecke_center(const struct ProheckeAlgebra *alg, const char *x, char **out);

// The affine Jucys-Murphy element `J_i`, `1 <= i <= n`.
//
// # Safety
// Pointers must be valid.
enum ProheckeStatus prohecke_jm(const struct ProheckeAlgebra *alg, uintptr_t i, char **out);

// Runs a verification suite with default sizes. The JSON report is
// written even when a check fails, in which case `CheckFailed` is returned.
//
// # Safety
// Pointers must be valid; strings NUL-terminated.
enum ProheckeStatus prohecke_verify(const struct ProheckeAlgebra *alg,
                                    const char *suite,
                                    uint64_t seed,
                                    char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PROHECKE_H */
