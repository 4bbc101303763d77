#ifndef MIXRES_H
#define MIXRES_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MixresStatus {
  MIXRES_STATUS_OK = 0,
  MIXRES_STATUS_NULL_POINTER = 1,
  MIXRES_STATUS_INVALID_UTF8 = 2,
  // The expression or an argument could not be read.
  MIXRES_STATUS_PARSE_ERROR = 3,
  // A mathematical precondition failed (non-convenient germ, irregular
  // cone, …). The message names the failing definition.
  MIXRES_STATUS_DEFINITION_FAILURE = 4,
  MIXRES_STATUS_INVALID_ARGUMENT = 5,
  MIXRES_STATUS_INTERNAL = 6,
} MixresStatus;

// Opaque handle to a parsed mixed polynomial.
typedef struct MixresPoly MixresPoly;

// Radial and polar degree of a face function.
typedef struct MixresFaceDegrees {
  int64_t rdeg;
  // Meaningful only when `has_pdeg` is set.
  int64_t pdeg;
  bool has_pdeg;
  bool strongly_mixed;
} MixresFaceDegrees;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. The pointer is
// valid until the next library call on the same thread.
const char *mixres_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *mixres_version(void);

// Parses `expr` in `n` variables into a new handle stored at `*out`.
//
// # Safety
// `expr` must be a valid NUL-terminated string and `out` a valid pointer.
enum MixresStatus mixres_poly_parse(const char *expr, size_t n, struct MixresPoly **out);

// Releases a handle. NULL is ignored.
//
// # Safety
// `p` must come from [`mixres_poly_parse`] and not have been freed.
void mixres_poly_free(struct MixresPoly *p);

// Canonical text of the polynomial; free with [`mixres_string_free`].
//
// # Safety
// `p` must be a live handle and `out` a valid pointer.
enum MixresStatus mixres_poly_render(const struct MixresPoly *p, char **out);

// # Safety
// `p` must be a live handle and `out` a valid pointer.
enum MixresStatus mixres_poly_num_vars(const struct MixresPoly *p, size_t *out);

// # Safety
// `p` must be a live handle and `out` a valid pointer.
enum MixresStatus mixres_poly_term_count(const struct MixresPoly *p, size_t *out);

// `f(z, z̄)` at the point with coordinates `re[j] + i·im[j]`.
//
// # Safety
// `re` and `im` must each hold `n` doubles; the outputs must be valid.
enum MixresStatus mixres_poly_evaluate(const struct MixresPoly *p,
                                       const double *re,
                                       const double *im,
                                       size_t n,
                                       double *out_re,
                                       double *out_im);

// `d(P)` for the weight vector of length `n`.
//
// # Safety
// `weight` must hold `n` integers; `out` must be valid.
enum MixresStatus mixres_weight_min(const struct MixresPoly *p,
                                    const int64_t *weight,
                                    size_t n,
                                    int64_t *out);

// Radial and polar degree of the face function `f_P`.
//
// # Safety
// `weight` must hold `n` integers; `out` must be valid.
enum MixresStatus mixres_face_degrees(const struct MixresPoly *p,
                                      const int64_t *weight,
                                      size_t n,
                                      struct MixresFaceDegrees *out);

// The `analyze` JSON report of a convenient germ.
//
// # Safety
// `p` must be a live handle and `out` a valid pointer.
enum MixresStatus mixres_analyze_json(const struct MixresPoly *p, char **out);

// The `certify` JSON report: the analysis plus the smoothness certificate
// of the canonical subdivision. Same inputs and seed give the same bytes.
//
// # Safety
// `p` must be a live handle and `out` a valid pointer.
enum MixresStatus mixres_certify_json(const struct MixresPoly *p,
                                      size_t samples,
                                      uint64_t seed,
                                      char **out);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void mixres_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MIXRES_H */
