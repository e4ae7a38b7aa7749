#ifndef QLL_H
#define QLL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QllStatus {
  QLL_STATUS_OK = 0,
  QLL_STATUS_NULL_POINTER = 1,
  QLL_STATUS_PARSE = 2,
  QLL_STATUS_INVALID_ARGUMENT = 3,
  QLL_STATUS_BUDGET_EXCEEDED = 4,
  QLL_STATUS_UNSUPPORTED = 5,
  QLL_STATUS_INVALID_GROUP = 6,
  QLL_STATUS_IO = 7,
  /**
   * A value does not fit the C type it is returned in.
   */
  QLL_STATUS_OVERFLOW = 8,
  QLL_STATUS_INTERNAL = 9,
} QllStatus;

/**
 * Opaque braid word.
 */
typedef struct QllBraid QllBraid;

/**
 * Opaque finite group.
 */
typedef struct QllGroup QllGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until
 * the next failing call on the same thread.
 */
const char *qll_last_error(void);

/**
 * Library version as a static string.
 */
const char *qll_version(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void qll_string_free(char *s);

/**
 * Parses a whitespace-separated braid word (`"1 -2 1"`) on `strands` strands.
 *
 * # Safety
 * `word` must be a NUL-terminated string and `out` writable.
 */
enum QllStatus qll_braid_parse(const char *word, size_t strands, struct QllBraid **out);

/**
 * # Safety
 * `b` must be NULL or a live handle from `qll_braid_parse`.
 */
void qll_braid_free(struct QllBraid *b);

/**
 * # Safety
 * `b` must be a live braid handle and `out` writable.
 */
enum QllStatus qll_braid_components(const struct QllBraid *b, size_t *out);

/**
 * Jones polynomial of the closure at `t = e^{2πi/ℓ}`.
 *
 * `exact` receives an owned string `cyc(N: c0 c1 ...)` (coefficients of
 * powers of `e^{2πi/N}`) when non-NULL; `re`/`im` receive the complex
 * value when non-NULL.
 *
 * # Safety
 * `b` must be a live braid handle; output pointers must be NULL or writable.
 */
enum QllStatus qll_jones(const struct QllBraid *b,
                         uint32_t ell,
                         char **exact,
                         double *re,
                         double *im);

/**
 * Normalized Alexander polynomial as an owned string, e.g. `t^2 - t + 1`.
 *
 * # Safety
 * `b` must be a live braid handle and `out` writable.
 */
enum QllStatus qll_alexander(const struct QllBraid *b, char **out);

/**
 * # Safety
 * `b` must be a live braid handle and `out` writable.
 */
enum QllStatus qll_determinant(const struct QllBraid *b, uint64_t *out);

/**
 * Dimension of H₁ of the double branched cover with `Z/p` coefficients.
 *
 * # Safety
 * `b` must be a live braid handle and `out` writable.
 */
enum QllStatus qll_double_cover_homology(const struct QllBraid *b, uint64_t p, size_t *out);

/**
 * Arf invariant of a knot; `Unsupported` for links.
 *
 * # Safety
 * `b` must be a live braid handle and `out` writable.
 */
enum QllStatus qll_arf(const struct QllBraid *b, uint8_t *out);

/**
 * Builds a group from a spec such as `"symmetric 3"`, `"Q8"` or `"Z2 x D4"`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` writable.
 */
enum QllStatus qll_group_builtin(const char *spec, struct QllGroup **out);

/**
 * Builds a group from a row-major `order × order` table whose entry
 * `(a, b)` is the index of `a·b`. The axioms are checked.
 *
 * # Safety
 * `table` must point to `order * order` readable entries and `out` be writable.
 */
enum QllStatus qll_group_from_table(const char *name,
                                    const uint32_t *table,
                                    size_t order,
                                    struct QllGroup **out);

/**
 * # Safety
 * `g` must be NULL or a live group handle.
 */
void qll_group_free(struct QllGroup *g);

/**
 * # Safety
 * `g` must be a live group handle and `out` writable.
 */
enum QllStatus qll_group_order(const struct QllGroup *g, size_t *out);

/**
 * Exact number of homomorphisms from the link group to `g`. A `budget`
 * of 0 means the default.
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum QllStatus qll_hom_count(const struct QllBraid *b,
                             const struct QllGroup *g,
                             uint64_t budget,
                             uint64_t *out);

/**
 * Sampled homomorphism count: `estimate ± stderr`, reproducible from `seed`.
 *
 * # Safety
 * Handles must be live; `estimate` and `stderr` writable.
 */
enum QllStatus qll_hom_estimate(const struct QllBraid *b,
                                const struct QllGroup *g,
                                uint64_t samples,
                                uint64_t seed,
                                double *estimate,
                                double *stderr);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QLL_H */
