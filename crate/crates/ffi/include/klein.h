#ifndef KLEIN_H
#define KLEIN_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum KleinStatus {
  KLEIN_STATUS_OK = 0,
  KLEIN_STATUS_NULL_POINTER = 1,
  KLEIN_STATUS_INVALID_UTF8 = 2,
  KLEIN_STATUS_PARSE_ERROR = 3,
  KLEIN_STATUS_INVALID_ARGUMENT = 4,
  /**
   * An operation's precondition failed, e.g. rep type of a non-invariant ideal.
   */
  KLEIN_STATUS_PRECONDITION = 5,
  KLEIN_STATUS_DEGREE_CAP = 6,
  KLEIN_STATUS_PANIC = 7,
} KleinStatus;

typedef enum KleinRepType {
  KLEIN_REP_TYPE_TRIVIAL = 0,
  KLEIN_REP_TYPE_NONTRIVIAL = 1,
} KleinRepType;

/**
 * A homogeneous ideal of `F2[a,b]`.
 */
typedef struct KleinIdeal KleinIdeal;

/**
 * An element of `F2[a,b]`.
 */
typedef struct KleinPoly KleinPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or null. Valid until the next
 * call into this library on the same thread.
 */
const char *klein_last_error_message(void);

/**
 * Library version, a static string.
 */
const char *klein_version(void);

/**
 * # Safety
 * `s` is null or was returned by this library and not yet freed.
 */
void klein_string_free(char *s);

/**
 * Parse a polynomial such as `"a^2*b + b^3 + 1"`.
 *
 * # Safety
 * `text` is a NUL-terminated string; `out` is writable.
 */
enum KleinStatus klein_poly_parse(const char *text, struct KleinPoly **out);

/**
 * Canonical text form; free with [`klein_string_free`].
 *
 * # Safety
 * `p` is a live handle; `out` is writable.
 */
enum KleinStatus klein_poly_render(const struct KleinPoly *p, char **out);

/**
 * # Safety
 * `p` is null or a live handle, not used afterwards.
 */
void klein_poly_free(struct KleinPoly *p);

/**
 * # Safety
 * `x`, `y` are live handles; `out` is writable.
 */
enum KleinStatus klein_poly_add(const struct KleinPoly *x,
                                const struct KleinPoly *y,
                                struct KleinPoly **out);

/**
 * # Safety
 * `x`, `y` are live handles; `out` is writable.
 */
enum KleinStatus klein_poly_mul(const struct KleinPoly *x,
                                const struct KleinPoly *y,
                                struct KleinPoly **out);

/**
 * # Safety
 * `x` is a live handle; `out` is writable.
 */
enum KleinStatus klein_poly_square(const struct KleinPoly *x, struct KleinPoly **out);

/**
 * Total Steenrod square `a -> a + a^2, b -> b + b^2`.
 *
 * # Safety
 * `x` is a live handle; `out` is writable.
 */
enum KleinStatus klein_poly_total_sq(const struct KleinPoly *x, struct KleinPoly **out);

/**
 * `a -> b, b -> a + b`.
 *
 * # Safety
 * `x` is a live handle; `out` is writable.
 */
enum KleinStatus klein_poly_phi(const struct KleinPoly *x, struct KleinPoly **out);

/**
 * # Safety
 * `x`, `y` are live handles; `out` is writable.
 */
enum KleinStatus klein_poly_equal(const struct KleinPoly *x, const struct KleinPoly *y, bool *out);

/**
 * Ideal generated by `count` homogeneous forms given as strings.
 *
 * # Safety
 * `generators` points to `count` NUL-terminated strings; `out` is writable.
 */
enum KleinStatus klein_ideal_new(const char *const *generators,
                                 size_t count,
                                 struct KleinIdeal **out);

/**
 * # Safety
 * `j` is null or a live handle, not used afterwards.
 */
void klein_ideal_free(struct KleinIdeal *j);

/**
 * Two minimal generators with no common factor. An ideal that needs more
 * than two generators is not a parameter ideal.
 *
 * # Safety
 * `j` is a live handle; `out` is writable.
 */
enum KleinStatus klein_ideal_is_parameter(const struct KleinIdeal *j, bool *out);

/**
 * # Safety
 * `j` is a live handle; `out` is writable.
 */
enum KleinStatus klein_ideal_is_steenrod_closed(const struct KleinIdeal *j, bool *out);

/**
 * # Safety
 * `j` is a live handle; `out` is writable.
 */
enum KleinStatus klein_ideal_is_c3_invariant(const struct KleinIdeal *j, bool *out);

/**
 * # Safety
 * `j`, `f` are live handles; `out` is writable.
 */
enum KleinStatus klein_ideal_contains(const struct KleinIdeal *j,
                                      const struct KleinPoly *f,
                                      bool *out);

/**
 * Action of `phi` on the minimal generators. `KLEIN_STATUS_PRECONDITION`
 * unless the ideal is a `C3`-invariant parameter ideal.
 *
 * # Safety
 * `j` is a live handle; `out` is writable.
 */
enum KleinStatus klein_ideal_rep_type(const struct KleinIdeal *j, enum KleinRepType *out);

/**
 * Classification report for degree `n` as JSON. `workers = 0` picks the
 * available parallelism.
 *
 * # Safety
 * `out` is writable.
 */
enum KleinStatus klein_search_degree_json(uint32_t n, uint32_t workers, char **out);

/**
 * Admissible degree pairs up to `bound` as CSV.
 *
 * # Safety
 * `out` is writable.
 */
enum KleinStatus klein_admissible_csv(uint64_t bound, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KLEIN_H */
