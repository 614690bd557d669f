#ifndef MAGNITUDE_H
#define MAGNITUDE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Success.
 */
#define MAG_OK 0

/**
 * A required pointer argument was NULL, or a string was not valid UTF-8.
 */
#define MAG_ERR_ARGUMENT 1

/**
 * Input failed to parse or validate (bad JSON, bad metric, bad rational).
 */
#define MAG_ERR_PARSE 2

/**
 * Mathematically undefined request (singular scale, assumption violated).
 */
#define MAG_ERR_MATH 3

/**
 * A size or iteration cap was exceeded.
 */
#define MAG_ERR_CAP 4

/**
 * Unexpected internal failure.
 */
#define MAG_ERR_INTERNAL 5

/**
 * An immutable finite metric space (opaque).
 */
typedef struct MagSpace MagSpace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent error on this thread. The pointer stays valid
 * until the next failing call on the same thread; do not free it.
 */
const char *mag_last_error_message(void);

/**
 * Frees a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must have been returned by a function of this library and not freed
 * before.
 */
void mag_string_free(char *s);

/**
 * Frees a space handle. NULL is ignored.
 *
 * # Safety
 * `space` must have been returned by this library and not freed before.
 */
void mag_space_free(struct MagSpace *space);

/**
 * Parses a space from its JSON form
 * (`{"labels": [...], "dist": [["p/q", ...], ...]}`; `"inf"` for infinity).
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be a valid pointer.
 */
int mag_space_from_json(const char *json, struct MagSpace **out);

/**
 * Serializes a space to its canonical JSON form.
 *
 * # Safety
 * `space` must be a live handle; `out` must be a valid pointer.
 */
int mag_space_to_json(const struct MagSpace *space, char **out);

/**
 * Builds the space of `n` points pairwise at distance `r` (`"p/q"`).
 *
 * # Safety
 * `r` must be a NUL-terminated string; `out` must be a valid pointer.
 */
int mag_space_uniform(uintptr_t n, const char *r, struct MagSpace **out);

/**
 * Number of points of a space. Returns 0 for a NULL handle.
 *
 * # Safety
 * `space` must be a live handle or NULL.
 */
uintptr_t mag_space_len(const struct MagSpace *space);

/**
 * Join of two spaces (all cross distances 1; both diameters must be <= 2).
 *
 * # Safety
 * `left` and `right` must be live handles; `out` must be a valid pointer.
 */
int mag_space_join(const struct MagSpace *left,
                   const struct MagSpace *right,
                   struct MagSpace **out);

/**
 * l1 (sum-metric) product of two spaces.
 *
 * # Safety
 * `left` and `right` must be live handles; `out` must be a valid pointer.
 */
int mag_space_product(const struct MagSpace *left,
                      const struct MagSpace *right,
                      struct MagSpace **out);

/**
 * Numeric magnitude `|tX|` at scale `t > 0`.
 *
 * # Safety
 * `space` must be a live handle; `out` must be a valid pointer.
 */
int mag_magnitude(const struct MagSpace *space, double t, double *out);

/**
 * Formal magnitude in canonical text form, e.g. `6 / (1 + 4 q^{1})`.
 *
 * # Safety
 * `space` must be a live handle; `out` must be a valid pointer.
 */
int mag_formal_magnitude(const struct MagSpace *space, char **out);

/**
 * Exact limit of the magnitude function as the scale shrinks to 0:
 * `"p/q"`, `"+inf"`, or `"-inf"`.
 *
 * # Safety
 * `space` must be a live handle; `out` must be a valid pointer.
 */
int mag_small_scale_limit(const struct MagSpace *space, char **out);

/**
 * Full one-point-property report as JSON
 * (`f_n`, `det_d`, `c_n`, `c_n_prime`, `limit`, `one_point`).
 *
 * # Safety
 * `space` must be a live handle; `out` must be a valid pointer.
 */
int mag_one_point_report(const struct MagSpace *space, char **out);

/**
 * Builds a space whose small-scale limit is within `tol` of `target`
 * (both `"p/q"`, target >= 1) and returns the construction record as JSON.
 *
 * # Safety
 * `target` and `tol` must be NUL-terminated strings; `out` must be a valid
 * pointer.
 */
int mag_construct_target(const char *target, const char *tol, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MAGNITUDE_H */
