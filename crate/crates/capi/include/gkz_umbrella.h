#ifndef GKZ_UMBRELLA_H
#define GKZ_UMBRELLA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Opaque matrix handle: the validated configuration A ∈ Z^{d×n}.
 */
typedef struct GkzMatrix GkzMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a matrix handle from row-major entries and validates it (no zero
 * column, full row rank, pointed). On failure returns the validation code
 * and, when `err_json` is non-null, an error document to free with
 * [`gkz_string_free`].
 *
 * # Safety
 *
 * `entries` must point to `num_rows * num_cols` readable `int64_t`s, and
 * `out` must be a valid location to store the handle.
 */
int gkz_matrix_new(const int64_t *entries,
                   uintptr_t num_rows,
                   uintptr_t num_cols,
                   struct GkzMatrix **out,
                   char **err_json);

/**
 * Releases a matrix handle. Null is ignored.
 *
 * # Safety
 *
 * `handle` must have come from [`gkz_matrix_new`] and not been freed yet.
 */
void gkz_matrix_free(struct GkzMatrix *handle);

/**
 * Releases a string returned by any function here. Null is ignored.
 *
 * # Safety
 *
 * `s` must have been returned through an output parameter of this library
 * and not been freed yet.
 */
void gkz_string_free(char *s);

/**
 * The library version as a static string; do not free.
 */
const char *gkz_version(void);

/**
 * The umbrella report (faces with witnesses, facets) as JSON.
 *
 * # Safety
 *
 * `handle` must be a live handle, `weights` a NUL-terminated string, and
 * `out_json` a valid location for the result.
 */
int gkz_umbrella_json(const struct GkzMatrix *handle, const char *weights, char **out_json);

/**
 * The slope report along the chosen coordinate subspace as JSON. `v0` and
 * `vinf` are comma-separated 1-based index lists; null means empty, but at
 * least one must be non-empty.
 *
 * # Safety
 *
 * `handle` must be a live handle and `out_json` a valid result location.
 */
int gkz_slopes_json(const struct GkzMatrix *handle,
                    const char *v0,
                    const char *vinf,
                    char **out_json);

/**
 * The multiplicity table of the L-characteristic cycle as JSON.
 *
 * # Safety
 *
 * `handle` must be a live handle, `weights` a NUL-terminated string, and
 * `out_json` a valid result location.
 */
int gkz_cycle_json(const struct GkzMatrix *handle, const char *weights, char **out_json);

/**
 * The marked Gröbner basis report as JSON. `nmax` overrides the radical
 * witness power budget; pass a negative value for the default (20·n).
 *
 * # Safety
 *
 * `handle` must be a live handle, `weights` a NUL-terminated string, and
 * `out_json` a valid result location.
 */
int gkz_gb_json(const struct GkzMatrix *handle, const char *weights, int64_t nmax, char **out_json);

/**
 * The deterministic SVG picture of a planar configuration (d = 2 only).
 *
 * # Safety
 *
 * `handle` must be a live handle, `weights` a NUL-terminated string, and
 * `out_svg` a valid result location.
 */
int gkz_plot_svg(const struct GkzMatrix *handle, const char *weights, char **out_svg);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* GKZ_UMBRELLA_H */
