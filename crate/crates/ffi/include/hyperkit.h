#ifndef HYPERKIT_H
#define HYPERKIT_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result of every fallible call.
 */
typedef enum HkStatus {
  HK_STATUS_OK = 0,
  HK_STATUS_NULL_POINTER = 1,
  HK_STATUS_INVALID_ARGUMENT = 2,
  HK_STATUS_PARSE = 3,
  HK_STATUS_AXIOM = 4,
  HK_STATUS_NUMERICAL = 5,
  HK_STATUS_PRECONDITION = 6,
  HK_STATUS_MISMATCH = 7,
  HK_STATUS_BUFFER_TOO_SMALL = 8,
  HK_STATUS_PANIC = 9,
} HkStatus;

/**
 * Opaque hypergroupoid.
 */
typedef struct HkGroupoid HkGroupoid;

/**
 * Opaque hypergroup table.
 */
typedef struct HkHypergroup HkHypergroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *hk_version(void);

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *hk_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void hk_string_free(char *s);

/**
 * Loads a builtin table such as `"ghj"` or `"conj-s3"`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum HkStatus hk_hypergroup_builtin(const char *name, struct HkHypergroup **out);

/**
 * Parses and validates a hypergroup JSON document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum HkStatus hk_hypergroup_parse(const char *json, double tol, struct HkHypergroup **out);

/**
 * Two-element hypergroup `k1^2 = lambda k0 + (1 - lambda) k1`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum HkStatus hk_hypergroup_two_element(double lambda, struct HkHypergroup **out);

/**
 * # Safety
 * `h` must come from this library and not have been freed already.
 */
void hk_hypergroup_free(struct HkHypergroup *h);

/**
 * Number of basis elements, or 0 for a null handle.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
size_t hk_hypergroup_size(const struct HkHypergroup *h);

/**
 * Checks every axiom; `passed` receives the verdict and `report_json`, if
 * non-null, a validation-report document.
 *
 * # Safety
 * `h` must be a live handle, `passed` valid, `report_json` null or valid.
 */
enum HkStatus hk_hypergroup_validate(const struct HkHypergroup *h,
                                     double tol,
                                     bool *passed,
                                     char **report_json);

/**
 * Coefficients of `k_a k_b`, written to `out[0..size]`.
 *
 * # Safety
 * `h` must be a live handle and `out` hold `capacity` doubles.
 */
enum HkStatus hk_hypergroup_multiply(const struct HkHypergroup *h,
                                     size_t a,
                                     size_t b,
                                     double *out,
                                     size_t capacity);

/**
 * Weights `1 / lambda[i][i*][unit]`.
 *
 * # Safety
 * `h` must be a live handle and `out` hold `capacity` doubles.
 */
enum HkStatus hk_hypergroup_weights(const struct HkHypergroup *h,
                                    double tol,
                                    double *out,
                                    size_t capacity);

/**
 * Normalized Haar measure.
 *
 * # Safety
 * `h` must be a live handle and `out` hold `capacity` doubles.
 */
enum HkStatus hk_hypergroup_haar(const struct HkHypergroup *h,
                                 double tol,
                                 double *out,
                                 size_t capacity);

/**
 * # Safety
 * `h` must be a live handle and `out` valid.
 */
enum HkStatus hk_hypergroup_is_commutative(const struct HkHypergroup *h, double tol, bool *out);

/**
 * Canonical JSON document of the table.
 *
 * # Safety
 * `h` must be a live handle and `out` valid.
 */
enum HkStatus hk_hypergroup_serialize(const struct HkHypergroup *h, char **out);

/**
 * Character analysis document: characters, weights, orthogonality defect
 * and the dual hypergroup (or the offending coefficient).
 *
 * # Safety
 * `h` must be a live handle and `out` valid.
 */
enum HkStatus hk_hypergroup_characters(const struct HkHypergroup *h,
                                       double tol,
                                       uint64_t seed,
                                       char **out);

/**
 * Searches fusion rules `f1^2 = f0 + n f1`, `n <= bound`, whose rescaling
 * is the two-element hypergroup with parameter `lambda`. On a match
 * `found` is set and `n11_0`, `n11_1` receive the coefficients.
 *
 * # Safety
 * The output pointers must be valid.
 */
enum HkStatus hk_fusion_realizable_two_element(double lambda,
                                               uint64_t bound,
                                               bool *found,
                                               uint64_t *n11_0,
                                               uint64_t *n11_1);

/**
 * Loads a builtin hypergroupoid such as `"ising"` or `"s3-cosets"`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum HkStatus hk_groupoid_builtin(const char *name, struct HkGroupoid **out);

/**
 * One-object hypergroupoid of a hypergroup.
 *
 * # Safety
 * `h` must be a live handle and `out` valid.
 */
enum HkStatus hk_groupoid_from_hypergroup(const struct HkHypergroup *h, struct HkGroupoid **out);

/**
 * # Safety
 * `g` must come from this library and not have been freed already.
 */
void hk_groupoid_free(struct HkGroupoid *g);

/**
 * Juxtaposes the arrows named by `labels[0..count]` from left to right and
 * returns a boundary-state document with every partial product.
 *
 * # Safety
 * `g` must be a live handle, `labels` point to `count` NUL-terminated
 * strings and `out` be valid.
 */
enum HkStatus hk_groupoid_juxtapose(const struct HkGroupoid *g,
                                    const char *const *labels,
                                    size_t count,
                                    char **out);

/**
 * Admissible-indices document for values `1 + sum 4cos^2(pi/n)` up to
 * `bound` with `3 <= n <= n_max`.
 *
 * # Safety
 * `out` must be valid.
 */
enum HkStatus hk_enumerate_admissible(double bound, uint32_t n_max, double tol, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPERKIT_H */
