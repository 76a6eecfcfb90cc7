#ifndef POLYASSIGN_H
#define POLYASSIGN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Report flag: decide the incident variant.
 */
#define PA_FLAG_INCIDENT 1

/**
 * Report flag: also run the exhaustive facet-subset check.
 */
#define PA_FLAG_ORACLE 2

/**
 * Status codes. Codes 2 and 3 agree with the CLI exit codes.
 */
typedef enum PaStatus {
  PA_STATUS_OK = 0,
  PA_STATUS_INPUT_ERROR = 2,
  PA_STATUS_INCONSISTENCY = 3,
  PA_STATUS_NULL_POINTER = 4,
  PA_STATUS_INVALID_UTF8 = 5,
  PA_STATUS_OUT_OF_RANGE = 6,
  PA_STATUS_PANIC = 7,
} PaStatus;

typedef enum PaMode {
  /**
   * Match vertices with non-incident facets.
   */
  PA_MODE_NON_INCIDENT = 0,
  /**
   * Match vertices injectively with incident facets.
   */
  PA_MODE_INCIDENT = 1,
} PaMode;

typedef enum PaOutcome {
  PA_OUTCOME_ASSIGNED = 0,
  PA_OUTCOME_NO_ASSIGNMENT = 1,
} PaOutcome;

typedef enum PaSide {
  PA_SIDE_VERTICES = 0,
  PA_SIDE_FACETS = 1,
} PaSide;

/**
 * Opaque matching certificate handle.
 */
typedef struct PaCertificate PaCertificate;

/**
 * Opaque polytope handle.
 */
typedef struct PaPolytope PaPolytope;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Owned by the library.
 */
const char *pa_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `text` must come from this library and not have been freed.
 */
void pa_string_free(char *text);

/**
 * Builds a polytope from a construction expression such as `join(cube(3),cross(3))`.
 *
 * # Safety
 * `expr` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PaStatus pa_polytope_from_expr(const char *expr, struct PaPolytope **out);

/**
 * Builds a polytope from a JSON polytope document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PaStatus pa_polytope_from_document(const char *json, struct PaPolytope **out);

/**
 * # Safety
 * `polytope` must come from a `pa_polytope_from_*` call and not have been freed.
 */
void pa_polytope_free(struct PaPolytope *polytope);

/**
 * Dimension, or 0 for NULL.
 *
 * # Safety
 * `polytope` must be NULL or a live handle.
 */
size_t pa_polytope_dim(const struct PaPolytope *polytope);

/**
 * # Safety
 * `polytope` must be NULL or a live handle.
 */
size_t pa_polytope_n_vertices(const struct PaPolytope *polytope);

/**
 * # Safety
 * `polytope` must be NULL or a live handle.
 */
size_t pa_polytope_n_facets(const struct PaPolytope *polytope);

/**
 * Writes the polytope document as JSON; release with [`pa_string_free`].
 *
 * # Safety
 * `polytope` must be a live handle and `out` a valid pointer.
 */
enum PaStatus pa_polytope_document(const struct PaPolytope *polytope, char **out);

/**
 * Full check report as JSON (see `PA_FLAG_*`); release with [`pa_string_free`].
 *
 * # Safety
 * `polytope` must be a live handle and `out` a valid pointer.
 */
enum PaStatus pa_report_json(const struct PaPolytope *polytope, uint32_t flags, char **out);

/**
 * Decides the assignment question in `mode` and returns a certificate handle.
 *
 * # Safety
 * `polytope` must be a live handle and `out` a valid pointer.
 */
enum PaStatus pa_decide(const struct PaPolytope *polytope,
                        enum PaMode mode,
                        struct PaCertificate **out);

/**
 * # Safety
 * `certificate` must come from [`pa_decide`] and not have been freed.
 */
void pa_certificate_free(struct PaCertificate *certificate);

/**
 * # Safety
 * `certificate` must be a live handle and `out` a valid pointer.
 */
enum PaStatus pa_certificate_outcome(const struct PaCertificate *certificate, enum PaOutcome *out);

/**
 * Number of matched pairs, or 0 for NULL.
 *
 * # Safety
 * `certificate` must be NULL or a live handle.
 */
size_t pa_certificate_matching_len(const struct PaCertificate *certificate);

/**
 * Reads matched pair `index` as (vertex, facet).
 *
 * # Safety
 * `certificate` must be a live handle; `vertex` and `facet` valid pointers.
 */
enum PaStatus pa_certificate_pair(const struct PaCertificate *certificate,
                                  size_t index,
                                  size_t *vertex,
                                  size_t *facet);

/**
 * Size of the Hall witness, 0 when the assignment exists.
 *
 * # Safety
 * `certificate` must be NULL or a live handle.
 */
size_t pa_certificate_witness_len(const struct PaCertificate *certificate);

/**
 * Size of the witness neighborhood, 0 when the assignment exists.
 *
 * # Safety
 * `certificate` must be NULL or a live handle.
 */
size_t pa_certificate_neighborhood_len(const struct PaCertificate *certificate);

/**
 * Copies the witness members into `buffer` (capacity `len`) and reports their side.
 *
 * # Safety
 * `certificate` must be a live handle, `buffer` valid for `len` writes, `side` valid.
 */
enum PaStatus pa_certificate_witness(const struct PaCertificate *certificate,
                                     size_t *buffer,
                                     size_t len,
                                     enum PaSide *side);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLYASSIGN_H */
