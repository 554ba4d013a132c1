/* C interface to the qcube distance-coloring library. */

#ifndef QCUBE_H
#define QCUBE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible function.
 */
typedef enum QcubeStatus {
  QCUBE_STATUS_OK = 0,
  QCUBE_STATUS_NULL_POINTER = 1,
  QCUBE_STATUS_INVALID_ARGUMENT = 2,
  QCUBE_STATUS_UNSUPPORTED = 3,
  QCUBE_STATUS_CONSTRUCTION_FAILED = 4,
  QCUBE_STATUS_FORMAT_ERROR = 5,
  QCUBE_STATUS_IO_ERROR = 6,
} QcubeStatus;

/**
 * Distance constraint: conflicting pairs lie at distance <= d or exactly d.
 */
typedef enum QcubeMode {
  QCUBE_MODE_AT_MOST = 0,
  QCUBE_MODE_EXACTLY = 1,
} QcubeMode;

/**
 * Opaque handle to a linear code over a finite field.
 */
typedef struct QcubeCode QcubeCode;

/**
 * Opaque handle to a coloring of the q-ary n-cube.
 */
typedef struct QcubeColoring QcubeColoring;

/**
 * Opaque handle to a finite field GF(p^m).
 */
typedef struct QcubeField QcubeField;

/**
 * Field element, encoded as an integer below the field order.
 */
typedef uint16_t QcubeElem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null when the last
 * call succeeded. The caller owns the returned string.
 *
 * # Safety
 * The returned pointer must be released with `qcube_string_free`.
 */
char *qcube_last_error(void);

/**
 * Releases a string obtained from this library. Null is ignored.
 *
 * # Safety
 * `s` must have been returned by `qcube_last_error` and not freed before.
 */
void qcube_string_free(char *s);

/**
 * Builds the canonical field GF(p^m) and stores the handle in `out`.
 *
 * # Safety
 * `out` must point to writable storage for one pointer.
 */
enum QcubeStatus qcube_field_new(uint64_t p, uint32_t m, struct QcubeField **out);

/**
 * Builds the canonical field of prime-power order q.
 *
 * # Safety
 * `out` must point to writable storage for one pointer.
 */
enum QcubeStatus qcube_field_from_order(uint64_t q, struct QcubeField **out);

/**
 * Releases a field handle. Null is ignored.
 *
 * # Safety
 * `field` must have come from a qcube constructor and not be freed twice.
 */
void qcube_field_free(struct QcubeField *field);

/**
 * Stores the field order q = p^m in `out`.
 *
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
enum QcubeStatus qcube_field_order(const struct QcubeField *field, uint64_t *out);

/**
 * Stores a + b in `out`.
 *
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
enum QcubeStatus qcube_field_add(const struct QcubeField *field,
                                 QcubeElem a,
                                 QcubeElem b,
                                 QcubeElem *out);

/**
 * Stores a * b in `out`.
 *
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
enum QcubeStatus qcube_field_mul(const struct QcubeField *field,
                                 QcubeElem a,
                                 QcubeElem b,
                                 QcubeElem *out);

/**
 * Stores the multiplicative inverse of a in `out`; fails for a = 0.
 *
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
enum QcubeStatus qcube_field_inv(const struct QcubeField *field, QcubeElem a, QcubeElem *out);

/**
 * Builds the Hamming code of redundancy r over the field.
 *
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
enum QcubeStatus qcube_hamming_code(const struct QcubeField *field,
                                    uint32_t r,
                                    struct QcubeCode **out);

/**
 * Builds the simplex code of dimension r over the field.
 *
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
enum QcubeStatus qcube_simplex_code(const struct QcubeField *field,
                                    uint32_t r,
                                    struct QcubeCode **out);

/**
 * Builds the greedy length-n code with minimum distance at least d + 1.
 *
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
enum QcubeStatus qcube_gv_code(const struct QcubeField *field,
                               uint32_t n,
                               uint32_t d,
                               struct QcubeCode **out);

/**
 * Builds the greedy length-n code with no codeword of weight exactly d.
 *
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
enum QcubeStatus qcube_forbidden_code(const struct QcubeField *field,
                                      uint32_t n,
                                      uint32_t d,
                                      struct QcubeCode **out);

/**
 * Releases a code handle. Null is ignored.
 *
 * # Safety
 * `code` must have come from a qcube constructor and not be freed twice.
 */
void qcube_code_free(struct QcubeCode *code);

/**
 * Stores the code length and dimension in `n` and `k`.
 *
 * # Safety
 * `code` must be a live handle; `n` and `k` must be writable.
 */
enum QcubeStatus qcube_code_params(const struct QcubeCode *code, uint32_t *n, uint32_t *k);

/**
 * Stores the minimum nonzero codeword weight in `out`.
 *
 * # Safety
 * `code` must be a live handle; `out` must be writable.
 */
enum QcubeStatus qcube_code_min_distance(const struct QcubeCode *code, uint32_t *out);

/**
 * Colors the cube of the code's length by coset membership, for the given
 * distance parameter and mode.
 *
 * # Safety
 * `code` must be a live handle; `out` must be writable.
 */
enum QcubeStatus qcube_coset_coloring(const struct QcubeCode *code,
                                      uint32_t d,
                                      enum QcubeMode mode,
                                      struct QcubeColoring **out);

/**
 * Colors Q_n(q) by the digit-sum matrix; valid at distance at most 2 for
 * prime q.
 *
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
enum QcubeStatus qcube_m_matrix_coloring(const struct QcubeField *field,
                                         uint32_t n,
                                         struct QcubeColoring **out);

/**
 * Colors Q_n(q) with q colors so that vertices at distance exactly 1 differ.
 *
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
enum QcubeStatus qcube_exact_d1_coloring(const struct QcubeField *field,
                                         uint32_t n,
                                         struct QcubeColoring **out);

/**
 * Colors Q_n(q) with q colors so that vertices at distance exactly n differ.
 *
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
enum QcubeStatus qcube_slab_coloring(const struct QcubeField *field,
                                     uint32_t n,
                                     struct QcubeColoring **out);

/**
 * Releases a coloring handle. Null is ignored.
 *
 * # Safety
 * `coloring` must have come from a qcube constructor and not be freed twice.
 */
void qcube_coloring_free(struct QcubeColoring *coloring);

/**
 * Stores the palette size in `out`.
 *
 * # Safety
 * `coloring` must be a live handle; `out` must be writable.
 */
enum QcubeStatus qcube_coloring_colors(const struct QcubeColoring *coloring, uint32_t *out);

/**
 * Stores the number of vertices in `out`.
 *
 * # Safety
 * `coloring` must be a live handle; `out` must be writable.
 */
enum QcubeStatus qcube_coloring_vertex_count(const struct QcubeColoring *coloring, uint64_t *out);

/**
 * Stores the color of the vertex with the given rank in `out`.
 *
 * # Safety
 * `coloring` must be a live handle; `out` must be writable.
 */
enum QcubeStatus qcube_coloring_label(const struct QcubeColoring *coloring,
                                      uint64_t rank,
                                      uint32_t *out);

/**
 * Scans the coloring for conflicts. On a clean scan `valid` is 1 and the
 * remaining fields are 0; otherwise `valid` is 0 and the least conflicting
 * pair and its distance are stored.
 *
 * # Safety
 * `coloring` must be a live handle; the out-parameters must be writable.
 */
enum QcubeStatus qcube_coloring_verify(const struct QcubeColoring *coloring,
                                       int32_t *valid,
                                       uint64_t *rank_a,
                                       uint64_t *rank_b,
                                       uint64_t *distance);

/**
 * Chromatic number search. `max_nodes` of 0 selects the default budget.
 * When the search finishes, `is_exact` is 1 and both bracket ends hold the
 * value; otherwise they hold the proven bracket.
 *
 * # Safety
 * `field` must be a live handle; the out-parameters must be writable.
 */
enum QcubeStatus qcube_chromatic_number(const struct QcubeField *field,
                                        uint32_t n,
                                        uint32_t d,
                                        enum QcubeMode mode,
                                        uint64_t max_nodes,
                                        uint64_t *lower,
                                        uint64_t *upper,
                                        int32_t *is_exact);

/**
 * Maximum pairwise-conflicting vertex set size, reported like
 * `qcube_chromatic_number`.
 *
 * # Safety
 * `field` must be a live handle; the out-parameters must be writable.
 */
enum QcubeStatus qcube_max_clique(const struct QcubeField *field,
                                  uint32_t n,
                                  uint32_t d,
                                  enum QcubeMode mode,
                                  uint64_t max_nodes,
                                  uint64_t *lower,
                                  uint64_t *upper,
                                  int32_t *is_exact);

/**
 * Best size of a length-n code with minimum distance at least d, reported
 * like `qcube_chromatic_number`.
 *
 * # Safety
 * `field` must be a live handle; the out-parameters must be writable.
 */
enum QcubeStatus qcube_max_code_size(const struct QcubeField *field,
                                     uint32_t n,
                                     uint32_t d,
                                     uint64_t max_nodes,
                                     uint64_t *lower,
                                     uint64_t *upper,
                                     int32_t *is_exact);

/**
 * Best closed-form palette bounds. `has_lower` and `has_upper` are 1 when
 * the corresponding bound exists for these parameters.
 *
 * # Safety
 * `field` must be a live handle; the out-parameters must be writable.
 */
enum QcubeStatus qcube_palette_bounds(const struct QcubeField *field,
                                      uint32_t n,
                                      uint32_t d,
                                      enum QcubeMode mode,
                                      uint64_t *lower,
                                      uint64_t *upper,
                                      int32_t *has_lower,
                                      int32_t *has_upper);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QCUBE_H */
