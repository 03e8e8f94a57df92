#ifndef POLYVENN_H
#define POLYVENN_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every entry point.
 */
typedef enum PvStatus {
  PV_STATUS_OK = 0,
  PV_STATUS_NULL_POINTER = 1,
  PV_STATUS_INVALID_UTF8 = 2,
  PV_STATUS_PARSE_ERROR = 3,
  PV_STATUS_DEGENERATE = 4,
  PV_STATUS_OUT_OF_RANGE = 5,
  PV_STATUS_INTERNAL = 6,
  PV_STATUS_PANIC = 7,
} PvStatus;

/**
 * A validated family of convex polygons.
 */
typedef struct PvFamily PvFamily;

/**
 * The classification of one family.
 */
typedef struct PvReport PvReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread, or an empty
 * string. Valid until the next call into this library on the same thread.
 */
const char *pv_last_error(void);

/**
 * Library version as a static nul-terminated string.
 */
const char *pv_version(void);

/**
 * Parse a family document (JSON text) into a new handle.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum PvStatus pv_family_from_json(const char *json, struct PvFamily **out);

/**
 * # Safety
 * `family` must come from `pv_family_from_json` and not be used afterwards.
 */
void pv_family_free(struct PvFamily *family);

/**
 * # Safety
 * `family` must be a live handle and `out` a valid pointer.
 */
enum PvStatus pv_family_curve_count(const struct PvFamily *family, size_t *out);

/**
 * Serialize a family back to its document form.
 *
 * # Safety
 * `family` must be a live handle and `out` a valid pointer. Release the
 * string with `pv_string_free`.
 */
enum PvStatus pv_family_to_json(const struct PvFamily *family, char **out);

/**
 * Build and classify the arrangement. With `audit` set and a Venn
 * diagram, the report also carries the per-pair corner audit. Degenerate
 * geometry returns `PV_STATUS_DEGENERATE`.
 *
 * # Safety
 * `family` must be a live handle and `out` a valid pointer.
 */
enum PvStatus pv_verify(const struct PvFamily *family, bool audit, struct PvReport **out);

/**
 * # Safety
 * `report` must come from `pv_verify` and not be used afterwards.
 */
void pv_report_free(struct PvReport *report);

/**
 * # Safety
 * `report` must be a live handle and `out` a valid pointer.
 */
enum PvStatus pv_report_is_venn(const struct PvReport *report, bool *out);

/**
 * # Safety
 * `report` must be a live handle and `out` a valid pointer.
 */
enum PvStatus pv_report_is_simple(const struct PvReport *report, bool *out);

/**
 * Vertex, edge and face counts of the arrangement, the outer face included.
 *
 * # Safety
 * `report` must be a live handle and the out-pointers valid.
 */
enum PvStatus pv_report_counts(const struct PvReport *report,
                               size_t *vertices,
                               size_t *edges,
                               size_t *faces);

/**
 * Number of sign vectors with no face.
 *
 * # Safety
 * `report` must be a live handle and `out` a valid pointer.
 */
enum PvStatus pv_report_missing_regions(const struct PvReport *report, uint64_t *out);

/**
 * # Safety
 * `report` must be a live handle and `out` a valid pointer. Release the
 * string with `pv_string_free`.
 */
enum PvStatus pv_report_to_json(const struct PvReport *report, char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void pv_string_free(char *s);

/**
 * Smallest corner count allowed by the vertex-count argument alone.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PvStatus pv_bounds_lemma2_min_k(uint32_t n, uint64_t *out);

/**
 * Smallest corner count allowed by the corner-counting argument.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PvStatus pv_bounds_theorem_min_k(uint32_t n, uint64_t *out);

/**
 * Largest corner count needed by a known construction.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PvStatus pv_bounds_upper_k(uint32_t n, uint64_t *out);

/**
 * Most vertices `n` convex `k`-gons can have pairwise.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PvStatus pv_bounds_max_vertices(uint32_t n, uint32_t k, uint64_t *out);

/**
 * Most vertices a simple Venn diagram of `n` convex `k`-gons can have.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PvStatus pv_bounds_vertex_cap(uint32_t n, uint32_t k, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLYVENN_H */
