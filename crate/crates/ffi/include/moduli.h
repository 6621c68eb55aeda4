#ifndef MODULI_H
#define MODULI_H

/* Generated by cbindgen from moduli-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes shared by every fallible entry point.
 */
typedef enum {
  MDL_STATUS_OK = 0,
  MDL_STATUS_NULL_POINTER = 1,
  MDL_STATUS_INVALID_ARGUMENT = 2,
  MDL_STATUS_DEGENERATE = 3,
  MDL_STATUS_NUMERIC_FAILURE = 4,
  MDL_STATUS_BUDGET_EXCEEDED = 5,
  MDL_STATUS_INCONSISTENT = 6,
  MDL_STATUS_BAD_ENCODING = 7,
  MDL_STATUS_VERIFICATION_FAILED = 8,
  MDL_STATUS_INTERNAL_PANIC = 9,
} MdlStatus;

/**
 * Opaque labeled graph handle.
 */
typedef struct MdlGraph MdlGraph;

/**
 * Opaque point-configuration handle.
 */
typedef struct MdlPoints MdlPoints;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Description of the most recent error on this thread. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *mdl_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *mdl_version(void);

/**
 * Release a string returned by this library.
 */
void mdl_string_free(char *ptr);

/**
 * New graph on `n` vertices with no edges.
 */
MdlStatus mdl_graph_new(uintptr_t n, MdlGraph **out);

void mdl_graph_free(MdlGraph *graph);

MdlStatus mdl_graph_set_edge(MdlGraph *graph, uintptr_t i, uintptr_t j, bool present);

MdlStatus mdl_graph_has_edge(const MdlGraph *graph, uintptr_t i, uintptr_t j, bool *out);

MdlStatus mdl_graph_vertex_count(const MdlGraph *graph, uintptr_t *out);

MdlStatus mdl_graph_edge_count(const MdlGraph *graph, uintptr_t *out);

MdlStatus mdl_graph_from_json(const char *json, MdlGraph **out);

MdlStatus mdl_graph_to_json(const MdlGraph *graph, char **out);

/**
 * New configuration of `n` points in `R^d` from a row-major coordinate
 * buffer of length `n * d`.
 */
MdlStatus mdl_points_new(uintptr_t d, uintptr_t n, const double *coords, MdlPoints **out);

void mdl_points_free(MdlPoints *points);

MdlStatus mdl_points_from_json(const char *json, MdlPoints **out);

MdlStatus mdl_points_to_json(const MdlPoints *points, char **out);

MdlStatus mdl_points_dimension(const MdlPoints *points, uintptr_t *out);

MdlStatus mdl_points_count(const MdlPoints *points, uintptr_t *out);

/**
 * Geometric graph of a configuration. `out_degenerate` reports whether some
 * pair sits within `tol` of squared distance 1.
 */
MdlStatus mdl_geometric_graph(const MdlPoints *points,
                              double tol,
                              MdlGraph **out_graph,
                              bool *out_degenerate);

/**
 * Minimum over pairs of `| squared distance - 1 |`.
 */
MdlStatus mdl_discriminant_margin(const MdlPoints *points, double *out);

/**
 * Sign vector of a nondegenerate configuration, written as `+1`/`-1` into a
 * caller buffer of length `n (n - 1) / 2` (canonical pair order).
 */
MdlStatus mdl_sign_condition(const MdlPoints *points, double tol, int8_t *out_signs, uintptr_t len);

/**
 * Realize a labeled graph as a nondegenerate geometric graph in `R^dim`.
 */
MdlStatus mdl_realize(const MdlGraph *graph, uintptr_t dim, double eps, MdlPoints **out);

/**
 * Rigid-isotopy witness between two realizations of one graph; writes the
 * minimum discriminant margin seen along the verified path.
 */
MdlStatus mdl_isotopy_witness(const MdlPoints *p0,
                              const MdlPoints *p1,
                              const MdlPoints *r,
                              uintptr_t steps,
                              double *out_min_margin);

/**
 * Number of labeled semiorders of `[n]` as a decimal string.
 */
MdlStatus mdl_semiorder_count(uintptr_t n, char **out);

/**
 * Number of labeled unit interval graphs on `n` vertices as a decimal
 * string.
 */
MdlStatus mdl_uig_count(uintptr_t n, char **out);

/**
 * Chamber count of the line arrangement by strict-inequality enumeration.
 */
MdlStatus mdl_line_chamber_count(uintptr_t n, uint64_t *out);

/**
 * Chamber count recovered from the Euler characteristic of the compactified
 * discriminant; also writes the Euler characteristic itself.
 */
MdlStatus mdl_euler_chamber_count(uintptr_t n, uint64_t *out_chambers, int64_t *out_chi);

/**
 * Floer number of a graph on at most four vertices.
 */
MdlStatus mdl_floer_number(const MdlGraph *graph, int64_t *out);

/**
 * Aggregated Poincare polynomial of the complement (n = 3 or 4) as a JSON
 * term list.
 */
MdlStatus mdl_complement_poincare_json(uintptr_t n, char **out);

/**
 * Index-decomposition census for a sign condition (JSON report), sampling
 * `samples` covectors with the given seed.
 */
MdlStatus mdl_index_census_json(uintptr_t d,
                                const char *sigma_json,
                                double epsilon,
                                uintptr_t samples,
                                uint64_t seed,
                                char **out);

/**
 * Grow the lower-bound family (JSON lines, one member per line).
 */
MdlStatus mdl_family_jsonl(uintptr_t d, uintptr_t n, uint64_t seed, char **out);

/**
 * Log-scale bounds; hypotheses are checked and reported as
 * `InvalidArgument`.
 */
MdlStatus mdl_warren_bound_log(uint64_t n, uint64_t d, double *out);

MdlStatus mdl_isotopy_upper_log(uint64_t n, uint64_t d, double *out);

MdlStatus mdl_isomorphism_lower_log(uint64_t n, uint64_t d, double *out);

/**
 * Run the cross-module oracle equivalences: `level` 0 = quick, 1 = full.
 * Writes the JSON report and returns `VerificationFailed` on any mismatch.
 */
MdlStatus mdl_verify(uint32_t level, uint64_t seed, char **out_report);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* MODULI_H */
