#ifndef QGRAPH_H
#define QGRAPH_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QgSeriesKind {
  QG_SERIES_KIND_TL = 0,
  QG_SERIES_KIND_FC = 1,
  QG_SERIES_KIND_DIHEDRAL = 2,
  QG_SERIES_KIND_CYCLIC = 3,
  QG_SERIES_KIND_CUBE = 4,
} QgSeriesKind;

typedef enum QgStatus {
  QG_STATUS_OK = 0,
  QG_STATUS_NULL_POINTER = 1,
  QG_STATUS_INVALID_UTF8 = 2,
  QG_STATUS_PARSE_ERROR = 3,
  QG_STATUS_UNKNOWN_NAME = 4,
  QG_STATUS_INVALID_ARGUMENT = 5,
  QG_STATUS_BUFFER_TOO_SMALL = 6,
  QG_STATUS_OVERFLOW = 7,
  /**
   * Closure stopped at a basis cap; outputs are lower bounds.
   */
  QG_STATUS_CAPPED = 8,
  QG_STATUS_PANIC = 9,
} QgStatus;

/**
 * Opaque graph handle.
 */
typedef struct QgGraph QgGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse a graph from the text format.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum QgStatus qg_graph_parse(const char *text, struct QgGraph **out);

/**
 * Look up a built-in graph such as `"cube"` or `"ngon-5"`.
 *
 * # Safety
 * `name` must be a nul-terminated string and `out` a valid pointer.
 */
enum QgStatus qg_graph_named(const char *name, struct QgGraph **out);

/**
 * Release a graph; null is ignored.
 *
 * # Safety
 * `graph` must come from this library and not be used afterwards.
 */
void qg_graph_free(struct QgGraph *graph);

/**
 * # Safety
 * `graph` must be a live handle and `out` a valid pointer.
 */
enum QgStatus qg_graph_vertex_count(const struct QgGraph *graph, size_t *out);

/**
 * Full analysis as canonical JSON, released with [`qg_string_free`]. With
 * `run_closure` false the level arguments are ignored.
 *
 * # Safety
 * `graph` must be a live handle and `out_json` a valid pointer.
 */
enum QgStatus qg_analyze_json(const struct QgGraph *graph,
                              uint32_t max_level,
                              uint32_t buffer,
                              bool run_closure,
                              char **out_json);

/**
 * Closure dimensions `c_0..c_max_level` into `out`, which must hold
 * `max_level + 1` entries.
 *
 * # Safety
 * `graph` must be a live handle and `out` valid for `len` writes.
 */
enum QgStatus qg_closure_dims(const struct QgGraph *graph,
                              uint32_t max_level,
                              uint32_t buffer,
                              uint64_t *out,
                              size_t len);

/**
 * Coefficients `c_0..c_terms` of a closed-form series into `out`, which
 * must hold `terms + 1` entries. `parameter` is ignored for the cube.
 *
 * # Safety
 * `out` must be valid for `len` writes.
 */
enum QgStatus qg_series_coefficients(enum QgSeriesKind kind,
                                     uint64_t parameter,
                                     size_t terms,
                                     uint64_t *out,
                                     size_t len);

/**
 * Release a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void qg_string_free(char *s);

/**
 * Message for the last failure on this thread; valid until the next call
 * that fails on the same thread. Never null.
 */
const char *qg_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QGRAPH_H */
