#ifndef RECTIFLIP_H
#define RECTIFLIP_H

/* C interface to the rectiflip library. Every function returns an rf_status;
 * on failure rf_last_error() describes the problem for the calling thread.
 * Strings returned through char** are owned by the caller and released with
 * rf_string_free. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(RECTIFLIP_BUILDING)
#define RF_API __attribute__((visibility("default")))
#else
#define RF_API
#endif

typedef enum rf_status {
  RF_OK = 0,
  RF_E_INVALID_ARGUMENT,
  RF_E_DUPLICATE_X,
  RF_E_DUPLICATE_Y,
  RF_E_POINT_OUTSIDE_RECT,
  RF_E_ILLEGAL_FLIP,
  RF_E_ILLEGAL_ROTATE,
  RF_E_INVALID_DIRECTION,
  RF_E_NOT_DIAGONAL,
  RF_E_NOT_COLLINEAR,
  RF_E_PHASE_PRECONDITION,
  RF_E_STRIP_TOO_LARGE,
  RF_E_AUDIT_VIOLATION,
  RF_E_LIMIT_EXCEEDED,
  RF_E_DISCONNECTED,
  RF_E_UNKNOWN_KEY,
  RF_E_STRATEGY_MISMATCH,
  RF_E_PARSE,
  RF_E_IO,
  RF_E_INVALID_STATE,
  RF_E_INTERNAL
} rf_status;

/* Point set plus a current state: a rectangulation, or a convex subdivision
 * for instances in convex mode. */
typedef struct rf_instance rf_instance;
/* Outcome of one canonicalization run. */
typedef struct rf_result rf_result;

RF_API const char* rf_last_error(void);
RF_API const char* rf_status_name(rf_status status);
RF_API const char* rf_version(void);
RF_API void rf_string_free(char* s);

/* Instance JSON as written by rf_instance_to_json. */
RF_API rf_status rf_instance_from_json(const char* json, rf_instance** out);
/* Generator spec "family:size[:seed][:pad=N]" with family diagonal,
 * random-permutation, bitreversal or collinear (convex mode). */
RF_API rf_status rf_instance_generate(const char* spec, rf_instance** out);
RF_API void rf_instance_free(rf_instance* inst);
RF_API rf_status rf_instance_to_json(const rf_instance* inst, char** out);
RF_API rf_status rf_instance_size(const rf_instance* inst, size_t* n);
RF_API rf_status rf_instance_is_convex(const rf_instance* inst, int* convex);

/* Replaces the current state: "vertical", "horizontal" (rectilinear only) or
 * "walk", a seeded random walk of 5n legal moves from the vertical state. */
RF_API rf_status rf_instance_set_start(rf_instance* inst, const char* start, uint64_t seed);
/* Full validity check of the current state; RF_E_INVALID_STATE when it fails.
 * report (optional) receives a JSON object with the violations. */
RF_API rf_status rf_instance_validate(const rf_instance* inst, char** report);

/* Strategies: "general", "diagonal" (rectilinear); "convex", "collinear"
 * (convex mode). NULL picks general or convex. With validate set every
 * intermediate state is checked. */
RF_API rf_status rf_canonicalize(const rf_instance* inst, const char* strategy, int validate, rf_result** out);
RF_API void rf_result_free(rf_result* res);
RF_API rf_status rf_result_ops(const rf_result* res, size_t* ops);
/* 1 when the run met its strategy's guarantee: 12n ops (diagonal), 8n ops
 * (collinear), or the per-round shrink factor (general, convex). */
RF_API rf_status rf_result_bound_ok(const rf_result* res, int* ok);
/* {n, strategy, ops, rounds, ops_per_n, ops_per_nlogn, max_weight} */
RF_API rf_status rf_result_stats_json(const rf_result* res, char** out);
RF_API rf_status rf_result_stats_csv(const rf_result* res, int header, char** out);
RF_API rf_status rf_result_trace_jsonl(const rf_result* res, char** out);
RF_API rf_status rf_result_final_json(const rf_result* res, char** out);

/* Replays a JSONL trace from the current state, checking every step.
 * final_json (optional) receives the resulting instance. */
RF_API rf_status rf_replay(const rf_instance* inst, const char* trace_jsonl, char** final_json);

/* Saturation audit of a trace on the bit-reversal set P_k; k <= 0 infers
 * k = floor(log2 n). csv receives one row per operation and summary a JSON
 * object. Returns RF_E_AUDIT_VIOLATION when a per-operation bound fails. */
RF_API rf_status rf_audit(const rf_instance* inst, int k, const char* trace_jsonl, char** csv, char** summary);

/* Flip graph of the instance's point set:
 * {nodes, edges, diameter, count, connected, truncated[, edge_list]}. */
RF_API rf_status rf_enumerate(const rf_instance* inst, size_t node_limit, int with_edges, char** out);

/* SVG of the current state, or of frame `frame` of a trace replayed from it
 * (0 = start). boxes_k > 0 overlays the boxes of P_k. */
RF_API rf_status rf_render_svg(const rf_instance* inst, const char* trace_jsonl, size_t frame, int boxes_k,
                               char** svg);

#ifdef __cplusplus
}
#endif

#endif
