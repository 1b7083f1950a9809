/*
 * hyperrob: hypergraph robustness labeling and surrogate prediction.
 *
 * C interface over the C++ core: opaque handles, integer status codes,
 * thread-local error messages. Every function returning hr_status leaves
 * outputs untouched on failure; hr_last_error() describes the most recent
 * failure on the calling thread.
 */
#ifndef HYPERROB_H
#define HYPERROB_H

#include <stdint.h>

#if defined(_WIN32)
#define HR_API __declspec(dllexport)
#else
#define HR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hr_status {
    HR_OK = 0,
    HR_ERR_OUT_OF_RANGE_ID = 1,
    HR_ERR_OUT_OF_RANGE_INDEX = 2,
    HR_ERR_EDGE_TOO_SMALL = 3,
    HR_ERR_NOT_A_BIJECTION = 4,
    HR_ERR_INVALID_CONFIG = 5,
    HR_ERR_DISCONNECTED_RETRY_EXCEEDED = 6,
    HR_ERR_INVALID_ORDER = 7,
    HR_ERR_SHAPE_MISMATCH = 8,
    HR_ERR_PARSE = 9,
    HR_ERR_IO = 10,
    HR_ERR_EMPTY_DATASET = 11,
    HR_ERR_INVALID_ARGUMENT = 12,
    HR_ERR_UNKNOWN = 13
} hr_status;

typedef struct hr_hypergraph hr_hypergraph;
typedef struct hr_model hr_model;

HR_API const char* hr_status_name(hr_status status);
HR_API const char* hr_last_error(void);

/* ---- hypergraphs ----
 * Edges arrive flattened: members[] holds all node ids back to back and
 * edge_offsets[] (num_edges + 1 entries) delimits each edge. */
HR_API hr_status hr_hypergraph_create(uint32_t num_nodes, const uint32_t* members,
                                      const uint32_t* edge_offsets, uint32_t num_edges,
                                      hr_hypergraph** out);
HR_API void hr_hypergraph_free(hr_hypergraph* h);
HR_API uint32_t hr_hypergraph_num_nodes(const hr_hypergraph* h);
HR_API uint32_t hr_hypergraph_num_edges(const hr_hypergraph* h);
HR_API hr_status hr_hypergraph_hyperdegree(const hr_hypergraph* h, uint32_t node,
                                           uint32_t* out);
HR_API hr_status hr_hypergraph_cardinality(const hr_hypergraph* h, uint32_t edge,
                                           uint32_t* out);
/* Accepts a dataset record line or a {"num_nodes":..,"edges":[[..]]} object. */
HR_API hr_status hr_hypergraph_from_json_file(const char* path, hr_hypergraph** out);

/* ---- generation ----
 * family: ER | WS | SF | SBM | UF. params_kv: optional "key=value" pairs
 * separated by commas or newlines using the dataset config keys
 * (er_p, ws_k_nn, ws_p_rw, sf_m, sbm_communities, sbm_p_in, sbm_p_out,
 * uf_k, uf_p, card_min, card_max). NULL means family defaults. */
HR_API hr_status hr_generate(const char* family, uint32_t num_nodes, uint64_t seed,
                             const char* params_kv, hr_hypergraph** out);

/* ---- robustness labeling ----
 * attack: "static" | "dynamic" (alpha/beta used by dynamic only).
 * epsilon <= 0 or max_depth <= 0 pick the defaults (1e-4, 10). */
HR_API hr_status hr_label(const hr_hypergraph* h, const char* attack, double alpha,
                          double beta, double epsilon, int max_depth, double* out_r,
                          uint64_t* out_eval_count);
/* out_order must hold num_nodes entries. */
HR_API hr_status hr_static_order(const hr_hypergraph* h, uint32_t* out_order);
HR_API hr_status hr_dynamic_order(const hr_hypergraph* h, double alpha, double beta,
                                  uint32_t* out_order);

/* ---- isomorphism screen ----
 * *out_nonisomorphic: 1 definitive non-isomorphic, 0 possibly isomorphic.
 * Optional per-iteration joint class counts (node_classes/edge_classes,
 * capacity entries each); *out_iterations reports how many were written. */
HR_API hr_status hr_wl_distinguish(const hr_hypergraph* a, const hr_hypergraph* b,
                                   int* out_nonisomorphic, uint32_t* node_classes,
                                   uint32_t* edge_classes, uint32_t capacity,
                                   uint32_t* out_iterations);

/* ---- models ---- */
HR_API hr_status hr_model_load(const char* path, hr_model** out);
HR_API void hr_model_free(hr_model* model);
/* failure_order must hold num_nodes node ids (a permutation). */
HR_API hr_status hr_model_predict(const hr_model* model, const hr_hypergraph* h,
                                  const uint32_t* failure_order, double* out_prediction);

/* ---- pipeline over files ----
 * Configs are flat "key = value" text; overrides_kv (nullable) is applied
 * on top using the same keys, comma or newline separated. */
HR_API hr_status hr_dataset_generate(const char* config_path, const char* overrides_kv,
                                     const char* out_dir, int threads);
HR_API hr_status hr_dataset_relabel(const char* in_jsonl, const char* overrides_kv,
                                    const char* out_jsonl, int threads);
HR_API hr_status hr_train_file(const char* train_jsonl, const char* validation_jsonl,
                               const char* config_path, const char* overrides_kv,
                               const char* model_out_path);
/* Writes one prediction per input record line. */
HR_API hr_status hr_predict_file(const char* model_path, const char* in_jsonl,
                                 const char* out_path);

typedef struct hr_eval_report {
    double mean_abs_error;
    double std_abs_error;
    double baseline_mean_abs_error; /* constant-mean predictor */
    uint64_t sample_count;
    double predict_seconds_total;
    double label_seconds_total; /* 0 when labels come precomputed */
} hr_eval_report;

HR_API hr_status hr_evaluate_file(const char* model_path, const char* test_jsonl,
                                  hr_eval_report* out);

typedef struct hr_bench_report {
    double label_seconds_mean;
    double predict_seconds_mean;
    double speedup; /* labeling mean over prediction mean */
    uint64_t sample_count;
} hr_bench_report;

HR_API hr_status hr_bench_file(const char* model_path, const char* test_jsonl, int threads,
                               hr_bench_report* out);

#ifdef __cplusplus
}
#endif

#endif /* HYPERROB_H */
