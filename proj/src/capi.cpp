#include "hyperrob.h"

#include <charconv>
#include <fstream>
#include <set>
#include <string>

#include "hyperrob/dataset.hpp"
#include "hyperrob/hwl.hpp"

namespace {

thread_local std::string g_last_error;

hr_status map_code(hyperrob::ErrorCode code) {
    using hyperrob::ErrorCode;
    switch (code) {
        case ErrorCode::OutOfRangeId: return HR_ERR_OUT_OF_RANGE_ID;
        case ErrorCode::OutOfRangeIndex: return HR_ERR_OUT_OF_RANGE_INDEX;
        case ErrorCode::EdgeTooSmall: return HR_ERR_EDGE_TOO_SMALL;
        case ErrorCode::NotABijection: return HR_ERR_NOT_A_BIJECTION;
        case ErrorCode::InvalidConfig: return HR_ERR_INVALID_CONFIG;
        case ErrorCode::DisconnectedRetryExceeded: return HR_ERR_DISCONNECTED_RETRY_EXCEEDED;
        case ErrorCode::InvalidOrder: return HR_ERR_INVALID_ORDER;
        case ErrorCode::ShapeMismatch: return HR_ERR_SHAPE_MISMATCH;
        case ErrorCode::ParseError: return HR_ERR_PARSE;
        case ErrorCode::IoError: return HR_ERR_IO;
        case ErrorCode::EmptyDataset: return HR_ERR_EMPTY_DATASET;
        case ErrorCode::InvalidArgument: return HR_ERR_INVALID_ARGUMENT;
    }
    return HR_ERR_UNKNOWN;
}

template <typename Fn>
hr_status guarded(Fn&& fn) {
    try {
        fn();
        return HR_OK;
    } catch (const hyperrob::Error& e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return HR_ERR_UNKNOWN;
    }
}

hr_status fail_argument(const char* message) {
    g_last_error = message;
    return HR_ERR_INVALID_ARGUMENT;
}

hyperrob::AttackSpec make_attack(const char* attack, double alpha, double beta) {
    std::string kind = attack ? attack : "static";
    if (kind != "static" && kind != "dynamic") {
        throw hyperrob::Error(hyperrob::ErrorCode::InvalidArgument,
                              "attack must be static or dynamic");
    }
    hyperrob::AttackSpec spec;
    spec.kind = kind == "dynamic" ? hyperrob::AttackKind::Dynamic
                                  : hyperrob::AttackKind::Static;
    spec.params.alpha = alpha;
    spec.params.beta = beta;
    return spec;
}

hyperrob::KeyValueConfig load_config(const char* config_path, const char* overrides_kv) {
    hyperrob::KeyValueConfig kv;
    if (config_path && *config_path) kv = hyperrob::KeyValueConfig::parse_file(config_path);
    if (overrides_kv && *overrides_kv) kv.apply_overrides(overrides_kv);
    return kv;
}

} // namespace

struct hr_hypergraph {
    hyperrob::Hypergraph value;
};

struct hr_model {
    hyperrob::ModelParameters value;
};

extern "C" {

const char* hr_status_name(hr_status status) {
    switch (status) {
        case HR_OK: return "ok";
        case HR_ERR_OUT_OF_RANGE_ID: return "out_of_range_id";
        case HR_ERR_OUT_OF_RANGE_INDEX: return "out_of_range_index";
        case HR_ERR_EDGE_TOO_SMALL: return "edge_too_small";
        case HR_ERR_NOT_A_BIJECTION: return "not_a_bijection";
        case HR_ERR_INVALID_CONFIG: return "invalid_config";
        case HR_ERR_DISCONNECTED_RETRY_EXCEEDED: return "disconnected_retry_exceeded";
        case HR_ERR_INVALID_ORDER: return "invalid_order";
        case HR_ERR_SHAPE_MISMATCH: return "shape_mismatch";
        case HR_ERR_PARSE: return "parse_error";
        case HR_ERR_IO: return "io_error";
        case HR_ERR_EMPTY_DATASET: return "empty_dataset";
        case HR_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case HR_ERR_UNKNOWN: return "unknown";
    }
    return "unknown";
}

const char* hr_last_error(void) { return g_last_error.c_str(); }

hr_status hr_hypergraph_create(uint32_t num_nodes, const uint32_t* members,
                               const uint32_t* edge_offsets, uint32_t num_edges,
                               hr_hypergraph** out) {
    if (!out || (num_edges > 0 && (!members || !edge_offsets))) {
        return fail_argument("hr_hypergraph_create: null pointer");
    }
    return guarded([&]() {
        std::vector<std::vector<hyperrob::NodeId>> edges(num_edges);
        for (uint32_t e = 0; e < num_edges; ++e) {
            if (edge_offsets[e + 1] < edge_offsets[e]) {
                throw hyperrob::Error(hyperrob::ErrorCode::InvalidArgument,
                                      "edge offsets must be non-decreasing");
            }
            edges[e].assign(members + edge_offsets[e], members + edge_offsets[e + 1]);
        }
        *out = new hr_hypergraph{hyperrob::Hypergraph::from_edge_list(num_nodes, edges)};
    });
}

void hr_hypergraph_free(hr_hypergraph* h) { delete h; }

uint32_t hr_hypergraph_num_nodes(const hr_hypergraph* h) {
    return h ? h->value.num_nodes() : 0;
}

uint32_t hr_hypergraph_num_edges(const hr_hypergraph* h) {
    return h ? h->value.num_edges() : 0;
}

hr_status hr_hypergraph_hyperdegree(const hr_hypergraph* h, uint32_t node, uint32_t* out) {
    if (!h || !out) return fail_argument("hr_hypergraph_hyperdegree: null pointer");
    return guarded([&]() { *out = static_cast<uint32_t>(h->value.hyperdegree(node)); });
}

hr_status hr_hypergraph_cardinality(const hr_hypergraph* h, uint32_t edge, uint32_t* out) {
    if (!h || !out) return fail_argument("hr_hypergraph_cardinality: null pointer");
    return guarded([&]() { *out = static_cast<uint32_t>(h->value.cardinality(edge)); });
}

hr_status hr_hypergraph_from_json_file(const char* path, hr_hypergraph** out) {
    if (!path || !out) return fail_argument("hr_hypergraph_from_json_file: null pointer");
    return guarded([&]() {
        *out = new hr_hypergraph{hyperrob::hypergraph_from_json_file(path)};
    });
}

hr_status hr_generate(const char* family, uint32_t num_nodes, uint64_t seed,
                      const char* params_kv, hr_hypergraph** out) {
    if (!family || !out) return fail_argument("hr_generate: null pointer");
    return guarded([&]() {
        hyperrob::KeyValueConfig kv;
        if (params_kv && *params_kv) kv.apply_overrides(params_kv);
        hyperrob::DatasetConfig dataset = hyperrob::parse_dataset_config(kv);
        hyperrob::GeneratorConfig cfg = dataset.generator;
        cfg.family = hyperrob::family_from_string(family);
        cfg.num_nodes = num_nodes;
        cfg.seed = seed;
        *out = new hr_hypergraph{hyperrob::generate(cfg)};
    });
}

hr_status hr_label(const hr_hypergraph* h, const char* attack, double alpha, double beta,
                   double epsilon, int max_depth, double* out_r, uint64_t* out_eval_count) {
    if (!h || !out_r) return fail_argument("hr_label: null pointer");
    return guarded([&]() {
        hyperrob::QuadratureConfig quadrature;
        if (epsilon > 0.0) quadrature.epsilon = epsilon;
        if (max_depth > 0) quadrature.max_depth = max_depth;
        auto result = hyperrob::label_hypergraph(h->value, make_attack(attack, alpha, beta),
                                                 quadrature);
        *out_r = result.r;
        if (out_eval_count) *out_eval_count = result.eval_count;
    });
}

hr_status hr_static_order(const hr_hypergraph* h, uint32_t* out_order) {
    if (!h || !out_order) return fail_argument("hr_static_order: null pointer");
    return guarded([&]() {
        auto order = hyperrob::static_attack_order(h->value);
        std::copy(order.begin(), order.end(), out_order);
    });
}

hr_status hr_dynamic_order(const hr_hypergraph* h, double alpha, double beta,
                           uint32_t* out_order) {
    if (!h || !out_order) return fail_argument("hr_dynamic_order: null pointer");
    return guarded([&]() {
        auto order = hyperrob::dynamic_failure_order(h->value, {beta, alpha});
        std::copy(order.begin(), order.end(), out_order);
    });
}

hr_status hr_wl_distinguish(const hr_hypergraph* a, const hr_hypergraph* b,
                            int* out_nonisomorphic, uint32_t* node_classes,
                            uint32_t* edge_classes, uint32_t capacity,
                            uint32_t* out_iterations) {
    if (!a || !b || !out_nonisomorphic) return fail_argument("hr_wl_distinguish: null pointer");
    return guarded([&]() {
        hyperrob::WLColoring c1, c2;
        auto verdict = hyperrob::hwl_distinguish(a->value, b->value, c1, c2);
        *out_nonisomorphic = verdict == hyperrob::WlVerdict::NonIsomorphic ? 1 : 0;
        const uint32_t iterations = static_cast<uint32_t>(c1.iterations());
        if (out_iterations) *out_iterations = std::min(iterations, capacity);
        if (node_classes && edge_classes) {
            for (uint32_t k = 0; k < std::min(iterations, capacity); ++k) {
                std::set<hyperrob::WlLabel> nodes(c1.node_labels[k].begin(),
                                                  c1.node_labels[k].end());
                nodes.insert(c2.node_labels[k].begin(), c2.node_labels[k].end());
                std::set<hyperrob::WlLabel> edges(c1.edge_labels[k].begin(),
                                                  c1.edge_labels[k].end());
                edges.insert(c2.edge_labels[k].begin(), c2.edge_labels[k].end());
                node_classes[k] = static_cast<uint32_t>(nodes.size());
                edge_classes[k] = static_cast<uint32_t>(edges.size());
            }
        }
    });
}

hr_status hr_model_load(const char* path, hr_model** out) {
    if (!path || !out) return fail_argument("hr_model_load: null pointer");
    return guarded([&]() { *out = new hr_model{hyperrob::load_model(path)}; });
}

void hr_model_free(hr_model* model) { delete model; }

hr_status hr_model_predict(const hr_model* model, const hr_hypergraph* h,
                           const uint32_t* failure_order, double* out_prediction) {
    if (!model || !h || !failure_order || !out_prediction) {
        return fail_argument("hr_model_predict: null pointer");
    }
    return guarded([&]() {
        std::vector<hyperrob::NodeId> order(failure_order,
                                            failure_order + h->value.num_nodes());
        *out_prediction = hyperrob::predict(h->value, order, model->value);
    });
}

hr_status hr_dataset_generate(const char* config_path, const char* overrides_kv,
                              const char* out_dir, int threads) {
    if (!out_dir) return fail_argument("hr_dataset_generate: null out_dir");
    return guarded([&]() {
        auto kv = load_config(config_path, overrides_kv);
        auto cfg = hyperrob::parse_dataset_config(kv);
        hyperrob::dataset_generate(cfg, out_dir, threads);
    });
}

hr_status hr_dataset_relabel(const char* in_jsonl, const char* overrides_kv,
                             const char* out_jsonl, int threads) {
    if (!in_jsonl || !out_jsonl) return fail_argument("hr_dataset_relabel: null path");
    return guarded([&]() {
        auto kv = load_config(nullptr, overrides_kv);
        auto cfg = hyperrob::parse_dataset_config(kv);
        auto records = hyperrob::load_records(in_jsonl);
        records = hyperrob::relabel_records(std::move(records), cfg.attack, cfg.quadrature,
                                            threads);
        hyperrob::save_records(records, out_jsonl);
    });
}

hr_status hr_train_file(const char* train_jsonl, const char* validation_jsonl,
                        const char* config_path, const char* overrides_kv,
                        const char* model_out_path) {
    if (!train_jsonl || !model_out_path) return fail_argument("hr_train_file: null path");
    return guarded([&]() {
        auto kv = load_config(config_path, overrides_kv);
        auto cfg = hyperrob::parse_train_config(kv);
        auto train_samples = hyperrob::records_to_samples(hyperrob::load_records(train_jsonl));
        std::vector<hyperrob::TrainSample> validation;
        if (validation_jsonl && *validation_jsonl) {
            validation = hyperrob::records_to_samples(hyperrob::load_records(validation_jsonl));
        }
        auto result = hyperrob::train(train_samples, cfg, validation);
        hyperrob::save_model(result.params, model_out_path);
    });
}

hr_status hr_predict_file(const char* model_path, const char* in_jsonl, const char* out_path) {
    if (!model_path || !in_jsonl || !out_path) {
        return fail_argument("hr_predict_file: null path");
    }
    return guarded([&]() {
        auto params = hyperrob::load_model(model_path);
        auto records = hyperrob::load_records(in_jsonl);
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            throw hyperrob::Error(hyperrob::ErrorCode::IoError,
                                  std::string("cannot open for writing: ") + out_path);
        }
        for (const auto& record : records) {
            auto h = hyperrob::Hypergraph::from_edge_list(record.num_nodes, record.edges);
            double prediction = hyperrob::predict(h, record.failure_order, params);
            char buffer[32];
            auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), prediction);
            out.write(buffer, ptr - buffer);
            out.put('\n');
        }
    });
}

hr_status hr_evaluate_file(const char* model_path, const char* test_jsonl,
                           hr_eval_report* out) {
    if (!model_path || !test_jsonl || !out) return fail_argument("hr_evaluate_file: null arg");
    return guarded([&]() {
        auto params = hyperrob::load_model(model_path);
        auto records = hyperrob::load_records(test_jsonl);
        auto report = hyperrob::evaluate_records(params, records);
        out->mean_abs_error = report.mean_abs_error;
        out->std_abs_error = report.std_abs_error;
        out->baseline_mean_abs_error = report.baseline_mean_abs_error;
        out->sample_count = report.sample_count;
        out->predict_seconds_total = report.predict_seconds_total;
        out->label_seconds_total = report.label_seconds_total;
    });
}

hr_status hr_bench_file(const char* model_path, const char* test_jsonl, int threads,
                        hr_bench_report* out) {
    if (!model_path || !test_jsonl || !out) return fail_argument("hr_bench_file: null arg");
    return guarded([&]() {
        auto params = hyperrob::load_model(model_path);
        auto records = hyperrob::load_records(test_jsonl);
        auto report = hyperrob::bench_records(params, records, threads);
        out->label_seconds_mean = report.label_seconds_mean;
        out->predict_seconds_mean = report.predict_seconds_mean;
        out->speedup = report.speedup;
        out->sample_count = report.sample_count;
    });
}

} // extern "C"
