#ifndef HYPERROB_DATASET_HPP
#define HYPERROB_DATASET_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hyperrob/config.hpp"
#include "hyperrob/generators.hpp"
#include "hyperrob/robustness.hpp"
#include "hyperrob/train.hpp"

namespace hyperrob {

/// One labeled dataset element; serialized as a single JSON line.
struct SampleRecord {
    int schema_version = 1;
    std::string family;
    std::uint64_t seed = 0;
    NodeId num_nodes = 0;
    std::vector<std::vector<NodeId>> edges;
    std::string attack; // "static" | "dynamic"
    double alpha = 0.0; // dynamic only
    double beta = 0.0;  // dynamic only
    std::vector<NodeId> failure_order;
    double label_r = 0.0;
    std::uint64_t eval_count = 0;
    double label_epsilon = 0.0;

    bool operator==(const SampleRecord&) const = default;
};

std::string record_to_json_line(const SampleRecord& record);
SampleRecord record_from_json_line(const std::string& line); // throws ParseError

std::vector<SampleRecord> load_records(const std::string& path); // IoError/ParseError
void save_records(const std::vector<SampleRecord>& records, const std::string& path);

/// Reads a hypergraph from either a SampleRecord line or a plain JSON
/// object with num_nodes/edges fields.
Hypergraph hypergraph_from_json_file(const std::string& path);

/// Dataset generation settings; see parse_dataset_config for the key set.
struct DatasetConfig {
    std::vector<Family> families = {Family::ER};
    bool mixed = false;
    int train_per_family = 1000;
    int test_per_family = 200;
    int mixed_train_per_family = 500;
    int mixed_test_total = 200;
    AttackSpec attack;
    QuadratureConfig quadrature;
    GeneratorConfig generator; // family field overridden per sample
};

DatasetConfig parse_dataset_config(const KeyValueConfig& kv); // throws InvalidConfig

/// Training settings from the same config file (model_layers, model_width,
/// aggregation, eta_max, eta_min, t_max, epochs, batch_size, weight_decay,
/// beta1, beta2, adam_epsilon, seed, threads). Dataset keys may coexist.
TrainConfig parse_train_config(const KeyValueConfig& kv); // throws InvalidConfig

/// Generates, labels, and writes train/test JSONL files under out_dir
/// (per-family `er_train.jsonl`... or `mixed_train.jsonl`/`mixed_test.jsonl`).
/// Labeling runs `threads` wide; output bytes are thread-count independent.
/// Returns the files written.
std::vector<std::string> dataset_generate(const DatasetConfig& cfg, const std::string& out_dir,
                                          int threads);

/// Recomputes failure orders and labels of existing records under a new
/// attack/quadrature setting.
std::vector<SampleRecord> relabel_records(std::vector<SampleRecord> records,
                                          const AttackSpec& attack,
                                          const QuadratureConfig& quadrature, int threads);

/// Training inputs from stored records (features use the stored order).
std::vector<TrainSample> records_to_samples(const std::vector<SampleRecord>& records);

struct EvalReport {
    double mean_abs_error = 0.0;
    double std_abs_error = 0.0;
    double baseline_mean_abs_error = 0.0; // constant-mean predictor
    std::size_t sample_count = 0;
    double predict_seconds_total = 0.0;
    double label_seconds_total = 0.0; // 0 when labels come precomputed
};

/// Absolute-error aggregation; deterministic under input reordering.
EvalReport evaluate_errors(const std::vector<double>& predictions,
                           const std::vector<double>& labels);

EvalReport evaluate_records(const ModelParameters& params,
                            const std::vector<SampleRecord>& records);

struct BenchReport {
    double label_seconds_mean = 0.0;
    double predict_seconds_mean = 0.0;
    double speedup = 0.0; // label mean over predict mean
    std::size_t sample_count = 0;
};

/// Times fresh labeling against model prediction over the same records.
BenchReport bench_records(const ModelParameters& params,
                          const std::vector<SampleRecord>& records, int threads);

} // namespace hyperrob

#endif // HYPERROB_DATASET_HPP
