#ifndef HYPERROB_MODEL_HPP
#define HYPERROB_MODEL_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hyperrob/features.hpp"
#include "hyperrob/hypergraph.hpp"

namespace hyperrob {

/// Multiset aggregation used by the message passing.
/// InjectiveSum keeps the map-then-sum form; MeanAblation swaps both message
/// sums for arithmetic means and pins the eps mixing scalars to zero,
/// mirroring conventional mean-pooling hypergraph networks. The readout
/// stays a sum in both modes.
enum class Aggregation { InjectiveSum, MeanAblation };

Aggregation aggregation_from_string(const std::string& name); // throws ParseError
const char* aggregation_name(Aggregation aggregation);

/// Dense row-major matrix, just large enough for the model's needs.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// Two-layer perceptron: y = w2 * relu(w1 * x + b1) + b2.
struct Mlp {
    Matrix w1;
    std::vector<double> b1;
    Matrix w2;
    std::vector<double> b2;

    Mlp() = default;
    Mlp(std::size_t in, std::size_t hidden, std::size_t out)
        : w1(hidden, in), b1(hidden, 0.0), w2(out, hidden), b2(out, 0.0) {}

    std::size_t in_dim() const { return w1.cols; }
    std::size_t hidden_dim() const { return w1.rows; }
    std::size_t out_dim() const { return w2.rows; }
};

struct LayerParams {
    Mlp edge_mlp;
    Mlp node_mlp;
    double eps_edge = 0.0;
    double eps_node = 0.0;
};

struct ModelConfig {
    int layers = 3;
    int width = 64;
    Aggregation aggregation = Aggregation::InjectiveSum;
    std::uint64_t seed = 0;
};

/**
 * All learnable state plus architecture metadata.
 *
 * Per layer, edges update first from their members, then nodes from the
 * fresh edge states; a final embedding concatenates per-layer sums of node
 * and edge states (2*layers*width entries) feeding the scalar head.
 */
struct ModelParameters {
    int layers = 0;
    int width = 0;
    Aggregation aggregation = Aggregation::InjectiveSum;
    std::uint64_t seed = 0;

    Mlp init_node; // 3 -> W -> W
    Mlp init_edge; // 1 -> W -> W
    std::vector<LayerParams> layer;
    Mlp head; // 2*L*W -> W -> 1

    /// Architecture from config, weights Glorot-uniform from the seed,
    /// biases and eps scalars zero.
    static ModelParameters random_init(const ModelConfig& cfg);

    /// Same shapes, all values zero (gradient accumulator).
    ModelParameters zeros_like() const;

    std::size_t parameter_count() const;

    std::size_t embedding_dim() const {
        return 2 * static_cast<std::size_t>(layers) * static_cast<std::size_t>(width);
    }

    /// Visits every learnable span in a fixed order; the optimizer, the
    /// persistence format, and the gradient checks all share it.
    void visit_spans(const std::function<void(const std::string&, double*, std::size_t)>& fn);
    void visit_spans(
        const std::function<void(const std::string&, const double*, std::size_t)>& fn) const;
};

struct EmbeddingVector {
    std::vector<double> values; // length 2*L*W
};

struct ForwardResult {
    double prediction = 0.0; // unclamped
    EmbeddingVector embedding;
};

/// Full message-passing forward pass. Throws ShapeMismatch when the feature
/// dimensions disagree with the hypergraph or parameters.
ForwardResult forward(const Hypergraph& h, const FeatureSet& feats,
                      const ModelParameters& params);

struct BatchItem {
    const Hypergraph* h = nullptr;
    const FeatureSet* feats = nullptr;
    double label = 0.0;
};

/// Mean squared error over the batch plus parameter gradients via
/// reverse-mode accumulation. `grads` must be zeros_like(params) shaped;
/// gradients are accumulated into it.
double loss_and_grad(const std::vector<BatchItem>& batch, const ModelParameters& params,
                     ModelParameters& grads);

/// Per-sample variant used for deterministic batch-parallel reduction:
/// returns the squared error, accumulates d(squared error)/d(theta).
double sample_loss_and_grad(const BatchItem& item, const ModelParameters& params,
                            ModelParameters& grads);

/// dst += src over every learnable span (shapes must match).
void accumulate_params(ModelParameters& dst, ModelParameters& src);

/// build_features + forward, clamped into [0, 1].
double predict(const Hypergraph& h, const std::vector<NodeId>& order,
               const ModelParameters& params);

/// Self-describing text persistence. Loading validates every shape.
std::string serialize_model(const ModelParameters& params);
ModelParameters parse_model(const std::string& text); // throws ParseError/ShapeMismatch
void save_model(const ModelParameters& params, const std::string& path);
ModelParameters load_model(const std::string& path);

} // namespace hyperrob

#endif // HYPERROB_MODEL_HPP
