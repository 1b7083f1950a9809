#include "hyperrob/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hyperrob/cascade.hpp"
#include "hyperrob/rng.hpp"

namespace hyperrob {

Aggregation aggregation_from_string(const std::string& name) {
    if (name == "injective_sum") return Aggregation::InjectiveSum;
    if (name == "mean_ablation") return Aggregation::MeanAblation;
    throw Error(ErrorCode::ParseError, "unknown aggregation mode: " + name);
}

const char* aggregation_name(Aggregation aggregation) {
    return aggregation == Aggregation::InjectiveSum ? "injective_sum" : "mean_ablation";
}

namespace {

ModelParameters architecture(const ModelConfig& cfg) {
    if (cfg.layers < 1 || cfg.width < 1) {
        throw Error(ErrorCode::InvalidConfig, "model needs layers >= 1 and width >= 1");
    }
    ModelParameters p;
    p.layers = cfg.layers;
    p.width = cfg.width;
    p.aggregation = cfg.aggregation;
    p.seed = cfg.seed;
    const std::size_t w = static_cast<std::size_t>(cfg.width);
    p.init_node = Mlp(3, w, w);
    p.init_edge = Mlp(1, w, w);
    p.layer.resize(cfg.layers);
    for (auto& layer : p.layer) {
        layer.edge_mlp = Mlp(w, w, w);
        layer.node_mlp = Mlp(w, w, w);
    }
    p.head = Mlp(p.embedding_dim(), w, 1);
    return p;
}

void glorot_fill(Matrix& m, SplitMix64& rng) {
    const double limit = std::sqrt(6.0 / static_cast<double>(m.rows + m.cols));
    for (double& value : m.data) value = (2.0 * rng.next_double() - 1.0) * limit;
}

void glorot_fill(Mlp& mlp, SplitMix64& rng) {
    glorot_fill(mlp.w1, rng);
    glorot_fill(mlp.w2, rng);
}

template <typename Params, typename Fn>
void visit_spans_impl(Params& p, Fn&& fn) {
    auto visit_mlp = [&](const std::string& prefix, auto& mlp) {
        fn(prefix + ".w1", mlp.w1.data.data(), mlp.w1.data.size());
        fn(prefix + ".b1", mlp.b1.data(), mlp.b1.size());
        fn(prefix + ".w2", mlp.w2.data.data(), mlp.w2.data.size());
        fn(prefix + ".b2", mlp.b2.data(), mlp.b2.size());
    };
    visit_mlp("init_node", p.init_node);
    visit_mlp("init_edge", p.init_edge);
    for (std::size_t l = 0; l < p.layer.size(); ++l) {
        const std::string prefix = "layer" + std::to_string(l);
        visit_mlp(prefix + ".edge_mlp", p.layer[l].edge_mlp);
        fn(prefix + ".eps_edge", &p.layer[l].eps_edge, 1);
        visit_mlp(prefix + ".node_mlp", p.layer[l].node_mlp);
        fn(prefix + ".eps_node", &p.layer[l].eps_node, 1);
    }
    visit_mlp("head", p.head);
}

} // namespace

ModelParameters ModelParameters::random_init(const ModelConfig& cfg) {
    ModelParameters p = architecture(cfg);
    SplitMix64 rng(cfg.seed);
    glorot_fill(p.init_node, rng);
    glorot_fill(p.init_edge, rng);
    for (auto& layer : p.layer) {
        glorot_fill(layer.edge_mlp, rng);
        glorot_fill(layer.node_mlp, rng);
    }
    // Readout sums scale with graph size, so a dense output layer would
    // start predictions far outside [0,1]. Zeroing the head's output layer
    // starts every prediction at 0 and lets the optimizer grow the scale.
    glorot_fill(p.head.w1, rng);
    return p;
}

ModelParameters ModelParameters::zeros_like() const {
    ModelConfig cfg{layers, width, aggregation, seed};
    return architecture(cfg);
}

std::size_t ModelParameters::parameter_count() const {
    std::size_t count = 0;
    visit_spans([&](const std::string&, const double*, std::size_t n) { count += n; });
    return count;
}

void ModelParameters::visit_spans(
    const std::function<void(const std::string&, double*, std::size_t)>& fn) {
    visit_spans_impl(*this, fn);
}

void ModelParameters::visit_spans(
    const std::function<void(const std::string&, const double*, std::size_t)>& fn) const {
    visit_spans_impl(*this, fn);
}

namespace {

// Per-application-site activations kept for the reverse pass.
struct MlpTrace {
    std::vector<double> input;  // count x in
    std::vector<double> hidden; // count x hidden, post-relu
};

void mlp_apply(const Mlp& mlp, const double* x, double* y, MlpTrace& trace, std::size_t slot) {
    const std::size_t in = mlp.in_dim();
    const std::size_t hid = mlp.hidden_dim();
    const std::size_t out = mlp.out_dim();
    std::copy(x, x + in, trace.input.begin() + slot * in);
    double* r = trace.hidden.data() + slot * hid;
    for (std::size_t h = 0; h < hid; ++h) {
        double z = mlp.b1[h];
        const double* w_row = mlp.w1.data.data() + h * in;
        for (std::size_t i = 0; i < in; ++i) z += w_row[i] * x[i];
        r[h] = z > 0.0 ? z : 0.0;
    }
    for (std::size_t o = 0; o < out; ++o) {
        double z = mlp.b2[o];
        const double* w_row = mlp.w2.data.data() + o * hid;
        for (std::size_t h = 0; h < hid; ++h) z += w_row[h] * r[h];
        y[o] = z;
    }
}

// Accumulates parameter gradients for one site and returns dLoss/dx in dx.
void mlp_backward(const Mlp& mlp, const MlpTrace& trace, std::size_t slot, const double* dy,
                  Mlp& grad, double* dx) {
    const std::size_t in = mlp.in_dim();
    const std::size_t hid = mlp.hidden_dim();
    const std::size_t out = mlp.out_dim();
    const double* x = trace.input.data() + slot * in;
    const double* r = trace.hidden.data() + slot * hid;

    std::vector<double> dz(hid, 0.0);
    for (std::size_t o = 0; o < out; ++o) {
        grad.b2[o] += dy[o];
        double* gw_row = grad.w2.data.data() + o * hid;
        const double* w_row = mlp.w2.data.data() + o * hid;
        for (std::size_t h = 0; h < hid; ++h) {
            gw_row[h] += dy[o] * r[h];
            dz[h] += w_row[h] * dy[o];
        }
    }
    for (std::size_t h = 0; h < hid; ++h) {
        if (r[h] <= 0.0) dz[h] = 0.0; // relu gate
    }
    if (dx) std::fill(dx, dx + in, 0.0);
    for (std::size_t h = 0; h < hid; ++h) {
        if (dz[h] == 0.0) continue;
        grad.b1[h] += dz[h];
        double* gw_row = grad.w1.data.data() + h * in;
        const double* w_row = mlp.w1.data.data() + h * in;
        for (std::size_t i = 0; i < in; ++i) {
            gw_row[i] += dz[h] * x[i];
            if (dx) dx[i] += w_row[i] * dz[h];
        }
    }
}

MlpTrace make_trace(const Mlp& mlp, std::size_t count) {
    MlpTrace trace;
    trace.input.resize(count * mlp.in_dim());
    trace.hidden.resize(count * mlp.hidden_dim());
    return trace;
}

struct ForwardTrace {
    std::vector<std::vector<double>> node_states; // layers+1 stages of N*W
    std::vector<std::vector<double>> edge_states; // layers+1 stages of M*W
    MlpTrace init_node_trace;
    MlpTrace init_edge_trace;
    std::vector<MlpTrace> edge_traces; // input row = pre-activation aggregate
    std::vector<MlpTrace> node_traces;
    std::vector<double> embedding;
    MlpTrace head_trace;
    double prediction = 0.0;
};

ForwardTrace run_forward(const Hypergraph& h, const FeatureSet& feats,
                         const ModelParameters& params) {
    const std::size_t n = h.num_nodes();
    const std::size_t m = h.num_edges();
    const std::size_t w = static_cast<std::size_t>(params.width);
    const std::size_t layers = static_cast<std::size_t>(params.layers);
    if (feats.node_features.size() != n || feats.edge_features.size() != m) {
        throw Error(ErrorCode::ShapeMismatch, "feature rows do not match the hypergraph");
    }
    if (layers < 1 || w < 1) throw Error(ErrorCode::ShapeMismatch, "uninitialized parameters");
    const bool mean_mode = params.aggregation == Aggregation::MeanAblation;

    ForwardTrace trace;
    trace.node_states.assign(layers + 1, std::vector<double>(n * w, 0.0));
    trace.edge_states.assign(layers + 1, std::vector<double>(m * w, 0.0));

    trace.init_node_trace = make_trace(params.init_node, n);
    for (std::size_t v = 0; v < n; ++v) {
        mlp_apply(params.init_node, feats.node_features[v].data(),
                  trace.node_states[0].data() + v * w, trace.init_node_trace, v);
    }
    trace.init_edge_trace = make_trace(params.init_edge, m);
    for (std::size_t e = 0; e < m; ++e) {
        mlp_apply(params.init_edge, &feats.edge_features[e],
                  trace.edge_states[0].data() + e * w, trace.init_edge_trace, e);
    }

    trace.embedding.assign(params.embedding_dim(), 0.0);
    std::vector<double> pre(w);
    for (std::size_t l = 0; l < layers; ++l) {
        const LayerParams& layer = params.layer[l];
        const double eps_edge = mean_mode ? 0.0 : layer.eps_edge;
        const double eps_node = mean_mode ? 0.0 : layer.eps_node;
        const auto& node_in = trace.node_states[l];
        const auto& edge_in = trace.edge_states[l];
        auto& node_out = trace.node_states[l + 1];
        auto& edge_out = trace.edge_states[l + 1];

        trace.edge_traces.push_back(make_trace(layer.edge_mlp, m));
        for (std::size_t e = 0; e < m; ++e) {
            const auto& members = h.edges()[e];
            const double scale = mean_mode ? 1.0 / static_cast<double>(members.size()) : 1.0;
            for (std::size_t i = 0; i < w; ++i) pre[i] = (1.0 + eps_edge) * edge_in[e * w + i];
            for (NodeId v : members) {
                const double* hv = node_in.data() + static_cast<std::size_t>(v) * w;
                for (std::size_t i = 0; i < w; ++i) pre[i] += hv[i] * scale;
            }
            mlp_apply(layer.edge_mlp, pre.data(), edge_out.data() + e * w,
                      trace.edge_traces.back(), e);
        }

        trace.node_traces.push_back(make_trace(layer.node_mlp, n));
        for (std::size_t v = 0; v < n; ++v) {
            const auto& incident = h.incident_edges(static_cast<NodeId>(v));
            const double scale = mean_mode && !incident.empty()
                                     ? 1.0 / static_cast<double>(incident.size())
                                     : 1.0;
            for (std::size_t i = 0; i < w; ++i) pre[i] = (1.0 + eps_node) * node_in[v * w + i];
            for (EdgeId e : incident) {
                const double* he = edge_out.data() + static_cast<std::size_t>(e) * w;
                for (std::size_t i = 0; i < w; ++i) pre[i] += he[i] * scale;
            }
            mlp_apply(layer.node_mlp, pre.data(), node_out.data() + v * w,
                      trace.node_traces.back(), v);
        }

        double* chunk = trace.embedding.data() + l * 2 * w;
        for (std::size_t v = 0; v < n; ++v) {
            for (std::size_t i = 0; i < w; ++i) chunk[i] += node_out[v * w + i];
        }
        for (std::size_t e = 0; e < m; ++e) {
            for (std::size_t i = 0; i < w; ++i) chunk[w + i] += edge_out[e * w + i];
        }
    }

    trace.head_trace = make_trace(params.head, 1);
    mlp_apply(params.head, trace.embedding.data(), &trace.prediction, trace.head_trace, 0);
    return trace;
}

void run_backward(const Hypergraph& h, const ModelParameters& params, const ForwardTrace& trace,
                  double dprediction, ModelParameters& grads) {
    const std::size_t n = h.num_nodes();
    const std::size_t m = h.num_edges();
    const std::size_t w = static_cast<std::size_t>(params.width);
    const std::size_t layers = static_cast<std::size_t>(params.layers);
    const bool mean_mode = params.aggregation == Aggregation::MeanAblation;

    std::vector<double> dembedding(params.embedding_dim(), 0.0);
    mlp_backward(params.head, trace.head_trace, 0, &dprediction, grads.head,
                 dembedding.data());

    std::vector<double> dnode(n * w, 0.0), dedge(m * w, 0.0);
    std::vector<double> dnode_prev(n * w), dedge_prev(m * w);
    std::vector<double> dpre(w);

    for (std::size_t l = layers; l-- > 0;) {
        const LayerParams& layer = params.layer[l];
        LayerParams& layer_grads = grads.layer[l];
        const double eps_edge = mean_mode ? 0.0 : layer.eps_edge;
        const double eps_node = mean_mode ? 0.0 : layer.eps_node;

        // Readout chunk of this layer feeds the per-entity states directly.
        const double* chunk = dembedding.data() + l * 2 * w;
        for (std::size_t v = 0; v < n; ++v) {
            for (std::size_t i = 0; i < w; ++i) dnode[v * w + i] += chunk[i];
        }
        for (std::size_t e = 0; e < m; ++e) {
            for (std::size_t i = 0; i < w; ++i) dedge[e * w + i] += chunk[w + i];
        }

        std::fill(dnode_prev.begin(), dnode_prev.end(), 0.0);
        std::fill(dedge_prev.begin(), dedge_prev.end(), 0.0);

        // Node update backward; contributes into this layer's edge states.
        for (std::size_t v = 0; v < n; ++v) {
            mlp_backward(layer.node_mlp, trace.node_traces[l], v, dnode.data() + v * w,
                         layer_grads.node_mlp, dpre.data());
            const double* hv = trace.node_states[l].data() + v * w;
            if (!mean_mode) {
                double deps = 0.0;
                for (std::size_t i = 0; i < w; ++i) deps += dpre[i] * hv[i];
                layer_grads.eps_node += deps;
            }
            for (std::size_t i = 0; i < w; ++i) {
                dnode_prev[v * w + i] += (1.0 + eps_node) * dpre[i];
            }
            const auto& incident = h.incident_edges(static_cast<NodeId>(v));
            const double scale = mean_mode && !incident.empty()
                                     ? 1.0 / static_cast<double>(incident.size())
                                     : 1.0;
            for (EdgeId e : incident) {
                double* de = dedge.data() + static_cast<std::size_t>(e) * w;
                for (std::size_t i = 0; i < w; ++i) de[i] += dpre[i] * scale;
            }
        }

        // Edge update backward with the fully accumulated edge adjoints.
        for (std::size_t e = 0; e < m; ++e) {
            mlp_backward(layer.edge_mlp, trace.edge_traces[l], e, dedge.data() + e * w,
                         layer_grads.edge_mlp, dpre.data());
            const double* he = trace.edge_states[l].data() + e * w;
            if (!mean_mode) {
                double deps = 0.0;
                for (std::size_t i = 0; i < w; ++i) deps += dpre[i] * he[i];
                layer_grads.eps_edge += deps;
            }
            for (std::size_t i = 0; i < w; ++i) {
                dedge_prev[e * w + i] += (1.0 + eps_edge) * dpre[i];
            }
            const auto& members = h.edges()[e];
            const double scale = mean_mode ? 1.0 / static_cast<double>(members.size()) : 1.0;
            for (NodeId v : members) {
                double* dv = dnode_prev.data() + static_cast<std::size_t>(v) * w;
                for (std::size_t i = 0; i < w; ++i) dv[i] += dpre[i] * scale;
            }
        }

        dnode.swap(dnode_prev);
        dedge.swap(dedge_prev);
    }

    for (std::size_t v = 0; v < n; ++v) {
        mlp_backward(params.init_node, trace.init_node_trace, v, dnode.data() + v * w,
                     grads.init_node, nullptr);
    }
    for (std::size_t e = 0; e < m; ++e) {
        mlp_backward(params.init_edge, trace.init_edge_trace, e, dedge.data() + e * w,
                     grads.init_edge, nullptr);
    }
}

} // namespace

namespace {

// Trace-free MLP application for inference.
void mlp_apply_lean(const Mlp& mlp, const double* x, double* y, std::vector<double>& hidden) {
    const std::size_t in = mlp.in_dim();
    const std::size_t hid = mlp.hidden_dim();
    const std::size_t out = mlp.out_dim();
    for (std::size_t h = 0; h < hid; ++h) {
        double z = mlp.b1[h];
        const double* w_row = mlp.w1.data.data() + h * in;
        for (std::size_t i = 0; i < in; ++i) z += w_row[i] * x[i];
        hidden[h] = z > 0.0 ? z : 0.0;
    }
    for (std::size_t o = 0; o < out; ++o) {
        double z = mlp.b2[o];
        const double* w_row = mlp.w2.data.data() + o * hid;
        for (std::size_t h = 0; h < hid; ++h) z += w_row[h] * hidden[h];
        y[o] = z;
    }
}

} // namespace

ForwardResult forward(const Hypergraph& h, const FeatureSet& feats,
                      const ModelParameters& params) {
    const std::size_t n = h.num_nodes();
    const std::size_t m = h.num_edges();
    const std::size_t w = static_cast<std::size_t>(params.width);
    const std::size_t layers = static_cast<std::size_t>(params.layers);
    if (feats.node_features.size() != n || feats.edge_features.size() != m) {
        throw Error(ErrorCode::ShapeMismatch, "feature rows do not match the hypergraph");
    }
    if (layers < 1 || w < 1) throw Error(ErrorCode::ShapeMismatch, "uninitialized parameters");
    const bool mean_mode = params.aggregation == Aggregation::MeanAblation;

    std::vector<double> hidden(w);
    std::vector<double> node_state(n * w), edge_state(m * w);
    std::vector<double> node_next(n * w), edge_next(m * w);
    std::vector<double> pre(w);

    for (std::size_t v = 0; v < n; ++v) {
        mlp_apply_lean(params.init_node, feats.node_features[v].data(), node_state.data() + v * w,
                       hidden);
    }
    for (std::size_t e = 0; e < m; ++e) {
        mlp_apply_lean(params.init_edge, &feats.edge_features[e], edge_state.data() + e * w,
                       hidden);
    }

    ForwardResult result;
    result.embedding.values.assign(params.embedding_dim(), 0.0);
    for (std::size_t l = 0; l < layers; ++l) {
        const LayerParams& layer = params.layer[l];
        const double eps_edge = mean_mode ? 0.0 : layer.eps_edge;
        const double eps_node = mean_mode ? 0.0 : layer.eps_node;

        for (std::size_t e = 0; e < m; ++e) {
            const auto& members = h.edges()[e];
            const double scale = mean_mode ? 1.0 / static_cast<double>(members.size()) : 1.0;
            for (std::size_t i = 0; i < w; ++i) pre[i] = (1.0 + eps_edge) * edge_state[e * w + i];
            for (NodeId v : members) {
                const double* hv = node_state.data() + static_cast<std::size_t>(v) * w;
                for (std::size_t i = 0; i < w; ++i) pre[i] += hv[i] * scale;
            }
            mlp_apply_lean(layer.edge_mlp, pre.data(), edge_next.data() + e * w, hidden);
        }
        for (std::size_t v = 0; v < n; ++v) {
            const auto& incident = h.incident_edges(static_cast<NodeId>(v));
            const double scale = mean_mode && !incident.empty()
                                     ? 1.0 / static_cast<double>(incident.size())
                                     : 1.0;
            for (std::size_t i = 0; i < w; ++i) pre[i] = (1.0 + eps_node) * node_state[v * w + i];
            for (EdgeId e : incident) {
                const double* he = edge_next.data() + static_cast<std::size_t>(e) * w;
                for (std::size_t i = 0; i < w; ++i) pre[i] += he[i] * scale;
            }
            mlp_apply_lean(layer.node_mlp, pre.data(), node_next.data() + v * w, hidden);
        }

        double* chunk = result.embedding.values.data() + l * 2 * w;
        for (std::size_t v = 0; v < n; ++v) {
            for (std::size_t i = 0; i < w; ++i) chunk[i] += node_next[v * w + i];
        }
        for (std::size_t e = 0; e < m; ++e) {
            for (std::size_t i = 0; i < w; ++i) chunk[w + i] += edge_next[e * w + i];
        }
        node_state.swap(node_next);
        edge_state.swap(edge_next);
    }

    std::vector<double> head_hidden(params.head.hidden_dim());
    mlp_apply_lean(params.head, result.embedding.values.data(), &result.prediction,
                   head_hidden);
    return result;
}

double sample_loss_and_grad(const BatchItem& item, const ModelParameters& params,
                            ModelParameters& grads) {
    ForwardTrace trace = run_forward(*item.h, *item.feats, params);
    const double err = trace.prediction - item.label;
    run_backward(*item.h, params, trace, 2.0 * err, grads);
    return err * err;
}

void accumulate_params(ModelParameters& dst, ModelParameters& src) {
    std::vector<std::pair<double*, std::size_t>> dst_spans;
    dst.visit_spans([&](const std::string&, double* ptr, std::size_t count) {
        dst_spans.push_back({ptr, count});
    });
    std::size_t span_index = 0;
    src.visit_spans([&](const std::string&, double* ptr, std::size_t count) {
        double* out = dst_spans[span_index++].first;
        for (std::size_t i = 0; i < count; ++i) out[i] += ptr[i];
    });
}

double loss_and_grad(const std::vector<BatchItem>& batch, const ModelParameters& params,
                     ModelParameters& grads) {
    if (batch.empty()) throw Error(ErrorCode::EmptyDataset, "batch must be nonempty");
    double loss = 0.0;
    // Per-sample scratch reduced in index order; batch-parallel training
    // reduces the same way, so results match bit for bit.
    for (const BatchItem& item : batch) {
        ModelParameters scratch = params.zeros_like();
        loss += sample_loss_and_grad(item, params, scratch);
        accumulate_params(grads, scratch);
    }
    const double inv = 1.0 / static_cast<double>(batch.size());
    grads.visit_spans([&](const std::string&, double* ptr, std::size_t count) {
        for (std::size_t i = 0; i < count; ++i) ptr[i] *= inv;
    });
    return loss * inv;
}

double predict(const Hypergraph& h, const std::vector<NodeId>& order,
               const ModelParameters& params) {
    FeatureSet feats = build_features(h, order);
    return std::clamp(forward(h, feats, params).prediction, 0.0, 1.0);
}

namespace {

std::string format_double(double value) {
    char buffer[32];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

} // namespace

std::string serialize_model(const ModelParameters& params) {
    std::ostringstream out;
    out << "hyperrob-model v1\n";
    out << "layers " << params.layers << "\n";
    out << "width " << params.width << "\n";
    out << "aggregation " << aggregation_name(params.aggregation) << "\n";
    out << "seed " << params.seed << "\n";
    out << "parameters " << params.parameter_count() << "\n";
    params.visit_spans([&](const std::string& name, const double* data, std::size_t count) {
        out << "tensor " << name << " " << count << "\n";
        for (std::size_t i = 0; i < count; ++i) {
            out << format_double(data[i]);
            out << ((i + 1) % 8 == 0 || i + 1 == count ? "\n" : " ");
        }
    });
    out << "end\n";
    return out.str();
}

ModelParameters parse_model(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    auto next_line = [&]() {
        if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, "truncated model file");
        return line;
    };
    if (next_line() != "hyperrob-model v1") {
        throw Error(ErrorCode::ParseError, "not a hyperrob model file");
    }
    auto read_field = [&](const std::string& key) {
        next_line();
        if (line.rfind(key + " ", 0) != 0) {
            throw Error(ErrorCode::ParseError, "expected field: " + key);
        }
        return line.substr(key.size() + 1);
    };
    ModelConfig cfg;
    cfg.layers = std::stoi(read_field("layers"));
    cfg.width = std::stoi(read_field("width"));
    cfg.aggregation = aggregation_from_string(read_field("aggregation"));
    cfg.seed = std::stoull(read_field("seed"));
    const std::size_t declared = std::stoull(read_field("parameters"));

    ModelParameters params = architecture(cfg);
    if (params.parameter_count() != declared) {
        throw Error(ErrorCode::ShapeMismatch, "parameter count does not match architecture");
    }
    params.visit_spans([&](const std::string& name, double* data, std::size_t count) {
        next_line();
        std::istringstream header(line);
        std::string tag, tensor_name;
        std::size_t declared_count = 0;
        header >> tag >> tensor_name >> declared_count;
        if (tag != "tensor" || tensor_name != name) {
            throw Error(ErrorCode::ParseError, "expected tensor " + name);
        }
        if (declared_count != count) {
            throw Error(ErrorCode::ShapeMismatch, "tensor " + name + " has wrong size");
        }
        std::size_t filled = 0;
        while (filled < count) {
            next_line();
            const char* cursor = line.data();
            const char* end = line.data() + line.size();
            while (cursor < end && filled < count) {
                while (cursor < end && *cursor == ' ') ++cursor;
                if (cursor == end) break;
                double value = 0.0;
                auto [next, ec] = std::from_chars(cursor, end, value);
                if (ec != std::errc()) {
                    throw Error(ErrorCode::ParseError, "bad value in tensor " + name);
                }
                data[filled++] = value;
                cursor = next;
            }
        }
    });
    if (next_line() != "end") throw Error(ErrorCode::ParseError, "missing end marker");
    return params;
}

void save_model(const ModelParameters& params, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot open for writing: " + path);
    out << serialize_model(params);
    if (!out) throw Error(ErrorCode::IoError, "failed writing model to " + path);
}

ModelParameters load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open model file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_model(buffer.str());
}

} // namespace hyperrob
