#include "hyperrob/hwl.hpp"

#include <algorithm>
#include <set>

namespace hyperrob {

namespace {

using Signature = std::vector<WlLabel>;

// Joint refinement over a set of hypergraphs sharing one intern table.
class LockstepRefiner {
public:
    explicit LockstepRefiner(std::vector<const Hypergraph*> graphs)
        : graphs_(std::move(graphs)), colorings_(graphs_.size()) {}

    // Seeds are optional; empty means constant iteration-0 labels.
    void seed(std::size_t g, const std::vector<WlLabel>& node_seed,
              const std::vector<WlLabel>& edge_seed) {
        const Hypergraph& h = *graphs_[g];
        auto& coloring = colorings_[g];
        coloring.node_labels.push_back(
            node_seed.empty() ? std::vector<WlLabel>(h.num_nodes(), 0) : node_seed);
        coloring.edge_labels.push_back(
            edge_seed.empty() ? std::vector<WlLabel>(h.num_edges(), 0) : edge_seed);
        if (coloring.node_labels[0].size() != h.num_nodes() ||
            coloring.edge_labels[0].size() != h.num_edges()) {
            throw Error(ErrorCode::ShapeMismatch, "seed label lengths do not match hypergraph");
        }
    }

    // One refinement pass over every graph; returns false once the joint
    // partition has stabilized (labels are copied forward in that case).
    bool iterate() {
        // Edge round uses node labels from the previous iteration.
        std::map<Signature, std::vector<std::pair<std::size_t, EdgeId>>> edge_classes;
        for (std::size_t g = 0; g < graphs_.size(); ++g) {
            const Hypergraph& h = *graphs_[g];
            const auto& node_prev = colorings_[g].node_labels.back();
            const auto& edge_prev = colorings_[g].edge_labels.back();
            for (EdgeId e = 0; e < h.num_edges(); ++e) {
                Signature sig;
                sig.reserve(h.cardinality(e) + 1);
                sig.push_back(edge_prev[e]);
                for (NodeId v : h.edges()[e]) sig.push_back(node_prev[v]);
                std::sort(sig.begin() + 1, sig.end());
                edge_classes[sig].push_back({g, e});
            }
        }
        std::vector<std::vector<WlLabel>> edge_next(graphs_.size());
        for (std::size_t g = 0; g < graphs_.size(); ++g) {
            edge_next[g].resize(graphs_[g]->num_edges());
        }
        assign(edge_classes, edge_next);

        // Node round uses the fresh edge labels.
        std::map<Signature, std::vector<std::pair<std::size_t, NodeId>>> node_classes;
        for (std::size_t g = 0; g < graphs_.size(); ++g) {
            const Hypergraph& h = *graphs_[g];
            const auto& node_prev = colorings_[g].node_labels.back();
            for (NodeId v = 0; v < h.num_nodes(); ++v) {
                Signature sig;
                sig.reserve(h.hyperdegree(v) + 1);
                sig.push_back(node_prev[v]);
                for (EdgeId e : h.incident_edges(v)) sig.push_back(edge_next[g][e]);
                std::sort(sig.begin() + 1, sig.end());
                node_classes[sig].push_back({g, v});
            }
        }
        std::vector<std::vector<WlLabel>> node_next(graphs_.size());
        for (std::size_t g = 0; g < graphs_.size(); ++g) {
            node_next[g].resize(graphs_[g]->num_nodes());
        }
        assign(node_classes, node_next);

        const bool refined = edge_classes.size() > distinct_edge_classes_ ||
                             node_classes.size() > distinct_node_classes_;
        distinct_edge_classes_ = edge_classes.size();
        distinct_node_classes_ = node_classes.size();

        for (std::size_t g = 0; g < graphs_.size(); ++g) {
            colorings_[g].edge_labels.push_back(std::move(edge_next[g]));
            colorings_[g].node_labels.push_back(std::move(node_next[g]));
        }
        return refined;
    }

    const WLColoring& view(std::size_t g) const { return colorings_[g]; }

    std::size_t iterations() const { return colorings_[0].iterations(); }

    std::vector<WLColoring> take_colorings() {
        for (auto& coloring : colorings_) coloring.intern_table = intern_table_;
        return std::move(colorings_);
    }

private:
    // Fresh ids in sorted-signature order; canonical because signatures of
    // isomorphic entities are equal by induction.
    template <typename Entity>
    void assign(const std::map<Signature, std::vector<std::pair<std::size_t, Entity>>>& classes,
                std::vector<std::vector<WlLabel>>& out) {
        for (const auto& [sig, entities] : classes) {
            WlLabel label = next_label_++;
            intern_table_.emplace(sig, label);
            for (const auto& [g, idx] : entities) out[g][idx] = label;
        }
    }

    std::vector<const Hypergraph*> graphs_;
    std::vector<WLColoring> colorings_;
    std::map<Signature, WlLabel> intern_table_;
    WlLabel next_label_ = 1;
    std::size_t distinct_edge_classes_ = 0;
    std::size_t distinct_node_classes_ = 0;
};

std::vector<std::pair<WlLabel, std::uint32_t>> counted(std::vector<WlLabel> labels) {
    std::sort(labels.begin(), labels.end());
    std::vector<std::pair<WlLabel, std::uint32_t>> out;
    for (WlLabel label : labels) {
        if (out.empty() || out.back().first != label) {
            out.push_back({label, 1});
        } else {
            ++out.back().second;
        }
    }
    return out;
}

} // namespace

WLColoring hwl_refine(const Hypergraph& h, std::size_t max_iters,
                      const std::vector<WlLabel>& node_seed_labels,
                      const std::vector<WlLabel>& edge_seed_labels) {
    if (max_iters < 1) throw Error(ErrorCode::InvalidArgument, "max_iters must be >= 1");
    LockstepRefiner refiner({&h});
    refiner.seed(0, node_seed_labels, edge_seed_labels);
    std::size_t cap = std::min<std::size_t>(max_iters, h.num_nodes() + h.num_edges() + 1);
    for (std::size_t k = 0; k < cap; ++k) {
        if (!refiner.iterate()) break;
    }
    return std::move(refiner.take_colorings()[0]);
}

LabelHistogram histogram(const WLColoring& coloring, std::size_t iteration) {
    if (iteration >= coloring.iterations()) {
        throw Error(ErrorCode::OutOfRangeIndex, "iteration out of range");
    }
    LabelHistogram hist;
    hist.nodes = counted(coloring.node_labels[iteration]);
    hist.edges = counted(coloring.edge_labels[iteration]);
    return hist;
}

WlVerdict hwl_distinguish(const Hypergraph& h1, const Hypergraph& h2) {
    WLColoring c1, c2;
    return hwl_distinguish(h1, h2, c1, c2);
}

WlVerdict hwl_distinguish(const Hypergraph& h1, const Hypergraph& h2, WLColoring& out1,
                          WLColoring& out2) {
    LockstepRefiner refiner({&h1, &h2});
    refiner.seed(0, {}, {});
    refiner.seed(1, {}, {});
    bool differ = h1.num_nodes() != h2.num_nodes() || h1.num_edges() != h2.num_edges();
    if (!differ) {
        const std::size_t cap = h1.num_nodes() + h1.num_edges() + 1;
        for (std::size_t k = 0; k < cap; ++k) {
            bool refined = refiner.iterate();
            std::size_t last = refiner.iterations() - 1;
            if (!(histogram(refiner.view(0), last) == histogram(refiner.view(1), last))) {
                differ = true;
                break;
            }
            if (!refined) break;
        }
    }
    auto colorings = refiner.take_colorings();
    out1 = std::move(colorings[0]);
    out2 = std::move(colorings[1]);
    return differ ? WlVerdict::NonIsomorphic : WlVerdict::PossiblyIsomorphic;
}

} // namespace hyperrob
