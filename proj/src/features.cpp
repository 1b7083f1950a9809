#include "hyperrob/features.hpp"

#include <algorithm>

#include "hyperrob/cascade.hpp"

namespace hyperrob {

FeatureSet build_features(const Hypergraph& h, const std::vector<NodeId>& order) {
    if (!is_permutation(h, order)) {
        throw Error(ErrorCode::InvalidOrder, "failure order is not a permutation of node ids");
    }
    const NodeId n = h.num_nodes();
    FeatureSet feats;
    feats.node_features.resize(n);
    feats.edge_features.resize(h.num_edges());

    std::size_t max_degree = 0;
    for (NodeId v = 0; v < n; ++v) max_degree = std::max(max_degree, h.hyperdegree(v));
    std::size_t max_card = 0;
    for (EdgeId e = 0; e < h.num_edges(); ++e) max_card = std::max(max_card, h.cardinality(e));

    std::vector<std::size_t> rank(n, 0);
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

    for (NodeId v = 0; v < n; ++v) {
        auto& row = feats.node_features[v];
        row[kNormalizedDegree] =
            max_degree == 0 ? 0.0 : static_cast<double>(h.hyperdegree(v)) / max_degree;

        const auto& incident = h.incident_edges(v);
        if (incident.empty() || max_card == 0) {
            row[kNormalizedCardinality] = 0.0;
        } else {
            double mean_card = 0.0;
            for (EdgeId e : incident) mean_card += static_cast<double>(h.cardinality(e));
            mean_card /= static_cast<double>(incident.size());
            row[kNormalizedCardinality] = mean_card / static_cast<double>(max_card);
        }

        row[kFailureRank] = n <= 1 ? 0.0 : static_cast<double>(rank[v]) / (n - 1.0);
    }
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
        feats.edge_features[e] = static_cast<double>(h.cardinality(e)) / max_card;
    }
    return feats;
}

} // namespace hyperrob
