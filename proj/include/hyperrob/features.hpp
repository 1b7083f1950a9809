#ifndef HYPERROB_FEATURES_HPP
#define HYPERROB_FEATURES_HPP

#include <array>
#include <vector>

#include "hyperrob/hypergraph.hpp"

namespace hyperrob {

/// Node feature column order.
enum NodeFeature { kNormalizedDegree = 0, kNormalizedCardinality = 1, kFailureRank = 2 };

/// Inputs to the surrogate: one 3-vector per node, one scalar per edge,
/// all normalized into [0, 1] by build_features.
struct FeatureSet {
    std::vector<std::array<double, 3>> node_features;
    std::vector<double> edge_features;
};

/**
 * Structural input features.
 *
 *   degree      d_v / max degree (0 when the hypergraph has no edges)
 *   cardinality mean cardinality of incident edges / max cardinality
 *               (0 for isolated nodes)
 *   rank        position of the node in the failure order / (N-1), so the
 *               first-attacked node gets 0
 *
 * Edge feature: cardinality / max cardinality.
 * Throws InvalidOrder if `order` is not a permutation of the node ids.
 */
FeatureSet build_features(const Hypergraph& h, const std::vector<NodeId>& order);

} // namespace hyperrob

#endif // HYPERROB_FEATURES_HPP
