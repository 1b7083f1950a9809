#ifndef HYPERROB_HYPERGRAPH_HPP
#define HYPERROB_HYPERGRAPH_HPP

#include <cstdint>
#include <vector>

#include "hyperrob/error.hpp"

namespace hyperrob {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

class Hypergraph;

/// Per-node and per-edge alive flags used by percolation and cascades.
struct ActivityMask {
    std::vector<std::uint8_t> node_alive;
    std::vector<std::uint8_t> edge_alive;

    static ActivityMask all_alive(const Hypergraph& h);
};

/**
 * Immutable hypergraph over nodes 0..num_nodes-1.
 *
 * Edges are stored as strictly ascending node-id lists in their input
 * order. Duplicate edges are permitted (multiset semantics); edges with
 * fewer than two distinct members are rejected at construction.
 */
class Hypergraph {
public:
    Hypergraph() = default;

    /// Builds from raw edge lists. Members are sorted and deduplicated
    /// per edge; edge order is preserved.
    /// Throws OutOfRangeId and EdgeTooSmall.
    static Hypergraph from_edge_list(NodeId num_nodes,
                                     const std::vector<std::vector<NodeId>>& raw_edges);

    NodeId num_nodes() const { return num_nodes_; }
    EdgeId num_edges() const { return static_cast<EdgeId>(edges_.size()); }

    const std::vector<std::vector<NodeId>>& edges() const { return edges_; }

    /// Members of edge e, strictly ascending. Throws OutOfRangeIndex.
    const std::vector<NodeId>& edge(EdgeId e) const;

    /// Number of members of edge e. Throws OutOfRangeIndex.
    std::size_t cardinality(EdgeId e) const;

    /// Number of edges containing v (duplicates counted). Throws OutOfRangeId.
    std::size_t hyperdegree(NodeId v) const;

    /// Edge indices containing v, ascending. Throws OutOfRangeId.
    const std::vector<EdgeId>& incident_edges(NodeId v) const;

    /// Relabels nodes through a bijection on 0..num_nodes-1.
    /// Throws NotABijection.
    Hypergraph permute(const std::vector<NodeId>& perm) const;

    /// Sum of all cardinalities (== sum of all hyperdegrees).
    std::size_t total_membership() const { return total_membership_; }

private:
    NodeId num_nodes_ = 0;
    std::vector<std::vector<NodeId>> edges_;
    std::vector<std::vector<EdgeId>> incidence_;
    std::size_t total_membership_ = 0;
};

/// Re-derives edge liveness from node liveness: an edge stays alive iff it
/// still has at least two alive members and was not already failed in
/// `mask` (edge failure latches).
ActivityMask recompute_edge_liveness(const Hypergraph& h, const ActivityMask& mask);

/// Fraction of the ORIGINAL node count inside the largest component of the
/// alive subhypergraph. Two alive nodes are adjacent iff they share an
/// alive edge; alive isolated nodes count as components of size 1.
/// Expects edge liveness to be consistent with node liveness.
double lcc_fraction(const Hypergraph& h, const ActivityMask& mask);

} // namespace hyperrob

#endif // HYPERROB_HYPERGRAPH_HPP
