#ifndef HYPERROB_HWL_HPP
#define HYPERROB_HWL_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "hyperrob/hypergraph.hpp"

namespace hyperrob {

using WlLabel = std::uint32_t;

/**
 * Per-iteration label partitions of one refinement run.
 *
 * Iteration k first relabels edges from (own label, sorted multiset of
 * member labels at k-1), then nodes from (own label, sorted multiset of
 * incident edge labels at k). Signatures are interned into fresh integers
 * through an exact dictionary, so equal labels mean equal signatures with
 * no collision caveat. Within one iteration, ids are assigned in sorted
 * signature order, which makes label histograms independent of node and
 * edge input order.
 */
struct WLColoring {
    std::vector<std::vector<WlLabel>> node_labels; // [iteration][node]
    std::vector<std::vector<WlLabel>> edge_labels; // [iteration][edge]
    std::map<std::vector<WlLabel>, WlLabel> intern_table;

    std::size_t iterations() const { return node_labels.size(); }
};

/// Sorted (label, count) pairs; canonical across input orderings.
struct LabelHistogram {
    std::vector<std::pair<WlLabel, std::uint32_t>> nodes;
    std::vector<std::pair<WlLabel, std::uint32_t>> edges;

    bool operator==(const LabelHistogram&) const = default;
};

enum class WlVerdict { NonIsomorphic, PossiblyIsomorphic };

/// Runs refinement until the joint (node, edge) partition stabilizes or
/// max_iters passes, whichever is first. Iteration 0 labels are constant
/// unless seeds are supplied. max_iters must be >= 1.
WLColoring hwl_refine(const Hypergraph& h, std::size_t max_iters,
                      const std::vector<WlLabel>& node_seed_labels = {},
                      const std::vector<WlLabel>& edge_seed_labels = {});

/// Histogram of one stored iteration. Throws OutOfRangeIteration as
/// OutOfRangeIndex.
LabelHistogram histogram(const WLColoring& coloring, std::size_t iteration);

/// Refines both hypergraphs in lockstep through one shared intern table and
/// compares per-iteration histograms. Sound screen: NonIsomorphic is
/// definitive, PossiblyIsomorphic is not a certificate.
WlVerdict hwl_distinguish(const Hypergraph& h1, const Hypergraph& h2);

/// Lockstep variant that also returns both colorings (shared label space).
WlVerdict hwl_distinguish(const Hypergraph& h1, const Hypergraph& h2, WLColoring& out1,
                          WLColoring& out2);

} // namespace hyperrob

#endif // HYPERROB_HWL_HPP
