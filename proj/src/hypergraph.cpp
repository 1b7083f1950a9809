#include "hyperrob/hypergraph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace hyperrob {

ActivityMask ActivityMask::all_alive(const Hypergraph& h) {
    ActivityMask mask;
    mask.node_alive.assign(h.num_nodes(), 1);
    mask.edge_alive.assign(h.num_edges(), 1);
    return mask;
}

Hypergraph Hypergraph::from_edge_list(NodeId num_nodes,
                                      const std::vector<std::vector<NodeId>>& raw_edges) {
    Hypergraph h;
    h.num_nodes_ = num_nodes;
    h.edges_.reserve(raw_edges.size());
    for (std::size_t i = 0; i < raw_edges.size(); ++i) {
        std::vector<NodeId> members = raw_edges[i];
        for (NodeId v : members) {
            if (v >= num_nodes) {
                throw Error(ErrorCode::OutOfRangeId,
                            "edge " + std::to_string(i) + " references node " +
                                std::to_string(v) + " but num_nodes is " +
                                std::to_string(num_nodes));
            }
        }
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        if (members.size() < 2) {
            throw Error(ErrorCode::EdgeTooSmall,
                        "edge " + std::to_string(i) + " has fewer than 2 distinct members");
        }
        h.total_membership_ += members.size();
        h.edges_.push_back(std::move(members));
    }
    h.incidence_.assign(num_nodes, {});
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
        for (NodeId v : h.edges_[e]) h.incidence_[v].push_back(e);
    }
    return h;
}

const std::vector<NodeId>& Hypergraph::edge(EdgeId e) const {
    if (e >= edges_.size()) {
        throw Error(ErrorCode::OutOfRangeIndex, "edge index " + std::to_string(e) +
                                                    " out of range");
    }
    return edges_[e];
}

std::size_t Hypergraph::cardinality(EdgeId e) const { return edge(e).size(); }

std::size_t Hypergraph::hyperdegree(NodeId v) const { return incident_edges(v).size(); }

const std::vector<EdgeId>& Hypergraph::incident_edges(NodeId v) const {
    if (v >= num_nodes_) {
        throw Error(ErrorCode::OutOfRangeId, "node id " + std::to_string(v) +
                                                 " out of range");
    }
    return incidence_[v];
}

Hypergraph Hypergraph::permute(const std::vector<NodeId>& perm) const {
    if (perm.size() != num_nodes_) {
        throw Error(ErrorCode::NotABijection, "permutation length does not match node count");
    }
    std::vector<std::uint8_t> seen(num_nodes_, 0);
    for (NodeId target : perm) {
        if (target >= num_nodes_ || seen[target]) {
            throw Error(ErrorCode::NotABijection, "permutation is not a bijection");
        }
        seen[target] = 1;
    }
    std::vector<std::vector<NodeId>> relabeled;
    relabeled.reserve(edges_.size());
    for (const auto& members : edges_) {
        std::vector<NodeId> mapped;
        mapped.reserve(members.size());
        for (NodeId v : members) mapped.push_back(perm[v]);
        relabeled.push_back(std::move(mapped));
    }
    return from_edge_list(num_nodes_, relabeled);
}

ActivityMask recompute_edge_liveness(const Hypergraph& h, const ActivityMask& mask) {
    ActivityMask out = mask;
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
        if (!mask.edge_alive[e]) continue; // latched failures stay failed
        std::size_t alive = 0;
        for (NodeId v : h.edges()[e]) alive += mask.node_alive[v] ? 1 : 0;
        out.edge_alive[e] = alive >= 2 ? 1 : 0;
    }
    return out;
}

namespace {

// Union-find over node ids.
struct DisjointSets {
    std::vector<NodeId> parent;
    std::vector<std::uint32_t> size;

    explicit DisjointSets(std::size_t n) : parent(n), size(n, 1) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    NodeId find(NodeId x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    void unite(NodeId a, NodeId b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
    }
};

} // namespace

double lcc_fraction(const Hypergraph& h, const ActivityMask& mask) {
    const NodeId n = h.num_nodes();
    if (n == 0) return 0.0;
    DisjointSets dsu(n);
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
        if (!mask.edge_alive[e]) continue;
        NodeId first = n;
        for (NodeId v : h.edges()[e]) {
            if (!mask.node_alive[v]) continue;
            if (first == n) {
                first = v;
            } else {
                dsu.unite(first, v);
            }
        }
    }
    // DSU sizes count dead nodes never united, so recount alive members per root.
    std::vector<std::uint32_t> alive_in_component(n, 0);
    std::uint32_t best = 0;
    for (NodeId v = 0; v < n; ++v) {
        if (!mask.node_alive[v]) continue;
        best = std::max(best, ++alive_in_component[dsu.find(v)]);
    }
    return static_cast<double>(best) / static_cast<double>(n);
}

} // namespace hyperrob
