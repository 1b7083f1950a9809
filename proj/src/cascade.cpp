#include "hyperrob/cascade.hpp"

#include <algorithm>
#include <cmath>

namespace hyperrob {

std::vector<NodeId> static_attack_order(const Hypergraph& h) {
    std::vector<NodeId> order(h.num_nodes());
    for (NodeId v = 0; v < h.num_nodes(); ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        std::size_t da = h.hyperdegree(a);
        std::size_t db = h.hyperdegree(b);
        if (da != db) return da > db;
        return a < b;
    });
    return order;
}

CascadeState init_cascade(const Hypergraph& h, const CascadeParams& params) {
    CascadeState state;
    state.mask = ActivityMask::all_alive(h);
    const NodeId n = h.num_nodes();
    state.load.resize(n);
    state.capacity.resize(n);
    state.live_edge_count.resize(n);
    for (NodeId v = 0; v < n; ++v) {
        state.load[v] = std::pow(static_cast<double>(h.hyperdegree(v)), params.beta);
        state.capacity[v] = (1.0 + params.alpha) * state.load[v];
        state.live_edge_count[v] = static_cast<std::uint32_t>(h.hyperdegree(v));
    }
    state.live_member_count.resize(h.num_edges());
    for (EdgeId e = 0; e < h.num_edges(); ++e) {
        state.live_member_count[e] = static_cast<std::uint32_t>(h.cardinality(e));
    }
    return state;
}

void mark_failed(CascadeState& state, NodeId v, const Hypergraph& h) {
    if (!state.mask.node_alive[v]) return;
    state.mask.node_alive[v] = 0;
    for (EdgeId e : h.incident_edges(v)) {
        if (state.mask.edge_alive[e]) --state.live_member_count[e];
    }
    state.pending.push_back(v);
    state.failure_log.push_back(v);
}

namespace {

void latch_edge(CascadeState& state, EdgeId e, const Hypergraph& h) {
    state.mask.edge_alive[e] = 0;
    for (NodeId member : h.edges()[e]) --state.live_edge_count[member];
}

} // namespace

void fail_and_redistribute(CascadeState& state, NodeId node, const Hypergraph& h) {
    const double load = state.load[node];
    const auto& incident = h.incident_edges(node);

    std::uint32_t conduits = 0;
    for (EdgeId e : incident) conduits += state.mask.edge_alive[e] ? 1 : 0;

    if (conduits == 0) {
        state.dropped_load += load;
        return;
    }
    const double edge_share = load / static_cast<double>(conduits);
    for (EdgeId e : incident) {
        if (!state.mask.edge_alive[e]) continue;
        const std::uint32_t recipients = state.live_member_count[e];
        if (recipients == 0) {
            state.dropped_load += edge_share;
            continue;
        }
        const double node_share = edge_share / static_cast<double>(recipients);
        for (NodeId j : h.edges()[e]) {
            if (!state.mask.node_alive[j]) continue;
            state.load[j] += node_share;
            if (state.load[j] > state.capacity[j]) mark_failed(state, j, h);
        }
    }
    // The node's own edges may only now drop below two alive members.
    for (EdgeId e : incident) {
        if (state.mask.edge_alive[e] && state.live_member_count[e] <= 1) {
            latch_edge(state, e, h);
        }
    }
}

namespace {

void settle(CascadeState& state, const Hypergraph& h) {
    while (!state.pending.empty()) {
        NodeId node = state.pending.front();
        state.pending.pop_front();
        fail_and_redistribute(state, node, h);
    }
}

} // namespace

CascadeState run_cascade(const Hypergraph& h, const std::vector<NodeId>& attacked,
                         const CascadeParams& params) {
    CascadeState state = init_cascade(h, params);
    std::vector<NodeId> targets = attacked;
    std::sort(targets.begin(), targets.end());
    for (NodeId v : targets) mark_failed(state, v, h);
    settle(state, h);
    state.mask = recompute_edge_liveness(h, state.mask);
    return state;
}

bool is_permutation(const Hypergraph& h, const std::vector<NodeId>& order) {
    if (order.size() != h.num_nodes()) return false;
    std::vector<std::uint8_t> seen(h.num_nodes(), 0);
    for (NodeId v : order) {
        if (v >= h.num_nodes() || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

double percolation_sample(const Hypergraph& h, double rho, const AttackSpec& attack,
                          const std::vector<NodeId>& order) {
    if (!is_permutation(h, order)) {
        throw Error(ErrorCode::InvalidOrder, "attack order is not a permutation of node ids");
    }
    const NodeId n = h.num_nodes();
    long long q = std::llround(rho * static_cast<double>(n));
    q = std::clamp<long long>(q, 0, n);
    std::vector<NodeId> attacked(order.begin(), order.begin() + q);

    if (attack.kind == AttackKind::Static) {
        ActivityMask mask = ActivityMask::all_alive(h);
        for (NodeId v : attacked) mask.node_alive[v] = 0;
        mask = recompute_edge_liveness(h, mask);
        return lcc_fraction(h, mask);
    }
    CascadeState state = run_cascade(h, attacked, attack.params);
    return lcc_fraction(h, state.mask);
}

std::vector<NodeId> dynamic_failure_order(const Hypergraph& h, const CascadeParams& params) {
    CascadeState state = init_cascade(h, params);
    const NodeId n = h.num_nodes();
    NodeId failed = 0;
    while (failed < n) {
        NodeId target = n;
        std::uint32_t best_degree = 0;
        for (NodeId v = 0; v < n; ++v) {
            if (!state.mask.node_alive[v]) continue;
            if (target == n || state.live_edge_count[v] > best_degree) {
                target = v;
                best_degree = state.live_edge_count[v];
            }
        }
        mark_failed(state, target, h);
        while (!state.pending.empty()) {
            NodeId node = state.pending.front();
            state.pending.pop_front();
            fail_and_redistribute(state, node, h);
        }
        failed = static_cast<NodeId>(state.failure_log.size());
    }
    return state.failure_log;
}

} // namespace hyperrob
