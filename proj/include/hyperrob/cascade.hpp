#ifndef HYPERROB_CASCADE_HPP
#define HYPERROB_CASCADE_HPP

#include <cstdint>
#include <deque>
#include <vector>

#include "hyperrob/hypergraph.hpp"

namespace hyperrob {

/// Load-redistribution parameters: initial load d^beta, capacity (1+alpha)*load.
struct CascadeParams {
    double beta = 1.0;
    double alpha = 0.5;
};

enum class AttackKind { Static, Dynamic };

struct AttackSpec {
    AttackKind kind = AttackKind::Static;
    CascadeParams params; // used by Dynamic only
};

/**
 * Mutable state of one cascade run.
 *
 * Failure of a node is a two-phase event: marking (the node stops being a
 * recipient and leaves the per-edge member counts) happens immediately,
 * while its load redistributes when it is dequeued. Edges latch failed
 * during the processing sweep once they hold at most one alive member;
 * a latched edge never carries load again.
 */
struct CascadeState {
    ActivityMask mask;
    std::vector<double> load;
    std::vector<double> capacity;
    std::vector<std::uint32_t> live_edge_count;   // alive incident edges per node
    std::vector<std::uint32_t> live_member_count; // alive members per edge
    std::deque<NodeId> pending;                   // failed but not yet redistributed
    std::vector<NodeId> failure_log;              // every failure in mark order
    double dropped_load = 0.0;                    // load lost to empty conduits
};

/// All node ids sorted by initial hyperdegree descending, ties by ascending id.
std::vector<NodeId> static_attack_order(const Hypergraph& h);

/// Intact state: load d^beta, capacity (1+alpha)*load, everything alive.
CascadeState init_cascade(const Hypergraph& h, const CascadeParams& params);

/// Marks node v failed (no-op if already failed): clears its alive bit,
/// removes it from member counts of non-latched incident edges, enqueues it.
void mark_failed(CascadeState& state, NodeId v, const Hypergraph& h);

/// Redistributes the queue-head failure: splits the node's current load
/// evenly over its non-latched incident edges, each edge splitting its share
/// evenly over its alive members; overloaded recipients are marked failed.
/// Load with no conduit or no recipients is dropped. Afterwards the node's
/// edges with <= 1 alive member latch failed.
void fail_and_redistribute(CascadeState& state, NodeId node, const Hypergraph& h);

/// Marks the attacked set (ascending id), processes the FIFO queue to
/// quiescence, and returns the final state with edge liveness recomputed.
CascadeState run_cascade(const Hypergraph& h, const std::vector<NodeId>& attacked,
                         const CascadeParams& params);

/// LCC fraction after attacking the first round(rho*N) nodes of `order`.
/// Static attacks just remove them; dynamic attacks run a fresh cascade.
/// Throws InvalidOrder if `order` is not a permutation of all node ids.
double percolation_sample(const Hypergraph& h, double rho, const AttackSpec& attack,
                          const std::vector<NodeId>& order);

/// Failure order under sequential greedy attack: repeatedly fail the alive
/// node with the highest current hyperdegree (ties by lowest id), let the
/// cascade settle, and record every failure in FIFO order.
std::vector<NodeId> dynamic_failure_order(const Hypergraph& h, const CascadeParams& params);

/// True when `order` contains every node id exactly once.
bool is_permutation(const Hypergraph& h, const std::vector<NodeId>& order);

} // namespace hyperrob

#endif // HYPERROB_CASCADE_HPP
