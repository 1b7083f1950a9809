#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hyperrob/cascade.hpp"
#include "hyperrob/generators.hpp"
#include "hyperrob/rng.hpp"

using namespace hyperrob;

namespace {

Hypergraph triangle_of_pairs() {
    return Hypergraph::from_edge_list(3, {{0, 1}, {1, 2}, {0, 2}});
}

double alive_load_sum(const CascadeState& state) {
    double sum = 0.0;
    for (std::size_t v = 0; v < state.load.size(); ++v) {
        if (state.mask.node_alive[v]) sum += state.load[v];
    }
    return sum;
}

Hypergraph random_connected(SplitMix64& rng, NodeId n) {
    GeneratorConfig cfg;
    cfg.family = Family::ER;
    cfg.num_nodes = n;
    cfg.er_p = 0.25;
    cfg.seed = rng.next();
    return generate(cfg);
}

} // namespace

TEST_CASE("static_attack_order sorts by degree with id tiebreak") {
    auto h = Hypergraph::from_edge_list(3, {{0, 1}, {0, 1, 2}});
    CHECK(static_attack_order(h) == std::vector<NodeId>{0, 1, 2});
}

TEST_CASE("static_attack_order on a regular ring is the identity") {
    GeneratorConfig cfg;
    cfg.family = Family::WS;
    cfg.num_nodes = 12;
    cfg.ws_k_nn = 4;
    cfg.ws_p_rw = 0.0;
    auto h = generate(cfg);
    std::vector<NodeId> identity(12);
    std::iota(identity.begin(), identity.end(), 0);
    CHECK(static_attack_order(h) == identity);
}

TEST_CASE("static_attack_order handles a single node") {
    auto h = Hypergraph::from_edge_list(1, {});
    CHECK(static_attack_order(h) == std::vector<NodeId>{0});
}

TEST_CASE("init_cascade applies the load and capacity laws") {
    auto h = Hypergraph::from_edge_list(3, {{0, 1}, {0, 1, 2}});
    SUBCASE("beta 1, alpha 0.5") {
        auto state = init_cascade(h, {1.0, 0.5});
        CHECK(state.load[0] == 2.0);
        CHECK(state.capacity[0] == 3.0);
        CHECK(state.load[2] == 1.0);
    }
    SUBCASE("beta 0 flattens loads") {
        auto state = init_cascade(h, {0.0, 0.5});
        CHECK(state.load[0] == 1.0);
        CHECK(state.load[2] == 1.0);
    }
    SUBCASE("fractional load index") {
        auto state = init_cascade(h, {1.2, 0.5});
        CHECK(state.load[0] == doctest::Approx(std::pow(2.0, 1.2)));
    }
    SUBCASE("degree 3 at beta 1.2") {
        auto g = Hypergraph::from_edge_list(4, {{0, 1}, {0, 2}, {0, 3}});
        auto state = init_cascade(g, {1.2, 0.5});
        CHECK(state.load[0] == doctest::Approx(3.73719).epsilon(1e-5));
    }
}

TEST_CASE("single-edge cascade collapses at low tolerance") {
    auto h = Hypergraph::from_edge_list(3, {{0, 1, 2}});
    auto state = run_cascade(h, {0}, {1.0, 0.1});
    // Node 0's unit load goes through the one edge, split over two
    // recipients: 1.5 > 1.1 fails both.
    CHECK(state.mask.node_alive[0] == 0);
    CHECK(state.mask.node_alive[1] == 0);
    CHECK(state.mask.node_alive[2] == 0);
    CHECK(lcc_fraction(h, state.mask) == 0.0);
    CHECK(state.load[1] == doctest::Approx(1.5));
    CHECK(state.load[2] == doctest::Approx(1.5));
}

TEST_CASE("single-edge cascade with wide tolerance does not propagate") {
    auto h = Hypergraph::from_edge_list(3, {{0, 1, 2}});
    auto state = run_cascade(h, {0}, {1.0, 10.0});
    CHECK(state.mask.node_alive[1] == 1);
    CHECK(state.mask.node_alive[2] == 1);
    CHECK(state.mask.edge_alive[0] == 1);
    CHECK(state.load[1] == doctest::Approx(1.5));
    CHECK(lcc_fraction(h, state.mask) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("failing an isolated node only flips its mask bit") {
    auto h = Hypergraph::from_edge_list(3, {{0, 1}});
    auto state = run_cascade(h, {2}, {1.0, 0.5});
    CHECK(state.mask.node_alive[2] == 0);
    CHECK(state.mask.node_alive[0] == 1);
    CHECK(state.mask.node_alive[1] == 1);
    CHECK(state.mask.edge_alive[0] == 1);
    CHECK(state.load[0] == 1.0);
    CHECK(state.load[1] == 1.0); // nothing redistributed: degree-0 load is 0
}

TEST_CASE("triangle of pairs fully collapses at alpha 0.2") {
    auto h = triangle_of_pairs();
    auto state = run_cascade(h, {0}, {1.0, 0.2});
    // Load 2 splits over two live pair-edges; each single recipient takes
    // 1.0, reaching 3.0 > 2.4.
    for (NodeId v = 0; v < 3; ++v) CHECK(state.mask.node_alive[v] == 0);
    CHECK(lcc_fraction(h, state.mask) == 0.0);
}

TEST_CASE("empty attack set leaves the intact state") {
    auto h = triangle_of_pairs();
    auto state = run_cascade(h, {}, {1.0, 0.2});
    for (NodeId v = 0; v < 3; ++v) CHECK(state.mask.node_alive[v] == 1);
    CHECK(lcc_fraction(h, state.mask) == 1.0);
}

TEST_CASE("attacking every node kills everything") {
    auto h = triangle_of_pairs();
    auto state = run_cascade(h, {0, 1, 2}, {1.0, 0.2});
    CHECK(lcc_fraction(h, state.mask) == 0.0);
    for (EdgeId e = 0; e < 3; ++e) CHECK(state.mask.edge_alive[e] == 0);
}

TEST_CASE("load is conserved up to dropped load when nothing overloads") {
    SplitMix64 rng(77);
    for (int trial = 0; trial < 25; ++trial) {
        auto h = random_connected(rng, 12);
        CascadeParams params{1.0, 1e9}; // nothing can overload
        auto state = init_cascade(h, params);
        double before = alive_load_sum(state);
        NodeId target = static_cast<NodeId>(rng.next_below(h.num_nodes()));
        double target_load = state.load[target];
        mark_failed(state, target, h);
        state.pending.pop_front();
        fail_and_redistribute(state, target, h);
        double after = alive_load_sum(state);
        CHECK(after - (before - target_load) ==
              doctest::Approx(target_load - state.dropped_load).epsilon(1e-9));
    }
}

TEST_CASE("percolation_sample endpoints") {
    SplitMix64 rng(31);
    auto h = random_connected(rng, 15);
    auto order = static_attack_order(h);
    AttackSpec stat{AttackKind::Static, {}};
    CHECK(percolation_sample(h, 0.0, stat, order) == 1.0);
    CHECK(percolation_sample(h, 1.0, stat, order) == 0.0);

    AttackSpec dyn{AttackKind::Dynamic, {1.0, 0.5}};
    CHECK(percolation_sample(h, 0.0, dyn, order) == 1.0);
    CHECK(percolation_sample(h, 1.0, dyn, order) == 0.0);
}

TEST_CASE("percolation_sample static hand trace on the 4-clique edge") {
    auto h = Hypergraph::from_edge_list(4, {{0, 1, 2, 3}});
    AttackSpec stat{AttackKind::Static, {}};
    CHECK(percolation_sample(h, 0.75, stat, {0, 1, 2, 3}) == doctest::Approx(0.25));
}

TEST_CASE("percolation_sample rejects non-permutations") {
    auto h = triangle_of_pairs();
    AttackSpec stat{AttackKind::Static, {}};
    CHECK_THROWS_AS(percolation_sample(h, 0.5, stat, {0, 1}), Error);
    CHECK_THROWS_AS(percolation_sample(h, 0.5, stat, {0, 1, 1}), Error);
}

TEST_CASE("static percolation is non-increasing in rho") {
    SplitMix64 rng(32);
    for (int trial = 0; trial < 10; ++trial) {
        auto h = random_connected(rng, 14);
        auto order = static_attack_order(h);
        AttackSpec stat{AttackKind::Static, {}};
        double previous = 1.0;
        for (NodeId q = 0; q <= h.num_nodes(); ++q) {
            double rho = static_cast<double>(q) / h.num_nodes();
            double s = percolation_sample(h, rho, stat, order);
            CHECK(s <= previous + 1e-12);
            previous = s;
        }
    }
}

TEST_CASE("dynamic percolation never exceeds static for the same attacked set") {
    SplitMix64 rng(33);
    for (int trial = 0; trial < 12; ++trial) {
        auto h = random_connected(rng, 8);
        auto order = static_attack_order(h);
        AttackSpec stat{AttackKind::Static, {}};
        AttackSpec dyn{AttackKind::Dynamic, {1.0, 0.3}};
        for (NodeId q = 0; q <= h.num_nodes(); ++q) {
            double rho = static_cast<double>(q) / h.num_nodes();
            CHECK(percolation_sample(h, rho, dyn, order) <=
                  percolation_sample(h, rho, stat, order) + 1e-12);
        }
    }
}

TEST_CASE("huge tolerance makes dynamic equal static exactly") {
    SplitMix64 rng(34);
    for (int trial = 0; trial < 10; ++trial) {
        auto h = random_connected(rng, 12);
        auto order = static_attack_order(h);
        AttackSpec stat{AttackKind::Static, {}};
        AttackSpec dyn{AttackKind::Dynamic, {1.0, 1e6}};
        for (NodeId q = 0; q <= h.num_nodes(); ++q) {
            double rho = static_cast<double>(q) / h.num_nodes();
            CHECK(percolation_sample(h, rho, dyn, order) ==
                  percolation_sample(h, rho, stat, order));
        }
    }
}

TEST_CASE("cascade runs are deterministic") {
    SplitMix64 rng(35);
    auto h = random_connected(rng, 20);
    auto a = run_cascade(h, {1, 4, 7}, {1.0, 0.4});
    auto b = run_cascade(h, {7, 1, 4}, {1.0, 0.4});
    CHECK(a.mask.node_alive == b.mask.node_alive);
    CHECK(a.load == b.load);
    CHECK(a.failure_log == b.failure_log);
}

TEST_CASE("live counters agree with the mask at quiescence") {
    SplitMix64 rng(38);
    for (int trial = 0; trial < 15; ++trial) {
        auto h = random_connected(rng, 14);
        std::vector<NodeId> attacked;
        for (NodeId v = 0; v < h.num_nodes(); ++v) {
            if (rng.next_bernoulli(0.25)) attacked.push_back(v);
        }
        auto state = run_cascade(h, attacked, {1.0, 0.3});
        CHECK(state.pending.empty());
        for (EdgeId e = 0; e < h.num_edges(); ++e) {
            std::uint32_t alive = 0;
            for (NodeId v : h.edges()[e]) alive += state.mask.node_alive[v] ? 1 : 0;
            if (state.mask.edge_alive[e]) CHECK(state.live_member_count[e] == alive);
        }
        for (NodeId v = 0; v < h.num_nodes(); ++v) {
            std::uint32_t live_edges = 0;
            for (EdgeId e : h.incident_edges(v)) live_edges += state.mask.edge_alive[e] ? 1 : 0;
            CHECK(state.live_edge_count[v] == live_edges);
        }
    }
}

TEST_CASE("dynamic_failure_order is a permutation and matches the greedy trace") {
    auto h = triangle_of_pairs();
    CHECK(dynamic_failure_order(h, {1.0, 0.2}) == std::vector<NodeId>{0, 1, 2});

    SplitMix64 rng(36);
    for (int trial = 0; trial < 10; ++trial) {
        auto g = random_connected(rng, 15);
        auto order = dynamic_failure_order(g, {1.0, 0.5});
        CHECK(is_permutation(g, order));
    }
}

TEST_CASE("dynamic_failure_order with huge tolerance is adaptive greedy removal") {
    SplitMix64 rng(37);
    for (int trial = 0; trial < 8; ++trial) {
        auto h = random_connected(rng, 12);
        auto order = dynamic_failure_order(h, {1.0, 1e9});

        // Reference: repeatedly remove the alive node with the most edges
        // still holding >= 2 alive members, no load dynamics at all.
        auto mask = ActivityMask::all_alive(h);
        std::vector<NodeId> expected;
        for (NodeId step = 0; step < h.num_nodes(); ++step) {
            NodeId best = h.num_nodes();
            std::size_t best_degree = 0;
            for (NodeId v = 0; v < h.num_nodes(); ++v) {
                if (!mask.node_alive[v]) continue;
                std::size_t degree = 0;
                for (EdgeId e : h.incident_edges(v)) degree += mask.edge_alive[e] ? 1 : 0;
                if (best == h.num_nodes() || degree > best_degree) {
                    best = v;
                    best_degree = degree;
                }
            }
            expected.push_back(best);
            mask.node_alive[best] = 0;
            mask = recompute_edge_liveness(h, mask);
        }
        CHECK(order == expected);
    }
}

TEST_CASE("isolated nodes fail last in id order") {
    auto h = Hypergraph::from_edge_list(5, {{0, 1}});
    auto order = dynamic_failure_order(h, {1.0, 10.0});
    REQUIRE(order.size() == 5);
    // Degree-0 nodes 2,3,4 trail in ascending id order.
    CHECK(std::vector<NodeId>(order.end() - 3, order.end()) == std::vector<NodeId>{2, 3, 4});
}
