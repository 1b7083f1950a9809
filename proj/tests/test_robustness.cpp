#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "hyperrob/generators.hpp"
#include "hyperrob/robustness.hpp"
#include "hyperrob/rng.hpp"

using namespace hyperrob;

namespace {

Hypergraph random_connected(SplitMix64& rng, NodeId n, double p = 0.2) {
    GeneratorConfig cfg;
    cfg.family = Family::ER;
    cfg.num_nodes = n;
    cfg.er_p = p;
    cfg.seed = rng.next();
    return generate(cfg);
}

// Composite trapezoid on a uniform grid, the reference the adaptive result
// is compared against.
double trapezoid_reference(PercolationSampler& sampler, int points) {
    double h = 1.0 / (points - 1);
    double sum = 0.5 * (sampler.sample_rho(0.0) + sampler.sample_rho(1.0));
    for (int i = 1; i < points - 1; ++i) sum += sampler.sample_rho(i * h);
    return sum * h;
}

} // namespace

TEST_CASE("simpson_estimate on constants and low-degree polynomials") {
    CHECK(simpson_estimate([](double) { return 1.0; }, 0.0, 1.0) == doctest::Approx(1.0));
    CHECK(simpson_estimate([](double x) { return x; }, 0.0, 1.0) == doctest::Approx(0.5));
    CHECK(simpson_estimate([](double x) { return x * x; }, 0.0, 1.0) ==
          doctest::Approx(1.0 / 3.0));
}

TEST_CASE("adaptive_simpson integrates (1-x)^2 to the analytic value") {
    QuadratureConfig cfg;
    cfg.epsilon = 1e-4;
    double result = adaptive_simpson([](double x) { return (1.0 - x) * (1.0 - x); }, 0.0, 1.0,
                                     cfg);
    CHECK(std::abs(result - 1.0 / 3.0) <= 1e-4);
}

TEST_CASE("adaptive_simpson is exact at depth one for cubics") {
    QuadratureConfig cfg;
    QuadratureTrace trace;
    double result = adaptive_simpson(
        [](double x) { return 2.0 * x * x * x - x * x + 0.5 * x - 3.0; }, 0.0, 1.0, cfg,
        &trace);
    // integral = 1/2 - 1/3 + 1/4 - 3
    CHECK(result == doctest::Approx(0.5 - 1.0 / 3.0 + 0.25 - 3.0).epsilon(1e-12));
    CHECK(trace.max_depth_reached == 1); // accepted immediately
}

TEST_CASE("adaptive_simpson accepts constants at the first comparison") {
    QuadratureConfig cfg;
    QuadratureTrace trace;
    double result = adaptive_simpson([](double) { return 0.7; }, 0.0, 2.0, cfg, &trace);
    CHECK(result == doctest::Approx(1.4));
    CHECK(trace.leaves.size() == 1);
}

TEST_CASE("adaptive_simpson localizes a step and respects the depth cap") {
    QuadratureConfig cfg;
    cfg.epsilon = 1e-5;
    cfg.max_depth = 10;
    QuadratureTrace trace;
    auto step = [](double x) { return x < 0.5 ? 1.0 : 0.0; };
    double result = adaptive_simpson(step, 0.0, 1.0, cfg, &trace);
    CHECK(std::abs(result - 0.5) <= 1e-3);
    CHECK(trace.max_depth_reached == 10);
    // The deepest accepted leaves cluster around the discontinuity.
    for (const auto& leaf : trace.leaves) {
        if (leaf.depth == 10) {
            CHECK(leaf.a <= 0.5 + 1e-12);
            CHECK(leaf.b >= 0.5 - 0.01);
        }
    }
}

TEST_CASE("quadrature results stay inside the sampled-value hull") {
    // Simpson weights are a convex combination, so the result over [0,1]
    // must land between the smallest and largest sampled value.
    SplitMix64 rng(41);
    for (int trial = 0; trial < 8; ++trial) {
        auto h = random_connected(rng, 16);
        AttackSpec stat{AttackKind::Static, {}};
        PercolationSampler sampler(h, stat, static_attack_order(h));
        QuadratureConfig cfg;
        double lo = 1.0, hi = 0.0;
        double r = adaptive_simpson(
            [&](double x) {
                double s = sampler.sample_rho(x);
                lo = std::min(lo, s);
                hi = std::max(hi, s);
                return s;
            },
            0.0, 1.0, cfg);
        CHECK(r >= lo - 1e-12);
        CHECK(r <= hi + 1e-12);
    }
}

TEST_CASE("config derived from the target model error is 50x stricter") {
    auto cfg = QuadratureConfig::from_delta_pred(5e-3);
    CHECK(cfg.epsilon * 50.0 == cfg.delta_pred);
    CHECK(cfg.epsilon == doctest::Approx(1e-4));
}

TEST_CASE("robustness_discrete on the single 4-clique edge") {
    auto h = Hypergraph::from_edge_list(4, {{0, 1, 2, 3}});
    AttackSpec stat{AttackKind::Static, {}};
    PercolationSampler sampler(h, stat, {0, 1, 2, 3});
    // s = [3/4, 2/4, 1/4, 0] averaged
    CHECK(robustness_discrete(sampler, 4) == doctest::Approx(0.375));
}

TEST_CASE("robustness_discrete of a single node is zero") {
    auto h = Hypergraph::from_edge_list(1, {});
    AttackSpec stat{AttackKind::Static, {}};
    PercolationSampler sampler(h, stat, {0});
    CHECK(robustness_discrete(sampler, 1) == 0.0);
}

TEST_CASE("robustness_discrete matches exhaustive removal enumeration") {
    // Chain of pair-edges; attack interior nodes first.
    auto h = Hypergraph::from_edge_list(4, {{0, 1}, {1, 2}, {2, 3}});
    AttackSpec stat{AttackKind::Static, {}};
    std::vector<NodeId> order = {1, 2, 0, 3};
    PercolationSampler sampler(h, stat, order);

    double expected = 0.0;
    for (std::uint32_t q = 1; q <= 4; ++q) {
        ActivityMask mask = ActivityMask::all_alive(h);
        for (std::uint32_t i = 0; i < q; ++i) mask.node_alive[order[i]] = 0;
        expected += lcc_fraction(h, recompute_edge_liveness(h, mask));
    }
    expected /= 4.0;
    CHECK(robustness_discrete(sampler, 4) == doctest::Approx(expected));
}

TEST_CASE("label_hypergraph agrees with the discrete average on static attacks") {
    auto h = Hypergraph::from_edge_list(4, {{0, 1, 2, 3}});
    AttackSpec stat{AttackKind::Static, {}};
    QuadratureConfig cfg;
    auto label = label_hypergraph(h, stat, cfg);

    PercolationSampler sampler(h, stat, static_attack_order(h));
    double discrete = robustness_discrete(sampler, 4);
    CHECK(std::abs(label.r - discrete) <= cfg.epsilon + 1.0 / (2.0 * 4.0));
}

TEST_CASE("labels in the no-overload limit match static labels") {
    SplitMix64 rng(42);
    for (int trial = 0; trial < 5; ++trial) {
        auto h = random_connected(rng, 18);
        QuadratureConfig cfg;
        auto order = static_attack_order(h);
        AttackSpec stat{AttackKind::Static, {}};
        AttackSpec dyn{AttackKind::Dynamic, {1.0, 1e9}};
        auto a = label_hypergraph(h, stat, cfg, order);
        auto b = label_hypergraph(h, dyn, cfg, order);
        CHECK(std::abs(a.r - b.r) <= cfg.epsilon);
    }
}

TEST_CASE("eval_count is bounded by the memoized removal counts") {
    SplitMix64 rng(43);
    auto h = random_connected(rng, 24);
    AttackSpec stat{AttackKind::Static, {}};
    QuadratureConfig cfg;
    auto label = label_hypergraph(h, stat, cfg);
    CHECK(label.eval_count <= h.num_nodes() + 1);
    CHECK(label.eval_count <= (1u << (cfg.max_depth + 1)) + 1);
}

TEST_CASE("tightening epsilon never drifts away from a fine reference") {
    SplitMix64 rng(44);
    for (int trial = 0; trial < 20; ++trial) {
        auto h = random_connected(rng, 10 + static_cast<NodeId>(rng.next_below(8)));
        AttackSpec stat{AttackKind::Static, {}};
        auto order = static_attack_order(h);

        PercolationSampler ref_sampler(h, stat, order);
        double reference = trapezoid_reference(ref_sampler, 10001);

        double previous_error = -1.0;
        for (double eps : {1e-2, 1e-3, 1e-4}) {
            QuadratureConfig cfg;
            cfg.epsilon = eps;
            cfg.max_depth = 16; // let epsilon, not the cap, drive acceptance
            auto label = label_hypergraph(h, stat, cfg, order);
            double error = std::abs(label.r - reference);
            if (previous_error >= 0.0) CHECK(error <= previous_error + 1e-12);
            previous_error = error;
        }
    }
}
