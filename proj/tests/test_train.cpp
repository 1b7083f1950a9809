#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hyperrob/cascade.hpp"
#include "hyperrob/generators.hpp"
#include "hyperrob/train.hpp"
#include "hyperrob/rng.hpp"

using namespace hyperrob;

namespace {

TrainSample make_sample(const Hypergraph& h, double label) {
    TrainSample sample;
    sample.h = h;
    sample.feats = build_features(h, static_attack_order(h));
    sample.label = label;
    return sample;
}

std::vector<TrainSample> random_dataset(SplitMix64& rng, int count, double label_low,
                                        double label_high) {
    std::vector<TrainSample> dataset;
    for (int i = 0; i < count; ++i) {
        GeneratorConfig cfg;
        cfg.family = Family::ER;
        cfg.num_nodes = 10 + static_cast<NodeId>(rng.next_below(6));
        cfg.er_p = 0.2;
        cfg.seed = rng.next();
        auto h = generate(cfg);
        double label = label_low + (label_high - label_low) * rng.next_double();
        dataset.push_back(make_sample(h, label));
    }
    return dataset;
}

} // namespace

TEST_CASE("cosine schedule hits the exact endpoints and midpoint") {
    TrainConfig cfg;
    cfg.eta_max = 1e-3;
    cfg.eta_min = 1e-5;
    cfg.t_max = 200;
    CHECK(cosine_lr(0, cfg) == cfg.eta_max);
    CHECK(cosine_lr(200, cfg) == cfg.eta_min);
    CHECK(cosine_lr(100, cfg) == doctest::Approx((cfg.eta_max + cfg.eta_min) / 2.0)
                                     .epsilon(1e-15));
    CHECK_THROWS_AS(cosine_lr(-1, cfg), Error);
    CHECK_THROWS_AS(cosine_lr(201, cfg), Error);
}

TEST_CASE("training drives a constant-label dataset below 1e-6") {
    SplitMix64 rng(81);
    auto dataset = random_dataset(rng, 32, 0.42, 0.42);
    TrainConfig cfg;
    cfg.model = {1, 6, Aggregation::InjectiveSum, 3};
    cfg.epochs = 200;
    cfg.t_max = 200;
    cfg.batch_size = 4;
    cfg.eta_max = 2e-2;
    cfg.eta_min = 1e-5;
    cfg.weight_decay = 0.0;
    cfg.seed = 9;
    auto result = train(dataset, cfg);
    CHECK(result.history.back().loss < 1e-6);
}

TEST_CASE("history has one entry per epoch with the exact schedule") {
    SplitMix64 rng(82);
    auto dataset = random_dataset(rng, 6, 0.2, 0.8);
    TrainConfig cfg;
    cfg.model = {1, 4, Aggregation::InjectiveSum, 3};
    cfg.epochs = 17;
    cfg.t_max = 10; // forces a warm restart partway through
    cfg.batch_size = 4;
    cfg.seed = 5;
    auto result = train(dataset, cfg);
    REQUIRE(result.history.size() == 17);
    for (int epoch = 0; epoch < 17; ++epoch) {
        CHECK(result.history[epoch].lr == cosine_lr(epoch % (cfg.t_max + 1), cfg));
    }
}

TEST_CASE("equal seeds produce identical parameters") {
    SplitMix64 rng(83);
    auto dataset = random_dataset(rng, 10, 0.1, 0.9);
    TrainConfig cfg;
    cfg.model = {2, 6, Aggregation::InjectiveSum, 11};
    cfg.epochs = 12;
    cfg.batch_size = 4;
    cfg.seed = 1234;
    auto a = train(dataset, cfg);
    auto b = train(dataset, cfg);
    CHECK(serialize_model(a.params) == serialize_model(b.params));
}

TEST_CASE("thread count does not change the result") {
    SplitMix64 rng(84);
    auto dataset = random_dataset(rng, 12, 0.1, 0.9);
    TrainConfig cfg;
    cfg.model = {2, 6, Aggregation::InjectiveSum, 21};
    cfg.epochs = 6;
    cfg.batch_size = 6;
    cfg.seed = 77;
    cfg.threads = 1;
    auto sequential = train(dataset, cfg);
    cfg.threads = 4;
    auto threaded = train(dataset, cfg);
    CHECK(serialize_model(sequential.params) == serialize_model(threaded.params));
}

TEST_CASE("memorizing the 4-clique toy label") {
    auto h = Hypergraph::from_edge_list(4, {{0, 1, 2, 3}});
    std::vector<TrainSample> dataset(50, make_sample(h, 0.375));
    TrainConfig cfg;
    cfg.model = {2, 8, Aggregation::InjectiveSum, 4};
    cfg.epochs = 200;
    cfg.t_max = 200;
    cfg.batch_size = 32;
    cfg.eta_max = 1e-2;
    cfg.eta_min = 1e-4;
    cfg.weight_decay = 0.0;
    cfg.seed = 6;
    auto result = train(dataset, cfg);
    double prediction = predict(h, static_attack_order(h), result.params);
    CHECK(std::abs(prediction - 0.375) <= 0.02);
}

TEST_CASE("validation split returns the best snapshot") {
    SplitMix64 rng(85);
    auto dataset = random_dataset(rng, 16, 0.2, 0.8);
    auto validation = random_dataset(rng, 6, 0.2, 0.8);
    TrainConfig cfg;
    cfg.model = {1, 6, Aggregation::InjectiveSum, 31};
    cfg.epochs = 10;
    cfg.batch_size = 8;
    cfg.seed = 3;
    auto result = train(dataset, cfg, validation);
    CHECK(result.best_validation_loss >= 0.0);
    // The returned parameters reproduce the recorded best validation loss.
    CHECK(evaluate_mse(validation, result.params) ==
          doctest::Approx(result.best_validation_loss));
}

TEST_CASE("empty dataset is rejected") {
    TrainConfig cfg;
    CHECK_THROWS_AS(train({}, cfg), Error);
}
