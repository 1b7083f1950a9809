#ifndef HYPERROB_TRAIN_HPP
#define HYPERROB_TRAIN_HPP

#include <cstdint>
#include <vector>

#include "hyperrob/model.hpp"

namespace hyperrob {

struct TrainConfig {
    double eta_max = 1e-3;
    double eta_min = 1e-5;
    int t_max = 200;  // epochs per half-cosine
    int epochs = 200;
    int batch_size = 32;
    double weight_decay = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double adam_epsilon = 1e-8;
    std::uint64_t seed = 0;
    int threads = 1;
    ModelConfig model;
};

/// eta_min + (eta_max - eta_min)/2 * (1 + cos(pi * t_cur / t_max)).
/// Requires 0 <= t_cur <= t_max.
double cosine_lr(int t_cur, const TrainConfig& cfg);

struct TrainSample {
    Hypergraph h;
    FeatureSet feats;
    double label = 0.0;
};

struct EpochStats {
    double loss = 0.0; // mean training MSE across the epoch's batches
    double lr = 0.0;
};

struct TrainResult {
    ModelParameters params;
    std::vector<EpochStats> history; // exactly `epochs` entries
    double best_validation_loss = -1.0;
};

/**
 * Mini-batch AdamW with a cosine-annealed learning rate.
 *
 * Deterministic given the seed: a fixed shuffle generator orders batches
 * and per-sample gradients always reduce in sample order, so thread counts
 * do not change the result. With a non-empty validation set the returned
 * parameters are the best-validation snapshot, otherwise the final ones.
 * Throws EmptyDataset.
 */
TrainResult train(const std::vector<TrainSample>& dataset, const TrainConfig& cfg,
                  const std::vector<TrainSample>& validation = {});

/// Mean squared error of unclamped predictions over a sample set.
double evaluate_mse(const std::vector<TrainSample>& samples, const ModelParameters& params);

} // namespace hyperrob

#endif // HYPERROB_TRAIN_HPP
