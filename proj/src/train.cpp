#include "hyperrob/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "hyperrob/rng.hpp"

namespace hyperrob {

double cosine_lr(int t_cur, const TrainConfig& cfg) {
    if (t_cur < 0 || t_cur > cfg.t_max) {
        throw Error(ErrorCode::InvalidArgument, "t_cur must lie in [0, t_max]");
    }
    const double phase = M_PI * static_cast<double>(t_cur) / static_cast<double>(cfg.t_max);
    return cfg.eta_min + 0.5 * (cfg.eta_max - cfg.eta_min) * (1.0 + std::cos(phase));
}

namespace {

// Decoupled weight decay on top of bias-corrected adaptive moments.
class AdamW {
public:
    AdamW(std::size_t count, const TrainConfig& cfg)
        : cfg_(cfg), m_(count, 0.0), v_(count, 0.0) {}

    void step(ModelParameters& params, ModelParameters& grads, double lr) {
        ++t_;
        const double bias1 = 1.0 - std::pow(cfg_.beta1, t_);
        const double bias2 = 1.0 - std::pow(cfg_.beta2, t_);
        std::vector<std::pair<double*, std::size_t>> grad_spans;
        grads.visit_spans([&](const std::string&, double* ptr, std::size_t count) {
            grad_spans.push_back({ptr, count});
        });
        std::size_t offset = 0;
        std::size_t span_index = 0;
        params.visit_spans([&](const std::string&, double* theta, std::size_t count) {
            const double* g = grad_spans[span_index++].first;
            for (std::size_t i = 0; i < count; ++i) {
                double& m = m_[offset + i];
                double& v = v_[offset + i];
                m = cfg_.beta1 * m + (1.0 - cfg_.beta1) * g[i];
                v = cfg_.beta2 * v + (1.0 - cfg_.beta2) * g[i] * g[i];
                const double m_hat = m / bias1;
                const double v_hat = v / bias2;
                theta[i] -= lr * (m_hat / (std::sqrt(v_hat) + cfg_.adam_epsilon) +
                                  cfg_.weight_decay * theta[i]);
            }
            offset += count;
        });
    }

private:
    TrainConfig cfg_;
    std::vector<double> m_;
    std::vector<double> v_;
    long t_ = 0;
};

// Per-sample gradients computed in parallel slots, reduced in sample order.
double batch_loss_and_grad(const std::vector<BatchItem>& batch, const ModelParameters& params,
                           ModelParameters& grads, int threads) {
    const std::size_t count = batch.size();
    if (threads <= 1 || count <= 1) {
        return loss_and_grad(batch, params, grads);
    }
    std::vector<ModelParameters> slots;
    slots.reserve(count);
    for (std::size_t i = 0; i < count; ++i) slots.push_back(params.zeros_like());
    std::vector<double> losses(count, 0.0);

    const std::size_t workers = std::min<std::size_t>(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t worker = 0; worker < workers; ++worker) {
        pool.emplace_back([&, worker]() {
            for (std::size_t i = worker; i < count; i += workers) {
                losses[i] = sample_loss_and_grad(batch[i], params, slots[i]);
            }
        });
    }
    for (auto& thread : pool) thread.join();

    double loss = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        loss += losses[i];
        accumulate_params(grads, slots[i]);
    }
    const double inv = 1.0 / static_cast<double>(count);
    grads.visit_spans([&](const std::string&, double* ptr, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) ptr[i] *= inv;
    });
    return loss * inv;
}

} // namespace

double evaluate_mse(const std::vector<TrainSample>& samples, const ModelParameters& params) {
    if (samples.empty()) throw Error(ErrorCode::EmptyDataset, "no samples to evaluate");
    double sum = 0.0;
    for (const auto& sample : samples) {
        const double err = forward(sample.h, sample.feats, params).prediction - sample.label;
        sum += err * err;
    }
    return sum / static_cast<double>(samples.size());
}

TrainResult train(const std::vector<TrainSample>& dataset, const TrainConfig& cfg,
                  const std::vector<TrainSample>& validation) {
    if (dataset.empty()) throw Error(ErrorCode::EmptyDataset, "training dataset is empty");
    if (cfg.epochs < 1 || cfg.batch_size < 1 || cfg.eta_min > cfg.eta_max) {
        throw Error(ErrorCode::InvalidConfig, "bad training configuration");
    }

    TrainResult result;
    result.params = ModelParameters::random_init(cfg.model);
    AdamW optimizer(result.params.parameter_count(), cfg);
    SplitMix64 shuffle_rng(cfg.seed);

    ModelParameters best = result.params;
    double best_val = -1.0;

    std::vector<std::size_t> indices(dataset.size());
    std::iota(indices.begin(), indices.end(), 0);

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        const double lr = cosine_lr(epoch % (cfg.t_max + 1), cfg);

        for (std::size_t i = indices.size(); i > 1; --i) {
            std::swap(indices[i - 1], indices[shuffle_rng.next_below(i)]);
        }

        double epoch_loss = 0.0;
        std::size_t batches = 0;
        for (std::size_t start = 0; start < indices.size();
             start += static_cast<std::size_t>(cfg.batch_size)) {
            const std::size_t stop =
                std::min(indices.size(), start + static_cast<std::size_t>(cfg.batch_size));
            std::vector<BatchItem> batch;
            batch.reserve(stop - start);
            for (std::size_t i = start; i < stop; ++i) {
                const TrainSample& sample = dataset[indices[i]];
                batch.push_back({&sample.h, &sample.feats, sample.label});
            }
            ModelParameters grads = result.params.zeros_like();
            epoch_loss += batch_loss_and_grad(batch, result.params, grads, cfg.threads);
            ++batches;
            optimizer.step(result.params, grads, lr);
        }
        result.history.push_back({epoch_loss / static_cast<double>(batches), lr});

        if (!validation.empty()) {
            const double val = evaluate_mse(validation, result.params);
            if (best_val < 0.0 || val < best_val) {
                best_val = val;
                best = result.params;
            }
        }
    }

    if (!validation.empty()) {
        result.params = std::move(best);
        result.best_validation_loss = best_val;
    }
    return result;
}

} // namespace hyperrob
