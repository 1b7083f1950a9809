#include "hyperrob/robustness.hpp"

#include <algorithm>
#include <cmath>

namespace hyperrob {

PercolationSampler::PercolationSampler(const Hypergraph& h, const AttackSpec& attack,
                                       std::vector<NodeId> order)
    : h_(h), attack_(attack), order_(std::move(order)) {
    if (!is_permutation(h_, order_)) {
        throw Error(ErrorCode::InvalidOrder, "attack order is not a permutation of node ids");
    }
}

double PercolationSampler::sample_rho(double rho) {
    const NodeId n = h_.num_nodes();
    long long q = std::llround(rho * static_cast<double>(n));
    q = std::clamp<long long>(q, 0, n);
    return sample_q(static_cast<std::uint32_t>(q));
}

double PercolationSampler::sample_q(std::uint32_t q) {
    auto it = memo_.find(q);
    if (it != memo_.end()) return it->second;
    double rho = h_.num_nodes() == 0 ? 0.0
                                     : static_cast<double>(q) / static_cast<double>(h_.num_nodes());
    double s = percolation_sample(h_, rho, attack_, order_);
    memo_.emplace(q, s);
    return s;
}

double simpson_estimate(const std::function<double(double)>& s, double x, double y) {
    return (y - x) / 6.0 * (s(x) + 4.0 * s(0.5 * (x + y)) + s(y));
}

namespace {

double simpson_from_values(double x, double y, double fx, double fm, double fy) {
    return (y - x) / 6.0 * (fx + 4.0 * fm + fy);
}

double adaptive_step(const std::function<double(double)>& s, double a, double m, double b,
                     double fa, double fm, double fb, double whole, double eps, int depth,
                     int min_depth, int max_depth, QuadratureTrace* trace) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = s(lm);
    const double frm = s(rm);
    const double left = simpson_from_values(a, m, fa, flm, fm);
    const double right = simpson_from_values(m, b, fm, frm, fb);
    const double fine = left + right;
    const double discrepancy = std::abs(whole - fine);
    if (trace) trace->max_depth_reached = std::max(trace->max_depth_reached, depth);
    const bool accepted = depth >= min_depth && discrepancy < eps;
    if (accepted || depth >= max_depth) {
        if (trace) trace->leaves.push_back({a, b, depth});
        return fine;
    }
    return adaptive_step(s, a, lm, m, fa, flm, fm, left, 0.5 * eps, depth + 1, min_depth,
                         max_depth, trace) +
           adaptive_step(s, m, rm, b, fm, frm, fb, right, 0.5 * eps, depth + 1, min_depth,
                         max_depth, trace);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& s, double a, double b,
                        const QuadratureConfig& cfg, QuadratureTrace* trace) {
    if (a > b) throw Error(ErrorCode::InvalidArgument, "integration bounds must satisfy a <= b");
    if (cfg.epsilon <= 0.0 || cfg.max_depth < 1) {
        throw Error(ErrorCode::InvalidConfig, "quadrature needs epsilon > 0 and max_depth >= 1");
    }
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = s(a);
    const double fm = s(m);
    const double fb = s(b);
    const double whole = simpson_from_values(a, b, fa, fm, fb);
    return adaptive_step(s, a, m, b, fa, fm, fb, whole, cfg.epsilon, 1, cfg.min_depth,
                         cfg.max_depth, trace);
}

double robustness_discrete(PercolationSampler& sampler, std::uint32_t n) {
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "node count must be >= 1");
    double sum = 0.0;
    for (std::uint32_t q = 1; q <= n; ++q) sum += sampler.sample_q(q);
    return sum / static_cast<double>(n);
}

LabelResult label_hypergraph(const Hypergraph& h, const AttackSpec& attack,
                             const QuadratureConfig& cfg) {
    std::vector<NodeId> order = attack.kind == AttackKind::Static
                                    ? static_attack_order(h)
                                    : dynamic_failure_order(h, attack.params);
    return label_hypergraph(h, attack, cfg, std::move(order));
}

LabelResult label_hypergraph(const Hypergraph& h, const AttackSpec& attack,
                             const QuadratureConfig& cfg, std::vector<NodeId> order) {
    PercolationSampler sampler(h, attack, std::move(order));

    // Bisect until intervals span at most one removal-count step of the
    // curve, then let the discrepancy test take over. Memoization keeps the
    // simulation count at N+1 regardless.
    QuadratureConfig local = cfg;
    int depth = 1;
    while ((1u << (depth - 1)) < h.num_nodes() && depth < cfg.max_depth) ++depth;
    local.min_depth = std::max(cfg.min_depth, depth);

    LabelResult result;
    result.r = adaptive_simpson([&](double rho) { return sampler.sample_rho(rho); }, 0.0, 1.0,
                                local);
    result.eval_count = sampler.eval_count();
    return result;
}

} // namespace hyperrob
