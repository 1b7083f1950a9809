#ifndef HYPERROB_ROBUSTNESS_HPP
#define HYPERROB_ROBUSTNESS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "hyperrob/cascade.hpp"
#include "hyperrob/hypergraph.hpp"

namespace hyperrob {

/**
 * Quadrature settings. The tolerance is tied to the surrogate's target
 * prediction error: epsilon = delta_pred / 50, so label noise stays well
 * below the model error budget.
 */
struct QuadratureConfig {
    double epsilon = 1e-4;
    int max_depth = 10;
    double delta_pred = 5e-3;

    /// Depth below which intervals always bisect regardless of the
    /// discrepancy test. Percolation curves are staircases, and an interval
    /// holding several steps can pass the coarse/fine comparison while both
    /// estimates are wrong; forcing intervals down to at most one step each
    /// removes that failure mode. 1 leaves the plain recipe.
    int min_depth = 1;

    static QuadratureConfig from_delta_pred(double delta_pred) {
        QuadratureConfig cfg;
        cfg.delta_pred = delta_pred;
        cfg.epsilon = delta_pred / 50.0;
        return cfg;
    }
};

/**
 * Memoizing evaluator of the percolation curve s(rho).
 *
 * Every rho maps to the removal count q = round(rho*N), and each distinct q
 * is simulated at most once, so the adaptive integrator costs at most N+1
 * simulations no matter how deeply it recurses.
 */
class PercolationSampler {
public:
    PercolationSampler(const Hypergraph& h, const AttackSpec& attack,
                       std::vector<NodeId> order);

    double sample_rho(double rho);
    double sample_q(std::uint32_t q);

    /// Number of distinct simulations performed so far.
    std::size_t eval_count() const { return memo_.size(); }

private:
    const Hypergraph& h_;
    AttackSpec attack_;
    std::vector<NodeId> order_;
    std::map<std::uint32_t, double> memo_;
};

/// Accepted-leaf telemetry of one adaptive integration.
struct QuadratureTrace {
    struct Leaf {
        double a;
        double b;
        int depth;
    };
    std::vector<Leaf> leaves;
    int max_depth_reached = 0;
};

/// Simpson's rule on [x, y]: (y-x)/6 * [s(x) + 4 s((x+y)/2) + s(y)].
double simpson_estimate(const std::function<double(double)>& s, double x, double y);

/// Recursive adaptive Simpson integration of s over [a, b]. An interval is
/// accepted when the coarse/fine discrepancy falls below its local
/// tolerance (halved per level); at max_depth the fine estimate is returned
/// unconditionally.
double adaptive_simpson(const std::function<double(double)>& s, double a, double b,
                        const QuadratureConfig& cfg, QuadratureTrace* trace = nullptr);

/// Discrete robustness: (1/N) * sum over q=1..N of s(q).
double robustness_discrete(PercolationSampler& sampler, std::uint32_t n);

struct LabelResult {
    double r = 0.0;             // integral of the percolation curve
    std::size_t eval_count = 0; // distinct simulations performed
};

/// Robustness label for a connected hypergraph: adaptive Simpson integral
/// of the percolation curve over rho in [0, 1] plus the simulation count.
/// The attack order comes from static_attack_order or dynamic_failure_order
/// according to the attack kind.
LabelResult label_hypergraph(const Hypergraph& h, const AttackSpec& attack,
                             const QuadratureConfig& cfg);

/// Same, but with a caller-supplied attack order.
LabelResult label_hypergraph(const Hypergraph& h, const AttackSpec& attack,
                             const QuadratureConfig& cfg, std::vector<NodeId> order);

} // namespace hyperrob

#endif // HYPERROB_ROBUSTNESS_HPP
