#ifndef HYPERROB_RNG_HPP
#define HYPERROB_RNG_HPP

#include <cstdint>

namespace hyperrob {

/**
 * SplitMix64 pseudo-random generator.
 *
 * Counter-based: the state advances along a fixed Weyl sequence and each
 * output is a finalizing mix of the counter. Chosen over std:: engines so
 * that identical seeds produce identical streams on every platform, which
 * the generators and training shuffles rely on.
 */
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 bits of resolution.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound), unbiased via rejection. bound must be > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound; // 2^64 mod bound
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    bool next_bernoulli(double p) { return next_double() < p; }

private:
    std::uint64_t state_;
};

/// Stable derivation of sub-stream seeds (retry attempts, worker streams).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
    SplitMix64 rng(base ^ (salt * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL));
    return rng.next();
}

} // namespace hyperrob

#endif // HYPERROB_RNG_HPP
