#pragma once

// Deterministic RNG wrapper. std::mt19937_64 is bit-reproducible across
// platforms but the standard distributions are not, so the draws here are
// hand-rolled: unit doubles from the top 53 bits, bounded integers by
// rejection (unbiased).

#include <cstdint>
#include <random>

namespace gmrg {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    double next_unit() { return (eng_() >> 11) * 0x1.0p-53; }

    // Uniform over [0, n), n > 0.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = eng_();
        } while (v >= limit);
        return v % n;
    }

    // Uniform over [lo, hi].
    double next_range(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

private:
    std::mt19937_64 eng_;
};

// Fixed stream-splitting scheme for per-chain RNGs (splitmix64 mix of the
// master seed and the stream index).
std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream);

}  // namespace gmrg
