#pragma once

#include <cstdint>
#include <string>

#include "errors.hpp"
#include "fixed_points.hpp"
#include "rational.hpp"
#include "weights.hpp"

namespace jkvol {

// Deterministic 64-bit linear congruential generator (Knuth's MMIX multiplier). Draws use
// the high 32 bits, which carry the long-period structure; the low bits of an LCG are weak.
// Identical seeds produce identical streams on every platform, which is what the seeded
// verification modes and the test suite rely on.
class Lcg64 {
public:
    explicit Lcg64(std::uint64_t seed) : state_(seed) {}

    std::uint32_t next_u32() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<std::uint32_t>(state_ >> 32);
    }

    // Uniform in [0, n). Plain modulo: the bias is below 2^-25 for the small ranges used
    // here and keeps the draw sequence trivially reproducible.
    std::uint32_t below(std::uint32_t n) {
        if (n == 0) throw ArgumentError("Lcg64::below: empty range");
        return next_u32() % n;
    }

private:
    std::uint64_t state_;
};

// Draws a random weight vector with every entry p/q, 1 <= p < q <= max_den, rejecting until
// the result is in the open log-Fano range and off every wall. Rejection keeps the
// distribution honest (no nudging weights off walls, which would bias sweeps).
inline WeightVector random_weight_vector(int n, int m, Lcg64& rng, int max_den = 64,
                                         int max_attempts = 200000) {
    if (n < 1 || m < n + 2) throw ArgumentError("random_weight_vector: need n >= 1, m >= n+2");
    if (max_den < 2) throw ArgumentError("random_weight_vector: max_den must be >= 2");
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        WeightVector w;
        w.n = n;
        w.d.reserve(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) {
            std::uint32_t q = 2 + rng.below(static_cast<std::uint32_t>(max_den - 1));
            std::uint32_t p = 1 + rng.below(q - 1);
            w.d.push_back(rational(static_cast<long>(p), static_cast<long>(q)));
        }
        if (w.total() >= Rational(n + 1)) continue; // not log-Fano; by far the common reject
        if (!wall_check(w).empty()) continue;
        return w;
    }
    throw ArgumentError("random_weight_vector: no admissible vector after " +
                        std::to_string(max_attempts) + " attempts (n=" + std::to_string(n) +
                        ", m=" + std::to_string(m) + ")");
}

} // namespace jkvol
