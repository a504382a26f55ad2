#pragma once

#include <cstdint>
#include <stdexcept>

namespace smplace {

/// Deterministic 64-bit random stream (splitmix64).
///
/// The standard <random> distributions are implementation-defined, so seeded
/// runs would not be reproducible across compilers. Everything that needs
/// randomness in this library draws from this generator instead, and the
/// draw order is part of each caller's determinism contract.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Unbiased integer in [0, n). n must be positive.
    std::uint64_t uniform_below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::uniform_below: n must be positive");
        const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
        std::uint64_t x = next_u64();
        while (x >= limit) x = next_u64();  // rejection keeps the draw unbiased
        return x % n;
    }

    /// Integer in [lo, hi], inclusive.
    int uniform_int(int lo, int hi) {
        if (lo > hi) throw std::invalid_argument("Rng::uniform_int: empty range");
        return lo + static_cast<int>(uniform_below(static_cast<std::uint64_t>(hi) - lo + 1));
    }

    /// Real in [0, 1) with 53 bits of resolution.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform01() < p; }

private:
    std::uint64_t state_;
};

}  // namespace smplace
