#pragma once

// Seedable PRNG used everywhere randomness is needed (boundary-node
// perturbations, Monte Carlo sampling, color assignment).  The algorithm is
// pinned to splitmix64 so that identical seeds give identical streams on
// every platform; std::uniform_int_distribution is avoided because its
// output is implementation-defined.

#include <cstdint>
#include <vector>

namespace chordgrid {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform draw from [0, bound) by rejection; bound must be positive.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = -bound % bound;  // 2^64 mod bound
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform draw from {-d, ..., -1, 1, ..., d}; zero is never returned.
    long next_nonzero_in(long d) {
        const std::uint64_t r = next_below(2 * static_cast<std::uint64_t>(d));
        const long v = static_cast<long>(r) - d;
        return v < 0 ? v : v + 1;
    }

    double next_unit_double() { return (next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

template <typename T>
void shuffle(std::vector<T>& values, SplitMix64& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(values[i - 1], values[j]);
    }
}

}  // namespace chordgrid
