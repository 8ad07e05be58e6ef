#pragma once

#include <cstdint>
#include <random>

namespace qballot {

/// Deterministic random source. All bounded draws go through rejection
/// sampling on the raw 64-bit stream, so the emitted values depend only on
/// the seed and never on a library's distribution internals.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform integer in [0, bound). bound must be >= 1.
    std::uint64_t uniform_below(std::uint64_t bound) {
        // largest multiple of bound that fits in 64 bits
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % bound;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform_unit() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Deterministic sub-stream seed for (seed, stream) pairs.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t z = seed + (stream + 1) * 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 gen_;
};

} // namespace qballot
