#pragma once

#include <cstdint>
#include <limits>

namespace trendwalk {

// Campaign and generator seeds. Same value, same output stream.
using Seed = std::uint64_t;

// SplitMix64 (Vigna's public-domain reference). Chosen because the
// reference sequence is published, so other implementations can pin
// the exact outputs for a given seed.
class SplitMix64 {
public:
    explicit SplitMix64(Seed seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0,1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform on the inclusive range [lo, hi], unbiased via rejection.
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
        const std::uint64_t span = hi - lo + 1;
        if (span == 0) return next();  // full 64-bit range
        const std::uint64_t rem =
            ((std::numeric_limits<std::uint64_t>::max() % span) + 1) % span;
        const std::uint64_t bound = std::numeric_limits<std::uint64_t>::max() - rem;
        std::uint64_t x = next();
        while (x > bound) x = next();
        return lo + x % span;
    }

private:
    std::uint64_t state_;
};

// Stateless mixing of a base seed with a stream tag, used to derive
// independent per-run and per-purpose seeds from one campaign seed.
inline Seed derive_seed(Seed base, std::uint64_t stream, std::uint64_t index = 0) {
    auto mix = [](std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    };
    std::uint64_t x = mix(base + 0x9E3779B97F4A7C15ULL * (stream + 1));
    return mix(x + 0x9E3779B97F4A7C15ULL * (index + 1));
}

}  // namespace trendwalk
