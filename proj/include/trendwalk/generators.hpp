#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <variant>
#include <vector>

#include "trendwalk/rng.hpp"

namespace trendwalk {

// Index into the current trend list; always in [0, list_len).
using CandidateIndex = std::size_t;

enum class GeneratorKind : std::uint8_t { Brownian, Illusion, Reservoir };

inline constexpr std::string_view generator_name(GeneratorKind kind) {
    switch (kind) {
        case GeneratorKind::Brownian: return "brownian";
        case GeneratorKind::Illusion: return "illusion";
        case GeneratorKind::Reservoir: return "reservoir";
    }
    return "unknown";
}

inline std::optional<GeneratorKind> generator_from_name(std::string_view name) {
    if (name == "brownian") return GeneratorKind::Brownian;
    if (name == "illusion") return GeneratorKind::Illusion;
    if (name == "reservoir") return GeneratorKind::Reservoir;
    return std::nullopt;
}

namespace detail {
inline void require_list_len(std::size_t list_len) {
    if (list_len == 0) throw std::invalid_argument("list length must be positive");
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Brownian: discretized uniform pick, floor(u * len) with u ~ U[0,1).

struct BrownianState {
    SplitMix64 rng;
    explicit BrownianState(Seed seed) : rng(seed) {}
};

inline CandidateIndex brownian_next(BrownianState& state, std::size_t list_len) {
    detail::require_list_len(list_len);
    auto idx = static_cast<std::size_t>(state.rng.next_double() *
                                        static_cast<double>(list_len));
    if (idx >= list_len) idx = list_len - 1;
    return idx;
}

// ---------------------------------------------------------------------------
// Illusion spiral: z <- a*z + b*z/|z|, candidate from |Re(z)| mod len.
// |a| == 1 so the a-term is a pure rotation; the b-term adds a vector of
// length ~1, so |z| grows without bound and |Re(z)| sweeps all magnitudes.

inline constexpr std::complex<double> kIllusionA{0.6, 0.8};
inline constexpr std::complex<double> kIllusionB{0.65, 0.7599};
inline constexpr std::complex<double> kIllusionStart{1.0, 0.0};

struct IllusionState {
    std::complex<double> z = kIllusionStart;
    std::uint64_t degenerate_steps = 0;
};

inline CandidateIndex illusion_next(IllusionState& state, std::size_t list_len) {
    detail::require_list_len(list_len);
    const double mag = std::abs(state.z);
    if (mag == 0.0) throw std::invalid_argument("illusion state must not sit at the origin");
    std::complex<double> z = kIllusionA * state.z + kIllusionB * (state.z / mag);
    if (std::abs(z) < 1e-12) {
        // The update factors as z' = (a|z| + b) * z/|z|, and both components
        // of a|z| + b are positive here, so |z'| >= |b| and this branch never
        // fires for these constants. Kept as a contract guard.
        ++state.degenerate_steps;
        z = kIllusionStart;
    }
    state.z = z;
    const double folded =
        std::fmod(std::floor(std::fabs(z.real())), static_cast<double>(list_len));
    return static_cast<CandidateIndex>(folded);
}

// ---------------------------------------------------------------------------
// Reservoir-as-generator: the non-conditional variant. Draw j ~ U[1, i],
// fold to (j-1) mod len, then advance the step counter.

struct ReservoirState {
    std::uint64_t step = 1;
    SplitMix64 rng;
    explicit ReservoirState(Seed seed) : rng(seed) {}
};

inline CandidateIndex reservoir_next(ReservoirState& state, std::size_t list_len) {
    detail::require_list_len(list_len);
    const std::uint64_t j = state.rng.uniform_int(1, state.step);
    ++state.step;
    return static_cast<CandidateIndex>((j - 1) % list_len);
}

// ---------------------------------------------------------------------------
// Classic reservoir sampling with the conditional replacement step; every
// source item ends up in the result with probability exactly k/N. The
// random source only needs uniform_int(1, i), which lets tests drive the
// algorithm through exhaustive outcome enumeration.

template <typename T, typename Rng>
std::vector<T> reservoir_sample(std::span<const T> source, std::size_t k, Rng& rng) {
    if (k == 0) throw std::invalid_argument("reservoir size must be positive");
    if (source.size() < k)
        throw std::invalid_argument("source must hold at least k items");
    std::vector<T> reservoir(source.begin(), source.begin() + static_cast<std::ptrdiff_t>(k));
    for (std::size_t i = k + 1; i <= source.size(); ++i) {
        const std::uint64_t j = rng.uniform_int(1, i);
        if (j <= k) reservoir[j - 1] = source[i - 1];
    }
    return reservoir;
}

template <typename T>
std::vector<T> reservoir_sample(std::span<const T> source, std::size_t k, Seed seed) {
    SplitMix64 rng(seed);
    return reservoir_sample(source, k, rng);
}

// ---------------------------------------------------------------------------
// Value-semantic wrapper so a walk can hold any of the three generators.

class CandidateGenerator {
public:
    CandidateGenerator(GeneratorKind kind, Seed seed) : kind_(kind), state_(make(kind, seed)) {}

    CandidateIndex next(std::size_t list_len) {
        return std::visit(
            [list_len](auto& state) { return next_of(state, list_len); }, state_);
    }

    GeneratorKind kind() const { return kind_; }

private:
    using State = std::variant<BrownianState, IllusionState, ReservoirState>;

    static State make(GeneratorKind kind, Seed seed) {
        switch (kind) {
            case GeneratorKind::Brownian: return BrownianState(seed);
            case GeneratorKind::Illusion: return IllusionState{};
            case GeneratorKind::Reservoir: return ReservoirState(seed);
        }
        throw std::invalid_argument("unknown generator kind");
    }

    static CandidateIndex next_of(BrownianState& s, std::size_t n) { return brownian_next(s, n); }
    static CandidateIndex next_of(IllusionState& s, std::size_t n) { return illusion_next(s, n); }
    static CandidateIndex next_of(ReservoirState& s, std::size_t n) { return reservoir_next(s, n); }

    GeneratorKind kind_;
    State state_;
};

}  // namespace trendwalk
