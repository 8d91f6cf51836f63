#pragma once

#include <cstdint>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "trendwalk/generators.hpp"
#include "trendwalk/graph.hpp"

namespace trendwalk {

// The candidate list the walk draws from: trend node ids in
// first-insertion order.
using TrendList = std::vector<NodeId>;

// Iteration budget per country, from the top-ten trend lists.
inline constexpr std::uint32_t kTrendBudgetPerCountry = 10;

enum class PickOutcome : std::uint8_t { Fresh, Duplicate, Rejected };

struct SamplePick {
    std::uint32_t iteration;
    NodeId node;  // accepted node, or the rejected candidate
    PickOutcome outcome;

    bool operator==(const SamplePick&) const = default;
};

// Ordered record of every iteration's pick. Rejections are kept so the
// accounting stays complete; downstream consumers filter them out.
struct SampleTrace {
    std::vector<SamplePick> picks;

    bool operator==(const SampleTrace&) const = default;
};

struct WalkConfig {
    GeneratorKind generator = GeneratorKind::Brownian;
    std::uint32_t countries = 15;
    std::uint32_t min_followers = 10;
    Seed seed = 0;

    std::uint32_t iterations() const { return countries * kTrendBudgetPerCountry; }
};

// Membership-accept MHRW over the trend list: per iteration draw a
// candidate index from the generator, resolve it to a node, accept iff
// the node belongs to the graph, otherwise stay put and record the
// rejection. Strictly sequential; byte-identical trace for fixed inputs.
inline SampleTrace run_walk_for(const TrendGraph& graph, const TrendList& list_a,
                                CandidateGenerator generator, std::size_t iterations) {
    if (list_a.empty()) throw std::invalid_argument("trend list must be non-empty");
    SampleTrace trace;
    trace.picks.reserve(iterations);
    std::unordered_set<NodeId> accepted;
    for (std::uint32_t t = 0; t < iterations; ++t) {
        const CandidateIndex idx = generator.next(list_a.size());
        const NodeId candidate = list_a[idx];
        PickOutcome outcome;
        if (graph.contains(candidate)) {
            outcome = accepted.insert(candidate).second ? PickOutcome::Fresh
                                                        : PickOutcome::Duplicate;
        } else {
            outcome = PickOutcome::Rejected;
        }
        trace.picks.push_back({t, candidate, outcome});
    }
    return trace;
}

inline SampleTrace run_walk(const TrendGraph& graph, const TrendList& list_a,
                            const WalkConfig& config) {
    return run_walk_for(graph, list_a, CandidateGenerator(config.generator, config.seed),
                        config.iterations());
}

// Walker positions v_t given v0 = first record retrieved; a rejected
// iteration leaves the position unchanged.
inline std::vector<NodeId> walk_positions(const SampleTrace& trace, NodeId v0) {
    std::vector<NodeId> positions;
    positions.reserve(trace.picks.size());
    NodeId v = v0;
    for (const SamplePick& pick : trace.picks) {
        if (pick.outcome != PickOutcome::Rejected) v = pick.node;
        positions.push_back(v);
    }
    return positions;
}

inline std::unordered_set<NodeId> unique_trends(const SampleTrace& trace) {
    std::unordered_set<NodeId> out;
    for (const SamplePick& pick : trace.picks)
        if (pick.outcome == PickOutcome::Fresh) out.insert(pick.node);
    return out;
}

// Fresh picks in acceptance order.
inline std::vector<NodeId> sampled_nodes(const SampleTrace& trace) {
    std::vector<NodeId> out;
    for (const SamplePick& pick : trace.picks)
        if (pick.outcome == PickOutcome::Fresh) out.push_back(pick.node);
    return out;
}

inline std::size_t fresh_count(const SampleTrace& trace) {
    std::size_t n = 0;
    for (const SamplePick& pick : trace.picks) n += pick.outcome == PickOutcome::Fresh;
    return n;
}

inline std::size_t duplicate_count(const SampleTrace& trace) {
    std::size_t n = 0;
    for (const SamplePick& pick : trace.picks) n += pick.outcome == PickOutcome::Duplicate;
    return n;
}

inline std::size_t rejected_count(const SampleTrace& trace) {
    std::size_t n = 0;
    for (const SamplePick& pick : trace.picks) n += pick.outcome == PickOutcome::Rejected;
    return n;
}

}  // namespace trendwalk
