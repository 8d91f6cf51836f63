#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "trendwalk/graph.hpp"
#include "trendwalk/walk.hpp"

namespace trendwalk {

// Defaults follow the protocol this implements: 1100 draws, burn-in 100,
// first 10% vs last 50% windows, 30 trace points, |Z| <= 1 band.
inline constexpr double kGewekeFirstFrac = 0.10;
inline constexpr double kGewekeLastFrac = 0.50;
inline constexpr double kGewekeBand = 1.0;
inline constexpr std::size_t kGewekeTracePoints = 30;
inline constexpr std::size_t kGewekeBatchCount = 10;
inline constexpr std::size_t kMinPostBurnLength = 20;

// Iid treats window draws as independent; BatchMeans absorbs autocorrelation
// by estimating the variance of the window mean from 10 batch means.
enum class VarianceMode { Iid, BatchMeans };

namespace detail {

inline double mean_of(std::span<const double> xs) {
    double sum = 0.0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

inline double sample_variance(std::span<const double> xs, double mean) {
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return ss / static_cast<double>(xs.size() - 1);
}

struct WindowMoments {
    double mean = 0.0;
    double se2 = 0.0;  // estimated variance of the window mean
};

inline WindowMoments window_moments(std::span<const double> window, VarianceMode mode) {
    WindowMoments m;
    m.mean = mean_of(window);
    if (mode == VarianceMode::Iid) {
        m.se2 = sample_variance(window, m.mean) / static_cast<double>(window.size());
        return m;
    }
    const std::size_t batch = window.size() / kGewekeBatchCount;
    if (batch == 0)
        throw std::invalid_argument("geweke window too small for batch means");
    std::vector<double> batch_means;
    batch_means.reserve(kGewekeBatchCount);
    for (std::size_t b = 0; b < kGewekeBatchCount; ++b)
        batch_means.push_back(mean_of(window.subspan(b * batch, batch)));
    const double bm = mean_of(batch_means);
    m.se2 = sample_variance(batch_means, bm) / static_cast<double>(kGewekeBatchCount);
    return m;
}

}  // namespace detail

inline double geweke_z_from_moments(double mean_a, double se2_a, double mean_b, double se2_b) {
    const double denom = std::sqrt(se2_a + se2_b);
    if (denom == 0.0) {
        if (mean_a == mean_b) return 0.0;
        return std::copysign(std::numeric_limits<double>::infinity(), mean_a - mean_b);
    }
    return (mean_a - mean_b) / denom;
}

inline double geweke_z(std::span<const double> chain, std::size_t burn_in,
                       double first_frac = kGewekeFirstFrac, double last_frac = kGewekeLastFrac,
                       VarianceMode mode = VarianceMode::Iid) {
    if (!(first_frac > 0.0) || !(last_frac > 0.0) || first_frac > 1.0 || last_frac > 1.0)
        throw std::invalid_argument("geweke window fractions must lie in (0, 1]");
    if (chain.size() < burn_in + kMinPostBurnLength)
        throw std::invalid_argument("geweke chain too short after burn-in");
    const std::span<const double> post = chain.subspan(burn_in);
    const std::size_t n = post.size();
    const auto n_a = static_cast<std::size_t>(std::floor(first_frac * static_cast<double>(n)));
    const auto n_b = static_cast<std::size_t>(std::floor(last_frac * static_cast<double>(n)));
    if (n_a < 2 || n_b < 2) throw std::invalid_argument("geweke window has fewer than 2 draws");
    if (n_a + n_b > n) throw std::invalid_argument("geweke windows overlap");
    const detail::WindowMoments a = detail::window_moments(post.first(n_a), mode);
    const detail::WindowMoments b = detail::window_moments(post.last(n_b), mode);
    return geweke_z_from_moments(a.mean, a.se2, b.mean, b.se2);
}

struct GewekePoint {
    std::size_t iteration = 0;  // prefix length the score was computed at
    double z = 0.0;

    bool operator==(const GewekePoint&) const = default;
};

// Z-scores on growing prefixes, `points` evenly spaced lengths ending at the
// full chain. The shortest prefix is the shortest geweke_z accepts.
inline std::vector<GewekePoint> geweke_trace(std::span<const double> chain, std::size_t burn_in,
                                             std::size_t points = kGewekeTracePoints,
                                             double first_frac = kGewekeFirstFrac,
                                             double last_frac = kGewekeLastFrac,
                                             VarianceMode mode = VarianceMode::Iid) {
    if (points == 0) throw std::invalid_argument("geweke trace needs at least one point");
    const std::size_t lo = burn_in + kMinPostBurnLength;
    if (chain.size() < lo) throw std::invalid_argument("geweke chain too short after burn-in");
    std::vector<GewekePoint> trace;
    trace.reserve(points);
    for (std::size_t i = 0; i < points; ++i) {
        const std::size_t len =
            points == 1 ? chain.size() : lo + ((chain.size() - lo) * i) / (points - 1);
        if (!trace.empty() && trace.back().iteration == len) continue;
        trace.push_back({len, geweke_z(chain.first(len), burn_in, first_frac, last_frac, mode)});
    }
    return trace;
}

struct GewekeResult {
    std::vector<GewekePoint> z_scores;
    double fraction_in_band = 0.0;
    bool converged = false;
};

inline GewekeResult geweke_diagnose(std::span<const double> chain, std::size_t burn_in,
                                    std::size_t points = kGewekeTracePoints,
                                    double first_frac = kGewekeFirstFrac,
                                    double last_frac = kGewekeLastFrac,
                                    VarianceMode mode = VarianceMode::Iid,
                                    double band = kGewekeBand) {
    GewekeResult result;
    result.z_scores = geweke_trace(chain, burn_in, points, first_frac, last_frac, mode);
    std::size_t inside = 0;
    for (const GewekePoint& p : result.z_scores)
        if (std::fabs(p.z) <= band) ++inside;
    result.fraction_in_band =
        static_cast<double>(inside) / static_cast<double>(result.z_scores.size());
    result.converged = result.fraction_in_band > 0.5;
    return result;
}

// Degrees of the accepted picks, in order; rejected proposals contribute
// nothing since the walk never moved.
inline std::vector<double> degree_chain(const SampleTrace& trace, const TrendGraph& graph) {
    std::vector<double> chain;
    chain.reserve(trace.picks.size());
    for (const SamplePick& pick : trace.picks)
        if (pick.outcome != PickOutcome::Rejected)
            chain.push_back(static_cast<double>(graph.node_degree(pick.node)));
    return chain;
}

}  // namespace trendwalk
