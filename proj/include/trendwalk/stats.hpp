#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "trendwalk/generators.hpp"
#include "trendwalk/graph.hpp"
#include "trendwalk/pipeline.hpp"
#include "trendwalk/walk.hpp"

namespace trendwalk {

// Shortest representation that round-trips through a double. Integral values
// print without an exponent or trailing ".0" so CSV cells stay stable.
inline std::string format_number(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw std::runtime_error("number formatting failed");
    return std::string(buf, ptr);
}

struct RunReport {
    GeneratorKind generator = GeneratorKind::Brownian;
    std::int64_t collected = 0;
    std::int64_t filtered = 0;
    std::int64_t sampled = 0;
    std::int64_t duplicated = 0;
    std::int64_t rejected = 0;
    std::int64_t followers = 0;
    std::int64_t iterations = 0;
    std::int64_t nodes = 0;
    std::int64_t edges = 0;
    std::int64_t elapsed_ms = 0;
    double memory_mb_estimate = 0.0;

    double pct_sampled() const { return pct(sampled); }
    double pct_duplicated() const { return pct(duplicated); }
    double pct_rejected() const { return pct(rejected); }

    bool operator==(const RunReport&) const = default;

private:
    double pct(std::int64_t part) const {
        return iterations == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(iterations);
    }
};

// Accounting estimate from structure counts, not process RSS: measured
// footprints vary by allocator and environment, while this is reproducible.
inline constexpr double kBytesPerNode = 96.0;   // record + adjacency headers + index entries
inline constexpr double kBytesPerEdge = 24.0;   // two adjacency slots + dedup key
inline constexpr double kBytesPerPick = 24.0;

inline double estimate_memory_mb(const TrendGraph& graph, const SampleTrace& trace) {
    double text_bytes = 0.0;
    for (NodeId v = 0; v < graph.node_count(); ++v)
        text_bytes += static_cast<double>(graph.text(v).size());
    const double bytes = static_cast<double>(graph.node_count()) * kBytesPerNode +
                         static_cast<double>(graph.edge_count()) * kBytesPerEdge +
                         static_cast<double>(trace.picks.size()) * kBytesPerPick + text_bytes;
    return bytes / (1024.0 * 1024.0);
}

// Unique followers across the run's unique sampled trends.
inline std::int64_t follower_union_count(const TrendGraph& graph, const SampleTrace& trace) {
    std::unordered_set<NodeId> seen;
    for (NodeId trend : unique_trends(trace))
        for (NodeId user : graph.neighbors(trend)) seen.insert(user);
    return static_cast<std::int64_t>(seen.size());
}

inline RunReport make_run_report(GeneratorKind generator, const BuildResult& build,
                                 const SampleTrace& trace, std::int64_t elapsed_ms = 0) {
    RunReport report;
    report.generator = generator;
    report.collected = static_cast<std::int64_t>(build.counts.collected);
    report.filtered = static_cast<std::int64_t>(build.counts.filtered);
    report.sampled = static_cast<std::int64_t>(fresh_count(trace));
    report.duplicated = static_cast<std::int64_t>(duplicate_count(trace));
    report.rejected = static_cast<std::int64_t>(rejected_count(trace));
    report.followers = follower_union_count(build.graph, trace);
    report.iterations = static_cast<std::int64_t>(trace.picks.size());
    report.nodes = static_cast<std::int64_t>(build.graph.node_count());
    report.edges = static_cast<std::int64_t>(build.graph.edge_count());
    report.elapsed_ms = elapsed_ms;
    report.memory_mb_estimate = estimate_memory_mb(build.graph, trace);
    return report;
}

struct MetricSummary {
    std::string metric;
    double total = 0.0;
    double avg = 0.0;
    double std_dev = 0.0;
    bool std_defined = true;  // false for n = 1, where std_dev is reported as 0

    bool operator==(const MetricSummary&) const = default;
};

struct CampaignSummary {
    GeneratorKind generator = GeneratorKind::Brownian;
    std::size_t runs = 0;
    std::vector<MetricSummary> metrics;

    const MetricSummary& metric(const std::string& name) const {
        for (const MetricSummary& m : metrics)
            if (m.metric == name) return m;
        throw std::out_of_range("no metric named " + name);
    }
};

namespace detail {

inline MetricSummary summarize_values(std::string name, const std::vector<double>& values) {
    MetricSummary out;
    out.metric = std::move(name);
    for (double v : values) out.total += v;
    const auto n = static_cast<double>(values.size());
    out.avg = out.total / n;
    if (values.size() < 2) {
        out.std_defined = false;
        return out;
    }
    double ss = 0.0;
    for (double v : values) ss += (v - out.avg) * (v - out.avg);
    out.std_dev = std::sqrt(ss / (n - 1.0));
    return out;
}

}  // namespace detail

inline CampaignSummary summarize(std::span<const RunReport> reports) {
    if (reports.empty()) throw std::invalid_argument("summarize needs at least one report");
    for (const RunReport& r : reports)
        if (r.generator != reports.front().generator)
            throw std::invalid_argument("summarize takes one generator at a time");

    CampaignSummary summary;
    summary.generator = reports.front().generator;
    summary.runs = reports.size();

    const auto collect = [&](auto getter) {
        std::vector<double> values;
        values.reserve(reports.size());
        for (const RunReport& r : reports) values.push_back(static_cast<double>(getter(r)));
        return values;
    };

    summary.metrics.push_back(detail::summarize_values(
        "filtered", collect([](const RunReport& r) { return r.filtered; })));
    summary.metrics.push_back(detail::summarize_values(
        "sampled", collect([](const RunReport& r) { return r.sampled; })));
    summary.metrics.push_back(detail::summarize_values(
        "duplicated", collect([](const RunReport& r) { return r.duplicated; })));
    summary.metrics.push_back(detail::summarize_values(
        "followers", collect([](const RunReport& r) { return r.followers; })));
    summary.metrics.push_back(detail::summarize_values(
        "memory_mb", collect([](const RunReport& r) { return r.memory_mb_estimate; })));

    // Percentage rows: the headline figure is the pooled ratio over all runs,
    // alongside the spread of per-run percentages.
    std::int64_t total_iterations = 0;
    for (const RunReport& r : reports) total_iterations += r.iterations;
    const auto pct_rows = [&](std::string name, auto part, auto per_run) {
        std::int64_t total_part = 0;
        for (const RunReport& r : reports) total_part += part(r);
        MetricSummary row = detail::summarize_values(std::move(name), collect(per_run));
        row.total = total_iterations == 0
                        ? 0.0
                        : 100.0 * static_cast<double>(total_part) / static_cast<double>(total_iterations);
        summary.metrics.push_back(row);
    };
    pct_rows(
        "pct_sampled", [](const RunReport& r) { return r.sampled; },
        [](const RunReport& r) { return r.pct_sampled(); });
    pct_rows(
        "pct_duplicated", [](const RunReport& r) { return r.duplicated; },
        [](const RunReport& r) { return r.pct_duplicated(); });
    pct_rows(
        "pct_rejected", [](const RunReport& r) { return r.rejected; },
        [](const RunReport& r) { return r.pct_rejected(); });

    return summary;
}

}  // namespace trendwalk
