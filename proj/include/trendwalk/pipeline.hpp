#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "trendwalk/graph.hpp"
#include "trendwalk/walk.hpp"
#include "trendwalk/world.hpp"

namespace trendwalk {

struct RawCounts {
    std::uint32_t collected = 0;          // records received from the source
    std::uint32_t filtered = 0;           // unique trends inserted into the graph
    std::uint32_t duplicates_removed = 0; // eligible records whose label was already present
    std::uint32_t ineligible = 0;         // records below the follower floor

    bool operator==(const RawCounts&) const = default;
};

struct BuildResult {
    TrendGraph graph;
    TrendList list_a;
    RawCounts counts;
};

// Assembles the trend graph from raw records: records with fewer than
// min_followers distinct followers are dropped, duplicate labels merge
// into the existing node (their followers still attach), and the
// candidate list keeps first-insertion order.
inline BuildResult build_graph(std::span<const TrendRecord> records,
                               std::uint32_t min_followers) {
    BuildResult result;
    result.counts.collected = static_cast<std::uint32_t>(records.size());
    for (const TrendRecord& record : records) {
        std::vector<std::string_view> distinct;
        distinct.reserve(record.followers.size());
        std::unordered_set<std::string_view> seen;
        for (const std::string& handle : record.followers)
            if (seen.insert(handle).second) distinct.push_back(handle);
        if (distinct.size() < min_followers) {
            ++result.counts.ineligible;
            continue;
        }

        const bool known = result.graph.find_trend(record.label).has_value();
        const NodeId trend = result.graph.add_trend(record.label, record.country.woeid);
        if (known) {
            ++result.counts.duplicates_removed;
        } else {
            ++result.counts.filtered;
            result.list_a.push_back(trend);
        }
        for (std::string_view handle : distinct)
            result.graph.add_follower_edge(trend, handle);
    }
    return result;
}

// Step 2 of the collection pipeline: the top ten trending topics for one
// country, truncating whatever surplus the source may return.
inline std::vector<TrendRecord> fetch_trends(const TrendSource& source,
                                             const CountryRef& country) {
    std::vector<TrendRecord> batch = source.trends(country.woeid);
    if (batch.size() > kTrendBudgetPerCountry) batch.resize(kTrendBudgetPerCountry);
    return batch;
}

inline std::vector<TrendRecord> fetch_all(const TrendSource& source,
                                          std::span<const CountryRef> chosen) {
    std::vector<TrendRecord> records;
    for (const CountryRef& country : chosen) {
        std::vector<TrendRecord> batch = fetch_trends(source, country);
        for (TrendRecord& record : batch) records.push_back(std::move(record));
    }
    return records;
}

}  // namespace trendwalk
