#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "trendwalk/rng.hpp"

namespace trendwalk {

// WOEID scan range used to discover countries with public trend feeds.
inline constexpr std::int64_t kWoeidRangeLo = 23424000;
inline constexpr std::int64_t kWoeidRangeHi = 23425000;

struct CountryRef {
    std::int64_t woeid = 0;
    std::string name;

    bool operator==(const CountryRef&) const = default;
};

// One country's trending topic with the users following it.
struct TrendRecord {
    std::string label;
    CountryRef country;
    std::vector<std::string> followers;

    bool operator==(const TrendRecord&) const = default;
};

// Parameters of the synthetic trend world that stands in for a live
// service: per-country top lists, truncated-Zipf follower counts over a
// shared user universe, and a probability that a top-list slot carries a
// label shared across countries.
struct WorldSpec {
    std::uint32_t country_count = 42;
    std::uint32_t trends_per_country = 10;
    double zipf_exponent = 0.8;
    std::uint32_t max_followers = 200;
    double overlap_prob = 0.2;
    Seed seed = 1;
};

// Read-only stream of per-country trend lists.
class TrendSource {
public:
    virtual ~TrendSource() = default;
    virtual std::vector<CountryRef> countries() const = 0;
    // Throws std::out_of_range for a woeid the source does not know.
    virtual std::vector<TrendRecord> trends(std::int64_t woeid) const = 0;
};

inline const std::vector<std::string>& default_country_names() {
    static const std::vector<std::string> names = {
        "Argentina",  "Australia",   "Belgium",     "Brazil",
        "Canada",     "Chile",       "Colombia",    "Dominican Republic",
        "Ecuador",    "France",      "Germany",     "Greece",
        "Guatemala",  "India",       "Indonesia",   "Ireland",
        "Italy",      "Japan",       "Kenya",       "Korea",
        "Malaysia",   "Mexico",      "Netherlands", "New Zealand",
        "Nigeria",    "Norway",      "Pakistan",    "Peru",
        "Philippines","Poland",      "Portugal",    "Russia",
        "Singapore",  "South Africa","Spain",       "Sweden",
        "United Arab Emirates",      "Turkey",
        "Ukraine",    "United Kingdom",
        "United States",             "Venezuela"};
    return names;
}

// Truncated Zipf on {1..max}: P(n) proportional to n^-s.
class ZipfDistribution {
public:
    ZipfDistribution(double exponent, std::uint32_t max) {
        if (!(exponent > 0.0) || max == 0)
            throw std::invalid_argument("zipf needs exponent > 0 and max >= 1");
        cdf_.reserve(max);
        double total = 0.0;
        for (std::uint32_t n = 1; n <= max; ++n) {
            total += std::pow(static_cast<double>(n), -exponent);
            cdf_.push_back(total);
        }
        for (double& c : cdf_) c /= total;
    }

    std::uint32_t sample(SplitMix64& rng) const {
        const double u = rng.next_double();
        auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        if (it == cdf_.end()) --it;
        return static_cast<std::uint32_t>(it - cdf_.begin()) + 1;
    }

private:
    std::vector<double> cdf_;
};

// Deterministic simulator: trends(woeid) is a pure function of
// (spec.seed, woeid), so repeated and concurrent fetches agree.
class SyntheticWorld : public TrendSource {
public:
    explicit SyntheticWorld(WorldSpec spec)
        : spec_(spec), zipf_(spec.zipf_exponent, std::max(spec.max_followers, 1u)) {
        if (spec_.overlap_prob < 0.0 || spec_.overlap_prob > 1.0)
            throw std::invalid_argument("overlap_prob must lie in [0,1]");
        if (spec_.country_count == 0 || spec_.trends_per_country == 0)
            throw std::invalid_argument("world needs at least one country and one trend");
        const std::int64_t step = std::max<std::int64_t>(
            1, (kWoeidRangeHi - kWoeidRangeLo) / (spec_.country_count + 1));
        const auto& names = default_country_names();
        directory_.reserve(spec_.country_count);
        for (std::uint32_t k = 0; k < spec_.country_count; ++k) {
            std::string name = k < names.size() ? names[k]
                                                : "Country " + std::to_string(k + 1);
            directory_.push_back({kWoeidRangeLo + step * (k + 1), std::move(name)});
        }
        for (const CountryRef& c : directory_) name_by_woeid_.emplace(c.woeid, c.name);
    }

    std::vector<CountryRef> countries() const override { return directory_; }

    std::vector<TrendRecord> trends(std::int64_t woeid) const override {
        auto it = name_by_woeid_.find(woeid);
        if (it == name_by_woeid_.end())
            throw std::out_of_range("unknown woeid " + std::to_string(woeid));
        const CountryRef country{woeid, it->second};

        SplitMix64 rng(derive_seed(spec_.seed, static_cast<std::uint64_t>(woeid)));
        const std::uint64_t universe =
            std::max<std::uint64_t>(10, 10ull * spec_.max_followers);

        std::vector<TrendRecord> records;
        records.reserve(spec_.trends_per_country);
        for (std::uint32_t slot = 0; slot < spec_.trends_per_country; ++slot) {
            TrendRecord record;
            record.country = country;
            const bool shared = rng.next_double() < spec_.overlap_prob;
            record.label = shared ? "#shared_" + std::to_string(slot)
                                  : "#" + slug(country.name) + "_" + std::to_string(slot);
            const std::uint32_t follower_count = zipf_.sample(rng);
            record.followers.reserve(follower_count);
            std::unordered_set<std::uint64_t> seen;
            while (record.followers.size() < follower_count) {
                const std::uint64_t user = rng.uniform_int(0, universe - 1);
                if (seen.insert(user).second)
                    record.followers.push_back("@u" + std::to_string(user));
            }
            records.push_back(std::move(record));
        }
        return records;
    }

    const WorldSpec& spec() const { return spec_; }

private:
    static std::string slug(std::string_view name) {
        std::string out;
        out.reserve(name.size());
        for (char c : name) {
            if (c == ' ') continue;
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
        return out;
    }

    WorldSpec spec_;
    ZipfDistribution zipf_;
    std::vector<CountryRef> directory_;
    std::unordered_map<std::int64_t, std::string> name_by_woeid_;
};

// All countries whose woeid lies in [lo, hi], ascending by woeid.
inline std::vector<CountryRef> scan_woeids(std::span<const CountryRef> directory,
                                           std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("woeid range must be non-empty");
    std::vector<CountryRef> out;
    for (const CountryRef& c : directory)
        if (c.woeid >= lo && c.woeid <= hi) out.push_back(c);
    std::sort(out.begin(), out.end(),
              [](const CountryRef& a, const CountryRef& b) { return a.woeid < b.woeid; });
    return out;
}

// w distinct countries drawn uniformly without replacement, returned in
// ascending woeid order.
inline std::vector<CountryRef> select_countries(std::span<const CountryRef> countries,
                                                std::size_t w, Seed seed) {
    if (countries.size() < w)
        throw std::invalid_argument("cannot select more countries than available");
    std::vector<std::size_t> index(countries.size());
    std::iota(index.begin(), index.end(), std::size_t{0});
    SplitMix64 rng(seed);
    for (std::size_t i = 0; i < w; ++i) {
        const std::size_t j =
            static_cast<std::size_t>(rng.uniform_int(i, countries.size() - 1));
        std::swap(index[i], index[j]);
    }
    index.resize(w);
    std::vector<CountryRef> out;
    out.reserve(w);
    for (std::size_t i : index) out.push_back(countries[i]);
    std::sort(out.begin(), out.end(),
              [](const CountryRef& a, const CountryRef& b) { return a.woeid < b.woeid; });
    return out;
}

}  // namespace trendwalk
