#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "trendwalk/world.hpp"

namespace trendwalk {

inline nlohmann::json record_to_json(const TrendRecord& record) {
    return {{"woeid", record.country.woeid},
            {"name", record.country.name},
            {"label", record.label},
            {"followers", record.followers}};
}

inline TrendRecord record_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::runtime_error("trend record must be a JSON object");
    TrendRecord record;
    record.country.woeid = j.at("woeid").get<std::int64_t>();
    record.country.name = j.at("name").get<std::string>();
    record.label = j.at("label").get<std::string>();
    record.followers = j.at("followers").get<std::vector<std::string>>();
    if (record.label.empty()) throw std::runtime_error("trend record has empty label");
    return record;
}

// Recording format: JSON Lines, one TrendRecord per line.
inline void write_jsonl(std::span<const TrendRecord> records, std::ostream& out) {
    for (const TrendRecord& record : records) out << record_to_json(record).dump() << "\n";
    if (!out) throw std::runtime_error("jsonl write failed");
}

inline std::vector<TrendRecord> read_jsonl(std::istream& in) {
    std::vector<TrendRecord> records;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            records.push_back(record_from_json(nlohmann::json::parse(line)));
        } catch (const std::exception& e) {
            throw std::runtime_error("jsonl line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return records;
}

inline void write_jsonl_file(std::span<const TrendRecord> records,
                             const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_jsonl(records, out);
}

inline std::vector<TrendRecord> read_jsonl_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_jsonl(in);
}

// Serves a previously recorded session; repeated fetches return the
// same records in file order.
class ReplaySource : public TrendSource {
public:
    explicit ReplaySource(std::vector<TrendRecord> records) : records_(std::move(records)) {
        for (const TrendRecord& record : records_) {
            bool known = false;
            for (const CountryRef& c : directory_) known |= c.woeid == record.country.woeid;
            if (!known) directory_.push_back(record.country);
        }
    }

    static ReplaySource from_file(const std::filesystem::path& path) {
        return ReplaySource(read_jsonl_file(path));
    }

    std::vector<CountryRef> countries() const override { return directory_; }

    std::vector<TrendRecord> trends(std::int64_t woeid) const override {
        std::vector<TrendRecord> out;
        for (const TrendRecord& record : records_)
            if (record.country.woeid == woeid) out.push_back(record);
        if (out.empty()) throw std::out_of_range("unknown woeid " + std::to_string(woeid));
        return out;
    }

    const std::vector<TrendRecord>& records() const { return records_; }

private:
    std::vector<TrendRecord> records_;
    std::vector<CountryRef> directory_;
};

}  // namespace trendwalk
