#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "trendwalk/replay.hpp"
#include "trendwalk/world.hpp"

namespace trendwalk {

// Live-source wire contract. Requests and responses are single JSON values;
// the transport underneath (HTTP, pipe, in-process function) is not our
// business here.
//
//   {"op": "countries"}            -> [{"woeid": ..., "name": ...}, ...]
//   {"op": "trends", "woeid": W}   -> [TrendRecord, ...]
//
// Failures come back as {"error": "..."}.
inline nlohmann::json handle_request(const nlohmann::json& request, const TrendSource& source) {
    try {
        if (!request.is_object() || !request.contains("op"))
            return {{"error", "request must be an object with an \"op\" field"}};
        const std::string op = request.at("op").get<std::string>();
        if (op == "countries") {
            nlohmann::json out = nlohmann::json::array();
            for (const CountryRef& c : source.countries())
                out.push_back({{"woeid", c.woeid}, {"name", c.name}});
            return out;
        }
        if (op == "trends") {
            if (!request.contains("woeid")) return {{"error", "trends request needs a woeid"}};
            const auto woeid = request.at("woeid").get<std::int64_t>();
            nlohmann::json out = nlohmann::json::array();
            for (const TrendRecord& record : source.trends(woeid))
                out.push_back(record_to_json(record));
            return out;
        }
        return {{"error", "unknown op \"" + op + "\""}};
    } catch (const std::exception& e) {
        return {{"error", e.what()}};
    }
}

// Transport failure distinct from a well-formed error response; callers may
// retry these.
class TransportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class RemoteSource : public TrendSource {
public:
    using Transport = std::function<nlohmann::json(const nlohmann::json&)>;

    explicit RemoteSource(Transport transport, int attempts = 3)
        : transport_(std::move(transport)), attempts_(attempts < 1 ? 1 : attempts) {}

    std::vector<CountryRef> countries() const override {
        const nlohmann::json reply = exchange({{"op", "countries"}});
        std::vector<CountryRef> out;
        for (const nlohmann::json& entry : reply)
            out.push_back({entry.at("woeid").get<std::int64_t>(),
                           entry.at("name").get<std::string>()});
        return out;
    }

    std::vector<TrendRecord> trends(std::int64_t woeid) const override {
        const nlohmann::json reply = exchange({{"op", "trends"}, {"woeid", woeid}});
        std::vector<TrendRecord> out;
        for (const nlohmann::json& entry : reply) out.push_back(record_from_json(entry));
        return out;
    }

private:
    nlohmann::json exchange(const nlohmann::json& request) const {
        for (int attempt = 1;; ++attempt) {
            nlohmann::json reply;
            try {
                reply = transport_(request);
            } catch (const TransportError&) {
                if (attempt >= attempts_) throw;
                continue;
            }
            if (reply.is_object() && reply.contains("error")) {
                const auto message = reply.at("error").get<std::string>();
                if (message.starts_with("unknown woeid")) throw std::out_of_range(message);
                throw std::runtime_error("remote source: " + message);
            }
            if (!reply.is_array()) throw std::runtime_error("remote source: malformed reply");
            return reply;
        }
    }

    Transport transport_;
    int attempts_;
};

}  // namespace trendwalk
