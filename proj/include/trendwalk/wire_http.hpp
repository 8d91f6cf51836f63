#pragma once

// HTTP binding for the wire contract. Kept out of wire.hpp so that only
// translation units that actually speak HTTP pull in httplib.

#include <memory>
#include <string>
#include <thread>
#include <utility>

#include <httplib.h>
#include <json.hpp>

#include "trendwalk/wire.hpp"
#include "trendwalk/world.hpp"

namespace trendwalk {

// POSTs each request to <endpoint>/ as application/json.
class HttpTransport {
public:
    explicit HttpTransport(std::string endpoint) : endpoint_(std::move(endpoint)) {}

    nlohmann::json operator()(const nlohmann::json& request) const {
        httplib::Client client(endpoint_);
        client.set_connection_timeout(5, 0);
        client.set_read_timeout(10, 0);
        auto res = client.Post("/", request.dump(), "application/json");
        if (!res) throw TransportError("no response from " + endpoint_);
        if (res->status != 200)
            throw TransportError("HTTP " + std::to_string(res->status) + " from " + endpoint_);
        try {
            return nlohmann::json::parse(res->body);
        } catch (const std::exception& e) {
            throw TransportError(std::string("unparsable reply: ") + e.what());
        }
    }

private:
    std::string endpoint_;
};

inline RemoteSource make_http_source(const std::string& endpoint) {
    return RemoteSource(HttpTransport(endpoint));
}

// Serves a TrendSource over HTTP on a background thread. The source must
// outlive the server.
class WireServer {
public:
    explicit WireServer(const TrendSource& source) : source_(&source) {
        server_.Post("/", [this](const httplib::Request& req, httplib::Response& res) {
            nlohmann::json request;
            try {
                request = nlohmann::json::parse(req.body);
            } catch (const std::exception& e) {
                res.status = 400;
                res.set_content(nlohmann::json{{"error", e.what()}}.dump(), "application/json");
                return;
            }
            res.set_content(handle_request(request, *source_).dump(), "application/json");
        });
    }

    ~WireServer() { stop(); }

    WireServer(const WireServer&) = delete;
    WireServer& operator=(const WireServer&) = delete;

    // Binds to an OS-assigned port and returns it; 0 on failure.
    int start(const std::string& host = "127.0.0.1") {
        port_ = server_.bind_to_any_port(host);
        if (port_ <= 0) return 0;
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
        return port_;
    }

    bool start_on(const std::string& host, int port) {
        if (!server_.bind_to_port(host, port)) return false;
        port_ = port;
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
        return true;
    }

    void stop() {
        if (thread_.joinable()) {
            server_.stop();
            thread_.join();
        }
    }

    int port() const { return port_; }

private:
    const TrendSource* source_;
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
};

}  // namespace trendwalk
