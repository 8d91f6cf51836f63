#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace trendwalk {

// Node ids are dense and assigned in insertion order starting at 0.
using NodeId = std::uint32_t;

enum class NodeKind : std::uint8_t { Trend, User };

// Result of add_follower_edge: was the user new, already known, or the
// whole (trend, user) edge a repeat.
enum class EdgeOutcome : std::uint8_t { NewUserEdge, ExistingUserEdge, DuplicateEdge };

// Undirected bipartite graph of trend nodes and follower (user) nodes.
// Trend identity is the exact label string, user identity the exact
// handle string; duplicate inserts are counted, never duplicated.
// Single writer; safe for concurrent reads once construction is done.
class TrendGraph {
public:
    NodeId add_trend(std::string_view label, std::int64_t woeid = 0) {
        if (label.empty()) throw std::invalid_argument("trend label must be non-empty");
        auto it = trend_index_.find(std::string(label));
        if (it != trend_index_.end()) {
            ++duplicate_trend_events_;
            return it->second;
        }
        NodeId id = new_node(NodeKind::Trend, label, woeid);
        trend_index_.emplace(std::string(label), id);
        return id;
    }

    NodeId add_user(std::string_view handle) {
        if (handle.empty()) throw std::invalid_argument("user handle must be non-empty");
        auto it = user_index_.find(std::string(handle));
        if (it != user_index_.end()) return it->second;
        NodeId id = new_node(NodeKind::User, handle, 0);
        user_index_.emplace(std::string(handle), id);
        return id;
    }

    EdgeOutcome add_follower_edge(NodeId trend, std::string_view handle) {
        require_trend(trend);
        auto it = user_index_.find(std::string(handle));
        const bool user_known = it != user_index_.end();
        NodeId user = user_known ? it->second : add_user(handle);
        if (!insert_edge(trend, user)) {
            ++duplicate_edge_events_;
            return EdgeOutcome::DuplicateEdge;
        }
        if (user_known) {
            ++duplicate_user_events_;
            return EdgeOutcome::ExistingUserEdge;
        }
        return EdgeOutcome::NewUserEdge;
    }

    // Edge between two existing nodes; exactly one endpoint must be a
    // trend. Returns false when the edge is already present.
    bool add_edge(NodeId a, NodeId b) {
        require_node(a);
        require_node(b);
        NodeId trend = a, user = b;
        if (kind(a) == NodeKind::User) std::swap(trend, user);
        if (kind(trend) != NodeKind::Trend || kind(user) != NodeKind::User)
            throw std::invalid_argument("edge endpoints must be one trend and one user");
        return insert_edge(trend, user);
    }

    std::size_t node_degree(NodeId id) const {
        require_node(id);
        return adjacency_[id].size();
    }

    // For trends, degree == follower count by construction.
    std::size_t follower_count(NodeId trend) const {
        require_trend(trend);
        return adjacency_[trend].size();
    }

    bool contains(NodeId id) const { return id < nodes_.size(); }

    std::optional<NodeId> find_trend(std::string_view label) const {
        auto it = trend_index_.find(std::string(label));
        if (it == trend_index_.end()) return std::nullopt;
        return it->second;
    }

    std::optional<NodeId> find_user(std::string_view handle) const {
        auto it = user_index_.find(std::string(handle));
        if (it == user_index_.end()) return std::nullopt;
        return it->second;
    }

    NodeKind kind(NodeId id) const {
        require_node(id);
        return nodes_[id].kind;
    }

    // Trend label or user handle.
    const std::string& text(NodeId id) const {
        require_node(id);
        return nodes_[id].text;
    }

    std::int64_t woeid(NodeId trend) const {
        require_trend(trend);
        return nodes_[trend].woeid;
    }

    std::span<const NodeId> neighbors(NodeId id) const {
        require_node(id);
        return adjacency_[id];
    }

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t trend_count() const { return trend_index_.size(); }
    std::size_t user_count() const { return user_index_.size(); }
    std::size_t edge_count() const { return edge_keys_.size(); }

    std::uint64_t duplicate_trend_events() const { return duplicate_trend_events_; }
    std::uint64_t duplicate_edge_events() const { return duplicate_edge_events_; }
    std::uint64_t duplicate_user_events() const { return duplicate_user_events_; }

    // Edges as (trend, user) pairs in lexicographic order.
    std::vector<std::pair<NodeId, NodeId>> sorted_edges() const {
        std::vector<std::pair<NodeId, NodeId>> out;
        out.reserve(edge_keys_.size());
        for (NodeId id = 0; id < nodes_.size(); ++id) {
            if (nodes_[id].kind != NodeKind::Trend) continue;
            for (NodeId user : adjacency_[id]) out.emplace_back(id, user);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    struct NodeRecord {
        NodeKind kind;
        std::string text;
        std::int64_t woeid;
    };

    NodeId new_node(NodeKind k, std::string_view text, std::int64_t woeid) {
        nodes_.push_back({k, std::string(text), woeid});
        adjacency_.emplace_back();
        return static_cast<NodeId>(nodes_.size() - 1);
    }

    bool insert_edge(NodeId trend, NodeId user) {
        const std::uint64_t key =
            (static_cast<std::uint64_t>(trend) << 32) | static_cast<std::uint64_t>(user);
        if (!edge_keys_.insert(key).second) return false;
        adjacency_[trend].push_back(user);
        adjacency_[user].push_back(trend);
        return true;
    }

    void require_node(NodeId id) const {
        if (!contains(id)) throw std::out_of_range("unknown node id " + std::to_string(id));
    }

    void require_trend(NodeId id) const {
        require_node(id);
        if (nodes_[id].kind != NodeKind::Trend)
            throw std::invalid_argument("node " + std::to_string(id) + " is not a trend");
    }

    std::vector<NodeRecord> nodes_;
    std::vector<std::vector<NodeId>> adjacency_;
    std::unordered_map<std::string, NodeId> trend_index_;
    std::unordered_map<std::string, NodeId> user_index_;
    std::unordered_set<std::uint64_t> edge_keys_;
    std::uint64_t duplicate_trend_events_ = 0;
    std::uint64_t duplicate_edge_events_ = 0;
    std::uint64_t duplicate_user_events_ = 0;
};

}  // namespace trendwalk
