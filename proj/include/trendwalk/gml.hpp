#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "trendwalk/graph.hpp"

namespace trendwalk {

class GmlParseError : public std::runtime_error {
public:
    GmlParseError(std::size_t line, const std::string& what)
        : std::runtime_error("gml parse error at line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

namespace detail {

inline std::string gml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '"': out += "\\\""; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

inline std::string gml_unescape(std::string_view s, std::size_t line) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '\\') {
            out.push_back(s[i]);
            continue;
        }
        if (++i == s.size()) throw GmlParseError(line, "dangling escape");
        switch (s[i]) {
            case '\\': out.push_back('\\'); break;
            case '"': out.push_back('"'); break;
            case 'n': out.push_back('\n'); break;
            case 'r': out.push_back('\r'); break;
            default: throw GmlParseError(line, "unknown escape sequence");
        }
    }
    return out;
}

}  // namespace detail

// Emits the graph as GML: nodes in ascending id order, edges sorted by
// (source, target), LF line endings, two-space indentation. Output is
// byte-for-byte deterministic for a fixed graph.
inline void write_gml(const TrendGraph& graph, std::ostream& out) {
    out << "graph [\n";
    for (NodeId id = 0; id < graph.node_count(); ++id) {
        out << "  node [\n";
        out << "    id " << id << "\n";
        out << "    label \"" << detail::gml_escape(graph.text(id)) << "\"\n";
        out << "    kind \"" << (graph.kind(id) == NodeKind::Trend ? "trend" : "user")
            << "\"\n";
        out << "  ]\n";
    }
    for (auto [source, target] : graph.sorted_edges()) {
        out << "  edge [\n";
        out << "    source " << source << "\n";
        out << "    target " << target << "\n";
        out << "  ]\n";
    }
    out << "]\n";
    if (!out) throw std::runtime_error("gml write failed");
}

inline std::string gml_string(const TrendGraph& graph) {
    std::ostringstream out;
    write_gml(graph, out);
    return out.str();
}

// Strict parser for the format produced by write_gml; reports the first
// offending line on malformed input. write_gml(read_gml(x)) == x.
inline TrendGraph read_gml(std::istream& in) {
    TrendGraph graph;
    std::string line;
    std::size_t lineno = 0;

    auto next_line = [&]() -> bool {
        if (!std::getline(in, line)) return false;
        ++lineno;
        return true;
    };
    auto expect_prefix = [&](std::string_view prefix) -> std::string_view {
        std::string_view view(line);
        if (!view.starts_with(prefix))
            throw GmlParseError(lineno, "expected '" + std::string(prefix) + "'");
        return view.substr(prefix.size());
    };
    auto parse_id = [&](std::string_view text) -> NodeId {
        std::uint32_t value = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size())
            throw GmlParseError(lineno, "bad integer");
        return value;
    };
    auto parse_quoted = [&](std::string_view text) -> std::string {
        if (text.size() < 2 || text.front() != '"' || text.back() != '"')
            throw GmlParseError(lineno, "expected quoted string");
        return detail::gml_unescape(text.substr(1, text.size() - 2), lineno);
    };

    if (!next_line() || line != "graph [") throw GmlParseError(lineno, "expected 'graph ['");

    bool edges_started = false;
    while (true) {
        if (!next_line()) throw GmlParseError(lineno, "unexpected end of input");
        if (line == "]") break;
        if (line == "  node [") {
            if (edges_started) throw GmlParseError(lineno, "node block after edge block");
            if (!next_line()) throw GmlParseError(lineno, "unexpected end of input");
            NodeId id = parse_id(expect_prefix("    id "));
            if (id != graph.node_count())
                throw GmlParseError(lineno, "node ids must be dense and ascending");
            if (!next_line()) throw GmlParseError(lineno, "unexpected end of input");
            std::string label = parse_quoted(expect_prefix("    label "));
            if (!next_line()) throw GmlParseError(lineno, "unexpected end of input");
            std::string kind = parse_quoted(expect_prefix("    kind "));
            if (!next_line() || line != "  ]") throw GmlParseError(lineno, "expected '  ]'");

            NodeId assigned;
            if (kind == "trend") {
                if (label.empty()) throw GmlParseError(lineno, "empty trend label");
                assigned = graph.add_trend(label);
            } else if (kind == "user") {
                assigned = graph.add_user(label);
            } else {
                throw GmlParseError(lineno, "kind must be \"trend\" or \"user\"");
            }
            if (assigned != id) throw GmlParseError(lineno, "duplicate node label");
        } else if (line == "  edge [") {
            edges_started = true;
            if (!next_line()) throw GmlParseError(lineno, "unexpected end of input");
            NodeId source = parse_id(expect_prefix("    source "));
            if (!next_line()) throw GmlParseError(lineno, "unexpected end of input");
            NodeId target = parse_id(expect_prefix("    target "));
            if (!next_line() || line != "  ]") throw GmlParseError(lineno, "expected '  ]'");

            if (!graph.contains(source) || !graph.contains(target))
                throw GmlParseError(lineno, "edge references unknown node");
            if (graph.kind(source) != NodeKind::Trend || graph.kind(target) != NodeKind::User)
                throw GmlParseError(lineno, "edge source must be a trend, target a user");
            if (!graph.add_edge(source, target)) throw GmlParseError(lineno, "duplicate edge");
        } else {
            throw GmlParseError(lineno, "expected node block, edge block, or ']'");
        }
    }
    if (next_line()) throw GmlParseError(lineno, "trailing content after closing ']'");
    return graph;
}

inline TrendGraph read_gml_string(const std::string& text) {
    std::istringstream in(text);
    return read_gml(in);
}

}  // namespace trendwalk
