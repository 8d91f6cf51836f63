#pragma once

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "trendwalk/geweke.hpp"
#include "trendwalk/gml.hpp"
#include "trendwalk/pipeline.hpp"
#include "trendwalk/replay.hpp"
#include "trendwalk/stats.hpp"
#include "trendwalk/walk.hpp"
#include "trendwalk/world.hpp"

namespace trendwalk {

enum class WorldKind { Synthetic, Replay, Live };

struct CampaignConfig {
    std::vector<GeneratorKind> generators = {GeneratorKind::Brownian, GeneratorKind::Illusion,
                                             GeneratorKind::Reservoir};
    std::size_t runs_per_generator = 10;
    std::size_t countries = 15;
    std::uint32_t min_followers = 10;
    WorldKind world_kind = WorldKind::Synthetic;
    WorldSpec world;
    std::string replay_path;
    std::string live_endpoint;
    Seed seed = 1;
    std::filesystem::path out_dir = "out";
    std::size_t geweke_draws = 1100;
    std::size_t geweke_burn_in = 100;
    std::size_t geweke_points = kGewekeTracePoints;
    // Wall-clock timing breaks byte-identical reruns, so it is opt-in;
    // elapsed_ms stays 0 when off.
    bool record_timing = false;
};

// Exit statuses shared by run and validate entry points.
inline constexpr int kExitOk = 0;
inline constexpr int kExitBadOutDir = 2;
inline constexpr int kExitSourceFailure = 3;

class WriteError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

// Sub-stream tags so selection, walk and diagnostic draws never share a
// generator state.
inline constexpr std::uint64_t kStreamSelect = 11;
inline constexpr std::uint64_t kStreamWalk = 12;
inline constexpr std::uint64_t kStreamGeweke = 13;

inline Seed run_seed(const CampaignConfig& config, GeneratorKind generator, std::size_t run) {
    return derive_seed(config.seed, static_cast<std::uint64_t>(generator) + 1, run);
}

}  // namespace detail

struct GewekeSummary {
    std::size_t draws = 0;
    std::size_t burn_in = 0;
    std::size_t points = 0;      // requested trace points
    std::size_t evaluated = 0;   // points actually produced
    std::size_t final_iteration = 0;
    double final_z = 0.0;
    double fraction_in_band = 0.0;
    bool converged = false;

    bool operator==(const GewekeSummary&) const = default;
};

struct RunResult {
    std::string stem;  // e.g. "brownian_3"
    RunReport report;
    BuildResult build;
    SampleTrace trace;
    GewekeResult geweke;
    GewekeSummary geweke_summary;
    std::vector<std::string> sampled_trends;   // unique sampled labels, pick order
    std::vector<std::int64_t> node_degrees;    // degree per sampled trend
};

inline RunResult perform_run(const CampaignConfig& config, const TrendSource& source,
                             GeneratorKind generator, std::size_t run_index) {
    const Seed base = detail::run_seed(config, generator, run_index);

    const std::vector<CountryRef> directory =
        scan_woeids(source.countries(), kWoeidRangeLo, kWoeidRangeHi);
    if (directory.empty()) throw std::runtime_error("no countries in the scanned woeid range");
    const std::vector<CountryRef> chosen =
        select_countries(directory, config.countries, derive_seed(base, detail::kStreamSelect));

    RunResult result;
    result.stem = std::string(generator_name(generator)) + "_" + std::to_string(run_index);
    result.build = build_graph(fetch_all(source, chosen), config.min_followers);

    const std::size_t iterations = config.countries * kTrendBudgetPerCountry;
    std::int64_t elapsed_ms = 0;
    if (config.record_timing) {
        const auto t0 = std::chrono::steady_clock::now();
        result.trace = run_walk_for(result.build.graph, result.build.list_a,
                                    CandidateGenerator(generator, derive_seed(base, detail::kStreamWalk)),
                                    iterations);
        elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    } else {
        result.trace = run_walk_for(result.build.graph, result.build.list_a,
                                    CandidateGenerator(generator, derive_seed(base, detail::kStreamWalk)),
                                    iterations);
    }
    result.report = make_run_report(generator, result.build, result.trace, elapsed_ms);

    for (NodeId node : sampled_nodes(result.trace)) {
        result.sampled_trends.push_back(result.build.graph.text(node));
        result.node_degrees.push_back(static_cast<std::int64_t>(result.build.graph.node_degree(node)));
    }

    // The convergence chain comes from a longer dedicated walk; the 150-step
    // campaign walk is far too short for the 1100-draw protocol.
    const SampleTrace diag = run_walk_for(
        result.build.graph, result.build.list_a,
        CandidateGenerator(generator, derive_seed(base, detail::kStreamGeweke)),
        config.geweke_draws);
    const std::vector<double> chain = degree_chain(diag, result.build.graph);
    result.geweke = geweke_diagnose(chain, config.geweke_burn_in, config.geweke_points);

    result.geweke_summary.draws = config.geweke_draws;
    result.geweke_summary.burn_in = config.geweke_burn_in;
    result.geweke_summary.points = config.geweke_points;
    result.geweke_summary.evaluated = result.geweke.z_scores.size();
    result.geweke_summary.final_iteration = result.geweke.z_scores.back().iteration;
    result.geweke_summary.final_z = result.geweke.z_scores.back().z;
    result.geweke_summary.fraction_in_band = result.geweke.fraction_in_band;
    result.geweke_summary.converged = result.geweke.converged;
    return result;
}

// ---- serialization ----

inline nlohmann::json report_to_json(const RunReport& report) {
    return {{"generator", std::string(generator_name(report.generator))},
            {"collected", report.collected},
            {"filtered", report.filtered},
            {"sampled", report.sampled},
            {"duplicated", report.duplicated},
            {"rejected", report.rejected},
            {"followers", report.followers},
            {"iterations", report.iterations},
            {"nodes", report.nodes},
            {"edges", report.edges},
            {"elapsed_ms", report.elapsed_ms},
            {"memory_mb_estimate", report.memory_mb_estimate},
            {"pct_sampled", report.pct_sampled()},
            {"pct_duplicated", report.pct_duplicated()},
            {"pct_rejected", report.pct_rejected()}};
}

inline RunReport report_from_json(const nlohmann::json& j) {
    RunReport report;
    const auto name = j.at("generator").get<std::string>();
    const std::optional<GeneratorKind> kind = generator_from_name(name);
    if (!kind) throw std::runtime_error("unknown generator \"" + name + "\"");
    report.generator = *kind;
    report.collected = j.at("collected").get<std::int64_t>();
    report.filtered = j.at("filtered").get<std::int64_t>();
    report.sampled = j.at("sampled").get<std::int64_t>();
    report.duplicated = j.at("duplicated").get<std::int64_t>();
    report.rejected = j.at("rejected").get<std::int64_t>();
    report.followers = j.at("followers").get<std::int64_t>();
    report.iterations = j.at("iterations").get<std::int64_t>();
    report.nodes = j.at("nodes").get<std::int64_t>();
    report.edges = j.at("edges").get<std::int64_t>();
    report.elapsed_ms = j.at("elapsed_ms").get<std::int64_t>();
    report.memory_mb_estimate = j.at("memory_mb_estimate").get<double>();
    return report;
}

inline nlohmann::json geweke_summary_to_json(const GewekeSummary& g) {
    return {{"draws", g.draws},
            {"burn_in", g.burn_in},
            {"points", g.points},
            {"evaluated", g.evaluated},
            {"final_iteration", g.final_iteration},
            {"final_z", g.final_z},
            {"fraction_in_band", g.fraction_in_band},
            {"converged", g.converged}};
}

inline GewekeSummary geweke_summary_from_json(const nlohmann::json& j) {
    GewekeSummary g;
    g.draws = j.at("draws").get<std::size_t>();
    g.burn_in = j.at("burn_in").get<std::size_t>();
    g.points = j.at("points").get<std::size_t>();
    g.evaluated = j.at("evaluated").get<std::size_t>();
    g.final_iteration = j.at("final_iteration").get<std::size_t>();
    g.final_z = j.at("final_z").get<double>();
    g.fraction_in_band = j.at("fraction_in_band").get<double>();
    g.converged = j.at("converged").get<bool>();
    return g;
}

inline nlohmann::json run_dat_json(const RunResult& run) {
    return {{"report", report_to_json(run.report)},
            {"sampled_trends", run.sampled_trends},
            {"node_degrees", run.node_degrees},
            {"geweke", geweke_summary_to_json(run.geweke_summary)}};
}

struct RunDat {
    RunReport report;
    std::vector<std::string> sampled_trends;
    std::vector<std::int64_t> node_degrees;
    GewekeSummary geweke;
};

inline RunDat run_dat_from_json(const nlohmann::json& j) {
    RunDat dat;
    dat.report = report_from_json(j.at("report"));
    dat.sampled_trends = j.at("sampled_trends").get<std::vector<std::string>>();
    dat.node_degrees = j.at("node_degrees").get<std::vector<std::int64_t>>();
    dat.geweke = geweke_summary_from_json(j.at("geweke"));
    return dat;
}

inline std::string geweke_csv(const GewekeResult& geweke) {
    std::string out = "iteration,z\n";
    for (const GewekePoint& p : geweke.z_scores) {
        out += std::to_string(p.iteration);
        out += ',';
        out += format_number(p.z);
        out += '\n';
    }
    return out;
}

inline std::string summary_csv_rows(const CampaignSummary& summary) {
    std::string out;
    for (const MetricSummary& m : summary.metrics) {
        out += generator_name(summary.generator);
        out += ',';
        out += m.metric;
        out += ',';
        out += format_number(m.total);
        out += ',';
        out += format_number(m.avg);
        out += ',';
        out += format_number(m.std_dev);
        out += '\n';
    }
    return out;
}

inline std::string summary_csv(std::span<const CampaignSummary> summaries) {
    std::string out = "generator,metric,total,avg,std\n";
    for (const CampaignSummary& summary : summaries) out += summary_csv_rows(summary);
    return out;
}

namespace detail {

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw WriteError("cannot open " + path.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw WriteError("write to " + path.string() + " failed");
}

// Generators in enum order so output layout does not depend on flag order.
inline std::vector<GeneratorKind> canonical_generators(const CampaignConfig& config) {
    std::vector<GeneratorKind> out;
    for (GeneratorKind kind :
         {GeneratorKind::Brownian, GeneratorKind::Illusion, GeneratorKind::Reservoir}) {
        for (GeneratorKind g : config.generators) {
            if (g == kind) {
                out.push_back(kind);
                break;
            }
        }
    }
    return out;
}

}  // namespace detail

inline void write_run_files(const std::filesystem::path& dir, const RunResult& run) {
    detail::write_text_file(dir / (run.stem + ".dat"), run_dat_json(run).dump(2) + "\n");
    detail::write_text_file(dir / (run.stem + ".gml"), gml_string(run.build.graph));
    detail::write_text_file(dir / ("geweke_" + run.stem + ".csv"), geweke_csv(run.geweke));
}

inline int run_campaign(const CampaignConfig& config, const TrendSource& source,
                        std::ostream& err = std::cerr) {
    if (config.generators.empty()) throw std::invalid_argument("no generators configured");
    if (config.runs_per_generator == 0) throw std::invalid_argument("runs_per_generator must be >= 1");
    if (config.countries == 0) throw std::invalid_argument("countries must be >= 1");

    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    if (ec || !std::filesystem::is_directory(config.out_dir)) {
        err << "output directory " << config.out_dir.string() << " is not usable: "
            << (ec ? ec.message() : "not a directory") << "\n";
        return kExitBadOutDir;
    }
    {
        const std::filesystem::path probe = config.out_dir / ".write_probe";
        std::ofstream test(probe);
        if (!test) {
            err << "output directory " << config.out_dir.string() << " is not writable\n";
            return kExitBadOutDir;
        }
        test.close();
        std::filesystem::remove(probe, ec);
    }

    std::vector<CampaignSummary> summaries;
    try {
        for (GeneratorKind generator : detail::canonical_generators(config)) {
            std::vector<RunReport> reports;
            reports.reserve(config.runs_per_generator);
            for (std::size_t run = 1; run <= config.runs_per_generator; ++run) {
                RunResult result = perform_run(config, source, generator, run);
                write_run_files(config.out_dir, result);
                reports.push_back(result.report);
            }
            summaries.push_back(summarize(reports));
        }
        detail::write_text_file(config.out_dir / "summary.csv", summary_csv(summaries));
    } catch (const WriteError& e) {
        err << e.what() << "\n";
        return kExitBadOutDir;
    } catch (const std::exception& e) {
        err << "source failure: " << e.what() << "\n";
        return kExitSourceFailure;
    }
    return kExitOk;
}

// Convenience overload for worlds the campaign can construct itself. Live
// campaigns must build their transport and use the two-argument form.
inline int run_campaign(const CampaignConfig& config, std::ostream& err = std::cerr) {
    switch (config.world_kind) {
        case WorldKind::Synthetic: {
            SyntheticWorld world(config.world);
            return run_campaign(config, world, err);
        }
        case WorldKind::Replay: {
            try {
                ReplaySource source = ReplaySource::from_file(config.replay_path);
                return run_campaign(config, source, err);
            } catch (const std::exception& e) {
                err << "source failure: " << e.what() << "\n";
                return kExitSourceFailure;
            }
        }
        case WorldKind::Live:
            throw std::invalid_argument("live campaigns need a caller-constructed source");
    }
    throw std::invalid_argument("unknown world kind");
}

// ---- output validation ----

struct FileCheck {
    std::string file;
    bool pass = false;
    std::string message;  // empty on pass
};

struct ValidationReport {
    std::vector<FileCheck> checks;

    bool all_pass() const {
        for (const FileCheck& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

namespace detail {

inline std::optional<std::pair<GeneratorKind, std::size_t>> parse_stem(const std::string& stem) {
    const std::size_t underscore = stem.rfind('_');
    if (underscore == std::string::npos) return std::nullopt;
    const std::optional<GeneratorKind> kind = generator_from_name(stem.substr(0, underscore));
    if (!kind) return std::nullopt;
    const std::string digits = stem.substr(underscore + 1);
    if (digits.empty()) return std::nullopt;
    std::size_t run = 0;
    for (char c : digits) {
        if (c < '0' || c > '9') return std::nullopt;
        run = run * 10 + static_cast<std::size_t>(c - '0');
    }
    if (run == 0) return std::nullopt;
    return std::make_pair(*kind, run);
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline void check_dat(const RunDat& dat) {
    const RunReport& r = dat.report;
    if (r.sampled + r.duplicated + r.rejected != r.iterations)
        throw std::runtime_error("accounting identity broken: " + std::to_string(r.sampled) +
                                 " + " + std::to_string(r.duplicated) + " + " +
                                 std::to_string(r.rejected) +
                                 " != " + std::to_string(r.iterations));
    const double pct_sum = r.pct_sampled() + r.pct_duplicated() + r.pct_rejected();
    if (std::fabs(pct_sum - 100.0) > 0.01)
        throw std::runtime_error("percentages sum to " + format_number(pct_sum));
    if (static_cast<std::int64_t>(dat.sampled_trends.size()) != r.sampled)
        throw std::runtime_error("sampled_trends length disagrees with report.sampled");
    if (dat.node_degrees.size() != dat.sampled_trends.size())
        throw std::runtime_error("node_degrees length disagrees with sampled_trends");
    if (r.collected < r.filtered) throw std::runtime_error("collected < filtered");
    if (dat.geweke.evaluated == 0 || dat.geweke.final_iteration == 0)
        throw std::runtime_error("geweke summary is empty");
}

inline void check_gml(const std::string& bytes, const RunDat& dat) {
    const TrendGraph graph = read_gml_string(bytes);
    if (gml_string(graph) != bytes) throw std::runtime_error("GML round-trip changed bytes");
    if (static_cast<std::int64_t>(graph.node_count()) != dat.report.nodes)
        throw std::runtime_error("node count disagrees with .dat report");
    if (static_cast<std::int64_t>(graph.edge_count()) != dat.report.edges)
        throw std::runtime_error("edge count disagrees with .dat report");
    for (std::size_t i = 0; i < dat.sampled_trends.size(); ++i) {
        const std::optional<NodeId> node = graph.find_trend(dat.sampled_trends[i]);
        if (!node) throw std::runtime_error("sampled trend \"" + dat.sampled_trends[i] +
                                            "\" missing from graph");
        if (static_cast<std::int64_t>(graph.node_degree(*node)) != dat.node_degrees[i])
            throw std::runtime_error("degree of \"" + dat.sampled_trends[i] +
                                     "\" disagrees with .dat");
    }
}

inline void check_geweke_csv(const std::string& bytes, const RunDat& dat) {
    std::istringstream in(bytes);
    std::string line;
    if (!std::getline(in, line) || line != "iteration,z")
        throw std::runtime_error("bad geweke csv header");
    std::vector<GewekePoint> points;
    while (std::getline(in, line)) {
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("bad geweke csv row: " + line);
        GewekePoint p;
        p.iteration = std::stoull(line.substr(0, comma));
        p.z = std::stod(line.substr(comma + 1));
        if (!points.empty() && p.iteration <= points.back().iteration)
            throw std::runtime_error("geweke iterations not increasing");
        points.push_back(p);
    }
    if (points.size() != dat.geweke.evaluated)
        throw std::runtime_error("geweke csv row count disagrees with .dat");
    if (points.back().iteration != dat.geweke.final_iteration)
        throw std::runtime_error("geweke csv final iteration disagrees with .dat");
    if (format_number(points.back().z) != format_number(dat.geweke.final_z))
        throw std::runtime_error("geweke csv final z disagrees with .dat");
    std::size_t inside = 0;
    for (const GewekePoint& p : points)
        if (std::fabs(p.z) <= kGewekeBand) ++inside;
    const double fraction = static_cast<double>(inside) / static_cast<double>(points.size());
    if (format_number(fraction) != format_number(dat.geweke.fraction_in_band))
        throw std::runtime_error("fraction_in_band disagrees with trace");
    if (dat.geweke.converged != (fraction > 0.5))
        throw std::runtime_error("converged flag disagrees with trace");
}

}  // namespace detail

inline ValidationReport validate_outputs(const std::filesystem::path& dir) {
    ValidationReport report;
    const auto fail = [&](const std::string& file, const std::string& message) {
        report.checks.push_back({file, false, message});
    };
    const auto pass = [&](const std::string& file) { report.checks.push_back({file, true, {}}); };

    if (!std::filesystem::is_directory(dir)) {
        fail(dir.string(), "not a directory");
        return report;
    }

    // Stems in canonical order: generator enum order, then run number.
    std::vector<std::pair<std::pair<int, std::size_t>, std::string>> stems;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".dat") continue;
        const std::string stem = entry.path().stem().string();
        const auto parsed = detail::parse_stem(stem);
        if (!parsed) {
            fail(entry.path().filename().string(), "unrecognized run file name");
            continue;
        }
        stems.push_back({{static_cast<int>(parsed->first), parsed->second}, stem});
    }
    std::sort(stems.begin(), stems.end());
    if (stems.empty()) fail(dir.string(), "no .dat run files found");

    std::map<GeneratorKind, std::vector<RunReport>> by_generator;
    for (const auto& [key, stem] : stems) {
        RunDat dat;
        bool dat_ok = false;
        const std::string dat_name = stem + ".dat";
        try {
            dat = run_dat_from_json(nlohmann::json::parse(detail::read_text_file(dir / dat_name)));
            detail::check_dat(dat);
            dat_ok = true;
            pass(dat_name);
            by_generator[dat.report.generator].push_back(dat.report);
        } catch (const std::exception& e) {
            fail(dat_name, e.what());
        }

        const std::string gml_name = stem + ".gml";
        try {
            const std::string bytes = detail::read_text_file(dir / gml_name);
            if (!dat_ok) throw std::runtime_error("skipped: companion .dat failed");
            detail::check_gml(bytes, dat);
            pass(gml_name);
        } catch (const std::exception& e) {
            fail(gml_name, e.what());
        }

        const std::string csv_name = "geweke_" + stem + ".csv";
        try {
            const std::string bytes = detail::read_text_file(dir / csv_name);
            if (!dat_ok) throw std::runtime_error("skipped: companion .dat failed");
            detail::check_geweke_csv(bytes, dat);
            pass(csv_name);
        } catch (const std::exception& e) {
            fail(csv_name, e.what());
        }
    }

    try {
        const std::string bytes = detail::read_text_file(dir / "summary.csv");
        std::vector<CampaignSummary> summaries;
        for (const auto& [generator, reports] : by_generator)
            summaries.push_back(summarize(reports));
        if (summary_csv(summaries) != bytes)
            throw std::runtime_error("summary.csv does not match summarize() over the .dat files");
        pass("summary.csv");
    } catch (const std::exception& e) {
        fail("summary.csv", e.what());
    }
    return report;
}

inline void print_validation(const ValidationReport& report, std::ostream& out) {
    for (const FileCheck& check : report.checks) {
        if (check.pass)
            out << "PASS " << check.file << "\n";
        else
            out << "FAIL " << check.file << ": " << check.message << "\n";
    }
    out << (report.all_pass() ? "all files valid" : "validation failed") << "\n";
}

// ---- configuration parsing ----

inline void apply_world_arg(CampaignConfig& config, const std::string& arg) {
    if (arg == "synthetic") {
        config.world_kind = WorldKind::Synthetic;
        return;
    }
    if (arg.starts_with("replay:")) {
        config.world_kind = WorldKind::Replay;
        config.replay_path = arg.substr(7);
        if (config.replay_path.empty()) throw std::invalid_argument("replay: needs a file path");
        return;
    }
    if (arg.starts_with("live:")) {
        config.world_kind = WorldKind::Live;
        config.live_endpoint = arg.substr(5);
        if (config.live_endpoint.empty()) throw std::invalid_argument("live: needs an endpoint");
        return;
    }
    throw std::invalid_argument("world must be synthetic, replay:<path> or live:<endpoint>");
}

namespace detail {

inline std::vector<GeneratorKind> parse_generator_list(const std::string& value) {
    std::vector<GeneratorKind> out;
    std::string token;
    std::istringstream in(value);
    while (std::getline(in, token, ',')) {
        if (token.empty()) continue;
        const std::optional<GeneratorKind> kind = generator_from_name(token);
        if (!kind) throw std::invalid_argument("unknown generator \"" + token + "\"");
        out.push_back(*kind);
    }
    if (out.empty()) throw std::invalid_argument("generator list is empty");
    return out;
}

inline std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const std::uint64_t parsed = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return parsed;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad integer for " + key + ": \"" + value + "\"");
    }
}

inline double parse_f64(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double parsed = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return parsed;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad number for " + key + ": \"" + value + "\"");
    }
}

inline bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw std::invalid_argument("bad boolean for " + key + ": \"" + value + "\"");
}

}  // namespace detail

inline void apply_config_entry(CampaignConfig& config, const std::string& key,
                               const std::string& value) {
    using detail::parse_bool;
    using detail::parse_f64;
    using detail::parse_u64;
    if (key == "generators" || key == "generator")
        config.generators = detail::parse_generator_list(value);
    else if (key == "runs" || key == "runs_per_generator")
        config.runs_per_generator = parse_u64(key, value);
    else if (key == "countries")
        config.countries = parse_u64(key, value);
    else if (key == "min_followers")
        config.min_followers = static_cast<std::uint32_t>(parse_u64(key, value));
    else if (key == "seed")
        config.seed = parse_u64(key, value);
    else if (key == "out" || key == "out_dir")
        config.out_dir = value;
    else if (key == "world")
        apply_world_arg(config, value);
    else if (key == "geweke_draws")
        config.geweke_draws = parse_u64(key, value);
    else if (key == "geweke_burn_in")
        config.geweke_burn_in = parse_u64(key, value);
    else if (key == "geweke_points")
        config.geweke_points = parse_u64(key, value);
    else if (key == "timing")
        config.record_timing = parse_bool(key, value);
    else if (key == "country_count")
        config.world.country_count = static_cast<std::uint32_t>(parse_u64(key, value));
    else if (key == "trends_per_country")
        config.world.trends_per_country = static_cast<std::uint32_t>(parse_u64(key, value));
    else if (key == "zipf_exponent")
        config.world.zipf_exponent = parse_f64(key, value);
    else if (key == "max_followers")
        config.world.max_followers = static_cast<std::uint32_t>(parse_u64(key, value));
    else if (key == "overlap_prob")
        config.world.overlap_prob = parse_f64(key, value);
    else if (key == "world_seed")
        config.world.seed = parse_u64(key, value);
    else
        throw std::invalid_argument("unknown config key \"" + key + "\"");
}

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline void load_json_config(CampaignConfig& config, const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("JSON config must be an object");
    for (const auto& [key, value] : j.items()) {
        if ((key == "generators" || key == "generator") && value.is_array()) {
            std::string joined;
            for (const auto& item : value) {
                if (!joined.empty()) joined += ',';
                joined += item.get<std::string>();
            }
            apply_config_entry(config, "generators", joined);
        } else if (value.is_string()) {
            apply_config_entry(config, key, value.get<std::string>());
        } else {
            apply_config_entry(config, key, value.dump());
        }
    }
}

}  // namespace detail

// Either JSON (first non-blank character '{') or `key = value` lines with
// '#' comments.
inline void load_config_file(CampaignConfig& config, const std::filesystem::path& path) {
    const std::string text = detail::read_text_file(path);
    const std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        detail::load_json_config(config, nlohmann::json::parse(text));
        return;
    }
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = detail::trim(line.substr(0, line.find('#')));
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        try {
            apply_config_entry(config, detail::trim(stripped.substr(0, eq)),
                               detail::trim(stripped.substr(eq + 1)));
        } catch (const std::exception& e) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + e.what());
        }
    }
}

}  // namespace trendwalk
