#include <chrono>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "trendwalk/trendwalk.hpp"
#include "trendwalk/wire_http.hpp"

namespace {

using trendwalk::CampaignConfig;

// Flags are funnelled through the same key = value handler as config files;
// explicit flags win over the file, which wins over defaults.
struct FlagOverrides {
    std::vector<std::pair<std::string, std::string>> entries;

    void add_option(CLI::App* cmd, const std::string& flag, const std::string& key,
                    const std::string& help) {
        cmd->add_option_function<std::string>(
            flag, [this, key](const std::string& value) { entries.push_back({key, value}); },
            help);
    }
};

CampaignConfig build_config(const std::optional<std::string>& config_path,
                            const FlagOverrides& overrides) {
    CampaignConfig config;
    if (config_path) trendwalk::load_config_file(config, *config_path);
    for (const auto& [key, value] : overrides.entries)
        trendwalk::apply_config_entry(config, key, value);
    return config;
}

void add_campaign_flags(CLI::App* cmd, std::optional<std::string>& config_path,
                        FlagOverrides& overrides) {
    cmd->add_option("--config", config_path, "config file (key = value lines or JSON)");
    overrides.add_option(cmd, "--generator", "generators",
                         "comma-separated subset of brownian,illusion,reservoir");
    overrides.add_option(cmd, "--runs", "runs", "independent walks per generator");
    overrides.add_option(cmd, "--countries", "countries", "countries selected per run");
    overrides.add_option(cmd, "--min-followers", "min_followers",
                         "eligibility floor on distinct followers");
    overrides.add_option(cmd, "--seed", "seed", "campaign seed");
    overrides.add_option(cmd, "--out", "out", "output directory");
    overrides.add_option(cmd, "--world", "world", "synthetic, replay:<path> or live:<endpoint>");
    overrides.add_option(cmd, "--timing", "timing",
                         "record wall-clock elapsed_ms (breaks byte-identical reruns)");
}

int cmd_run(const std::optional<std::string>& config_path, const FlagOverrides& overrides) {
    const CampaignConfig config = build_config(config_path, overrides);
    if (config.world_kind == trendwalk::WorldKind::Live) {
        trendwalk::RemoteSource source = trendwalk::make_http_source(config.live_endpoint);
        return trendwalk::run_campaign(config, source);
    }
    return trendwalk::run_campaign(config);
}

int cmd_validate(const std::string& dir) {
    const trendwalk::ValidationReport report = trendwalk::validate_outputs(dir);
    trendwalk::print_validation(report, std::cout);
    return report.all_pass() ? 0 : 1;
}

int cmd_record(const std::optional<std::string>& config_path, const FlagOverrides& overrides,
               const std::string& out_path) {
    const CampaignConfig config = build_config(config_path, overrides);
    std::unique_ptr<trendwalk::TrendSource> source;
    switch (config.world_kind) {
        case trendwalk::WorldKind::Synthetic:
            source = std::make_unique<trendwalk::SyntheticWorld>(config.world);
            break;
        case trendwalk::WorldKind::Live:
            source = std::make_unique<trendwalk::RemoteSource>(
                trendwalk::HttpTransport(config.live_endpoint));
            break;
        case trendwalk::WorldKind::Replay:
            source = std::make_unique<trendwalk::ReplaySource>(
                trendwalk::ReplaySource::from_file(config.replay_path));
            break;
    }
    std::vector<trendwalk::TrendRecord> records;
    for (const trendwalk::CountryRef& country : source->countries())
        for (trendwalk::TrendRecord& record : source->trends(country.woeid))
            records.push_back(std::move(record));
    trendwalk::write_jsonl_file(records, out_path);
    std::cout << "recorded " << records.size() << " trend records to " << out_path << "\n";
    return 0;
}

int cmd_serve(const std::optional<std::string>& config_path, const FlagOverrides& overrides,
              const std::string& host, int port) {
    const CampaignConfig config = build_config(config_path, overrides);
    trendwalk::SyntheticWorld world(config.world);
    trendwalk::WireServer server(world);
    int bound = 0;
    if (port > 0) {
        if (server.start_on(host, port)) bound = port;
    } else {
        bound = server.start(host);
    }
    if (bound == 0) {
        std::cerr << "cannot bind " << host << ":" << port << "\n";
        return 1;
    }
    std::cout << "serving synthetic world on http://" << host << ":" << bound << std::endl;
    for (;;) std::this_thread::sleep_for(std::chrono::hours(1));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Metropolis-Hastings random-walk trend sampler"};
    app.require_subcommand(1);

    std::optional<std::string> config_path;
    FlagOverrides overrides;

    CLI::App* run = app.add_subcommand("run", "run a sampling campaign");
    add_campaign_flags(run, config_path, overrides);

    CLI::App* validate = app.add_subcommand("validate", "re-check a campaign output directory");
    std::string validate_dir;
    validate->add_option("dir", validate_dir, "directory produced by run")->required();

    CLI::App* record = app.add_subcommand("record", "record a source to a replay file");
    std::optional<std::string> record_config;
    FlagOverrides record_overrides;
    add_campaign_flags(record, record_config, record_overrides);
    std::string record_out;
    record->add_option("--to", record_out, "replay file to write (JSON Lines)")->required();

    CLI::App* serve = app.add_subcommand("serve", "serve a synthetic world over HTTP");
    std::optional<std::string> serve_config;
    FlagOverrides serve_overrides;
    add_campaign_flags(serve, serve_config, serve_overrides);
    std::string host = "127.0.0.1";
    int port = 0;
    serve->add_option("--host", host, "bind address");
    serve->add_option("--port", port, "port (0 picks a free one)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, overrides);
        if (validate->parsed()) return cmd_validate(validate_dir);
        if (record->parsed()) return cmd_record(record_config, record_overrides, record_out);
        if (serve->parsed()) return cmd_serve(serve_config, serve_overrides, host, port);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
