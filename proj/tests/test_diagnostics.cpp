#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <span>
#include <unordered_set>
#include <vector>

#include "trendwalk/geweke.hpp"
#include "trendwalk/pipeline.hpp"
#include "trendwalk/stats.hpp"
#include "trendwalk/walk.hpp"
#include "trendwalk/world.hpp"

using namespace trendwalk;

namespace {

std::vector<RunReport> reports_with_sampled(const std::vector<std::int64_t>& sampled) {
    std::vector<RunReport> reports;
    for (std::int64_t s : sampled) {
        RunReport r;
        r.generator = GeneratorKind::Brownian;
        r.sampled = s;
        r.duplicated = 150 - s;
        r.iterations = 150;
        r.filtered = 120;
        r.followers = 10 * s;
        reports.push_back(r);
    }
    return reports;
}

// Standard normals via Box-Muller on top of SplitMix64; kept local so the
// chain is reproducible on any platform.
std::vector<double> normal_chain(Seed seed, std::size_t n) {
    constexpr double kTwoPi = 6.283185307179586;
    SplitMix64 rng(seed);
    std::vector<double> out;
    out.reserve(n + 1);
    while (out.size() < n) {
        double u1 = rng.next_double();
        while (u1 == 0.0) u1 = rng.next_double();
        const double u2 = rng.next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        out.push_back(r * std::cos(kTwoPi * u2));
        out.push_back(r * std::sin(kTwoPi * u2));
    }
    out.resize(n);
    return out;
}

}  // namespace

TEST_CASE("summarize reproduces the 10-run descriptive row") {
    // Ten run totals arranged to match a known summary: total 316,
    // avg 31.60, sample std 5.44.
    const auto reports =
        reports_with_sampled({20, 26, 30, 31, 31, 33, 34, 36, 37, 38});
    const CampaignSummary summary = summarize(reports);
    REQUIRE(summary.runs == 10);

    const MetricSummary& sampled = summary.metric("sampled");
    REQUIRE(sampled.total == 316.0);
    REQUIRE(sampled.avg == 31.6);
    REQUIRE(std::fabs(sampled.std_dev - 5.440588203494178) < 1e-12);
    REQUIRE(std::fabs(sampled.std_dev - 5.44) < 0.005);
    REQUIRE(sampled.std_defined);
}

TEST_CASE("summarize matches a brute-force two-pass oracle") {
    SplitMix64 rng(808);
    std::vector<std::int64_t> values;
    for (int i = 0; i < 10; ++i)
        values.push_back(static_cast<std::int64_t>(rng.uniform_int(5, 150)));
    const CampaignSummary summary = summarize(reports_with_sampled(values));

    const double mean =
        static_cast<double>(std::accumulate(values.begin(), values.end(), std::int64_t{0})) /
        static_cast<double>(values.size());
    double ss = 0.0;
    for (std::int64_t v : values) {
        const double d = static_cast<double>(v) - mean;
        ss += d * d;
    }
    const double std_dev = std::sqrt(ss / (static_cast<double>(values.size()) - 1.0));

    const MetricSummary& sampled = summary.metric("sampled");
    REQUIRE(std::fabs(sampled.avg - mean) < 1e-12);
    REQUIRE(std::fabs(sampled.std_dev - std_dev) < 1e-12);
    REQUIRE(std::fabs(sampled.avg - sampled.total / 10.0) < 1e-12);
}

TEST_CASE("summarize flags the single-run degenerate case") {
    const CampaignSummary summary = summarize(reports_with_sampled({42}));
    const MetricSummary& sampled = summary.metric("sampled");
    REQUIRE(sampled.total == 42.0);
    REQUIRE(sampled.avg == 42.0);
    REQUIRE(sampled.std_dev == 0.0);
    REQUIRE_FALSE(sampled.std_defined);
}

TEST_CASE("summarize pools percentage rows over iterations") {
    const auto reports = reports_with_sampled({50, 100});
    const CampaignSummary summary = summarize(reports);
    // 150 sampled over 300 iterations pooled, per-run mean (1/3 + 2/3)/2.
    REQUIRE(summary.metric("pct_sampled").total == 50.0);
    REQUIRE(std::fabs(summary.metric("pct_sampled").avg - 50.0) < 1e-12);
    REQUIRE(summary.metric("pct_duplicated").total == 50.0);
    REQUIRE(summary.metric("pct_rejected").total == 0.0);
}

TEST_CASE("summarize rejects bad input") {
    REQUIRE_THROWS_AS(summarize(std::vector<RunReport>{}), std::invalid_argument);
    auto mixed = reports_with_sampled({10, 20});
    mixed[1].generator = GeneratorKind::Illusion;
    REQUIRE_THROWS_AS(summarize(mixed), std::invalid_argument);
}

TEST_CASE("percentages always close to one hundred") {
    for (std::int64_t sampled : {0, 1, 37, 149, 150}) {
        RunReport r;
        r.iterations = 150;
        r.sampled = sampled;
        r.duplicated = (150 - sampled) / 2;
        r.rejected = 150 - sampled - r.duplicated;
        REQUIRE(std::fabs(r.pct_sampled() + r.pct_duplicated() + r.pct_rejected() - 100.0) <=
                0.01);
    }
    RunReport empty;
    REQUIRE(empty.pct_sampled() == 0.0);
}

TEST_CASE("run report aggregates walk and graph together") {
    WorldSpec spec;
    spec.country_count = 6;
    spec.max_followers = 25;
    SyntheticWorld world{spec};
    const auto chosen = select_countries(world.countries(), 4, 2);
    const BuildResult build = build_graph(fetch_all(world, chosen), 1);
    const SampleTrace trace = run_walk_for(
        build.graph, build.list_a, CandidateGenerator(GeneratorKind::Brownian, 12), 40);

    const RunReport report = make_run_report(GeneratorKind::Brownian, build, trace);
    REQUIRE(report.iterations == 40);
    REQUIRE(report.sampled + report.duplicated + report.rejected == 40);
    REQUIRE(report.collected == 40);  // 4 countries x 10 trends
    REQUIRE(report.nodes == static_cast<std::int64_t>(build.graph.node_count()));
    REQUIRE(report.edges == static_cast<std::int64_t>(build.graph.edge_count()));
    REQUIRE(report.memory_mb_estimate > 0.0);
    REQUIRE(report.elapsed_ms == 0);

    // Follower union recount by brute force.
    std::unordered_set<NodeId> followers;
    for (NodeId trend : unique_trends(trace))
        for (NodeId user : build.graph.neighbors(trend)) followers.insert(user);
    REQUIRE(report.followers == static_cast<std::int64_t>(followers.size()));
}

TEST_CASE("geweke z is zero for a constant chain") {
    const std::vector<double> chain(300, 3.25);
    REQUIRE(geweke_z(chain, 0) == 0.0);
    REQUIRE(geweke_z(chain, 100) == 0.0);
}

TEST_CASE("geweke flags a linear ramp as divergent") {
    std::vector<double> ramp(1100);
    std::iota(ramp.begin(), ramp.end(), 0.0);
    const double z = geweke_z(ramp, 100);
    // Closed form over the arithmetic windows gives about -98.83.
    REQUIRE(z < -90.0);
    REQUIRE(std::fabs(z - -98.83036912035246) < 1e-9);
}

TEST_CASE("geweke window rules") {
    const std::vector<double> chain(119, 1.0);
    REQUIRE_THROWS_AS(geweke_z(chain, 100), std::invalid_argument);  // 19 post draws
    const std::vector<double> ok(120, 1.0);
    REQUIRE_NOTHROW(geweke_z(ok, 100));

    const std::vector<double> plain(200, 1.0);
    REQUIRE_THROWS_AS(geweke_z(plain, 0, 0.6, 0.5), std::invalid_argument);  // overlap
    REQUIRE_THROWS_AS(geweke_z(plain, 0, 0.0, 0.5), std::invalid_argument);
    REQUIRE_THROWS_AS(geweke_z(plain, 0, 0.1, 1.1), std::invalid_argument);
    REQUIRE_NOTHROW(geweke_z(plain, 0, 0.5, 0.5));  // windows may touch
}

TEST_CASE("geweke sign flips when the windows swap") {
    const std::vector<double> chain = normal_chain(7, 500);
    const auto post = std::span<const double>(chain);
    const auto a = std::span<const double>(post.first(50));
    const auto b = std::span<const double>(post.last(250));
    const auto ma = std::accumulate(a.begin(), a.end(), 0.0) / 50.0;
    const auto mb = std::accumulate(b.begin(), b.end(), 0.0) / 250.0;
    double va = 0.0, vb = 0.0;
    for (double x : a) va += (x - ma) * (x - ma);
    for (double x : b) vb += (x - mb) * (x - mb);
    va /= 49.0 * 50.0;
    vb /= 249.0 * 250.0;
    REQUIRE(geweke_z_from_moments(ma, va, mb, vb) ==
            -geweke_z_from_moments(mb, vb, ma, va));
    REQUIRE(std::fabs(geweke_z_from_moments(ma, va, mb, vb) - geweke_z(chain, 0)) < 1e-12);
}

TEST_CASE("geweke is location invariant and scale equivariant") {
    const std::vector<double> chain = normal_chain(21, 1100);
    const double base = geweke_z(chain, 100);

    std::vector<double> shifted = chain;
    for (double& x : shifted) x += 7.25;
    REQUIRE(std::fabs(geweke_z(shifted, 100) - base) < 1e-12);

    std::vector<double> doubled = chain;
    for (double& x : doubled) x *= 2.0;  // dyadic scale: exactly representable
    REQUIRE(geweke_z(doubled, 100) == base);

    std::vector<double> scaled = chain;
    for (double& x : scaled) x *= 3.7;
    REQUIRE(std::fabs(geweke_z(scaled, 100) - base) < 1e-12);
}

TEST_CASE("batch means agrees broadly with iid on independent draws") {
    const std::vector<double> chain = normal_chain(33, 1100);
    const double iid = geweke_z(chain, 100);
    const double batch = geweke_z(chain, 100, kGewekeFirstFrac, kGewekeLastFrac,
                                  VarianceMode::BatchMeans);
    REQUIRE(std::isfinite(batch));
    REQUIRE(std::fabs(iid) < 3.0);
    REQUIRE(std::fabs(batch) < 4.0);

    // Windows shorter than the batch count cannot be batched.
    const std::vector<double> tiny(30, 1.0);
    REQUIRE_THROWS_AS(
        geweke_z(tiny, 0, 0.1, 0.5, VarianceMode::BatchMeans), std::invalid_argument);
}

TEST_CASE("geweke trace walks growing prefixes") {
    const std::vector<double> chain = normal_chain(91, 1100);
    const auto trace = geweke_trace(chain, 100, 30);
    REQUIRE(trace.size() == 30);
    REQUIRE(trace.front().iteration == 120);
    REQUIRE(trace.back().iteration == 1100);
    for (std::size_t i = 1; i < trace.size(); ++i)
        REQUIRE(trace[i - 1].iteration < trace[i].iteration);
    REQUIRE(trace.back().z == geweke_z(chain, 100));

    const auto single = geweke_trace(chain, 100, 1);
    REQUIRE(single.size() == 1);
    REQUIRE(single.front().iteration == 1100);
    REQUIRE(single.front().z == geweke_z(chain, 100));

    const std::vector<double> constant(400, 2.0);
    for (const GewekePoint& p : geweke_trace(constant, 50, 10)) REQUIRE(p.z == 0.0);
}

TEST_CASE("geweke diagnose reports the in-band fraction") {
    const std::vector<double> constant(400, 1.5);
    const GewekeResult good = geweke_diagnose(constant, 50);
    REQUIRE(good.fraction_in_band == 1.0);
    REQUIRE(good.converged);

    std::vector<double> ramp(1100);
    std::iota(ramp.begin(), ramp.end(), 0.0);
    const GewekeResult bad = geweke_diagnose(ramp, 100);
    REQUIRE(bad.fraction_in_band < 0.5);
    REQUIRE_FALSE(bad.converged);
}

TEST_CASE("degree chain lists accepted picks in order") {
    TrendGraph g;
    const NodeId t0 = g.add_trend("#a");
    const NodeId t1 = g.add_trend("#b");
    for (int i = 0; i < 10; ++i) g.add_follower_edge(t0, "@x" + std::to_string(i));
    for (int i = 0; i < 3; ++i) g.add_follower_edge(t1, "@y" + std::to_string(i));

    SampleTrace trace;
    trace.picks = {{0, t0, PickOutcome::Fresh},
                   {1, 99, PickOutcome::Rejected},
                   {2, t1, PickOutcome::Fresh},
                   {3, t0, PickOutcome::Duplicate}};
    REQUIRE(degree_chain(trace, g) == std::vector<double>{10.0, 3.0, 10.0});

    SampleTrace one;
    one.picks = {{0, t0, PickOutcome::Fresh}};
    REQUIRE(degree_chain(one, g) == std::vector<double>{10.0});

    SampleTrace bogus;
    bogus.picks = {{0, 99, PickOutcome::Fresh}};
    REQUIRE_THROWS_AS(degree_chain(bogus, g), std::out_of_range);
}

TEST_CASE("degree chain matches a per-pick recount on a seeded run") {
    WorldSpec spec;
    spec.country_count = 8;
    SyntheticWorld world{spec};
    const BuildResult build =
        build_graph(fetch_all(world, select_countries(world.countries(), 5, 4)), 1);
    const SampleTrace trace = run_walk_for(
        build.graph, build.list_a, CandidateGenerator(GeneratorKind::Reservoir, 10), 200);
    const std::vector<double> chain = degree_chain(trace, build.graph);

    std::vector<double> expected;
    for (const SamplePick& pick : trace.picks)
        if (pick.outcome != PickOutcome::Rejected)
            expected.push_back(static_cast<double>(build.graph.neighbors(pick.node).size()));
    REQUIRE(chain == expected);
}

TEST_CASE("an iid chain under the protocol mostly stays in band") {
    const std::vector<double> chain = normal_chain(55, 1100);
    const GewekeResult result = geweke_diagnose(chain, 100);
    REQUIRE(result.fraction_in_band > 0.6);
    REQUIRE(result.converged);
}
