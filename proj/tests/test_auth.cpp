#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "qnet/auth.hpp"
#include "qnet/opgraph.hpp"

using namespace qnet;

namespace {

NetworkGraph make_graph(std::uint32_t n, std::uint32_t k, double beta, std::uint64_t seed) {
    TopologyParams params;
    params.node_count = n;
    params.ring_degree = k;
    params.rewire_probability = beta;
    params.seed = seed;
    return NetworkGraph::generate_small_world(params);
}

// P(at least one of s marked items among n draws without replacement from m).
double hypergeometric_hit_probability(std::uint64_t m, std::uint64_t s, std::uint64_t n) {
    if (n > m - s) return 1.0;
    double miss = 1.0;
    for (std::uint64_t i = 0; i < n; ++i)
        miss *= static_cast<double>(m - s - i) / static_cast<double>(m - i);
    return 1.0 - miss;
}

}  // namespace

TEST_CASE("probes per node is ceil(c * log2 N)") {
    CHECK(probes_per_node(1024, 1.0) == 10);
    CHECK(probes_per_node(256, 2.0) == 16);
    CHECK(probes_per_node(1000, 1.0) == 10);
    CHECK(probes_per_node(8192, 1.0) == 13);
}

TEST_CASE("auth parameter validation") {
    AuthParams params;
    params.exploration_constant = 0.0;
    CHECK_THROWS_AS(params.validate(), std::domain_error);
}

TEST_CASE("explore_node finds a partner surely when the pool is all-usable") {
    const auto graph = make_graph(64, 4, 0.0, 1);
    const auto og = build_operational_graph(graph, 0.95, 0.9);  // L_max = 2
    SplitMix64 rng = substream(9, 0);
    // pool radius = L_max: every candidate is an operational partner
    const auto outcome = explore_node(graph, og, 0, 4, rng, ProbePolicy::uniform_ball,
                                      og.max_depth(), ProbeAccounting::fixed_budget);
    CHECK(outcome.found);
    CHECK(outcome.probes_used == 4);
}

TEST_CASE("explore_node with an empty partner set never succeeds") {
    const auto graph = make_graph(64, 4, 0.0, 1);
    const auto og = build_operational_graph(graph, 0.5, 0.9);  // empty S
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
        SplitMix64 rng = substream(trial, 0);
        const auto outcome = explore_node(graph, og, 0, 6, rng, ProbePolicy::uniform_ball, 3,
                                          ProbeAccounting::fixed_budget);
        CHECK_FALSE(outcome.found);
        CHECK(outcome.probes_used == 6);  // budget still charged
    }
}

TEST_CASE("explore_node with an empty pool uses no probes") {
    const auto graph = make_graph(64, 4, 0.0, 1);
    const auto og = build_operational_graph(graph, 0.95, 0.9);
    SplitMix64 rng = substream(1, 0);
    const auto outcome = explore_node(graph, og, 0, 4, rng, ProbePolicy::uniform_ball, 0,
                                      ProbeAccounting::fixed_budget);
    CHECK_FALSE(outcome.found);
    CHECK(outcome.probes_used == 0);
}

TEST_CASE("empirical success matches the hypergeometric oracle on the lattice") {
    // N = 1024, k = 6 lattice: ball(radius 10) has 60 nodes, 12 of them
    // operational partners (L_max = 2); 10 draws without replacement.
    const auto graph = make_graph(1024, 6, 0.0, 1);
    const auto og = build_operational_graph(graph, 0.95, 0.9);
    REQUIRE(og.max_depth() == 2);
    REQUIRE(ball(graph, 0, 10).size() == 60);
    REQUIRE(og.partners(0).size() == 12);
    const double exact = hypergeometric_hit_probability(60, 12, 10);

    int hits = 0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
        SplitMix64 rng = substream(static_cast<std::uint64_t>(t), 0);
        const auto outcome = explore_node(graph, og, 0, 10, rng, ProbePolicy::uniform_ball, 10,
                                          ProbeAccounting::fixed_budget);
        if (outcome.found) ++hits;
    }
    CHECK(std::abs(static_cast<double>(hits) / trials - exact) <= 0.03);
}

TEST_CASE("fixed budget charges exactly N * ceil(c log2 N) probes") {
    {
        const auto graph = make_graph(1024, 6, 0.1, 3);
        const auto og = build_operational_graph(graph, 0.95, 0.9);
        AuthParams params;
        params.exploration_constant = 1.0;
        params.seed = 11;
        const auto rec = run_authentication(graph, og, params);
        CHECK(rec.total_probes == 10240);
    }
    {
        const auto graph = make_graph(256, 6, 0.1, 3);
        const auto og = build_operational_graph(graph, 0.95, 0.9);
        AuthParams params;
        params.exploration_constant = 2.0;
        params.seed = 11;
        const auto rec = run_authentication(graph, og, params);
        CHECK(rec.total_probes == 4096);
    }
}

TEST_CASE("an empty operational graph yields zero successes") {
    const auto graph = make_graph(256, 6, 0.1, 3);
    const auto og = build_operational_graph(graph, 0.5, 0.9);
    AuthParams params;
    params.seed = 4;
    const auto rec = run_authentication(graph, og, params);
    CHECK(rec.nodes_succeeded == 0);
    CHECK(rec.success_fraction == 0.0);
}

TEST_CASE("results are identical for any worker count") {
    const auto graph = make_graph(512, 6, 0.1, 3);
    const auto og = build_operational_graph(graph, 0.95, 0.9);
    AuthParams params;
    params.seed = 21;
    params.accounting = ProbeAccounting::early_stop;
    const auto serial = run_authentication(graph, og, params, 1);
    const auto threaded = run_authentication(graph, og, params, 4);
    CHECK(serial.total_probes == threaded.total_probes);
    CHECK(serial.nodes_succeeded == threaded.nodes_succeeded);
    CHECK(serial.adjacent_success_correlation == threaded.adjacent_success_correlation);
}

TEST_CASE("enlarging the partner sets never loses successes") {
    const auto graph = make_graph(512, 6, 0.1, 3);
    // same L_max (2) for both, so the candidate draws coincide; explicit
    // radius keeps them pinned
    const auto og_small = build_operational_graph(graph, 0.9, 0.9);
    const auto og_large = build_operational_graph(graph, 0.95, 0.9);
    REQUIRE(og_small.max_depth() == og_large.max_depth());
    for (NodeId v = 0; v < 512; ++v)
        REQUIRE(og_small.partners(v).size() <= og_large.partners(v).size());
    AuthParams params;
    params.seed = 77;
    params.exploration_radius = 4;
    const auto small = run_authentication(graph, og_small, params);
    const auto large = run_authentication(graph, og_large, params);
    CHECK(large.nodes_succeeded >= small.nodes_succeeded);
}

TEST_CASE("success fraction grows monotonically with the exploration constant") {
    const auto graph = make_graph(512, 6, 0.1, 3);
    const auto og = build_operational_graph(graph, 0.95, 0.9);
    double previous = -1.0;
    for (double c : {1.0, 2.0, 4.0, 8.0}) {
        AuthParams params;
        params.exploration_constant = c;
        params.seed = 5;
        const auto rec = run_authentication(graph, og, params);
        CHECK(rec.success_fraction >= previous);
        previous = rec.success_fraction;
    }
    CHECK(previous == 1.0);  // radius >= L_max and every S_A nonempty
}

TEST_CASE("complexity experiment: fixed budget fits exactly on powers of two") {
    AuthParams params;
    params.exploration_constant = 1.0;
    const auto result = complexity_experiment({256, 512, 1024, 2048}, 6, 0.1, 0.95, 0.9, params,
                                              2, 42);
    CHECK(result.fit.slope == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(result.fit.intercept == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(result.fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& rec : result.records)
        CHECK(rec.total_probes ==
              static_cast<std::uint64_t>(rec.node_count) * probes_per_node(rec.node_count, 1.0));

    CHECK_THROWS_AS(complexity_experiment({256, 512, 1024}, 6, 0.1, 0.95, 0.9, params, 1, 42),
                    std::domain_error);
}

TEST_CASE("early-stop cost per node stays bounded across the sweep") {
    AuthParams params;
    params.accounting = ProbeAccounting::early_stop;
    const auto result =
        complexity_experiment({256, 512, 1024, 2048}, 6, 0.1, 0.95, 0.9, params, 3, 42);
    std::map<std::uint32_t, double> probes_per_n;
    for (const auto& rec : result.records)
        probes_per_n[rec.node_count] += static_cast<double>(rec.total_probes) / rec.node_count / 3.0;
    double lo = 1e300, hi = 0.0;
    for (const auto& [n, p] : probes_per_n) {
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    CHECK(hi <= 1.25 * lo + 0.25);
}

TEST_CASE("csv emission uses the pinned schema") {
    const auto graph = make_graph(64, 4, 0.0, 1);
    const auto og = build_operational_graph(graph, 0.95, 0.9);
    AuthParams params;
    params.seed = 9;
    const auto rec = run_authentication(graph, og, params);
    std::ostringstream out;
    write_auth_csv(out, {rec});
    std::istringstream in(out.str());
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == "N,c,policy,seed,total_probes,nodes_succeeded,success_fraction");
    CHECK(row.rfind("64,1,uniform_ball,9,384,", 0) == 0);  // 64 * ceil(log2 64) = 384
}

TEST_CASE("global-uniform policy draws from the whole node set") {
    const auto graph = make_graph(256, 6, 0.1, 3);
    const auto og = build_operational_graph(graph, 0.95, 0.9);
    AuthParams params;
    params.policy = ProbePolicy::uniform_global;
    params.seed = 15;
    const auto rec = run_authentication(graph, og, params);
    CHECK(rec.total_probes == 256ull * probes_per_node(256, 1.0));
    // sparse partner sets make global discovery rare but not impossible
    CHECK(rec.success_fraction < 1.0);
    CHECK(rec.success_fraction >= 0.0);
}
