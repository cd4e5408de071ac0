#include "qnet/auth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

#include "qnet/parallel.hpp"
#include "qnet/textio.hpp"

namespace qnet {

const char* to_string(ProbePolicy policy) {
    return policy == ProbePolicy::uniform_ball ? "uniform_ball" : "uniform_global";
}

const char* to_string(ProbeAccounting accounting) {
    return accounting == ProbeAccounting::fixed_budget ? "fixed" : "early_stop";
}

void AuthParams::validate() const {
    if (!(exploration_constant > 0.0))
        throw std::domain_error("AuthParams: exploration constant c must be > 0");
    if (exploration_radius < 0)
        throw std::domain_error("AuthParams: exploration radius must be nonnegative");
}

std::uint32_t probes_per_node(std::uint32_t node_count, double exploration_constant) {
    if (node_count < 2) throw std::domain_error("probes_per_node: need at least two nodes");
    const double n = std::ceil(exploration_constant * std::log2(static_cast<double>(node_count)));
    return static_cast<std::uint32_t>(n);
}

ProbeOutcome explore_node(const NetworkGraph& graph, const OperationalGraph& og, NodeId node,
                          std::uint32_t probe_count, SplitMix64& rng, ProbePolicy policy,
                          std::int64_t exploration_radius, ProbeAccounting accounting) {
    if (probe_count < 1) throw std::domain_error("explore_node: probe count must be >= 1");
    if (node >= graph.node_count()) throw std::domain_error("explore_node: node out of range");

    const auto& partners = og.partners(node);
    auto is_partner = [&](NodeId u) {
        return std::binary_search(partners.begin(), partners.end(), u);
    };

    std::uint64_t first_hit = 0;  // 1-based index of the first discovered partner
    std::uint64_t drawn = 0;

    if (policy == ProbePolicy::uniform_ball) {
        std::vector<NodeId> pool = ball(graph, node, exploration_radius);
        if (pool.empty()) return {0, false};
        const std::uint64_t draws = std::min<std::uint64_t>(probe_count, pool.size());
        // Partial Fisher-Yates; the candidate sequence for a smaller budget
        // is a prefix of the sequence for a larger one (same seed).
        for (std::uint64_t i = 0; i < draws; ++i) {
            const std::uint64_t j = i + rng.uniform_below(pool.size() - i);
            std::swap(pool[i], pool[j]);
            ++drawn;
            if (first_hit == 0 && is_partner(pool[i])) first_hit = drawn;
        }
    } else {  // uniform_global: candidates from V minus the node itself
        const std::uint64_t population = graph.node_count() - 1;
        if (population == 0) return {0, false};
        const std::uint64_t draws = std::min<std::uint64_t>(probe_count, population);
        std::vector<NodeId> chosen;
        chosen.reserve(draws);
        while (chosen.size() < draws) {
            auto u = static_cast<NodeId>(rng.uniform_below(graph.node_count() - 1));
            if (u >= node) ++u;
            if (std::find(chosen.begin(), chosen.end(), u) != chosen.end()) continue;
            chosen.push_back(u);
            ++drawn;
            if (first_hit == 0 && is_partner(u)) first_hit = drawn;
        }
    }

    ProbeOutcome out;
    out.found = first_hit > 0;
    if (accounting == ProbeAccounting::fixed_budget)
        out.probes_used = probe_count;
    else
        out.probes_used = out.found ? first_hit : drawn;
    return out;
}

AuthRecord run_authentication(const NetworkGraph& graph, const OperationalGraph& og,
                              const AuthParams& params, int jobs) {
    params.validate();
    if (graph.node_count() != og.node_count())
        throw std::domain_error("run_authentication: graph and operational graph disagree on N");
    const std::uint32_t n_nodes = graph.node_count();
    const std::uint32_t probe_count = probes_per_node(n_nodes, params.exploration_constant);
    const std::int64_t radius =
        params.exploration_radius > 0 ? params.exploration_radius : og.max_depth() + 1;

    std::vector<ProbeOutcome> outcomes(n_nodes);
    parallel_for(n_nodes, jobs, [&](std::size_t v) {
        SplitMix64 rng = substream(params.seed, v);
        outcomes[v] = explore_node(graph, og, static_cast<NodeId>(v), probe_count, rng,
                                   params.policy, radius, params.accounting);
    });

    AuthRecord rec;
    rec.node_count = n_nodes;
    rec.exploration_constant = params.exploration_constant;
    rec.policy = params.policy;
    rec.accounting = params.accounting;
    rec.seed = params.seed;
    for (const auto& o : outcomes) {
        rec.total_probes += o.probes_used;
        if (o.found) ++rec.nodes_succeeded;
    }
    rec.success_fraction = static_cast<double>(rec.nodes_succeeded) / n_nodes;

    // Success correlation over physical edges (ordered endpoint pairs).
    double sum_x = 0.0, sum_xx = 0.0, sum_xy = 0.0;
    std::size_t pairs = 0;
    for (NodeId u = 0; u < n_nodes; ++u) {
        const double xu = outcomes[u].found ? 1.0 : 0.0;
        for (NodeId v : graph.neighbours(u)) {
            const double xv = outcomes[v].found ? 1.0 : 0.0;
            sum_x += xu;
            sum_xx += xu * xu;
            sum_xy += xu * xv;
            ++pairs;
        }
    }
    if (pairs > 0) {
        const double mean = sum_x / static_cast<double>(pairs);
        const double var = sum_xx / static_cast<double>(pairs) - mean * mean;
        const double cov = sum_xy / static_cast<double>(pairs) - mean * mean;
        rec.adjacent_success_correlation = var > 1e-15 ? cov / var : 0.0;
    }
    return rec;
}

ComplexityResult complexity_experiment(const std::vector<std::uint32_t>& n_list,
                                       std::uint32_t ring_degree, double beta, double c0,
                                       double lambda_max, const AuthParams& params,
                                       unsigned seeds_per_n, std::uint64_t master_seed, int jobs) {
    params.validate();
    std::vector<std::uint32_t> distinct = n_list;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 4)
        throw std::domain_error("complexity_experiment: need at least 4 distinct N values");
    if (seeds_per_n == 0) throw std::domain_error("complexity_experiment: seeds_per_n must be >= 1");

    ComplexityResult result;
    result.records.resize(n_list.size() * seeds_per_n);
    parallel_for(result.records.size(), jobs, [&](std::size_t idx) {
        const std::uint32_t n = n_list[idx / seeds_per_n];
        const auto seed_index = static_cast<std::uint64_t>(idx % seeds_per_n);
        TopologyParams topo;
        topo.node_count = n;
        topo.ring_degree = ring_degree;
        topo.rewire_probability = beta;
        topo.seed = master_seed + seed_index;
        const NetworkGraph graph = NetworkGraph::generate_small_world(topo);
        const OperationalGraph og = build_operational_graph(graph, c0, lambda_max);
        AuthParams run_params = params;
        run_params.seed = topo.seed;
        result.records[idx] = run_authentication(graph, og, run_params);
    });

    for (const auto& rec : result.records) {
        result.max_adjacent_correlation =
            std::max(result.max_adjacent_correlation, std::abs(rec.adjacent_success_correlation));
    }
    result.mixing_assumption_flagged = result.max_adjacent_correlation > 0.1;

    std::map<std::uint32_t, std::pair<double, std::size_t>> by_n;
    for (const auto& rec : result.records) {
        auto& [sum, count] = by_n[rec.node_count];
        sum += static_cast<double>(rec.total_probes);
        ++count;
    }
    std::vector<double> xs, ys;
    for (const auto& [n, acc] : by_n) {
        xs.push_back(std::log2(static_cast<double>(n)));
        ys.push_back(acc.first / static_cast<double>(acc.second) / static_cast<double>(n));
    }
    result.fit = least_squares(xs, ys);
    return result;
}

void write_auth_csv(std::ostream& out, const std::vector<AuthRecord>& records) {
    out << "N,c,policy,seed,total_probes,nodes_succeeded,success_fraction\n";
    for (const auto& rec : records) {
        out << rec.node_count << "," << fmt_real(rec.exploration_constant) << ","
            << to_string(rec.policy) << "," << rec.seed << "," << rec.total_probes << ","
            << rec.nodes_succeeded << "," << fmt_real(rec.success_fraction) << "\n";
    }
}

}  // namespace qnet
