#include "qnet/opgraph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

#include "qnet/constants.hpp"
#include "qnet/parallel.hpp"
#include "qnet/ptm.hpp"
#include "qnet/textio.hpp"

namespace qnet {

OperationalGraph::OperationalGraph(std::vector<std::vector<NodeId>> partners, double c0,
                                   double lambda_max, long long max_depth)
    : partners_(std::move(partners)), c0_(c0), lambda_max_(lambda_max), max_depth_(max_depth) {
    for (auto& list : partners_) std::sort(list.begin(), list.end());
}

const std::vector<NodeId>& OperationalGraph::partners(NodeId v) const {
    if (v >= partners_.size()) throw std::domain_error("OperationalGraph: node id out of range");
    return partners_[v];
}

bool OperationalGraph::is_partner(NodeId a, NodeId b) const {
    const auto& list = partners(a);
    return std::binary_search(list.begin(), list.end(), b);
}

std::size_t OperationalGraph::usable_pair_count() const {
    std::size_t total = 0;
    for (const auto& list : partners_) total += list.size();
    return total / 2;
}

double OperationalGraph::mean_operational_degree() const {
    return 2.0 * static_cast<double>(usable_pair_count()) / static_cast<double>(partners_.size());
}

std::vector<NodeId> operational_neighbourhood(const NetworkGraph& graph, NodeId node,
                                              long long l_max) {
    return ball(graph, node, l_max);
}

OperationalGraph build_operational_graph(const NetworkGraph& graph, double c0, double lambda_max,
                                         int jobs) {
    const long long l_max = max_operational_depth(c0, lambda_max);
    const std::uint32_t n = graph.node_count();
    // Depth cut and visibility cut must agree: beyond L_max the visibility
    // is at or below threshold by construction, so it suffices to check the
    // boundary once and every included pair individually.
    if (bell_visibility(c0, lambda_max, l_max + 1) > kChshVisibilityThreshold)
        throw std::logic_error("build_operational_graph: visibility above threshold beyond L_max");

    std::vector<std::vector<NodeId>> partners(n);
    parallel_for(n, jobs, [&](std::size_t v) {
        const auto dist = bfs_distances(graph, static_cast<NodeId>(v), l_max);
        auto& list = partners[v];
        for (NodeId u = 0; u < n; ++u) {
            if (u == v || dist[u] < 0) continue;
            if (!(bell_visibility(c0, lambda_max, dist[u]) > kChshVisibilityThreshold))
                throw std::logic_error(
                    "build_operational_graph: pair within L_max fails the visibility cut");
            list.push_back(u);
        }
    });

    OperationalGraph og(std::move(partners), c0, lambda_max, l_max);
    for (NodeId v = 0; v < n; ++v)
        for (NodeId u : og.partners(v))
            if (!og.is_partner(u, v))
                throw std::logic_error("build_operational_graph: asymmetric partner sets");
    return og;
}

std::size_t count_usable_pairs(const OperationalGraph& og) { return og.usable_pair_count(); }

std::vector<ScalingRecord> scaling_experiment(const std::vector<std::uint32_t>& n_list,
                                              std::uint32_t ring_degree, double beta, double c0,
                                              double lambda_max, unsigned seeds_per_n,
                                              std::uint64_t master_seed, int jobs) {
    if (n_list.empty()) throw std::domain_error("scaling_experiment: empty N list");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1])
            throw std::domain_error("scaling_experiment: N list must be strictly ascending");
    if (seeds_per_n == 0) throw std::domain_error("scaling_experiment: seeds_per_n must be >= 1");

    std::vector<ScalingRecord> records(n_list.size() * seeds_per_n);
    parallel_for(records.size(), jobs, [&](std::size_t idx) {
        const std::uint32_t n = n_list[idx / seeds_per_n];
        const auto seed_index = static_cast<std::uint64_t>(idx % seeds_per_n);
        TopologyParams params;
        params.node_count = n;
        params.ring_degree = ring_degree;
        params.rewire_probability = beta;
        params.seed = master_seed + seed_index;
        const NetworkGraph graph = NetworkGraph::generate_small_world(params);
        const OperationalGraph og = build_operational_graph(graph, c0, lambda_max);
        ScalingRecord& rec = records[idx];
        rec.node_count = n;
        rec.ring_degree = ring_degree;
        rec.rewire_probability = beta;
        rec.seed = params.seed;
        rec.max_depth = og.max_depth();
        rec.usable_pairs = og.usable_pair_count();
        rec.mean_degree_operational = og.mean_operational_degree();
    });
    return records;
}

LinearFit fit_power_law(const std::vector<ScalingRecord>& records) {
    std::map<std::uint32_t, std::pair<double, std::size_t>> by_n;  // N -> (sum, count)
    for (const auto& rec : records) {
        auto& [sum, count] = by_n[rec.node_count];
        sum += static_cast<double>(rec.usable_pairs);
        ++count;
    }
    if (by_n.size() < 3) throw std::domain_error("fit_power_law: need at least 3 distinct N values");
    std::vector<double> xs, ys;
    for (const auto& [n, acc] : by_n) {
        const double mean = acc.first / static_cast<double>(acc.second);
        if (mean <= 0.0)
            throw std::domain_error("fit_power_law: mean usable pairs must be positive");
        xs.push_back(std::log(static_cast<double>(n)));
        ys.push_back(std::log(mean));
    }
    return least_squares(xs, ys);
}

void write_scaling_csv(std::ostream& out, const std::vector<ScalingRecord>& records) {
    out << "N,k,beta,seed,L_max,usable_pairs,mean_deg_op\n";
    for (const auto& rec : records) {
        out << rec.node_count << "," << rec.ring_degree << "," << fmt_real(rec.rewire_probability)
            << "," << rec.seed << "," << rec.max_depth << "," << rec.usable_pairs << ","
            << fmt_real(rec.mean_degree_operational) << "\n";
    }
}

}  // namespace qnet
