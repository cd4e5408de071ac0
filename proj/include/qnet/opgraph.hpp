#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qnet/numeric.hpp"
#include "qnet/topology.hpp"

namespace qnet {

/// Emergent graph of CHSH-usable Bell pairs: node B is an operational
/// partner of A iff the transported visibility c0 * lambda_max^d(A,B) still
/// strictly exceeds 1/sqrt(2), which is equivalent to d(A,B) <= L_max.
class OperationalGraph {
   public:
    OperationalGraph(std::vector<std::vector<NodeId>> partners, double c0, double lambda_max,
                     long long max_depth);

    std::uint32_t node_count() const { return static_cast<std::uint32_t>(partners_.size()); }
    const std::vector<NodeId>& partners(NodeId v) const;
    bool is_partner(NodeId a, NodeId b) const;

    double initial_visibility() const { return c0_; }
    double hop_contraction() const { return lambda_max_; }
    long long max_depth() const { return max_depth_; }

    std::size_t usable_pair_count() const;
    double mean_operational_degree() const;

   private:
    std::vector<std::vector<NodeId>> partners_;  // sorted
    double c0_;
    double lambda_max_;
    long long max_depth_;
};

// Nodes within swapping depth l_max of `node`; equals ball(graph, node, l_max).
std::vector<NodeId> operational_neighbourhood(const NetworkGraph& graph, NodeId node,
                                              long long l_max);

// Depth-bounded BFS from every node, with the per-pair visibility cut
// re-checked against the depth cut at build time (throws std::logic_error on
// disagreement).
OperationalGraph build_operational_graph(const NetworkGraph& graph, double c0, double lambda_max,
                                         int jobs = 1);

std::size_t count_usable_pairs(const OperationalGraph& og);

struct ScalingRecord {
    std::uint32_t node_count = 0;
    std::uint32_t ring_degree = 0;
    double rewire_probability = 0.0;
    std::uint64_t seed = 0;
    long long max_depth = 0;
    std::size_t usable_pairs = 0;
    double mean_degree_operational = 0.0;
};

// One record per (N, seed); graph seeds are master_seed + i for
// i in [0, seeds_per_n). n_list must be strictly ascending.
std::vector<ScalingRecord> scaling_experiment(const std::vector<std::uint32_t>& n_list,
                                              std::uint32_t ring_degree, double beta, double c0,
                                              double lambda_max, unsigned seeds_per_n,
                                              std::uint64_t master_seed, int jobs = 1);

// OLS fit of log(mean usable pairs over seeds) against log(N). Requires at
// least three distinct N values with nonzero means.
LinearFit fit_power_law(const std::vector<ScalingRecord>& records);

// Schema: N,k,beta,seed,L_max,usable_pairs,mean_deg_op (one header row).
void write_scaling_csv(std::ostream& out, const std::vector<ScalingRecord>& records);

}  // namespace qnet
