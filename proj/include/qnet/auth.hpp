#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qnet/numeric.hpp"
#include "qnet/opgraph.hpp"
#include "qnet/rng.hpp"
#include "qnet/topology.hpp"

namespace qnet {

enum class ProbePolicy { uniform_ball, uniform_global };

// fixed_budget charges every node its full probe allowance (the accounting
// used by the N log N complexity measurement); early_stop charges only the
// probes spent until the first discovered partner.
enum class ProbeAccounting { fixed_budget, early_stop };

const char* to_string(ProbePolicy policy);
const char* to_string(ProbeAccounting accounting);

struct AuthParams {
    double exploration_constant = 1.0;  // c > 0; probes per node n = ceil(c * log2 N)
    std::uint64_t seed = 0;
    ProbePolicy policy = ProbePolicy::uniform_ball;
    ProbeAccounting accounting = ProbeAccounting::fixed_budget;
    // BFS radius of the candidate pool under uniform_ball; 0 selects the
    // default L_max + 1 (one hop beyond the operational neighbourhood, so
    // the per-probe hit rate is independent of network size).
    std::int64_t exploration_radius = 0;

    void validate() const;
};

struct ProbeOutcome {
    std::uint64_t probes_used = 0;
    bool found = false;
};

// Draws up to probe_count distinct candidates from the policy's pool
// (without replacement) and reports whether any of them is an operational
// partner of `node`. A node with an empty pool uses no probes and fails.
// Under fixed_budget a node with a nonempty pool always consumes
// probe_count probes.
ProbeOutcome explore_node(const NetworkGraph& graph, const OperationalGraph& og, NodeId node,
                          std::uint32_t probe_count, SplitMix64& rng, ProbePolicy policy,
                          std::int64_t exploration_radius, ProbeAccounting accounting);

struct AuthRecord {
    std::uint32_t node_count = 0;
    double exploration_constant = 1.0;
    ProbePolicy policy = ProbePolicy::uniform_ball;
    ProbeAccounting accounting = ProbeAccounting::fixed_budget;
    std::uint64_t seed = 0;
    std::uint64_t total_probes = 0;
    std::uint32_t nodes_succeeded = 0;
    double success_fraction = 0.0;
    // Pearson correlation of success indicators across physical edges; a
    // diagnostic for the approximate-independence assumption (flag when the
    // magnitude exceeds 0.1). Not part of the CSV schema.
    double adjacent_success_correlation = 0.0;
};

std::uint32_t probes_per_node(std::uint32_t node_count, double exploration_constant);

// Applies explore_node to every node with an independent substream keyed on
// (params.seed, node id), so results do not depend on the worker count.
AuthRecord run_authentication(const NetworkGraph& graph, const OperationalGraph& og,
                              const AuthParams& params, int jobs = 1);

struct ComplexityResult {
    std::vector<AuthRecord> records;
    LinearFit fit;  // mean total_probes / N against log2 N
    double max_adjacent_correlation = 0.0;
    bool mixing_assumption_flagged = false;  // some |correlation| > 0.1
};

// Runs the authentication process over the (N, seed) grid used by the
// scaling experiment; requires at least 4 distinct N values.
ComplexityResult complexity_experiment(const std::vector<std::uint32_t>& n_list,
                                       std::uint32_t ring_degree, double beta, double c0,
                                       double lambda_max, const AuthParams& params,
                                       unsigned seeds_per_n, std::uint64_t master_seed,
                                       int jobs = 1);

// Schema: N,c,policy,seed,total_probes,nodes_succeeded,success_fraction.
void write_auth_csv(std::ostream& out, const std::vector<AuthRecord>& records);

}  // namespace qnet
