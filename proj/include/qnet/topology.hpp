#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace qnet {

using NodeId = std::uint32_t;

struct TopologyParams {
    std::uint32_t node_count = 1024;     // N >= 8
    std::uint32_t ring_degree = 6;       // k: even, >= 2, < N
    double rewire_probability = 0.1;     // beta in [0, 1]
    std::uint64_t seed = 42;

    void validate() const;  // throws std::domain_error
};

/// Undirected sparse physical topology with dense node ids 0..N-1.
/// Immutable after generation; neighbour lists are kept sorted.
class NetworkGraph {
   public:
    // Ring lattice (node i connected to i +/- 1 .. k/2 mod N) with each
    // edge's far endpoint rewired with probability beta to a uniform
    // non-duplicate target. Deterministic in the seed; regenerates with an
    // incremented seed until connected (at most 100 attempts).
    static NetworkGraph generate_small_world(const TopologyParams& params);

    static NetworkGraph from_edges(std::uint32_t node_count,
                                   const std::vector<std::pair<NodeId, NodeId>>& edges);

    static NetworkGraph parse_edge_list(std::istream& in);

    std::uint32_t node_count() const { return node_count_; }
    std::size_t edge_count() const;
    double mean_degree() const;
    const std::vector<NodeId>& neighbours(NodeId v) const;
    bool is_connected() const;
    const std::optional<TopologyParams>& params() const { return params_; }

    // Plain-text edge list: header "# N=<n> k=<k> beta=<b> seed=<s>", then
    // one "u v" line per edge with u < v, ascending.
    void serialize(std::ostream& out) const;
    std::string serialize_to_string() const;

   private:
    NetworkGraph(std::uint32_t node_count, std::vector<std::vector<NodeId>> adjacency,
                 std::optional<TopologyParams> params);

    std::uint32_t node_count_ = 0;
    std::vector<std::vector<NodeId>> adjacency_;
    std::optional<TopologyParams> params_;
};

inline constexpr std::int64_t kUnboundedDepth = std::numeric_limits<std::int64_t>::max();

// Exact hop distances from source, capped at max_depth; unreached nodes are
// marked -1.
std::vector<std::int64_t> bfs_distances(const NetworkGraph& graph, NodeId source,
                                        std::int64_t max_depth = kUnboundedDepth);

// Mean shortest-path distance over ordered pairs. Exact (all sources) when
// N <= 2048, otherwise an unbiased estimate over sample_pairs uniform random
// ordered pairs drawn from the graph's seed. Throws if disconnected.
double average_path_length(const NetworkGraph& graph, std::size_t sample_pairs);

// Nodes at distance 1..radius from `node` (the node itself is excluded),
// sorted ascending.
std::vector<NodeId> ball(const NetworkGraph& graph, NodeId node, std::int64_t radius);

}  // namespace qnet
