#include "qnet/topology.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qnet/rng.hpp"
#include "qnet/textio.hpp"

namespace qnet {

namespace {

bool contains(const std::vector<NodeId>& list, NodeId v) {
    return std::find(list.begin(), list.end(), v) != list.end();
}

bool connected(const std::vector<std::vector<NodeId>>& adj) {
    const std::size_t n = adj.size();
    std::vector<char> seen(n, 0);
    std::deque<NodeId> queue{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!queue.empty()) {
        const NodeId v = queue.front();
        queue.pop_front();
        for (NodeId w : adj[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                queue.push_back(w);
            }
        }
    }
    return reached == n;
}

}  // namespace

void TopologyParams::validate() const {
    if (node_count < 8) throw std::domain_error("TopologyParams: node count must be >= 8");
    if (ring_degree < 2 || ring_degree % 2 != 0)
        throw std::domain_error("TopologyParams: ring degree k must be even and >= 2");
    if (ring_degree >= node_count)
        throw std::domain_error("TopologyParams: ring degree k must be < N");
    if (!(rewire_probability >= 0.0 && rewire_probability <= 1.0))
        throw std::domain_error("TopologyParams: beta must lie in [0, 1]");
}

NetworkGraph::NetworkGraph(std::uint32_t node_count, std::vector<std::vector<NodeId>> adjacency,
                           std::optional<TopologyParams> params)
    : node_count_(node_count), adjacency_(std::move(adjacency)), params_(params) {
    for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

NetworkGraph NetworkGraph::generate_small_world(const TopologyParams& params) {
    params.validate();
    const std::uint32_t n = params.node_count;
    const std::uint32_t half_k = params.ring_degree / 2;

    for (std::uint64_t attempt = 0; attempt < 100; ++attempt) {
        SplitMix64 rng(params.seed + attempt);
        std::vector<std::vector<NodeId>> adj(n);
        for (NodeId i = 0; i < n; ++i) {
            for (std::uint32_t j = 1; j <= half_k; ++j) {
                const NodeId t = (i + j) % n;
                adj[i].push_back(t);
                adj[t].push_back(i);
            }
        }
        // Rewire the far endpoint of every lattice edge with probability
        // beta, keeping the near endpoint fixed. Self-loops and duplicates
        // are rejected by redrawing.
        for (NodeId i = 0; i < n; ++i) {
            for (std::uint32_t j = 1; j <= half_k; ++j) {
                const NodeId t = (i + j) % n;
                if (rng.uniform_real() >= params.rewire_probability) continue;
                if (adj[i].size() >= n - 1) continue;  // i already sees everyone
                NodeId u;
                do {
                    u = static_cast<NodeId>(rng.uniform_below(n));
                } while (u == i || contains(adj[i], u));
                adj[i].erase(std::find(adj[i].begin(), adj[i].end(), t));
                adj[t].erase(std::find(adj[t].begin(), adj[t].end(), i));
                adj[i].push_back(u);
                adj[u].push_back(i);
            }
        }
        if (connected(adj)) return NetworkGraph(n, std::move(adj), params);
    }
    throw std::runtime_error("generate_small_world: no connected graph after 100 attempts");
}

NetworkGraph NetworkGraph::from_edges(std::uint32_t node_count,
                                      const std::vector<std::pair<NodeId, NodeId>>& edges) {
    std::vector<std::vector<NodeId>> adj(node_count);
    for (const auto& [u, v] : edges) {
        if (u >= node_count || v >= node_count)
            throw std::domain_error("NetworkGraph::from_edges: node id out of range");
        if (u == v) throw std::domain_error("NetworkGraph::from_edges: self-loop");
        if (contains(adj[u], v)) throw std::domain_error("NetworkGraph::from_edges: duplicate edge");
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return NetworkGraph(node_count, std::move(adj), std::nullopt);
}

NetworkGraph NetworkGraph::parse_edge_list(std::istream& in) {
    std::string header;
    if (!std::getline(in, header) || header.rfind("# N=", 0) != 0)
        throw std::runtime_error("parse_edge_list: missing header line");
    TopologyParams params;
    unsigned long long n = 0, k = 0, seed = 0;
    double beta = 0.0;
    if (std::sscanf(header.c_str(), "# N=%llu k=%llu beta=%lf seed=%llu", &n, &k, &beta, &seed) != 4)
        throw std::runtime_error("parse_edge_list: malformed header");
    params.node_count = static_cast<std::uint32_t>(n);
    params.ring_degree = static_cast<std::uint32_t>(k);
    params.rewire_probability = beta;
    params.seed = seed;

    std::vector<std::pair<NodeId, NodeId>> edges;
    NodeId u, v;
    while (in >> u >> v) edges.push_back({u, v});
    NetworkGraph graph = from_edges(params.node_count, edges);
    graph.params_ = params;
    return graph;
}

std::size_t NetworkGraph::edge_count() const {
    std::size_t total = 0;
    for (const auto& list : adjacency_) total += list.size();
    return total / 2;
}

double NetworkGraph::mean_degree() const {
    return 2.0 * static_cast<double>(edge_count()) / static_cast<double>(node_count_);
}

const std::vector<NodeId>& NetworkGraph::neighbours(NodeId v) const {
    if (v >= node_count_) throw std::domain_error("NetworkGraph: node id out of range");
    return adjacency_[v];
}

bool NetworkGraph::is_connected() const { return connected(adjacency_); }

void NetworkGraph::serialize(std::ostream& out) const {
    if (!params_)
        throw std::runtime_error("NetworkGraph::serialize: graph has no generation parameters");
    out << "# N=" << params_->node_count << " k=" << params_->ring_degree
        << " beta=" << fmt_real(params_->rewire_probability) << " seed=" << params_->seed << "\n";
    for (NodeId u = 0; u < node_count_; ++u)
        for (NodeId v : adjacency_[u])
            if (u < v) out << u << " " << v << "\n";
}

std::string NetworkGraph::serialize_to_string() const {
    std::ostringstream out;
    serialize(out);
    return out.str();
}

std::vector<std::int64_t> bfs_distances(const NetworkGraph& graph, NodeId source,
                                        std::int64_t max_depth) {
    if (source >= graph.node_count()) throw std::domain_error("bfs_distances: source out of range");
    if (max_depth < 0) throw std::domain_error("bfs_distances: max_depth must be nonnegative");
    std::vector<std::int64_t> dist(graph.node_count(), -1);
    dist[source] = 0;
    std::deque<NodeId> queue{source};
    while (!queue.empty()) {
        const NodeId v = queue.front();
        queue.pop_front();
        if (dist[v] >= max_depth) continue;
        for (NodeId w : graph.neighbours(v)) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

double average_path_length(const NetworkGraph& graph, std::size_t sample_pairs) {
    const std::uint32_t n = graph.node_count();
    if (n < 2) throw std::domain_error("average_path_length: need at least two nodes");

    auto source_sum = [&](NodeId s) {
        const auto dist = bfs_distances(graph, s);
        std::int64_t sum = 0;
        for (std::int64_t d : dist) {
            if (d < 0) throw std::domain_error("average_path_length: graph is disconnected");
            sum += d;
        }
        return sum;
    };

    if (n <= 2048) {
        double total = 0.0;
        for (NodeId s = 0; s < n; ++s) total += static_cast<double>(source_sum(s));
        return total / (static_cast<double>(n) * (n - 1));
    }

    if (sample_pairs == 0) throw std::domain_error("average_path_length: sample_pairs must be > 0");
    const std::uint64_t seed = graph.params() ? graph.params()->seed : 0;
    SplitMix64 rng = substream(seed, 0x70617468);  // distance-sampling stream
    std::vector<std::pair<NodeId, NodeId>> pairs;
    pairs.reserve(sample_pairs);
    for (std::size_t i = 0; i < sample_pairs; ++i) {
        const auto a = static_cast<NodeId>(rng.uniform_below(n));
        auto b = static_cast<NodeId>(rng.uniform_below(n - 1));
        if (b >= a) ++b;
        pairs.push_back({a, b});
    }
    std::sort(pairs.begin(), pairs.end());
    double total = 0.0;
    std::vector<std::int64_t> dist;
    NodeId current = n;  // sentinel
    for (const auto& [a, b] : pairs) {
        if (a != current) {
            dist = bfs_distances(graph, a);
            current = a;
        }
        if (dist[b] < 0) throw std::domain_error("average_path_length: graph is disconnected");
        total += static_cast<double>(dist[b]);
    }
    return total / static_cast<double>(sample_pairs);
}

std::vector<NodeId> ball(const NetworkGraph& graph, NodeId node, std::int64_t radius) {
    if (radius < 0) throw std::domain_error("ball: radius must be nonnegative");
    const auto dist = bfs_distances(graph, node, radius);
    std::vector<NodeId> members;
    for (NodeId v = 0; v < graph.node_count(); ++v)
        if (v != node && dist[v] >= 0) members.push_back(v);
    return members;
}

}  // namespace qnet
