#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace coreflow {

/// Undirected simple graph with dense node ids 0..n-1.
///
/// Adjacency lists are kept sorted ascending. Instances are immutable after
/// construction; all mutation happens through the static builders, which
/// reject self-loops and out-of-range endpoints and de-duplicate repeated
/// edges.
class Graph {
public:
    Graph() = default;

    /// n isolated nodes.
    explicit Graph(int node_count);

    static Graph from_edges(int node_count, const std::vector<std::pair<int, int>>& edges);

    /// Takes ownership of prebuilt lists; sorts, de-duplicates and checks
    /// symmetry.
    static Graph from_adjacency(std::vector<std::vector<int>> adjacency);

    int node_count() const { return static_cast<int>(adj_.size()); }
    long edge_count() const { return edge_count_; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    int max_degree() const { return max_degree_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }

    bool has_edge(int u, int v) const;

    /// All edges as (u, v) with u < v, lexicographically sorted.
    std::vector<std::pair<int, int>> edges() const;

    bool operator==(const Graph& other) const { return adj_ == other.adj_; }

private:
    std::vector<std::vector<int>> adj_;
    long edge_count_ = 0;
    int max_degree_ = 0;

    void finalize();
};

bool is_connected(const Graph& g);

/// Node sets of the connected components, each sorted, ordered by smallest
/// member.
std::vector<std::vector<int>> connected_components(const Graph& g);

/// Hop distances from source; -1 for unreachable nodes.
std::vector<int> bfs_distances(const Graph& g, int source);

/// Longest shortest path over reachable pairs. Disconnected graphs report the
/// largest intra-component diameter.
int diameter(const Graph& g);

/// How the starting node of a diffusion run is picked.
struct SeedPolicy {
    enum class Kind { MaxDegree, MinDegree, Random, Explicit };

    Kind kind = Kind::MaxDegree;
    std::uint64_t rng_seed = 0; // Random
    int node = -1;              // Explicit

    static SeedPolicy max_degree() { return {Kind::MaxDegree, 0, -1}; }
    static SeedPolicy min_degree() { return {Kind::MinDegree, 0, -1}; }
    static SeedPolicy random(std::uint64_t rng_seed) { return {Kind::Random, rng_seed, -1}; }
    static SeedPolicy explicit_node(int node) { return {Kind::Explicit, 0, node}; }
};

/// MaxDegree/MinDegree break ties toward the lowest node id; Random is
/// uniform and reproducible from the policy's rng_seed.
int select_seed(const Graph& g, const SeedPolicy& policy);

} // namespace coreflow
