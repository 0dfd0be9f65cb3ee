#include "coreflow/graph.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <string>

#include "coreflow/errors.hpp"

namespace coreflow {

Graph::Graph(int node_count) {
    if (node_count < 0) {
        throw InvalidParameter("node count must be non-negative");
    }
    adj_.resize(static_cast<std::size_t>(node_count));
}

Graph Graph::from_edges(int node_count, const std::vector<std::pair<int, int>>& edges) {
    Graph g(node_count);
    for (const auto& [u, v] : edges) {
        if (u < 0 || v < 0 || u >= node_count || v >= node_count) {
            throw InvalidParameter("edge endpoint out of range: (" + std::to_string(u) + ", " +
                                   std::to_string(v) + ")");
        }
        if (u == v) {
            throw InvalidParameter("self-loop at node " + std::to_string(u));
        }
        g.adj_[u].push_back(v);
        g.adj_[v].push_back(u);
    }
    g.finalize();
    return g;
}

Graph Graph::from_adjacency(std::vector<std::vector<int>> adjacency) {
    Graph g;
    g.adj_ = std::move(adjacency);
    const int n = g.node_count();
    for (int u = 0; u < n; ++u) {
        for (int v : g.adj_[u]) {
            if (v < 0 || v >= n) {
                throw InvalidParameter("neighbor out of range at node " + std::to_string(u));
            }
            if (v == u) {
                throw InvalidParameter("self-loop at node " + std::to_string(u));
            }
        }
    }
    g.finalize();
    // lists must be mirror images of each other
    for (int u = 0; u < n; ++u) {
        for (int v : g.adj_[u]) {
            if (!g.has_edge(v, u)) {
                throw InvalidParameter("asymmetric adjacency between " + std::to_string(u) +
                                       " and " + std::to_string(v));
            }
        }
    }
    return g;
}

void Graph::finalize() {
    edge_count_ = 0;
    max_degree_ = 0;
    for (auto& list : adj_) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        edge_count_ += static_cast<long>(list.size());
        max_degree_ = std::max(max_degree_, static_cast<int>(list.size()));
    }
    edge_count_ /= 2;
}

bool Graph::has_edge(int u, int v) const {
    const auto& list = adj_[u];
    return std::binary_search(list.begin(), list.end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(edge_count_));
    for (int u = 0; u < node_count(); ++u) {
        for (int v : adj_[u]) {
            if (u < v) {
                out.emplace_back(u, v);
            }
        }
    }
    return out;
}

namespace {

std::vector<int> bfs_component(const Graph& g, int start, std::vector<char>& seen) {
    std::vector<int> comp;
    std::queue<int> queue;
    queue.push(start);
    seen[start] = 1;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop();
        comp.push_back(u);
        for (int v : g.neighbors(u)) {
            if (!seen[v]) {
                seen[v] = 1;
                queue.push(v);
            }
        }
    }
    std::sort(comp.begin(), comp.end());
    return comp;
}

} // namespace

bool is_connected(const Graph& g) {
    const int n = g.node_count();
    if (n == 0) {
        return true;
    }
    std::vector<char> seen(n, 0);
    return static_cast<int>(bfs_component(g, 0, seen).size()) == n;
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
    const int n = g.node_count();
    std::vector<char> seen(n, 0);
    std::vector<std::vector<int>> comps;
    for (int v = 0; v < n; ++v) {
        if (!seen[v]) {
            comps.push_back(bfs_component(g, v, seen));
        }
    }
    return comps;
}

std::vector<int> bfs_distances(const Graph& g, int source) {
    const int n = g.node_count();
    if (source < 0 || source >= n) {
        throw InvalidParameter("bfs source out of range");
    }
    std::vector<int> dist(n, -1);
    std::queue<int> queue;
    dist[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop();
        for (int v : g.neighbors(u)) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push(v);
            }
        }
    }
    return dist;
}

int diameter(const Graph& g) {
    int best = 0;
    for (int v = 0; v < g.node_count(); ++v) {
        for (int d : bfs_distances(g, v)) {
            best = std::max(best, d);
        }
    }
    return best;
}

int select_seed(const Graph& g, const SeedPolicy& policy) {
    const int n = g.node_count();
    if (n == 0) {
        throw InvalidParameter("cannot select a seed in an empty graph");
    }
    switch (policy.kind) {
    case SeedPolicy::Kind::MaxDegree: {
        int best = 0;
        for (int v = 1; v < n; ++v) {
            if (g.degree(v) > g.degree(best)) {
                best = v;
            }
        }
        return best;
    }
    case SeedPolicy::Kind::MinDegree: {
        int best = 0;
        for (int v = 1; v < n; ++v) {
            if (g.degree(v) < g.degree(best)) {
                best = v;
            }
        }
        return best;
    }
    case SeedPolicy::Kind::Random: {
        std::mt19937_64 rng(policy.rng_seed);
        std::uniform_int_distribution<int> pick(0, n - 1);
        return pick(rng);
    }
    case SeedPolicy::Kind::Explicit:
        if (policy.node < 0 || policy.node >= n) {
            throw InvalidParameter("explicit seed node " + std::to_string(policy.node) +
                                   " out of range for n=" + std::to_string(n));
        }
        return policy.node;
    }
    throw InvalidParameter("unknown seed policy");
}

} // namespace coreflow
