#include "coreflow/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "coreflow/errors.hpp"

namespace coreflow {

Graph gen_cycle(int n) {
    if (n < 3) {
        throw InvalidParameter("cycle needs n >= 3, got n=" + std::to_string(n));
    }
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        edges.emplace_back(i, (i + 1) % n);
    }
    return Graph::from_edges(n, edges);
}

Graph gen_random_regular(int n, int d, std::uint64_t rng_seed) {
    if (n <= 0 || d <= 0) {
        throw InvalidParameter("random regular graph needs n > 0 and d > 0");
    }
    if (d >= n) {
        throw InvalidParameter("degree d=" + std::to_string(d) + " must be below n=" +
                               std::to_string(n));
    }
    if ((static_cast<long>(n) * d) % 2 != 0) {
        throw InvalidParameter("n*d must be even, got n=" + std::to_string(n) +
                               " d=" + std::to_string(d));
    }

    std::mt19937_64 rng(rng_seed);
    const int max_attempts = 100;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::set<std::pair<int, int>> edge_set;
        std::vector<int> stubs;
        stubs.reserve(static_cast<std::size_t>(n) * d);
        for (int v = 0; v < n; ++v) {
            for (int k = 0; k < d; ++k) {
                stubs.push_back(v);
            }
        }
        // Pair stubs at random; stubs whose pairing would create a self-loop
        // or a duplicate edge go back into the pool for another shuffle. A
        // pool that stops shrinking cannot be completed and the whole
        // attempt is rejected.
        bool stalled = false;
        while (!stubs.empty()) {
            std::shuffle(stubs.begin(), stubs.end(), rng);
            std::vector<int> leftover;
            bool progress = false;
            for (std::size_t k = 0; k + 1 < stubs.size(); k += 2) {
                const int u = stubs[k];
                const int v = stubs[k + 1];
                const auto edge = std::minmax(u, v);
                if (u == v || edge_set.count({edge.first, edge.second})) {
                    leftover.push_back(u);
                    leftover.push_back(v);
                } else {
                    edge_set.insert({edge.first, edge.second});
                    progress = true;
                }
            }
            if (!progress) {
                stalled = true;
                break;
            }
            stubs = std::move(leftover);
        }
        if (stalled) {
            continue;
        }
        Graph g = Graph::from_edges(
            n, std::vector<std::pair<int, int>>(edge_set.begin(), edge_set.end()));
        if (is_connected(g)) {
            return g;
        }
    }
    throw GenerationFailed("no connected simple " + std::to_string(d) + "-regular graph on " +
                           std::to_string(n) + " nodes after " + std::to_string(max_attempts) +
                           " attempts");
}

Graph gen_powerlaw(int n, int m, std::uint64_t rng_seed) {
    if (m < 1) {
        throw InvalidParameter("powerlaw attachment count m must be >= 1");
    }
    if (m + 1 >= n) {
        throw InvalidParameter("powerlaw needs n > m+1, got n=" + std::to_string(n) +
                               " m=" + std::to_string(m));
    }

    std::mt19937_64 rng(rng_seed);
    std::vector<std::pair<int, int>> edges;
    // Attachment is sampled from the multiset of edge endpoints, which makes
    // a node's pick probability proportional to its current degree.
    std::vector<int> endpoint_pool;

    for (int u = 0; u <= m; ++u) {
        for (int v = u + 1; v <= m; ++v) {
            edges.emplace_back(u, v);
            endpoint_pool.push_back(u);
            endpoint_pool.push_back(v);
        }
    }

    std::vector<int> targets;
    for (int v = m + 1; v < n; ++v) {
        targets.clear();
        while (static_cast<int>(targets.size()) < m) {
            std::uniform_int_distribution<std::size_t> pick(0, endpoint_pool.size() - 1);
            const int candidate = endpoint_pool[pick(rng)];
            if (std::find(targets.begin(), targets.end(), candidate) == targets.end()) {
                targets.push_back(candidate);
            }
        }
        for (int t : targets) {
            edges.emplace_back(v, t);
            endpoint_pool.push_back(v);
            endpoint_pool.push_back(t);
        }
    }
    return Graph::from_edges(n, edges);
}

Graph gen_erdos_renyi(int n, double p, std::uint64_t rng_seed) {
    if (n < 0) {
        throw InvalidParameter("node count must be non-negative");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidParameter("edge probability must lie in [0, 1]");
    }

    std::vector<std::pair<int, int>> edges;
    if (p > 0.0 && n > 1) {
        std::mt19937_64 rng(rng_seed);
        if (p == 1.0) {
            for (int u = 0; u < n; ++u) {
                for (int v = u + 1; v < n; ++v) {
                    edges.emplace_back(u, v);
                }
            }
        } else {
            // Geometric skips over the linearized pair index: each candidate
            // pair is visited with probability p without enumerating all of
            // them.
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            const double log1mp = std::log1p(-p);
            const long total = static_cast<long>(n) * (n - 1) / 2;
            long idx = -1;
            while (true) {
                const double r = unit(rng);
                const long skip = 1 + static_cast<long>(std::floor(std::log1p(-r) / log1mp));
                idx += skip;
                if (idx >= total) {
                    break;
                }
                // invert idx -> (u, v) with u < v, row-major over u
                long remaining = idx;
                int u = 0;
                long row = n - 1;
                while (remaining >= row) {
                    remaining -= row;
                    --row;
                    ++u;
                }
                const int v = u + 1 + static_cast<int>(remaining);
                edges.emplace_back(u, v);
            }
        }
    }
    return Graph::from_edges(n, edges);
}

} // namespace coreflow
