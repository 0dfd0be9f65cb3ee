#pragma once

#include <cstdint>

#include "coreflow/graph.hpp"

namespace coreflow {

/// Cycle on n >= 3 nodes: edges (i, i+1 mod n), every degree 2.
Graph gen_cycle(int n);

/// Random d-regular simple connected graph via stub pairing. Colliding stubs
/// are re-shuffled and re-paired; a pairing that stalls, or produces a
/// disconnected graph, is discarded and retried (up to 100 attempts).
/// Requires n*d even and d < n.
Graph gen_random_regular(int n, int d, std::uint64_t rng_seed);

/// Preferential attachment: a seed clique on m+1 nodes, then each new node
/// attaches to m distinct existing nodes with probability proportional to
/// current degree. Connected by construction. Requires 1 <= m and m+1 < n.
Graph gen_powerlaw(int n, int m, std::uint64_t rng_seed);

/// G(n, p): each unordered pair is an edge independently with probability p.
Graph gen_erdos_renyi(int n, double p, std::uint64_t rng_seed);

} // namespace coreflow
