#pragma once

#include <vector>

#include "coreflow/engine.hpp"
#include "coreflow/graph.hpp"

namespace coreflow::oracle {

using DenseVector = std::vector<double>;

/// Naive transcription of the update rule, plain loops, no compensation.
/// Exists solely as a differential reference for step().
ChargeState reference_step(const Graph& g, const ChargeState& state);

/// v'_i = v_i/2 + sum_{j in adj(i)} v_j / (2*d_j). Degree-0 nodes keep their
/// mass. The eps = 0 diffusion reduces to exactly this map.
DenseVector lazy_walk_step(const Graph& g, const DenseVector& v);

struct CompareResult {
    bool within_tol = false;
    double max_abs_diff = 0.0;
};

CompareResult compare_states(const DenseVector& a, const DenseVector& b, double tol);

} // namespace coreflow::oracle
