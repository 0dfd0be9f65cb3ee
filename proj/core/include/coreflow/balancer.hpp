#pragma once

#include <vector>

#include "coreflow/engine.hpp"
#include "coreflow/graph.hpp"

namespace coreflow {

/// Loads L_i >= 0 and capacities c_i > 0. Capacities map onto the diffusion
/// thresholds, so an overloaded node (L_i > c_i) is exactly an active node
/// and sheds its excess to neighbors.
struct LoadProblem {
    std::vector<double> loads;
    std::vector<double> capacities;
};

struct OverloadEntry {
    int node = 0;
    double initial_load = 0.0;
    double capacity = 0.0;
    double shed = 0.0; // initial_load - final allocation
};

struct BalanceResult {
    RunResult run;
    std::vector<OverloadEntry> overloaded; // nodes with L_i > c_i initially
    double max_residual_overload = 0.0;    // max_i (x_i - c_i), clamped at 0
    long settle_passes = 0;                // extra runs beyond the first
};

/// Strict global feasibility: sum(L) < sum(c).
bool feasibility(const LoadProblem& problem);

/// Runs the diffusion with x0 = loads and eps = capacities. Rejects
/// infeasible problems up front (per connected component, since charge
/// cannot cross components). On termination every node ends within
/// delta_term of its capacity; total load is conserved.
BalanceResult balance(const Graph& g, const LoadProblem& problem, double delta_term,
                      long max_iters);

} // namespace coreflow
