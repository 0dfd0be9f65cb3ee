#pragma once

#include <functional>
#include <string>
#include <vector>

#include "coreflow/engine.hpp"
#include "coreflow/graph.hpp"

namespace coreflow {

/// The subgraph induced by a run's core, relabeled to local ids 0..k-1
/// (ascending original id), carrying one value per core node. Decomposable
/// functions are computed here and never read values of non-core nodes.
struct CoreView {
    std::vector<int> to_original;            // local -> original, ascending
    std::vector<std::vector<int>> adjacency; // local ids, sorted
    std::vector<double> values;
    int component_count = 0; // > 1 flags a disconnected (multi-seed) core

    int size() const { return static_cast<int>(to_original.size()); }
    int degree(int local) const { return static_cast<int>(adjacency[local].size()); }
    /// -1 when the original node is not in the view.
    int local_id(int original) const;
};

/// Reduction applied per round over each node's closed neighborhood.
class Combiner {
public:
    enum class Kind { Max, Min, AverageMetropolis, Custom };

    static Combiner max();
    static Combiner min();
    /// y_i' = y_i + sum_j w_ij (y_j - y_i) with w_ij = 1/(1 + max(d_i, d_j)),
    /// degrees taken on the view. Doubly stochastic, so sum(y) is invariant
    /// and the fixed point is the mean of the initial values.
    static Combiner average_metropolis();
    /// fn receives the closed-neighborhood values as a multiset: own value
    /// first, then neighbor values ascending by local id.
    static Combiner custom(std::string name, std::function<double(const std::vector<double>&)> fn);

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    double apply_custom(const std::vector<double>& closed_neighborhood) const;

private:
    Combiner(Kind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

    Kind kind_;
    std::string name_;
    std::function<double(const std::vector<double>&)> fn_;
};

/// Restricts the graph and the per-node value vector (length n) to the
/// summary's core. Throws EmptyCore when the run produced no core.
CoreView build_core_view(const Graph& g, const RunSummary& summary,
                         const std::vector<double>& initial_values);

/// One synchronous round; all reads come from the previous round's values.
CoreView gossip_round(const CoreView& view, const Combiner& combiner);

struct GossipResult {
    std::vector<double> values;
    long rounds = 0;
};

/// Max/Min stop at an exact fixed point (guaranteed within diameter rounds);
/// AverageMetropolis and Custom stop once max_i |dy_i| < tol. Exceeding
/// max_rounds raises ConvergenceFailure carrying the partial values.
GossipResult run_gossip(const CoreView& view, const Combiner& combiner, double tol,
                        long max_rounds);

} // namespace coreflow
