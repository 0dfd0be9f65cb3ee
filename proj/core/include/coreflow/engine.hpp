#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "coreflow/graph.hpp"

namespace coreflow {

/// Charge vector x, per-node thresholds eps and the iteration counter of the
/// thresholded diffusion process
///
///   x_i' = [eps_i*z_i + (x_i - eps_i)/2 * z_i + x_i*(1 - z_i)]
///          + sum_{j in adj(i)} z_j * (x_j - eps_j) / (2 * d_j)
///
/// where z_i = 1 iff x_i > eps_i. Charge stays non-negative and the total is
/// conserved by every step.
struct ChargeState {
    std::vector<double> x;
    std::vector<double> eps;
    long t = 0;
};

/// Per-node thresholds: one shared value or an explicit vector.
class Thresholds {
public:
    Thresholds() = default;

    static Thresholds uniform(double eps);
    static Thresholds per_node(std::vector<double> eps);

    bool is_uniform() const { return per_node_.empty(); }
    double uniform_value() const { return uniform_; }

    /// Expands to a length-n vector; throws InvalidParameter on a size
    /// mismatch for the per-node form.
    std::vector<double> resolve(int node_count) const;

private:
    double uniform_ = 0.0;
    std::vector<double> per_node_;
};

struct DiffusionConfig {
    /// node -> initial charge, all charges > 0; unlisted nodes start at 0.
    std::map<int, double> seeds;
    Thresholds thresholds;
    /// Stop once ||x^t - x^{t-1}||_1 falls below this.
    double delta_term = 0.0;
    long max_iters = 0;
    /// Permits eps = 0 (the pure lazy-random-walk regime, which never
    /// drains); reserved for differential comparisons against the walk
    /// oracle. Normal runs require strictly positive thresholds.
    bool allow_zero_thresholds = false;
};

/// The process criterion from the experiments: tolerance 1/n.
double default_delta_term(int node_count);
long default_max_iters(int node_count); // 100 * n

enum class NodeClass : std::uint8_t { Core, Peripheral, Untouched };

/// Core: x > eps. Peripheral: 0 < x <= eps. Untouched: x == 0 exactly.
std::vector<NodeClass> classify(const ChargeState& state);

/// z_i = 1 iff x_i > eps_i (strict).
std::vector<std::uint8_t> indicator(const ChargeState& state);

/// One fully synchronous sweep: z is evaluated on the input state for every
/// node. An active node of degree 0 has nobody to send to and keeps its
/// charge. Throws InvalidState on dimension mismatch.
ChargeState step(const Graph& g, const ChargeState& state);

struct TraceRecord {
    long t = 0;
    double total_charge = 0.0;
    double l1_delta = 0.0;
    int core_size = 0;
    int periphery_size = 0;
    int untouched_size = 0;
    /// max over edges (u,v) of |dx_u| + |dx_v| for this iteration; a decay
    /// diagnostic, never used for termination.
    double max_edge_delta = 0.0;
};

enum class RunStatus { Terminated, IterationCapReached, SaturatedRegime };

const char* to_string(RunStatus status);

struct RunSummary {
    RunStatus status = RunStatus::IterationCapReached;
    /// Total initial charge >= total threshold capacity: no fully drained
    /// fixed point exists. Such a run is reported SaturatedRegime when it
    /// hits the iteration cap; if the delta criterion fires anyway the status
    /// is Terminated and this flag serves as the warning.
    bool saturated = false;
    long iterations = 0;
    std::vector<int> core;      // sorted
    std::vector<int> periphery; // sorted
    ChargeState final_state;
};

struct RunResult {
    std::vector<TraceRecord> trace; // one record per iteration, t = 1..iterations
    RunSummary summary;
};

using StepObserver = std::function<void(const TraceRecord&, const ChargeState&)>;

/// Iterates step() until the L1 delta drops below config.delta_term or the
/// iteration cap is reached. The observer, when given, sees every iteration's
/// record and post-step state.
RunResult run(const Graph& g, const DiffusionConfig& config, const StepObserver& observer = {});

/// True iff every record's total charge is within 1e-12 relative of the
/// first record's.
bool check_conservation(const std::vector<TraceRecord>& trace);

/// True iff every connected component of the subgraph induced by `core`
/// contains at least one of `seeds`. A single surviving seed therefore
/// requires exactly one component, containing that seed.
bool core_connectivity(const Graph& g, const std::vector<int>& core, const std::vector<int>& seeds);

/// Total charge audit: compensated (Neumaier) summation.
double total_charge(const std::vector<double>& x);

} // namespace coreflow
