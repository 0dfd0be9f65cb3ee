#include "coreflow/engine.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <unordered_set>
#include <utility>

#include "coreflow/errors.hpp"

namespace coreflow {

Thresholds Thresholds::uniform(double eps) {
    Thresholds t;
    t.uniform_ = eps;
    return t;
}

Thresholds Thresholds::per_node(std::vector<double> eps) {
    Thresholds t;
    if (eps.empty()) {
        throw InvalidParameter("per-node thresholds must not be empty");
    }
    t.per_node_ = std::move(eps);
    return t;
}

std::vector<double> Thresholds::resolve(int node_count) const {
    if (node_count <= 0) {
        throw InvalidParameter("threshold resolution needs node_count > 0");
    }
    if (is_uniform()) {
        return std::vector<double>(static_cast<std::size_t>(node_count), uniform_);
    }
    if (static_cast<int>(per_node_.size()) != node_count) {
        throw InvalidParameter("threshold vector has " + std::to_string(per_node_.size()) +
                               " entries for a graph of " + std::to_string(node_count) +
                               " nodes");
    }
    return per_node_;
}

double default_delta_term(int node_count) {
    if (node_count <= 0) {
        throw InvalidParameter("node_count must be positive");
    }
    return 1.0 / node_count;
}

long default_max_iters(int node_count) {
    if (node_count <= 0) {
        throw InvalidParameter("node_count must be positive");
    }
    return 100L * node_count;
}

double total_charge(const std::vector<double>& x) {
    double sum = 0.0;
    double comp = 0.0;
    for (double v : x) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    return sum + comp;
}

std::vector<std::uint8_t> indicator(const ChargeState& state) {
    const std::size_t n = state.x.size();
    std::vector<std::uint8_t> z(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        z[i] = state.x[i] > state.eps[i] ? 1 : 0;
    }
    return z;
}

std::vector<NodeClass> classify(const ChargeState& state) {
    const std::size_t n = state.x.size();
    std::vector<NodeClass> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (state.x[i] == 0.0) {
            out[i] = NodeClass::Untouched;
        } else if (state.x[i] > state.eps[i]) {
            out[i] = NodeClass::Core;
        } else {
            out[i] = NodeClass::Peripheral;
        }
    }
    return out;
}

namespace {

void require_dimensions(const Graph& g, const ChargeState& state) {
    const auto n = static_cast<std::size_t>(g.node_count());
    if (state.x.size() != n || state.eps.size() != n) {
        throw InvalidState("state dimensions (x=" + std::to_string(state.x.size()) +
                           ", eps=" + std::to_string(state.eps.size()) +
                           ") do not match graph with n=" + std::to_string(n));
    }
}

// One synchronous sweep. The retained part is written first, then every
// active node scatters its outgoing share; receivers therefore accumulate
// addends in ascending sender id, and nodes with no active neighbor keep
// their charge bit for bit (untouched nodes stay at exactly zero).
void step_into(const Graph& g, const std::vector<double>& x, const std::vector<double>& eps,
               std::vector<double>& out) {
    const int n = g.node_count();
    out.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        if (x[i] > eps[i] && g.degree(i) > 0) {
            out[i] = eps[i] + (x[i] - eps[i]) / 2.0;
        } else {
            // inactive, or active but isolated: keeps everything
            out[i] = x[i];
        }
    }
    for (int j = 0; j < n; ++j) {
        if (x[j] > eps[j] && g.degree(j) > 0) {
            const double share = (x[j] - eps[j]) / (2.0 * g.degree(j));
            for (int i : g.neighbors(j)) {
                out[i] += share;
            }
        }
    }
}

TraceRecord make_record(const Graph& g, const std::vector<double>& prev,
                        const ChargeState& state) {
    const int n = g.node_count();
    TraceRecord rec;
    rec.t = state.t;
    rec.total_charge = total_charge(state.x);

    double l1 = 0.0;
    for (int i = 0; i < n; ++i) {
        l1 += std::abs(state.x[i] - prev[i]);
    }
    rec.l1_delta = l1;

    for (int i = 0; i < n; ++i) {
        if (state.x[i] == 0.0) {
            ++rec.untouched_size;
        } else if (state.x[i] > state.eps[i]) {
            ++rec.core_size;
        } else {
            ++rec.periphery_size;
        }
    }

    double max_edge = 0.0;
    for (int u = 0; u < n; ++u) {
        const double du = std::abs(state.x[u] - prev[u]);
        for (int v : g.neighbors(u)) {
            if (v > u) {
                max_edge = std::max(max_edge, du + std::abs(state.x[v] - prev[v]));
            }
        }
    }
    rec.max_edge_delta = max_edge;
    return rec;
}

} // namespace

ChargeState step(const Graph& g, const ChargeState& state) {
    require_dimensions(g, state);
    ChargeState next;
    next.eps = state.eps;
    next.t = state.t + 1;
    step_into(g, state.x, state.eps, next.x);
    return next;
}

RunResult run(const Graph& g, const DiffusionConfig& config, const StepObserver& observer) {
    const int n = g.node_count();
    if (n == 0) {
        throw InvalidParameter("cannot run on an empty graph");
    }
    if (config.seeds.empty()) {
        throw InvalidParameter("at least one seed is required");
    }
    if (!(config.delta_term > 0.0)) {
        throw InvalidParameter("delta_term must be positive");
    }
    if (config.max_iters < 1) {
        throw InvalidParameter("max_iters must be at least 1");
    }

    std::vector<double> eps = config.thresholds.resolve(n);
    for (double e : eps) {
        if (config.allow_zero_thresholds ? !(e >= 0.0) : !(e > 0.0)) {
            throw InvalidParameter(config.allow_zero_thresholds
                                       ? "thresholds must be non-negative"
                                       : "thresholds must be strictly positive");
        }
    }

    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    for (const auto& [node, charge] : config.seeds) {
        if (node < 0 || node >= n) {
            throw InvalidParameter("seed node " + std::to_string(node) + " out of range");
        }
        if (!(charge > 0.0)) {
            throw InvalidParameter("seed charge at node " + std::to_string(node) +
                                   " must be positive");
        }
        x[node] = charge;
    }

    const double initial_total = total_charge(x);
    const double capacity = total_charge(eps);
    const bool saturated = initial_total >= capacity;

    ChargeState state{std::move(x), std::move(eps), 0};
    std::vector<double> prev;
    std::vector<double> next;
    std::vector<TraceRecord> trace;
    bool terminated = false;

    for (long t = 1; t <= config.max_iters; ++t) {
        prev = state.x;
        step_into(g, state.x, state.eps, next);
        state.x.swap(next);
        state.t = t;

        const TraceRecord rec = make_record(g, prev, state);
        trace.push_back(rec);
        if (observer) {
            observer(rec, state);
        }
        if (rec.l1_delta < config.delta_term) {
            terminated = true;
            break;
        }
    }

    RunSummary summary;
    summary.saturated = saturated;
    if (terminated) {
        summary.status = RunStatus::Terminated;
    } else {
        summary.status = saturated ? RunStatus::SaturatedRegime : RunStatus::IterationCapReached;
    }
    summary.iterations = static_cast<long>(trace.size());
    const auto classes = classify(state);
    for (int i = 0; i < n; ++i) {
        if (classes[i] == NodeClass::Core) {
            summary.core.push_back(i);
        } else if (classes[i] == NodeClass::Peripheral) {
            summary.periphery.push_back(i);
        }
    }
    summary.final_state = std::move(state);
    return RunResult{std::move(trace), std::move(summary)};
}

const char* to_string(RunStatus status) {
    switch (status) {
    case RunStatus::Terminated:
        return "terminated";
    case RunStatus::IterationCapReached:
        return "iteration_cap_reached";
    case RunStatus::SaturatedRegime:
        return "saturated_regime";
    }
    return "unknown";
}

bool check_conservation(const std::vector<TraceRecord>& trace) {
    if (trace.empty()) {
        return false;
    }
    const double reference = trace.front().total_charge;
    const double tol = 1e-12 * std::abs(reference);
    for (const TraceRecord& rec : trace) {
        if (std::abs(rec.total_charge - reference) > tol) {
            return false;
        }
    }
    return true;
}

bool core_connectivity(const Graph& g, const std::vector<int>& core,
                       const std::vector<int>& seeds) {
    if (core.empty()) {
        return true;
    }
    std::unordered_set<int> in_core(core.begin(), core.end());
    std::unordered_set<int> seed_set(seeds.begin(), seeds.end());

    std::unordered_set<int> visited;
    for (int root : core) {
        if (visited.count(root)) {
            continue;
        }
        // flood one induced component, looking for a seed inside it
        bool has_seed = false;
        std::queue<int> queue;
        queue.push(root);
        visited.insert(root);
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop();
            if (seed_set.count(u)) {
                has_seed = true;
            }
            for (int v : g.neighbors(u)) {
                if (in_core.count(v) && !visited.count(v)) {
                    visited.insert(v);
                    queue.push(v);
                }
            }
        }
        if (!has_seed) {
            return false;
        }
    }
    return true;
}

} // namespace coreflow
