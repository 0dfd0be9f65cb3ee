#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "coreflow/balancer.hpp"
#include "coreflow/engine.hpp"
#include "coreflow/graph.hpp"

namespace coreflow::cli {

/// Accepts a plain real ("0.05") or an n-relative form ("10/n", "1/n"),
/// resolved against the node count.
double parse_ratio_spec(const std::string& spec, int node_count);

/// "max_degree" | "min_degree" | "random" | "explicit:<node>".
SeedPolicy parse_seed_policy(const std::string& text, std::uint64_t rng_seed);

/// Everything a run depended on, echoed into the summary artifact.
struct RunConfigEcho {
    std::string graph;
    int n = 0;
    std::string eps_spec;
    double eps_value = 0.0;
    std::string seed_policy;
    int seed_node = -1;
    double seed_charge = 1.0;
    double delta_term = 0.0;
    long max_iters = 0;
    std::uint64_t rng_seed = 0;

    nlohmann::json to_json() const;
};

/// FNV-1a over the canonical JSON serialization of the echo.
std::uint64_t config_hash(const RunConfigEcho& echo);

/// Fixed columns:
/// t,total_charge,l1_delta,core_size,periphery_size,untouched_size,max_edge_delta
void write_trace_csv(const std::vector<TraceRecord>& trace, const std::string& path);
std::vector<TraceRecord> read_trace_csv(const std::string& path);

nlohmann::json summary_to_json(const RunSummary& summary, const RunConfigEcho& echo);
void write_summary_json(const RunSummary& summary, const RunConfigEcho& echo,
                        const std::string& path);

struct RunArtifact {
    std::string trace_path;
    std::string summary_path;
};

/// Writes <base>.trace.csv and <base>.summary.json under out_dir, creating
/// the directory when needed.
RunArtifact write_run_artifact(const std::string& out_dir, const std::string& base,
                               const RunResult& result, const RunConfigEcho& echo);

/// CSV with header node,load,capacity; every node 0..n-1 exactly once.
LoadProblem read_load_csv(const std::string& path, int node_count);

/// CSV with header node,value; every node 0..n-1 exactly once.
std::vector<double> read_values_csv(const std::string& path, int node_count);

/// 17-significant-digit decimal, round-trip exact for doubles.
std::string format_double(double value);

} // namespace coreflow::cli
