#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "coreflow/graph.hpp"

namespace coreflow::cli {

struct ExperimentGraph {
    std::string family; // cycle | regular | powerlaw | erdos
    int n = 0;
    int d = 10;
    int m = 5;
    double p = 0.01;
    std::uint64_t rng_seed = 1;
    std::string seed_policy; // empty -> experiment default
    std::string label;       // empty -> generated from family and parameters
};

struct ExperimentSpec {
    std::vector<ExperimentGraph> graphs;
    std::vector<std::string> eps_specs;
    std::string seed_policy = "max_degree";
    double seed_charge = 1.0;
    std::string delta_term_spec = "1/n";
    long max_iters = 0; // 0 -> 100 * n
    int repetitions = 1;
    std::uint64_t rng_seed_base = 0;
    std::string output_dir = "experiment_out";
};

ExperimentSpec parse_experiment_spec(const nlohmann::json& doc);
ExperimentSpec load_experiment_spec(const std::string& path);

struct AggregateRow {
    std::string label;
    std::string family;
    int n = 0;
    std::string eps_spec;
    double eps_value = 0.0;
    int rep = 0;
    std::uint64_t rng_seed = 0;
    int seed_node = -1;
    std::string status;
    bool expected_saturated = false;
    long iterations = 0;
    int core_size = 0;
    int periphery_size = 0;
    double wall_ms = 0.0;
};

/// Runs the whole grid, writing one convergence trace and one summary per
/// (graph, eps, repetition) plus aggregate.csv under out_dir. Failed runs are
/// recorded with an error status; the harness keeps going. Rows are ordered
/// by (family, n, eps position, rep).
std::vector<AggregateRow> run_experiment(const ExperimentSpec& spec, const std::string& out_dir);

void write_aggregate_csv(const std::vector<AggregateRow>& rows, const std::string& path);

Graph build_family_graph(const ExperimentGraph& spec, std::uint64_t rng_seed);

std::string sanitize_spec_label(const std::string& spec);

} // namespace coreflow::cli
