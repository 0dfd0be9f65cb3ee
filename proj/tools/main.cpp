#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "artifacts.hpp"
#include "coreflow/coreflow.hpp"
#include "experiment.hpp"

namespace {

using namespace coreflow;

// 0 ok; 1 comparison mismatch; 2 bad input of any kind; then one code per
// non-terminated outcome so scripts can branch on the result.
constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitIterationCap = 3;
constexpr int kExitSaturated = 4;
constexpr int kExitInfeasible = 5;
constexpr int kExitEmptyCore = 6;

int status_exit_code(RunStatus status) {
    switch (status) {
    case RunStatus::Terminated:
        return kExitOk;
    case RunStatus::IterationCapReached:
        return kExitIterationCap;
    case RunStatus::SaturatedRegime:
        return kExitSaturated;
    }
    return kExitBadInput;
}

struct GenOptions {
    std::string family;
    int n = 0;
    int d = 10;
    int m = 5;
    double p = 0.01;
    std::uint64_t seed = 1;
    std::string output;
};

int cmd_gen(const GenOptions& opt) {
    cli::ExperimentGraph spec;
    spec.family = opt.family;
    spec.n = opt.n;
    spec.d = opt.d;
    spec.m = opt.m;
    spec.p = opt.p;
    const Graph g = cli::build_family_graph(spec, opt.seed);
    save_edge_list(g, opt.output);
    std::cout << "family=" << opt.family << " n=" << g.node_count()
              << " edges=" << g.edge_count() << " d_max=" << g.max_degree()
              << " connected=" << (is_connected(g) ? "yes" : "no") << '\n';
    std::cout << "wrote " << opt.output << '\n';
    return kExitOk;
}

struct RunOptions {
    std::string graph_path;
    std::string eps_spec;
    std::string seed_policy = "max_degree";
    double seed_charge = 1.0;
    std::string delta_term = "1/n";
    long max_iters = 0;
    std::uint64_t rng_seed = 0;
    std::string out_dir;
    std::string base = "run";
};

int cmd_run(const RunOptions& opt) {
    const Graph g = load_edge_list(opt.graph_path);
    const int n = g.node_count();

    cli::RunConfigEcho echo;
    echo.graph = opt.graph_path;
    echo.n = n;
    echo.eps_spec = opt.eps_spec;
    echo.eps_value = cli::parse_ratio_spec(opt.eps_spec, n);
    echo.seed_policy = opt.seed_policy;
    echo.seed_node = select_seed(g, cli::parse_seed_policy(opt.seed_policy, opt.rng_seed));
    echo.seed_charge = opt.seed_charge;
    echo.delta_term = cli::parse_ratio_spec(opt.delta_term, n);
    echo.max_iters = opt.max_iters > 0 ? opt.max_iters : default_max_iters(n);
    echo.rng_seed = opt.rng_seed;

    DiffusionConfig config;
    config.seeds = {{echo.seed_node, echo.seed_charge}};
    config.thresholds = Thresholds::uniform(echo.eps_value);
    config.delta_term = echo.delta_term;
    config.max_iters = echo.max_iters;

    const RunResult result = run(g, config);
    const cli::RunArtifact artifact =
        cli::write_run_artifact(opt.out_dir, opt.base, result, echo);

    std::cout << "status=" << to_string(result.summary.status)
              << " iterations=" << result.summary.iterations
              << " core_size=" << result.summary.core.size()
              << " periphery_size=" << result.summary.periphery.size() << '\n';
    if (result.summary.saturated) {
        std::cerr << "warning: total charge meets or exceeds total threshold capacity; "
                     "a fully drained state does not exist\n";
    }
    std::cout << "trace=" << artifact.trace_path << " summary=" << artifact.summary_path
              << '\n';
    return status_exit_code(result.summary.status);
}

struct CompareOptions {
    std::string graph_path;
    long steps = 0;
    std::string seed_policy = "max_degree";
    double tol = 1e-9;
};

int cmd_compare(const CompareOptions& opt) {
    if (opt.steps < 1) {
        throw InvalidParameter("steps must be at least 1");
    }
    const Graph g = load_edge_list(opt.graph_path);
    const int n = g.node_count();
    const int seed_node = select_seed(g, cli::parse_seed_policy(opt.seed_policy, 0));

    DiffusionConfig config;
    config.seeds = {{seed_node, 1.0}};
    config.thresholds = Thresholds::uniform(0.0);
    config.allow_zero_thresholds = true; // the walk regime
    config.delta_term = 1e-300;
    config.max_iters = opt.steps;

    oracle::DenseVector walk(static_cast<std::size_t>(n), 0.0);
    walk[seed_node] = 1.0;

    double worst = 0.0;
    run(g, config, [&](const TraceRecord& rec, const ChargeState& state) {
        walk = oracle::lazy_walk_step(g, walk);
        const auto cmp = oracle::compare_states(state.x, walk, opt.tol);
        worst = std::max(worst, cmp.max_abs_diff);
        std::cout << "t=" << rec.t << " max_abs_diff=" << cli::format_double(cmp.max_abs_diff)
                  << '\n';
    });

    const bool ok = worst <= opt.tol;
    std::cout << (ok ? "walk-equivalence ok" : "walk-equivalence FAILED")
              << " worst=" << cli::format_double(worst)
              << " tol=" << cli::format_double(opt.tol) << '\n';
    return ok ? kExitOk : kExitMismatch;
}

struct BalanceOptions {
    std::string graph_path;
    std::string loads_csv;
    std::string delta_term = "1/n";
    long max_iters = 0;
    std::string out_dir;
};

int cmd_balance(const BalanceOptions& opt) {
    const Graph g = load_edge_list(opt.graph_path);
    const int n = g.node_count();
    const LoadProblem problem = cli::read_load_csv(opt.loads_csv, n);
    const double delta_term = cli::parse_ratio_spec(opt.delta_term, n);
    const long max_iters = opt.max_iters > 0 ? opt.max_iters : default_max_iters(n);

    const BalanceResult result = balance(g, problem, delta_term, max_iters);
    const RunSummary& summary = result.run.summary;

    std::filesystem::create_directories(opt.out_dir);
    const auto alloc_path = std::filesystem::path(opt.out_dir) / "allocation.csv";
    {
        std::ofstream out(alloc_path);
        out << "node,load,capacity,final,shed\n";
        for (int i = 0; i < n; ++i) {
            const double final_load = summary.final_state.x[i];
            out << i << ',' << cli::format_double(problem.loads[i]) << ','
                << cli::format_double(problem.capacities[i]) << ','
                << cli::format_double(final_load) << ','
                << cli::format_double(problem.loads[i] - final_load) << '\n';
        }
    }

    nlohmann::json overloaded = nlohmann::json::array();
    for (const OverloadEntry& entry : result.overloaded) {
        overloaded.push_back({{"node", entry.node},
                              {"initial_load", entry.initial_load},
                              {"capacity", entry.capacity},
                              {"shed", entry.shed}});
    }
    const nlohmann::json report{
        {"status", to_string(summary.status)},
        {"iterations", summary.iterations},
        {"total_load", total_charge(summary.final_state.x)},
        {"max_residual_overload", result.max_residual_overload},
        {"settle_passes", result.settle_passes},
        {"overloaded", overloaded},
    };
    const auto report_path = std::filesystem::path(opt.out_dir) / "report.json";
    std::ofstream(report_path) << report.dump(2) << '\n';

    std::cout << "status=" << to_string(summary.status)
              << " iterations=" << summary.iterations
              << " overloaded=" << result.overloaded.size()
              << " max_residual_overload=" << cli::format_double(result.max_residual_overload)
              << '\n';
    std::cout << "allocation=" << alloc_path.string() << " report=" << report_path.string()
              << '\n';
    return status_exit_code(summary.status);
}

struct FuseOptions {
    std::string graph_path;
    std::string eps_spec;
    std::string combiner = "max";
    std::string seed_policy = "max_degree";
    double seed_charge = 1.0;
    std::string delta_term = "1/n";
    long max_iters = 0;
    std::string values_csv;
    std::string values_mode = "index"; // index | uniform
    std::uint64_t values_seed = 0;
    double tol = 1e-6;
    long max_rounds = 0;
    std::string out_dir;
};

int cmd_fuse(const FuseOptions& opt) {
    const Graph g = load_edge_list(opt.graph_path);
    const int n = g.node_count();

    DiffusionConfig config;
    const int seed_node = select_seed(g, cli::parse_seed_policy(opt.seed_policy, 0));
    config.seeds = {{seed_node, opt.seed_charge}};
    config.thresholds = Thresholds::uniform(cli::parse_ratio_spec(opt.eps_spec, n));
    config.delta_term = cli::parse_ratio_spec(opt.delta_term, n);
    config.max_iters = opt.max_iters > 0 ? opt.max_iters : default_max_iters(n);
    const RunResult discovery = run(g, config);

    std::vector<double> values;
    if (!opt.values_csv.empty()) {
        values = cli::read_values_csv(opt.values_csv, n);
    } else if (opt.values_mode == "index") {
        values.resize(static_cast<std::size_t>(n));
        std::iota(values.begin(), values.end(), 0.0);
    } else if (opt.values_mode == "uniform") {
        std::mt19937_64 rng(opt.values_seed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        values.resize(static_cast<std::size_t>(n));
        for (double& v : values) {
            v = unit(rng);
        }
    } else {
        throw InvalidParameter("values mode must be index or uniform");
    }

    Combiner combiner = Combiner::max();
    if (opt.combiner == "max") {
        combiner = Combiner::max();
    } else if (opt.combiner == "min") {
        combiner = Combiner::min();
    } else if (opt.combiner == "average") {
        combiner = Combiner::average_metropolis();
    } else {
        throw InvalidParameter("combiner must be max, min or average");
    }

    const CoreView view = build_core_view(g, discovery.summary, values);
    const long max_rounds = opt.max_rounds > 0 ? opt.max_rounds : 100L * std::max(view.size(), 1);
    const GossipResult gossip = run_gossip(view, combiner, opt.tol, max_rounds);

    const auto [min_it, max_it] =
        std::minmax_element(gossip.values.begin(), gossip.values.end());
    const nlohmann::json report{
        {"combiner", combiner.name()},
        {"core_size", view.size()},
        {"core_components", view.component_count},
        {"discovery_status", to_string(discovery.summary.status)},
        {"discovery_iterations", discovery.summary.iterations},
        {"rounds", gossip.rounds},
        {"value", gossip.values.front()},
        {"value_min", *min_it},
        {"value_max", *max_it},
    };

    if (!opt.out_dir.empty()) {
        std::filesystem::create_directories(opt.out_dir);
        const auto values_path = std::filesystem::path(opt.out_dir) / "fuse_values.csv";
        std::ofstream out(values_path);
        out << "node,value\n";
        for (int local = 0; local < view.size(); ++local) {
            out << view.to_original[local] << ',' << cli::format_double(gossip.values[local])
                << '\n';
        }
        const auto report_path = std::filesystem::path(opt.out_dir) / "fuse_summary.json";
        std::ofstream(report_path) << report.dump(2) << '\n';
    }
    std::cout << report.dump() << '\n';
    return kExitOk;
}

struct ExperimentOptions {
    std::string spec_path;
    std::string out_dir; // empty -> spec.output_dir
};

int cmd_experiment(const ExperimentOptions& opt) {
    const cli::ExperimentSpec spec = cli::load_experiment_spec(opt.spec_path);
    const std::string out_dir = opt.out_dir.empty() ? spec.output_dir : opt.out_dir;
    const auto rows = cli::run_experiment(spec, out_dir);

    int failures = 0;
    for (const auto& row : rows) {
        if (row.status.rfind("error", 0) == 0) {
            ++failures;
        }
    }
    std::cout << "runs=" << rows.size() << " errors=" << failures << " aggregate="
              << (std::filesystem::path(out_dir) / "aggregate.csv").string() << '\n';
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Threshold-gated local charge diffusion: core discovery, in-core function "
                 "computation, load balancing and convergence experiments"};
    app.require_subcommand(1);

    GenOptions gen_opt;
    CLI::App* gen = app.add_subcommand("gen", "Generate a graph and write its edge list");
    gen->add_option("family", gen_opt.family, "cycle | regular | powerlaw | erdos")->required();
    gen->add_option("--n", gen_opt.n, "node count")->required();
    gen->add_option("--d", gen_opt.d, "degree (regular)");
    gen->add_option("--m", gen_opt.m, "attachments per node (powerlaw)");
    gen->add_option("--p", gen_opt.p, "edge probability (erdos)");
    gen->add_option("--seed", gen_opt.seed, "rng seed");
    gen->add_option("-o,--output", gen_opt.output, "edge-list path")->required();

    RunOptions run_opt;
    CLI::App* run_cmd = app.add_subcommand("run", "Run the diffusion to termination");
    run_cmd->add_option("graph", run_opt.graph_path, "edge-list file")->required();
    run_cmd->add_option("--eps", run_opt.eps_spec, "threshold, absolute or A/n")->required();
    run_cmd->add_option("--seed-policy", run_opt.seed_policy,
                        "max_degree | min_degree | random | explicit:<node>");
    run_cmd->add_option("--seed-charge", run_opt.seed_charge, "initial charge at the seed");
    run_cmd->add_option("--delta-term", run_opt.delta_term, "termination tolerance, abs or A/n");
    run_cmd->add_option("--max-iters", run_opt.max_iters, "iteration cap (default 100*n)");
    run_cmd->add_option("--rng-seed", run_opt.rng_seed, "seed for the random seed policy");
    run_cmd->add_option("-o,--out-dir", run_opt.out_dir, "artifact directory")->required();
    run_cmd->add_option("--name", run_opt.base, "artifact base name");

    CompareOptions cmp_opt;
    CLI::App* cmp = app.add_subcommand(
        "compare", "Run with eps=0 against the lazy-random-walk reference");
    cmp->add_option("graph", cmp_opt.graph_path, "edge-list file")->required();
    cmp->add_option("--steps", cmp_opt.steps, "number of synchronous steps")->required();
    cmp->add_option("--seed-policy", cmp_opt.seed_policy, "starting node policy");
    cmp->add_option("--tol", cmp_opt.tol, "per-component tolerance");

    BalanceOptions bal_opt;
    CLI::App* bal = app.add_subcommand("balance", "Shed load across neighbors until all fits");
    bal->add_option("graph", bal_opt.graph_path, "edge-list file")->required();
    bal->add_option("--loads", bal_opt.loads_csv, "CSV node,load,capacity")->required();
    bal->add_option("--delta-term", bal_opt.delta_term, "termination tolerance");
    bal->add_option("--max-iters", bal_opt.max_iters, "iteration cap (default 100*n)");
    bal->add_option("-o,--out-dir", bal_opt.out_dir, "artifact directory")->required();

    FuseOptions fuse_opt;
    CLI::App* fuse = app.add_subcommand("fuse", "Compute a decomposable function over the core");
    fuse->add_option("graph", fuse_opt.graph_path, "edge-list file")->required();
    fuse->add_option("--eps", fuse_opt.eps_spec, "threshold, absolute or A/n")->required();
    fuse->add_option("--combiner", fuse_opt.combiner, "max | min | average");
    fuse->add_option("--seed-policy", fuse_opt.seed_policy, "starting node policy");
    fuse->add_option("--seed-charge", fuse_opt.seed_charge, "initial charge at the seed");
    fuse->add_option("--delta-term", fuse_opt.delta_term, "termination tolerance");
    fuse->add_option("--max-iters", fuse_opt.max_iters, "iteration cap");
    fuse->add_option("--values", fuse_opt.values_csv, "CSV node,value with sensor readings");
    fuse->add_option("--values-mode", fuse_opt.values_mode,
                     "generated values when no CSV: index | uniform");
    fuse->add_option("--values-seed", fuse_opt.values_seed, "seed for uniform values");
    fuse->add_option("--tol", fuse_opt.tol, "gossip stop tolerance");
    fuse->add_option("--max-rounds", fuse_opt.max_rounds, "gossip round cap");
    fuse->add_option("-o,--out-dir", fuse_opt.out_dir, "artifact directory (optional)");

    ExperimentOptions exp_opt;
    CLI::App* exp = app.add_subcommand("experiment", "Run a JSON-described sweep");
    exp->add_option("spec", exp_opt.spec_path, "experiment spec JSON")->required();
    exp->add_option("-o,--out-dir", exp_opt.out_dir, "override the spec's output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            return cmd_gen(gen_opt);
        }
        if (run_cmd->parsed()) {
            return cmd_run(run_opt);
        }
        if (cmp->parsed()) {
            return cmd_compare(cmp_opt);
        }
        if (bal->parsed()) {
            return cmd_balance(bal_opt);
        }
        if (fuse->parsed()) {
            return cmd_fuse(fuse_opt);
        }
        if (exp->parsed()) {
            return cmd_experiment(exp_opt);
        }
    } catch (const InfeasibleLoad& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const EmptyCore& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitEmptyCore;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    }
    return kExitBadInput;
}
