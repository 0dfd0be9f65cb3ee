#include "experiment.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "artifacts.hpp"
#include "coreflow/coreflow.hpp"

namespace coreflow::cli {

namespace {

const std::vector<std::string> kFamilies = {"cycle", "regular", "powerlaw", "erdos"};

std::string default_label(const ExperimentGraph& g) {
    std::ostringstream label;
    label << g.family << "_n" << g.n;
    if (g.family == "regular") {
        label << "_d" << g.d;
    } else if (g.family == "powerlaw") {
        label << "_m" << g.m;
    } else if (g.family == "erdos") {
        label << "_p" << g.p;
    }
    if (!g.seed_policy.empty()) {
        label << "_" << g.seed_policy;
    }
    return label.str();
}

} // namespace

std::string sanitize_spec_label(const std::string& spec) {
    std::string out = spec;
    for (char& c : out) {
        if (c == '/') {
            c = '-';
        } else if (c == '.') {
            c = '_';
        }
    }
    return out;
}

Graph build_family_graph(const ExperimentGraph& spec, std::uint64_t rng_seed) {
    if (spec.family == "cycle") {
        return gen_cycle(spec.n);
    }
    if (spec.family == "regular") {
        return gen_random_regular(spec.n, spec.d, rng_seed);
    }
    if (spec.family == "powerlaw") {
        return gen_powerlaw(spec.n, spec.m, rng_seed);
    }
    if (spec.family == "erdos") {
        return gen_erdos_renyi(spec.n, spec.p, rng_seed);
    }
    throw InvalidParameter("unknown graph family \"" + spec.family + "\"");
}

ExperimentSpec parse_experiment_spec(const nlohmann::json& doc) {
    ExperimentSpec spec;
    if (!doc.is_object()) {
        throw InvalidParameter("experiment spec must be a JSON object");
    }
    if (!doc.contains("graphs") || !doc["graphs"].is_array() || doc["graphs"].empty()) {
        throw InvalidParameter("experiment spec needs a non-empty \"graphs\" array");
    }
    if (!doc.contains("eps") || !doc["eps"].is_array() || doc["eps"].empty()) {
        throw InvalidParameter("experiment spec needs a non-empty \"eps\" array");
    }

    for (const auto& entry : doc["graphs"]) {
        ExperimentGraph g;
        g.family = entry.value("family", "");
        if (std::find(kFamilies.begin(), kFamilies.end(), g.family) == kFamilies.end()) {
            throw InvalidParameter("unknown graph family \"" + g.family + "\"");
        }
        g.n = entry.value("n", 0);
        if (g.n <= 0) {
            throw InvalidParameter("graph entry needs n > 0");
        }
        g.d = entry.value("d", 10);
        g.m = entry.value("m", 5);
        g.p = entry.value("p", 0.01);
        g.rng_seed = entry.value("rng_seed", 1ULL);
        g.seed_policy = entry.value("seed_policy", "");
        g.label = entry.value("label", "");
        if (g.label.empty()) {
            g.label = default_label(g);
        }
        spec.graphs.push_back(std::move(g));
    }

    for (const auto& eps : doc["eps"]) {
        if (eps.is_string()) {
            spec.eps_specs.push_back(eps.get<std::string>());
        } else if (eps.is_number()) {
            spec.eps_specs.push_back(format_double(eps.get<double>()));
        } else {
            throw InvalidParameter("eps entries must be strings or numbers");
        }
    }

    spec.seed_policy = doc.value("seed_policy", std::string("max_degree"));
    spec.seed_charge = doc.value("seed_charge", 1.0);
    if (!(spec.seed_charge > 0.0)) {
        throw InvalidParameter("seed_charge must be positive");
    }
    spec.delta_term_spec = doc.value("delta_term", std::string("1/n"));
    spec.max_iters = doc.value("max_iters", 0L);
    spec.repetitions = doc.value("repetitions", 1);
    if (spec.repetitions < 1) {
        throw InvalidParameter("repetitions must be at least 1");
    }
    spec.rng_seed_base = doc.value("rng_seed_base", 0ULL);
    spec.output_dir = doc.value("output_dir", std::string("experiment_out"));
    return spec;
}

ExperimentSpec load_experiment_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path, 0);
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad JSON: ") + e.what(), 0);
    }
    return parse_experiment_spec(doc);
}

std::vector<AggregateRow> run_experiment(const ExperimentSpec& spec, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::vector<AggregateRow> rows;

    for (const ExperimentGraph& graph_spec : spec.graphs) {
        for (std::size_t eps_index = 0; eps_index < spec.eps_specs.size(); ++eps_index) {
            const std::string& eps_spec = spec.eps_specs[eps_index];
            for (int rep = 0; rep < spec.repetitions; ++rep) {
                AggregateRow row;
                row.label = graph_spec.label;
                row.family = graph_spec.family;
                row.n = graph_spec.n;
                row.eps_spec = eps_spec;
                row.rep = rep;
                row.rng_seed =
                    spec.rng_seed_base + graph_spec.rng_seed + 7919ULL * static_cast<std::uint64_t>(rep);
                try {
                    const Graph graph = build_family_graph(graph_spec, row.rng_seed);
                    row.eps_value = parse_ratio_spec(eps_spec, graph.node_count());

                    const std::string policy_text = graph_spec.seed_policy.empty()
                                                        ? spec.seed_policy
                                                        : graph_spec.seed_policy;
                    const SeedPolicy policy =
                        parse_seed_policy(policy_text, row.rng_seed ^ 0x9e3779b97f4a7c15ULL);
                    row.seed_node = select_seed(graph, policy);

                    DiffusionConfig config;
                    config.seeds = {{row.seed_node, spec.seed_charge}};
                    config.thresholds = Thresholds::uniform(row.eps_value);
                    config.delta_term = parse_ratio_spec(spec.delta_term_spec, graph.node_count());
                    config.max_iters = spec.max_iters > 0 ? spec.max_iters
                                                          : default_max_iters(graph.node_count());
                    row.expected_saturated =
                        spec.seed_charge >= row.eps_value * graph.node_count();

                    const auto started = std::chrono::steady_clock::now();
                    const RunResult result = run(graph, config);
                    const auto finished = std::chrono::steady_clock::now();
                    row.wall_ms =
                        std::chrono::duration<double, std::milli>(finished - started).count();

                    row.status = to_string(result.summary.status);
                    row.iterations = result.summary.iterations;
                    row.core_size = static_cast<int>(result.summary.core.size());
                    row.periphery_size = static_cast<int>(result.summary.periphery.size());

                    RunConfigEcho echo;
                    echo.graph = graph_spec.label;
                    echo.n = graph.node_count();
                    echo.eps_spec = eps_spec;
                    echo.eps_value = row.eps_value;
                    echo.seed_policy = policy_text;
                    echo.seed_node = row.seed_node;
                    echo.seed_charge = spec.seed_charge;
                    echo.delta_term = config.delta_term;
                    echo.max_iters = config.max_iters;
                    echo.rng_seed = row.rng_seed;

                    const std::string base = graph_spec.label + "__eps-" +
                                             sanitize_spec_label(eps_spec) + "__rep" +
                                             std::to_string(rep);
                    write_run_artifact(out_dir, base, result, echo);
                } catch (const std::exception& e) {
                    row.status = std::string("error: ") + e.what();
                }
                rows.push_back(std::move(row));
            }
        }
    }

    // eps order follows its position in the spec list
    std::stable_sort(rows.begin(), rows.end(), [&](const AggregateRow& a, const AggregateRow& b) {
        if (a.family != b.family) {
            return a.family < b.family;
        }
        if (a.n != b.n) {
            return a.n < b.n;
        }
        const auto eps_pos = [&](const std::string& spec_text) {
            return std::find(spec.eps_specs.begin(), spec.eps_specs.end(), spec_text) -
                   spec.eps_specs.begin();
        };
        if (eps_pos(a.eps_spec) != eps_pos(b.eps_spec)) {
            return eps_pos(a.eps_spec) < eps_pos(b.eps_spec);
        }
        return a.rep < b.rep;
    });

    write_aggregate_csv(rows, (std::filesystem::path(out_dir) / "aggregate.csv").string());
    return rows;
}

void write_aggregate_csv(const std::vector<AggregateRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("cannot open " + path + " for writing", 0);
    }
    out << "label,family,n,eps_spec,eps_value,rep,rng_seed,seed_node,status,"
           "expected_saturated,iterations,core_size,periphery_size,wall_ms\n";
    for (AggregateRow row : rows) {
        std::replace(row.status.begin(), row.status.end(), ',', ';');
        std::replace(row.status.begin(), row.status.end(), '\n', ' ');
        out << row.label << ',' << row.family << ',' << row.n << ',' << row.eps_spec << ','
            << format_double(row.eps_value) << ',' << row.rep << ',' << row.rng_seed << ','
            << row.seed_node << ',' << row.status << ',' << (row.expected_saturated ? 1 : 0)
            << ',' << row.iterations << ',' << row.core_size << ',' << row.periphery_size << ','
            << format_double(row.wall_ms) << '\n';
    }
}

} // namespace coreflow::cli
