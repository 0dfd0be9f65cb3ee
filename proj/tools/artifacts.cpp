#include "artifacts.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "coreflow/errors.hpp"

namespace coreflow::cli {

double parse_ratio_spec(const std::string& spec, int node_count) {
    if (node_count <= 0) {
        throw InvalidParameter("ratio spec needs a positive node count");
    }
    const auto slash = spec.find('/');
    try {
        if (slash == std::string::npos) {
            std::size_t used = 0;
            const double value = std::stod(spec, &used);
            if (used != spec.size()) {
                throw InvalidParameter("trailing characters in \"" + spec + "\"");
            }
            return value;
        }
        const std::string denom = spec.substr(slash + 1);
        if (denom != "n") {
            throw InvalidParameter("only the /n form is supported, got \"" + spec + "\"");
        }
        std::size_t used = 0;
        const std::string numer = spec.substr(0, slash);
        const double value = std::stod(numer, &used);
        if (used != numer.size()) {
            throw InvalidParameter("bad numerator in \"" + spec + "\"");
        }
        return value / node_count;
    } catch (const std::logic_error&) {
        throw InvalidParameter("cannot parse ratio spec \"" + spec + "\"");
    }
}

SeedPolicy parse_seed_policy(const std::string& text, std::uint64_t rng_seed) {
    if (text == "max_degree") {
        return SeedPolicy::max_degree();
    }
    if (text == "min_degree") {
        return SeedPolicy::min_degree();
    }
    if (text == "random") {
        return SeedPolicy::random(rng_seed);
    }
    if (text.rfind("explicit:", 0) == 0) {
        try {
            return SeedPolicy::explicit_node(std::stoi(text.substr(9)));
        } catch (const std::logic_error&) {
            throw InvalidParameter("bad explicit seed \"" + text + "\"");
        }
    }
    throw InvalidParameter("unknown seed policy \"" + text +
                           "\" (use max_degree|min_degree|random|explicit:<node>)");
}

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

nlohmann::json RunConfigEcho::to_json() const {
    return nlohmann::json{
        {"graph", graph},
        {"n", n},
        {"eps_spec", eps_spec},
        {"eps_value", eps_value},
        {"seed_policy", seed_policy},
        {"seed_node", seed_node},
        {"seed_charge", seed_charge},
        {"delta_term", delta_term},
        {"max_iters", max_iters},
        {"rng_seed", rng_seed},
    };
}

std::uint64_t config_hash(const RunConfigEcho& echo) {
    const std::string canonical = echo.to_json().dump();
    std::uint64_t hash = 1469598103934665603ULL;
    for (unsigned char c : canonical) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    return hash;
}

void write_trace_csv(const std::vector<TraceRecord>& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("cannot open " + path + " for writing", 0);
    }
    out << "t,total_charge,l1_delta,core_size,periphery_size,untouched_size,max_edge_delta\n";
    for (const TraceRecord& rec : trace) {
        out << rec.t << ',' << format_double(rec.total_charge) << ','
            << format_double(rec.l1_delta) << ',' << rec.core_size << ','
            << rec.periphery_size << ',' << rec.untouched_size << ','
            << format_double(rec.max_edge_delta) << '\n';
    }
}

std::vector<TraceRecord> read_trace_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path, 0);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("empty trace file " + path, 0);
    }
    if (line != "t,total_charge,l1_delta,core_size,periphery_size,untouched_size,"
                "max_edge_delta") {
        throw ParseError("unexpected trace header in " + path, 1);
    }
    std::vector<TraceRecord> trace;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::istringstream fields(line);
        TraceRecord rec;
        char comma = 0;
        if (!(fields >> rec.t >> comma >> rec.total_charge >> comma >> rec.l1_delta >> comma >>
              rec.core_size >> comma >> rec.periphery_size >> comma >> rec.untouched_size >>
              comma >> rec.max_edge_delta)) {
            throw ParseError("bad trace row \"" + line + "\"", line_no);
        }
        trace.push_back(rec);
    }
    return trace;
}

nlohmann::json summary_to_json(const RunSummary& summary, const RunConfigEcho& echo) {
    nlohmann::json warnings = nlohmann::json::array();
    if (summary.saturated) {
        warnings.push_back("saturated_regime");
    }
    return nlohmann::json{
        {"status", to_string(summary.status)},
        {"iterations", summary.iterations},
        {"core", summary.core},
        {"config", echo.to_json()},
        {"config_hash", config_hash(echo)},
        {"warnings", warnings},
    };
}

void write_summary_json(const RunSummary& summary, const RunConfigEcho& echo,
                        const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw ParseError("cannot open " + path + " for writing", 0);
    }
    out << summary_to_json(summary, echo).dump(2) << '\n';
}

RunArtifact write_run_artifact(const std::string& out_dir, const std::string& base,
                               const RunResult& result, const RunConfigEcho& echo) {
    std::filesystem::create_directories(out_dir);
    RunArtifact artifact;
    artifact.trace_path = (std::filesystem::path(out_dir) / (base + ".trace.csv")).string();
    artifact.summary_path = (std::filesystem::path(out_dir) / (base + ".summary.json")).string();
    write_trace_csv(result.trace, artifact.trace_path);
    write_summary_json(result.summary, echo, artifact.summary_path);
    return artifact;
}

namespace {

std::ifstream open_csv(const std::string& path, const std::string& expected_header) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path, 0);
    }
    std::string header;
    if (!std::getline(in, header) || header != expected_header) {
        throw ParseError("expected header \"" + expected_header + "\" in " + path, 1);
    }
    return in;
}

} // namespace

LoadProblem read_load_csv(const std::string& path, int node_count) {
    std::ifstream in = open_csv(path, "node,load,capacity");
    LoadProblem problem;
    problem.loads.assign(static_cast<std::size_t>(node_count), -1.0);
    problem.capacities.assign(static_cast<std::size_t>(node_count), -1.0);
    std::string line;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::istringstream fields(line);
        long node = 0;
        double load = 0.0;
        double capacity = 0.0;
        char comma = 0;
        if (!(fields >> node >> comma >> load >> comma >> capacity)) {
            throw ParseError("bad load row \"" + line + "\"", line_no);
        }
        if (node < 0 || node >= node_count) {
            throw ParseError("node " + std::to_string(node) + " out of range", line_no);
        }
        if (problem.loads[node] >= 0.0) {
            throw ParseError("duplicate row for node " + std::to_string(node), line_no);
        }
        problem.loads[node] = load;
        problem.capacities[node] = capacity;
    }
    for (int i = 0; i < node_count; ++i) {
        if (problem.loads[i] < 0.0) {
            throw ParseError("missing row for node " + std::to_string(i), 0);
        }
    }
    return problem;
}

std::vector<double> read_values_csv(const std::string& path, int node_count) {
    std::ifstream in = open_csv(path, "node,value");
    std::vector<double> values(static_cast<std::size_t>(node_count), 0.0);
    std::vector<char> seen(static_cast<std::size_t>(node_count), 0);
    std::string line;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::istringstream fields(line);
        long node = 0;
        double value = 0.0;
        char comma = 0;
        if (!(fields >> node >> comma >> value)) {
            throw ParseError("bad value row \"" + line + "\"", line_no);
        }
        if (node < 0 || node >= node_count) {
            throw ParseError("node " + std::to_string(node) + " out of range", line_no);
        }
        if (seen[node]) {
            throw ParseError("duplicate row for node " + std::to_string(node), line_no);
        }
        seen[node] = 1;
        values[node] = value;
    }
    for (int i = 0; i < node_count; ++i) {
        if (!seen[i]) {
            throw ParseError("missing row for node " + std::to_string(i), 0);
        }
    }
    return values;
}

} // namespace coreflow::cli
