#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "artifacts.hpp"
#include "coreflow/coreflow.hpp"
#include "experiment.hpp"
#include "test_util.hpp"

using namespace coreflow;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("coreflow_artifacts_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("ratio specs") {
    CHECK(cli::parse_ratio_spec("0.4", 100) == doctest::Approx(0.4));
    CHECK(cli::parse_ratio_spec("10/n", 1000) == doctest::Approx(0.01));
    CHECK(cli::parse_ratio_spec("100/n", 1000) == doctest::Approx(0.1));
    CHECK(cli::parse_ratio_spec("1/n", 50) == doctest::Approx(0.02));
    CHECK(cli::parse_ratio_spec("1e-6", 50) == doctest::Approx(1e-6));

    CHECK_THROWS_AS(cli::parse_ratio_spec("10/m", 100), InvalidParameter);
    CHECK_THROWS_AS(cli::parse_ratio_spec("abc", 100), InvalidParameter);
    CHECK_THROWS_AS(cli::parse_ratio_spec("0.4x", 100), InvalidParameter);
    CHECK_THROWS_AS(cli::parse_ratio_spec("0.4", 0), InvalidParameter);
}

TEST_CASE("seed policy parsing") {
    CHECK(cli::parse_seed_policy("max_degree", 0).kind == SeedPolicy::Kind::MaxDegree);
    CHECK(cli::parse_seed_policy("min_degree", 0).kind == SeedPolicy::Kind::MinDegree);
    const SeedPolicy random = cli::parse_seed_policy("random", 42);
    CHECK(random.kind == SeedPolicy::Kind::Random);
    CHECK(random.rng_seed == 42);
    const SeedPolicy fixed = cli::parse_seed_policy("explicit:7", 0);
    CHECK(fixed.kind == SeedPolicy::Kind::Explicit);
    CHECK(fixed.node == 7);
    CHECK_THROWS_AS(cli::parse_seed_policy("highest", 0), InvalidParameter);
    CHECK_THROWS_AS(cli::parse_seed_policy("explicit:xyz", 0), InvalidParameter);
}

TEST_CASE("trace csv round trip") {
    const Graph g = gen_cycle(30);
    DiffusionConfig cfg;
    cfg.seeds = {{0, 1.0}};
    cfg.thresholds = Thresholds::uniform(0.05);
    cfg.delta_term = 1e-5;
    cfg.max_iters = 10000;
    const RunResult result = run(g, cfg);

    const fs::path dir = temp_dir("trace");
    const std::string path = (dir / "trace.csv").string();
    cli::write_trace_csv(result.trace, path);
    const auto loaded = cli::read_trace_csv(path);

    REQUIRE(loaded.size() == result.trace.size());
    for (std::size_t i = 0; i < loaded.size(); ++i) {
        CHECK(loaded[i].t == result.trace[i].t);
        CHECK(loaded[i].total_charge == result.trace[i].total_charge);
        CHECK(loaded[i].l1_delta == result.trace[i].l1_delta);
        CHECK(loaded[i].core_size == result.trace[i].core_size);
        CHECK(loaded[i].periphery_size == result.trace[i].periphery_size);
        CHECK(loaded[i].untouched_size == result.trace[i].untouched_size);
        CHECK(loaded[i].max_edge_delta == result.trace[i].max_edge_delta);
    }
    fs::remove_all(dir);
}

TEST_CASE("run artifacts are consistent and re-parseable") {
    const Graph g = testutil::make_path(3);
    DiffusionConfig cfg;
    cfg.seeds = {{1, 1.0}};
    cfg.thresholds = Thresholds::uniform(0.4);
    cfg.delta_term = 0.01;
    cfg.max_iters = 300;
    const RunResult result = run(g, cfg);

    cli::RunConfigEcho echo;
    echo.graph = "path3";
    echo.n = 3;
    echo.eps_spec = "0.4";
    echo.eps_value = 0.4;
    echo.seed_policy = "explicit:1";
    echo.seed_node = 1;
    echo.delta_term = 0.01;
    echo.max_iters = 300;

    const fs::path dir = temp_dir("artifact");
    const cli::RunArtifact artifact = cli::write_run_artifact(dir.string(), "case", result, echo);

    const auto trace = cli::read_trace_csv(artifact.trace_path);
    CHECK(static_cast<long>(trace.size()) == result.summary.iterations);

    std::ifstream in(artifact.summary_path);
    nlohmann::json doc;
    in >> doc;
    CHECK(doc["status"] == "terminated");
    CHECK(doc["iterations"].get<long>() == result.summary.iterations);
    CHECK(doc["core"].get<std::vector<int>>() == result.summary.core);
    CHECK(doc["config"]["eps_spec"] == "0.4");
    // the echoed hash must match a recomputation from the echoed config
    CHECK(doc["config_hash"].get<std::uint64_t>() == cli::config_hash(echo));
    fs::remove_all(dir);
}

TEST_CASE("config hash separates configs") {
    cli::RunConfigEcho a;
    a.graph = "g.el";
    a.n = 10;
    a.eps_spec = "10/n";
    cli::RunConfigEcho b = a;
    CHECK(cli::config_hash(a) == cli::config_hash(b));
    b.eps_spec = "100/n";
    CHECK(cli::config_hash(a) != cli::config_hash(b));
}

TEST_CASE("load csv parsing") {
    const fs::path dir = temp_dir("loads");
    const std::string path = (dir / "loads.csv").string();
    {
        std::ofstream out(path);
        out << "node,load,capacity\n2,0.5,1.0\n0,0.1,0.4\n1,0,0.4\n";
    }
    const LoadProblem problem = cli::read_load_csv(path, 3);
    CHECK(problem.loads == std::vector<double>{0.1, 0.0, 0.5});
    CHECK(problem.capacities == std::vector<double>{0.4, 0.4, 1.0});

    {
        std::ofstream out(path);
        out << "node,load,capacity\n0,0.1,0.4\n";
    }
    CHECK_THROWS_AS(cli::read_load_csv(path, 2), ParseError); // node 1 missing
    {
        std::ofstream out(path);
        out << "node,load,capacity\n0,0.1,0.4\n0,0.2,0.4\n";
    }
    CHECK_THROWS_AS(cli::read_load_csv(path, 1), ParseError); // duplicate
    {
        std::ofstream out(path);
        out << "bad header\n";
    }
    CHECK_THROWS_AS(cli::read_load_csv(path, 1), ParseError);
    fs::remove_all(dir);
}

TEST_CASE("values csv parsing") {
    const fs::path dir = temp_dir("values");
    const std::string path = (dir / "values.csv").string();
    {
        std::ofstream out(path);
        out << "node,value\n1,5.5\n0,-1\n";
    }
    CHECK(cli::read_values_csv(path, 2) == std::vector<double>{-1.0, 5.5});
    CHECK_THROWS_AS(cli::read_values_csv(path, 3), ParseError);
    fs::remove_all(dir);
}

TEST_CASE("experiment spec validation") {
    CHECK_THROWS_AS(cli::parse_experiment_spec(nlohmann::json::object()), InvalidParameter);
    CHECK_THROWS_AS(cli::parse_experiment_spec(nlohmann::json::parse(
                        R"({"graphs": [], "eps": ["10/n"]})")),
                    InvalidParameter);
    CHECK_THROWS_AS(cli::parse_experiment_spec(nlohmann::json::parse(
                        R"({"graphs": [{"family": "cycle", "n": 10}], "eps": []})")),
                    InvalidParameter);
    CHECK_THROWS_AS(cli::parse_experiment_spec(nlohmann::json::parse(
                        R"({"graphs": [{"family": "torus", "n": 10}], "eps": ["10/n"]})")),
                    InvalidParameter);

    const auto spec = cli::parse_experiment_spec(nlohmann::json::parse(R"({
        "graphs": [{"family": "regular", "n": 50, "d": 4},
                   {"family": "powerlaw", "n": 50, "m": 3, "seed_policy": "min_degree"}],
        "eps": ["10/n", 0.25],
        "repetitions": 2
    })"));
    CHECK(spec.graphs.size() == 2);
    CHECK(spec.graphs[0].label == "regular_n50_d4");
    CHECK(spec.graphs[1].label == "powerlaw_n50_m3_min_degree");
    CHECK(spec.eps_specs.size() == 2);
    CHECK(spec.eps_specs[0] == "10/n");
    CHECK(spec.repetitions == 2);
    CHECK(spec.delta_term_spec == "1/n");
}

TEST_CASE("experiment harness output") {
    cli::ExperimentSpec spec;
    cli::ExperimentGraph cycle;
    cycle.family = "cycle";
    cycle.n = 60;
    cycle.label = "cycle_n60";
    cli::ExperimentGraph regular;
    regular.family = "regular";
    regular.n = 60;
    regular.d = 4;
    regular.rng_seed = 3;
    regular.label = "regular_n60_d4";
    spec.graphs = {cycle, regular};
    spec.eps_specs = {"10/n"};
    spec.repetitions = 2;

    const fs::path dir = temp_dir("exp");
    const auto rows = cli::run_experiment(spec, dir.string());
    REQUIRE(rows.size() == 4);
    // ordered by family, then rep
    CHECK(rows[0].family == "cycle");
    CHECK(rows[0].rep == 0);
    CHECK(rows[1].rep == 1);
    CHECK(rows[2].family == "regular");

    for (const auto& row : rows) {
        CHECK(row.status == "terminated");
        const std::string base =
            row.label + "__eps-" + cli::sanitize_spec_label(row.eps_spec) + "__rep" +
            std::to_string(row.rep);
        const auto trace = cli::read_trace_csv((dir / (base + ".trace.csv")).string());
        CHECK(static_cast<long>(trace.size()) == row.iterations);
    }
    CHECK(fs::exists(dir / "aggregate.csv"));

    // a failing entry is recorded, not fatal
    cli::ExperimentGraph bad;
    bad.family = "regular";
    bad.n = 5;
    bad.d = 3; // odd n*d
    bad.label = "bad";
    spec.graphs = {bad, cycle};
    const auto rows2 = cli::run_experiment(spec, dir.string());
    REQUIRE(rows2.size() == 4);
    int errors = 0;
    for (const auto& row : rows2) {
        if (row.status.rfind("error", 0) == 0) {
            ++errors;
        }
    }
    CHECK(errors == 2);
    fs::remove_all(dir);
}
