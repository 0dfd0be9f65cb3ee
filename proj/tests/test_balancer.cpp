#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "coreflow/coreflow.hpp"
#include "test_util.hpp"

using namespace coreflow;

TEST_CASE("feasibility is the strict sum comparison") {
    CHECK_FALSE(feasibility({{0.5, 0.5}, {0.4, 0.4}}));      // 1.0 vs 0.8
    CHECK(feasibility({{0.5, 0.5}, {0.6, 0.6}}));            // 1.0 vs 1.2
    CHECK_FALSE(feasibility({{0.4, 0.4}, {0.4, 0.4}}));      // exactly equal
    CHECK_THROWS_AS(feasibility({{0.5}, {0.4, 0.4}}), InvalidParameter);
    CHECK_THROWS_AS(feasibility({{-0.1}, {0.4}}), InvalidParameter);
    CHECK_THROWS_AS(feasibility({{0.1}, {0.0}}), InvalidParameter);
}

TEST_CASE("shedding on the 3-path matches the diffusion run") {
    const Graph g = testutil::make_path(3);
    const LoadProblem problem{{0.0, 1.0, 0.0}, {0.4, 0.4, 0.4}};
    const BalanceResult result = balance(g, problem, 0.01, 1000);

    CHECK(result.run.summary.status == RunStatus::Terminated);
    CHECK(result.run.summary.iterations == 7);
    CHECK(result.run.summary.final_state.x[0] == doctest::Approx(0.29765625).epsilon(1e-15));
    CHECK(result.run.summary.final_state.x[1] == doctest::Approx(0.4046875).epsilon(1e-15));
    CHECK(result.run.summary.final_state.x[2] == doctest::Approx(0.29765625).epsilon(1e-15));

    REQUIRE(result.overloaded.size() == 1);
    CHECK(result.overloaded[0].node == 1);
    CHECK(result.overloaded[0].shed ==
          doctest::Approx(1.0 - 0.4046875).epsilon(1e-12));
    CHECK(result.max_residual_overload <= 0.01);
    CHECK(result.settle_passes == 0);
}

TEST_CASE("already balanced loads stay untouched") {
    const Graph g = testutil::make_path(3);
    const LoadProblem problem{{0.1, 0.3, 0.2}, {0.4, 0.4, 0.4}};
    const BalanceResult result = balance(g, problem, 0.01, 1000);
    CHECK(result.run.summary.status == RunStatus::Terminated);
    CHECK(result.run.summary.iterations == 0);
    CHECK(result.run.summary.final_state.x == problem.loads);
    CHECK(result.overloaded.empty());
}

TEST_CASE("infeasible problems are rejected up front") {
    const Graph g = testutil::make_path(2);
    CHECK_THROWS_AS(balance(g, {{1.0, 0.0}, {0.4, 0.4}}, 0.01, 1000), InfeasibleLoad);

    SUBCASE("per-component feasibility") {
        // globally feasible, but the first triangle is overloaded on its own
        const Graph two = testutil::two_triangles();
        const LoadProblem problem{{2.0, 0.0, 0.0, 0.0, 0.0, 0.0},
                                  {0.5, 0.5, 0.5, 2.0, 2.0, 2.0}};
        CHECK(feasibility(problem));
        CHECK_THROWS_AS(balance(two, problem, 0.01, 1000), InfeasibleLoad);
    }
}

TEST_CASE("balance validates inputs") {
    const Graph g = testutil::make_path(3);
    CHECK_THROWS_AS(balance(g, {{1.0, 0.0}, {2.0, 2.0}}, 0.01, 100), InvalidParameter);
    CHECK_THROWS_AS(balance(g, {{0.1, 0.1, 0.1}, {1.0, 1.0, 1.0}}, 0.0, 100),
                    InvalidParameter);
    CHECK_THROWS_AS(balance(g, {{0.1, 0.1, 0.1}, {1.0, 1.0, 1.0}}, 0.01, 0),
                    InvalidParameter);
}

TEST_CASE("load is conserved and shedding stays local") {
    // overloaded center of a longer path: the ends must never see any load
    const Graph g = testutil::make_path(5);
    const LoadProblem problem{{0.0, 0.0, 1.0, 0.0, 0.0}, {0.45, 0.45, 0.45, 0.45, 0.45}};
    const BalanceResult result = balance(g, problem, 1e-6, 10000);

    const double total = total_charge(result.run.summary.final_state.x);
    CHECK(std::abs(total - 1.0) <= 1e-12);
    CHECK(result.run.summary.final_state.x[0] == 0.0);
    CHECK(result.run.summary.final_state.x[4] == 0.0);
    // receivers are the direct neighbors of the overloaded node
    CHECK(result.run.summary.final_state.x[1] > 0.0);
    CHECK(result.run.summary.final_state.x[3] > 0.0);
}

TEST_CASE("an overloaded hub sheds monotonically") {
    const Graph g = testutil::make_star(6);
    LoadProblem problem;
    problem.loads = {3.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    problem.capacities = std::vector<double>(7, 0.6);

    DiffusionConfig cfg;
    cfg.seeds = {{0, 3.0}};
    cfg.thresholds = Thresholds::per_node(problem.capacities);
    cfg.delta_term = 1e-8;
    cfg.max_iters = 100000;

    double previous = 3.0;
    run(g, cfg, [&](const TraceRecord&, const ChargeState& s) {
        CHECK(s.x[0] <= previous + 1e-15);
        previous = s.x[0];
    });
}

TEST_CASE("random feasible problems settle within tolerance") {
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    for (int instance = 0; instance < 20; ++instance) {
        const int n = 100;
        const Graph g = testutil::random_connected_er(n, 0.08, 500 + instance);

        LoadProblem problem;
        problem.capacities.resize(n);
        problem.loads.resize(n);
        for (int i = 0; i < n; ++i) {
            problem.capacities[i] = 0.5 + 1.5 * unit(rng);
            problem.loads[i] = unit(rng) < 0.9 ? 1.5 * unit(rng) : 2.0 + 2.0 * unit(rng);
        }
        // scale to an 80% utilization so the instance is strictly feasible
        const double scale = 0.8 * total_charge(problem.capacities) /
                             total_charge(problem.loads);
        for (double& load : problem.loads) {
            load *= scale;
        }
        REQUIRE(feasibility(problem));

        const double delta_term = 1e-6;
        const BalanceResult result = balance(g, problem, delta_term, 100 * n);
        CHECK(result.run.summary.status == RunStatus::Terminated);
        for (int i = 0; i < n; ++i) {
            CHECK(result.run.summary.final_state.x[i] <=
                  problem.capacities[i] + delta_term);
        }
        const double total = total_charge(result.run.summary.final_state.x);
        const double initial = total_charge(problem.loads);
        CHECK(std::abs(total - initial) <= 1e-12 * initial);

        // load only ever arrives from nodes above capacity, so every gainer
        // sits in the shedding set or adjacent to it
        std::set<int> reachable(result.run.summary.core.begin(),
                                result.run.summary.core.end());
        for (int c : result.run.summary.core) {
            for (int nb : g.neighbors(c)) {
                reachable.insert(nb);
            }
        }
        for (int i = 0; i < n; ++i) {
            if (result.run.summary.final_state.x[i] > problem.loads[i] + 1e-12) {
                CHECK(reachable.count(i) == 1);
            }
        }
        // and each piece of the shedding set traces back to an initially
        // overloaded node
        std::vector<int> overload_nodes;
        for (const OverloadEntry& entry : result.overloaded) {
            overload_nodes.push_back(entry.node);
        }
        CHECK(core_connectivity(g, result.run.summary.core, overload_nodes));
    }
}
