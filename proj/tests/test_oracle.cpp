#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "coreflow/coreflow.hpp"
#include "test_util.hpp"

using namespace coreflow;

TEST_CASE("reference step matches the hand evaluation on the 3-path") {
    const Graph g = testutil::make_path(3);
    ChargeState s{{0.0, 1.0, 0.0}, {0.4, 0.4, 0.4}, 0};
    const ChargeState next = oracle::reference_step(g, s);
    CHECK(next.x[0] == doctest::Approx(0.15).epsilon(1e-15));
    CHECK(next.x[1] == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(next.x[2] == doctest::Approx(0.15).epsilon(1e-15));
}

TEST_CASE("reference step keeps an all-zero state at zero") {
    const Graph g = gen_cycle(6);
    ChargeState s{std::vector<double>(6, 0.0), std::vector<double>(6, 0.3), 0};
    const ChargeState next = oracle::reference_step(g, s);
    for (double v : next.x) {
        CHECK(v == 0.0);
    }
}

TEST_CASE("engine step agrees with the naive transcription") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    for (int instance = 0; instance < 100; ++instance) {
        Graph g;
        switch (instance % 4) {
        case 0:
            g = gen_erdos_renyi(10 + instance % 50, 0.15, instance); // may have isolated nodes
            break;
        case 1:
            g = gen_random_regular(20 + 2 * (instance % 10), 4, instance);
            break;
        case 2:
            g = gen_powerlaw(15 + instance % 40, 2, instance);
            break;
        default:
            g = gen_cycle(5 + instance % 30);
            break;
        }
        const int n = g.node_count();
        ChargeState s;
        s.x = testutil::random_charges(n, 7000 + instance);
        s.eps.resize(n);
        for (int i = 0; i < n; ++i) {
            s.eps[i] = 0.05 + 0.5 * unit(rng);
        }

        const ChargeState by_engine = step(g, s);
        const ChargeState by_reference = oracle::reference_step(g, s);
        for (int i = 0; i < n; ++i) {
            CHECK(std::abs(by_engine.x[i] - by_reference.x[i]) <= 1e-12);
        }
    }
}

TEST_CASE("lazy walk single steps") {
    const Graph path = testutil::make_path(3);
    const auto v1 = oracle::lazy_walk_step(path, {0.0, 1.0, 0.0});
    CHECK(v1[0] == 0.25);
    CHECK(v1[1] == 0.5);
    CHECK(v1[2] == 0.25);

    SUBCASE("uniform mass is stationary on a regular graph") {
        const Graph cyc = gen_cycle(6);
        const oracle::DenseVector uniform(6, 1.0 / 6.0);
        const auto next = oracle::lazy_walk_step(cyc, uniform);
        for (double v : next) {
            CHECK(v == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
        }
    }
    SUBCASE("two steps on the 4-cycle") {
        const Graph cyc = gen_cycle(4);
        auto v = oracle::lazy_walk_step(cyc, {1.0, 0.0, 0.0, 0.0});
        v = oracle::lazy_walk_step(cyc, v);
        CHECK(v[0] == 0.375);
        CHECK(v[1] == 0.25);
        CHECK(v[2] == 0.125);
        CHECK(v[3] == 0.25);
    }
    SUBCASE("isolated nodes keep their mass") {
        const Graph g = Graph::from_edges(3, {{0, 1}});
        const auto v = oracle::lazy_walk_step(g, {0.0, 0.0, 0.7});
        CHECK(v[2] == 0.7);
    }
    SUBCASE("length mismatch is rejected") {
        CHECK_THROWS_AS(oracle::lazy_walk_step(path, {1.0, 0.0}), InvalidParameter);
    }
}

TEST_CASE("lazy walk conserves total mass") {
    const Graph g = testutil::random_connected_er(80, 0.08, 5);
    oracle::DenseVector v = testutil::random_charges(80, 99, 2.0, 0.5);
    const double initial = total_charge(v);
    for (int t = 0; t < 50; ++t) {
        v = oracle::lazy_walk_step(g, v);
        CHECK(std::abs(total_charge(v) - initial) <= 1e-12 * std::abs(initial));
    }
}

TEST_CASE("compare_states") {
    const auto equal = oracle::compare_states({0.0, 1.0}, {0.0, 1.0}, 1e-12);
    CHECK(equal.within_tol);
    CHECK(equal.max_abs_diff == 0.0);

    const auto close = oracle::compare_states({0.0, 1.0}, {0.0, 1.0 + 1e-9}, 1e-8);
    CHECK(close.within_tol);
    CHECK(close.max_abs_diff == doctest::Approx(1e-9).epsilon(1e-6));

    const auto far = oracle::compare_states({0.0, 1.0}, {0.0, 1.1}, 1e-8);
    CHECK_FALSE(far.within_tol);
    CHECK(far.max_abs_diff == doctest::Approx(0.1).epsilon(1e-12));

    CHECK_THROWS_AS(oracle::compare_states({1.0}, {1.0, 2.0}, 1e-9), InvalidParameter);
}

TEST_CASE("zero thresholds reduce the process to the lazy walk") {
    std::vector<Graph> graphs;
    graphs.push_back(gen_cycle(40));
    graphs.push_back(gen_random_regular(120, 6, 3));
    graphs.push_back(gen_powerlaw(200, 4, 9));
    graphs.push_back(testutil::random_connected_er(77, 0.1, 8));

    for (const Graph& g : graphs) {
        const int n = g.node_count();
        const int seed_node = select_seed(g, SeedPolicy::max_degree());

        DiffusionConfig cfg;
        cfg.seeds = {{seed_node, 1.0}};
        cfg.thresholds = Thresholds::uniform(0.0);
        cfg.allow_zero_thresholds = true;
        cfg.delta_term = 1e-300; // keep stepping for the whole window
        cfg.max_iters = 50;

        oracle::DenseVector walk(n, 0.0);
        walk[seed_node] = 1.0;
        std::vector<oracle::DenseVector> walk_states;
        for (int t = 0; t < 50; ++t) {
            walk = oracle::lazy_walk_step(g, walk);
            walk_states.push_back(walk);
        }

        std::size_t t = 0;
        run(g, cfg, [&](const TraceRecord&, const ChargeState& s) {
            const auto cmp = oracle::compare_states(s.x, walk_states[t], 1e-9);
            CHECK(cmp.within_tol);
            ++t;
        });
        CHECK(t == 50);
    }
}
