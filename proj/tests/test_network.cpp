#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "dlda/gossip.hpp"
#include "dlda/graph.hpp"
#include "oracles.hpp"

using namespace dlda;

TEST_CASE("complete graph edge counts") {
    CHECK(complete_graph(50).edge_count() == 1225);
    CHECK(complete_graph(10).edge_count() == 45);

    const Graph pair = complete_graph(2);
    REQUIRE(pair.edge_count() == 1);
    CHECK(pair.edges[0] == std::pair<int, int>{0, 1});

    CHECK_THROWS_AS(complete_graph(1), ConfigError);
}

TEST_CASE("watts_strogatz with p=0 is the ring lattice") {
    Rng rng(1);
    const Graph g = watts_strogatz(50, 4, 0.0, rng);
    CHECK(g.edge_count() == 100);
    for (int d : g.degrees()) CHECK(d == 4);
    CHECK(is_connected(g));
}

TEST_CASE("watts_strogatz keeps the edge count and connectivity") {
    Rng rng(7);
    const Graph g = watts_strogatz(50, 4, 0.3, rng);
    CHECK(g.edge_count() == 100);
    CHECK(is_connected(g));
    g.validate();
}

TEST_CASE("watts_strogatz with p=1 stays connected but loses regularity") {
    Rng rng(11);
    bool any_irregular = false;
    for (int trial = 0; trial < 100; ++trial) {
        const Graph g = watts_strogatz(20, 4, 1.0, rng);
        REQUIRE(g.edge_count() == 40);
        REQUIRE(is_connected(g));

        long degree_sum = 0;
        for (int d : g.degrees()) degree_sum += d;
        REQUIRE(degree_sum == 80);  // mean degree stays k
        for (int d : g.degrees()) any_irregular = any_irregular || d != 4;
    }
    CHECK(any_irregular);
}

TEST_CASE("watts_strogatz parameter validation") {
    Rng rng(1);
    CHECK_THROWS_AS(watts_strogatz(10, 3, 0.3, rng), ConfigError);
    CHECK_THROWS_AS(watts_strogatz(10, 0, 0.3, rng), ConfigError);
    CHECK_THROWS_AS(watts_strogatz(4, 4, 0.3, rng), ConfigError);
    CHECK_THROWS_AS(watts_strogatz(10, 4, 1.5, rng), ConfigError);
}

TEST_CASE("is_connected detects split components") {
    Graph g;
    g.n = 4;
    g.edges = {{0, 1}, {2, 3}};
    CHECK(!is_connected(g));
    g.edges.push_back({1, 2});
    CHECK(is_connected(g));
}

TEST_CASE("expected averaging matrix of a single edge") {
    const auto m = expected_averaging_matrix(complete_graph(2));
    Matrix expected(2, 2);
    expected << 0.5, 0.5,
                0.5, 0.5;
    CHECK(m.w.isApprox(expected, 1e-15));
}

TEST_CASE("expected averaging matrix is symmetric doubly stochastic") {
    Rng rng(3);
    const Graph g = watts_strogatz(12, 4, 0.4, rng);
    const auto m = expected_averaging_matrix(g);

    CHECK((m.w - m.w.transpose()).cwiseAbs().maxCoeff() < 1e-15);
    for (int i = 0; i < g.n; ++i) {
        CHECK(std::abs(m.w.row(i).sum() - 1.0) < 1e-12);
        CHECK(std::abs(m.w.col(i).sum() - 1.0) < 1e-12);
    }
    CHECK(m.w.minCoeff() >= 0.0);
    CHECK(m.w.maxCoeff() <= 1.0);

    Graph split;
    split.n = 4;
    split.edges = {{0, 1}, {2, 3}};
    CHECK_THROWS_AS(expected_averaging_matrix(split), ConfigError);
}

TEST_CASE("expected averaging matrix matches the sampled average") {
    const Graph g = complete_graph(6);
    const auto expected = expected_averaging_matrix(g);

    Rng rng(17);
    Matrix sampled = Matrix::Zero(6, 6);
    const int samples = 100000;
    for (int s = 0; s < samples; ++s) {
        const auto& [i, j] = g.edges[rng.below(g.edge_count())];
        sampled += pairwise_averaging_matrix(6, i, j);
    }
    sampled /= (double)samples;
    CHECK((sampled - expected.w).cwiseAbs().maxCoeff() < 6e-3);
}

TEST_CASE("realized averaging matrices are doubly stochastic projections") {
    const int n = 7;
    const Matrix w = pairwise_averaging_matrix(n, 2, 5);

    CHECK((w - w.transpose()).cwiseAbs().maxCoeff() == 0.0);
    for (int i = 0; i < n; ++i) {
        CHECK(w.row(i).sum() == doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK((w * w - w).cwiseAbs().maxCoeff() < 1e-15);

    Vector diff = Vector::Zero(n);
    diff[2] = 1.0;
    diff[5] = -1.0;
    CHECK((w * diff).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(pairwise_averaging_matrix(4, 1, 1), ConfigError);
    CHECK_THROWS_AS(pairwise_averaging_matrix(4, 0, 4), ConfigError);
}

TEST_CASE("spectral gap of the complete graph is 1/(n-1)") {
    for (int n : {3, 10, 50}) {
        const auto result = spectral_gap(complete_graph(n));
        CHECK(std::abs(result.lambda2 - (1.0 - 1.0 / (n - 1))) < 1e-9);
        CHECK(std::abs(result.gap - 1.0 / (n - 1)) < 1e-9);
    }
}

TEST_CASE("spectral gap of a single edge is 1") {
    const auto result = spectral_gap(complete_graph(2));
    CHECK(std::abs(result.lambda2) < 1e-12);
    CHECK(std::abs(result.gap - 1.0) < 1e-12);
}

TEST_CASE("ring lattice mixes slower than the complete graph") {
    Rng rng(1);
    const auto ring = spectral_gap(watts_strogatz(50, 4, 0.0, rng));
    const auto complete = spectral_gap(complete_graph(50));
    CHECK(ring.gap < complete.gap);
    CHECK(ring.lambda2 > 0.0);
    CHECK(ring.lambda2 < 1.0);
}

TEST_CASE("pairwise averaging conserves the network sum") {
    Rng rng(23);
    std::vector<SufficientStats> stats;
    for (int i = 0; i < 6; ++i) {
        Matrix m(3, 4);
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 4; ++c) m(r, c) = 10.0 * rng.uniform01();
        }
        stats.push_back(SufficientStats{std::move(m)});
    }

    const auto network_sum = [&stats] {
        Matrix sum = Matrix::Zero(3, 4);
        for (const auto& s : stats) sum += s.counts;
        return sum;
    };

    const Matrix before = network_sum();
    for (int step = 0; step < 1000; ++step) {
        const int i = (int)rng.below(6);
        int j = (int)rng.below(6);
        while (j == i) j = (int)rng.below(6);
        apply_pairwise_average(stats, i, j);

        const Matrix after = network_sum();
        REQUIRE((after - before).cwiseAbs().maxCoeff() < 1e-12 * before.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("pairwise averaging handles the trivial cases") {
    SufficientStats c{Matrix::Constant(2, 2, 3.0)};
    std::vector<SufficientStats> stats{SufficientStats{2.0 * c.counts},
                                       SufficientStats{Matrix::Zero(2, 2)}};
    apply_pairwise_average(stats, 0, 1);
    CHECK(stats[0].counts == c.counts);
    CHECK(stats[1].counts == c.counts);

    apply_pairwise_average(stats, 0, 1);
    CHECK(stats[0].counts == c.counts);
    CHECK(stats[1].counts == c.counts);

    CHECK_THROWS_AS(apply_pairwise_average(stats, 0, 0), ConfigError);
    CHECK_THROWS_AS(apply_pairwise_average(stats, 0, 2), ConfigError);
}

TEST_CASE("graph serialization round-trips") {
    Rng rng(9);
    const Graph g = watts_strogatz(20, 4, 0.5, rng);

    std::stringstream buffer;
    save_graph(buffer, g);
    const Graph loaded = load_graph(buffer);
    CHECK(loaded.n == g.n);
    CHECK(loaded.edges == g.edges);

    std::stringstream bad("not a header\n0 1\n");
    CHECK_THROWS_AS(load_graph(bad), IoError);
}
