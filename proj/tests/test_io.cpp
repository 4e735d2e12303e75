#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dlda/config.hpp"
#include "dlda/io.hpp"
#include "oracles.hpp"

using namespace dlda;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("dlda_test_" + std::to_string(std::rand()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("corpus text round-trips") {
    const std::vector<Document> docs{Document{{0, 3, 1}}, Document{{2}}, Document{{4, 4}}};
    std::stringstream buffer;
    save_corpus(buffer, docs, 5, 2);

    const auto loaded = load_corpus(buffer);
    CHECK(loaded.vocab_size == 5);
    CHECK(loaded.n_topics == 2);
    REQUIRE(loaded.docs.size() == 3);
    for (std::size_t d = 0; d < docs.size(); ++d) CHECK(loaded.docs[d].words == docs[d].words);
}

TEST_CASE("corpus loader rejects malformed input") {
    std::stringstream no_header("0 1 2\n");
    CHECK_THROWS_AS(load_corpus(no_header), IoError);

    std::stringstream bad_word("V=3 K=2\n0 7\n");
    CHECK_THROWS_AS(load_corpus(bad_word), DataError);

    std::stringstream not_numbers("V=3 K=2\n0 x\n");
    CHECK_THROWS_AS(load_corpus(not_numbers), IoError);
}

TEST_CASE("matrix text round-trips exactly") {
    Rng rng(5);
    Matrix m(3, 4);
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 4; ++c) m(r, c) = (rng.uniform01() - 0.5) * 1e3;
    }
    m(0, 0) = 1e-300;
    m(2, 3) = 0.1;

    std::stringstream buffer;
    save_matrix(buffer, m);
    const Matrix loaded = load_matrix(buffer);
    REQUIRE(loaded.rows() == 3);
    REQUIRE(loaded.cols() == 4);
    CHECK(loaded == m);  // shortest round-trip formatting is lossless

    std::stringstream ragged("1 2\n3\n");
    CHECK_THROWS_AS(load_matrix(ragged), IoError);
}

TEST_CASE("trajectory rows round-trip through CSV") {
    TempDir tmp;
    const auto path = tmp.path / "run.csv";

    TrajectoryRow row;
    row.iter = 42;
    row.mode = "sync";
    row.graph = "complete";
    row.seed = 7;
    row.consensus_gap = 0.123456789012345;
    row.lp_rel_error = -0.01;
    row.beta_distance = 0.5;
    row.lp = 23.25;
    row.lp_star = 23.0;
    row.lp_abs_gap = 0.25;
    row.docs_processed = 840;

    {
        std::ofstream os(path);
        os << kCsvHeader << "\n" << csv_row(row) << "\n";
    }
    const auto rows = load_trajectory_csv(path);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].iter == row.iter);
    CHECK(rows[0].mode == row.mode);
    CHECK(rows[0].graph == row.graph);
    CHECK(rows[0].seed == row.seed);
    CHECK(rows[0].consensus_gap == row.consensus_gap);
    CHECK(rows[0].lp == row.lp);
    CHECK(rows[0].docs_processed == row.docs_processed);

    const auto bad = tmp.path / "bad.csv";
    {
        std::ofstream os(bad);
        os << "different,header\n";
    }
    CHECK_THROWS_AS(load_trajectory_csv(bad), IoError);
}

TEST_CASE("checkpoints round-trip") {
    TempDir tmp;
    Rng engine_rng(17);
    engine_rng.next_u64();

    std::vector<NodeState> nodes;
    Rng node_rng(19);
    for (int i = 0; i < 3; ++i) {
        Matrix stats(2, 3);
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 3; ++c) stats(r, c) = node_rng.uniform01() * 10.0;
        }
        nodes.push_back(NodeState{i, {Document{{0}}}, SufficientStats{stats},
                                  Rng(derive_seed(19, {(std::uint64_t)i})), 5 + i});
        nodes.back().rng.next_u64();
    }

    const auto ckpt = make_checkpoint(25, 1500, engine_rng, nodes);
    const auto path = tmp.path / "state.ckpt";
    save_checkpoint(path, ckpt);
    const auto loaded = load_checkpoint(path);

    CHECK(loaded.iter == 25);
    CHECK(loaded.docs_processed == 1500);
    CHECK(loaded.engine_rng_state == engine_rng.state_string());
    REQUIRE(loaded.nodes.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(loaded.nodes[i].node_id == i);
        CHECK(loaded.nodes[i].local_clock == 5 + i);
        CHECK(loaded.nodes[i].rng_state == nodes[i].rng.state_string());
        CHECK(loaded.nodes[i].stats == nodes[i].stats.counts);
    }

    CHECK_THROWS_AS(load_checkpoint(tmp.path / "missing.ckpt"), IoError);
}

TEST_CASE("key-value store parses and serializes stably") {
    const std::string text =
        "# comment\n"
        "n_nodes = 10\n"
        "\n"
        "schedule.kappa = 0.6\n"
        "run_name = demo\n";
    const auto store = KeyValueStore::parse(text);
    CHECK(store.get_long("n_nodes") == 10);
    CHECK(store.get_double("schedule.kappa") == 0.6);
    CHECK(store.get_string("run_name") == "demo");
    CHECK(store.get_long_or("missing", 3) == 3);
    CHECK_THROWS_AS(store.get_string("missing"), ConfigError);
    CHECK_THROWS_AS(store.get_long("run_name"), ConfigError);

    const auto again = KeyValueStore::parse(store.serialize());
    CHECK(again.serialize() == store.serialize());

    CHECK_THROWS_AS(KeyValueStore::parse("key without equals\n"), ConfigError);
}
