#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "dlda/engine.hpp"
#include "dlda/types.hpp"

namespace dlda {

// Shortest decimal form that round-trips the double exactly.
std::string format_double(double v);

// Corpus text format: header "V=<int> K=<int>", then one document per line as
// space-separated word indices.
struct CorpusFile {
    int vocab_size = 0;
    int n_topics = 0;
    std::vector<Document> docs;
};

void save_corpus(std::ostream& os, std::span<const Document> docs, int vocab_size, int n_topics);
CorpusFile load_corpus(std::istream& is);
void save_corpus_file(const std::filesystem::path& path, std::span<const Document> docs,
                      int vocab_size, int n_topics);
CorpusFile load_corpus_file(const std::filesystem::path& path);

// Row-major decimal text, one row per line.
void save_matrix(std::ostream& os, const Matrix& m);
Matrix load_matrix(std::istream& is);
void save_matrix_file(const std::filesystem::path& path, const Matrix& m);
Matrix load_matrix_file(const std::filesystem::path& path);

// Trajectory CSV. The leading columns are fixed; extra columns carry the
// second error form and the documents-processed axis.
inline constexpr const char* kCsvHeader =
    "iter,mode,graph,seed,consensus_gap,lp_rel_error,beta_distance,"
    "lp,lp_star,lp_abs_gap,docs_processed";

struct TrajectoryRow {
    long iter = 0;
    std::string mode;
    std::string graph;
    std::uint64_t seed = 0;
    double consensus_gap = 0.0;
    double lp_rel_error = 0.0;
    double beta_distance = 0.0;
    double lp = 0.0;
    double lp_star = 0.0;
    double lp_abs_gap = 0.0;
    long docs_processed = 0;
};

std::string csv_row(const TrajectoryRow& row);
std::vector<TrajectoryRow> load_trajectory_csv(const std::filesystem::path& path);

// Engine checkpoint: iteration cursor, engine rng, and per-node clock, rng
// and statistics (each stats matrix in the row-major text form above).
struct Checkpoint {
    long iter = 0;
    long docs_processed = 0;
    std::string engine_rng_state;

    struct Node {
        int node_id = 0;
        long local_clock = 0;
        std::string rng_state;
        Matrix stats;
    };
    std::vector<Node> nodes;
};

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::filesystem::path& path);

Checkpoint make_checkpoint(long iter, long docs_processed, const Rng& engine_rng,
                           std::span<const NodeState> nodes);

}  // namespace dlda
