#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "dlda/config.hpp"
#include "dlda/engine.hpp"
#include "dlda/evaluation.hpp"
#include "dlda/io.hpp"

namespace dlda {

enum class Topology { Complete, WattsStrogatz };
enum class Mode { Sync, Async, Centralized };

// Output directory override; takes precedence over ExperimentConfig::output_dir.
inline constexpr const char* kOutputDirEnvVar = "DLDA_OUTPUT_DIR";

// Everything that determines a run. Together with the code version this is
// the full provenance of a CSV: the same config and master seed reproduce
// every output byte for byte.
struct ExperimentConfig {
    int n_nodes = 50;
    int docs_per_node = 20;
    int vocab_size = 100;
    int n_topics = 5;
    double mean_doc_length = 10.0;

    Topology topology = Topology::Complete;
    int ws_k = 4;
    double ws_p = 0.3;

    Mode mode = Mode::Sync;
    long iterations = 1000;
    StepSchedule schedule;
    BatchPolicy batch_policy = BatchPolicy::FullShard;
    int batch_size = 20;

    EStepConfig::Method estep_method = EStepConfig::Method::Gibbs;
    int estep_sweeps = 50;
    int estep_burn_in = 25;
    double smoothing = kDefaultSmoothing;

    double truth_beta_concentration = 0.1;
    double truth_alpha = 0.0;  // <= 0 selects the symmetric 1/K prior

    int eval_test_docs = 200;
    int eval_particles = 20;
    long eval_cadence = 10;
    long checkpoint_cadence = 0;  // 0: write only the final checkpoint

    ExecMode exec = ExecMode::OpenMP;
    std::uint64_t master_seed = 1;

    std::string output_dir = "out";
    std::string run_name = "run";

    void validate() const;

    std::string mode_name() const;
    std::string topology_name() const;
    DirichletParams truth_prior() const;

    std::filesystem::path resolved_output_dir() const;
    std::filesystem::path csv_path() const;
    std::filesystem::path checkpoint_path() const;
    std::filesystem::path final_checkpoint_path() const;
    std::filesystem::path report_path() const;

    KeyValueStore to_store() const;
    static ExperimentConfig from_store(const KeyValueStore& store);
    void save_file(const std::filesystem::path& path) const;
    static ExperimentConfig load_file(const std::filesystem::path& path);
};

struct GroundTruth {
    TopicMatrix beta;
    DirichletParams alpha;
};

// Deterministic dataset derived from the config: ground truth, topology,
// per-node shards and the held-out test set.
struct Dataset {
    GroundTruth truth;
    Graph graph;
    std::vector<std::vector<Document>> shards;
    std::vector<Document> test_docs;
};

GroundTruth make_ground_truth(const ExperimentConfig& cfg);
Dataset build_dataset(const ExperimentConfig& cfg);

struct ExperimentResult {
    std::filesystem::path csv;
    std::filesystem::path final_checkpoint;
    EvalReport final_report;
    long final_iter = 0;
};

// End-to-end run: builds the dataset, trains the selected mode, evaluates
// against the ground truth at the configured cadence, and writes the CSV,
// checkpoints and final report.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Continues a run from a checkpoint written by the same config, appending to
// the existing CSV. Subsequent rows are identical to an uninterrupted run.
ExperimentResult resume_experiment(const ExperimentConfig& cfg,
                                   const std::filesystem::path& checkpoint);

// Writes the dataset artifacts (truth, graph, shards, test corpus) without
// training.
void write_dataset(const ExperimentConfig& cfg, const std::filesystem::path& dir);

struct RunSummary {
    std::string path;
    std::string mode;
    std::string graph;
    std::uint64_t seed = 0;
    long final_iter = 0;
    long final_docs = 0;
    double final_lp = 0.0;
    double final_rel_error = 0.0;
    double final_beta_distance = 0.0;
    double auc_rel_error_iter = 0.0;   // area under rel_error vs iteration
    double auc_rel_error_docs = 0.0;   // area under rel_error vs documents processed
};

// Aligns trajectory CSVs on the iteration and documents-processed axes and
// reports final values and areas under the curve per run.
std::vector<RunSummary> compare_runs(const std::vector<std::filesystem::path>& csvs);
void print_comparison(std::ostream& os, const std::vector<RunSummary>& summaries);

}  // namespace dlda
