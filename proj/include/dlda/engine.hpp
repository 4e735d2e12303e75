#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "dlda/gossip.hpp"
#include "dlda/graph.hpp"
#include "dlda/lda.hpp"

namespace dlda {

// rho_t = (t + t0)^(-kappa) for t >= 1; positive, decaying, in (0, 1).
struct StepSchedule {
    double t0 = 10.0;
    double kappa = 0.6;

    double rho(long t) const { return std::pow(static_cast<double>(t) + t0, -kappa); }

    void validate() const {
        if (!(t0 > 0.0)) throw ConfigError("StepSchedule: t0 must be positive");
        if (!(kappa > 0.5) || !(kappa <= 1.0)) {
            throw ConfigError("StepSchedule: kappa must lie in (0.5, 1]");
        }
    }
};

// One agent: its private corpus shard, its running statistics, and its own
// random stream. Documents never leave the node that owns them; the engine
// only moves statistics.
struct NodeState {
    int node_id = 0;
    std::vector<Document> corpus;
    SufficientStats stats;
    Rng rng{0};
    long local_clock = 0;  // local updates performed so far

    void validate() const {
        if (corpus.empty()) throw ConfigError("NodeState: empty corpus shard");
        stats.validate();
    }
};

enum class BatchPolicy {
    FullShard,  // every local update uses the node's whole shard
    Sample,     // every local update samples batch_size docs without replacement
};

struct EngineConfig {
    StepSchedule schedule;
    long iterations = 0;
    BatchPolicy batch_policy = BatchPolicy::FullShard;
    int batch_size = 20;  // Sample policy and the centralized baseline
    EStepConfig estep;
    double smoothing = kDefaultSmoothing;
    long snapshot_cadence = 10;
    ExecMode exec = ExecMode::Serial;  // per-node update parallelism in run_sync
};

struct Snapshot {
    long iter = 0;
    long docs_processed = 0;
    double consensus_gap = 0.0;
    Matrix mean_stats;
};

// Resume point; {0, 0} for a fresh run. Iterations executed are
// cursor.iter + 1 .. cfg.iterations.
struct RunCursor {
    long iter = 0;
    long docs_processed = 0;
};

// Called at every recorded snapshot with the per-node states of that instant.
using SnapshotHook = std::function<void(const Snapshot&, std::span<const NodeState>)>;

Matrix mean_stats(std::span<const NodeState> nodes);

// Frobenius norm of the stacked deviations of node statistics from their
// network average.
double consensus_gap(std::span<const NodeState> nodes);

// Synchronous loop: per iteration one uniformly random edge's endpoints
// average their statistics, then every node performs a local online EM step
// with rho_t on a batch from its own shard, using the topic matrix fitted to
// its own statistics. Node updates within an iteration are data-independent
// and run in parallel under ExecMode::OpenMP with unchanged results.
std::vector<Snapshot> run_sync(const Graph& graph, std::vector<NodeState>& nodes,
                               const DirichletParams& prior, const EngineConfig& cfg,
                               Rng& engine_rng, RunCursor start = {},
                               const SnapshotHook& hook = {});

// Asynchronous loop: per iteration one random edge; the two endpoints average
// and then only those two nodes update, each with the step size of its own
// local clock.
std::vector<Snapshot> run_async(const Graph& graph, std::vector<NodeState>& nodes,
                                const DirichletParams& prior, const EngineConfig& cfg,
                                Rng& engine_rng, RunCursor start = {},
                                const SnapshotHook& hook = {});

// Centralized baseline: one global statistic, batches of cfg.batch_size drawn
// uniformly without replacement from the whole corpus.
std::vector<Snapshot> run_centralized(const std::vector<Document>& corpus,
                                      const DirichletParams& prior, const SufficientStats& init,
                                      const EngineConfig& cfg, Rng& rng, RunCursor start = {},
                                      const SnapshotHook& hook = {});

// Initial statistics: entries uniform in [0, 1/(K*V)], then scaled so the
// total mass equals target_mass (a symmetry-breaking start with the mass of
// one average document).
SufficientStats init_stats(int n_topics, int vocab_size, double target_mass, Rng& rng);

}  // namespace dlda
