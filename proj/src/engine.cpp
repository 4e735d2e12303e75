#include "dlda/engine.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace dlda {

namespace {

void check_nodes(const Graph& graph, const std::vector<NodeState>& nodes) {
    graph.validate();
    if (!is_connected(graph)) throw ConfigError("engine: graph must be connected");
    if ((int)nodes.size() != graph.n) {
        throw ConfigError("engine: " + std::to_string(nodes.size()) + " nodes for a graph of " +
                          std::to_string(graph.n));
    }
    for (const auto& node : nodes) {
        node.validate();
        if (node.stats.n_topics() != nodes[0].stats.n_topics() ||
            node.stats.vocab_size() != nodes[0].stats.vocab_size()) {
            throw ConfigError("engine: node statistics dimensions differ across the network");
        }
    }
}

// Batch for one local update. FullShard returns the shard itself; Sample
// draws without replacement into `scratch` using the node's own stream.
std::span<const Document> select_batch(const NodeState& node, const EngineConfig& cfg, Rng& rng,
                                       std::vector<Document>& scratch) {
    if (cfg.batch_policy == BatchPolicy::FullShard) return node.corpus;

    const int shard = (int)node.corpus.size();
    const int b = std::min(cfg.batch_size, shard);
    std::vector<int> idx(shard);
    std::iota(idx.begin(), idx.end(), 0);
    scratch.clear();
    scratch.reserve(b);
    for (int i = 0; i < b; ++i) {
        const int j = i + (int)rng.below((std::uint64_t)(shard - i));
        std::swap(idx[i], idx[j]);
        scratch.push_back(node.corpus[idx[i]]);
    }
    return scratch;
}

long batch_docs(const NodeState& node, const EngineConfig& cfg) {
    if (cfg.batch_policy == BatchPolicy::FullShard) return (long)node.corpus.size();
    return std::min<long>(cfg.batch_size, (long)node.corpus.size());
}

void local_update(NodeState& node, const DirichletParams& prior, const EngineConfig& cfg,
                  double rho) {
    std::vector<Document> scratch;
    const auto batch = select_batch(node, cfg, node.rng, scratch);
    const TopicMatrix beta = m_step(node.stats, cfg.smoothing);
    node.stats = goem_update(node.stats, batch, beta, prior, rho, cfg.estep, node.rng);
    node.local_clock += 1;
}

void average_pair(std::vector<NodeState>& nodes, int i, int j) {
    Matrix mean = 0.5 * (nodes[i].stats.counts + nodes[j].stats.counts);
    nodes[j].stats.counts = mean;
    nodes[i].stats.counts = std::move(mean);
}

Snapshot record(long iter, long docs, std::span<const NodeState> nodes,
                std::vector<Snapshot>& trajectory, const SnapshotHook& hook) {
    Snapshot snap{iter, docs, consensus_gap(nodes), mean_stats(nodes)};
    trajectory.push_back(snap);
    if (hook) hook(snap, nodes);
    return snap;
}

bool at_cadence(long t, const EngineConfig& cfg) {
    return (cfg.snapshot_cadence > 0 && t % cfg.snapshot_cadence == 0) || t == cfg.iterations;
}

}  // namespace

Matrix mean_stats(std::span<const NodeState> nodes) {
    Matrix mean = Matrix::Zero(nodes[0].stats.n_topics(), nodes[0].stats.vocab_size());
    for (const auto& node : nodes) mean += node.stats.counts;
    mean /= (double)nodes.size();
    return mean;
}

double consensus_gap(std::span<const NodeState> nodes) {
    if (nodes.empty()) throw ConfigError("consensus_gap: no nodes");
    const Matrix mean = mean_stats(nodes);
    double sq = 0.0;
    for (const auto& node : nodes) sq += (node.stats.counts - mean).squaredNorm();
    return std::sqrt(sq);
}

std::vector<Snapshot> run_sync(const Graph& graph, std::vector<NodeState>& nodes,
                               const DirichletParams& prior, const EngineConfig& cfg,
                               Rng& engine_rng, RunCursor start, const SnapshotHook& hook) {
    check_nodes(graph, nodes);
    cfg.schedule.validate();

    std::vector<Snapshot> trajectory;
    long docs = start.docs_processed;
    if (start.iter == 0) record(0, docs, nodes, trajectory, hook);

    const int n = graph.n;
    for (long t = start.iter + 1; t <= cfg.iterations; ++t) {
        const auto& [i, j] = graph.edges[engine_rng.below((std::uint64_t)graph.edge_count())];
        average_pair(nodes, i, j);

        const double rho = cfg.schedule.rho(t);
        if (cfg.exec == ExecMode::OpenMP) {
#pragma omp parallel for schedule(dynamic)
            for (int k = 0; k < n; ++k) local_update(nodes[k], prior, cfg, rho);
        } else {
            for (int k = 0; k < n; ++k) local_update(nodes[k], prior, cfg, rho);
        }
        for (int k = 0; k < n; ++k) docs += batch_docs(nodes[k], cfg);

        if (at_cadence(t, cfg)) record(t, docs, nodes, trajectory, hook);
    }
    return trajectory;
}

std::vector<Snapshot> run_async(const Graph& graph, std::vector<NodeState>& nodes,
                                const DirichletParams& prior, const EngineConfig& cfg,
                                Rng& engine_rng, RunCursor start, const SnapshotHook& hook) {
    check_nodes(graph, nodes);
    cfg.schedule.validate();

    std::vector<Snapshot> trajectory;
    long docs = start.docs_processed;
    if (start.iter == 0) record(0, docs, nodes, trajectory, hook);

    for (long t = start.iter + 1; t <= cfg.iterations; ++t) {
        const auto& [i, j] = graph.edges[engine_rng.below((std::uint64_t)graph.edge_count())];
        average_pair(nodes, i, j);

        // Only the awake pair updates, each on its own event clock.
        for (int k : {i, j}) {
            const double rho = cfg.schedule.rho(nodes[k].local_clock + 1);
            local_update(nodes[k], prior, cfg, rho);
            docs += batch_docs(nodes[k], cfg);
        }

        if (at_cadence(t, cfg)) record(t, docs, nodes, trajectory, hook);
    }
    return trajectory;
}

std::vector<Snapshot> run_centralized(const std::vector<Document>& corpus,
                                      const DirichletParams& prior, const SufficientStats& init,
                                      const EngineConfig& cfg, Rng& rng, RunCursor start,
                                      const SnapshotHook& hook) {
    if (corpus.empty()) throw ConfigError("run_centralized: empty corpus");
    if (cfg.batch_size < 1 || cfg.batch_size > (int)corpus.size()) {
        throw ConfigError("run_centralized: batch size must lie in [1, corpus size]");
    }
    cfg.schedule.validate();
    init.validate();

    // The whole corpus lives on a single synthetic node.
    std::vector<NodeState> holder;
    holder.push_back(NodeState{0, corpus, init, Rng(0), start.iter});

    std::vector<Snapshot> trajectory;
    long docs = start.docs_processed;
    if (start.iter == 0) record(0, docs, holder, trajectory, hook);

    const int total = (int)corpus.size();
    std::vector<int> idx(total);
    std::vector<Document> batch(cfg.batch_size);

    for (long t = start.iter + 1; t <= cfg.iterations; ++t) {
        std::iota(idx.begin(), idx.end(), 0);
        for (int i = 0; i < cfg.batch_size; ++i) {
            const int j = i + (int)rng.below((std::uint64_t)(total - i));
            std::swap(idx[i], idx[j]);
            batch[i] = corpus[idx[i]];
        }

        const double rho = cfg.schedule.rho(t);
        const TopicMatrix beta = m_step(holder[0].stats, cfg.smoothing);
        holder[0].stats = goem_update(holder[0].stats, batch, beta, prior, rho, cfg.estep, rng);
        holder[0].local_clock = t;
        docs += cfg.batch_size;

        if (at_cadence(t, cfg)) record(t, docs, holder, trajectory, hook);
    }
    return trajectory;
}

SufficientStats init_stats(int n_topics, int vocab_size, double target_mass, Rng& rng) {
    if (n_topics < 1 || vocab_size < 1) throw ConfigError("init_stats: empty dimensions");
    if (!(target_mass > 0.0)) throw ConfigError("init_stats: target mass must be positive");

    Matrix counts(n_topics, vocab_size);
    const double cap = 1.0 / ((double)n_topics * (double)vocab_size);
    for (int k = 0; k < n_topics; ++k) {
        for (int v = 0; v < vocab_size; ++v) counts(k, v) = cap * rng.uniform01();
    }
    counts *= target_mass / counts.sum();
    return SufficientStats{std::move(counts)};
}

}  // namespace dlda
