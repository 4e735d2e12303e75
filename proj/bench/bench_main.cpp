// Timing comparison of the serial reference kernels against their OpenMP
// counterparts. Each pair must also agree bit for bit; a mismatch fails the
// run.

#include <chrono>
#include <cstdio>
#include <vector>

#include "dlda/engine.hpp"
#include "dlda/evaluation.hpp"

using namespace dlda;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

TopicMatrix random_topics(int n_topics, int vocab_size, Rng& rng) {
    std::vector<double> conc(vocab_size, 0.5), row(vocab_size);
    Matrix beta(n_topics, vocab_size);
    for (int k = 0; k < n_topics; ++k) {
        rng.dirichlet(conc, row);
        for (int v = 0; v < vocab_size; ++v) beta(k, v) = row[v];
    }
    return TopicMatrix{beta};
}

void print_row(const char* name, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-28s %10.1f ms %12.1f ms %8.2fx   %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, identical ? "bit-identical" : "MISMATCH");
}

int g_mismatches = 0;

void bench_batch_estep(const TopicMatrix& topics, const DirichletParams& prior,
                       const std::vector<Document>& docs) {
    EStepConfig cfg;
    cfg.sweeps = 50;
    cfg.burn_in = 25;

    Rng r1(1), r2(1);
    cfg.exec = ExecMode::Serial;
    auto t0 = Clock::now();
    const auto serial = batch_estep_mean(docs, topics, prior, cfg, r1);
    const double serial_ms = ms_since(t0);

    cfg.exec = ExecMode::OpenMP;
    t0 = Clock::now();
    const auto parallel = batch_estep_mean(docs, topics, prior, cfg, r2);
    const double parallel_ms = ms_since(t0);

    const bool same = serial.counts == parallel.counts;
    g_mismatches += !same;
    print_row("batch E-step (400 docs)", serial_ms, parallel_ms, same);
}

void bench_log_perplexity(const TopicMatrix& topics, const DirichletParams& prior,
                          const std::vector<Document>& docs) {
    Rng r1(2), r2(2);
    auto t0 = Clock::now();
    const double serial = log_perplexity(docs, topics, prior, {20, ExecMode::Serial}, r1);
    const double serial_ms = ms_since(t0);

    t0 = Clock::now();
    const double parallel = log_perplexity(docs, topics, prior, {20, ExecMode::OpenMP}, r2);
    const double parallel_ms = ms_since(t0);

    const bool same = serial == parallel;
    g_mismatches += !same;
    print_row("left-to-right (400 docs)", serial_ms, parallel_ms, same);
}

void bench_run_sync(const TopicMatrix& truth, const DirichletParams& prior, Rng& gen) {
    const int n = 20;
    std::vector<NodeState> serial_nodes, parallel_nodes;
    for (int i = 0; i < n; ++i) {
        std::vector<Document> shard;
        for (auto& g : generate_corpus(10, truth, prior, 10.0, gen)) shard.push_back(std::move(g.doc));
        Rng init(derive_seed(3, {(std::uint64_t)i}));
        NodeState node{i, std::move(shard),
                       init_stats(truth.n_topics(), truth.vocab_size(), 10.0, init),
                       Rng(derive_seed(4, {(std::uint64_t)i}))};
        serial_nodes.push_back(node);
        parallel_nodes.push_back(std::move(node));
    }

    EngineConfig cfg;
    cfg.iterations = 10;
    cfg.estep.sweeps = 50;
    cfg.estep.burn_in = 25;
    cfg.snapshot_cadence = 10;

    const Graph graph = complete_graph(n);
    Rng r1(5), r2(5);

    auto t0 = Clock::now();
    run_sync(graph, serial_nodes, prior, cfg, r1);
    const double serial_ms = ms_since(t0);

    cfg.exec = ExecMode::OpenMP;
    cfg.estep.exec = ExecMode::OpenMP;
    t0 = Clock::now();
    run_sync(graph, parallel_nodes, prior, cfg, r2);
    const double parallel_ms = ms_since(t0);

    bool same = true;
    for (int i = 0; i < n; ++i) {
        same = same && serial_nodes[i].stats.counts == parallel_nodes[i].stats.counts;
    }
    g_mismatches += !same;
    print_row("sync engine (20 nodes x 10)", serial_ms, parallel_ms, same);
}

}  // namespace

int main() {
    std::printf("threads available: %d\n\n", max_threads());
    std::printf("%-28s %13s %15s %9s\n", "kernel", "serial", "openmp", "speedup");

    Rng gen(7);
    const auto topics = random_topics(5, 100, gen);
    const auto prior = DirichletParams::symmetric(5, 0.2);

    std::vector<Document> docs;
    for (auto& g : generate_corpus(400, topics, prior, 10.0, gen)) docs.push_back(std::move(g.doc));

    bench_batch_estep(topics, prior, docs);
    bench_log_perplexity(topics, prior, docs);
    bench_run_sync(topics, prior, gen);

    if (g_mismatches) {
        std::printf("\n%d kernel(s) diverged between modes\n", g_mismatches);
        return 1;
    }
    return 0;
}
