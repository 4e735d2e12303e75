// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Run through ctest or directly; expected wall time is a few
// minutes, dominated by the desk-scale training runs.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "dlda/experiment.hpp"
#include "oracles.hpp"

using namespace dlda;

namespace {

int g_failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", id, what.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

std::filesystem::path fresh_dir(const std::string& tag) {
    const auto dir = std::filesystem::temp_directory_path() / ("dlda_accept_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>());
}

// ---------------------------------------------------------------------------

void criterion_1_gibbs_oracle() {
    Rng meta(42);
    int within = 0;
    double worst = 0.0;
    const int instances = 20;
    for (int inst = 0; inst < instances; ++inst) {
        const int K = 2 + (int)meta.below(2);
        const int V = meta.below(2) ? 3 : 5;
        const int L = 1 + (int)meta.below(6);
        const auto topics = oracles::random_topics(K, V, meta);
        DirichletParams prior{Vector(K)};
        for (int k = 0; k < K; ++k) prior.alpha[k] = 0.8 + 1.2 * meta.uniform01();
        const auto doc = oracles::random_document(L, V, meta);

        const auto exact = exact_estep(doc, topics, prior);
        Rng chain(derive_seed(42, {(std::uint64_t)inst, 9}));
        const auto approx = gibbs_estep(doc, topics, prior, 2000, 100, chain);
        const double err = (approx.counts - exact.counts).cwiseAbs().maxCoeff();
        worst = std::max(worst, err);
        within += err <= 0.02;
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail), "%d/%d within 0.02, worst %.4f", within, instances,
                  worst);
    report(1, within >= 18, "Gibbs E-step matches the exact enumeration oracle", detail);
}

void criterion_2_left_to_right() {
    Rng meta(43);

    // Monte Carlo accuracy on short documents.
    int within = 0;
    double worst = 0.0;
    for (int inst = 0; inst < 10; ++inst) {
        const int K = 2 + (int)meta.below(2);
        const int V = 3 + (int)meta.below(3);
        const int L = 2 + (int)meta.below(4);
        const auto topics = oracles::random_topics(K, V, meta);
        DirichletParams prior{Vector(K)};
        for (int k = 0; k < K; ++k) prior.alpha[k] = 0.3 + meta.uniform01();
        const auto doc = oracles::random_document(L, V, meta);

        const double exact = oracles::enum_log_likelihood(doc, topics, prior);
        Rng rng(derive_seed(43, {(std::uint64_t)inst}));
        const double est = left_to_right_likelihood(doc, topics, prior, 200, rng);
        const double err = std::abs(est - exact);
        worst = std::max(worst, err);
        within += err <= 0.05;
    }

    // Single-word documents carry no Monte Carlo error: the estimate is
    // seed-independent and equals the closed form.
    bool single_exact = true;
    const auto topics = oracles::random_topics(3, 5, meta);
    DirichletParams prior{Vector(3)};
    prior.alpha << 0.4, 0.9, 1.7;
    for (int x = 0; x < 5; ++x) {
        double direct = 0.0;
        for (int k = 0; k < 3; ++k) direct += prior.alpha[k] * topics.beta(k, x);
        const double expected = std::log(direct / prior.sum());
        Rng r1(derive_seed(44, {(std::uint64_t)x})), r2(derive_seed(45, {(std::uint64_t)x}));
        const double a = left_to_right_likelihood(Document{{x}}, topics, prior, 200, r1);
        const double b = left_to_right_likelihood(Document{{x}}, topics, prior, 200, r2);
        single_exact = single_exact && a == b && std::abs(a - expected) <= 1e-12;
    }

    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "%d/10 within 0.05 nats, worst %.4f; length-1 exact: %s", within, worst,
                  single_exact ? "yes" : "no");
    report(2, within >= 9 && single_exact, "left-to-right estimator matches enumeration", detail);
}

void criterion_3_mass_and_consensus() {
    // Mass conservation over 10^4 pairwise averages.
    Rng rng(46);
    const int n = 10;
    std::vector<SufficientStats> stats;
    for (int i = 0; i < n; ++i) {
        Matrix m(5, 20);
        for (int r = 0; r < 5; ++r) {
            for (int c = 0; c < 20; ++c) m(r, c) = 10.0 * rng.uniform01();
        }
        stats.push_back(SufficientStats{std::move(m)});
    }
    const Graph graph = complete_graph(n);
    const auto total = [&stats] {
        double t = 0.0;
        for (const auto& s : stats) t += s.counts.sum();
        return t;
    };
    const double initial_total = total();
    double worst_drift = 0.0;
    for (int step = 0; step < 10000; ++step) {
        const auto& [i, j] = graph.edges[rng.below(graph.edge_count())];
        apply_pairwise_average(stats, i, j);
        worst_drift = std::max(worst_drift,
                               std::abs(total() - initial_total) / initial_total);
    }
    const bool mass_ok = worst_drift <= 1e-12;

    // Pure averaging drives the consensus gap to (numerical) zero.
    std::vector<NodeState> nodes;
    Rng init(47);
    for (int i = 0; i < n; ++i) {
        Matrix m(5, 20);
        for (int r = 0; r < 5; ++r) {
            for (int c = 0; c < 20; ++c) m(r, c) = 10.0 * init.uniform01();
        }
        nodes.push_back(NodeState{i, {Document{{0}}}, SufficientStats{std::move(m)}, Rng(0)});
    }
    const double gap0 = consensus_gap(nodes);
    double gap = gap0;
    int reached_at = -1;
    Rng edge_rng(48);
    for (int t = 1; t <= 2000; ++t) {
        const auto& [i, j] = graph.edges[edge_rng.below(graph.edge_count())];
        Matrix mean = 0.5 * (nodes[i].stats.counts + nodes[j].stats.counts);
        nodes[i].stats.counts = mean;
        nodes[j].stats.counts = std::move(mean);
        const double g = consensus_gap(nodes);
        if (g > gap * (1.0 + 1e-12)) {
            reached_at = -2;  // monotonicity violated
            break;
        }
        gap = g;
        if (gap <= 1e-6 * gap0) {
            reached_at = t;
            break;
        }
    }
    const bool consensus_ok = reached_at > 0;

    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "worst drift %.2e over 1e4 steps; gap below 1e-6 of start at step %d",
                  worst_drift, reached_at);
    report(3, mass_ok && consensus_ok, "averaging conserves mass and reaches consensus", detail);
}

void criterion_4_mean_trajectory() {
    // Four nodes holding the same tiny corpus and the same start: the network
    // average must reproduce the centralized trajectory step for step.
    Rng gen(49);
    const auto truth = oracles::random_topics(2, 5, gen);
    const auto prior = DirichletParams::symmetric(2, 0.5);
    std::vector<Document> shard;
    for (auto& g : generate_corpus(3, truth, prior, 3.0, gen)) shard.push_back(std::move(g.doc));

    Rng init_rng(50);
    const auto init = init_stats(2, 5, 3.0, init_rng);

    std::vector<NodeState> nodes;
    for (int i = 0; i < 4; ++i) {
        nodes.push_back(NodeState{i, shard, init, Rng(derive_seed(50, {(std::uint64_t)i}))});
    }

    EngineConfig cfg;
    cfg.iterations = 50;
    cfg.estep.method = EStepConfig::Method::Exact;
    cfg.snapshot_cadence = 1;

    Rng engine_rng(51);
    const auto network = run_sync(complete_graph(4), nodes, prior, cfg, engine_rng);

    EngineConfig central = cfg;
    central.batch_size = (int)shard.size();
    Rng central_rng(52);
    const auto baseline = run_centralized(shard, prior, init, central, central_rng);

    double worst = 0.0;
    for (std::size_t s = 0; s < network.size(); ++s) {
        worst = std::max(worst, (network[s].mean_stats - baseline[s].mean_stats)
                                    .cwiseAbs()
                                    .maxCoeff());
    }
    char detail[96];
    std::snprintf(detail, sizeof(detail), "worst entrywise deviation %.2e over 50 iterations",
                  worst);
    report(4, worst <= 1e-9, "network mean follows the centralized exact trajectory", detail);
}

void criterion_5_spectral_gap() {
    bool ok = true;
    double worst = 0.0;
    for (int n : {3, 10, 50}) {
        const auto result = spectral_gap(complete_graph(n));
        const double err = std::abs(result.gap - 1.0 / (n - 1));
        worst = std::max(worst, err);
        ok = ok && err <= 1e-9;
    }

    Rng rng(53);
    const auto ring = spectral_gap(watts_strogatz(50, 4, 0.0, rng));
    const auto complete = spectral_gap(complete_graph(50));
    const bool ordering = ring.gap < complete.gap;

    char detail[128];
    std::snprintf(detail, sizeof(detail),
                  "worst |gap - 1/(n-1)| = %.2e; ring gap %.5f < complete gap %.5f: %s", worst,
                  ring.gap, complete.gap, ordering ? "yes" : "no");
    report(5, ok && ordering, "spectral gap closed form and topology ordering", detail);
}

ExperimentConfig desk_scale_config(const std::filesystem::path& dir, const std::string& name,
                                   std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.n_nodes = 10;
    cfg.docs_per_node = 20;
    cfg.vocab_size = 50;
    cfg.n_topics = 5;
    cfg.mean_doc_length = 10.0;
    cfg.eval_test_docs = 200;
    cfg.eval_particles = 20;
    cfg.exec = ExecMode::OpenMP;
    cfg.master_seed = seed;
    cfg.output_dir = dir.string();
    cfg.run_name = name;
    return cfg;
}

void criterion_6_desk_scale() {
    const auto dir = fresh_dir("desk");
    std::vector<double> lp_gaps, dist_gaps;

    for (std::uint64_t seed : {101, 102, 103}) {
        // 200 documents, 400 passes each: async touches 40 docs per
        // iteration, the centralized baseline 20. Per-node models need the
        // consensus phase well past the 50-pass floor before their average
        // distance settles onto the centralized one.
        auto async_cfg = desk_scale_config(dir, "async_" + std::to_string(seed), seed);
        async_cfg.mode = Mode::Async;
        async_cfg.iterations = 2000;
        async_cfg.eval_cadence = 2000;
        const auto async_res = run_experiment(async_cfg);

        auto central_cfg = desk_scale_config(dir, "central_" + std::to_string(seed), seed);
        central_cfg.mode = Mode::Centralized;
        central_cfg.iterations = 4000;
        central_cfg.batch_size = 20;
        central_cfg.eval_cadence = 4000;
        const auto central_res = run_experiment(central_cfg);

        lp_gaps.push_back(std::abs(async_res.final_report.lp / central_res.final_report.lp - 1.0));
        dist_gaps.push_back(std::abs(async_res.final_report.beta_distance -
                                     central_res.final_report.beta_distance));
    }

    const double lp_med = median(lp_gaps);
    const double dist_med = median(dist_gaps);
    char detail[128];
    std::snprintf(detail, sizeof(detail),
                  "median |lp ratio - 1| = %.4f (<= 0.05), median |dist gap| = %.4f (<= 0.05)",
                  lp_med, dist_med);
    report(6, lp_med <= 0.05 && dist_med <= 0.05,
           "async training matches the centralized baseline at matched passes", detail);
    std::filesystem::remove_all(dir);
}

void criterion_7_topology_ordering() {
    const auto dir = fresh_dir("topology");
    std::vector<double> complete_hits, ws_hits;

    const auto asymptote_of = [](const std::filesystem::path& csv) {
        const auto rows = load_trajectory_csv(csv);
        std::vector<double> tail;
        for (std::size_t i = rows.size() >= 3 ? rows.size() - 3 : 0; i < rows.size(); ++i) {
            tail.push_back(rows[i].lp_rel_error);
        }
        return median(tail);
    };
    const auto first_passage = [](const std::filesystem::path& csv, double threshold) {
        const auto rows = load_trajectory_csv(csv);
        for (const auto& row : rows) {
            if (row.lp_rel_error <= threshold) return (double)row.iter;
        }
        return (double)rows.back().iter + 1.0;
    };

    for (std::uint64_t seed : {201, 202, 203}) {
        auto complete_cfg = desk_scale_config(dir, "complete_" + std::to_string(seed), seed);
        complete_cfg.mode = Mode::Sync;
        complete_cfg.iterations = 200;
        complete_cfg.eval_cadence = 5;
        const auto complete_res = run_experiment(complete_cfg);

        auto ws_cfg = desk_scale_config(dir, "ws_" + std::to_string(seed), seed);
        ws_cfg.mode = Mode::Sync;
        ws_cfg.topology = Topology::WattsStrogatz;
        ws_cfg.ws_k = 4;
        ws_cfg.ws_p = 0.3;
        ws_cfg.iterations = 200;
        ws_cfg.eval_cadence = 5;
        const auto ws_res = run_experiment(ws_cfg);

        // Both runs race to twice the complete run's asymptote. Anchoring the
        // threshold to one run keeps the race meaningful when the slower
        // topology also settles on a higher error floor.
        const double threshold = 2.0 * asymptote_of(complete_res.csv);
        complete_hits.push_back(first_passage(complete_res.csv, threshold));
        ws_hits.push_back(first_passage(ws_res.csv, threshold));
    }

    const double complete_med = median(complete_hits);
    const double ws_med = median(ws_hits);
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "iterations to reach 2x own asymptote: complete median %.0f, "
                  "watts_strogatz median %.0f",
                  complete_med, ws_med);
    report(7, complete_med < ws_med, "the complete graph converges in fewer iterations", detail);
    std::filesystem::remove_all(dir);
}

void criterion_8_distance_metric() {
    Rng meta(54);
    bool ok = true;
    std::string funnel;

    const auto beta = oracles::random_topics(5, 100, meta, 0.3);
    ok = ok && topic_distance(beta, beta) <= 1e-10;

    Matrix permuted(5, 100);
    const int perm[5] = {3, 0, 4, 1, 2};
    for (int k = 0; k < 5; ++k) permuted.row(k) = beta.beta.row(perm[k]);
    ok = ok && topic_distance(TopicMatrix{permuted}, beta) <= 1e-10;

    double worst_invariance = 0.0;
    const auto target = oracles::random_topics(5, 100, meta, 0.3);
    const double base = topic_distance(beta, target);
    for (int trial = 0; trial < 5; ++trial) {
        Matrix a(5, 5);
        for (int r = 0; r < 5; ++r) {
            for (int c = 0; c < 5; ++c) a(r, c) = meta.uniform01() - 0.5;
        }
        a += 2.0 * Matrix::Identity(5, 5);
        const double mixed = topic_distance(TopicMatrix{a * beta.beta}, target);
        worst_invariance = std::max(worst_invariance, std::abs(mixed - base));
    }
    ok = ok && worst_invariance <= 1e-8;

    double worst_oracle = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const auto b = oracles::random_topics(5, 100, meta, 0.4);
        const auto b_star = oracles::random_topics(5, 100, meta, 0.4);
        const double closed = topic_distance(b, b_star);
        const double gd = oracles::least_squares_distance(b.beta, b_star.beta);
        worst_oracle = std::max(worst_oracle, std::abs(closed - gd));
    }
    ok = ok && worst_oracle <= 1e-6;

    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "identity/permutation <= 1e-10; mixing invariance %.2e; oracle gap %.2e",
                  worst_invariance, worst_oracle);
    report(8, ok, "topic distance properties and least-squares oracle", detail);
}

void criterion_9_determinism() {
    const auto dir = fresh_dir("determinism");

    auto cfg_a = desk_scale_config(dir / "a", "run", 301);
    cfg_a.mode = Mode::Sync;
    cfg_a.iterations = 30;
    cfg_a.eval_cadence = 10;
    auto cfg_b = desk_scale_config(dir / "b", "run", 301);
    cfg_b.mode = Mode::Sync;
    cfg_b.iterations = 30;
    cfg_b.eval_cadence = 10;
    cfg_b.exec = ExecMode::Serial;  // thread count must not matter

    const auto res_a = run_experiment(cfg_a);
    const auto res_b = run_experiment(cfg_b);
    const bool identical = slurp(res_a.csv) == slurp(res_b.csv);

    report(9, identical, "same master seed reproduces the CSV byte for byte",
           identical ? "OpenMP and serial runs match" : "byte mismatch");
    std::filesystem::remove_all(dir);
}

}  // namespace

int main() {
    criterion_1_gibbs_oracle();
    criterion_2_left_to_right();
    criterion_3_mass_and_consensus();
    criterion_4_mean_trajectory();
    criterion_5_spectral_gap();
    criterion_6_desk_scale();
    criterion_7_topology_ordering();
    criterion_8_distance_metric();
    criterion_9_determinism();

    std::printf("acceptance: %d/9 criteria passed\n", 9 - g_failures);
    return g_failures;
}
