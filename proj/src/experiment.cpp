#include "dlda/experiment.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace dlda {

namespace {

// Stream tags hanging off the master seed. Every random decision in a run is
// derived from (master_seed, tag, ...) so runs are reproducible and resumable.
constexpr std::uint64_t kTruthStream = 1;
constexpr std::uint64_t kTopologyStream = 2;
constexpr std::uint64_t kCorpusStream = 3;
constexpr std::uint64_t kTestStream = 4;
constexpr std::uint64_t kInitStream = 5;
constexpr std::uint64_t kEngineStream = 6;
constexpr std::uint64_t kEvalStream = 7;
constexpr std::uint64_t kNodeStream = 8;
constexpr std::uint64_t kStarEval = ~std::uint64_t{0};

double mean_length(std::span<const Document> docs) {
    double total = 0.0;
    for (const auto& d : docs) total += d.length();
    return total / (double)docs.size();
}

}  // namespace

void ExperimentConfig::validate() const {
    if (n_nodes < 1) throw ConfigError("config: n_nodes must be positive");
    if (mode != Mode::Centralized && n_nodes < 2) {
        throw ConfigError("config: decentralized modes need at least 2 nodes");
    }
    if (docs_per_node < 1) throw ConfigError("config: docs_per_node must be positive");
    if (vocab_size < 1) throw ConfigError("config: vocab_size must be positive");
    if (n_topics < 1) throw ConfigError("config: n_topics must be positive");
    if (!(mean_doc_length > 0.0)) throw ConfigError("config: mean_doc_length must be positive");
    if (iterations < 0) throw ConfigError("config: iterations must be nonnegative");
    schedule.validate();
    if (batch_size < 1) throw ConfigError("config: batch.size must be positive");
    if (estep_method == EStepConfig::Method::Gibbs &&
        (estep_burn_in < 0 || estep_sweeps <= estep_burn_in)) {
        throw ConfigError("config: need estep.sweeps > estep.burn_in >= 0");
    }
    if (smoothing < 0.0) throw ConfigError("config: smoothing must be nonnegative");
    if (!(truth_beta_concentration > 0.0)) {
        throw ConfigError("config: truth.beta_concentration must be positive");
    }
    if (eval_test_docs < 1) throw ConfigError("config: eval.n_test_docs must be positive");
    if (eval_particles < 1) throw ConfigError("config: eval.particles must be positive");
    if (eval_cadence < 1) throw ConfigError("config: eval.cadence must be positive");
    if (checkpoint_cadence < 0) throw ConfigError("config: checkpoint.cadence must be nonnegative");
    if (run_name.empty()) throw ConfigError("config: run_name must be nonempty");
    if (topology == Topology::WattsStrogatz) {
        if (ws_k < 2 || ws_k % 2 != 0) throw ConfigError("config: topology.k must be even and >= 2");
        if (n_nodes <= ws_k) throw ConfigError("config: need n_nodes > topology.k");
        if (ws_p < 0.0 || ws_p > 1.0) throw ConfigError("config: topology.p must lie in [0, 1]");
    }
}

std::string ExperimentConfig::mode_name() const {
    switch (mode) {
        case Mode::Sync: return "sync";
        case Mode::Async: return "async";
        case Mode::Centralized: return "centralized";
    }
    throw ConfigError("config: unknown mode");
}

std::string ExperimentConfig::topology_name() const {
    return topology == Topology::Complete ? "complete" : "watts_strogatz";
}

DirichletParams ExperimentConfig::truth_prior() const {
    const double a = truth_alpha > 0.0 ? truth_alpha : 1.0 / (double)n_topics;
    return DirichletParams::symmetric(n_topics, a);
}

std::filesystem::path ExperimentConfig::resolved_output_dir() const {
    if (const char* env = std::getenv(kOutputDirEnvVar); env && *env) {
        return std::filesystem::path(env);
    }
    return std::filesystem::path(output_dir);
}

std::filesystem::path ExperimentConfig::csv_path() const {
    return resolved_output_dir() / (run_name + ".csv");
}

std::filesystem::path ExperimentConfig::checkpoint_path() const {
    return resolved_output_dir() / (run_name + ".ckpt");
}

std::filesystem::path ExperimentConfig::final_checkpoint_path() const {
    return resolved_output_dir() / (run_name + ".final.ckpt");
}

std::filesystem::path ExperimentConfig::report_path() const {
    return resolved_output_dir() / (run_name + ".report.txt");
}

KeyValueStore ExperimentConfig::to_store() const {
    KeyValueStore s;
    s.set_long("n_nodes", n_nodes);
    s.set_long("docs_per_node", docs_per_node);
    s.set_long("vocab_size", vocab_size);
    s.set_long("n_topics", n_topics);
    s.set_double("mean_doc_length", mean_doc_length);
    s.set("topology", topology_name());
    s.set_long("topology.k", ws_k);
    s.set_double("topology.p", ws_p);
    s.set("mode", mode_name());
    s.set_long("iterations", iterations);
    s.set_double("schedule.t0", schedule.t0);
    s.set_double("schedule.kappa", schedule.kappa);
    s.set("batch.policy", batch_policy == BatchPolicy::FullShard ? "full_shard" : "sample");
    s.set_long("batch.size", batch_size);
    s.set("estep.method", estep_method == EStepConfig::Method::Gibbs ? "gibbs" : "exact");
    s.set_long("estep.sweeps", estep_sweeps);
    s.set_long("estep.burn_in", estep_burn_in);
    s.set_double("smoothing", smoothing);
    s.set_double("truth.beta_concentration", truth_beta_concentration);
    s.set_double("truth.alpha", truth_alpha);
    s.set_long("eval.n_test_docs", eval_test_docs);
    s.set_long("eval.particles", eval_particles);
    s.set_long("eval.cadence", eval_cadence);
    s.set_long("checkpoint.cadence", checkpoint_cadence);
    s.set("exec", exec == ExecMode::OpenMP ? "openmp" : "serial");
    s.set("master_seed", std::to_string(master_seed));
    s.set("output.dir", output_dir);
    s.set("run_name", run_name);
    return s;
}

ExperimentConfig ExperimentConfig::from_store(const KeyValueStore& s) {
    ExperimentConfig cfg;
    cfg.n_nodes = (int)s.get_long_or("n_nodes", cfg.n_nodes);
    cfg.docs_per_node = (int)s.get_long_or("docs_per_node", cfg.docs_per_node);
    cfg.vocab_size = (int)s.get_long_or("vocab_size", cfg.vocab_size);
    cfg.n_topics = (int)s.get_long_or("n_topics", cfg.n_topics);
    cfg.mean_doc_length = s.get_double_or("mean_doc_length", cfg.mean_doc_length);

    const std::string topo = s.get_string_or("topology", "complete");
    if (topo == "complete") {
        cfg.topology = Topology::Complete;
    } else if (topo == "watts_strogatz") {
        cfg.topology = Topology::WattsStrogatz;
    } else {
        throw ConfigError("config: unknown topology '" + topo + "'");
    }
    cfg.ws_k = (int)s.get_long_or("topology.k", cfg.ws_k);
    cfg.ws_p = s.get_double_or("topology.p", cfg.ws_p);

    const std::string mode = s.get_string_or("mode", "sync");
    if (mode == "sync") {
        cfg.mode = Mode::Sync;
    } else if (mode == "async") {
        cfg.mode = Mode::Async;
    } else if (mode == "centralized") {
        cfg.mode = Mode::Centralized;
    } else {
        throw ConfigError("config: unknown mode '" + mode + "'");
    }

    cfg.iterations = s.get_long_or("iterations", cfg.iterations);
    cfg.schedule.t0 = s.get_double_or("schedule.t0", cfg.schedule.t0);
    cfg.schedule.kappa = s.get_double_or("schedule.kappa", cfg.schedule.kappa);

    const std::string policy = s.get_string_or("batch.policy", "full_shard");
    if (policy == "full_shard") {
        cfg.batch_policy = BatchPolicy::FullShard;
    } else if (policy == "sample") {
        cfg.batch_policy = BatchPolicy::Sample;
    } else {
        throw ConfigError("config: unknown batch.policy '" + policy + "'");
    }
    cfg.batch_size = (int)s.get_long_or("batch.size", cfg.batch_size);

    const std::string method = s.get_string_or("estep.method", "gibbs");
    if (method == "gibbs") {
        cfg.estep_method = EStepConfig::Method::Gibbs;
    } else if (method == "exact") {
        cfg.estep_method = EStepConfig::Method::Exact;
    } else {
        throw ConfigError("config: unknown estep.method '" + method + "'");
    }
    cfg.estep_sweeps = (int)s.get_long_or("estep.sweeps", cfg.estep_sweeps);
    cfg.estep_burn_in = (int)s.get_long_or("estep.burn_in", cfg.estep_burn_in);
    cfg.smoothing = s.get_double_or("smoothing", cfg.smoothing);
    cfg.truth_beta_concentration =
        s.get_double_or("truth.beta_concentration", cfg.truth_beta_concentration);
    cfg.truth_alpha = s.get_double_or("truth.alpha", cfg.truth_alpha);
    cfg.eval_test_docs = (int)s.get_long_or("eval.n_test_docs", cfg.eval_test_docs);
    cfg.eval_particles = (int)s.get_long_or("eval.particles", cfg.eval_particles);
    cfg.eval_cadence = s.get_long_or("eval.cadence", cfg.eval_cadence);
    cfg.checkpoint_cadence = s.get_long_or("checkpoint.cadence", cfg.checkpoint_cadence);

    const std::string exec = s.get_string_or("exec", "openmp");
    if (exec == "openmp") {
        cfg.exec = ExecMode::OpenMP;
    } else if (exec == "serial") {
        cfg.exec = ExecMode::Serial;
    } else {
        throw ConfigError("config: unknown exec '" + exec + "'");
    }

    if (s.contains("master_seed")) cfg.master_seed = s.get_u64("master_seed");
    cfg.output_dir = s.get_string_or("output.dir", cfg.output_dir);
    cfg.run_name = s.get_string_or("run_name", cfg.run_name);
    cfg.validate();
    return cfg;
}

void ExperimentConfig::save_file(const std::filesystem::path& path) const {
    to_store().save_file(path);
}

ExperimentConfig ExperimentConfig::load_file(const std::filesystem::path& path) {
    return from_store(KeyValueStore::load_file(path));
}

GroundTruth make_ground_truth(const ExperimentConfig& cfg) {
    Rng rng = derive_rng(cfg.master_seed, {kTruthStream});
    const int K = cfg.n_topics;
    const int V = cfg.vocab_size;

    std::vector<double> conc(V, cfg.truth_beta_concentration);
    std::vector<double> row(V);
    Matrix beta(K, V);
    for (int k = 0; k < K; ++k) {
        rng.dirichlet(conc, row);
        for (int v = 0; v < V; ++v) beta(k, v) = row[v];
    }
    return GroundTruth{TopicMatrix{std::move(beta)}, cfg.truth_prior()};
}

Dataset build_dataset(const ExperimentConfig& cfg) {
    Dataset ds;
    ds.truth = make_ground_truth(cfg);

    if (cfg.topology == Topology::Complete) {
        ds.graph = complete_graph(std::max(cfg.n_nodes, 2));
    } else {
        Rng topo_rng = derive_rng(cfg.master_seed, {kTopologyStream});
        ds.graph = watts_strogatz(cfg.n_nodes, cfg.ws_k, cfg.ws_p, topo_rng);
    }

    ds.shards.resize(cfg.n_nodes);
    for (int i = 0; i < cfg.n_nodes; ++i) {
        Rng shard_rng = derive_rng(cfg.master_seed, {kCorpusStream, (std::uint64_t)i});
        auto generated = generate_corpus(cfg.docs_per_node, ds.truth.beta, ds.truth.alpha,
                                         cfg.mean_doc_length, shard_rng);
        ds.shards[i].reserve(generated.size());
        for (auto& g : generated) ds.shards[i].push_back(std::move(g.doc));
    }

    Rng test_rng = derive_rng(cfg.master_seed, {kTestStream});
    auto generated = generate_corpus(cfg.eval_test_docs, ds.truth.beta, ds.truth.alpha,
                                     cfg.mean_doc_length, test_rng);
    ds.test_docs.reserve(generated.size());
    for (auto& g : generated) ds.test_docs.push_back(std::move(g.doc));
    return ds;
}

void write_dataset(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
    cfg.validate();
    std::filesystem::create_directories(dir);
    const Dataset ds = build_dataset(cfg);

    save_matrix_file(dir / "truth_beta.txt", ds.truth.beta.beta);
    save_matrix_file(dir / "truth_alpha.txt", ds.truth.alpha.alpha.transpose());
    {
        std::ofstream os(dir / "graph.txt");
        if (!os) throw IoError("cannot write graph file");
        save_graph(os, ds.graph);
    }
    save_corpus_file(dir / "test_corpus.txt", ds.test_docs, cfg.vocab_size, cfg.n_topics);
    for (int i = 0; i < cfg.n_nodes; ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "node_%03d.txt", i);
        save_corpus_file(dir / name, ds.shards[i], cfg.vocab_size, cfg.n_topics);
    }
}

namespace {

struct RunContext {
    RunContext(const ExperimentConfig& c, const Dataset& d) : cfg(c), dataset(d) {}

    const ExperimentConfig& cfg;
    const Dataset& dataset;
    double lp_star = 0.0;
    std::ofstream csv;
    Rng* engine_rng = nullptr;
    EvalReport last_report;
    long last_iter = 0;
    bool wrote_final_checkpoint = false;
};

EvalReport evaluate_snapshot(RunContext& ctx, const Snapshot& snap,
                             std::span<const NodeState> nodes) {
    const auto& cfg = ctx.cfg;
    const EvalConfig eval_cfg{cfg.eval_particles, cfg.exec};
    const DirichletParams prior = cfg.truth_prior();

    double lp_sum = 0.0;
    double dist_sum = 0.0;
    for (const auto& node : nodes) {
        Rng rng = derive_rng(cfg.master_seed,
                             {kEvalStream, (std::uint64_t)snap.iter, (std::uint64_t)node.node_id});
        const TopicMatrix beta = m_step(node.stats, cfg.smoothing);
        lp_sum += log_perplexity(ctx.dataset.test_docs, beta, prior, eval_cfg, rng);
        dist_sum += topic_distance(beta, ctx.dataset.truth.beta);
    }

    EvalReport report;
    report.lp = lp_sum / (double)nodes.size();
    report.lp_star = ctx.lp_star;
    report.rel_error = relative_error(report.lp, ctx.lp_star);
    report.abs_gap = report.lp - ctx.lp_star;
    report.beta_distance = dist_sum / (double)nodes.size();
    return report;
}

void snapshot_hook(RunContext& ctx, const Snapshot& snap, std::span<const NodeState> nodes) {
    const auto& cfg = ctx.cfg;
    const EvalReport report = evaluate_snapshot(ctx, snap, nodes);

    TrajectoryRow row;
    row.iter = snap.iter;
    row.mode = cfg.mode_name();
    row.graph = cfg.topology_name();
    row.seed = cfg.master_seed;
    row.consensus_gap = snap.consensus_gap;
    row.lp_rel_error = report.rel_error;
    row.beta_distance = report.beta_distance;
    row.lp = report.lp;
    row.lp_star = report.lp_star;
    row.lp_abs_gap = report.abs_gap;
    row.docs_processed = snap.docs_processed;
    ctx.csv << csv_row(row) << "\n";
    ctx.csv.flush();

    ctx.last_report = report;
    ctx.last_iter = snap.iter;

    const Checkpoint ckpt = make_checkpoint(snap.iter, snap.docs_processed, *ctx.engine_rng, nodes);
    if (cfg.checkpoint_cadence > 0 && snap.iter > 0 && snap.iter % cfg.checkpoint_cadence == 0) {
        save_checkpoint(cfg.checkpoint_path(), ckpt);
    }
    if (snap.iter == cfg.iterations) {
        save_checkpoint(cfg.final_checkpoint_path(), ckpt);
        ctx.wrote_final_checkpoint = true;
    }
}

ExperimentResult run_or_resume(const ExperimentConfig& cfg,
                               const std::optional<std::filesystem::path>& resume_from) {
    cfg.validate();
    const auto dir = cfg.resolved_output_dir();
    std::filesystem::create_directories(dir);

    const Dataset dataset = build_dataset(cfg);
    const DirichletParams prior = cfg.truth_prior();

    RunContext ctx{cfg, dataset};
    {
        Rng star_rng = derive_rng(cfg.master_seed, {kEvalStream, kStarEval});
        const EvalConfig eval_cfg{cfg.eval_particles, cfg.exec};
        ctx.lp_star =
            log_perplexity(dataset.test_docs, dataset.truth.beta, prior, eval_cfg, star_rng);
    }

    EngineConfig ecfg;
    ecfg.schedule = cfg.schedule;
    ecfg.iterations = cfg.iterations;
    ecfg.batch_policy = cfg.batch_policy;
    ecfg.batch_size = cfg.batch_size;
    ecfg.estep.method = cfg.estep_method;
    ecfg.estep.sweeps = cfg.estep_sweeps;
    ecfg.estep.burn_in = cfg.estep_burn_in;
    ecfg.estep.exec = cfg.exec;
    ecfg.smoothing = cfg.smoothing;
    ecfg.snapshot_cadence = cfg.eval_cadence;
    ecfg.exec = cfg.exec;

    RunCursor cursor;
    std::optional<Checkpoint> resumed;
    if (resume_from) {
        resumed = load_checkpoint(*resume_from);
        if (resumed->iter > cfg.iterations) {
            throw ConfigError("resume: checkpoint is beyond the configured iteration count");
        }
        cursor = RunCursor{resumed->iter, resumed->docs_processed};
    }

    const bool append = resume_from.has_value() && std::filesystem::exists(cfg.csv_path());
    ctx.csv.open(cfg.csv_path(), append ? std::ios::app : std::ios::trunc);
    if (!ctx.csv) throw IoError("cannot open '" + cfg.csv_path().string() + "' for writing");
    if (!append) ctx.csv << kCsvHeader << "\n";

    Rng engine_rng = resumed ? Rng::from_state_string(resumed->engine_rng_state)
                             : derive_rng(cfg.master_seed, {kEngineStream});
    ctx.engine_rng = &engine_rng;

    const SnapshotHook hook = [&ctx](const Snapshot& snap, std::span<const NodeState> nodes) {
        snapshot_hook(ctx, snap, nodes);
    };

    if (cfg.mode == Mode::Centralized) {
        std::vector<Document> corpus;
        for (const auto& shard : dataset.shards) {
            corpus.insert(corpus.end(), shard.begin(), shard.end());
        }
        SufficientStats init = SufficientStats::zero(cfg.n_topics, cfg.vocab_size);
        if (resumed) {
            if (resumed->nodes.size() != 1) throw ConfigError("resume: not a centralized checkpoint");
            init.counts = resumed->nodes[0].stats;
        } else {
            Rng init_rng = derive_rng(cfg.master_seed, {kInitStream, 0});
            init = init_stats(cfg.n_topics, cfg.vocab_size, mean_length(corpus), init_rng);
        }
        run_centralized(corpus, prior, init, ecfg, engine_rng, cursor, hook);
    } else {
        std::vector<NodeState> nodes;
        nodes.reserve(cfg.n_nodes);
        for (int i = 0; i < cfg.n_nodes; ++i) {
            Rng init_rng = derive_rng(cfg.master_seed, {kInitStream, (std::uint64_t)i});
            NodeState node{i, dataset.shards[i],
                           init_stats(cfg.n_topics, cfg.vocab_size, mean_length(dataset.shards[i]),
                                      init_rng),
                           derive_rng(cfg.master_seed, {kNodeStream, (std::uint64_t)i})};
            nodes.push_back(std::move(node));
        }
        if (resumed) {
            if ((int)resumed->nodes.size() != cfg.n_nodes) {
                throw ConfigError("resume: checkpoint node count differs from config");
            }
            for (int i = 0; i < cfg.n_nodes; ++i) {
                const auto& saved = resumed->nodes[i];
                if (saved.node_id != i) throw ConfigError("resume: node ids out of order");
                nodes[i].stats.counts = saved.stats;
                nodes[i].rng = Rng::from_state_string(saved.rng_state);
                nodes[i].local_clock = saved.local_clock;
            }
        }
        if (cfg.mode == Mode::Sync) {
            run_sync(dataset.graph, nodes, prior, ecfg, engine_rng, cursor, hook);
        } else {
            run_async(dataset.graph, nodes, prior, ecfg, engine_rng, cursor, hook);
        }
    }

    ExperimentResult result;
    result.csv = cfg.csv_path();
    result.final_checkpoint = cfg.final_checkpoint_path();
    result.final_iter = cfg.iterations;
    if (ctx.wrote_final_checkpoint) {
        result.final_report = ctx.last_report;
    } else {
        // Resumed past the end: nothing ran, report the last recorded row.
        const auto rows = load_trajectory_csv(cfg.csv_path());
        if (rows.empty()) throw IoError("run produced no trajectory rows");
        const auto& last = rows.back();
        result.final_report =
            EvalReport{last.lp, last.lp_star, last.lp_rel_error, last.lp_abs_gap,
                       last.beta_distance};
    }

    std::ofstream report(cfg.report_path());
    if (report) {
        report << "run = " << cfg.run_name << "\n"
               << "mode = " << cfg.mode_name() << "\n"
               << "graph = " << cfg.topology_name() << "\n"
               << "seed = " << cfg.master_seed << "\n"
               << "final_iter = " << result.final_iter << "\n"
               << "lp = " << format_double(result.final_report.lp) << "\n"
               << "lp_star = " << format_double(result.final_report.lp_star) << "\n"
               << "lp_rel_error = " << format_double(result.final_report.rel_error) << "\n"
               << "lp_abs_gap = " << format_double(result.final_report.abs_gap) << "\n"
               << "beta_distance = " << format_double(result.final_report.beta_distance) << "\n";
    }
    return result;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    return run_or_resume(cfg, std::nullopt);
}

ExperimentResult resume_experiment(const ExperimentConfig& cfg,
                                   const std::filesystem::path& checkpoint) {
    return run_or_resume(cfg, checkpoint);
}

std::vector<RunSummary> compare_runs(const std::vector<std::filesystem::path>& csvs) {
    if (csvs.empty()) throw ConfigError("compare_runs: no input files");

    std::vector<RunSummary> out;
    for (const auto& path : csvs) {
        const auto rows = load_trajectory_csv(path);
        if (rows.empty()) throw IoError("compare_runs: no rows in '" + path.string() + "'");

        RunSummary s;
        s.path = path.string();
        s.mode = rows.front().mode;
        s.graph = rows.front().graph;
        s.seed = rows.front().seed;
        s.final_iter = rows.back().iter;
        s.final_docs = rows.back().docs_processed;
        s.final_lp = rows.back().lp;
        s.final_rel_error = rows.back().lp_rel_error;
        s.final_beta_distance = rows.back().beta_distance;

        // Trapezoidal mean of rel_error along each axis; a single row
        // degenerates to its value.
        const auto mean_under = [&rows](auto axis) {
            const double x0 = (double)axis(rows.front());
            const double x1 = (double)axis(rows.back());
            if (x1 <= x0) return rows.back().lp_rel_error;
            double area = 0.0;
            for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
                const double dx = (double)axis(rows[i + 1]) - (double)axis(rows[i]);
                area += 0.5 * dx * (rows[i].lp_rel_error + rows[i + 1].lp_rel_error);
            }
            return area / (x1 - x0);
        };
        s.auc_rel_error_iter = mean_under([](const TrajectoryRow& r) { return r.iter; });
        s.auc_rel_error_docs = mean_under([](const TrajectoryRow& r) { return r.docs_processed; });
        out.push_back(std::move(s));
    }
    return out;
}

void print_comparison(std::ostream& os, const std::vector<RunSummary>& summaries) {
    os << "mode         graph           seed  final_iter  final_docs  final_lp      "
          "final_rel_err  final_dist  auc_rel(iter)  auc_rel(docs)  file\n";
    char line[512];
    for (const auto& s : summaries) {
        std::snprintf(line, sizeof(line),
                      "%-12s %-14s %6llu  %10ld  %10ld  %-12.6g  %-13.6g  %-10.6g  %-13.6g  "
                      "%-13.6g  %s\n",
                      s.mode.c_str(), s.graph.c_str(), (unsigned long long)s.seed, s.final_iter,
                      s.final_docs, s.final_lp, s.final_rel_error, s.final_beta_distance,
                      s.auc_rel_error_iter, s.auc_rel_error_docs, s.path.c_str());
        os << line;
    }
}

}  // namespace dlda
