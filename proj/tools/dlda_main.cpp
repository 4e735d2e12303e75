#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dlda/experiment.hpp"

namespace {

using namespace dlda;

int run_generate(const std::string& config_path, const std::string& out_override) {
    auto cfg = ExperimentConfig::load_file(config_path);
    if (!out_override.empty()) cfg.output_dir = out_override;
    const auto dir = cfg.resolved_output_dir();
    write_dataset(cfg, dir);
    std::cout << "dataset written to " << dir.string() << "\n";
    return 0;
}

struct TrainOptions {
    std::string config;
    std::string out;
    std::string run_name;
    std::string mode;
    std::string resume;
    long iterations = -1;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

int run_train(const TrainOptions& opt) {
    auto cfg = ExperimentConfig::load_file(opt.config);
    if (!opt.out.empty()) cfg.output_dir = opt.out;
    if (!opt.run_name.empty()) cfg.run_name = opt.run_name;
    if (opt.iterations >= 0) cfg.iterations = opt.iterations;
    if (opt.seed_set) cfg.master_seed = opt.seed;
    if (!opt.mode.empty()) {
        auto store = cfg.to_store();
        store.set("mode", opt.mode);
        cfg = ExperimentConfig::from_store(store);
    }
    cfg.validate();

    const ExperimentResult result =
        opt.resume.empty() ? run_experiment(cfg) : resume_experiment(cfg, opt.resume);

    std::cout << "mode = " << cfg.mode_name() << "\n"
              << "graph = " << cfg.topology_name() << "\n"
              << "seed = " << cfg.master_seed << "\n"
              << "final_iter = " << result.final_iter << "\n"
              << "lp = " << format_double(result.final_report.lp) << "\n"
              << "lp_star = " << format_double(result.final_report.lp_star) << "\n"
              << "lp_rel_error = " << format_double(result.final_report.rel_error) << "\n"
              << "beta_distance = " << format_double(result.final_report.beta_distance) << "\n"
              << "csv = " << result.csv.string() << "\n"
              << "checkpoint = " << result.final_checkpoint.string() << "\n";
    return 0;
}

struct EvalOptions {
    std::string corpus;
    std::string alpha;
    std::string beta;
    std::string checkpoint;
    std::string truth_beta;
    int particles = 20;
    double smoothing = kDefaultSmoothing;
    std::uint64_t seed = 1;
    bool serial = false;
};

int run_eval(const EvalOptions& opt) {
    if (opt.beta.empty() == opt.checkpoint.empty()) {
        throw ConfigError("eval: pass exactly one of --beta or --checkpoint");
    }

    const auto corpus = load_corpus_file(opt.corpus);
    const Matrix alpha_row = load_matrix_file(opt.alpha);
    DirichletParams prior{alpha_row.reshaped().eval()};
    prior.validate();

    TopicMatrix beta{Matrix()};
    std::optional<double> gap;
    if (!opt.beta.empty()) {
        beta.beta = load_matrix_file(opt.beta);
    } else {
        const auto ckpt = load_checkpoint(opt.checkpoint);
        std::vector<NodeState> nodes;
        for (const auto& saved : ckpt.nodes) {
            nodes.push_back(NodeState{saved.node_id, {Document{{0}}},
                                      SufficientStats{saved.stats}, Rng(0), saved.local_clock});
        }
        gap = consensus_gap(nodes);
        beta = m_step(SufficientStats{mean_stats(nodes)}, opt.smoothing);
    }
    beta.validate(1e-6);
    if (beta.vocab_size() != corpus.vocab_size) {
        throw ConfigError("eval: beta columns do not match the corpus vocabulary");
    }
    if (beta.n_topics() != prior.n_topics()) {
        throw ConfigError("eval: beta rows do not match the alpha length");
    }

    const EvalConfig cfg{opt.particles, opt.serial ? ExecMode::Serial : ExecMode::OpenMP};
    Rng rng = derive_rng(opt.seed, {0xE7A1});
    const double lp = log_perplexity(corpus.docs, beta, prior, cfg, rng);

    std::cout << "documents = " << corpus.docs.size() << "\n"
              << "lp = " << format_double(lp) << "\n";
    if (gap) std::cout << "consensus_gap = " << format_double(*gap) << "\n";

    if (!opt.truth_beta.empty()) {
        const TopicMatrix truth{load_matrix_file(opt.truth_beta)};
        truth.validate(1e-6);
        Rng star_rng = derive_rng(opt.seed, {0xE7A2});
        const double lp_star = log_perplexity(corpus.docs, truth, prior, cfg, star_rng);
        std::cout << "lp_star = " << format_double(lp_star) << "\n"
                  << "lp_rel_error = " << format_double(relative_error(lp, lp_star)) << "\n"
                  << "lp_abs_gap = " << format_double(lp - lp_star) << "\n"
                  << "beta_distance = " << format_double(topic_distance(beta, truth)) << "\n";
    }
    return 0;
}

int run_compare(const std::vector<std::string>& paths) {
    std::vector<std::filesystem::path> csvs(paths.begin(), paths.end());
    print_comparison(std::cout, compare_runs(csvs));
    return 0;
}

int run_spectral(const std::string& topology, int n, int k, double p, std::uint64_t seed) {
    Graph graph;
    if (topology == "complete") {
        graph = complete_graph(n);
    } else if (topology == "watts_strogatz") {
        Rng rng = derive_rng(seed, {2});
        graph = watts_strogatz(n, k, p, rng);
    } else {
        throw ConfigError("spectral: unknown topology '" + topology + "'");
    }
    const auto result = spectral_gap(graph);
    std::cout << "topology = " << topology << "\n"
              << "n = " << graph.n << "\n"
              << "edges = " << graph.edge_count() << "\n"
              << "lambda2 = " << format_double(result.lambda2) << "\n"
              << "spectral_gap = " << format_double(result.gap) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decentralized LDA: gossip-averaged online EM over private corpora"};
    app.require_subcommand(1);

    std::string gen_config, gen_out;
    auto* generate = app.add_subcommand("generate", "Write ground truth, graph and corpora");
    generate->add_option("--config", gen_config, "Experiment config file")->required();
    generate->add_option("--out", gen_out, "Output directory override");

    TrainOptions train;
    auto* train_cmd = app.add_subcommand("train", "Run a training experiment");
    train_cmd->add_option("--config", train.config, "Experiment config file")->required();
    train_cmd->add_option("--out", train.out, "Output directory override");
    train_cmd->add_option("--run-name", train.run_name, "Output file prefix override");
    train_cmd->add_option("--mode", train.mode, "Mode override (sync|async|centralized)");
    train_cmd->add_option("--iterations", train.iterations, "Iteration count override");
    train_cmd->add_option("--seed", train.seed, "Master seed override")
        ->each([&train](const std::string&) { train.seed_set = true; });
    train_cmd->add_option("--resume", train.resume, "Continue from a checkpoint file");

    EvalOptions eval;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a model on a corpus");
    eval_cmd->add_option("--corpus", eval.corpus, "Corpus file")->required();
    eval_cmd->add_option("--alpha", eval.alpha, "Dirichlet prior file (one row)")->required();
    eval_cmd->add_option("--beta", eval.beta, "Topic matrix file");
    eval_cmd->add_option("--checkpoint", eval.checkpoint, "Engine checkpoint file");
    eval_cmd->add_option("--truth-beta", eval.truth_beta, "Reference topic matrix file");
    eval_cmd->add_option("--particles", eval.particles, "Left-to-right particle count");
    eval_cmd->add_option("--smoothing", eval.smoothing, "M-step smoothing for checkpoints");
    eval_cmd->add_option("--seed", eval.seed, "Evaluation seed");
    eval_cmd->add_flag("--serial", eval.serial, "Disable OpenMP evaluation");

    std::vector<std::string> compare_paths;
    auto* compare_cmd = app.add_subcommand("compare", "Summarize trajectory CSVs");
    compare_cmd->add_option("csvs", compare_paths, "Trajectory CSV files")->required();

    std::string spec_topology = "complete";
    int spec_n = 50, spec_k = 4;
    double spec_p = 0.3;
    std::uint64_t spec_seed = 1;
    auto* spectral_cmd = app.add_subcommand("spectral", "Print the spectral gap of a topology");
    spectral_cmd->add_option("--topology", spec_topology, "complete|watts_strogatz");
    spectral_cmd->add_option("--n", spec_n, "Node count");
    spectral_cmd->add_option("--k", spec_k, "Lattice neighbors (watts_strogatz)");
    spectral_cmd->add_option("--p", spec_p, "Rewiring probability (watts_strogatz)");
    spectral_cmd->add_option("--seed", spec_seed, "Generation seed (watts_strogatz)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) return run_generate(gen_config, gen_out);
        if (train_cmd->parsed()) return run_train(train);
        if (eval_cmd->parsed()) return run_eval(eval);
        if (compare_cmd->parsed()) return run_compare(compare_paths);
        if (spectral_cmd->parsed()) {
            return run_spectral(spec_topology, spec_n, spec_k, spec_p, spec_seed);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return 2;
    } catch (const DataError& e) {
        std::cerr << "error: data: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "error: io: " << e.what() << "\n";
        return 4;
    } catch (const NumericalError& e) {
        std::cerr << "error: numerical: " << e.what() << "\n";
        return 5;
    } catch (const InfeasibleError& e) {
        std::cerr << "error: infeasible: " << e.what() << "\n";
        return 6;
    } catch (const GenerationError& e) {
        std::cerr << "error: generation: " << e.what() << "\n";
        return 7;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
