#include "dlda/lda.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace dlda {

namespace {

void check_model(const TopicMatrix& topics, const DirichletParams& prior) {
    prior.validate();
    if (topics.n_topics() != prior.n_topics()) {
        throw ConfigError("topic matrix has " + std::to_string(topics.n_topics()) +
                          " rows but the prior has " + std::to_string(prior.n_topics()) +
                          " components");
    }
}

// Rising factorial a (a+1) ... (a+m-1); the Gamma(a+m)/Gamma(a) ratio.
double rising_factorial(double a, int m) {
    double r = 1.0;
    for (int i = 0; i < m; ++i) r *= a + i;
    return r;
}

}  // namespace

std::vector<GeneratedDoc> generate_corpus(int n_docs, const TopicMatrix& topics,
                                          const DirichletParams& prior, double mean_length,
                                          Rng& rng) {
    check_model(topics, prior);
    if (n_docs < 0) throw ConfigError("generate_corpus: negative document count");
    if (!(mean_length > 0.0)) throw ConfigError("generate_corpus: mean_length must be positive");

    const int K = topics.n_topics();
    const int V = topics.vocab_size();

    std::vector<GeneratedDoc> out;
    out.reserve(n_docs);

    std::vector<double> alpha(prior.alpha.data(), prior.alpha.data() + K);
    std::vector<double> theta(K);
    std::vector<double> row(V);

    for (int d = 0; d < n_docs; ++d) {
        rng.dirichlet(alpha, theta);

        int length = 0;
        while (length == 0) length = rng.poisson(mean_length);

        GeneratedDoc g;
        g.doc.words.resize(length);
        g.hidden.z.resize(length);
        g.hidden.theta = Eigen::Map<const Vector>(theta.data(), K);

        for (int n = 0; n < length; ++n) {
            const int z = (int)rng.pick(theta, 1.0);
            for (int v = 0; v < V; ++v) row[v] = topics.beta(z, v);
            const int w = (int)rng.pick(row, topics.beta.row(z).sum());
            g.hidden.z[n] = z;
            g.doc.words[n] = w;
        }
        out.push_back(std::move(g));
    }
    return out;
}

SufficientStats gibbs_estep(const Document& doc, const TopicMatrix& topics,
                            const DirichletParams& prior, int sweeps, int burn_in, Rng& rng) {
    check_model(topics, prior);
    if (burn_in < 0 || sweeps <= burn_in) {
        throw ConfigError("gibbs_estep: need sweeps > burn_in >= 0");
    }
    const int K = topics.n_topics();
    const int V = topics.vocab_size();
    doc.validate(V);

    const int L = doc.length();
    const Matrix& beta = topics.beta;
    const Vector& alpha = prior.alpha;

    std::vector<int> z(L);
    std::vector<double> topic_count(K, 0.0);
    std::vector<double> w(K);

    // Initialize from the prior-weighted word likelihood.
    for (int n = 0; n < L; ++n) {
        const int v = doc.words[n];
        double total = 0.0;
        for (int k = 0; k < K; ++k) {
            w[k] = alpha[k] * beta(k, v);
            total += w[k];
        }
        if (!(total > 0.0)) {
            throw NumericalError("gibbs_estep: zero probability for every topic at position " +
                                 std::to_string(n));
        }
        const int k = (int)rng.pick(w, total);
        z[n] = k;
        topic_count[k] += 1.0;
    }

    // Post-burn-in sweeps accumulate the conditional topic distribution of
    // each position rather than the sampled indicator: same expectation, far
    // lower variance per sweep. Each position still contributes unit mass,
    // so the result sums to the document length.
    Matrix acc = Matrix::Zero(K, V);
    for (int sweep = 1; sweep <= sweeps; ++sweep) {
        const bool keep = sweep > burn_in;
        for (int n = 0; n < L; ++n) {
            const int v = doc.words[n];
            topic_count[z[n]] -= 1.0;

            double total = 0.0;
            for (int k = 0; k < K; ++k) {
                w[k] = beta(k, v) * (topic_count[k] + alpha[k]);
                total += w[k];
            }
            if (!(total > 0.0)) {
                throw NumericalError("gibbs_estep: zero probability for every topic at position " +
                                     std::to_string(n));
            }
            if (keep) {
                for (int k = 0; k < K; ++k) acc(k, v) += w[k] / total;
            }
            const int k = (int)rng.pick(w, total);
            z[n] = k;
            topic_count[k] += 1.0;
        }
    }
    acc /= double(sweeps - burn_in);
    return SufficientStats{std::move(acc)};
}

SufficientStats exact_estep(const Document& doc, const TopicMatrix& topics,
                            const DirichletParams& prior) {
    check_model(topics, prior);
    const int K = topics.n_topics();
    const int V = topics.vocab_size();
    doc.validate(V);

    const int L = doc.length();
    constexpr std::uint64_t kMaxStates = 1'000'000;
    std::uint64_t states = 1;
    for (int n = 0; n < L; ++n) {
        states *= (std::uint64_t)K;
        if (states > kMaxStates) {
            throw InfeasibleError("exact_estep: K^L exceeds " + std::to_string(kMaxStates) +
                                  " (K=" + std::to_string(K) + ", L=" + std::to_string(L) + ")");
        }
    }

    const Matrix& beta = topics.beta;
    const Vector& alpha = prior.alpha;

    std::vector<int> z(L, 0);
    std::vector<int> topic_count(K);

    Matrix acc = Matrix::Zero(K, V);
    double total_weight = 0.0;

    for (std::uint64_t s = 0; s < states; ++s) {
        // Posterior weight of this assignment vector, up to a z-independent
        // normalizer: word likelihoods times the Dirichlet-multinomial term.
        double w = 1.0;
        std::fill(topic_count.begin(), topic_count.end(), 0);
        for (int n = 0; n < L; ++n) {
            w *= beta(z[n], doc.words[n]);
            ++topic_count[z[n]];
        }
        for (int k = 0; k < K; ++k) w *= rising_factorial(alpha[k], topic_count[k]);

        if (w > 0.0) {
            total_weight += w;
            for (int n = 0; n < L; ++n) acc(z[n], doc.words[n]) += w;
        }

        // Mixed-radix increment over assignment vectors.
        for (int n = 0; n < L; ++n) {
            if (++z[n] < K) break;
            z[n] = 0;
        }
    }

    if (!(total_weight > 0.0)) {
        throw NumericalError("exact_estep: every assignment has zero posterior weight");
    }
    acc /= total_weight;
    return SufficientStats{std::move(acc)};
}

SufficientStats estep(const Document& doc, const TopicMatrix& topics, const DirichletParams& prior,
                      const EStepConfig& cfg, Rng& rng) {
    if (cfg.method == EStepConfig::Method::Exact) return exact_estep(doc, topics, prior);
    return gibbs_estep(doc, topics, prior, cfg.sweeps, cfg.burn_in, rng);
}

SufficientStats batch_estep_mean(std::span<const Document> batch, const TopicMatrix& topics,
                                 const DirichletParams& prior, const EStepConfig& cfg, Rng& rng) {
    if (batch.empty()) throw ConfigError("batch_estep_mean: empty batch");

    const int n_docs = (int)batch.size();
    // One draw from the caller's stream seeds all per-document streams, so
    // the caller's stream advances the same way in serial and parallel mode.
    const std::uint64_t base =
        cfg.method == EStepConfig::Method::Gibbs ? rng.next_u64() : std::uint64_t{0};

    std::vector<Matrix> results(n_docs);
    const auto one = [&](int d) {
        Rng doc_rng = derive_rng(base, {(std::uint64_t)d});
        results[d] = estep(batch[d], topics, prior, cfg, doc_rng).counts;
    };

    if (cfg.exec == ExecMode::OpenMP) {
#pragma omp parallel for schedule(dynamic)
        for (int d = 0; d < n_docs; ++d) one(d);
    } else {
        for (int d = 0; d < n_docs; ++d) one(d);
    }

    // Fixed-order reduction keeps the result independent of thread timing.
    Matrix mean = Matrix::Zero(topics.n_topics(), topics.vocab_size());
    for (int d = 0; d < n_docs; ++d) mean += results[d];
    mean /= double(n_docs);
    return SufficientStats{std::move(mean)};
}

TopicMatrix m_step(const SufficientStats& stats, double smoothing) {
    if (smoothing < 0.0) throw ConfigError("m_step: smoothing must be nonnegative");
    stats.validate();

    const int K = stats.n_topics();
    const int V = stats.vocab_size();
    Matrix beta(K, V);
    for (int k = 0; k < K; ++k) {
        const double row_sum = stats.counts.row(k).sum() + smoothing * V;
        if (!(row_sum > 0.0)) {
            throw NumericalError("m_step: row " + std::to_string(k) +
                                 " has zero mass and zero smoothing");
        }
        beta.row(k) = (stats.counts.row(k).array() + smoothing) / row_sum;
    }
    return TopicMatrix{std::move(beta)};
}

SufficientStats goem_update(const SufficientStats& current, std::span<const Document> batch,
                            const TopicMatrix& topics, const DirichletParams& prior, double rho,
                            const EStepConfig& cfg, Rng& rng) {
    if (!(rho > 0.0) || rho > 1.0) throw ConfigError("goem_update: rho must lie in (0, 1]");
    if (current.n_topics() != topics.n_topics() || current.vocab_size() != topics.vocab_size()) {
        throw ConfigError("goem_update: statistics and topic matrix dimensions differ");
    }
    const SufficientStats mean = batch_estep_mean(batch, topics, prior, cfg, rng);
    return SufficientStats{(1.0 - rho) * current.counts + rho * mean.counts};
}

}  // namespace dlda
