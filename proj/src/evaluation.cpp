#include "dlda/evaluation.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace dlda {

double left_to_right_likelihood(const Document& doc, const TopicMatrix& topics,
                                const DirichletParams& prior, int n_particles, Rng& rng) {
    prior.validate();
    if (topics.n_topics() != prior.n_topics()) {
        throw ConfigError("left_to_right_likelihood: topic/prior dimension mismatch");
    }
    if (n_particles < 1) throw ConfigError("left_to_right_likelihood: need at least one particle");

    const int K = topics.n_topics();
    const int V = topics.vocab_size();
    doc.validate(V);

    const int L = doc.length();
    const int R = n_particles;
    const Matrix& beta = topics.beta;
    const Vector& alpha = prior.alpha;
    const double alpha_sum = prior.sum();

    std::vector<std::vector<int>> z(R, std::vector<int>(L, 0));
    std::vector<std::vector<double>> counts(R, std::vector<double>(K, 0.0));
    std::vector<double> w(K);

    double total = 0.0;
    for (int n = 0; n < L; ++n) {
        const int v = doc.words[n];
        double particle_sum = 0.0;

        for (int r = 0; r < R; ++r) {
            auto& zr = z[r];
            auto& cr = counts[r];

            // One collapsed Gibbs pass over this particle's prefix.
            for (int m = 0; m < n; ++m) {
                const int vm = doc.words[m];
                cr[zr[m]] -= 1.0;
                double tw = 0.0;
                for (int k = 0; k < K; ++k) {
                    w[k] = (cr[k] + alpha[k]) * beta(k, vm);
                    tw += w[k];
                }
                if (!(tw > 0.0)) {
                    throw NumericalError("left_to_right_likelihood: zero weight at position " +
                                         std::to_string(m));
                }
                zr[m] = (int)rng.pick(w, tw);
                cr[zr[m]] += 1.0;
            }

            // Predictive probability of the current word for this particle.
            double pr = 0.0;
            double tw = 0.0;
            for (int k = 0; k < K; ++k) {
                w[k] = (cr[k] + alpha[k]) * beta(k, v);
                tw += w[k];
            }
            pr = tw / ((double)n + alpha_sum);
            particle_sum += pr;

            if (!(tw > 0.0)) {
                // Word impossible under the model; the document has zero
                // likelihood and no assignment can be sampled.
                return -std::numeric_limits<double>::infinity();
            }
            zr[n] = (int)rng.pick(w, tw);
            cr[zr[n]] += 1.0;
        }

        total += std::log(particle_sum / (double)R);
    }
    return total;
}

double log_perplexity(std::span<const Document> test_docs, const TopicMatrix& topics,
                      const DirichletParams& prior, const EvalConfig& cfg, Rng& rng) {
    if (test_docs.empty()) throw ConfigError("log_perplexity: empty test set");

    const int n_docs = (int)test_docs.size();
    const std::uint64_t base = rng.next_u64();

    std::vector<double> ll(n_docs);
    const auto one = [&](int d) {
        Rng doc_rng = derive_rng(base, {(std::uint64_t)d});
        ll[d] = left_to_right_likelihood(test_docs[d], topics, prior, cfg.particles, doc_rng);
    };

    if (cfg.exec == ExecMode::OpenMP) {
#pragma omp parallel for schedule(dynamic)
        for (int d = 0; d < n_docs; ++d) one(d);
    } else {
        for (int d = 0; d < n_docs; ++d) one(d);
    }

    double sum = 0.0;
    for (int d = 0; d < n_docs; ++d) sum += -ll[d];
    return sum / (double)n_docs;
}

double relative_error(double lp, double lp_star) {
    if (!(lp_star > 0.0)) throw ConfigError("relative_error: lp_star must be positive");
    return lp / lp_star - 1.0;
}

TopicDistanceResult topic_distance_ex(const TopicMatrix& beta, const TopicMatrix& beta_star) {
    if (beta.n_topics() != beta_star.n_topics() || beta.vocab_size() != beta_star.vocab_size()) {
        throw ConfigError("topic_distance: dimension mismatch");
    }
    const double ref_norm = beta_star.beta.norm();
    if (!(ref_norm > 0.0)) throw ConfigError("topic_distance: reference matrix is zero");

    // Least-squares row mixing: minimize ||M beta - beta_star||_F over M.
    Matrix gram = beta.beta * beta.beta.transpose();

    Eigen::SelfAdjointEigenSolver<Matrix> solver(gram);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("topic_distance: Gram eigendecomposition failed");
    }
    const double ev_max = solver.eigenvalues().maxCoeff();
    const double ev_min = solver.eigenvalues().minCoeff();

    TopicDistanceResult result;
    if (!(ev_min > 1e-12 * ev_max)) {
        // Nearly collapsed topics; regularize the inversion.
        gram += 1e-10 * Matrix::Identity(gram.rows(), gram.cols());
        result.ridged = true;
    }

    const Matrix mixed = gram.ldlt().solve(beta.beta * beta_star.beta.transpose()).transpose();
    result.distance = (mixed * beta.beta - beta_star.beta).norm() / ref_norm;
    return result;
}

double topic_distance(const TopicMatrix& beta, const TopicMatrix& beta_star) {
    return topic_distance_ex(beta, beta_star).distance;
}

EvalReport evaluate_model(const TopicMatrix& beta, const TopicMatrix& beta_star,
                          const DirichletParams& prior, std::span<const Document> test_docs,
                          double lp_star, const EvalConfig& cfg, Rng& rng) {
    EvalReport report;
    report.lp = log_perplexity(test_docs, beta, prior, cfg, rng);
    report.lp_star = lp_star;
    report.rel_error = relative_error(report.lp, lp_star);
    report.abs_gap = report.lp - lp_star;
    report.beta_distance = topic_distance(beta, beta_star);
    return report;
}

}  // namespace dlda
