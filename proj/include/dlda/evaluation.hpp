#pragma once

#include <span>

#include "dlda/exec.hpp"
#include "dlda/rng.hpp"
#include "dlda/types.hpp"

namespace dlda {

// Left-to-right sequential particle estimate of log p(doc | topics, prior).
// Position by position, each particle resamples its prefix assignments with
// one collapsed Gibbs pass, the predictive word probability is averaged over
// particles, and the position's assignment is sampled. Consistent as the
// particle count grows; exact for single-word documents.
double left_to_right_likelihood(const Document& doc, const TopicMatrix& topics,
                                const DirichletParams& prior, int n_particles, Rng& rng);

struct EvalConfig {
    int particles = 20;
    ExecMode exec = ExecMode::Serial;
};

// Mean over documents of the negative left-to-right log-likelihood. Lower is
// better. Parallel over documents under ExecMode::OpenMP; per-document
// streams are derived from one draw of `rng` and the document index, so the
// result does not depend on the execution mode.
double log_perplexity(std::span<const Document> test_docs, const TopicMatrix& topics,
                      const DirichletParams& prior, const EvalConfig& cfg, Rng& rng);

// lp / lp_star - 1.
double relative_error(double lp, double lp_star);

struct TopicDistanceResult {
    double distance = 0.0;
    bool ridged = false;  // true when a ridge was added to a near-singular Gram matrix
};

// Distance between a fitted topic matrix and a reference one, invariant to
// row permutation (and any invertible row mixing): the normalized residual of
// the least-squares projection of beta_star's rows onto the row space of
// beta, min_M ||M beta - beta_star||_F / ||beta_star||_F.
TopicDistanceResult topic_distance_ex(const TopicMatrix& beta, const TopicMatrix& beta_star);

double topic_distance(const TopicMatrix& beta, const TopicMatrix& beta_star);

struct EvalReport {
    double lp = 0.0;
    double lp_star = 0.0;
    double rel_error = 0.0;
    double abs_gap = 0.0;
    double beta_distance = 0.0;
};

// Bundles the held-out metrics of one model against the generating one.
EvalReport evaluate_model(const TopicMatrix& beta, const TopicMatrix& beta_star,
                          const DirichletParams& prior, std::span<const Document> test_docs,
                          double lp_star, const EvalConfig& cfg, Rng& rng);

}  // namespace dlda
